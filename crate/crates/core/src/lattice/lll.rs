//! Integral LLL reduction.
//!
//! The Gram–Schmidt data is carried as the integers `d_i` (leading Gram
//! minors) and `lambda_ij = d_j * mu_ij`, so every step is an exact integer
//! operation and no fractions are ever formed.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, rat, round_div, IntMatrix, IntVector, Integer, Rational};

/// Lovász constant `delta`, with `1/4 < delta <= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LllParams {
    delta: Rational,
}

impl LllParams {
    pub fn new(delta: Rational) -> Result<Self> {
        if delta <= rat(1, 4) || delta > rat(1, 1) {
            return Err(Error::Domain(alloc::format!("LLL delta must lie in (1/4, 1], got {delta}")));
        }
        Ok(LllParams { delta })
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }
}

impl Default for LllParams {
    fn default() -> Self {
        LllParams { delta: rat(3, 4) }
    }
}

/// LLL-reduces the columns of `basis`. The columns must be linearly
/// independent. The result spans the same lattice.
pub fn lll_reduce(basis: &IntMatrix, params: &LllParams) -> Result<IntMatrix> {
    let cols = basis.to_columns();
    let reduced = lll_columns(cols, params)?;
    IntMatrix::from_columns(basis.rows(), &reduced)
}

pub(crate) fn lll_columns(cols: Vec<IntVector>, params: &LllParams) -> Result<Vec<IntVector>> {
    let mut st = Integral::new(cols, params);
    st.run()?;
    Ok(st.b)
}

struct Integral {
    b: Vec<IntVector>,
    /// `d[0] = 1`, `d[i]` for basis vector `i - 1`.
    d: Vec<Integer>,
    /// `lambda[k][j]`, zero-based, `j < k`.
    lambda: Vec<Vec<Integer>>,
    num: Integer,
    den: Integer,
}

impl Integral {
    fn new(b: Vec<IntVector>, params: &LllParams) -> Self {
        let n = b.len();
        Integral {
            d: alloc::vec![Integer::zero(); n + 1],
            lambda: (0..n).map(|k| alloc::vec![Integer::zero(); k]).collect(),
            b,
            num: params.delta.numer().clone(),
            den: params.delta.denom().clone(),
        }
    }

    fn run(&mut self) -> Result<()> {
        let n = self.b.len();
        if n == 0 {
            return Ok(());
        }
        self.d[0] = Integer::one();
        self.d[1] = dot(&self.b[0], &self.b[0]);
        if self.d[1].is_zero() {
            return Err(Error::RankDeficient { what: "column", index: 0 });
        }
        // zero-based: vectors 0..k are processed, k is under test
        let mut k = 1usize;
        let mut kmax = 0usize;
        while k < n {
            if k > kmax {
                kmax = k;
                self.extend_gram(k)?;
            }
            self.size_reduce(k, k - 1);
            if self.lovasz_fails(k) {
                self.swap(k, kmax);
                k = core::cmp::max(1, k - 1);
            } else {
                for l in (0..k - 1).rev() {
                    self.size_reduce(k, l);
                }
                k += 1;
            }
        }
        Ok(())
    }

    /// Incremental Gram–Schmidt for vector `k`.
    fn extend_gram(&mut self, k: usize) -> Result<()> {
        for j in 0..=k {
            let mut u = dot(&self.b[k], &self.b[j]);
            for i in 0..j {
                u = (&self.d[i + 1] * &u - &self.lambda[k][i] * &self.lambda[j][i]) / &self.d[i];
            }
            if j < k {
                self.lambda[k][j] = u;
            } else {
                if u.is_zero() {
                    return Err(Error::RankDeficient { what: "column", index: k });
                }
                self.d[k + 1] = u;
            }
        }
        Ok(())
    }

    fn size_reduce(&mut self, k: usize, l: usize) {
        let dl = &self.d[l + 1];
        let lam = &self.lambda[k][l];
        if (Integer::from(2) * lam).abs() <= *dl {
            return;
        }
        let q = round_div(lam, dl);
        let (head, tail) = self.b.split_at_mut(k);
        for (x, y) in tail[0].iter_mut().zip(&head[l]) {
            *x -= &q * y;
        }
        self.lambda[k][l] -= &q * &self.d[l + 1];
        for i in 0..l {
            let t = &q * &self.lambda[l][i];
            self.lambda[k][i] -= t;
        }
    }

    /// `den * (d_k d_{k-2} + lambda^2) < num * d_{k-1}^2` in one-based terms.
    fn lovasz_fails(&self, k: usize) -> bool {
        let lam = &self.lambda[k][k - 1];
        let lhs = &self.den * (&self.d[k + 1] * &self.d[k - 1] + lam * lam);
        let rhs = &self.num * &self.d[k] * &self.d[k];
        lhs < rhs
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = core::mem::take(&mut self.lambda[k][j]);
            self.lambda[k][j] = core::mem::replace(&mut self.lambda[k - 1][j], t);
        }
        let lam = self.lambda[k][k - 1].clone();
        let bnew = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..=kmax {
            let t = self.lambda[i][k].clone();
            let new_ik = (&self.d[k + 1] * &self.lambda[i][k - 1] - &lam * &t) / &self.d[k];
            let new_ik1 = (&bnew * &t + &lam * &new_ik) / &self.d[k + 1];
            self.lambda[i][k] = new_ik;
            self.lambda[i][k - 1] = new_ik1;
        }
        self.d[k] = bnew;
    }
}

/// Independent checker: recomputes Gram–Schmidt data in rationals and tests
/// size reduction and the Lovász condition.
pub fn is_lll_reduced(basis: &IntMatrix, params: &LllParams) -> Result<bool> {
    let gs = crate::exact::gram_schmidt(basis)?;
    let half = rat(1, 2);
    for j in 0..basis.cols() {
        for k in 0..j {
            if gs.mu[j][k].abs() > half {
                return Ok(false);
            }
        }
        if j > 0 {
            let mu = &gs.mu[j][j - 1];
            let lhs = &gs.norms_sq[j] + mu * mu * &gs.norms_sq[j - 1];
            if lhs < params.delta() * &gs.norms_sq[j - 1] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Stable sort of the columns by squared norm, ascending.
pub fn sort_columns_by_norm(basis: &IntMatrix) -> IntMatrix {
    let norms = basis.column_norms_sq();
    let mut order: Vec<usize> = (0..basis.cols()).collect();
    order.sort_by(|&a, &b| norms[a].cmp(&norms[b]));
    basis.select_columns(&order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, norm_sq};

    #[test]
    fn identity_is_already_reduced() {
        let id = IntMatrix::identity(3);
        assert_eq!(lll_reduce(&id, &LllParams::default()).unwrap(), id);
    }

    #[test]
    fn skewed_plane_basis() {
        // columns (1,0), (10,1): brute force over unimodular transforms with
        // entries in [-12, 12] for the smallest achievable max column norm^2.
        let b = IntMatrix::from_i64(&[[1, 10], [0, 1]]);
        let mut best = i64::MAX;
        for a in -12i64..=12 {
            for c in -12i64..=12 {
                for e in -12i64..=12 {
                    for f in -12i64..=12 {
                        if (a * f - c * e).abs() != 1 {
                            continue;
                        }
                        // columns of B * [[a, c], [e, f]]
                        let v1 = (a + 10 * e, e);
                        let v2 = (c + 10 * f, f);
                        let m = (v1.0 * v1.0 + v1.1 * v1.1).max(v2.0 * v2.0 + v2.1 * v2.1);
                        best = best.min(m);
                    }
                }
            }
        }
        assert!(best <= 2);
        let r = lll_reduce(&b, &LllParams::default()).unwrap();
        assert!(r.column_norms_sq().iter().all(|n| *n <= int(best)));
        assert!(is_lll_reduced(&r, &LllParams::default()).unwrap());
    }

    #[test]
    fn dependent_columns_rejected() {
        let b = IntMatrix::from_i64(&[[1, 2, 0], [1, 2, 1]]);
        assert!(matches!(
            lll_reduce(&b, &LllParams::default()),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn delta_domain() {
        assert!(LllParams::new(rat(1, 4)).is_err());
        assert!(LllParams::new(rat(1, 1)).is_ok());
        assert!(LllParams::new(rat(5, 4)).is_err());
    }

    #[test]
    fn delta_one_reduces() {
        let b = IntMatrix::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [105, 821, 404]]);
        let p = LllParams::new(rat(99, 100)).unwrap();
        let r = lll_reduce(&b, &p).unwrap();
        assert!(is_lll_reduced(&r, &p).unwrap());
        let full = LllParams::new(rat(1, 1)).unwrap();
        let r1 = lll_reduce(&b, &full).unwrap();
        assert!(is_lll_reduced(&r1, &full).unwrap());
        assert!(norm_sq(&r1.column(0)) <= norm_sq(&r.column(0)));
    }

    proptest::proptest! {
        #[test]
        fn output_satisfies_both_conditions(entries in proptest::collection::vec(-30i64..=30, 20)) {
            let b = IntMatrix::from_fn(5, 4, |i, j| int(entries[i * 4 + j]));
            let params = LllParams::default();
            match lll_reduce(&b, &params) {
                Ok(r) => {
                    proptest::prop_assert!(is_lll_reduced(&r, &params).unwrap());
                    proptest::prop_assert_eq!(
                        crate::lattice::lattice_hnf(&r),
                        crate::lattice::lattice_hnf(&b)
                    );
                }
                Err(_) => proptest::prop_assert!(crate::exact::gram_schmidt(&b).is_err()),
            }
        }
    }
}
