//! Kernel lattices and particular solutions of `A x = b`.

use alloc::vec::Vec;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::hnf::{column_echelon, hnf};
use super::lll::{lll_columns, lll_reduce, LllParams};
use crate::error::{Error, Result};
use crate::exact::{
    lcm_denominators, norm_sq, rat_from, round_div, IntMatrix, IntVector, Integer, Rational,
};

/// How the kernel basis and particular solution are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KernelStrategy {
    /// Reduce the weighted embedding lattice and read `Q`, `x0` off the
    /// first `n - m + 1` reduced columns.
    #[default]
    Embedding,
    /// Kernel from the HNF transform, then LLL; `x0` by back-substitution.
    Hnf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelSolveResult {
    /// `n x (n - m)`, LLL-reduced basis of the kernel lattice.
    pub kernel: IntMatrix,
    /// A solution of `A x0 = scale_k * b`.
    pub x0: IntVector,
    pub feasible: bool,
    /// 1 when feasible, otherwise the least `k > 1` with `A x = k b` solvable.
    pub scale_k: Integer,
}

/// Basis (unreduced) of `{y in Z^n : A y = 0}` for any integer matrix.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let e = column_echelon(a);
    let n = a.cols();
    e.u.select_columns(&(e.rank()..n).collect::<Vec<_>>())
}

/// LLL-reduced basis of the kernel lattice of any integer matrix.
pub fn kernel_basis(a: &IntMatrix) -> Result<IntMatrix> {
    let k = integer_kernel(a);
    if k.cols() == 0 {
        return Ok(k);
    }
    lll_reduce(&k, &LllParams::default())
}

pub fn kernel_and_solution(
    a: &IntMatrix,
    b: &[Integer],
    strategy: KernelStrategy,
) -> Result<KernelSolveResult> {
    if b.len() != a.rows() {
        return Err(Error::Dimension(alloc::format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    let e = column_echelon(a);
    if e.rank() < a.rows() {
        let missing = (0..a.rows()).find(|r| !e.pivot_rows.contains(r)).unwrap_or(0);
        return Err(Error::RankDeficient { what: "row", index: missing });
    }
    match strategy {
        KernelStrategy::Embedding => via_embedding(a, b),
        KernelStrategy::Hnf => via_hnf(a, b),
    }
}

fn via_hnf(a: &IntMatrix, b: &[Integer]) -> Result<KernelSolveResult> {
    let (m, n) = a.shape();
    let h = hnf(a)?;
    let raw_kernel = h.u.select_columns(&(m..n).collect::<Vec<_>>());
    let kernel = if raw_kernel.cols() == 0 {
        raw_kernel
    } else {
        lll_reduce(&raw_kernel, &LllParams::default())?
    };

    // D y = b, D lower triangular
    let mut y: Vec<Rational> = Vec::with_capacity(m);
    for i in 0..m {
        let mut acc = rat_from(&b[i]);
        for (j, yj) in y.iter().enumerate() {
            acc -= rat_from(h.d.get(i, j)) * yj;
        }
        y.push(acc / rat_from(h.d.get(i, i)));
    }
    let scale_k = lcm_denominators(&y);
    let mut full: IntVector = y.iter().map(|v| (v * rat_from(&scale_k)).to_integer()).collect();
    full.resize(n, Integer::zero());
    let x = h.u.mul_vec(&full)?;
    let x0 = nearest_plane(&kernel, x);
    Ok(KernelSolveResult { kernel, x0, feasible: scale_k.is_one(), scale_k })
}

/// Babai nearest-plane reduction of `x` against a reduced basis; keeps `x`
/// in the same coset while making it short.
fn nearest_plane(basis: &IntMatrix, mut x: IntVector) -> IntVector {
    if basis.cols() == 0 {
        return x;
    }
    let gs = match crate::exact::gram_schmidt(basis) {
        Ok(gs) => gs,
        Err(_) => return x,
    };
    for j in (0..basis.cols()).rev() {
        let xr: Vec<Rational> = x.iter().map(rat_from).collect();
        let c: Rational = xr.iter().zip(&gs.bstar[j]).map(|(p, q)| p * q).sum::<Rational>() / &gs.norms_sq[j];
        let c = round_div(c.numer(), c.denom());
        if !c.is_zero() {
            for (xi, bi) in x.iter_mut().zip(basis.column(j)) {
                *xi -= &c * bi;
            }
        }
    }
    x
}

const EMBEDDING_RETRIES: usize = 3;

fn via_embedding(a: &IntMatrix, b: &[Integer]) -> Result<KernelSolveResult> {
    let (m, n) = a.shape();
    let max = a
        .max_abs()
        .max(b.iter().map(Signed::abs).max().unwrap_or_default())
        .max(Integer::one());
    let mut n1 = Integer::from(2 * n as u64) * max;
    let mut n2 = &n1 * &n1;
    for _ in 0..=EMBEDDING_RETRIES {
        if let Some(r) = try_embedding(a, b, &n1, &n2)? {
            return Ok(r);
        }
        n1 = &n1 * &n1;
        n2 = &n2 * &n2;
    }
    Err(Error::Invariant(alloc::format!(
        "embedding lattice of a {m}x{n} system did not separate after {EMBEDDING_RETRIES} weight increases"
    )))
}

/// One reduction of the embedding matrix
/// `[[I, 0], [0, N1], [N2 A, -N2 b]]`; `None` when the weights were too small
/// for the reduced basis to have the expected shape.
fn try_embedding(
    a: &IntMatrix,
    b: &[Integer],
    n1: &Integer,
    n2: &Integer,
) -> Result<Option<KernelSolveResult>> {
    let (m, n) = a.shape();
    let rows = n + m + 1;
    let mut cols: Vec<IntVector> = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut c = alloc::vec![Integer::zero(); rows];
        c[j] = Integer::one();
        for i in 0..m {
            c[n + 1 + i] = n2 * a.get(i, j);
        }
        cols.push(c);
    }
    let mut last = alloc::vec![Integer::zero(); rows];
    last[n] = n1.clone();
    for i in 0..m {
        last[n + 1 + i] = -(n2 * &b[i]);
    }
    cols.push(last);

    let red = match lll_columns(cols, &LllParams::default()) {
        Ok(r) => r,
        Err(Error::RankDeficient { .. }) => unreachable!("embedding columns are independent"),
        Err(e) => return Err(e),
    };

    let r = n - m;
    let tail_zero = |c: &IntVector| c[n + 1..].iter().all(Zero::is_zero);
    if !red[..r].iter().all(|c| c[n].is_zero() && tail_zero(c)) {
        return Ok(None);
    }
    let sol = &red[r];
    if !tail_zero(sol) || sol[n].is_zero() {
        return Ok(None);
    }
    let (k, rem) = sol[n].div_rem(n1);
    if !rem.is_zero() {
        return Ok(None);
    }
    let mut x0: IntVector = sol[..n].to_vec();
    if k.is_negative() {
        x0.iter_mut().for_each(|v| *v = -core::mem::take(v));
    }
    let scale_k = k.abs();

    let kernel_cols: Vec<IntVector> = red[..r].iter().map(|c| c[..n].to_vec()).collect();
    let kernel = IntMatrix::from_columns(n, &kernel_cols)?;

    // post-hoc verification of the read-off
    if !a.mul(&kernel)?.is_zero() {
        return Ok(None);
    }
    let ax = a.mul_vec(&x0)?;
    if ax.iter().zip(b).any(|(l, r)| *l != &scale_k * r) {
        return Ok(None);
    }
    Ok(Some(KernelSolveResult { kernel, x0, feasible: scale_k.is_one(), scale_k }))
}

/// Squared norms of the columns, used to order branching on `mu`.
pub fn column_lengths(q: &IntMatrix) -> Vec<Integer> {
    q.to_columns().iter().map(|c| norm_sq(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::lattice::same_lattice;

    fn both(a: &IntMatrix, b: &[i64]) -> [KernelSolveResult; 2] {
        let b: Vec<Integer> = b.iter().map(|&v| int(v)).collect();
        [
            kernel_and_solution(a, &b, KernelStrategy::Embedding).unwrap(),
            kernel_and_solution(a, &b, KernelStrategy::Hnf).unwrap(),
        ]
    }

    #[test]
    fn two_three_seven() {
        // kernel vectors with entries <= 5 in magnitude: +-(3,-2) only
        let mut found = Vec::new();
        for u in -5i64..=5 {
            for v in -5i64..=5 {
                if (u, v) != (0, 0) && 2 * u + 3 * v == 0 {
                    found.push((u, v));
                }
            }
        }
        assert_eq!(found, [(-3, 2), (3, -2)]);
        let a = IntMatrix::from_i64(&[[2, 3]]);
        for r in both(&a, &[7]) {
            assert!(r.feasible);
            assert_eq!(r.scale_k, int(1));
            let q = r.kernel.column(0);
            assert!(q == [int(3), int(-2)] || q == [int(-3), int(2)]);
            assert_eq!(int(2) * &r.x0[0] + int(3) * &r.x0[1], int(7));
        }
    }

    #[test]
    fn two_four_three_infeasible() {
        let a = IntMatrix::from_i64(&[[2, 4]]);
        for r in both(&a, &[3]) {
            assert!(!r.feasible);
            assert_eq!(r.scale_k, int(2));
            assert_eq!(int(2) * &r.x0[0] + int(4) * &r.x0[1], int(6));
        }
    }

    #[test]
    fn square_system_has_trivial_kernel() {
        let a = IntMatrix::from_i64(&[[2, 1], [1, 1]]);
        for r in both(&a, &[3, 2]) {
            assert_eq!(r.kernel.shape(), (2, 0));
            assert_eq!(r.x0, [int(1), int(1)]);
        }
    }

    #[test]
    fn cuww1_kernel_shape() {
        let a = IntMatrix::from_i64(&[[12223, 12224, 36674, 61119, 85569]]);
        let [emb, via] = both(&a, &[89643481]);
        assert!(same_lattice(&emb.kernel, &via.kernel));
        let norms = emb.kernel.column_norms_sq();
        assert_eq!(norms.len(), 4);
        assert_eq!(norms.iter().filter(|v| **v <= int(12)).count(), 3);
        assert!(norms.iter().any(|v| *v > int(1_000_000)));
    }

    #[test]
    fn general_kernel_of_rank_deficient_matrix() {
        let a = IntMatrix::from_i64(&[[1, 2, 3], [2, 4, 6]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).unwrap().is_zero());
        assert!(kernel_basis(&IntMatrix::zeros(2, 3)).unwrap().cols() == 3);
    }
}
