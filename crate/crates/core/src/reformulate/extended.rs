use alloc::vec::Vec;

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::{BasisSplit, EqualitySystem};
use crate::error::{Error, Result};
use crate::exact::{IntMatrix, IntVector, Integer};
use crate::lattice::{hnf, kernel_basis, rank, same_lattice};

/// `X = { x in Z^n : P x = P x0 + T mu, mu in Z^s }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedFormulation {
    /// `(m + s) x n`.
    pub p: IntMatrix,
    /// `m x (m + s)` multipliers with `A = M P`.
    pub m: IntMatrix,
    /// `(m + s) x s`, a basis of the kernel lattice of `M`.
    pub t: IntMatrix,
    pub x0: IntVector,
    pub px0: IntVector,
    /// The long kernel columns `S` with `T = P S` (`n x s`).
    pub long: IntMatrix,
    /// Set when `HNF(P)` was `(D | 0)` with `D != I` and `P` was replaced by
    /// `D^-1 P`.
    pub rescaled_by: Option<IntMatrix>,
}

impl ExtendedFormulation {
    pub fn s(&self) -> usize {
        self.t.cols()
    }

    pub fn rows(&self) -> usize {
        self.p.rows()
    }

    /// Checks `A = M P`, `M T = 0` and that `T` generates the whole kernel
    /// lattice of `M`.
    pub fn check_invariants(&self, a: &IntMatrix) -> Result<()> {
        if self.m.mul(&self.p)? != *a {
            return Err(Error::Invariant("A != M P".into()));
        }
        if !self.m.mul(&self.t)?.is_zero() {
            return Err(Error::Invariant("M T != 0".into()));
        }
        let reference = kernel_basis(&self.m)?;
        if !same_lattice(&self.t, &reference) {
            return Err(Error::Invariant("T is not a basis of the kernel lattice of M".into()));
        }
        if self.p.mul_vec(&self.x0)? != self.px0 {
            return Err(Error::Invariant("stored P x0 is stale".into()));
        }
        Ok(())
    }
}

/// Reduced basis `P^T` of `{ y in Z^n : R^T y = 0 }` (`n x (n - r)`);
/// the identity when `R` has no columns.
pub fn dual_kernel(r: &IntMatrix) -> Result<IntMatrix> {
    let n = r.rows();
    if r.cols() == 0 {
        return Ok(IntMatrix::identity(n));
    }
    let rt = r.transpose();
    if rank(&rt) < r.cols() {
        return Err(crate::exact::gram_schmidt(r)
            .err()
            .unwrap_or(Error::RankDeficient { what: "column", index: 0 }));
    }
    kernel_basis(&rt)
}

/// Solves `M P = A` over the integers.
pub fn solve_multipliers(p: &IntMatrix, a: &IntMatrix) -> Result<IntMatrix> {
    if p.cols() != a.cols() {
        return Err(Error::Dimension(alloc::format!(
            "P has {} columns, A has {}",
            p.cols(),
            a.cols()
        )));
    }
    let k = p.rows();
    let h = hnf(p)?;
    let c = a.mul(&h.u)?;
    for i in 0..c.rows() {
        if (k..c.cols()).any(|j| !c.get(i, j).is_zero()) {
            return Err(Error::Integrality(alloc::format!(
                "row {i} of A is not in the row space of P"
            )));
        }
    }
    // M D = C[:, ..k] with D lower triangular, solved right to left
    let mut rows = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut row = alloc::vec![Integer::zero(); k];
        for j in (0..k).rev() {
            let mut acc = c.get(i, j).clone();
            for (l, ml) in row.iter().enumerate().skip(j + 1) {
                acc -= ml * h.d.get(l, j);
            }
            let (q, r) = acc.div_rem(h.d.get(j, j));
            if !r.is_zero() {
                return Err(Error::Integrality(alloc::format!(
                    "row {i} of A is not an integer combination of the rows of P"
                )));
            }
            row[j] = q;
        }
        rows.push(row);
    }
    IntMatrix::from_rows(rows).map(|m| if m.rows() == 0 { IntMatrix::zeros(0, k) } else { m })
}

/// `D^-1 P` for lower-triangular `D` (exact).
fn left_divide(d: &IntMatrix, p: &IntMatrix) -> Result<IntMatrix> {
    let k = d.rows();
    let mut out = IntMatrix::zeros(k, p.cols());
    for col in 0..p.cols() {
        for i in 0..k {
            let mut acc = p.get(i, col).clone();
            for j in 0..i {
                acc -= d.get(i, j) * out.get(j, col);
            }
            let (q, r) = acc.div_rem(d.get(i, i));
            if !r.is_zero() {
                return Err(Error::Integrality("D^-1 P is not integral".into()));
            }
            *out.get_mut(i, col) = q;
        }
    }
    Ok(out)
}

/// Normalizes `P` so that `HNF(P) = (I | 0)`; returns the divisor `D` when
/// a rescaling was needed.
pub(crate) fn unit_hnf(p: &IntMatrix) -> Result<(IntMatrix, Option<IntMatrix>)> {
    let h = hnf(p)?;
    if h.d.is_identity() {
        Ok((p.clone(), None))
    } else {
        Ok((left_divide(&h.d, p)?, Some(h.d)))
    }
}

/// Builds `X^{P, PS}` from a split `Q = (R | S)` of a kernel basis.
pub fn build_extended(
    sys: &EqualitySystem,
    split: &BasisSplit,
    x0: &[Integer],
) -> Result<ExtendedFormulation> {
    let a = sys.a();
    let (m, n) = a.shape();
    if split.short.rows() != n || split.long.rows() != n {
        return Err(Error::Dimension("kernel basis has the wrong row count".into()));
    }
    if split.r() + split.s() != n - m {
        return Err(Error::Dimension(alloc::format!(
            "split has {} columns, kernel rank is {}",
            split.r() + split.s(),
            n - m
        )));
    }
    if !a.mul(&split.basis())?.is_zero() {
        return Err(Error::Domain("split columns are not kernel vectors".into()));
    }
    if !sys.is_solution(x0) {
        return Err(Error::Domain("x0 does not solve A x = b".into()));
    }

    let pt = dual_kernel(&split.short)?;
    let (mut p, rescaled_by) = unit_hnf(&pt.transpose())?;
    let mut mult = solve_multipliers(&p, a)?;

    if m == 1 && split.r() > 0 {
        // knapsack multipliers positive
        for i in 0..p.rows() {
            let lead = (0..m).map(|r| mult.get(r, i)).find(|v| !v.is_zero());
            if lead.is_some_and(|v| v.is_negative()) {
                for j in 0..n {
                    let v = -core::mem::take(p.get_mut(i, j));
                    *p.get_mut(i, j) = v;
                }
                for r in 0..m {
                    let v = -core::mem::take(mult.get_mut(r, i));
                    *mult.get_mut(r, i) = v;
                }
            }
        }
    }

    let t = p.mul(&split.long)?;
    let px0 = p.mul_vec(x0)?;
    let ef = ExtendedFormulation {
        p,
        m: mult,
        t,
        x0: x0.to_vec(),
        px0,
        long: split.long.clone(),
        rescaled_by,
    };
    ef.check_invariants(a)?;
    Ok(ef)
}

/// Eliminates `y` from `C x + D y = b`: returns `(Delta^T C, Delta^T b)`
/// for a kernel basis `Delta` of `D^T`. Over the reals the result describes
/// exactly the projection onto `x`.
pub fn project_affine(c: &IntMatrix, d: &IntMatrix, b: &[Integer]) -> Result<(IntMatrix, IntVector)> {
    if c.rows() != d.rows() || c.rows() != b.len() {
        return Err(Error::Dimension(alloc::format!(
            "C is {}x{}, D is {}x{}, b has length {}",
            c.rows(),
            c.cols(),
            d.rows(),
            d.cols(),
            b.len()
        )));
    }
    let delta = kernel_basis(&d.transpose())?;
    let dt = delta.transpose();
    let cp = dt.mul(c)?;
    let bp = dt.mul_vec(b)?;
    Ok((cp, bp))
}
