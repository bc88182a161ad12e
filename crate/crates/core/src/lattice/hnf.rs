//! Column-style Hermite normal form with explicit unimodular transform.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{floor_div, IntMatrix, Integer};

/// `A U = (D | 0)` for a full-row-rank `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfResult {
    /// `m x m`, lower triangular, nonnegative, diagonal strictly dominates its row.
    pub d: IntMatrix,
    /// `n x n` unimodular.
    pub u: IntMatrix,
}

/// Column echelon form of an arbitrary integer matrix.
#[derive(Debug, Clone)]
pub(crate) struct Echelon {
    /// `A U`; the first `rank` columns are the canonical lattice basis, the
    /// remaining columns are zero.
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// `pivot_rows[c]` is the row holding the pivot of column `c`.
    pub pivot_rows: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

/// Unimodular column operations on `h`, mirrored into `u`.
struct ColumnOps {
    h: IntMatrix,
    u: IntMatrix,
}

impl ColumnOps {
    fn swap(&mut self, a: usize, b: usize) {
        self.h.swap_columns(a, b);
        self.u.swap_columns(a, b);
    }

    fn negate(&mut self, c: usize) {
        for m in [&mut self.h, &mut self.u] {
            for i in 0..m.rows() {
                let v = -core::mem::take(m.get_mut(i, c));
                *m.get_mut(i, c) = v;
            }
        }
    }

    /// column `t` -= q * column `c`
    fn sub_multiple(&mut self, t: usize, c: usize, q: &Integer) {
        if q.is_zero() {
            return;
        }
        for m in [&mut self.h, &mut self.u] {
            for i in 0..m.rows() {
                let delta = q * m.get(i, c);
                *m.get_mut(i, t) -= delta;
            }
        }
    }
}

/// Lower column echelon form via repeated Euclidean elimination along each
/// row, smallest nonzero entry as pivot (lowest column index on ties).
/// Entries left of a pivot are reduced into `[0, pivot)`, which makes the
/// nonzero columns the canonical basis of the column lattice.
pub(crate) fn column_echelon(a: &IntMatrix) -> Echelon {
    let (m, n) = a.shape();
    let mut ops = ColumnOps { h: a.clone(), u: IntMatrix::identity(n) };
    let mut pivot_rows = Vec::new();
    let mut c = 0usize;
    for i in 0..m {
        if c == n {
            break;
        }
        loop {
            let pick = (c..n)
                .filter(|&j| !ops.h.get(i, j).is_zero())
                .min_by(|&x, &y| ops.h.get(i, x).abs().cmp(&ops.h.get(i, y).abs()));
            let Some(p) = pick else { break };
            ops.swap(c, p);
            let mut done = true;
            for t in c + 1..n {
                if ops.h.get(i, t).is_zero() {
                    continue;
                }
                let q = floor_div(ops.h.get(i, t), ops.h.get(i, c));
                ops.sub_multiple(t, c, &q);
                if !ops.h.get(i, t).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if ops.h.get(i, c).is_zero() {
            continue;
        }
        if ops.h.get(i, c).is_negative() {
            ops.negate(c);
        }
        for t in 0..c {
            let q = floor_div(ops.h.get(i, t), ops.h.get(i, c));
            ops.sub_multiple(t, c, &q);
        }
        pivot_rows.push(i);
        c += 1;
    }
    Echelon { h: ops.h, u: ops.u, pivot_rows }
}

/// Hermite normal form of a full-row-rank matrix.
pub fn hnf(a: &IntMatrix) -> Result<HnfResult> {
    let (m, _n) = a.shape();
    let e = column_echelon(a);
    if e.rank() < m {
        let missing = (0..m).find(|r| !e.pivot_rows.contains(r)).unwrap_or(m);
        return Err(Error::RankDeficient { what: "row", index: missing });
    }
    let d = e.h.select_columns(&(0..m).collect::<Vec<_>>());
    Ok(HnfResult { d, u: e.u })
}

/// Canonical basis of the lattice generated by the columns of `b`
/// (which may be dependent). Two generating sets span the same lattice iff
/// their `lattice_hnf` are equal.
pub fn lattice_hnf(b: &IntMatrix) -> IntMatrix {
    let e = column_echelon(b);
    e.h.select_columns(&(0..e.rank()).collect::<Vec<_>>())
}

pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.rows() == b.rows() && lattice_hnf(a) == lattice_hnf(b)
}

/// Rank of an integer matrix (equal to its rank over the rationals).
pub fn rank(a: &IntMatrix) -> usize {
    column_echelon(a).rank()
}

/// Decides membership `t in L(B)` and returns integer coefficients.
#[derive(Debug, Clone)]
pub struct LatticeMembership {
    echelon: Echelon,
}

impl LatticeMembership {
    pub fn new(basis: &IntMatrix) -> Self {
        LatticeMembership { echelon: column_echelon(basis) }
    }

    /// Some `mu` with `B mu = t`, or `None` if `t` is not a lattice vector.
    pub fn solve(&self, t: &[Integer]) -> Option<Vec<Integer>> {
        let e = &self.echelon;
        if t.len() != e.h.rows() {
            return None;
        }
        let mut nu: Vec<Integer> = Vec::with_capacity(e.rank());
        for (c, &row) in e.pivot_rows.iter().enumerate() {
            let mut acc = t[row].clone();
            for (cc, v) in nu.iter().enumerate() {
                acc -= e.h.get(row, cc) * v;
            }
            let (q, r) = num_integer::Integer::div_rem(&acc, e.h.get(row, c));
            if !r.is_zero() {
                return None;
            }
            nu.push(q);
        }
        for (i, ti) in t.iter().enumerate() {
            let lhs: Integer = nu.iter().enumerate().map(|(c, v)| e.h.get(i, c) * v).sum();
            if lhs != *ti {
                return None;
            }
        }
        let n = e.u.rows();
        Some((0..n).map(|i| nu.iter().enumerate().map(|(c, v)| e.u.get(i, c) * v).sum()).collect())
    }
}
