use alloc::vec::Vec;

use num_traits::One;

use super::{EqualitySystem, ExtendedFormulation};
use crate::error::{Error, Result};
use crate::exact::{IntVector, Integer};
use crate::lattice::LatticeMembership;

/// Outcome of comparing `X` with `X^{P,T}` on every integer point of a box.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EquivalenceReport {
    pub points: u64,
    /// Points of the box lying in `X`.
    pub in_x: u64,
    /// `x in X` but no integer `mu` exists.
    pub missing: Vec<IntVector>,
    /// `x in X^{P,T}` but `A x != b`.
    pub extra: Vec<IntVector>,
}

impl EquivalenceReport {
    pub fn discrepancies(&self) -> usize {
        self.missing.len() + self.extra.len()
    }

    pub fn is_equivalent(&self) -> bool {
        self.discrepancies() == 0
    }

    fn normalize(&mut self) {
        self.missing.sort();
        self.extra.sort();
    }
}

/// Hard cap on the number of enumerated points.
pub const MAX_BOX_POINTS: u64 = 50_000_000;

/// Enumerates the box `[lower, upper]` and checks, point by point, that
/// `A x = b` holds exactly when `P (x - x0) = T mu` has an integer solution.
pub fn verify_formulation_equivalence(
    sys: &EqualitySystem,
    ef: &ExtendedFormulation,
    lower: &[Integer],
    upper: &[Integer],
) -> Result<EquivalenceReport> {
    let n = sys.n();
    if lower.len() != n || upper.len() != n {
        return Err(Error::Dimension("box bounds must have one entry per variable".into()));
    }
    let mut count: u64 = 1;
    for (l, u) in lower.iter().zip(upper) {
        if l > u {
            return Ok(EquivalenceReport::default());
        }
        let width = u64::try_from(&(u - l + Integer::one()))
            .map_err(|_| Error::Resource("box too large".into()))?;
        count = count.saturating_mul(width);
    }
    if count > MAX_BOX_POINTS {
        return Err(Error::Resource(alloc::format!("box has {count} points (limit {MAX_BOX_POINTS})")));
    }

    let mut report = enumerate_box(sys, ef, lower, upper)?;
    report.normalize();
    Ok(report)
}

fn enumerate_box(
    sys: &EqualitySystem,
    ef: &ExtendedFormulation,
    lower: &[Integer],
    upper: &[Integer],
) -> Result<EquivalenceReport> {
    let membership = LatticeMembership::new(&ef.t);
    let mut report = EquivalenceReport::default();
    let mut x = lower.to_vec();
    loop {
        report.points += 1;
        let in_x = sys.is_solution(&x);
        let diff: IntVector = ef.p.mul_vec(&x)?.into_iter().zip(&ef.px0).map(|(a, b)| a - b).collect();
        let in_ext = membership.solve(&diff).is_some();
        if in_x {
            report.in_x += 1;
        }
        match (in_x, in_ext) {
            (true, false) => report.missing.push(x.clone()),
            (false, true) => report.extra.push(x.clone()),
            _ => {}
        }
        // odometer
        let mut i = x.len();
        loop {
            if i == 0 {
                return Ok(report);
            }
            i -= 1;
            if x[i] < upper[i] {
                x[i] += 1;
                break;
            }
            x[i] = lower[i].clone();
        }
    }
}
