use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{width_bounds, Decomposition};
use crate::error::{Error, Result};
use crate::exact::{floor_rat, gcd_all, rat_from, Integer, Rational};

/// Which half of the `q1` window the bound comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrobeniusCase {
    /// `-M2/2 < q1 <= 0`.
    NonpositiveQ1,
    /// `0 < q1 <= M2/2`.
    PositiveQ1,
}

impl FrobeniusCase {
    pub fn as_str(self) -> &'static str {
        match self {
            FrobeniusCase::NonpositiveQ1 => "nonpositive_q1",
            FrobeniusCase::PositiveQ1 => "positive_q1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assumption {
    /// `p1_j / a_j > q1`
    A1,
    /// `p1_k / a_k < M2 + q1`
    A2,
    /// `((1 - zbar) / (zbar - zlower)) zlower` is not an integer
    A3,
    /// `p1_j / a_j > q1 - M2`
    B1,
    /// `p1_k / a_k < q1`
    B2,
    /// `((1 + zlower) / (zbar - zlower)) zbar` is not an integer
    B3,
}

impl Assumption {
    pub fn label(self) -> &'static str {
        match self {
            Assumption::A1 => "1a",
            Assumption::A2 => "2a",
            Assumption::A3 => "3a",
            Assumption::B1 => "1b",
            Assumption::B2 => "2b",
            Assumption::B3 => "3b",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusBound {
    pub case: FrobeniusCase,
    /// Exact lower bound on `F(a)`; `None` when an assumption fails.
    pub value: Option<Rational>,
    pub floor: Option<Integer>,
    pub failed: Vec<Assumption>,
}

impl FrobeniusBound {
    pub fn assumptions_ok(&self) -> bool {
        self.failed.is_empty()
    }
}

fn non_integral(x: Option<Rational>) -> bool {
    x.is_some_and(|x| !x.is_integer())
}

pub fn frobenius_lower_bound(d: &Decomposition) -> FrobeniusBound {
    let w = width_bounds(d);
    let (j, k) = (w.j, w.k);
    let (aj, ak) = (&d.a()[j], &d.a()[k]);
    let (pj, pk) = (&d.p1()[j], &d.p1()[k]);
    let rj = Rational::new(pj.clone(), aj.clone());
    let rk = Rational::new(pk.clone(), ak.clone());
    let m2 = d.m2();
    let q1 = rat_from(d.q1());
    let len = w.length();
    // `pk aj - pj ak`, positive exactly when zbar > zlower
    let spread = pk * aj - pj * ak;
    let one = Rational::one();

    let (case, failed, value) = if !d.q1().is_positive() {
        let mut failed = Vec::new();
        if rj <= q1 {
            failed.push(Assumption::A1);
        }
        if rk >= rat_from(m2) + &q1 {
            failed.push(Assumption::A2);
        }
        let test = (!len.is_zero()).then(|| (&one - &w.zbar) / &len * &w.zlower);
        if !non_integral(test) {
            failed.push(Assumption::A3);
        }
        let value = failed.is_empty().then(|| {
            Rational::new(aj * ak * (m2 + d.q1()) - pk * aj, spread.clone())
                - rat_from(m2) / (&rj - &q1)
        });
        (FrobeniusCase::NonpositiveQ1, failed, value)
    } else {
        let mut failed = Vec::new();
        if rj <= &q1 - rat_from(m2) {
            failed.push(Assumption::B1);
        }
        if rk >= q1 {
            failed.push(Assumption::B2);
        }
        let test = (!len.is_zero()).then(|| (&one + &w.zlower) / &len * &w.zbar);
        if !non_integral(test) {
            failed.push(Assumption::B3);
        }
        let value = failed.is_empty().then(|| {
            Rational::new(aj * ak * (m2 - d.q1()) + pj * ak, spread.clone())
                + rat_from(m2) / (&rk - &q1)
        });
        (FrobeniusCase::PositiveQ1, failed, value)
    };
    let floor = value.as_ref().map(floor_rat);
    FrobeniusBound { case, value, floor, failed }
}

/// Largest tractable smallest coefficient for the residue table.
pub const MAX_RESIDUE_MODULUS: u64 = 1_000_000;

/// Least representable value in each residue class modulo `min(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueTable {
    modulus: u128,
    least: Vec<Option<u128>>,
}

impl ResidueTable {
    /// Dijkstra over residues modulo the smallest coefficient.
    pub fn new(a: &[Integer]) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Domain("empty coefficient vector".into()));
        }
        if let Some(v) = a.iter().find(|v| !v.is_positive()) {
            return Err(Error::Domain(alloc::format!("coefficient {v} is not positive")));
        }
        let coeffs: Vec<u128> = a
            .iter()
            .map(|v| v.to_u64().map(u128::from))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Resource("coefficient exceeds 64 bits".into()))?;
        let modulus = *coeffs.iter().min().expect("nonempty");
        if modulus > u128::from(MAX_RESIDUE_MODULUS) {
            return Err(Error::Resource(alloc::format!(
                "smallest coefficient {modulus} exceeds {MAX_RESIDUE_MODULUS}"
            )));
        }
        let mut steps: Vec<u128> = coeffs.into_iter().filter(|&c| c % modulus != 0).collect();
        steps.sort_unstable();
        steps.dedup();

        let size = modulus as usize;
        let mut least: Vec<Option<u128>> = alloc::vec![None; size];
        least[0] = Some(0);
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((0u128, 0usize)));
        while let Some(Reverse((dist, r))) = heap.pop() {
            if least[r] != Some(dist) {
                continue;
            }
            for &c in &steps {
                let nd = dist + c;
                let nr = (nd % modulus) as usize;
                if least[nr].is_none_or(|old| nd < old) {
                    least[nr] = Some(nd);
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        Ok(ResidueTable { modulus, least })
    }

    /// Whether `b = a x` has a solution with `x >= 0` integral.
    pub fn represents(&self, b: &Integer) -> bool {
        if b.is_negative() {
            return false;
        }
        let r = (b % Integer::from(self.modulus)).to_usize().expect("residue fits");
        self.least[r].is_some_and(|l| Integer::from(l) <= *b)
    }

    /// `F(a)` when every residue class is reachable.
    pub fn frobenius(&self) -> Option<Integer> {
        let mut worst = 0u128;
        for l in &self.least {
            worst = worst.max((*l)?);
        }
        Some(Integer::from(worst) - Integer::from(self.modulus))
    }
}

/// Largest `b` with no nonnegative integer solution of `a x = b`.
pub fn frobenius_exact(a: &[Integer]) -> Result<Integer> {
    if a.len() < 2 {
        return Err(Error::Domain("the Frobenius number needs at least two coefficients".into()));
    }
    if a.iter().any(|v| !v.is_positive()) {
        return Err(Error::Domain("coefficients must be positive".into()));
    }
    if !gcd_all(a).is_one() {
        return Err(Error::Domain("the Frobenius number is undefined when gcd(a) != 1".into()));
    }
    let table = ResidueTable::new(a)?;
    table.frobenius().ok_or_else(|| Error::Invariant("unreachable residue with gcd 1".into()))
}
