use num_traits::Zero;

use super::Decomposition;
use crate::exact::{ceil_rat, floor_rat, rat_from, Integer, Rational};

/// Range of `mu` per unit of right-hand side: for `b >= 0` the LP values of
/// `mu` fill `[b zlower, b zbar]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthAnalysis {
    /// `argmin p1_i / a_i`.
    pub j: usize,
    /// `argmax p1_i / a_i`.
    pub k: usize,
    pub zbar: Rational,
    pub zlower: Rational,
}

impl WidthAnalysis {
    /// `floor(b zbar) - ceil(b zlower) + 1`; zero or negative means no
    /// integer `mu`.
    pub fn width_raw(&self, b: &Integer) -> Integer {
        let b = rat_from(b);
        floor_rat(&(&b * &self.zbar)) - ceil_rat(&(&b * &self.zlower)) + 1
    }

    pub fn width(&self, b: &Integer) -> Integer {
        self.width_raw(b).max(Integer::zero())
    }

    /// `zbar - zlower`.
    pub fn length(&self) -> Rational {
        &self.zbar - &self.zlower
    }
}

fn ratio(d: &Decomposition, i: usize) -> Rational {
    Rational::new(d.p1()[i].clone(), d.a()[i].clone())
}

/// Indices of the smallest and largest `p1_i / a_i`, lowest index on ties.
pub(crate) fn extreme_indices(d: &Decomposition) -> (usize, usize) {
    let (mut j, mut k) = (0, 0);
    for i in 1..d.n() {
        let r = ratio(d, i);
        if r < ratio(d, j) {
            j = i;
        }
        if r > ratio(d, k) {
            k = i;
        }
    }
    (j, k)
}

pub fn width_bounds(d: &Decomposition) -> WidthAnalysis {
    let (j, k) = extreme_indices(d);
    let m2 = rat_from(d.m2());
    let shift = rat_from(d.q1()) / &m2;
    let zbar = ratio(d, k) / &m2 - &shift;
    let zlower = ratio(d, j) / &m2 - &shift;
    WidthAnalysis { j, k, zbar, zlower }
}

/// Number of integer values of `mu` over the LP relaxation, clamped at 0.
pub fn integer_width(d: &Decomposition, b: &Integer) -> Integer {
    width_bounds(d).width(b)
}

pub fn integer_width_raw(d: &Decomposition, b: &Integer) -> Integer {
    width_bounds(d).width_raw(b)
}

/// Whether moving `(q1, q2)` by `lambda (-M2, M1)` leaves the integer width
/// unchanged.
pub fn width_q_shift_check(d: &Decomposition, b: &Integer, lambda: &Integer) -> bool {
    integer_width_raw(d, b) == integer_width_raw(&d.shifted(lambda), b)
}
