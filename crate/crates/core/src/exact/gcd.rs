use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::Integer;
use crate::error::{Error, Result};

/// Bezout coefficients `m1 * q1 + m2 * q2 = g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bezout {
    pub g: Integer,
    pub q1: Integer,
    pub q2: Integer,
}

/// Extended Euclid on two positive integers.
///
/// The returned `q1` is normalized into the half-open window
/// `(-m2/(2g), m2/(2g)]`, which makes the pair unique. For coprime inputs
/// this is `(-m2/2, m2/2]`; any other valid pair differs by a multiple of
/// `(-m2/g, m1/g)`.
pub fn extended_gcd(m1: &Integer, m2: &Integer) -> Result<Bezout> {
    if !m1.is_positive() || !m2.is_positive() {
        return Err(Error::Domain(alloc::format!(
            "extended_gcd requires positive inputs, got ({m1}, {m2})"
        )));
    }

    let (mut r0, mut r1) = (m1.clone(), m2.clone());
    let (mut s0, mut s1) = (Integer::one(), Integer::zero());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s2 = &s0 - &q * &s1;
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
    }
    let g = r0;

    let period = m2 / &g;
    let mut q1 = s0.mod_floor(&period);
    if Integer::from(2) * &q1 > period {
        q1 -= &period;
    }
    let q2 = (&g - m1 * &q1) / m2;
    debug_assert_eq!(m1 * &q1 + m2 * &q2, g);
    Ok(Bezout { g, q1, q2 })
}
