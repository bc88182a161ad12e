//! Exact scalar and matrix arithmetic.
//!
//! Everything downstream works over arbitrary-precision integers and reduced
//! fractions; there is no floating point anywhere in the crate.

mod gcd;
mod gram_schmidt;
mod matrix;

pub use gcd::{extended_gcd, Bezout};
pub use gram_schmidt::{gram_schmidt, GramSchmidtData};
pub use matrix::{dot, norm_sq, IntMatrix, IntVector, RatMatrix};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Always-reduced fraction with positive denominator.
pub type Rational = BigRational;

#[inline]
pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

/// `num / den`, reduced. Panics when `den == 0`.
#[inline]
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

#[inline]
pub fn rat_from(v: &Integer) -> Rational {
    Rational::from_integer(v.clone())
}

/// Floor division for integers (rounds toward negative infinity).
pub fn floor_div(a: &Integer, b: &Integer) -> Integer {
    a.div_floor(b)
}

/// Nearest integer to `num / den`, ties rounded up (towards +inf).
pub fn round_div(num: &Integer, den: &Integer) -> Integer {
    debug_assert!(!den.is_zero());
    let two = int(2);
    let (n, d) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
    (two.clone() * n + &d).div_floor(&(two * d))
}

pub fn floor_rat(x: &Rational) -> Integer {
    x.floor().to_integer()
}

pub fn ceil_rat(x: &Rational) -> Integer {
    x.ceil().to_integer()
}

/// Least common multiple of the denominators of `xs` (1 for an empty slice).
pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Integer {
    xs.into_iter().fold(Integer::one(), |acc, x| acc.lcm(x.denom()))
}

/// Non-negative gcd of all entries (0 for an empty or all-zero slice).
pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a Integer>) -> Integer {
    xs.into_iter().fold(Integer::zero(), |acc, x| acc.gcd(x))
}
