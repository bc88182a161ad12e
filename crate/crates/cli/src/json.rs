//! JSON encoding of exact values.
//!
//! Integers with at most 15 decimal digits become JSON numbers, longer ones
//! become decimal strings so no reader loses precision. Non-integral
//! rationals are strings `"p/q"`. Matrices are arrays of rows.

use latref_core::exact::{IntMatrix, Integer, Rational};
use serde_json::Value;

pub const MAX_NUMBER_DIGITS: usize = 15;

pub fn int(v: &Integer) -> Value {
    let s = v.to_string();
    if s.trim_start_matches('-').len() <= MAX_NUMBER_DIGITS {
        Value::from(s.parse::<i64>().expect("15 digits fit in i64"))
    } else {
        Value::String(s)
    }
}

pub fn ints(v: &[Integer]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| ints(m.row(i))).collect())
}

pub fn rational(r: &Rational) -> Value {
    if r.is_integer() {
        int(&r.to_integer())
    } else {
        Value::String(r.to_string())
    }
}

pub fn opt<T>(v: Option<&T>, f: impl FnOnce(&T) -> Value) -> Value {
    v.map_or(Value::Null, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn long_integers_become_strings() {
        let fifteen: Integer = "-999999999999999".parse().unwrap();
        assert_eq!(int(&fifteen), Value::from(-999_999_999_999_999i64));
        let sixteen: Integer = "1000000000000000".parse().unwrap();
        assert_eq!(int(&sixteen), Value::String("1000000000000000".into()));
    }

    #[test]
    fn rationals() {
        assert_eq!(rational(&Rational::new(6.into(), 3.into())), Value::from(2));
        assert_eq!(rational(&Rational::new((-1).into(), 3.into())), Value::String("-1/3".into()));
    }
}
