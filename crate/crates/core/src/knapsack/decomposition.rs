use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{extended_gcd, gcd_all, IntMatrix, IntVector, Integer};
use crate::lattice::hnf;
use crate::reformulate::unit_hnf;

/// `a = M1 p1 + M2 p2` with `HNF((p1; p2)) = (I | 0)` and the normalized
/// Bezout pair `M1 q1 + M2 q2 = 1`, `-M2/2 < q1 <= M2/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    a: IntVector,
    p1: IntVector,
    p2: IntVector,
    m1: Integer,
    m2: Integer,
    q1: Integer,
    q2: Integer,
    rescaled: bool,
}

impl Decomposition {
    pub fn a(&self) -> &[Integer] {
        &self.a
    }

    pub fn p1(&self) -> &[Integer] {
        &self.p1
    }

    pub fn p2(&self) -> &[Integer] {
        &self.p2
    }

    pub fn m1(&self) -> &Integer {
        &self.m1
    }

    pub fn m2(&self) -> &Integer {
        &self.m2
    }

    pub fn q1(&self) -> &Integer {
        &self.q1
    }

    pub fn q2(&self) -> &Integer {
        &self.q2
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Whether the supplied rows had to be replaced by `D^-1 P`.
    pub fn rescaled(&self) -> bool {
        self.rescaled
    }

    /// `(p1; p2)` as a `2 x n` matrix.
    pub fn p(&self) -> IntMatrix {
        IntMatrix::from_rows(alloc::vec![self.p1.clone(), self.p2.clone()]).expect("equal lengths")
    }

    /// The same decomposition with `(q1, q2)` moved to `(q1 - l M2, q2 + l M1)`.
    /// The result no longer satisfies the window on `q1` unless `l = 0`.
    pub fn shifted(&self, lambda: &Integer) -> Decomposition {
        let mut d = self.clone();
        d.q1 = &self.q1 - lambda * &self.m2;
        d.q2 = &self.q2 + lambda * &self.m1;
        d
    }
}

fn invalid(msg: impl Into<alloc::string::String>) -> Error {
    Error::Validation(msg.into())
}

pub fn make_decomposition(
    a: &[Integer],
    p1: &[Integer],
    p2: &[Integer],
    m1: &Integer,
    m2: &Integer,
) -> Result<Decomposition> {
    let n = a.len();
    if n < 2 {
        return Err(Error::Dimension(alloc::format!("need at least two coefficients, got {n}")));
    }
    if p1.len() != n || p2.len() != n {
        return Err(Error::Dimension("p1, p2 and a must have equal length".into()));
    }
    if let Some(i) = a.iter().position(|v| !v.is_positive()) {
        return Err(invalid(alloc::format!("a[{i}] = {} is not positive", a[i])));
    }
    if !gcd_all(a).is_one() {
        return Err(invalid("gcd of a is not 1"));
    }
    if !m1.is_positive() || !m2.is_positive() {
        return Err(invalid("M1 and M2 must be positive"));
    }
    if let Some(i) = (0..n).find(|&i| m1 * &p1[i] + m2 * &p2[i] != a[i]) {
        return Err(invalid(alloc::format!("a[{i}] != M1 p1[{i}] + M2 p2[{i}]")));
    }
    let p = IntMatrix::from_rows(alloc::vec![p1.to_vec(), p2.to_vec()])?;
    if hnf(&p).is_err() {
        return Err(invalid("p1 and p2 are linearly dependent"));
    }
    let (mut p, d) = unit_hnf(&p)?;
    let mut m = alloc::vec![m1.clone(), m2.clone()];
    if let Some(d) = &d {
        // a = M P = (M D)(D^-1 P)
        m = IntMatrix::row_vector(&m).mul(d)?.row(0).to_vec();
    }
    for (i, mi) in m.iter_mut().enumerate() {
        if mi.is_zero() {
            return Err(invalid("a is a multiple of a single row of P"));
        }
        if mi.is_negative() {
            *mi = -core::mem::take(mi);
            for j in 0..n {
                let v = -core::mem::take(p.get_mut(i, j));
                *p.get_mut(i, j) = v;
            }
        }
    }
    let [m1, m2]: [Integer; 2] = m.try_into().expect("two multipliers");
    let bz = extended_gcd(&m1, &m2)?;
    if !bz.g.is_one() {
        return Err(invalid("gcd(M1, M2) is not 1"));
    }
    let rows: Vec<IntVector> = p.to_rows();
    let [p1, p2]: [IntVector; 2] = rows.try_into().expect("two rows");
    Ok(Decomposition {
        a: a.to_vec(),
        p1,
        p2,
        m1,
        m2,
        q1: bz.q1,
        q2: bz.q2,
        rescaled: d.is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn ints(v: &[i64]) -> IntVector {
        v.iter().map(|&x| int(x)).collect()
    }

    fn cuww1() -> Decomposition {
        make_decomposition(
            &ints(&[12223, 12224, 36674, 61119, 85569]),
            &ints(&[-1, 0, 2, -1, 1]),
            &ints(&[2, 1, 1, 6, 6]),
            &int(12225),
            &int(12224),
        )
        .unwrap()
    }

    #[test]
    fn cuww1_bezout() {
        let d = cuww1();
        assert_eq!((d.q1(), d.q2()), (&int(1), &int(-1)));
        assert!(!d.rescaled());
    }

    #[test]
    fn unit_vectors() {
        let d = make_decomposition(&ints(&[1, 1]), &ints(&[1, 0]), &ints(&[0, 1]), &int(1), &int(1))
            .unwrap();
        assert_eq!((d.q1(), d.q2()), (&int(0), &int(1)));
    }

    #[test]
    fn zero_row_rejected() {
        let e = make_decomposition(&ints(&[2, 3]), &ints(&[2, 3]), &ints(&[0, 0]), &int(1), &int(1));
        assert!(matches!(e, Err(Error::Validation(_))));
    }

    #[test]
    fn violations_are_named() {
        let bad = |a: &[i64], p1: &[i64], p2: &[i64], m1, m2| {
            make_decomposition(&ints(a), &ints(p1), &ints(p2), &int(m1), &int(m2)).unwrap_err()
        };
        assert!(matches!(bad(&[2, 4], &[2, 4], &[0, 0], 1, 1), Error::Validation(m) if m.contains("gcd")));
        assert!(matches!(bad(&[0, 1], &[0, 1], &[0, 0], 1, 1), Error::Validation(m) if m.contains("positive")));
        assert!(matches!(bad(&[3, 5], &[1, 0], &[0, 1], 3, 4), Error::Validation(m) if m.contains("a[1]")));
    }

    #[test]
    fn rescales_non_unit_hnf() {
        // rows generate 2Z x Z; a = 3 (2,0) + 1 (1,1) -> (7, 1)
        let d = make_decomposition(&ints(&[7, 1]), &ints(&[2, 0]), &ints(&[1, 1]), &int(3), &int(1))
            .unwrap();
        assert!(d.rescaled());
        assert_eq!(hnf(&d.p()).unwrap().d, IntMatrix::identity(2));
        for i in 0..2 {
            assert_eq!(d.m1() * &d.p1()[i] + d.m2() * &d.p2()[i], d.a()[i]);
        }
        assert_eq!(d.m1() * d.q1() + d.m2() * d.q2(), int(1));
    }
}
