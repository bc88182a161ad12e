use alloc::vec::Vec;

use num_traits::Zero;

use super::{IntMatrix, Rational};
use crate::error::{Error, Result};

/// Exact Gram–Schmidt orthogonalization of the columns of a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramSchmidtData {
    /// Orthogonalized vectors `b*_j`, one per input column.
    pub bstar: Vec<Vec<Rational>>,
    /// `mu[j][k]` for `k < j`; row `j` has length `j`.
    pub mu: Vec<Vec<Rational>>,
    /// `||b*_j||^2`.
    pub norms_sq: Vec<Rational>,
}

fn rdot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gram_schmidt(basis: &IntMatrix) -> Result<GramSchmidtData> {
    let k = basis.cols();
    let mut bstar: Vec<Vec<Rational>> = Vec::with_capacity(k);
    let mut mu = Vec::with_capacity(k);
    let mut norms_sq: Vec<Rational> = Vec::with_capacity(k);
    for j in 0..k {
        let bj: Vec<Rational> = basis.column(j).into_iter().map(Rational::from_integer).collect();
        let mut v = bj.clone();
        let mut row = Vec::with_capacity(j);
        for (prev, nsq) in bstar.iter().zip(&norms_sq) {
            let m = rdot(&bj, prev) / nsq;
            for (vi, pi) in v.iter_mut().zip(prev) {
                *vi -= &m * pi;
            }
            row.push(m);
        }
        let nsq = rdot(&v, &v);
        if nsq.is_zero() {
            return Err(Error::RankDeficient { what: "column", index: j });
        }
        bstar.push(v);
        mu.push(row);
        norms_sq.push(nsq);
    }
    Ok(GramSchmidtData { bstar, mu, norms_sq })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use num_traits::One;

    #[test]
    fn identity_is_fixed() {
        let gs = gram_schmidt(&IntMatrix::identity(3)).unwrap();
        for (j, v) in gs.bstar.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
            }
            assert!(gs.mu[j].iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn two_by_two_by_hand() {
        // b1 = (1,1), b2 = (0,2): mu = 2/2 = 1, b2* = (0,2) - (1,1) = (-1,1).
        let b = IntMatrix::from_i64(&[[1, 0], [1, 2]]);
        let gs = gram_schmidt(&b).unwrap();
        assert_eq!(gs.mu[1][0], rat(1, 1));
        assert_eq!(gs.bstar[1], [rat(-1, 1), rat(1, 1)]);
        assert_eq!(gs.norms_sq, [Rational::from_integer(int(2)), rat(2, 1)]);
    }

    #[test]
    fn dependent_column_reported() {
        let b = IntMatrix::from_i64(&[[2, 1], [0, 0]]);
        assert_eq!(gram_schmidt(&b), Err(Error::RankDeficient { what: "column", index: 1 }));
    }

    proptest::proptest! {
        #[test]
        fn orthogonal_output(entries in proptest::collection::vec(-9i64..=9, 12)) {
            let b = IntMatrix::from_fn(4, 3, |i, j| int(entries[i * 3 + j]));
            if let Ok(gs) = gram_schmidt(&b) {
                for j in 0..3 {
                    for k in 0..j {
                        proptest::prop_assert!(rdot(&gs.bstar[j], &gs.bstar[k]).is_zero());
                    }
                }
            }
        }
    }
}
