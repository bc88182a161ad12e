use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, Rational};
use crate::lattice::sort_columns_by_norm;

/// How a reduced kernel basis is divided into short and long vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitPolicy {
    /// The `s` longest columns are long.
    FixedS(usize),
    /// Split at the last consecutive squared-norm ratio `>= rho`; if there is
    /// none, every column is long.
    Ratio(Rational),
}

impl Default for SplitPolicy {
    fn default() -> Self {
        SplitPolicy::Ratio(Rational::from_integer(100.into()))
    }
}

/// A kernel basis `Q = (R | S)` in nondecreasing norm order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSplit {
    /// Short columns.
    pub short: IntMatrix,
    /// Long columns.
    pub long: IntMatrix,
}

impl BasisSplit {
    pub fn r(&self) -> usize {
        self.short.cols()
    }

    pub fn s(&self) -> usize {
        self.long.cols()
    }

    /// `(R | S)`.
    pub fn basis(&self) -> IntMatrix {
        self.short.hstack(&self.long).expect("parts share a row count")
    }
}

pub fn split_basis(q: &IntMatrix, policy: &SplitPolicy) -> Result<BasisSplit> {
    let q = sort_columns_by_norm(q);
    let k = q.cols();
    let norms = q.column_norms_sq();
    let r = match policy {
        SplitPolicy::FixedS(s) => {
            if *s > k {
                return Err(Error::Domain(alloc::format!("s = {s} outside [0, {k}]")));
            }
            k - s
        }
        SplitPolicy::Ratio(rho) => (1..k)
            .rev()
            .find(|&j| {
                !norms[j - 1].is_zero()
                    && Rational::new(norms[j].clone(), norms[j - 1].clone()) >= *rho
            })
            .unwrap_or(0),
    };
    let short: Vec<usize> = (0..r).collect();
    let long: Vec<usize> = (r..k).collect();
    Ok(BasisSplit { short: q.select_columns(&short), long: q.select_columns(&long) })
}
