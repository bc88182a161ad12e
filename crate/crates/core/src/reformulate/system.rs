use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, IntVector, Integer};
use crate::lattice::rank;

/// `A x = b` with optional per-variable bounds.
///
/// A missing lower bound means `x >= 0` when the system is handed to the
/// solver; a missing upper bound means unbounded above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualitySystem {
    a: IntMatrix,
    b: IntVector,
    lower: Option<IntVector>,
    upper: Option<IntVector>,
}

impl EqualitySystem {
    pub fn new(
        a: IntMatrix,
        b: IntVector,
        lower: Option<IntVector>,
        upper: Option<IntVector>,
    ) -> Result<Self> {
        let (m, n) = a.shape();
        if m == 0 || n == 0 {
            return Err(Error::Dimension(alloc::format!("empty system ({m}x{n})")));
        }
        if b.len() != m {
            return Err(Error::Dimension(alloc::format!(
                "right-hand side has length {}, expected {m}",
                b.len()
            )));
        }
        for bound in [&lower, &upper].into_iter().flatten() {
            if bound.len() != n {
                return Err(Error::Dimension(alloc::format!(
                    "bound vector has length {}, expected {n}",
                    bound.len()
                )));
            }
        }
        if let (Some(l), Some(u)) = (&lower, &upper) {
            if let Some(j) = (0..n).find(|&j| l[j] > u[j]) {
                return Err(Error::Domain(alloc::format!(
                    "lower bound {} exceeds upper bound {} for variable {j}",
                    l[j],
                    u[j]
                )));
            }
        }
        if rank(&a) < m {
            return Err(Error::Domain("constraint matrix must have full row rank".into()));
        }
        Ok(EqualitySystem { a, b, lower, upper })
    }

    /// Single-row knapsack `a x = b`, `x >= 0`.
    pub fn knapsack(a: IntVector, b: Integer) -> Result<Self> {
        Self::new(IntMatrix::row_vector(&a), alloc::vec![b], None, None)
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn b(&self) -> &[Integer] {
        &self.b
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn lower(&self) -> Option<&IntVector> {
        self.lower.as_ref()
    }

    pub fn upper(&self) -> Option<&IntVector> {
        self.upper.as_ref()
    }

    /// Lower bounds with the nonnegativity default applied.
    pub fn effective_lower(&self) -> IntVector {
        self.lower.clone().unwrap_or_else(|| alloc::vec![Integer::zero(); self.n()])
    }

    pub fn effective_upper(&self) -> Vec<Option<Integer>> {
        match &self.upper {
            Some(u) => u.iter().cloned().map(Some).collect(),
            None => alloc::vec![None; self.n()],
        }
    }

    pub fn with_rhs(&self, b: IntVector) -> Result<Self> {
        Self::new(self.a.clone(), b, self.lower.clone(), self.upper.clone())
    }

    pub fn is_solution(&self, x: &[Integer]) -> bool {
        x.len() == self.n() && self.a.mul_vec(x).map(|ax| ax == self.b).unwrap_or(false)
    }

    pub fn within_bounds(&self, x: &[Integer]) -> bool {
        let lo = self.effective_lower();
        let up = self.effective_upper();
        x.iter().zip(lo.iter().zip(&up)).all(|(v, (l, u))| v >= l && u.as_ref().is_none_or(|u| v <= u))
    }
}
