use num_traits::{Signed, Zero};

use super::{build_extended, split_basis, BasisSplit, EqualitySystem, ExtendedFormulation, SplitPolicy};
use crate::error::{Error, Result};
use crate::exact::{IntMatrix, Integer};
use crate::knapsack::{make_decomposition, Decomposition};
use crate::lattice::{hnf, kernel_and_solution, KernelSolveResult, KernelStrategy};

/// Everything produced while looking for hidden structure in `A x = b`.
#[derive(Debug, Clone)]
pub struct Detection {
    pub kernel: KernelSolveResult,
    pub split: BasisSplit,
    pub formulation: ExtendedFormulation,
    /// Present for single-row systems with positive coefficients and `s = 1`.
    pub decomposition: Option<Decomposition>,
}

/// Reduced kernel basis, split, extended formulation and, for knapsacks
/// with one long kernel vector, the two-generator decomposition of `a`.
pub fn detect_decomposition(sys: &EqualitySystem, policy: &SplitPolicy) -> Result<Detection> {
    let kernel = kernel_and_solution(sys.a(), sys.b(), KernelStrategy::default())?;
    if !kernel.feasible {
        return Err(Error::Infeasible { scale_k: kernel.scale_k });
    }
    let split = split_basis(&kernel.kernel, policy)?;
    let formulation = build_extended(sys, &split, &kernel.x0)?;

    let a = sys.a().row(0);
    let decomposition = if sys.m() == 1 && split.s() == 1 && a.iter().all(|v| v.is_positive()) {
        let p = &formulation.p;
        Some(make_decomposition(
            a,
            p.row(0),
            p.row(1),
            formulation.m.get(0, 0),
            formulation.m.get(0, 1),
        )?)
    } else {
        None
    };
    Ok(Detection { kernel, split, formulation, decomposition })
}

/// The `s = 1` formulation `P x = P x0 + T mu` of a knapsack given by a known
/// decomposition: `P = (p1; p2)`, `M = (M1 M2)`, `T = (M2, -M1)^T`.
pub fn decomposition_formulation(d: &Decomposition, b: &Integer) -> Result<ExtendedFormulation> {
    let sys = EqualitySystem::knapsack(d.a().to_vec(), b.clone())?;
    let kernel = kernel_and_solution(sys.a(), sys.b(), KernelStrategy::default())?;
    if !kernel.feasible {
        return Err(Error::Infeasible { scale_k: kernel.scale_k });
    }
    let p = d.p();
    let m = IntMatrix::row_vector(&[d.m1().clone(), d.m2().clone()]);
    let t = IntMatrix::column_vector(&[d.m2().clone(), -d.m1()]);
    // P is onto Z^2, so S = U (T; 0) solves P S = T
    let u = hnf(&p)?.u;
    let mut padded = t.column(0);
    padded.resize(d.n(), Integer::zero());
    let long = IntMatrix::column_vector(&u.mul_vec(&padded)?);
    let px0 = p.mul_vec(&kernel.x0)?;
    let ef = ExtendedFormulation { p, m, t, x0: kernel.x0, px0, long, rescaled_by: None };
    ef.check_invariants(sys.a())?;
    Ok(ef)
}
