use alloc::string::String;
use alloc::vec::Vec;

use super::{bnb_feasibility, default_priority, BnbConfig, BnbStatus};
use crate::error::{Error, Result};
use crate::lattice::{kernel_and_solution, KernelStrategy};
use crate::reformulate::{build_extended, split_basis, EqualitySystem, SplitPolicy};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    /// `original`, `ahl` or `ext`.
    pub label: String,
    pub s: Option<usize>,
    pub status: BnbStatus,
    pub nodes: u64,
    pub proof_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
}

impl Comparison {
    /// No two decided rows disagree on feasibility.
    pub fn agree(&self) -> bool {
        let mut decided = self.rows.iter().filter(|r| r.status != BnbStatus::NodeLimit);
        match decided.next() {
            None => true,
            Some(first) => {
                let feasible = matches!(first.status, BnbStatus::Feasible { .. });
                decided.all(|r| matches!(r.status, BnbStatus::Feasible { .. }) == feasible)
            }
        }
    }

    /// Every row finished within the node limit.
    pub fn complete(&self) -> bool {
        self.rows.iter().all(|r| r.status != BnbStatus::NodeLimit)
    }

    pub fn row(&self, label: &str, s: Option<usize>) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.label == label && r.s == s)
    }
}

/// Runs the original formulation, the full-kernel formulation `x = x0 + Q mu`
/// (branching on `mu` only) and the extended formulation for each `s`.
/// Only `cfg.node_limit` is used; every row uses its default priority.
pub fn compare_formulations(sys: &EqualitySystem, s_values: &[usize], cfg: &BnbConfig) -> Result<Comparison> {
    let base = BnbConfig { branch_priority: None, node_limit: cfg.node_limit };
    let kernel = kernel_and_solution(sys.a(), sys.b(), KernelStrategy::default())?;
    if !kernel.feasible {
        return Err(Error::Infeasible { scale_k: kernel.scale_k });
    }
    let n = sys.n();
    let dim = n - sys.m();
    let mut rows = Vec::new();
    let mut push = |label: &str, s: Option<usize>, r: super::BnbResult| {
        rows.push(ComparisonRow { label: label.into(), s, status: r.status, nodes: r.nodes, proof_depth: r.proof_depth });
    };

    push("original", None, bnb_feasibility(sys, None, &base)?);

    let ahl = build_extended(sys, &split_basis(&kernel.kernel, &SplitPolicy::FixedS(dim))?, &kernel.x0)?;
    let mu_first = default_priority(n, Some(&ahl));
    let mu_only = BnbConfig { branch_priority: Some(mu_first[..dim].to_vec()), node_limit: cfg.node_limit };
    push("ahl", Some(dim), bnb_feasibility(sys, Some(&ahl), &mu_only)?);

    for &s in s_values {
        let ef = build_extended(sys, &split_basis(&kernel.kernel, &SplitPolicy::FixedS(s))?, &kernel.x0)?;
        push("ext", Some(s), bnb_feasibility(sys, Some(&ef), &base)?);
    }
    Ok(Comparison { rows })
}
