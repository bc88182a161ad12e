//! Depth-first LP-based branch and bound for integer feasibility.

use alloc::vec::Vec;

use num_traits::Zero;

use super::lp::{LpProblem, Phase2, Simplex};
use crate::error::{Error, Result};
use crate::exact::{ceil_rat, floor_rat, rat_from, IntVector, Integer, RatMatrix, Rational};
use crate::reformulate::{EqualitySystem, ExtendedFormulation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnbConfig {
    /// Variable indices over `(x, mu)` in branching order; `None` uses
    /// [`default_priority`]. Variables left out are branched on last, by index.
    pub branch_priority: Option<Vec<usize>>,
    pub node_limit: u64,
}

impl Default for BnbConfig {
    fn default() -> Self {
        BnbConfig { branch_priority: None, node_limit: 1_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BnbStatus {
    /// Verified integer point; `mu` is empty for the original formulation.
    Feasible { x: IntVector, mu: IntVector },
    Infeasible,
    NodeLimit,
}

impl BnbStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            BnbStatus::Feasible { .. } => "feasible",
            BnbStatus::Infeasible => "infeasible",
            BnbStatus::NodeLimit => "node_limit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnbResult {
    pub status: BnbStatus,
    /// Search-tree nodes processed, root included.
    pub nodes: u64,
    /// Deepest level reached (root = 0).
    pub proof_depth: usize,
}

/// `mu` variables by decreasing norm of their long kernel column (stable),
/// then `x` by index.
pub fn default_priority(n: usize, ef: Option<&ExtendedFormulation>) -> Vec<usize> {
    let mut order = Vec::new();
    if let Some(ef) = ef {
        let norms = ef.long.column_norms_sq();
        let mut mu: Vec<usize> = (0..ef.s()).collect();
        mu.sort_by(|&a, &b| norms[b].cmp(&norms[a]));
        order.extend(mu.into_iter().map(|k| n + k));
    }
    order.extend(0..n);
    order
}

type Bounds = (Vec<Option<Integer>>, Vec<Option<Integer>>);

struct Search<'a> {
    rows: RatMatrix,
    rhs: Vec<Rational>,
    order: Vec<usize>,
    sys: &'a EqualitySystem,
    ef: Option<&'a ExtendedFormulation>,
}

impl Search<'_> {
    fn lp(&self, (lo, up): &Bounds) -> LpProblem {
        let lift = |v: &Vec<Option<Integer>>| v.iter().map(|b| b.as_ref().map(rat_from)).collect();
        LpProblem {
            objective: alloc::vec![Rational::zero(); self.rows.cols()],
            a: self.rows.clone(),
            b: self.rhs.clone(),
            lower: lift(lo),
            upper: lift(up),
        }
    }

    /// LP range of variable `v` from a feasible basis.
    fn range(&self, s: &Simplex, v: usize) -> (Option<Rational>, Option<Rational>) {
        let ncols = self.rows.cols() + self.rows.rows();
        let mut ends = [None, None];
        for (slot, sign) in [(0, 1i64), (1, -1i64)] {
            let mut costs = alloc::vec![Rational::zero(); ncols];
            costs[v] = Rational::from_integer(sign.into());
            let mut probe = s.clone();
            if let Phase2::Optimal = probe.optimize(&costs) {
                ends[slot] = Some(probe.point()[v].clone());
            }
        }
        let [lo, hi] = ends;
        (lo, hi)
    }

    fn certify(&self, point: &[Rational]) -> Result<BnbStatus> {
        let ints: IntVector = point.iter().map(|v| v.to_integer()).collect();
        let n = self.sys.n();
        let (x, mu) = (ints[..n].to_vec(), ints[n..].to_vec());
        let ok = self.sys.is_solution(&x)
            && self.sys.within_bounds(&x)
            && self.ef.is_none_or(|ef| {
                let lhs = ef.p.mul_vec(&x).expect("shape");
                let tmu = ef.t.mul_vec(&mu).expect("shape");
                lhs.iter().zip(&tmu).zip(&ef.px0).all(|((a, b), c)| a - b == *c)
            });
        if !ok {
            return Err(Error::Invariant("integer LP point fails exact verification".into()));
        }
        Ok(BnbStatus::Feasible { x, mu })
    }
}

pub fn bnb_feasibility(
    sys: &EqualitySystem,
    ef: Option<&ExtendedFormulation>,
    cfg: &BnbConfig,
) -> Result<BnbResult> {
    if cfg.node_limit == 0 {
        return Err(Error::Domain("node limit must be at least 1".into()));
    }
    let n = sys.n();
    let (rows, rhs, total) = match ef {
        None => (
            RatMatrix::from(sys.a()),
            sys.b().iter().map(rat_from).collect::<Vec<_>>(),
            n,
        ),
        Some(ef) => {
            if ef.p.cols() != n {
                return Err(Error::Dimension("formulation does not match the system".into()));
            }
            let k = ef.rows();
            let s = ef.s();
            let rows = RatMatrix::from_fn(k, n + s, |i, j| {
                if j < n {
                    rat_from(ef.p.get(i, j))
                } else {
                    -rat_from(ef.t.get(i, j - n))
                }
            });
            (rows, ef.px0.iter().map(rat_from).collect(), n + s)
        }
    };

    let mut order = cfg.branch_priority.clone().unwrap_or_else(|| default_priority(n, ef));
    if let Some(&bad) = order.iter().find(|&&v| v >= total) {
        return Err(Error::Domain(alloc::format!("branch priority names variable {bad} of {total}")));
    }
    for v in 0..total {
        if !order.contains(&v) {
            order.push(v);
        }
    }
    let search = Search { rows, rhs, order, sys, ef };

    let mut lower: Vec<Option<Integer>> = sys.effective_lower().into_iter().map(Some).collect();
    let mut upper = sys.effective_upper();
    lower.resize(total, None);
    upper.resize(total, None);

    let mut stack: Vec<(Bounds, usize)> = alloc::vec![((lower, upper), 0)];
    let mut nodes = 0u64;
    let mut depth = 0usize;
    while let Some((bounds, level)) = stack.pop() {
        if nodes >= cfg.node_limit {
            return Ok(BnbResult { status: BnbStatus::NodeLimit, nodes, proof_depth: depth });
        }
        nodes += 1;
        depth = depth.max(level);

        let lp = search.lp(&bounds);
        let mut simplex = Simplex::new(&lp);
        if let Some(farkas) = simplex.phase_one() {
            debug_assert!(lp.verify_farkas(&farkas));
            continue;
        }
        let point = simplex.point();
        let Some(&v) = search.order.iter().find(|&&v| !point[v].is_integer()) else {
            let status = search.certify(&point)?;
            return Ok(BnbResult { status, nodes, proof_depth: depth });
        };

        let (lo, hi) = search.range(&simplex, v);
        let lo = lo.map(|r| ceil_rat(&r));
        let hi = hi.map(|r| floor_rat(&r));
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l > h {
                continue;
            }
        }
        // tighten to the LP range, then split at the LP value
        let (mut base_lo, mut base_up) = bounds;
        if let Some(l) = lo {
            base_lo[v] = Some(base_lo[v].take().map_or(l.clone(), |b| b.max(l)));
        }
        if let Some(h) = hi {
            base_up[v] = Some(base_up[v].take().map_or(h.clone(), |b| b.min(h)));
        }
        let mut floor_child = (base_lo.clone(), base_up.clone());
        let cut = floor_rat(&point[v]);
        floor_child.1[v] = Some(floor_child.1[v].take().map_or(cut.clone(), |b| b.min(cut.clone())));
        let mut ceil_child = (base_lo, base_up);
        let cut: Integer = cut + 1;
        ceil_child.0[v] = Some(ceil_child.0[v].take().map_or(cut.clone(), |b| b.max(cut)));
        for child in [ceil_child, floor_child] {
            let nonempty = match (&child.0[v], &child.1[v]) {
                (Some(l), Some(u)) => l <= u,
                _ => true,
            };
            if nonempty {
                stack.push((child, level + 1));
            }
        }
    }
    Ok(BnbResult { status: BnbStatus::Infeasible, nodes, proof_depth: depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::reformulate::{detect_decomposition, SplitPolicy};

    fn ints(v: &[i64]) -> IntVector {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn three_five() {
        let cfg = BnbConfig::default();
        let sys = EqualitySystem::knapsack(ints(&[3, 5]), int(7)).unwrap();
        assert_eq!(bnb_feasibility(&sys, None, &cfg).unwrap().status, BnbStatus::Infeasible);
        let sys = EqualitySystem::knapsack(ints(&[3, 5]), int(8)).unwrap();
        match bnb_feasibility(&sys, None, &cfg).unwrap().status {
            BnbStatus::Feasible { x, .. } => assert_eq!(x, ints(&[1, 1])),
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn cuww1_extended_root_proof() {
        let a = ints(&[12223, 12224, 36674, 61119, 85569]);
        let sys = EqualitySystem::knapsack(a, int(89_643_481)).unwrap();
        let det = detect_decomposition(&sys, &SplitPolicy::default()).unwrap();
        let r = bnb_feasibility(&sys, Some(&det.formulation), &BnbConfig::default()).unwrap();
        assert_eq!(r.status, BnbStatus::Infeasible);
        assert_eq!(r.nodes, 1);
        assert_eq!(r.proof_depth, 0);
    }

    #[test]
    fn cuww1_original_hits_node_limit() {
        let a = ints(&[12223, 12224, 36674, 61119, 85569]);
        let sys = EqualitySystem::knapsack(a, int(89_643_481)).unwrap();
        let cfg = BnbConfig { node_limit: 50, ..BnbConfig::default() };
        let r = bnb_feasibility(&sys, None, &cfg).unwrap();
        assert_eq!((r.status, r.nodes), (BnbStatus::NodeLimit, 50));
    }

    #[test]
    fn priority_puts_long_mu_first() {
        let a = ints(&[12223, 12224, 36674, 61119, 85569]);
        let sys = EqualitySystem::knapsack(a, int(89_643_482)).unwrap();
        let det = detect_decomposition(&sys, &SplitPolicy::FixedS(2)).unwrap();
        let order = default_priority(5, Some(&det.formulation));
        assert_eq!(order, [6, 5, 0, 1, 2, 3, 4]);
    }

    #[test]
    fn bad_priority_rejected() {
        let sys = EqualitySystem::knapsack(ints(&[3, 5]), int(8)).unwrap();
        let cfg = BnbConfig { branch_priority: Some(alloc::vec![7]), ..BnbConfig::default() };
        assert!(bnb_feasibility(&sys, None, &cfg).is_err());
    }
}
