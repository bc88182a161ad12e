mod common;

use common::*;
use latref_core::exact::{int, IntMatrix, IntVector, Integer, RatMatrix, Rational};
use latref_core::reformulate::EqualitySystem;
use latref_core::solver::*;
use num_traits::Zero;

/// Every integer point of the box `[lo, hi]^n` solving the system.
fn enumerate(sys: &EqualitySystem, lo: i64, hi: i64) -> Vec<IntVector> {
    let n = sys.n();
    let mut x = vec![lo; n];
    let mut out = Vec::new();
    loop {
        let xi = ints(&x);
        if sys.is_solution(&xi) {
            out.push(xi);
        }
        let mut i = 0;
        while i < n && x[i] == hi {
            x[i] = lo;
            i += 1;
        }
        if i == n {
            return out;
        }
        x[i] += 1;
    }
}

fn check_against(sys: &EqualitySystem, c: &Comparison, feasible: bool) {
    assert!(c.complete() && c.agree(), "{c:?}");
    for r in &c.rows {
        match &r.status {
            BnbStatus::Feasible { x, .. } => {
                assert!(feasible, "{r:?}");
                assert!(sys.is_solution(x) && sys.within_bounds(x));
            }
            BnbStatus::Infeasible => assert!(!feasible, "{r:?}"),
            BnbStatus::NodeLimit => unreachable!(),
        }
    }
}

#[test]
fn market_split_m2_matches_enumeration() {
    for seed in 0..5 {
        let sys = gen_market_split(2, seed).unwrap();
        let feasible = !enumerate(&sys, 0, 1).is_empty();
        let c = compare_formulations(&sys, &[1], &BnbConfig::default()).unwrap();
        check_against(&sys, &c, feasible);
    }
}

#[test]
fn planted_market_split_is_found() {
    let mut rng = SplitMix64::new(42);
    for seed in 0..4 {
        let base = gen_market_split(2, seed).unwrap();
        let x: IntVector = (0..base.n()).map(|_| int(range(&mut rng, 0, 1))).collect();
        let sys = base.with_rhs(base.a().mul_vec(&x).unwrap()).unwrap();
        let c = compare_formulations(&sys, &[1], &BnbConfig::default()).unwrap();
        check_against(&sys, &c, true);
    }
}

#[test]
fn generator_is_deterministic() {
    for m in 2..=3 {
        assert_eq!(gen_market_split(m, 9).unwrap(), gen_market_split(m, 9).unwrap());
    }
    assert_ne!(gen_market_split(2, 1).unwrap(), gen_market_split(2, 2).unwrap());
    let sys = gen_market_split(2, 3).unwrap();
    let cfg = BnbConfig::default();
    assert_eq!(bnb_feasibility(&sys, None, &cfg).unwrap(), bnb_feasibility(&sys, None, &cfg).unwrap());
    let first: Vec<u64> = {
        let mut r = SplitMix64::new(0);
        (0..3).map(|_| r.next_u64()).collect()
    };
    // published SplitMix64 outputs for seed 0
    assert_eq!(first, [0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4, 0x06c45d188009454f]);
}

#[test]
fn bounded_random_systems_match_enumeration() {
    let mut rng = SplitMix64::new(123);
    let mut done = 0;
    while done < 40 {
        let m = range(&mut rng, 1, 2) as usize;
        let n = range(&mut rng, m as i64 + 1, 5) as usize;
        let a = IntMatrix::from_fn(m, n, |_, _| int(range(&mut rng, -9, 9)));
        if rank_rational(&a) < m {
            continue;
        }
        let b: IntVector = (0..m).map(|_| int(range(&mut rng, -12, 12))).collect();
        let sys = EqualitySystem::new(a, b, Some(ints(&vec![0; n])), Some(ints(&vec![3; n]))).unwrap();
        let feasible = !enumerate(&sys, 0, 3).is_empty();
        match compare_formulations(&sys, &[0, n - m], &BnbConfig::default()) {
            Ok(c) => check_against(&sys, &c, feasible),
            Err(latref_core::Error::Infeasible { .. }) => assert!(!feasible),
            Err(e) => panic!("{e}"),
        }
        done += 1;
    }
}

#[test]
fn node_limit_reported() {
    let sys = EqualitySystem::knapsack(cuww1(), int(CUWW1_FROBENIUS)).unwrap();
    let cfg = BnbConfig { node_limit: 10, ..BnbConfig::default() };
    let r = bnb_feasibility(&sys, None, &cfg).unwrap();
    assert_eq!(r.status, BnbStatus::NodeLimit);
    assert_eq!(r.nodes, 10);
    let bad = BnbConfig { node_limit: 0, ..BnbConfig::default() };
    assert!(bnb_feasibility(&sys, None, &bad).is_err());
}

fn rat(v: i64) -> Rational {
    Rational::from_integer(int(v))
}

#[test]
fn lp_certificates_on_random_boxes() {
    let mut rng = SplitMix64::new(8);
    let (mut optimal, mut infeasible) = (0, 0);
    for _ in 0..150 {
        let m = range(&mut rng, 1, 3) as usize;
        let n = range(&mut rng, 2, 5) as usize;
        let a = RatMatrix::from_fn(m, n, |_, _| rat(range(&mut rng, -5, 5)));
        let b: Vec<Rational> = (0..m).map(|_| rat(range(&mut rng, -8, 8))).collect();
        let c: Vec<Rational> = (0..n).map(|_| rat(range(&mut rng, -4, 4))).collect();
        let lower = vec![Some(rat(-2)); n];
        let upper = vec![Some(rat(3)); n];
        let p = LpProblem::new(c.clone(), a, b, lower, upper).unwrap();
        for sense in [Sense::Min, Sense::Max] {
            match lp_solve(&p, sense).unwrap() {
                LpOutcome::Optimal { value, point, duals } => {
                    optimal += 1;
                    assert!(p.is_feasible_point(&point));
                    assert!(p.verify_optimal(sense, &point, &value, &duals));
                    let obj: Rational = c.iter().zip(&point).map(|(c, x)| c * x).sum();
                    assert_eq!(obj, value);
                }
                LpOutcome::Infeasible { farkas } => {
                    infeasible += 1;
                    assert!(p.verify_farkas(&farkas));
                }
                LpOutcome::Unbounded { .. } => panic!("boxed LP reported unbounded"),
            }
        }
    }
    assert!(optimal > 0 && infeasible > 0);
}

#[test]
fn lp_optimum_dominates_integer_points() {
    let mut rng = SplitMix64::new(17);
    for _ in 0..40 {
        let n = 3;
        let ai: Vec<i64> = (0..n).map(|_| range(&mut rng, -4, 4)).collect();
        let bi = range(&mut rng, -4, 4);
        let ci: Vec<i64> = (0..n).map(|_| range(&mut rng, -3, 3)).collect();
        let a = RatMatrix::from_fn(1, n, |_, j| rat(ai[j]));
        let p = LpProblem::new(
            ci.iter().map(|&v| rat(v)).collect(),
            a,
            vec![rat(bi)],
            vec![Some(Rational::zero()); n],
            vec![Some(rat(2)); n],
        )
        .unwrap();
        let Some(sys) = EqualitySystem::new(
            IntMatrix::row_vector(&ints(&ai)),
            vec![int(bi)],
            Some(ints(&[0; 3])),
            Some(ints(&[2; 3])),
        )
        .ok() else { continue };
        let points = enumerate(&sys, 0, 2);
        match lp_solve(&p, Sense::Max).unwrap() {
            LpOutcome::Optimal { value, .. } => {
                for x in points {
                    let v: Integer = ci.iter().zip(&x).map(|(c, x)| int(*c) * x).sum();
                    assert!(Rational::from_integer(v) <= value);
                }
            }
            LpOutcome::Infeasible { .. } => assert!(points.is_empty()),
            LpOutcome::Unbounded { .. } => unreachable!(),
        }
    }
}
