//! Exact bounded-variable primal simplex.
//!
//! Bounds are handled implicitly (nonbasic variables sit at a finite bound,
//! free nonbasic variables at 0), so a problem with `m` equality rows keeps
//! an `m`-row tableau. Phase 1 uses one artificial per row; both phases pick
//! the entering and leaving variable by Bland's rule.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};

/// `min/max c x` subject to `A x = b`, `lower <= x <= upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: Vec<Rational>,
    pub a: RatMatrix,
    pub b: Vec<Rational>,
    /// `None` is minus infinity.
    pub lower: Vec<Option<Rational>>,
    /// `None` is plus infinity.
    pub upper: Vec<Option<Rational>>,
}

impl LpProblem {
    pub fn new(
        objective: Vec<Rational>,
        a: RatMatrix,
        b: Vec<Rational>,
        lower: Vec<Option<Rational>>,
        upper: Vec<Option<Rational>>,
    ) -> Result<Self> {
        let p = LpProblem { objective, a, b, lower, upper };
        p.validate()?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.objective.len() != n || self.lower.len() != n || self.upper.len() != n {
            return Err(Error::Dimension("objective and bounds need one entry per column".into()));
        }
        if self.b.len() != self.m() {
            return Err(Error::Dimension("right-hand side needs one entry per row".into()));
        }
        for j in 0..n {
            if let (Some(l), Some(u)) = (&self.lower[j], &self.upper[j]) {
                if l > u {
                    return Err(Error::Domain(alloc::format!("empty bound interval for column {j}")));
                }
            }
        }
        Ok(())
    }

    /// Lower bound `y b + sum_j min_{x_j in box} (c - y A)_j x_j` on
    /// `min c x`; `None` when the box minimum is unbounded.
    fn lagrangian(&self, c: &[Rational], y: &[Rational]) -> Option<Rational> {
        let mut total: Rational = y.iter().zip(&self.b).map(|(yi, bi)| yi * bi).sum();
        for j in 0..self.n() {
            let mut d = c[j].clone();
            for (i, yi) in y.iter().enumerate() {
                d -= yi * self.a.get(i, j);
            }
            if d.is_zero() {
                continue;
            }
            let bound = if d.is_positive() { &self.lower[j] } else { &self.upper[j] };
            total += d * bound.as_ref()?;
        }
        Some(total)
    }

    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        if x.len() != self.n() {
            return false;
        }
        let in_box = x.iter().enumerate().all(|(j, v)| {
            self.lower[j].as_ref().is_none_or(|l| v >= l)
                && self.upper[j].as_ref().is_none_or(|u| v <= u)
        });
        in_box
            && (0..self.m()).all(|i| {
                let lhs: Rational = (0..self.n()).map(|j| self.a.get(i, j) * &x[j]).sum();
                lhs == self.b[i]
            })
    }

    /// `y b > sup over the box of y A x`, which rules out every point.
    pub fn verify_farkas(&self, y: &[Rational]) -> bool {
        if y.len() != self.m() {
            return false;
        }
        let mut sup = Rational::zero();
        for j in 0..self.n() {
            let g: Rational = y.iter().enumerate().map(|(i, yi)| yi * self.a.get(i, j)).sum();
            if g.is_zero() {
                continue;
            }
            let bound = if g.is_positive() { &self.upper[j] } else { &self.lower[j] };
            match bound {
                Some(v) => sup += g * v,
                None => return false,
            }
        }
        let yb: Rational = y.iter().zip(&self.b).map(|(yi, bi)| yi * bi).sum();
        yb > sup
    }

    /// Weak duality certificate: `point` is feasible and the dual bound of
    /// `y` equals its objective value.
    pub fn verify_optimal(&self, sense: Sense, point: &[Rational], value: &Rational, y: &[Rational]) -> bool {
        if !self.is_feasible_point(point) || y.len() != self.m() {
            return false;
        }
        let cx: Rational = self.objective.iter().zip(point).map(|(c, x)| c * x).sum();
        if cx != *value {
            return false;
        }
        let (c, target): (Vec<Rational>, Rational) = match sense {
            Sense::Min => (self.objective.clone(), cx),
            Sense::Max => (self.objective.iter().map(|v| -v).collect(), -cx),
        };
        self.lagrangian(&c, y).is_some_and(|bound| bound == target)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    /// `duals` certify optimality through the box-constrained dual.
    Optimal { value: Rational, point: Vec<Rational>, duals: Vec<Rational> },
    /// `farkas` satisfies `y b > sup { y A x : x in box }`.
    Infeasible { farkas: Vec<Rational> },
    /// A feasible point and a direction along which the objective improves
    /// without bound.
    Unbounded { point: Vec<Rational>, ray: Vec<Rational> },
}

pub fn lp_solve(p: &LpProblem, sense: Sense) -> Result<LpOutcome> {
    p.validate()?;
    let mut s = Simplex::new(p);
    if let Some(farkas) = s.phase_one() {
        if !p.verify_farkas(&farkas) {
            return Err(Error::Invariant("phase 1 produced an invalid Farkas certificate".into()));
        }
        return Ok(LpOutcome::Infeasible { farkas });
    }
    let mut costs: Vec<Rational> = match sense {
        Sense::Min => p.objective.clone(),
        Sense::Max => p.objective.iter().map(|v| -v).collect(),
    };
    costs.resize(p.n() + p.m(), Rational::zero());
    match s.optimize(&costs) {
        Phase2::Optimal => {
            let point = s.point();
            let value: Rational = p.objective.iter().zip(&point).map(|(c, x)| c * x).sum();
            let duals = s.duals(&costs);
            if !p.verify_optimal(sense, &point, &value, &duals) {
                return Err(Error::Invariant("simplex optimum failed its dual check".into()));
            }
            Ok(LpOutcome::Optimal { value, point, duals })
        }
        Phase2::Unbounded(ray) => Ok(LpOutcome::Unbounded { point: s.point(), ray }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Place {
    Basic(usize),
    Lower,
    Upper,
    /// Nonbasic free variable at 0.
    Zero,
}

pub(crate) enum Phase2 {
    Optimal,
    Unbounded(Vec<Rational>),
}

/// Tableau `B^-1 (A | D)` over structural columns followed by one
/// artificial per row.
#[derive(Debug, Clone)]
pub(crate) struct Simplex {
    n: usize,
    m: usize,
    tab: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    place: Vec<Place>,
    value: Vec<Rational>,
    lower: Vec<Option<Rational>>,
    upper: Vec<Option<Rational>>,
    /// Sign of each artificial column.
    art_sign: Vec<bool>,
}

impl Simplex {
    pub(crate) fn new(p: &LpProblem) -> Self {
        let (m, n) = (p.m(), p.n());
        let mut place = Vec::with_capacity(n + m);
        let mut value = Vec::with_capacity(n + m);
        for j in 0..n {
            match (&p.lower[j], &p.upper[j]) {
                (Some(l), _) => {
                    place.push(Place::Lower);
                    value.push(l.clone());
                }
                (None, Some(u)) => {
                    place.push(Place::Upper);
                    value.push(u.clone());
                }
                (None, None) => {
                    place.push(Place::Zero);
                    value.push(Rational::zero());
                }
            }
        }
        let mut tab = Vec::with_capacity(m);
        let mut art_sign = Vec::with_capacity(m);
        for i in 0..m {
            let mut r = p.b[i].clone();
            for j in 0..n {
                r -= p.a.get(i, j) * &value[j];
            }
            let neg = r.is_negative();
            let mut row: Vec<Rational> = (0..n)
                .map(|j| if neg { -p.a.get(i, j) } else { p.a.get(i, j).clone() })
                .collect();
            row.extend((0..m).map(|k| if k == i { Rational::from_integer(1.into()) } else { Rational::zero() }));
            tab.push(row);
            art_sign.push(neg);
            place.push(Place::Basic(i));
            value.push(r.abs());
        }
        let mut lower = p.lower.clone();
        let mut upper = p.upper.clone();
        lower.extend((0..m).map(|_| Some(Rational::zero())));
        upper.extend((0..m).map(|_| None));
        Simplex { n, m, tab, basis: (n..n + m).collect(), place, value, lower, upper, art_sign }
    }

    /// Drives the artificials to zero. Returns a Farkas vector when that is
    /// impossible; afterwards artificials are fixed at 0.
    pub(crate) fn phase_one(&mut self) -> Option<Vec<Rational>> {
        let mut costs = alloc::vec![Rational::zero(); self.n + self.m];
        for c in costs.iter_mut().skip(self.n) {
            *c = Rational::from_integer(1.into());
        }
        match self.optimize(&costs) {
            Phase2::Optimal => {}
            Phase2::Unbounded(_) => unreachable!("phase 1 objective is bounded below"),
        }
        let infeasibility: Rational = self.value[self.n..].iter().sum();
        if infeasibility.is_positive() {
            return Some(self.duals(&costs));
        }
        for k in self.n..self.n + self.m {
            self.upper[k] = Some(Rational::zero());
        }
        None
    }

    pub(crate) fn point(&self) -> Vec<Rational> {
        self.value[..self.n].to_vec()
    }

    /// Row duals `y` with `y B = c_B`, expressed for the original rows.
    pub(crate) fn duals(&self, costs: &[Rational]) -> Vec<Rational> {
        (0..self.m)
            .map(|i| {
                let col = self.n + i;
                let v: Rational = (0..self.m).map(|r| &costs[self.basis[r]] * &self.tab[r][col]).sum();
                if self.art_sign[i] {
                    -v
                } else {
                    v
                }
            })
            .collect()
    }

    fn is_fixed(&self, j: usize) -> bool {
        matches!((&self.lower[j], &self.upper[j]), (Some(l), Some(u)) if l == u)
    }

    fn reduced_cost(&self, costs: &[Rational], j: usize) -> Rational {
        let mut d = costs[j].clone();
        for r in 0..self.m {
            let t = &self.tab[r][j];
            if !t.is_zero() {
                d -= &costs[self.basis[r]] * t;
            }
        }
        d
    }

    /// Minimizes `costs . x` from the current basic feasible solution.
    pub(crate) fn optimize(&mut self, costs: &[Rational]) -> Phase2 {
        loop {
            // Bland: lowest-index improving column
            let mut entering = None;
            for j in 0..self.n + self.m {
                if matches!(self.place[j], Place::Basic(_)) || self.is_fixed(j) {
                    continue;
                }
                let d = self.reduced_cost(costs, j);
                let dir = match self.place[j] {
                    Place::Lower if d.is_negative() => 1,
                    Place::Upper if d.is_positive() => -1,
                    Place::Zero if d.is_negative() => 1,
                    Place::Zero if d.is_positive() => -1,
                    _ => 0,
                };
                if dir != 0 {
                    entering = Some((j, dir));
                    break;
                }
            }
            let Some((j, dir)) = entering else { return Phase2::Optimal };

            // ratio test; ties go to the lowest variable index
            let mut step: Option<Rational> = match (&self.lower[j], &self.upper[j]) {
                (Some(l), Some(u)) => Some(u - l),
                _ => None,
            };
            let mut leave: Option<(usize, Place)> = None;
            for r in 0..self.m {
                let t = &self.tab[r][j];
                if t.is_zero() {
                    continue;
                }
                // basic variable moves at rate -dir * t
                let rate = if dir > 0 { -t.clone() } else { t.clone() };
                let bv = self.basis[r];
                let (limit, hit) = if rate.is_negative() {
                    match &self.lower[bv] {
                        Some(l) => ((&self.value[bv] - l) / -&rate, Place::Lower),
                        None => continue,
                    }
                } else {
                    match &self.upper[bv] {
                        Some(u) => ((u - &self.value[bv]) / &rate, Place::Upper),
                        None => continue,
                    }
                };
                let better = match (&step, &leave) {
                    (None, _) => true,
                    (Some(s), None) => limit <= *s,
                    (Some(s), Some((lr, _))) => limit < *s || (limit == *s && bv < self.basis[*lr]),
                };
                if better {
                    step = Some(limit);
                    leave = Some((r, hit));
                }
            }
            let Some(step) = step else {
                let mut ray = alloc::vec![Rational::zero(); self.n];
                if j < self.n {
                    ray[j] = Rational::from_integer(dir.into());
                }
                for r in 0..self.m {
                    if self.basis[r] < self.n {
                        let t = &self.tab[r][j];
                        ray[self.basis[r]] = if dir > 0 { -t.clone() } else { t.clone() };
                    }
                }
                return Phase2::Unbounded(ray);
            };

            // move values
            if !step.is_zero() {
                let delta = if dir > 0 { step.clone() } else { -step.clone() };
                self.value[j] += &delta;
                for r in 0..self.m {
                    let t = &self.tab[r][j];
                    if !t.is_zero() {
                        let bv = self.basis[r];
                        self.value[bv] -= t * &delta;
                    }
                }
            }
            match leave {
                None => {
                    // bound flip
                    self.place[j] = if dir > 0 { Place::Upper } else { Place::Lower };
                    self.value[j] = if dir > 0 { self.upper[j].clone() } else { self.lower[j].clone() }
                        .expect("flip needs both bounds");
                }
                Some((r, hit)) => {
                    let out = self.basis[r];
                    self.value[out] = match hit {
                        Place::Lower => self.lower[out].clone(),
                        _ => self.upper[out].clone(),
                    }
                    .expect("leaving variable hits a finite bound");
                    self.place[out] = hit;
                    self.pivot(r, j);
                }
            }
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.tab[r][j].clone();
        if !p.is_zero() {
            for v in self.tab[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let prow = self.tab[r].clone();
        for (i, row) in self.tab.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[j].clone();
            if f.is_zero() {
                continue;
            }
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = j;
        self.place[j] = Place::Basic(r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, IntMatrix};

    fn r(v: i64) -> Rational {
        rat(v, 1)
    }

    fn problem(c: &[i64], a: &[&[i64]], b: &[i64], lo: &[Option<i64>], up: &[Option<i64>]) -> LpProblem {
        let rows: Vec<Vec<Integer>> = a.iter().map(|row| row.iter().map(|&v| int(v)).collect()).collect();
        let a = if rows.is_empty() {
            RatMatrix::zeros(0, c.len())
        } else {
            RatMatrix::from(&IntMatrix::from_rows(rows).unwrap())
        };
        LpProblem::new(
            c.iter().map(|&v| r(v)).collect(),
            a,
            b.iter().map(|&v| r(v)).collect(),
            lo.iter().map(|v| v.map(r)).collect(),
            up.iter().map(|v| v.map(r)).collect(),
        )
        .unwrap()
    }

    use crate::exact::Integer;

    #[test]
    fn fixed_by_equation() {
        let p = problem(&[1], &[&[1]], &[5], &[Some(0)], &[None]);
        match lp_solve(&p, Sense::Max).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, r(5)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn negative_rhs_with_nonnegativity() {
        let p = problem(&[0], &[&[1]], &[-1], &[Some(0)], &[None]);
        match lp_solve(&p, Sense::Min).unwrap() {
            LpOutcome::Infeasible { farkas } => assert!(p.verify_farkas(&farkas)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn unbounded_direction() {
        let p = problem(&[1, 0], &[&[1, -1]], &[0], &[Some(0), Some(0)], &[None, None]);
        match lp_solve(&p, Sense::Max).unwrap() {
            LpOutcome::Unbounded { point, ray } => {
                assert!(p.is_feasible_point(&point));
                assert!(ray[0].is_positive());
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn bounded_box_and_free_variable() {
        // x + y - z = 3/2, 0 <= x, y <= 1, z free; max z  ->  z = 1/2
        let mut p = problem(&[0, 0, 1], &[&[2, 2, -2]], &[3], &[Some(0), Some(0), None], &[Some(1), Some(1), None]);
        match lp_solve(&p, Sense::Max).unwrap() {
            LpOutcome::Optimal { value, point, .. } => {
                assert_eq!(value, rat(1, 2));
                assert!(p.is_feasible_point(&point));
            }
            o => panic!("{o:?}"),
        }
        p.objective = alloc::vec![r(0), r(0), r(-1)];
        match lp_solve(&p, Sense::Max).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(3, 2)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn degenerate_cycle_prone_instance_terminates() {
        // Beale's example in equality form with slacks
        let p = LpProblem::new(
            alloc::vec![rat(-3, 4), r(150), rat(-1, 50), r(6), r(0), r(0), r(0)],
            RatMatrix::from_fn(3, 7, |i, j| {
                [
                    [rat(1, 4), r(-60), rat(-1, 25), r(9), r(1), r(0), r(0)],
                    [rat(1, 2), r(-90), rat(-1, 50), r(3), r(0), r(1), r(0)],
                    [r(0), r(0), r(1), r(0), r(0), r(0), r(1)],
                ][i][j]
                    .clone()
            }),
            alloc::vec![r(0), r(0), r(1)],
            alloc::vec![Some(r(0)); 7],
            alloc::vec![None; 7],
        )
        .unwrap();
        match lp_solve(&p, Sense::Min).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(-1, 20)),
            o => panic!("{o:?}"),
        }
    }

    proptest::proptest! {
        #[test]
        fn outcomes_carry_valid_certificates(
            entries in proptest::collection::vec(-4i64..=4, 12),
            rhs in proptest::collection::vec(-6i64..=6, 2),
            c in proptest::collection::vec(-3i64..=3, 6),
            ups in proptest::collection::vec(proptest::option::of(0i64..=3), 6),
        ) {
            let p = LpProblem::new(
                c.iter().map(|&v| r(v)).collect(),
                RatMatrix::from_fn(2, 6, |i, j| r(entries[i * 6 + j])),
                rhs.iter().map(|&v| r(v)).collect(),
                alloc::vec![Some(r(0)); 6],
                ups.iter().map(|v| v.map(r)).collect(),
            ).unwrap();
            match lp_solve(&p, Sense::Min).unwrap() {
                LpOutcome::Optimal { value, point, duals } => {
                    proptest::prop_assert!(p.verify_optimal(Sense::Min, &point, &value, &duals));
                }
                LpOutcome::Infeasible { farkas } => proptest::prop_assert!(p.verify_farkas(&farkas)),
                LpOutcome::Unbounded { point, ray } => {
                    proptest::prop_assert!(p.is_feasible_point(&point));
                    let gain: Rational = c.iter().zip(&ray).map(|(&ci, v)| r(ci) * v).sum();
                    proptest::prop_assert!(gain.is_negative());
                }
            }
        }
    }
}
