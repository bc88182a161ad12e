#![allow(dead_code)]

use latref_core::exact::{int, IntMatrix, IntVector, Integer, Rational};
use latref_core::knapsack::{make_decomposition, Decomposition};
use latref_core::solver::SplitMix64;
use num_traits::{One, Signed, Zero};

pub fn ints(v: &[i64]) -> IntVector {
    v.iter().map(|&x| int(x)).collect()
}

pub fn cuww1() -> IntVector {
    ints(&[12223, 12224, 36674, 61119, 85569])
}

pub const CUWW1_FROBENIUS: i64 = 89_643_481;

pub fn range(rng: &mut SplitMix64, lo: i64, hi: i64) -> i64 {
    lo + rng.below((hi - lo + 1) as u64) as i64
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Random `a = M1 p1 + M2 p2` with `1 <= a_i <= amax`, `gcd(a) = 1`.
pub fn random_decomposition(rng: &mut SplitMix64, n: usize, amax: i64) -> Decomposition {
    loop {
        let m1 = range(rng, 2, 12);
        let m2 = range(rng, 2, 12);
        if gcd(m1, m2) != 1 {
            continue;
        }
        let mut a = Vec::new();
        let mut p1 = Vec::new();
        let mut p2 = Vec::new();
        let mut ok = true;
        for _ in 0..n {
            let x = range(rng, -3, 3);
            let lo = (1 - m1 * x + m2 - 1).div_euclid(m2);
            let hi = (amax - m1 * x).div_euclid(m2);
            if lo > hi {
                ok = false;
                break;
            }
            let y = range(rng, lo, hi);
            p1.push(x);
            p2.push(y);
            a.push(m1 * x + m2 * y);
        }
        if !ok || a.iter().fold(0, |g, &v| gcd(g, v)) != 1 {
            continue;
        }
        if let Ok(d) = make_decomposition(&ints(&a), &ints(&p1), &ints(&p2), &int(m1), &int(m2)) {
            return d;
        }
    }
}

/// `ok[b]` iff `b = a x` for some nonnegative integer `x`.
pub fn representable(a: &[i64], limit: usize) -> Vec<bool> {
    let mut ok = vec![false; limit + 1];
    ok[0] = true;
    for b in 1..=limit {
        ok[b] = a.iter().any(|&c| (c as usize) <= b && ok[b - c as usize]);
    }
    ok
}

/// Frobenius number by scanning (`a` has gcd 1, all positive).
pub fn frobenius_scan(a: &[i64]) -> i64 {
    let amin = *a.iter().min().unwrap();
    let amax = *a.iter().max().unwrap();
    let limit = (amin * amax) as usize;
    let ok = representable(a, limit);
    (0..=limit).rev().find(|&b| !ok[b]).map_or(-1, |b| b as i64)
}

pub fn to_i64(v: &[Integer]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).unwrap()).collect()
}

/// Determinant by fraction elimination.
pub fn det_rational(m: &IntMatrix) -> Rational {
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| Rational::from_integer(m.get(i, j).clone())).collect()).collect();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Rational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    det
}

/// Rank over the rationals by elimination.
pub fn rank_rational(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<Rational>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| Rational::from_integer(m.get(i, j).clone())).collect())
        .collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(p, rank);
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for k in 0..m.cols() {
                    let v = &f * &a[rank][k];
                    a[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exact LLL check (size reduction and Lovasz with `delta`) from scratch.
pub fn lll_conditions(b: &IntMatrix, delta: &Rational) -> bool {
    let k = b.cols();
    let cols: Vec<Vec<Rational>> = (0..k)
        .map(|j| (0..b.rows()).map(|i| Rational::from_integer(b.get(i, j).clone())).collect())
        .collect();
    let dot = |x: &[Rational], y: &[Rational]| x.iter().zip(y).map(|(a, b)| a * b).sum::<Rational>();
    let mut star: Vec<Vec<Rational>> = Vec::new();
    let mut mu = vec![vec![Rational::zero(); k]; k];
    for j in 0..k {
        let mut v = cols[j].clone();
        for i in 0..j {
            mu[j][i] = dot(&cols[j], &star[i]) / dot(&star[i], &star[i]);
            for (t, s) in v.iter_mut().zip(&star[i]) {
                *t -= &mu[j][i] * s;
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            return false;
        }
        star.push(v);
    }
    let half = Rational::new(int(1), int(2));
    for j in 0..k {
        for i in 0..j {
            if mu[j][i].abs() > half {
                return false;
            }
        }
        if j > 0 {
            let lhs = dot(&star[j], &star[j]);
            let rhs = (delta - &mu[j][j - 1] * &mu[j][j - 1]) * dot(&star[j - 1], &star[j - 1]);
            if lhs < rhs {
                return false;
            }
        }
    }
    true
}

/// Product of random elementary column operations.
pub fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for &(a, b, k) in ops {
        let (a, b) = (a % n, b % n);
        if a == b {
            continue;
        }
        let cols: Vec<Vec<Integer>> = (0..n)
            .map(|c| {
                let mut col = u.column(c);
                if c == a {
                    let other = u.column(b);
                    for (x, y) in col.iter_mut().zip(other) {
                        *x += int(k) * y;
                    }
                }
                col
            })
            .collect();
        u = IntMatrix::from_columns(n, &cols).unwrap();
    }
    u
}
