//! Seeded randomized checks: SLOCC invariance of `D`, nesting, rank bounds
//! and agreement with the exact oracle.
//!
//! Every case draws from its own ChaCha stream derived from `(seed, case)`,
//! so results do not depend on thread scheduling and a failing case can be
//! replayed alone.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::binom::sqrt_binomial;
use crate::decomposer::{decompose, extend_nesting};
use crate::error::SymResult;
use crate::hamiltonian::rank_profile;
use crate::oracle::{exact_bond_dimension, exact_moments, gq, small_gaussian_rational, to_c64};
use crate::slocc::{apply_ilo, random_ilo_with};
use crate::symstate::{from_decomposition, NamedState, ProductPoint, SymmetricState};
use crate::tolerance::ToleranceConfig;

/// Largest condition number of the ILOs drawn by the SLOCC suite.
pub const SLOCC_CONDITION_CAP: f64 = 50.0;
/// `X_N(z)` parameter used throughout the corpora.
pub fn x_family_z() -> C64 {
    C64::new(2f64.powf(-1.0 / 6.0), 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Slocc,
    Nesting,
    Bounds,
    Oracle,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "slocc" => Some(Self::Slocc),
            "nesting" => Some(Self::Nesting),
            "bounds" => Some(Self::Bounds),
            "oracle" => Some(Self::Oracle),
            _ => None,
        }
    }

    /// Corpus size when `--count` is not given: trials for `slocc` and
    /// `oracle`, states per `N` for `nesting` and `bounds`.
    pub fn default_count(self) -> usize {
        match self {
            Self::Slocc => 1300,
            Self::Nesting => 50,
            Self::Bounds => 500,
            Self::Oracle => 100,
        }
    }

    pub fn run(self, seed: u64, count: usize, tol: &ToleranceConfig) -> SuiteReport {
        match self {
            Self::Slocc => slocc_suite(seed, count, tol),
            Self::Nesting => nesting_suite(seed, count, tol),
            Self::Bounds => bounds_suite(seed, count, tol),
            Self::Oracle => oracle_suite(seed, count, tol),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseFailure {
    pub case: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<CaseFailure>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(suite: Suite, seed: u64, results: Vec<Result<(), String>>) -> Self {
        let cases = results.len();
        let failures: Vec<CaseFailure> = results
            .into_iter()
            .enumerate()
            .filter_map(|(case, r)| r.err().map(|detail| CaseFailure { case, detail }))
            .collect();
        Self { suite, seed, cases, passed: cases - failures.len(), failures }
    }
}

/// Independent stream for one case.
pub fn case_rng(seed: u64, tag: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ tag);
    rng.set_stream(case as u64);
    rng
}

fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Smallest chordal distance between the points of a generated state.
pub const MIN_SEPARATION: f64 = 0.25;
/// Smallest weight magnitude relative to the largest one.
pub const MIN_WEIGHT_RATIO: f64 = 0.1;

/// `sum_k c_k |x_k>^N` with `d` Gaussian points and weights, redrawn until
/// the points are at least [`MIN_SEPARATION`] apart and no weight is below
/// [`MIN_WEIGHT_RATIO`] of the largest. Without this a draw can sit within
/// the rank tolerance of a state with fewer terms.
pub fn random_state_with_rank<R: Rng + ?Sized>(rng: &mut R, n: usize, d: usize) -> SymResult<SymmetricState> {
    let mut points: Vec<ProductPoint> = Vec::with_capacity(d);
    while points.len() < d {
        let p = ProductPoint { x: gaussian_c64(rng), y: gaussian_c64(rng) }.canonical();
        if points.iter().all(|q| q.chordal_distance(&p) >= MIN_SEPARATION) {
            points.push(p);
        }
    }
    let weights: Vec<C64> = loop {
        let w: Vec<C64> = (0..d).map(|_| gaussian_c64(rng)).collect();
        let top = w.iter().map(|c| c.norm()).fold(0.0, f64::max);
        if w.iter().all(|c| c.norm() >= MIN_WEIGHT_RATIO * top) {
            break w;
        }
    };
    Ok(from_decomposition(&points, &weights, n)?.normalized())
}

/// Gaussian Dicke vector.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SymResult<SymmetricState> {
    Ok(SymmetricState::new((0..=n).map(|_| gaussian_c64(rng)).collect())?.normalized())
}

fn bond_dim(state: &SymmetricState, tol: &ToleranceConfig) -> Result<usize, String> {
    decompose(state, tol).map(|d| d.bond_dim()).map_err(|e| e.to_string())
}

/// GHZ_6, W_6, X_6 and ten random `D = 3` states at `N = 8`.
pub fn slocc_bases(seed: u64) -> Vec<SymmetricState> {
    let mut out = vec![
        NamedState::Ghz.build(6).expect("valid"),
        NamedState::W.build(6).expect("valid"),
        NamedState::X(x_family_z()).build(6).expect("valid"),
    ];
    for i in 0..10 {
        out.push(random_state_with_rank(&mut case_rng(seed, 0xba5e, i), 8, 3).expect("nonzero"));
    }
    out
}

/// Trial `i` applies a random ILO (condition at most
/// [`SLOCC_CONDITION_CAP`]) to base `i mod 13` and compares `D`.
pub fn slocc_suite(seed: u64, count: usize, tol: &ToleranceConfig) -> SuiteReport {
    let bases = slocc_bases(seed);
    let base_d: Vec<Result<usize, String>> = bases.iter().map(|b| bond_dim(b, tol)).collect();
    let results = (0..count)
        .into_par_iter()
        .map(|i| {
            let b = i % bases.len();
            let d0 = base_d[b].clone().map_err(|e| format!("base {b}: {e}"))?;
            let mut rng = case_rng(seed, 0x51_0cc, i);
            let g = random_ilo_with(&mut rng, SLOCC_CONDITION_CAP).map_err(|e| e.to_string())?;
            let moved = apply_ilo(&bases[b], &g).map_err(|e| e.to_string())?;
            let d1 = bond_dim(&moved, tol).map_err(|e| format!("base {b}: {e}"))?;
            if d1 == d0 {
                Ok(())
            } else {
                Err(format!("base {b}: D changed from {d0} to {d1} (ILO condition {:.2})", g.condition_number()))
            }
        })
        .collect();
    SuiteReport::collect(Suite::Slocc, seed, results)
}

/// For `N = 5..=10`, `count` random states with `D <= floor(N/2) + 1` are
/// extended to `N + 1` parties, which must keep `D`.
pub fn nesting_suite(seed: u64, count: usize, tol: &ToleranceConfig) -> SuiteReport {
    let cases: Vec<(usize, usize)> = (5..=10).flat_map(|n| (0..count).map(move |i| (n, i))).collect();
    let results = cases
        .par_iter()
        .enumerate()
        .map(|(case, &(n, _))| {
            let mut rng = case_rng(seed, 0x7e57, case);
            let bound = n / 2 + 1;
            let d = rng.random_range(1..=bound);
            let st = random_state_with_rank(&mut rng, n, d).map_err(|e| e.to_string())?;
            let dec = decompose(&st, tol).map_err(|e| format!("N={n}: {e}"))?;
            if dec.bond_dim() > bound {
                return Err(format!("N={n}: built with D={d} but solver found {}", dec.bond_dim()));
            }
            let ext = extend_nesting(&dec, 1).map_err(|e| e.to_string())?;
            let d1 = bond_dim(&ext, tol).map_err(|e| format!("N={}: {e}", n + 1))?;
            if d1 == dec.bond_dim() {
                Ok(())
            } else {
                Err(format!("N={n}: D={} became {d1} after extension", dec.bond_dim()))
            }
        })
        .collect();
    SuiteReport::collect(Suite::Nesting, seed, results)
}

/// Corpus used by the bounds suite: state `i` at `N` cycles through a
/// generic Dicke vector, a random low-`D` state, an ILO image of `W_N` and an
/// ILO image of a random Dicke state.
pub fn bounds_state(seed: u64, case: usize, n: usize) -> SymResult<SymmetricState> {
    let mut rng = case_rng(seed, 0xb0_4d5, case);
    match case % 4 {
        0 => random_state(&mut rng, n),
        1 => {
            let d = rng.random_range(1..=n / 2 + 1);
            random_state_with_rank(&mut rng, n, d)
        }
        2 => {
            let g = random_ilo_with(&mut rng, SLOCC_CONDITION_CAP)?;
            Ok(apply_ilo(&NamedState::W.build(n)?, &g)?.normalized())
        }
        _ => {
            let k = rng.random_range(0..=n);
            let g = random_ilo_with(&mut rng, SLOCC_CONDITION_CAP)?;
            Ok(apply_ilo(&NamedState::Dicke(k).build(n)?, &g)?.normalized())
        }
    }
}

/// For `N = 4..=12` and `count` states each: `n* <= floor(N/2) + 1`,
/// `rank rho^(M) = rank rho^(N-M)` and `rank rho^(M) <= min(D, M + 1)`.
pub fn bounds_suite(seed: u64, count: usize, tol: &ToleranceConfig) -> SuiteReport {
    let cases: Vec<usize> = (4..=12).flat_map(|n| std::iter::repeat_n(n, count)).collect();
    let results = cases
        .par_iter()
        .enumerate()
        .map(|(case, &n)| {
            let st = bounds_state(seed, case, n).map_err(|e| e.to_string())?;
            let profile = rank_profile(&st, tol).map_err(|e| e.to_string())?;
            let d = bond_dim(&st, tol).map_err(|e| format!("N={n}: {e}"))?;
            let bound = n / 2 + 1;
            match profile.n_star {
                Some(s) if s <= bound => {}
                other => return Err(format!("N={n}: n* = {other:?} exceeds {bound}")),
            }
            for m in 1..n {
                let r = profile.ranks[m - 1];
                if r != profile.ranks[n - m - 1] {
                    return Err(format!("N={n}: rank rho^({m}) = {r} but rank rho^({}) = {}", n - m, profile.ranks[n - m - 1]));
                }
                if r > d.min(m + 1) {
                    return Err(format!("N={n}: rank rho^({m}) = {r} exceeds min(D = {d}, {})", m + 1));
                }
            }
            Ok(())
        })
        .collect();
    SuiteReport::collect(Suite::Bounds, seed, results)
}

/// A random state with Gaussian-rational points and weights, `N` in `2..=6`
/// and at most three points; returns the floating state and its exact `D`.
pub fn oracle_case(seed: u64, case: usize) -> (SymmetricState, usize) {
    let mut rng = case_rng(seed, 0x0ac1e, case);
    let n = 2 + case % 5;
    loop {
        let k = rng.random_range(1..=3usize);
        let mut points = Vec::with_capacity(k);
        while points.len() < k {
            let x = gq(rng.random_range(-2..=2), rng.random_range(-2..=2));
            let y = gq(rng.random_range(-2..=2), rng.random_range(-2..=2));
            if !(num_traits::Zero::is_zero(&x) && num_traits::Zero::is_zero(&y)) {
                points.push((x, y));
            }
        }
        let weights: Vec<_> = (0..k).map(|_| small_gaussian_rational(&mut rng, 3)).collect();
        let m = exact_moments(&points, &weights, n);
        let Some(d) = exact_bond_dimension(&m, 4) else {
            continue;
        };
        let dicke: Vec<C64> = m.iter().enumerate().map(|(a, v)| to_c64(v) * sqrt_binomial(n, a)).collect();
        if let Ok(st) = SymmetricState::new(dicke) {
            return (st, d);
        }
    }
}

/// Floating solver against the exact oracle on `count` rational states.
pub fn oracle_suite(seed: u64, count: usize, tol: &ToleranceConfig) -> SuiteReport {
    let results = (0..count)
        .into_par_iter()
        .map(|case| {
            let (st, exact) = oracle_case(seed, case);
            let d = bond_dim(&st, tol)?;
            if d == exact {
                Ok(())
            } else {
                Err(format!("N={}: solver D={d}, exact D={exact}", st.n_parties()))
            }
        })
        .collect();
    SuiteReport::collect(Suite::Oracle, seed, results)
}
