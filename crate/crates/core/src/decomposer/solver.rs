//! Minimal-D solver over Hankel (catalecticant) matrices of the moment vector.
//!
//! A binary form `g(X, Y) = sum_j g_j X^(r-j) Y^j` vanishes on every point of
//! a decomposition `m_a = sum_k c_k x_k^(N-a) y_k^a` exactly when
//! `sum_j g_j m_(i+j) = 0` for `i = 0..=N-r`, i.e. when `g` lies in the kernel
//! of the `(N-r+1) x (r+1)` Hankel matrix `H_r[i][j] = m_(i+j)`. Conversely,
//! any kernel form with `r` distinct projective roots yields an `r`-term
//! decomposition: the columns `(x^(N-a) y^a)_a` of the roots span the kernel
//! of the annihilating operator. The minimal `D` is therefore the smallest `r`
//! whose kernel holds a square-free form. A root at `x = 0` (the point `|1>`)
//! shows up as a vanishing top coefficient `g_r`; square-freeness allows at
//! most one of them.
//!
//! Weights are then recovered by least squares on the Vandermonde-type system
//! and the decomposition is certified by its resynthesis residual. If the rank
//! test passes but no candidate can be certified, `r` is escalated until
//! `N + 1`, where the system is square and always solvable.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{moments, DiagonalDecomposition};
use crate::binom::{binomial, sqrt_binomial};
use crate::error::{SymError, SymResult};
use crate::linalg::{condition_number, least_squares, null_space, numerical_rank, poly_roots};
use crate::symstate::{ProductPoint, SymmetricState};
use crate::tolerance::ToleranceConfig;

/// Random kernel combinations tried when the kernel has dimension >= 2.
const KERNEL_TRIALS: usize = 24;
/// A candidate whose weight sum is this close to the state norm is accepted
/// without trying further combinations.
const GOOD_ENOUGH_CANCELLATION: f64 = 4.0;
/// Gauss-Newton steps allowed when polishing a candidate.
const REFINE_STEPS: usize = 4;
/// Residual below which a candidate is not polished further.
const REFINED: f64 = 1e-14;
/// Components below this fraction of a point's norm are snapped to zero.
const SNAP: f64 = 1e-13;

/// `(N-r+1) x (r+1)` Hankel matrix `H[i][j] = m_(i+j)`.
pub fn hankel_matrix(moments: &[C64], r: usize) -> DMatrix<C64> {
    let n = moments.len() - 1;
    let rows = (n + 1).saturating_sub(r);
    DMatrix::from_fn(rows, r + 1, |i, j| moments[i + j])
}

/// Minimal number of tensor-power terms of `state`.
pub fn optimal_bond_dimension(state: &SymmetricState, tol: &ToleranceConfig) -> SymResult<usize> {
    Ok(decompose(state, tol)?.bond_dim())
}

/// A certified minimal decomposition of `state`.
pub fn decompose(state: &SymmetricState, tol: &ToleranceConfig) -> SymResult<DiagonalDecomposition> {
    let n = state.n_parties();
    let norm = state.norm();
    if norm == 0.0 {
        return Err(SymError::ZeroState);
    }
    let target: Vec<C64> = state.dicke().iter().map(|d| d / norm).collect();
    let m: Vec<C64> = moments(state).moments.iter().map(|v| v / norm).collect();

    // Smallest r with a nontrivial kernel; guaranteed by r = floor(N/2) + 1.
    let first = (1..=n + 1)
        .find(|&r| !null_space(&hankel_matrix(&m, r), tol.tol_rank).is_empty())
        .unwrap_or(n + 1);

    let mut rng = ChaCha8Rng::seed_from_u64(tol.seed ^ 0x5eed_d1a9);
    let mut worst_condition = 1.0_f64;
    for r in first..=n + 1 {
        let kernel = null_space(&hankel_matrix(&m, r), tol.tol_rank);
        if kernel.is_empty() {
            continue;
        }
        match attempt_rank(r, &kernel, &m, &target, tol, &mut rng) {
            Attempt::Certified(points, weights, residual) => {
                return Ok(DiagonalDecomposition {
                    n_parties: n,
                    points,
                    weights: weights.iter().map(|w| w * norm).collect(),
                    residual,
                });
            }
            Attempt::Rejected { condition } => worst_condition = worst_condition.max(condition),
        }
    }
    Err(SymError::IllConditioned {
        condition: worst_condition,
        detail: "no decomposition met the residual tolerance up to D = N + 1".into(),
    })
}

enum Attempt {
    Certified(Vec<ProductPoint>, Vec<C64>, f64),
    Rejected { condition: f64 },
}

struct Candidate {
    points: Vec<ProductPoint>,
    weights: Vec<C64>,
    residual: f64,
    cancellation: f64,
}

fn attempt_rank(
    r: usize,
    kernel: &[DVector<C64>],
    m: &[C64],
    target: &[C64],
    tol: &ToleranceConfig,
    rng: &mut ChaCha8Rng,
) -> Attempt {
    let forms: Box<dyn Iterator<Item = DVector<C64>>> = if kernel.len() == 1 {
        Box::new(std::iter::once(kernel[0].clone()))
    } else {
        let mut draws = spread_projections(r, kernel);
        for _ in 0..KERNEL_TRIALS {
            let mut g = DVector::<C64>::zeros(r + 1);
            for v in kernel {
                let a: f64 = StandardNormal.sample(rng);
                let b: f64 = StandardNormal.sample(rng);
                g += v * C64::new(a, b);
            }
            draws.push(g);
        }
        Box::new(draws.into_iter())
    };

    let mut best: Option<Candidate> = None;
    let mut condition = 1.0_f64;
    for g in forms {
        let coeffs: Vec<C64> = g.iter().copied().collect();
        if !is_square_free(&coeffs, tol.tol_rank) {
            condition = f64::INFINITY;
            continue;
        }
        let points = form_roots(&coeffs);
        if points.len() != r || !super::pairwise_independent(&points, tol.tol_sep) {
            condition = f64::INFINITY;
            continue;
        }
        let (points, c, residual) = fit(points, m, target);
        // Points are unit vectors, so this is 1 for a single term and grows
        // when near-coincident points cancel each other.
        let cancellation: f64 = c.iter().map(|w| w.norm()).sum();
        if residual > tol.tol_resid {
            condition = condition.max(condition_number(&vandermonde(&points, m.len() - 1)));
            continue;
        }
        let better = best.as_ref().is_none_or(|b| cancellation < b.cancellation);
        if better {
            best = Some(Candidate { points, weights: c.iter().copied().collect(), residual, cancellation });
        }
        if best.as_ref().is_some_and(|b| b.cancellation <= GOOD_ENOUGH_CANCELLATION) {
            break;
        }
    }
    match best {
        Some(b) => Attempt::Certified(b.points, b.weights, b.residual),
        None => Attempt::Rejected { condition },
    }
}

/// Weights by least squares, then a few Gauss-Newton steps on points and
/// weights together while they lower the Dicke-basis residual. Roots of a
/// kernel form can be off by a few ulps times the root condition number, and
/// raising them to the N-th power magnifies that.
fn fit(points: Vec<ProductPoint>, m: &[C64], target: &[C64]) -> (Vec<ProductPoint>, DVector<C64>, f64) {
    let n = m.len() - 1;
    let scale: Vec<f64> = (0..=n).map(|a| sqrt_binomial(n, a)).collect();
    let solve = |points: &[ProductPoint]| {
        let v = vandermonde(points, n);
        let c = least_squares(&v, &DVector::from_column_slice(m));
        let resynth = &v * &c;
        let residual = resynth
            .iter()
            .zip(target)
            .zip(&scale)
            .map(|((x, t), s)| (x * s - t).norm_sqr())
            .sum::<f64>()
            .sqrt();
        (c, residual)
    };
    let (c, residual) = solve(&points);
    let mut best = (points, c, residual);
    for _ in 0..REFINE_STEPS {
        if best.2 <= REFINED {
            break;
        }
        let (points, c, _) = &best;
        let d = points.len();
        // Vary the smaller component of each point, keep the larger fixed.
        let vary_y: Vec<bool> = points.iter().map(|p| p.x.norm() >= p.y.norm()).collect();
        let mut jac = DMatrix::<C64>::zeros(n + 1, 2 * d);
        let mut err = DVector::<C64>::zeros(n + 1);
        for a in 0..=n {
            let mut model = C64::zero();
            for (k, p) in points.iter().enumerate() {
                let mono = p.x.powu((n - a) as u32) * p.y.powu(a as u32);
                model += c[k] * mono;
                jac[(a, k)] = mono * scale[a];
                let deriv = if vary_y[k] {
                    if a == 0 { C64::zero() } else { p.x.powu((n - a) as u32) * p.y.powu(a as u32 - 1) * a as f64 }
                } else if a == n {
                    C64::zero()
                } else {
                    p.x.powu((n - a - 1) as u32) * p.y.powu(a as u32) * (n - a) as f64
                };
                jac[(a, d + k)] = c[k] * deriv * scale[a];
            }
            err[a] = (m[a] - model) * scale[a];
        }
        let step = least_squares(&jac, &err);
        let moved: Vec<ProductPoint> = points
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let q = if vary_y[k] {
                    ProductPoint { x: p.x, y: p.y + step[d + k] }
                } else {
                    ProductPoint { x: p.x + step[d + k], y: p.y }
                };
                q.canonical()
            })
            .collect();
        let (c, residual) = solve(&moved);
        if residual < best.2 {
            best = (moved, c, residual);
        } else {
            break;
        }
    }
    best
}

/// Projections onto the kernel of `X^r - e^(i t) Y^r` and a rotated copy.
/// Their roots sit on a great circle, so when the kernel is large these give
/// well-separated points and a well-conditioned weight system.
fn spread_projections(r: usize, kernel: &[DVector<C64>]) -> Vec<DVector<C64>> {
    let u = chart_rotation();
    let mut out = Vec::new();
    for rotate in [false, true] {
        for k in 0..2 {
            let mut e = vec![C64::zero(); r + 1];
            e[0] = C64::new(1.0, 0.0);
            e[r] = -C64::from_polar(1.0, k as f64 * std::f64::consts::PI / (2 * r) as f64);
            if rotate {
                e = substitute(&e, &u);
            }
            let e = DVector::from_vec(e);
            let g: DVector<C64> = kernel.iter().map(|v| v * v.dotc(&e)).sum();
            if g.norm() > 1e-6 * e.norm() {
                out.push(g);
            }
        }
    }
    out
}

/// `V[a][k] = x_k^(N-a) y_k^a`.
fn vandermonde(points: &[ProductPoint], n: usize) -> DMatrix<C64> {
    DMatrix::from_fn(n + 1, points.len(), |a, k| {
        points[k].x.powu((n - a) as u32) * points[k].y.powu(a as u32)
    })
}

/// Square-free test for a binary form via the resultant of its partial
/// derivatives: a repeated projective root (finite or at infinity) is exactly a
/// common root of `dg/dX` and `dg/dY`.
fn is_square_free(g: &[C64], tol_rank: f64) -> bool {
    let r = g.len() - 1;
    if g.iter().all(|c| c.is_zero()) {
        return false;
    }
    if r <= 1 {
        return true;
    }
    // dg/dX and dg/dY as forms of degree r-1 in the same monomial order.
    let gx: Vec<C64> = (0..r).map(|j| g[j] * (r - j) as f64).collect();
    let gy: Vec<C64> = (0..r).map(|j| g[j + 1] * (j + 1) as f64).collect();
    let syl = sylvester(&gx, &gy);
    numerical_rank(&syl, tol_rank) == syl.nrows()
}

/// Sylvester matrix of two binary forms of equal degree `d` (size `2d x 2d`).
fn sylvester(a: &[C64], b: &[C64]) -> DMatrix<C64> {
    let d = a.len() - 1;
    let size = 2 * d;
    let mut s = DMatrix::<C64>::zeros(size, size);
    for i in 0..d {
        for (j, c) in a.iter().enumerate() {
            s[(i, i + j)] = *c;
        }
        for (j, c) in b.iter().enumerate() {
            s[(d + i, i + j)] = *c;
        }
    }
    s
}

/// Fixed generic unitary used to keep roots away from the chart boundary.
fn chart_rotation() -> [[C64; 2]; 2] {
    let (theta, phi) = (0.618_033_988_749_894_9_f64, 1.234_567_890_123_f64);
    let (c, s) = (theta.cos(), theta.sin());
    let e = C64::from_polar(1.0, phi);
    [[C64::new(c, 0.0), -s * e.conj()], [s * e, C64::new(c, 0.0)]]
}

/// Coefficients of `g(u00 X + u01 Y, u10 X + u11 Y)`.
fn substitute(g: &[C64], u: &[[C64; 2]; 2]) -> Vec<C64> {
    let r = g.len() - 1;
    let mut out = vec![C64::zero(); r + 1];
    for (j, gj) in g.iter().enumerate() {
        if gj.is_zero() {
            continue;
        }
        // (u00 X + u01 Y)^(r-j) * (u10 X + u11 Y)^j
        let left = binomial_expand(u[0][0], u[0][1], r - j);
        let right = binomial_expand(u[1][0], u[1][1], j);
        for (p, lp) in left.iter().enumerate() {
            for (q, rq) in right.iter().enumerate() {
                out[p + q] += gj * lp * rq;
            }
        }
    }
    out
}

/// Coefficients of `(a X + b Y)^k` by powers of Y.
fn binomial_expand(a: C64, b: C64, k: usize) -> Vec<C64> {
    (0..=k)
        .map(|i| a.powu((k - i) as u32) * b.powu(i as u32) * binomial(k, i))
        .collect()
}

/// Projective roots of a binary form, as canonical points.
fn form_roots(g: &[C64]) -> Vec<ProductPoint> {
    let r = g.len() - 1;
    let u = chart_rotation();
    let rotated = substitute(g, &u);
    // In the rotated chart X' = 1: roots of sum_j g'_j z^j with z = Y'/X'.
    let scale = rotated.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut trimmed = rotated.clone();
    let mut infinite = 0;
    while trimmed.len() > 1 && trimmed.last().is_some_and(|c| c.norm() <= 1e-14 * scale) {
        trimmed.pop();
        infinite += 1;
    }
    let mut primed: Vec<(C64, C64)> = poly_roots(&trimmed).into_iter().map(|z| (C64::new(1.0, 0.0), z)).collect();
    primed.extend(std::iter::repeat_n((C64::zero(), C64::new(1.0, 0.0)), infinite));
    debug_assert!(primed.len() <= r);
    primed
        .into_iter()
        .map(|(xp, yp)| {
            let x = u[0][0] * xp + u[0][1] * yp;
            let y = u[1][0] * xp + u[1][1] * yp;
            let nrm = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let x = if x.norm() <= SNAP * nrm { C64::zero() } else { x };
            let y = if y.norm() <= SNAP * nrm { C64::zero() } else { y };
            ProductPoint { x, y }.canonical()
        })
        .collect()
}
