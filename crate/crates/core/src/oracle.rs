//! Exact bond dimensions over the Gaussian rationals.
//!
//! A state with moments `m_a` has an `r`-term decomposition with no point at
//! `|1>` iff some monic degree-`r` polynomial `g(z) = z^r + sum_(j<r) g_j z^j`
//! with distinct roots satisfies the Hankel recurrence
//! `sum_j g_j m_(i+j) = 0` for `i = 0..=N-r`: the roots `z_k` are the ratios
//! `y/x`, and the recurrence says the augmented system `[Z | m]` has the same
//! rank as the Vandermonde block `Z`. With one point at `|1>`, `g` has degree
//! `r-1`, the recurrence holds for `i = 0..=N-r`, and the weight of `|1>`,
//! proportional to `sum_j g_j m_(N-r+1+j)`, must be nonzero.
//!
//! The solutions form an affine space. The discriminant of `g` (times the
//! infinity weight) is a polynomial of degree at most `2r - 2` on it, so by
//! the Schwartz-Zippel lemma checking a grid of side `2r - 1` decides whether
//! some solution is square-free.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64 as C64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type GaussianRational = Complex<BigRational>;

pub fn gq(re: i64, im: i64) -> GaussianRational {
    Complex::new(BigRational::from_integer(BigInt::from(re)), BigRational::from_integer(BigInt::from(im)))
}

pub fn to_c64(q: &GaussianRational) -> C64 {
    C64::new(q.re.to_f64().unwrap_or(f64::NAN), q.im.to_f64().unwrap_or(f64::NAN))
}

/// `m_a = sum_k w_k x_k^(N-a) y_k^a`, exactly.
pub fn exact_moments(points: &[(GaussianRational, GaussianRational)], weights: &[GaussianRational], n: usize) -> Vec<GaussianRational> {
    (0..=n)
        .map(|a| {
            points.iter().zip(weights).fold(GaussianRational::zero(), |acc, ((x, y), w)| {
                acc + w * pow(x, n - a) * pow(y, a)
            })
        })
        .collect()
}

fn pow(z: &GaussianRational, k: usize) -> GaussianRational {
    (0..k).fold(GaussianRational::one(), |acc, _| acc * z)
}

/// Smallest `D <= max_d` admitting a `D`-term decomposition, or `None`.
pub fn exact_bond_dimension(moments: &[GaussianRational], max_d: usize) -> Option<usize> {
    if moments.iter().all(|m| m.is_zero()) {
        return None;
    }
    let n = moments.len() - 1;
    (1..=max_d.min(n + 1)).find(|&d| finite_case(moments, d) || infinity_case(moments, d))
}

fn finite_case(m: &[GaussianRational], d: usize) -> bool {
    let n = m.len() - 1;
    let rows: Vec<Vec<GaussianRational>> = (0..(n + 1).saturating_sub(d))
        .map(|i| {
            let mut row: Vec<_> = (0..d).map(|j| m[i + j].clone()).collect();
            row.push(-m[i + d].clone());
            row
        })
        .collect();
    let Some((p, basis)) = affine_solutions(&rows, d) else {
        return false;
    };
    grid_search(&p, &basis, 2 * d - 1, |g| {
        let mut poly = g.to_vec();
        poly.push(GaussianRational::one());
        square_free(&poly)
    })
}

fn infinity_case(m: &[GaussianRational], d: usize) -> bool {
    let n = m.len() - 1;
    if d > n + 1 {
        return false;
    }
    let k = d - 1;
    let rows: Vec<Vec<GaussianRational>> = (0..(n + 1).saturating_sub(d))
        .map(|i| {
            let mut row: Vec<_> = (0..k).map(|j| m[i + j].clone()).collect();
            row.push(-m[i + k].clone());
            row
        })
        .collect();
    let Some((p, basis)) = affine_solutions(&rows, k) else {
        return false;
    };
    grid_search(&p, &basis, 2 * d - 1, |g| {
        let t = (0..k).fold(m[n].clone(), |acc, j| acc + &g[j] * &m[n - k + j]);
        let mut poly = g.to_vec();
        poly.push(GaussianRational::one());
        !t.is_zero() && square_free(&poly)
    })
}

/// Some point of `p + span(basis)` with coordinates in `0..side` satisfies `ok`.
fn grid_search(
    p: &[GaussianRational],
    basis: &[Vec<GaussianRational>],
    side: usize,
    ok: impl Fn(&[GaussianRational]) -> bool,
) -> bool {
    let k = basis.len();
    let mut idx = vec![0usize; k];
    loop {
        let mut g = p.to_vec();
        for (t, b) in idx.iter().zip(basis) {
            let t = gq(*t as i64, 0);
            for (gj, bj) in g.iter_mut().zip(b) {
                *gj = &*gj + &t * bj;
            }
        }
        if ok(&g) {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return false;
            }
            idx[pos] += 1;
            if idx[pos] < side {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Solves `A x = b` given rows `[A | b]` with `cols` unknowns. Returns a
/// particular solution and a nullspace basis, or `None` if inconsistent.
fn affine_solutions(rows: &[Vec<GaussianRational>], cols: usize) -> Option<(Vec<GaussianRational>, Vec<Vec<GaussianRational>>)> {
    let mut a: Vec<Vec<GaussianRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let inv = GaussianRational::one() / a[r][c].clone();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot) {
                    *v = &*v - &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut p = vec![GaussianRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        p[c] = a[i][cols].clone();
    }
    let basis = (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![GaussianRational::zero(); cols];
            v[free] = GaussianRational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -a[i][free].clone();
            }
            v
        })
        .collect();
    Some((p, basis))
}

/// Rank of a matrix over the Gaussian rationals.
pub fn exact_rank(rows: &[Vec<GaussianRational>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let pivot = a[r].clone();
        for row in a.iter_mut().skip(r + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (v, p) in row.iter_mut().zip(&pivot).skip(c) {
                    *v = &*v - &f * p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of the `(N+1) x (r+1)` augmented matrix `[Z | m]`, `Z[a][k] = z_k^a`.
pub fn augmented_rank(z: &[GaussianRational], m: &[GaussianRational]) -> usize {
    let rows: Vec<Vec<GaussianRational>> = m
        .iter()
        .enumerate()
        .map(|(a, ma)| {
            let mut row: Vec<_> = z.iter().map(|zk| pow(zk, a)).collect();
            row.push(ma.clone());
            row
        })
        .collect();
    exact_rank(&rows)
}

/// `gcd(g, g')` is constant. Coefficients ascending, trailing entry nonzero.
fn square_free(g: &[GaussianRational]) -> bool {
    if g.len() <= 2 {
        return true;
    }
    let dg: Vec<GaussianRational> = g[1..].iter().enumerate().map(|(j, c)| c * gq(j as i64 + 1, 0)).collect();
    degree_of_gcd(g.to_vec(), dg) == 0
}

fn trim(mut p: Vec<GaussianRational>) -> Vec<GaussianRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn degree_of_gcd(a: Vec<GaussianRational>, b: Vec<GaussianRational>) -> usize {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        // a mod b
        let lead = b.last().unwrap().clone();
        while a.len() >= b.len() {
            let f = a.last().unwrap() / &lead;
            let shift = a.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                let sub = &f * bj;
                a[shift + j] = &a[shift + j] - sub;
            }
            a = trim(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Small Gaussian rationals `(p + q i) / s`, used to build test corpora.
pub fn small_gaussian_rational<R: rand::Rng + ?Sized>(rng: &mut R, bound: i64) -> GaussianRational {
    let re = rng.random_range(-bound..=bound);
    let im = rng.random_range(-bound..=bound);
    let s = rng.random_range(1..=bound.max(1));
    let den = BigRational::from_integer(BigInt::from(s));
    Complex::new(BigRational::from_integer(BigInt::from(re)) / &den, BigRational::from_integer(BigInt::from(im)) / den)
}
