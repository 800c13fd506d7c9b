//! Small dense linear-algebra helpers over `DMatrix<C64>`.

use faer::{Mat, Side};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use num_traits::Zero;

/// SVD and Hermitian eigensolvers come from faer, whose complex SVD is
/// backward stable to a few ulps; the matrices stay nalgebra at the API.
fn to_faer(m: &DMatrix<C64>) -> Mat<C64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Singular values in descending order.
pub fn singular_values(m: &DMatrix<C64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s = to_faer(m).singular_values().expect("SVD converged");
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Number of singular values above `tol * s_max`.
pub fn numerical_rank(m: &DMatrix<C64>, tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        None | Some(0.0) => 0,
        Some(&smax) => s.iter().filter(|&&v| v > tol * smax).count(),
    }
}

/// Ratio of the largest to the smallest singular value (infinite if singular).
pub fn condition_number(m: &DMatrix<C64>) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Orthonormal basis of the right null space of `m`, with rank decided by
/// `tol` relative to the largest singular value.
pub fn null_space(m: &DMatrix<C64>, tol: f64) -> Vec<DVector<C64>> {
    let cols = m.ncols();
    if cols == 0 {
        return Vec::new();
    }
    if m.nrows() == 0 {
        return (0..cols)
            .map(|j| DVector::from_fn(cols, |i, _| if i == j { C64::new(1.0, 0.0) } else { C64::zero() }))
            .collect();
    }
    let svd = to_faer(m).svd().expect("SVD converged");
    let s: Vec<f64> = svd.S().column_vector().iter().map(|z| z.re).collect();
    let smax = s.iter().copied().fold(0.0_f64, f64::max);
    let rank = if smax == 0.0 { 0 } else { s.iter().filter(|&&v| v > tol * smax).count() };
    let v = svd.V();
    (rank..cols).map(|j| DVector::from_fn(cols, |i, _| v[(i, j)])).collect()
}

/// Least-squares solution of `a x = b` via SVD, singular values below
/// `eps * s_max * max(rows, cols)` dropped.
pub fn least_squares(a: &DMatrix<C64>, b: &DVector<C64>) -> DVector<C64> {
    let svd = to_faer(a).thin_svd().expect("SVD converged");
    let (u, v) = (svd.U(), svd.V());
    let s: Vec<f64> = svd.S().column_vector().iter().map(|z| z.re).collect();
    let smax = s.iter().copied().fold(0.0_f64, f64::max);
    let cut = smax * f64::EPSILON * (a.nrows().max(a.ncols()) as f64);
    let mut x = DVector::<C64>::zeros(a.ncols());
    for (k, &sk) in s.iter().enumerate() {
        if sk <= cut {
            continue;
        }
        let coef: C64 = (0..a.nrows()).map(|i| u[(i, k)].conj() * b[i]).sum::<C64>() / sk;
        for j in 0..a.ncols() {
            x[j] += v[(j, k)] * coef;
        }
    }
    x
}

/// Roots of `sum_j coeffs[j] * z^j` via eigenvalues of the companion matrix.
///
/// Leading coefficients that are exactly zero are dropped first; callers
/// decide which tiny coefficients count as zero.
pub fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
    let mut deg = coeffs.len();
    while deg > 0 && coeffs[deg - 1].is_zero() {
        deg -= 1;
    }
    if deg <= 1 {
        return Vec::new();
    }
    let d = deg - 1;
    let lead = coeffs[d];
    if d == 1 {
        return vec![-coeffs[0] / lead];
    }
    let mut comp = DMatrix::<C64>::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..d {
        comp[(i, d - 1)] = -coeffs[i] / lead;
    }
    let (_, t) = comp.schur().unpack();
    let mut roots: Vec<C64> = (0..d).map(|i| t[(i, i)]).collect();
    for r in roots.iter_mut() {
        *r = polish_root(&coeffs[..deg], *r);
    }
    roots
}

fn eval_with_derivative(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::zero();
    let mut dp = C64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// A couple of Newton steps, kept only while they shrink `|p(z)|`.
fn polish_root(coeffs: &[C64], mut z: C64) -> C64 {
    for _ in 0..3 {
        let (p, dp) = eval_with_derivative(coeffs, z);
        if p.is_zero() || dp.norm() == 0.0 {
            break;
        }
        let cand = z - p / dp;
        let (pc, _) = eval_with_derivative(coeffs, cand);
        if pc.norm() < p.norm() {
            z = cand;
        } else {
            break;
        }
    }
    z
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let eig = to_faer(m).self_adjoint_eigen(Side::Lower).expect("eigensolver converged");
    let vals: Vec<f64> = eig.S().column_vector().iter().map(|z| z.re).collect();
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    let u = eig.U();
    let vecs = DMatrix::from_fn(m.nrows(), order.len(), |r, c| u[(r, order[c])]);
    (order.iter().map(|&i| vals[i]).collect(), vecs)
}

pub fn vector_norm(v: &[C64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn roots_of_quadratic_and_cubic() {
        // (z - 1)(z + 2) = z^2 + z - 2
        let mut r = poly_roots(&[c(-2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!((r[0] - c(-2.0, 0.0)).norm() < 1e-14);
        assert!((r[1] - c(1.0, 0.0)).norm() < 1e-14);

        // z^3 + 1: cube roots of -1
        let r = poly_roots(&[c(1.0, 0.0), C64::zero(), C64::zero(), c(1.0, 0.0)]);
        assert_eq!(r.len(), 3);
        for z in r {
            assert!((z * z * z + 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn null_space_of_wide_matrix() {
        let m = DMatrix::from_row_slice(1, 3, &[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let ns = null_space(&m, 1e-12);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!((&m * &v).norm() < 1e-14);
            assert!((v.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rank_of_outer_product() {
        let u = DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 1.0)]);
        let m = &u * u.adjoint();
        assert_eq!(numerical_rank(&m, 1e-10), 1);
    }

    #[test]
    fn hermitian_eigen_sorted() {
        let m = DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]);
        let (vals, _) = hermitian_eigen(&m);
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] - 3.0).abs() < 1e-14);
    }
}
