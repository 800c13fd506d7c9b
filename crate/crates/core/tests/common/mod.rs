//! Dense reference constructions shared by the integration tests. They use
//! only nalgebra and the Dicke amplitudes, never the library's own dense code.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use symclass::SymmetricState;

fn choose(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Normalized `|D_k>` on `m` qubits as a `2^m` vector.
pub fn dicke_vector(m: usize, k: usize) -> Vec<C64> {
    let amp = 1.0 / choose(m, k).sqrt();
    (0..1usize << m)
        .map(|b| if b.count_ones() as usize == k { C64::new(amp, 0.0) } else { C64::new(0.0, 0.0) })
        .collect()
}

/// Normalized dense amplitudes: `psi[b] = d_k / sqrt(C(N, k))` with `k = popcount(b)`.
pub fn full_vector(st: &SymmetricState) -> Vec<C64> {
    let n = st.n_parties();
    let norm = st.dicke().iter().map(|d| d.norm_sqr()).sum::<f64>().sqrt();
    (0..1usize << n)
        .map(|b| {
            let k = b.count_ones() as usize;
            st.dicke()[k] / (choose(n, k).sqrt() * norm)
        })
        .collect()
}

/// Partial trace over the last `n - m` qubits (site 0 is the top bit).
pub fn dense_reduced(psi: &[C64], n: usize, m: usize) -> DMatrix<C64> {
    let a = DMatrix::from_fn(1 << m, 1 << (n - m), |i, j| psi[(i << (n - m)) | j]);
    &a * a.adjoint()
}

pub fn pauli_matrix(p: char) -> DMatrix<C64> {
    let (o, z, i) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 1.0));
    match p {
        'X' => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        'Y' => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        'Z' => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
        _ => DMatrix::identity(2, 2),
    }
}

/// `op_s` on each listed site and the identity elsewhere, site 0 leftmost.
pub fn kron_sites(n: usize, ops: &[(usize, &DMatrix<C64>)]) -> DMatrix<C64> {
    let id = DMatrix::<C64>::identity(2, 2);
    (0..n).fold(DMatrix::identity(1, 1), |acc, s| {
        let op = ops.iter().find(|(site, _)| *site == s).map(|(_, m)| *m).unwrap_or(&id);
        acc.kronecker(op)
    })
}

/// Number of singular values above `tol * s_max`.
pub fn numerical_rank(a: &DMatrix<C64>, tol: f64) -> usize {
    let s = a.singular_values();
    let top = s.iter().copied().fold(0.0, f64::max);
    s.iter().filter(|&&v| v > tol * top).count()
}
