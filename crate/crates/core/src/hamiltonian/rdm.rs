//! Reduced density matrices of symmetric states, in the Dicke basis of the
//! kept block, and the projectors onto their symmetric-space kernels.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use super::pauli::PauliSum;
use crate::binom::{ln_binomial, sqrt_binomial};
use crate::error::{SymError, SymResult};
use crate::linalg::{hermitian_eigen, null_space, numerical_rank};
use crate::symstate::SymmetricState;
use crate::tolerance::ToleranceConfig;

/// `Psi_M[l][k]`: coefficient of `|D_k^(M)> |D_l^(N-M)>` in the state.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartitionMap {
    pub m: usize,
    pub n: usize,
    /// `(N-M+1) x (M+1)`.
    pub matrix: DMatrix<C64>,
}

/// `Psi_M[l][k] = sqrt(C(M,k) C(N-M,l) / C(N,k+l)) d_(k+l)`.
pub fn bipartition_map(state: &SymmetricState, m: usize) -> SymResult<BipartitionMap> {
    let n = state.n_parties();
    if m > n {
        return Err(SymError::InvalidParameter(format!("block size {m} exceeds N = {n}")));
    }
    let d = state.dicke();
    let matrix = DMatrix::from_fn(n - m + 1, m + 1, |l, k| {
        let w = 0.5 * (ln_binomial(m, k) + ln_binomial(n - m, l) - ln_binomial(n, k + l));
        d[k + l] * w.exp()
    });
    Ok(BipartitionMap { m, n, matrix })
}

/// `rho^(M)` on the symmetric subspace of `M` qubits, trace one.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedDensityMatrix {
    pub m: usize,
    pub matrix: DMatrix<C64>,
}

impl ReducedDensityMatrix {
    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (&self.matrix - self.matrix.adjoint()).norm() <= tol
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen(&self.matrix).0
    }
}

/// Reduced state of `M` parties of the normalized `state`, `1 <= M <= N`.
pub fn reduced_density(state: &SymmetricState, m: usize) -> SymResult<ReducedDensityMatrix> {
    let n = state.n_parties();
    if m == 0 || m > n {
        return Err(SymError::InvalidParameter(format!("block size must lie in 1..={n}, got {m}")));
    }
    // Psi_{N-M} has rows indexed by the kept M-block.
    let psi = bipartition_map(&state.normalized(), n - m)?.matrix;
    Ok(ReducedDensityMatrix { m, matrix: &psi * psi.adjoint() })
}

/// Schmidt binary ranks for every cut and the smallest block with a kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct RankProfile {
    /// `ranks[M - 1] = rank rho^(M)` for `M = 1..=N`.
    pub ranks: Vec<usize>,
    /// Smallest `M` with `rank rho^(M) < M + 1`; `None` if no block has a
    /// symmetric-space kernel.
    pub n_star: Option<usize>,
}

pub fn rank_profile(state: &SymmetricState, tol: &ToleranceConfig) -> SymResult<RankProfile> {
    let n = state.n_parties();
    let ranks = (1..=n)
        .map(|m| bipartition_map(state, m).map(|p| numerical_rank(&p.matrix, tol.tol_rank)))
        .collect::<SymResult<Vec<_>>>()?;
    let n_star = (1..=n).find(|&m| ranks[m - 1] < m + 1);
    Ok(RankProfile { ranks, n_star })
}

/// Orthogonal projector on the symmetric subspace of `n_sites` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalProjector {
    pub n_sites: usize,
    /// `(n+1) x (n+1)` in the Dicke basis.
    pub symmetric_block: DMatrix<C64>,
}

impl LocalProjector {
    pub fn rank(&self) -> usize {
        self.symmetric_block.trace().re.round() as usize
    }

    /// `S P S^dagger` on the full `2^n` space, `S` the Dicke isometry.
    pub fn full_space(&self) -> DMatrix<C64> {
        let s = dicke_isometry(self.n_sites);
        &s * &self.symmetric_block * s.adjoint()
    }

    pub fn to_pauli(&self) -> PauliSum {
        let mut p = PauliSum::from_dense(&self.full_space());
        // Projectors are Hermitian; drop rounding noise in the imaginary parts.
        let cleaned: Vec<_> = p.terms().map(|(s, c)| (s.clone(), C64::new(c.re, 0.0))).collect();
        p = PauliSum::zero(self.n_sites);
        for (s, c) in cleaned {
            p.add_term(s, c);
        }
        p.pruned()
    }
}

/// Projector onto `ker rho^(n)` within the symmetric subspace.
pub fn kernel_projector(state: &SymmetricState, n: usize, tol: &ToleranceConfig) -> SymResult<LocalProjector> {
    let big_n = state.n_parties();
    if n == 0 || n >= big_n {
        return Err(SymError::InvalidParameter(format!(
            "interaction length must lie in 1..={}, got {n}",
            big_n.saturating_sub(1)
        )));
    }
    // rho^(n) = A A^dagger with A = Psi_{N-n}; ker rho = ker A^dagger.
    let a = bipartition_map(&state.normalized(), big_n - n)?.matrix;
    let kernel = null_space(&a.adjoint(), tol.tol_rank);
    if kernel.is_empty() {
        let n_star = rank_profile(state, tol)?.n_star;
        return Err(SymError::NoKernel { n, n_star });
    }
    let mut p = DMatrix::<C64>::zeros(n + 1, n + 1);
    for v in &kernel {
        p += v * v.adjoint();
    }
    Ok(LocalProjector { n_sites: n, symmetric_block: p })
}

/// `2^n x (n+1)` isometry whose columns are the normalized Dicke states.
pub fn dicke_isometry(n: usize) -> DMatrix<C64> {
    let dim = 1usize << n;
    let mut s = DMatrix::<C64>::zeros(dim, n + 1);
    for i in 0..dim {
        let k = i.count_ones() as usize;
        s[(i, k)] = C64::new(1.0 / sqrt_binomial(n, k), 0.0);
    }
    s
}

/// Projector onto the `k`-excitation subspace of `n` qubits as a polynomial in
/// the `Z_i`, `prod_(l != k) (sum_i Z_i - n + 2l) / (2(l - k))`. On the
/// symmetric subspace it acts as `|D_k^(n)><D_k^(n)|`.
pub fn dicke_projector(n: usize, k: usize) -> SymResult<PauliSum> {
    if n == 0 || k > n {
        return Err(SymError::InvalidParameter(format!("need 0 <= k <= n, n >= 1; got n = {n}, k = {k}")));
    }
    let mut total_z = PauliSum::zero(n);
    for i in 0..n {
        total_z.add_real(&[(i, super::pauli::Pauli::Z)], 1.0);
    }
    let mut out = PauliSum::identity(n, C64::new(1.0, 0.0));
    for l in (0..=n).filter(|&l| l != k) {
        // Z_tot counts (n - 2 * excitations); the factor vanishes at l
        // excitations.
        let mut factor = total_z.clone();
        factor.add_term(Default::default(), C64::new(-(n as f64) + 2.0 * l as f64, 0.0));
        let denom = 2.0 * (k as f64 - l as f64);
        out = out.mul(&factor.scaled(C64::new(-1.0 / denom, 0.0)));
    }
    Ok(out.pruned())
}
