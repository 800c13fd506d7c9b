//! Minimal diagonal decompositions `|psi> = sum_k c_k |x_k>^N` of symmetric
//! states.
//!
//! The number of terms `D` in a minimal decomposition is the bond dimension of
//! the optimal diagonal MPS and labels the entanglement family of the state.
//! Besides the solver this module derives the Kraus pair of a decomposition,
//! Majorana roots, Schmidt binary ranks and nesting extensions.

mod majorana;
mod solver;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::binom::sqrt_binomial;
use crate::error::{SymError, SymResult};
use crate::hamiltonian::bipartition_map;
use crate::linalg::numerical_rank;
use crate::symstate::{from_decomposition, moments_of_points, ProductPoint, SymmetricState};
use crate::tolerance::ToleranceConfig;

pub use majorana::{majorana_roots, MajoranaRoots};
pub use solver::{decompose, hankel_matrix, optimal_bond_dimension};

/// `m_a = d_a / sqrt(C(N, a))`: the right-hand side of the tensor-power
/// equations `sum_k c_k x_k^(N-a) y_k^a = m_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentVector {
    pub n_parties: usize,
    pub moments: Vec<C64>,
}

pub fn moments(state: &SymmetricState) -> MomentVector {
    let n = state.n_parties();
    MomentVector {
        n_parties: n,
        moments: state.dicke().iter().enumerate().map(|(a, d)| d / sqrt_binomial(n, a)).collect(),
    }
}

/// `D` pairwise projectively distinct points with complex weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagonalDecomposition {
    pub n_parties: usize,
    pub points: Vec<ProductPoint>,
    pub weights: Vec<C64>,
    /// Relative resynthesis error in the Dicke basis.
    pub residual: f64,
}

impl DiagonalDecomposition {
    /// Wraps a user-supplied decomposition; the residual is zero by definition.
    pub fn new(n_parties: usize, points: Vec<ProductPoint>, weights: Vec<C64>) -> SymResult<Self> {
        if points.is_empty() {
            return Err(SymError::InvalidParameter("decomposition needs at least one point".into()));
        }
        if points.len() != weights.len() {
            return Err(SymError::LengthMismatch { expected: points.len(), got: weights.len() });
        }
        if n_parties == 0 {
            return Err(SymError::InvalidParameter("N must be at least 1".into()));
        }
        Ok(Self { n_parties, points, weights, residual: 0.0 })
    }

    pub fn bond_dim(&self) -> usize {
        self.points.len()
    }

    /// Index of the point `|1>` (x = 0), if present.
    pub fn infinity_point(&self) -> Option<usize> {
        self.points.iter().position(|p| p.x == C64::new(0.0, 0.0))
    }

    pub fn resynthesize(&self) -> SymResult<SymmetricState> {
        from_decomposition(&self.points, &self.weights, self.n_parties)
    }
}

/// Site-independent diagonal Kraus matrices, stored as their diagonals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KrausPair {
    pub bond_dim: usize,
    pub a0: Vec<C64>,
    pub a1: Vec<C64>,
}

/// `A_mu[k,k] = c_k^(1/N) <mu|x_k>` with the principal branch of the root.
pub fn kraus_pair(dec: &DiagonalDecomposition) -> KrausPair {
    let inv_n = 1.0 / dec.n_parties as f64;
    let roots: Vec<C64> = dec.weights.iter().map(|c| c.powf(inv_n)).collect();
    KrausPair {
        bond_dim: dec.bond_dim(),
        a0: dec.points.iter().zip(&roots).map(|(p, r)| r * p.x).collect(),
        a1: dec.points.iter().zip(&roots).map(|(p, r)| r * p.y).collect(),
    }
}

impl KrausPair {
    /// `Tr(A_{mu_1} ... A_{mu_N})` for the bitstring `bits` (site 0 is the
    /// most significant bit).
    pub fn amplitude(&self, bits: usize, n: usize) -> C64 {
        let ones = (bits & ((1usize << n) - 1)).count_ones();
        self.trace_of_counts(n as u32 - ones, ones)
    }

    fn trace_of_counts(&self, zeros: u32, ones: u32) -> C64 {
        self.a0.iter().zip(&self.a1).map(|(a, b)| a.powu(zeros) * b.powu(ones)).sum()
    }

    /// The state generated on `n` sites, in the Dicke basis.
    pub fn to_symmetric_state(&self, n: usize) -> SymResult<SymmetricState> {
        let d = (0..=n)
            .map(|a| self.trace_of_counts((n - a) as u32, a as u32) * sqrt_binomial(n, a))
            .collect();
        SymmetricState::new(d)
    }

    pub fn dense(&self, mu: usize) -> nalgebra::DMatrix<C64> {
        let diag = if mu == 0 { &self.a0 } else { &self.a1 };
        nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag.clone()))
    }
}

/// True iff every pair satisfies `|x_j y_k - x_k y_j| > tol * |p_j| |p_k|`.
pub fn pairwise_independent(points: &[ProductPoint], tol: f64) -> bool {
    points.iter().enumerate().all(|(j, p)| {
        points[j + 1..].iter().all(|q| p.chordal_distance(q) > tol)
    })
}

/// Numerical rank of the bipartition map across the `M | N-M` cut.
pub fn schmidt_binary_rank(state: &SymmetricState, m: usize, tol: &ToleranceConfig) -> SymResult<usize> {
    let psi = bipartition_map(state, m)?;
    Ok(numerical_rank(&psi.matrix, tol.tol_rank))
}

/// `sum_k c_k |x_k>^(N+extra)`: the same points and weights on more sites.
pub fn extend_nesting(dec: &DiagonalDecomposition, extra: usize) -> SymResult<SymmetricState> {
    if extra == 0 {
        return Err(SymError::InvalidParameter("extra must be at least 1".into()));
    }
    let n = dec.n_parties + extra;
    let d = moments_of_points(&dec.points, &dec.weights, n)
        .into_iter()
        .enumerate()
        .map(|(a, m)| m * sqrt_binomial(n, a))
        .collect();
    SymmetricState::new(d)
}
