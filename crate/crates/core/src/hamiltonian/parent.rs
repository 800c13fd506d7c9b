//! Translation-invariant parent Hamiltonians on a periodic ring.

use std::collections::BTreeMap;

use nalgebra::DVector;
use num_complex::Complex64 as C64;
use serde::Serialize;

use super::pauli::{heisenberg, Pauli, PauliSum};
use super::rdm::kernel_projector;
use crate::error::{SymError, SymResult};
use crate::linalg::{hermitian_eigen, vector_norm};
use crate::symstate::{NamedState, SymmetricState};
use crate::tolerance::ToleranceConfig;

/// Default largest N for which the dense Hamiltonian is diagonalized.
pub const DENSE_SPECTRAL_CAP: usize = 10;

/// An operator on the first `n_sites` sites, repeated on every window of the
/// ring.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalTerm {
    pub label: String,
    pub n_sites: usize,
    pub operator: PauliSum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParentHamiltonian {
    pub n_parties: usize,
    /// Largest support of a local term.
    pub interaction_length: usize,
    pub local_terms: Vec<LocalTerm>,
    pub couplings: BTreeMap<String, f64>,
    /// Built from kernel projectors: positive semidefinite with the target at
    /// energy zero.
    pub constructive: bool,
}

impl ParentHamiltonian {
    /// Sum over all translations, in canonical order.
    pub fn expanded(&self) -> PauliSum {
        let n = self.n_parties;
        let mut h = PauliSum::zero(n);
        for term in &self.local_terms {
            for offset in 0..n {
                h.add_sum(&term.operator.translated(offset, n));
            }
        }
        h.pruned()
    }
}

/// `sum_i h^(n)_i + lambda sum_i P0_(i,i+1)` where `h^(n)` projects onto the
/// kernel of the `n`-body reduced state and `P0 = (1 - sigma.sigma) / 4` is
/// the two-site singlet projector.
pub fn assemble_parent(
    state: &SymmetricState,
    n_local: usize,
    lambda_sym: f64,
    tol: &ToleranceConfig,
) -> SymResult<ParentHamiltonian> {
    let n = state.n_parties();
    if n < 3 {
        return Err(SymError::InvalidParameter(format!("parent Hamiltonians need N >= 3, got {n}")));
    }
    if !(lambda_sym > 0.0 && lambda_sym.is_finite()) {
        return Err(SymError::InvalidParameter(format!("lambda_sym must be positive, got {lambda_sym}")));
    }
    if n_local == 0 || n_local >= n {
        return Err(SymError::InvalidParameter(format!(
            "interaction length must lie in 1..={}, got {n_local}",
            n - 1
        )));
    }
    let projector = kernel_projector(state, n_local, tol)?;
    let mut singlet = heisenberg(2, 0, 1, -0.25);
    singlet.add_real(&[], 0.25);
    let mut couplings = BTreeMap::new();
    couplings.insert("lambda_sym".to_string(), lambda_sym);
    Ok(ParentHamiltonian {
        n_parties: n,
        interaction_length: n_local,
        local_terms: vec![
            LocalTerm { label: "kernel_projector".into(), n_sites: n_local, operator: projector.to_pauli() },
            LocalTerm {
                label: "singlet".into(),
                n_sites: 2,
                operator: singlet.scaled(C64::new(lambda_sym, 0.0)),
            },
        ],
        couplings,
        constructive: true,
    })
}

/// Couplings of the closed-form Hamiltonians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Couplings {
    pub j: f64,
    pub jz: f64,
    pub gamma: f64,
}

impl Default for Couplings {
    fn default() -> Self {
        Self { j: 1.0, jz: 3.0, gamma: 1.0 }
    }
}

/// Two- and three-body Hamiltonians for the GHZ, W and X families.
///
/// * GHZ: `sum_i J sigma_i.sigma_(i+1) - Jz Z_i Z_(i+1)`, needs `Jz > 0`, `Jz > 2J`.
/// * W: `J sum_i (-2 Z_i + Z_i Z_(i+1) - gamma sigma_i.sigma_(i+1))`, needs `J, gamma > 0`.
/// * X: `Jz/3 sum_i (3 + 3 ZZZ - sum ZZ - sum Z)_(i,i+1,i+2) + J/4 sum_i (1 - sigma_i.sigma_(i+1))`,
///   needs `J, Jz > 0`; the ground space contains `|X_N(z)>` for every `z`.
pub fn paper_hamiltonian(family: &NamedState, n: usize, c: Couplings) -> SymResult<ParentHamiltonian> {
    if n < 3 {
        return Err(SymError::InvalidParameter(format!("closed-form Hamiltonians need N >= 3, got {n}")));
    }
    let mut couplings = BTreeMap::new();
    let (label, length, op) = match family {
        NamedState::Ghz => {
            if !(c.jz > 0.0 && c.jz > 2.0 * c.j) {
                return Err(SymError::CouplingViolation(format!(
                    "GHZ needs Jz > 0 and Jz > 2J, got J = {}, Jz = {}",
                    c.j, c.jz
                )));
            }
            couplings.insert("J".into(), c.j);
            couplings.insert("Jz".into(), c.jz);
            let mut op = heisenberg(2, 0, 1, c.j);
            op.add_real(&[(0, Pauli::Z), (1, Pauli::Z)], -c.jz);
            ("ghz", 2, op)
        }
        NamedState::W => {
            if !(c.j > 0.0 && c.gamma > 0.0) {
                return Err(SymError::CouplingViolation(format!(
                    "W needs J > 0 and gamma > 0, got J = {}, gamma = {}",
                    c.j, c.gamma
                )));
            }
            couplings.insert("J".into(), c.j);
            couplings.insert("gamma".into(), c.gamma);
            let mut op = heisenberg(2, 0, 1, -c.j * c.gamma);
            op.add_real(&[(0, Pauli::Z)], -2.0 * c.j);
            op.add_real(&[(0, Pauli::Z), (1, Pauli::Z)], c.j);
            ("w", 2, op)
        }
        NamedState::X(_) => {
            if !(c.j > 0.0 && c.jz > 0.0) {
                return Err(SymError::CouplingViolation(format!(
                    "X needs J > 0 and Jz > 0, got J = {}, Jz = {}",
                    c.j, c.jz
                )));
            }
            if n < 4 {
                return Err(SymError::InvalidParameter(format!("the X family needs N >= 4, got {n}")));
            }
            couplings.insert("J".into(), c.j);
            couplings.insert("Jz".into(), c.jz);
            let a = c.jz / 3.0;
            let mut op = PauliSum::identity(3, C64::new(3.0 * a + c.j / 4.0, 0.0));
            op.add_real(&[(0, Pauli::Z), (1, Pauli::Z), (2, Pauli::Z)], 3.0 * a);
            for (p, q) in [(0, 1), (0, 2), (1, 2)] {
                op.add_real(&[(p, Pauli::Z), (q, Pauli::Z)], -a);
            }
            for s in 0..3 {
                op.add_real(&[(s, Pauli::Z)], -a);
            }
            op.add_sum(&heisenberg(3, 0, 1, -c.j / 4.0));
            ("x", 3, op)
        }
        other => {
            return Err(SymError::InvalidParameter(format!(
                "no closed-form Hamiltonian for the {} family",
                other.label()
            )))
        }
    };
    Ok(ParentHamiltonian {
        n_parties: n,
        interaction_length: length,
        local_terms: vec![LocalTerm { label: label.into(), n_sites: length, operator: op.pruned() }],
        couplings,
        constructive: false,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroundReport {
    /// `|| H psi - E psi || / || psi ||`.
    pub residual: f64,
    /// `E` above: 0 for constructive Hamiltonians, the lowest eigenvalue
    /// (or the Rayleigh quotient beyond the spectral cap) otherwise.
    pub reference_energy: f64,
    pub rayleigh_quotient: f64,
    pub ground_energy: Option<f64>,
    pub ground_degeneracy: Option<usize>,
    /// Weight of the state inside the lowest eigenspace.
    pub ground_overlap: Option<f64>,
    pub terms_norm: f64,
}

/// Checks that `state` is a ground state of `h` on the dense `2^N` space.
/// Dense vectors are refused beyond `cap` parties; the spectrum is computed
/// only up to `spectral_cap`.
pub fn verify_ground(
    h: &ParentHamiltonian,
    state: &SymmetricState,
    cap: usize,
    spectral_cap: usize,
) -> SymResult<GroundReport> {
    let n = state.n_parties();
    if n != h.n_parties {
        return Err(SymError::PartyMismatch { left: h.n_parties, right: n });
    }
    let psi = state.normalized().to_full_vector(cap)?.amplitudes;
    let ops = h.expanded();
    let terms_norm = ops.terms_norm();
    let h_psi = ops.apply(&psi);
    let rayleigh: f64 = psi.iter().zip(&h_psi).map(|(a, b)| (a.conj() * b).re).sum();

    let (mut ground_energy, mut ground_degeneracy, mut ground_overlap) = (None, None, None);
    if n <= spectral_cap.min(cap) {
        let (vals, vecs) = hermitian_eigen(&ops.to_dense());
        let e0 = vals[0];
        let window = 1e-8 * terms_norm.max(1.0);
        let ground: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] - e0 <= window).collect();
        let v = DVector::from_vec(psi.clone());
        let weight: f64 = ground.iter().map(|&i| vecs.column(i).dotc(&v).norm_sqr()).sum();
        ground_energy = Some(e0);
        ground_degeneracy = Some(ground.len());
        ground_overlap = Some(weight);
    }
    let reference_energy = if h.constructive { 0.0 } else { ground_energy.unwrap_or(rayleigh) };
    let diff: Vec<C64> = h_psi.iter().zip(&psi).map(|(a, b)| a - b * reference_energy).collect();
    Ok(GroundReport {
        residual: vector_norm(&diff),
        reference_energy,
        rayleigh_quotient: rayleigh,
        ground_energy,
        ground_degeneracy,
        ground_overlap,
        terms_norm,
    })
}
