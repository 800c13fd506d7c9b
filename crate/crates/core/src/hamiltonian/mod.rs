//! Reduced density matrices, local kernel projectors and translation-invariant
//! parent Hamiltonians written as sums of Pauli strings.

mod parent;
pub mod pauli;
mod rdm;

pub use parent::{
    assemble_parent, paper_hamiltonian, verify_ground, Couplings, GroundReport, LocalTerm,
    ParentHamiltonian, DENSE_SPECTRAL_CAP,
};
pub use pauli::{Pauli, PauliString, PauliSum};
pub use rdm::{
    bipartition_map, dicke_isometry, dicke_projector, kernel_projector, rank_profile,
    reduced_density, BipartitionMap, LocalProjector, RankProfile, ReducedDensityMatrix,
};
