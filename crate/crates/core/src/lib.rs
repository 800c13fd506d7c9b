//! Entanglement families of permutation-symmetric qubit states through
//! optimal diagonal matrix product states, and their parent Hamiltonians.
//!
//! * [`symstate`]: states in the Dicke basis and named families.
//! * [`decomposer`]: minimal decompositions `sum_k c_k |x_k>^N`, Kraus pairs,
//!   Majorana roots and Schmidt binary ranks.
//! * [`slocc`]: local invertible operations on the symmetric subspace.
//! * [`hamiltonian`]: reduced states, kernel projectors and parent
//!   Hamiltonians as Pauli sums.
//! * [`oracle`]: exact bond dimensions over the Gaussian rationals.
//! * [`suites`]: randomized checks shared by the CLI and the tests.
//! * [`report`]: the JSON documents printed by the `symclass` binary.

pub mod binom;
pub mod decomposer;
pub mod error;
pub mod hamiltonian;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod slocc;
pub mod suites;
pub mod symstate;
pub mod tolerance;

pub use decomposer::{decompose, optimal_bond_dimension, DiagonalDecomposition};
pub use error::{SymError, SymResult};
pub use symstate::{NamedState, ProductPoint, SymmetricState};
pub use tolerance::ToleranceConfig;
