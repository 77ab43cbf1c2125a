//! Dense complex matrix algebra and spectral decompositions.
//!
//! All functions here are pure: they allocate fresh outputs and never touch
//! shared state, so callers may fan sweeps out across threads freely.

mod eig;
mod matrix;

pub use eig::{
    hermitian_eig, kron, unitary_eigenphases, EigenDecomposition, HERMITICITY_TOL,
    PHASE_CLUSTER_TOL, UNITARITY_TOL,
};
pub use matrix::{ComplexMatrix, C64};
