//! Error types shared across the crate.

use thiserror::Error;

/// Failures of the dense linear-algebra layer.
#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has zero dimension")]
    Empty,
    #[error("hermiticity violation: max|A - A^H| = {dev:.3e}")]
    NotHermitian { dev: f64 },
    #[error("unitarity violation: max|U^H U - I| = {dev:.3e}")]
    NotUnitary { dev: f64 },
    #[error("jacobi sweep limit reached, off-diagonal norm {off:.3e}")]
    NoConvergence { off: f64 },
}

/// Failures of the model builders and spectral pipelines.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("invalid drive step index {0}, expected 1..=4")]
    InvalidStep(usize),
    #[error("cos(eps T) = {0} lies outside [-1, 1]")]
    DispersionOutOfRange(f64),
    #[error("negative radicand {0:.3e} in the bulk dispersion")]
    NegativeRadicand(f64),
    #[error("mass parameter m = {0} outside [-1, 1]")]
    MassOutOfRange(f64),
    #[error("need at least 2 unit cells, got {0}")]
    TooFewCells(usize),
    #[error("|eps_s T| = {0} exceeds 1: energy outside the discrete-time band")]
    OutOfBand(f64),
    #[error("quasienergy {0} outside the principal window (-pi/T, pi/T]")]
    OutsideWindow(f64),
    #[error("spectrum tables have mismatched shape: {0}")]
    ShapeMismatch(String),
    #[error("degenerate pair split {split:.3e} exceeds pair tolerance {tol:.3e} at point {point}")]
    DegeneracyPairing { point: usize, split: f64, tol: f64 },
    #[error("eigenvectors required but not stored in the strip spectrum")]
    MissingStates,
    #[error("unknown model name {0:?}")]
    UnknownModel(String),
}
