//! Error type shared by the simulation and bound-checking modules.
//!
//! Diagnostic payloads are carried as `f64` regardless of the scalar the
//! computation ran in, so the error type stays non-generic.

use thiserror::Error;

/// Everything that can go wrong while building states, operators, scenarios,
/// or evaluating bounds.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("amplitude vector has length {len}, expected {expected}")]
    BadAmplitudeCount { len: usize, expected: usize },

    #[error("qubit count {n} outside the supported range 1..=3")]
    BadQubitCount { n: usize },

    #[error("non-finite component encountered")]
    NonFinite,

    #[error("state vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("vector has (near-)zero norm")]
    ZeroNorm,

    #[error("axis is not a unit vector (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("operator is not hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("expectation value has imaginary residue {residue:e}")]
    ImaginaryResidue { residue: f64 },

    #[error("site index {site} out of range for {n_qubits} qubits")]
    SiteOutOfRange { site: usize, n_qubits: usize },

    #[error("duplicate site index {site}")]
    DuplicateSite { site: usize },

    #[error("correlation requested between identical sites ({site})")]
    SameSite { site: usize },

    #[error("branch parity must be 0 or 1, got {m}")]
    BadParity { m: u8 },

    #[error("observable axes are (near-)parallel: |a x b| = {magnitude:e}")]
    DegenerateAxes { magnitude: f64 },

    #[error("projection branch occurs with (near-)zero probability")]
    ZeroProbabilityBranch,

    #[error("variance {variance:e} is negative beyond the rounding floor")]
    NegativeVariance { variance: f64 },

    #[error("direction is not in the observable plane (|v . c| = {overlap:e})")]
    NotInPlane { overlap: f64 },

    #[error("axes must be orthonormal (|a| = {a_norm}, |b| = {b_norm}, a . b = {dot:e})")]
    NotOrthonormal { a_norm: f64, b_norm: f64, dot: f64 },

    #[error("negative input {value} where a non-negative quantity is required")]
    NegativeInput { value: f64 },

    #[error(
        "sample does not match the scenario it is checked against (identity residual {residual:e})"
    )]
    SampleMismatch { residual: f64 },

    #[error(
        "boundary search did not converge (bracket width {width:e} after {iterations} iterations)"
    )]
    NoConvergence { width: f64, iterations: usize },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
