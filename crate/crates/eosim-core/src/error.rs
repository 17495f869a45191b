//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by the simulator.
///
/// Every variant corresponds to a violated precondition or a numerical
/// failure; none of them are used for control flow on valid inputs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode index {index} out of range for {mode_count} modes")]
    IndexOutOfRange { index: usize, mode_count: usize },

    #[error("duplicate mode index {index} in selection")]
    DuplicateIndex { index: usize },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("covariance matrix is unphysical (symplectic eigenvalue {value} < 0.5)")]
    Unphysical { value: f64 },

    #[error("negative discriminant {value:e} beyond tolerance; input covariance is unphysical")]
    NegativeDiscriminant { value: f64 },

    #[error("system is not stable: c2 = {c2} >= 1 + c1 = {threshold}")]
    Unstable { c2: f64, threshold: f64 },

    #[error("scattering system is singular at this detuning (|M| = {magnitude:e})")]
    SingularSystem { magnitude: f64 },

    #[error("covariance matrix is singular or ill-conditioned (condition number {cond:e})")]
    SingularMatrix { cond: f64 },

    #[error("entropy argument {x} below the physical floor 0.5")]
    EntropyDomain { x: f64 },

    #[error("photon rate of mode {mode} is zero; the Schwarz ratio is undefined")]
    ZeroPhotonRate { mode: &'static str },

    #[error("conditioning variance V33 = {v33} is within 1e-9 of 1; perturb the state")]
    SingularConditioning { v33: f64 },

    #[error("spectrum is not unimodal with its maximum on resonance")]
    NonUnimodalSpectrum,

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
