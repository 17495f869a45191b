//! Simulator for cavity electro-optic entangled sources.
//!
//! Models the steady-state quantum optics of a pumped `χ(2)` resonator in
//! which Stokes/anti-Stokes optical sidebands couple to a microwave mode:
//! emission spectra, scattering matrices, Gaussian covariance matrices,
//! two-mode squeezing, entanglement metrics, and the teleportation /
//! dense-coding figures of merit of the resulting quantum channels. The
//! comb generalization drives `N` sideband pairs through one shared
//! microwave mode.
//!
//! All math is generic over the real scalar (`f32` or `f64`) through
//! [`scalar::Scalar`]; the `*64` aliases below are the types most users
//! want. Every closed form is backed by an independent first-principles
//! route (numeric linear solves, moment assemblies, brute-force overlap
//! integrals) surfaced in [`validate`].

pub mod comb;
pub mod error;
pub mod gaussian;
pub mod inout;
pub mod metrics;
pub mod protocols;
pub mod scalar;
pub mod threemode;
pub mod validate;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// `f64` covariance matrix.
pub type CovarianceMatrix64 = gaussian::CovarianceMatrix<f64>;
/// `f32` covariance matrix.
pub type CovarianceMatrix32 = gaussian::CovarianceMatrix<f32>;
/// `f64` three-mode parameter set.
pub type ThreeModeParams64 = threemode::ThreeModeParams<f64>;
/// `f64` comb parameter set.
pub type CombParams64 = comb::CombParams<f64>;
/// `f64` scattering matrix.
pub type ScatteringMatrix64 = threemode::ScatteringMatrix<f64>;

#[cfg(test)]
pub(crate) mod testutil {
    use crate::gaussian::CovarianceMatrix;
    use nalgebra::DMatrix;

    /// Two-mode X-shaped CM `[[a I, c Z], [c Z, b I]]`.
    pub fn x_shaped(a: f64, b: f64, c: f64) -> CovarianceMatrix<f64> {
        let m = DMatrix::from_row_slice(
            4,
            4,
            &[
                a, 0.0, c, 0.0, //
                0.0, a, 0.0, -c, //
                c, 0.0, b, 0.0, //
                0.0, -c, 0.0, b,
            ],
        );
        CovarianceMatrix::new(2, m).unwrap()
    }

    /// Two-mode squeezed vacuum with parameter `r`.
    pub fn tmsv(r: f64) -> CovarianceMatrix<f64> {
        x_shaped(
            (2.0 * r).cosh() / 2.0,
            (2.0 * r).cosh() / 2.0,
            (2.0 * r).sinh() / 2.0,
        )
    }
}
