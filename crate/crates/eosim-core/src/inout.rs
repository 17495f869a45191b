//! Assembly of output covariance matrices from input-output coefficients.
//!
//! Every output mode of a linear bosonic network is a Bogoliubov combination
//! `a_out = Σ_m α_m a_m + Σ_m β_m a_m†` of the independent input channels.
//! Given those rows and the thermal occupation of each channel, the
//! symmetrized quadrature covariance matrix follows from
//!
//! ```text
//! S_jk = <a_j a_k>_sym = Σ_m (α_jm β_km + β_jm α_km)(2 n_m + 1) / 2
//! H_jk = <a_j a_k†>_sym = Σ_m (α_jm α*_km + β_jm β*_km)(2 n_m + 1) / 2
//! ```
//!
//! with `V_qq = Re(S+H)`, `V_pp = Re(H-S)`, `V_qp = Im(S) - Im(H)` and
//! `V_pq = Im(S) + Im(H)`.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::gaussian::CovarianceMatrix;
use crate::scalar::{Scalar, C};

/// Bogoliubov expansion of one output mode over the input channels.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeRows<T: Scalar> {
    /// Coefficients on the channel annihilation operators.
    pub alpha: Vec<C<T>>,
    /// Coefficients on the channel creation operators.
    pub beta: Vec<C<T>>,
}

impl<T: Scalar> ModeRows<T> {
    pub fn zero(channels: usize) -> Self {
        Self {
            alpha: vec![C::new(T::zero(), T::zero()); channels],
            beta: vec![C::new(T::zero(), T::zero()); channels],
        }
    }

    /// Multiply the whole row by a phase (local redefinition of the mode).
    pub fn scaled(&self, phase: C<T>) -> Self {
        Self {
            alpha: self.alpha.iter().map(|a| a * phase).collect(),
            beta: self.beta.iter().map(|b| b * phase).collect(),
        }
    }

    /// Deviation from commutator preservation for this row:
    /// `| Σ|α|² − Σ|β|² − 1 |`.
    pub fn bogoliubov_defect(&self) -> T {
        let mut s = -T::one();
        for a in &self.alpha {
            s += a.norm_sqr();
        }
        for b in &self.beta {
            s -= b.norm_sqr();
        }
        s.abs()
    }

    /// Output photon number `<a† a>` for the given channel occupations.
    pub fn photon_number(&self, occupations: &[T]) -> T {
        let mut n = T::zero();
        for (m, &occ) in occupations.iter().enumerate() {
            n += self.alpha[m].norm_sqr() * occ + self.beta[m].norm_sqr() * (occ + T::one());
        }
        n
    }
}

/// Unsymmetrized squeezer moment `<a_j a_k>`.
pub fn moment_aa<T: Scalar>(j: &ModeRows<T>, k: &ModeRows<T>, occupations: &[T]) -> C<T> {
    let mut s = C::new(T::zero(), T::zero());
    for (m, &occ) in occupations.iter().enumerate() {
        s += j.alpha[m] * k.beta[m] * (occ + T::one()) + j.beta[m] * k.alpha[m] * occ;
    }
    s
}

/// Unsymmetrized beam-splitter moment `<a_j† a_k>`.
pub fn moment_adag_a<T: Scalar>(j: &ModeRows<T>, k: &ModeRows<T>, occupations: &[T]) -> C<T> {
    let mut s = C::new(T::zero(), T::zero());
    for (m, &occ) in occupations.iter().enumerate() {
        s += j.alpha[m].conj() * k.alpha[m] * occ + j.beta[m].conj() * k.beta[m] * (occ + T::one());
    }
    s
}

/// Assemble the full quadrature covariance matrix of the output modes.
pub fn covariance_from_rows<T: Scalar>(
    rows: &[ModeRows<T>],
    occupations: &[T],
) -> Result<CovarianceMatrix<T>> {
    let modes = rows.len();
    let dim = 2 * modes;
    let half = T::lit(0.5);
    let mut v = DMatrix::zeros(dim, dim);
    for j in 0..modes {
        for k in 0..modes {
            let mut s = C::new(T::zero(), T::zero());
            let mut h = C::new(T::zero(), T::zero());
            for (m, &occ) in occupations.iter().enumerate() {
                let w = occ + occ + T::one();
                s += (rows[j].alpha[m] * rows[k].beta[m] + rows[j].beta[m] * rows[k].alpha[m])
                    * w;
                h += (rows[j].alpha[m] * rows[k].alpha[m].conj()
                    + rows[j].beta[m] * rows[k].beta[m].conj())
                    * w;
            }
            s *= half;
            h *= half;
            v[(2 * j, 2 * k)] = s.re + h.re;
            v[(2 * j + 1, 2 * k + 1)] = h.re - s.re;
            v[(2 * j, 2 * k + 1)] = s.im - h.im;
            v[(2 * j + 1, 2 * k)] = s.im + h.im;
        }
    }
    CovarianceMatrix::new(modes, v)
}
