//! Entanglement and correlation metrics on mode pairs.

use crate::error::{Error, Result};
use crate::gaussian::{entropy_h, symplectic_pair, CovarianceMatrix};
use crate::inout::{moment_aa, moment_adag_a};
use crate::scalar::{cabs, Scalar};
use crate::threemode::{
    channel_occupations, covariance, output_mode_rows, output_spectra, ThreeModeParams,
};

/// Mode pair of the three-mode system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModePair {
    PlusMinus,
    MinusMicrowave,
    PlusMicrowave,
}

impl ModePair {
    /// Covariance indices in the order `(sender, receiver)` used by the
    /// directed metrics: the Stokes mode leads where it participates.
    pub fn ordered_indices(self) -> (usize, usize) {
        match self {
            // I(-〉+), D(-|+)
            ModePair::PlusMinus => (1, 0),
            ModePair::MinusMicrowave => (1, 2),
            ModePair::PlusMicrowave => (0, 2),
        }
    }
}

/// Metric bundle for one mode pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsResult<T: Scalar> {
    /// Schwarz-inequality log ratio (natural log; > 0 certifies
    /// nonclassical cross-correlations).
    pub epsilon: T,
    /// Coherent information in bits; may be negative.
    pub coh_info: T,
    /// Logarithmic negativity in ebits.
    pub log_neg: T,
    /// Gaussian quantum discord in bits.
    pub discord: T,
    /// The same quantities normalized by the resonant anti-Stokes rate.
    pub coh_info_per_photon: T,
    pub log_neg_per_photon: T,
    pub discord_per_photon: T,
}

/// Logarithmic negativity `max(0, -log2(2 d̃_-))` of a two-mode state.
pub fn log_negativity<T: Scalar>(cm: &CovarianceMatrix<T>) -> Result<T> {
    let pair = symplectic_pair(cm)?;
    let val = -(T::lit(2.0) * pair.d_tilde_minus).log2_();
    Ok(val.max(T::zero()))
}

/// Coherent information `I(j〉k) = h(ν_j) - h(d_+) - h(d_-)` of a two-mode
/// state whose first mode is the sender `j`.
///
/// The sender-variance form reproduces the reference per-photon values of
/// this system; see VALIDATION.md for the receiver-variance alternative.
pub fn coherent_information<T: Scalar>(cm: &CovarianceMatrix<T>, sender: usize) -> Result<T> {
    if sender > 1 {
        return Err(Error::IndexOutOfRange {
            index: sender,
            mode_count: 2,
        });
    }
    let pair = symplectic_pair(cm)?;
    let nu = single_mode_eigenvalue(cm, sender);
    Ok(entropy_h(nu)? - entropy_h(pair.d_plus)? - entropy_h(pair.d_minus)?)
}

/// Symplectic eigenvalue of one reduced mode, `sqrt(det block)`.
fn single_mode_eigenvalue<T: Scalar>(cm: &CovarianceMatrix<T>, mode: usize) -> T {
    let q = 2 * mode;
    let det = cm.get(q, q) * cm.get(q + 1, q + 1) - cm.get(q, q + 1) * cm.get(q + 1, q);
    det.max(T::zero()).sqrt()
}

/// Gaussian quantum discord `D(j|k)` with the measurement on mode `measured`
/// (the `k` of the formula); mode indices are 0 or 1 within the pair.
pub fn discord<T: Scalar>(cm: &CovarianceMatrix<T>, measured: usize) -> Result<T> {
    if measured > 1 {
        return Err(Error::IndexOutOfRange {
            index: measured,
            mode_count: 2,
        });
    }
    let unmeasured = 1 - measured;
    let v33 = cm.qq(measured, measured);
    let v11 = cm.qq(unmeasured, unmeasured);
    let v13 = cm.qq(unmeasured, measured);
    if (v33 - T::one()).abs() < T::lit(1e-9) {
        return Err(Error::SingularConditioning {
            v33: v33.to_subset().unwrap_or(f64::NAN),
        });
    }
    if v13 == T::zero() {
        // product state: the conditional term cancels h(V11) exactly
        return Ok(T::zero());
    }
    let pair = symplectic_pair(cm)?;
    // algebraically identical to V11 + V13^2 (1 - V33) / (V33^2 - 1)
    let conditioned = v11 - v13 * v13 / (v33 + T::one());
    let d = entropy_h(v33)? - entropy_h(pair.d_minus)? - entropy_h(pair.d_plus)?
        + entropy_h(conditioned)?;
    if d >= T::zero() {
        Ok(d)
    } else if d > -T::lit(1e-9) {
        Ok(T::zero())
    } else {
        Err(Error::Unphysical {
            value: d.to_subset().unwrap_or(f64::NAN),
        })
    }
}

/// Closed-form Schwarz log ratio `ε_jk = ln(|<a_j a_k>| / sqrt(n_j n_k))`
/// for a pair of the three-mode system (natural log; the `{+,Ω}` pair uses
/// its beam-splitter moment `<a_+ a_Ω†>`).
pub fn schwarz_epsilon<T: Scalar>(pair: ModePair, params: &ThreeModeParams<T>) -> Result<T> {
    let (n_plus, n_minus, n_mw_spdc) = output_spectra(params, T::zero())?;
    let one = T::one();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let (c1, c2) = (params.c1, params.c2);
    let nb = params.n_bar();
    let ne = params.noise.n_ext;
    let ew = params.loss_mw.eta();
    let t = one + c1 - c2;
    let t2 = t * t;

    // occupied rates including thermal pass-through (the CM diagonals)
    let n_p = n_plus + four * c1 * nb * params.loss_plus.eta() / t2;
    let n_m = n_minus + four * c2 * nb * params.loss_minus.eta() / t2;
    let mut n_w = n_mw_spdc + four * nb * ew / t2;
    if ne > T::zero() {
        n_w += ne * (one - four * ew / t);
    }

    let check_rate = |rate: T, mode: &'static str| -> Result<()> {
        if rate <= T::zero() {
            Err(Error::ZeroPhotonRate { mode })
        } else {
            Ok(())
        }
    };

    let ratio = match pair {
        ModePair::PlusMinus => {
            check_rate(n_p, "plus")?;
            check_rate(n_m, "minus")?;
            let num = one + c1 + c2 + two * nb;
            num / (four * (c2 + nb) * (c1 + one + nb)).sqrt()
        }
        ModePair::MinusMicrowave => {
            check_rate(n_m, "minus")?;
            check_rate(n_w, "microwave")?;
            let num = (one + c1 + c2 + two * nb - t * ne).abs();
            let mut denom = four * (c2 + nb);
            if ne > T::zero() {
                denom += ne * (t2 / ew - four * t);
            }
            num / ((c1 + one + nb) * denom).sqrt()
        }
        ModePair::PlusMicrowave => {
            check_rate(n_p, "plus")?;
            check_rate(n_w, "microwave")?;
            let num = (two * c2 + two * nb - t * ne).abs();
            let mut denom = four * (c2 + nb);
            if ne > T::zero() {
                denom += ne * (t2 / ew - four * t);
            }
            num / ((c2 + nb) * denom).sqrt()
        }
    };
    Ok(ratio.ln())
}

/// Generic cross-check of [`schwarz_epsilon`]: the cross moments and rates
/// are rebuilt from the resonance scattering coefficients instead of the
/// pair-specific closed forms.
pub fn schwarz_epsilon_from_moments<T: Scalar>(
    pair: ModePair,
    params: &ThreeModeParams<T>,
) -> Result<T> {
    let rows = output_mode_rows(params, true)?;
    let occ = channel_occupations(params);
    let (j, k) = match pair {
        ModePair::PlusMinus => (0usize, 1usize),
        ModePair::MinusMicrowave => (1, 2),
        ModePair::PlusMicrowave => (0, 2),
    };
    let n_j = rows[j].photon_number(&occ);
    let n_k = rows[k].photon_number(&occ);
    let names = ["plus", "minus", "microwave"];
    if n_j <= T::zero() {
        return Err(Error::ZeroPhotonRate { mode: names[j] });
    }
    if n_k <= T::zero() {
        return Err(Error::ZeroPhotonRate { mode: names[k] });
    }
    let squeezer = cabs(moment_aa(&rows[j], &rows[k], &occ));
    let beamsplitter = cabs(moment_adag_a(&rows[j], &rows[k], &occ));
    let moment = squeezer.max(beamsplitter);
    Ok((moment / (n_j * n_k).sqrt()).ln())
}

/// Full metric bundle of one pair of the three-mode state.
pub fn evaluate_pair<T: Scalar>(
    params: &ThreeModeParams<T>,
    pair: ModePair,
) -> Result<MetricsResult<T>> {
    let cm = covariance(params)?;
    let (sender, receiver) = pair.ordered_indices();
    let reduced = cm.reduce(&[sender, receiver])?;
    let epsilon = schwarz_epsilon(pair, params)?;
    let coh_info = coherent_information(&reduced, 0)?;
    let log_neg = log_negativity(&reduced)?;
    let discord_v = discord(&reduced, 1)?;
    let (n_plus, _, _) = output_spectra(params, T::zero())?;
    if n_plus <= T::zero() {
        return Err(Error::ZeroPhotonRate { mode: "plus" });
    }
    Ok(MetricsResult {
        epsilon,
        coh_info,
        log_neg,
        discord: discord_v,
        coh_info_per_photon: coh_info / n_plus,
        log_neg_per_photon: log_neg / n_plus,
        discord_per_photon: discord_v / n_plus,
    })
}
