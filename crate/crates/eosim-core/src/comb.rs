//! The 2N-optical-mode frequency-comb system.
//!
//! `N` pump tones drive `N` Stokes/anti-Stokes pairs that share one
//! microwave mode with a common cooperativity `C`. The symmetric coupling
//! keeps the system unconditionally stable, and at the main-text sign
//! convention the microwave back-action of the two sidebands cancels
//! exactly, so the closed-form spectra hold at every detuning; the full
//! numeric solve below is kept as the independent check of that statement.
//!
//! Covariance mode order: `(1+, 1-, 2+, 2-, ..., N+, N-, Ω)`, so the
//! `N = 1` comb maps directly onto the three-mode system.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::gaussian::CovarianceMatrix;
use crate::inout::{covariance_from_rows, ModeRows};
use crate::scalar::{im, re, Scalar, C};
use crate::threemode::{fwhm_bisect, MicrowaveNoise, ModeLoss};

/// Parameters of the symmetric 2N-mode comb.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombParams<T: Scalar> {
    pub n_pumps: usize,
    /// Loss budget shared by every optical line.
    pub loss_opt: ModeLoss<T>,
    pub loss_mw: ModeLoss<T>,
    /// Symmetric multiphoton cooperativity.
    pub c: T,
    pub noise: MicrowaveNoise<T>,
}

/// Registry of the independent covariance entries of the comb state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombElements<T: Scalar> {
    pub v_plus: T,
    pub v_minus: T,
    pub v_mw: T,
    pub v_plus_minus: T,
    pub v_plus_mw: T,
    pub v_minus_mw: T,
    pub v_plus_plus: T,
    pub v_minus_minus: T,
}

/// Comb covariance matrix together with its element registry.
#[derive(Debug, Clone, PartialEq)]
pub struct CombCovariance<T: Scalar> {
    pub cm: CovarianceMatrix<T>,
    pub elements: CombElements<T>,
}

/// Squeezed/anti-squeezed standard deviations of the two entangled pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombSqueezing<T: Scalar> {
    /// `{j-, j+}` optical pair.
    pub opt_dq_minus: T,
    pub opt_dq_plus: T,
    /// `{j-, Ω}` Stokes-microwave pair.
    pub mw_dq_minus: T,
    pub mw_dq_plus: T,
}

impl<T: Scalar> CombParams<T> {
    pub fn new(
        n_pumps: usize,
        loss_opt: ModeLoss<T>,
        loss_mw: ModeLoss<T>,
        c: T,
        noise: MicrowaveNoise<T>,
    ) -> Result<Self> {
        if n_pumps == 0 {
            return Err(Error::InvalidParameter {
                name: "n_pumps",
                reason: "at least one pump is required".into(),
            });
        }
        if c < T::zero() {
            return Err(Error::InvalidParameter {
                name: "c",
                reason: "cooperativity must be nonnegative".into(),
            });
        }
        Ok(Self {
            n_pumps,
            loss_opt,
            loss_mw,
            c,
            noise,
        })
    }

    pub fn n_as_scalar(&self) -> T {
        T::from_usize(self.n_pumps).expect("pump count fits the scalar")
    }

    /// Enhanced coupling `G = sqrt(C κ_o κ_Ω) / 2`.
    pub fn g(&self) -> T {
        (self.c * self.loss_opt.kappa() * self.loss_mw.kappa()).sqrt() / T::lit(2.0)
    }

    pub fn n_bar(&self) -> T {
        self.noise.n_bar(&self.loss_mw)
    }

    /// Mode count of the output state, `2N + 1`.
    pub fn mode_count(&self) -> usize {
        2 * self.n_pumps + 1
    }

    /// Covariance index of the anti-Stokes line `j` (0-based pump index).
    pub fn idx_plus(&self, j: usize) -> usize {
        2 * j
    }

    /// Covariance index of the Stokes line `j`.
    pub fn idx_minus(&self, j: usize) -> usize {
        2 * j + 1
    }

    /// Covariance index of the microwave mode.
    pub fn idx_mw(&self) -> usize {
        2 * self.n_pumps
    }
}

/// Per-line emission rates `(n_j+, n_j-, n_Ω)` at detuning `omega`.
pub fn comb_spectra<T: Scalar>(params: &CombParams<T>, omega: T) -> (T, T, T) {
    let four = T::lit(4.0);
    let n = params.n_as_scalar();
    let c = params.c;
    let eo = params.loss_opt.eta();
    let ew = params.loss_mw.eta();
    let ko = params.loss_opt.kappa();
    let kw = params.loss_mw.kappa();
    let x = four * omega * omega / (ko * ko);
    let y = four * omega * omega / (kw * kw);
    let d2 = T::one() / ((T::one() + x) * (T::one() + x) * (T::one() + y));
    let n_plus = four * eo * n * c * c * d2;
    let n_minus = four * eo * c * (T::one() + n * c + x) * d2;
    let n_mw = four * ew * n * c * (T::one() + x) * d2;
    (n_plus, n_minus, n_mw)
}

/// FWHM bandwidths `(B_+, B_-, B_Ω)` in MHz.
pub fn comb_bandwidths<T: Scalar>(params: &CombParams<T>) -> Result<(T, T, T)> {
    let scale = params.loss_opt.kappa().max(params.loss_mw.kappa());
    let tol = T::lit(1e-6);
    let bp = fwhm_bisect(&|w| Ok(comb_spectra(params, w).0), scale, tol)?;
    let bm = fwhm_bisect(&|w| Ok(comb_spectra(params, w).1), scale, tol)?;
    let bw = fwhm_bisect(&|w| Ok(comb_spectra(params, w).2), scale, tol)?;
    Ok((bp, bm, bw))
}

/// Closed-form covariance entries.
pub fn comb_elements<T: Scalar>(params: &CombParams<T>) -> CombElements<T> {
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let n = params.n_as_scalar();
    let c = params.c;
    let eo = params.loss_opt.eta();
    let ew = params.loss_mw.eta();
    let nb = params.n_bar();
    let ne = params.noise.n_ext;
    let nc = n * c;

    let cross = (four * eo * ew * c).sqrt();
    CombElements {
        v_plus: half + four * eo * c * (nb + nc),
        v_minus: half + four * eo * c * (nb + T::one() + nc),
        v_mw: half + four * ew * (nb + nc) + ne * (T::one() - four * ew),
        v_plus_minus: two * eo * c * (two * nb + T::one() + two * nc),
        v_plus_mw: cross * (two * nb - ne + two * nc),
        v_minus_mw: cross * (two * nb - ne + T::one() + two * nc),
        v_plus_plus: four * eo * c * (nb + nc),
        v_minus_minus: four * eo * c * (nb + T::one() + nc),
    }
}

/// Closed-form `(2N+1)`-mode covariance matrix.
pub fn comb_covariance<T: Scalar>(params: &CombParams<T>) -> Result<CombCovariance<T>> {
    let e = comb_elements(params);
    let n = params.n_pumps;
    let modes = params.mode_count();
    let dim = 2 * modes;
    let mw = params.idx_mw();
    let mut m = DMatrix::zeros(dim, dim);

    // species of each mode index: anti-Stokes (even), Stokes (odd), microwave
    let put_block = |m: &mut DMatrix<T>, a: usize, b: usize, value: T, z_block: bool| {
        m[(2 * a, 2 * b)] = value;
        m[(2 * a + 1, 2 * b + 1)] = if z_block { -value } else { value };
        m[(2 * b, 2 * a)] = value;
        m[(2 * b + 1, 2 * a + 1)] = if z_block { -value } else { value };
    };

    for j in 0..n {
        let (pj, mj) = (params.idx_plus(j), params.idx_minus(j));
        put_block(&mut m, pj, pj, e.v_plus, false);
        put_block(&mut m, mj, mj, e.v_minus, false);
        put_block(&mut m, pj, mw, e.v_plus_mw, false);
        put_block(&mut m, mj, mw, e.v_minus_mw, true);
        for k in 0..n {
            let (pk, mk) = (params.idx_plus(k), params.idx_minus(k));
            put_block(&mut m, pj, mk, e.v_plus_minus, true);
            if k != j {
                put_block(&mut m, pj, pk, e.v_plus_plus, false);
                put_block(&mut m, mj, mk, e.v_minus_minus, false);
            }
        }
    }
    put_block(&mut m, mw, mw, e.v_mw, false);

    // put_block writes each diagonal twice, which is idempotent; halve is
    // not needed. Validate symmetry through the standard constructor.
    let cm = CovarianceMatrix::new(modes, m)?;
    Ok(CombCovariance { cm, elements: e })
}

/// Closed-form squeezing of the `{j-, j+}` and `{j-, Ω}` pairs.
pub fn comb_squeezing<T: Scalar>(params: &CombParams<T>) -> CombSqueezing<T> {
    let half = T::lit(0.5);
    let one = T::one();
    let four = T::lit(4.0);
    let eight = T::lit(8.0);
    let sixteen = T::lit(16.0);
    let n = params.n_as_scalar();
    let c = params.c;
    let eo = params.loss_opt.eta();
    let ew = params.loss_mw.eta();
    let two_nc = T::lit(2.0) * n * c;

    let num_opt = half + four * eo * c + eight * eo * c * c * (n - eo);
    let s = (one + (one + two_nc) * (one + two_nc)).sqrt();
    let opt_minus_sq = num_opt / (one + four * eo * c * (one + two_nc + s));
    let opt_plus_sq = num_opt / (one + four * eo * c * (one + two_nc - s));

    let psi = four * c * (eo * (n * c + one) + n * ew);
    let num_mw = half + psi - eight * c * ew * eo;
    let sw = (psi * psi + sixteen * eo * ew * c).sqrt();
    let mw_minus_sq = num_mw / (one + psi + sw);
    let mw_plus_sq = num_mw / (one + psi - sw);

    CombSqueezing {
        opt_dq_minus: opt_minus_sq.sqrt(),
        opt_dq_plus: opt_plus_sq.sqrt(),
        mw_dq_minus: mw_minus_sq.sqrt(),
        mw_dq_plus: mw_plus_sq.sqrt(),
    }
}

/// On-resonance input-output coefficients of one optical line.
///
/// The species channels are labeled from the line's own point of view:
/// `same_*` couples other lines of the same species, `conj_*` couples the
/// opposite species through its creation operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceRow<T: Scalar> {
    pub self_e: C<T>,
    pub self_i: C<T>,
    pub same_e: C<T>,
    pub same_i: C<T>,
    pub conj_e: C<T>,
    pub conj_i: C<T>,
    pub mw_e: C<T>,
    pub mw_i: C<T>,
}

/// On-resonance input-output coefficients of the microwave mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicrowaveResonanceRow<T: Scalar> {
    pub self_e: C<T>,
    pub self_i: C<T>,
    pub plus_e: C<T>,
    pub plus_i: C<T>,
    pub minus_conj_e: C<T>,
    pub minus_conj_i: C<T>,
}

/// Full on-resonance coefficient table, the comb oracle's raw material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceCoefficients<T: Scalar> {
    pub anti_stokes: ResonanceRow<T>,
    pub stokes: ResonanceRow<T>,
    pub microwave: MicrowaveResonanceRow<T>,
}

/// On-resonance scattering coefficients of the symmetric comb.
pub fn comb_scattering_resonance<T: Scalar>(
    params: &CombParams<T>,
) -> ResonanceCoefficients<T> {
    let one = T::one();
    let two = T::lit(2.0);
    let c = params.c;
    let eo = params.loss_opt.eta();
    let ew = params.loss_mw.eta();
    let r = |x: T| re::<T>(x);
    let i = im::<T>();

    let opt_ei = two * (eo * (one - eo)).sqrt();
    let mw_e_coupling = two * (c * eo * ew).sqrt();
    let mw_i_coupling = two * (c * eo * (one - ew)).sqrt();
    let opt_cross_e = two * c * eo;
    let opt_cross_i = two * c * (eo * (one - eo)).sqrt();

    let anti_stokes = ResonanceRow {
        self_e: r(two * eo - one - two * eo * c),
        self_i: r(opt_ei * (one - c)),
        same_e: r(-opt_cross_e),
        same_i: r(-opt_cross_i),
        conj_e: r(-opt_cross_e),
        conj_i: r(-opt_cross_i),
        mw_e: -i * r(mw_e_coupling),
        mw_i: -i * r(mw_i_coupling),
    };
    let stokes = ResonanceRow {
        self_e: r(two * eo - one + two * eo * c),
        self_i: r(opt_ei * (one + c)),
        same_e: r(opt_cross_e),
        same_i: r(opt_cross_i),
        conj_e: r(opt_cross_e),
        conj_i: r(opt_cross_i),
        mw_e: -i * r(mw_e_coupling),
        mw_i: -i * r(mw_i_coupling),
    };
    let opt_from_mw_e = two * (c * eo * ew).sqrt();
    let opt_from_mw_i = two * (c * (one - eo) * ew).sqrt();
    let microwave = MicrowaveResonanceRow {
        self_e: r(two * ew - one),
        self_i: r(two * (ew * (one - ew)).sqrt()),
        plus_e: -i * r(opt_from_mw_e),
        plus_i: -i * r(opt_from_mw_i),
        minus_conj_e: -i * r(opt_from_mw_e),
        minus_conj_i: -i * r(opt_from_mw_i),
    };
    ResonanceCoefficients {
        anti_stokes,
        stokes,
        microwave,
    }
}

/// Channel index helpers for the comb: two channels per mode, external first.
fn ch_e(mode: usize) -> usize {
    2 * mode
}
fn ch_i(mode: usize) -> usize {
    2 * mode + 1
}

/// Expand the on-resonance coefficient table into full Bogoliubov rows for
/// all `2N+1` output modes, in the fixed phase convention
/// (`a_j+ -> -a_j+`, `a_Ω -> i a_Ω`).
pub fn resonance_mode_rows<T: Scalar>(params: &CombParams<T>) -> Vec<ModeRows<T>> {
    let n = params.n_pumps;
    let channels = 2 * params.mode_count();
    let coeff = comb_scattering_resonance(params);
    let minus_one = re(-T::one());
    let i = im::<T>();
    let mut rows = Vec::with_capacity(params.mode_count());

    for j in 0..n {
        // anti-Stokes line j
        let mut plus = ModeRows::zero(channels);
        for k in 0..n {
            let (pe, pi) = (ch_e(params.idx_plus(k)), ch_i(params.idx_plus(k)));
            let (me, mi) = (ch_e(params.idx_minus(k)), ch_i(params.idx_minus(k)));
            if k == j {
                plus.alpha[pe] = coeff.anti_stokes.self_e;
                plus.alpha[pi] = coeff.anti_stokes.self_i;
            } else {
                plus.alpha[pe] = coeff.anti_stokes.same_e;
                plus.alpha[pi] = coeff.anti_stokes.same_i;
            }
            plus.beta[me] = coeff.anti_stokes.conj_e;
            plus.beta[mi] = coeff.anti_stokes.conj_i;
        }
        plus.alpha[ch_e(params.idx_mw())] = coeff.anti_stokes.mw_e;
        plus.alpha[ch_i(params.idx_mw())] = coeff.anti_stokes.mw_i;
        rows.push(plus.scaled(minus_one));

        // Stokes line j
        let mut minus = ModeRows::zero(channels);
        for k in 0..n {
            let (pe, pi) = (ch_e(params.idx_plus(k)), ch_i(params.idx_plus(k)));
            let (me, mi) = (ch_e(params.idx_minus(k)), ch_i(params.idx_minus(k)));
            if k == j {
                minus.alpha[me] = coeff.stokes.self_e;
                minus.alpha[mi] = coeff.stokes.self_i;
            } else {
                minus.alpha[me] = coeff.stokes.same_e;
                minus.alpha[mi] = coeff.stokes.same_i;
            }
            minus.beta[pe] = coeff.stokes.conj_e;
            minus.beta[pi] = coeff.stokes.conj_i;
        }
        minus.beta[ch_e(params.idx_mw())] = coeff.stokes.mw_e;
        minus.beta[ch_i(params.idx_mw())] = coeff.stokes.mw_i;
        // rows for a_j- are stored in the j-interleaved order below
        rows.push(minus);
    }

    // microwave mode
    let mut mw = ModeRows::zero(channels);
    for k in 0..n {
        mw.alpha[ch_e(params.idx_plus(k))] = coeff.microwave.plus_e;
        mw.alpha[ch_i(params.idx_plus(k))] = coeff.microwave.plus_i;
        mw.beta[ch_e(params.idx_minus(k))] = coeff.microwave.minus_conj_e;
        mw.beta[ch_i(params.idx_minus(k))] = coeff.microwave.minus_conj_i;
    }
    mw.alpha[ch_e(params.idx_mw())] = coeff.microwave.self_e;
    mw.alpha[ch_i(params.idx_mw())] = coeff.microwave.self_i;
    rows.push(mw.scaled(i));

    rows
}

/// Channel occupations matching [`resonance_mode_rows`].
pub fn comb_channel_occupations<T: Scalar>(params: &CombParams<T>) -> Vec<T> {
    let mut occ = vec![T::zero(); 2 * params.mode_count()];
    occ[ch_e(params.idx_mw())] = params.noise.n_ext;
    occ[ch_i(params.idx_mw())] = params.noise.n_int;
    occ
}

/// Comb oracle: covariance matrix assembled from the on-resonance
/// coefficient table.
pub fn comb_covariance_from_resonance<T: Scalar>(
    params: &CombParams<T>,
) -> Result<CovarianceMatrix<T>> {
    covariance_from_rows(&resonance_mode_rows(params), &comb_channel_occupations(params))
}

/// Full numeric solve of the `2N+1` coupled modes at detuning `omega`.
///
/// Returns the Bogoliubov rows of every output mode (same phase convention
/// as [`resonance_mode_rows`]); the independent counterpart of both the
/// closed-form spectra and the on-resonance coefficient table.
pub fn comb_solve_numeric<T: Scalar>(
    params: &CombParams<T>,
    omega: T,
) -> Result<Vec<ModeRows<T>>> {
    let n = params.n_pumps;
    let modes = params.mode_count();
    let channels = 2 * modes;
    let half = T::lit(0.5);
    let zero = C::new(T::zero(), T::zero());
    let i = im::<T>();
    let g = re(params.g());
    let go = C::new(params.loss_opt.kappa() * half, -omega);
    let gw = C::new(params.loss_mw.kappa() * half, -omega);

    let mut a = DMatrix::from_element(modes, modes, zero);
    for j in 0..n {
        let (pj, mj) = (params.idx_plus(j), params.idx_minus(j));
        a[(pj, pj)] = go;
        a[(pj, params.idx_mw())] = i * g;
        a[(mj, mj)] = go;
        a[(mj, params.idx_mw())] = -i * g;
        a[(params.idx_mw(), pj)] = i * g;
        a[(params.idx_mw(), mj)] = i * g;
    }
    a[(params.idx_mw(), params.idx_mw())] = gw;
    let lu = a.lu();

    let rate = |mode: usize, port: usize| -> T {
        let loss = if mode == params.idx_mw() {
            &params.loss_mw
        } else {
            &params.loss_opt
        };
        if port == 0 {
            loss.kappa_e()
        } else {
            loss.kappa_i()
        }
    };

    // raw per-channel solutions: raw[mode][channel]
    let mut raw = vec![vec![zero; channels]; modes];
    for ch in 0..channels {
        let (mode, port) = (ch / 2, ch % 2);
        let mut rhs = DVector::from_element(modes, zero);
        rhs[mode] = re(rate(mode, port).sqrt());
        let x = lu.solve(&rhs).ok_or(Error::SingularSystem {
            magnitude: f64::NAN,
        })?;
        for out in 0..modes {
            let mut t = x[out] * re(rate(out, 0).sqrt());
            if ch == ch_e(out) {
                t -= re(T::one());
            }
            raw[out][ch] = t;
        }
    }

    let minus_one = re(-T::one());
    let mut rows = Vec::with_capacity(modes);
    for j in 0..n {
        let (pj, mj) = (params.idx_plus(j), params.idx_minus(j));
        // a_j+ output: annihilation on optical + / microwave, creation on -
        let mut plus = ModeRows::zero(channels);
        for k in 0..n {
            for port in 0..2 {
                plus.alpha[2 * params.idx_plus(k) + port] =
                    raw[pj][2 * params.idx_plus(k) + port];
                plus.beta[2 * params.idx_minus(k) + port] =
                    raw[pj][2 * params.idx_minus(k) + port];
            }
        }
        for port in 0..2 {
            plus.alpha[2 * params.idx_mw() + port] = raw[pj][2 * params.idx_mw() + port];
        }
        rows.push(plus.scaled(minus_one));

        // the mj variable is a_j-†; conjugate to express a_j-
        let mut minus = ModeRows::zero(channels);
        for k in 0..n {
            for port in 0..2 {
                minus.alpha[2 * params.idx_minus(k) + port] =
                    raw[mj][2 * params.idx_minus(k) + port].conj();
                minus.beta[2 * params.idx_plus(k) + port] =
                    raw[mj][2 * params.idx_plus(k) + port].conj();
            }
        }
        for port in 0..2 {
            minus.beta[2 * params.idx_mw() + port] = raw[mj][2 * params.idx_mw() + port].conj();
        }
        rows.push(minus);
    }

    let mw_idx = params.idx_mw();
    let mut mw = ModeRows::zero(channels);
    for k in 0..n {
        for port in 0..2 {
            mw.alpha[2 * params.idx_plus(k) + port] = raw[mw_idx][2 * params.idx_plus(k) + port];
            mw.beta[2 * params.idx_minus(k) + port] =
                raw[mw_idx][2 * params.idx_minus(k) + port];
        }
    }
    for port in 0..2 {
        mw.alpha[2 * mw_idx + port] = raw[mw_idx][2 * mw_idx + port];
    }
    rows.push(mw.scaled(i));

    Ok(rows)
}

/// Per-line emission rates from the numeric solve at zero noise.
pub fn comb_spectra_numeric<T: Scalar>(params: &CombParams<T>, omega: T) -> Result<(T, T, T)> {
    let rows = comb_solve_numeric(params, omega)?;
    let occ = vec![T::zero(); 2 * params.mode_count()];
    Ok((
        rows[params.idx_plus(0)].photon_number(&occ),
        rows[params.idx_minus(0)].photon_number(&occ),
        rows[params.idx_mw()].photon_number(&occ),
    ))
}

/// Comb covariance assembled from the full numeric solve at resonance.
pub fn comb_covariance_from_numeric<T: Scalar>(
    params: &CombParams<T>,
) -> Result<CovarianceMatrix<T>> {
    let rows = comb_solve_numeric(params, T::zero())?;
    covariance_from_rows(&rows, &comb_channel_occupations(params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::squeezing_ellipse;
    use crate::threemode::{covariance as threemode_covariance, ThreeModeParams};
    use approx::assert_relative_eq;

    fn params(n: usize, c: f64, eta_o: f64, eta_w: f64) -> CombParams<f64> {
        CombParams::new(
            n,
            ModeLoss::from_total(1.0, eta_o).unwrap(),
            ModeLoss::from_total(1.0, eta_w).unwrap(),
            c,
            MicrowaveNoise::vacuum(),
        )
        .unwrap()
    }

    #[test]
    fn spectra_fig5_point() {
        let p = CombParams::new(
            4,
            ModeLoss::from_total(1.75, 0.8).unwrap(),
            ModeLoss::from_total(12.40, 0.5).unwrap(),
            1.0,
            MicrowaveNoise::vacuum(),
        )
        .unwrap();
        let (np, nm, nw) = comb_spectra(&p, 0.0);
        assert_relative_eq!(np, 12.8, epsilon = 1e-12);
        assert_relative_eq!(nm, 16.0, epsilon = 1e-12);
        assert_relative_eq!(nw, 8.0, epsilon = 1e-12);
    }

    #[test]
    fn photon_balance_at_unit_eta() {
        let p = params(3, 0.9, 1.0, 1.0);
        let n = p.n_as_scalar();
        for omega in [0.0, 0.4, 2.0] {
            let (np, nm, nw) = comb_spectra(&p, omega);
            assert_relative_eq!(n * nm, n * np + nw, epsilon = 1e-12);
        }
    }

    #[test]
    fn spectra_match_numeric_solve() {
        for (n, c) in [(1usize, 0.5), (2, 1.0), (4, 3.0)] {
            let p = CombParams::new(
                n,
                ModeLoss::from_total(1.75, 0.8).unwrap(),
                ModeLoss::from_total(12.4, 0.5).unwrap(),
                c,
                MicrowaveNoise::vacuum(),
            )
            .unwrap();
            for omega in [0.0, 0.3, 1.1, 5.0] {
                let (ap, am, aw) = comb_spectra(&p, omega);
                let (bp, bm, bw) = comb_spectra_numeric(&p, omega).unwrap();
                assert_relative_eq!(ap, bp, epsilon = 1e-11);
                assert_relative_eq!(am, bm, epsilon = 1e-11);
                assert_relative_eq!(aw, bw, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn bandwidths_match_reference_point() {
        let p = CombParams::new(
            4,
            ModeLoss::from_total(1.75f64, 0.8).unwrap(),
            ModeLoss::from_total(12.40, 0.5).unwrap(),
            1.0,
            MicrowaveNoise::vacuum(),
        )
        .unwrap();
        let (bp, bm, bw) = comb_bandwidths(&p).unwrap();
        assert!((bp - 1.11).abs() < 0.02, "B+ = {bp}");
        assert!((bm - 1.20).abs() < 0.02, "B- = {bm}");
        assert!((bw - 1.72).abs() < 0.02, "BΩ = {bw}");
    }

    #[test]
    fn anti_stokes_bandwidth_independent_of_c() {
        let b1 = comb_bandwidths(&params(2, 0.3, 1.0, 1.0)).unwrap().0;
        let b2 = comb_bandwidths(&params(2, 7.0, 1.0, 1.0)).unwrap().0;
        assert_relative_eq!(b1, b2, epsilon = 1e-5);
    }

    #[test]
    fn anti_stokes_bandwidth_wide_microwave_limit() {
        let p = CombParams::new(
            1,
            ModeLoss::from_total(2.0, 1.0).unwrap(),
            ModeLoss::from_total(1.0e6, 1.0).unwrap(),
            1.0,
            MicrowaveNoise::vacuum(),
        )
        .unwrap();
        let (bp, _, _) = comb_bandwidths(&p).unwrap();
        assert_relative_eq!(bp, 2.0 * (2.0f64.sqrt() - 1.0).sqrt(), epsilon = 1e-4);
    }

    #[test]
    fn covariance_values_n1_and_cross_pairs() {
        let cc = comb_covariance(&params(1, 1.0, 1.0, 1.0)).unwrap();
        assert_relative_eq!(cc.elements.v_plus, 4.5, epsilon = 1e-12);
        assert_relative_eq!(cc.elements.v_minus, 8.5, epsilon = 1e-12);
        assert_relative_eq!(cc.elements.v_mw, 4.5, epsilon = 1e-12);
        assert_relative_eq!(cc.elements.v_plus_minus, 6.0, epsilon = 1e-12);
        assert_relative_eq!(cc.elements.v_plus_mw, 4.0, epsilon = 1e-12);
        assert_relative_eq!(cc.elements.v_minus_mw, 6.0, epsilon = 1e-12);

        let cc = comb_covariance(&params(2, 1.0, 1.0, 1.0)).unwrap();
        assert_relative_eq!(cc.elements.v_plus_plus, 8.0, epsilon = 1e-12);
        assert_relative_eq!(cc.elements.v_minus_minus, 12.0, epsilon = 1e-12);
        // cross-pair blocks are identical for every pair combination
        let cm = &cc.cm;
        assert_relative_eq!(cm.get(0, 4), cc.elements.v_plus_plus, epsilon = 1e-12);
        assert_relative_eq!(cm.get(1, 5), cc.elements.v_plus_plus, epsilon = 1e-12);
        assert_relative_eq!(cm.get(2, 6), cc.elements.v_minus_minus, epsilon = 1e-12);
        assert_relative_eq!(cm.get(0, 6), cc.elements.v_plus_minus, epsilon = 1e-12);
        assert_relative_eq!(cm.get(1, 7), -cc.elements.v_plus_minus, epsilon = 1e-12);
    }

    #[test]
    fn covariance_c0_is_vacuum() {
        let cc = comb_covariance(&params(3, 0.0, 0.8, 0.6)).unwrap();
        let vac = CovarianceMatrix::<f64>::vacuum(7);
        for i in 0..14 {
            for j in 0..14 {
                assert!((cc.cm.get(i, j) - vac.get(i, j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn covariance_matches_both_oracles() {
        let p = CombParams::new(
            3,
            ModeLoss::from_total(1.3f64, 0.75).unwrap(),
            ModeLoss::from_total(9.0, 0.45).unwrap(),
            0.8,
            MicrowaveNoise::new(0.6, 1.2).unwrap(),
        )
        .unwrap();
        let closed = comb_covariance(&p).unwrap().cm;
        let oracle_a = comb_covariance_from_resonance(&p).unwrap();
        let oracle_b = comb_covariance_from_numeric(&p).unwrap();
        let dim = 2 * p.mode_count();
        for i in 0..dim {
            for j in 0..dim {
                assert!(
                    (closed.get(i, j) - oracle_a.get(i, j)).abs() < 1e-10,
                    "table oracle ({i},{j})"
                );
                assert!(
                    (closed.get(i, j) - oracle_b.get(i, j)).abs() < 1e-10,
                    "numeric oracle ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn n1_comb_equals_symmetric_three_mode() {
        let lo = ModeLoss::from_total(1.4f64, 0.8).unwrap();
        let lw = ModeLoss::from_total(6.5, 0.55).unwrap();
        let noise = MicrowaveNoise::new(0.4, 0.9).unwrap();
        let comb = CombParams::new(1, lo, lw, 0.7, noise).unwrap();
        let three = ThreeModeParams::new(lo, lo, lw, 0.7, 0.7, noise).unwrap();
        let a = comb_covariance(&comb).unwrap().cm;
        let b = threemode_covariance(&three).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                assert!((a.get(i, j) - b.get(i, j)).abs() < 1e-10, "({i},{j})");
            }
        }
    }

    #[test]
    fn resonance_rows_satisfy_bogoliubov() {
        let p = CombParams::new(
            2,
            ModeLoss::from_total(1.0, 0.7).unwrap(),
            ModeLoss::from_total(3.0, 0.5).unwrap(),
            1.3,
            MicrowaveNoise::vacuum(),
        )
        .unwrap();
        for row in resonance_mode_rows(&p) {
            assert!(row.bogoliubov_defect() < 1e-12);
        }
    }

    #[test]
    fn resonance_example_n1_unit() {
        // N=1, C=1, eta=1: anti-Stokes self coefficient -1, Stokes-conjugate
        // amplitude -2, |.|^2 = 4 = n_+(0).
        let coeff = comb_scattering_resonance(&params(1, 1.0, 1.0, 1.0));
        assert_relative_eq!(coeff.anti_stokes.self_e.re, -1.0, epsilon = 1e-12);
        assert_relative_eq!(coeff.anti_stokes.conj_e.re, -2.0, epsilon = 1e-12);
        let (np, _, _) = comb_spectra(&params(1, 1.0, 1.0, 1.0), 0.0);
        assert_relative_eq!(coeff.anti_stokes.conj_e.norm_sqr(), np, epsilon = 1e-12);
    }

    #[test]
    fn squeezing_closed_forms_match_eigen_route() {
        for n in [1usize, 2, 4] {
            for c in [0.1, 1.0, 10.0] {
                for (eo, ew) in [(1.0, 1.0), (0.8, 0.5)] {
                    let p = params(n, c, eo, ew);
                    let sq = comb_squeezing(&p);
                    let cm = comb_covariance(&p).unwrap().cm;
                    let opt = squeezing_ellipse(&cm, p.idx_minus(0), p.idx_plus(0)).unwrap();
                    let mw = squeezing_ellipse(&cm, p.idx_minus(0), p.idx_mw()).unwrap();
                    assert_relative_eq!(
                        sq.opt_dq_minus * sq.opt_dq_minus,
                        opt.dq_minus * opt.dq_minus,
                        epsilon = 1e-10
                    );
                    assert_relative_eq!(
                        sq.opt_dq_plus * sq.opt_dq_plus,
                        opt.dq_plus * opt.dq_plus,
                        epsilon = 1e-9
                    );
                    assert_relative_eq!(
                        sq.mw_dq_minus * sq.mw_dq_minus,
                        mw.dq_minus * mw.dq_minus,
                        epsilon = 1e-10
                    );
                    assert_relative_eq!(
                        sq.mw_dq_plus * sq.mw_dq_plus,
                        mw.dq_plus * mw.dq_plus,
                        epsilon = 1e-9
                    );
                }
            }
        }
    }

    #[test]
    fn squeezing_reference_values() {
        let sq = comb_squeezing(&params(1, 1.0, 1.0, 1.0));
        assert_relative_eq!(sq.opt_dq_minus * sq.opt_dq_minus, 0.17544, epsilon = 1e-5);
        let sq = comb_squeezing(&params(1, 0.0, 1.0, 1.0));
        assert_relative_eq!(sq.opt_dq_minus, 0.5f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(sq.mw_dq_plus, 0.5f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn squeezing_asymptotics() {
        // variance squeezing distributed over the N lines
        for (n, eo) in [(1usize, 1.0), (4, 1.0), (4, 0.8)] {
            let p = params(n, 1.0e4, eo, 1.0);
            let sq = comb_squeezing(&p);
            let expect = 0.5 * (1.0 - eo / n as f64);
            assert!(
                (sq.opt_dq_minus * sq.opt_dq_minus - expect).abs() < 1e-3,
                "N={n}, eta={eo}"
            );
            // Stokes-microwave squeezing returns to the vacuum limit
            assert!((sq.mw_dq_minus * sq.mw_dq_minus - 0.5).abs() < 1e-3);
        }
        // and is non-monotonic on the way: dips below vacuum first
        let dip = comb_squeezing(&params(1, 0.5, 1.0, 1.0));
        assert!(dip.mw_dq_minus * dip.mw_dq_minus < 0.45);
    }

    #[test]
    fn permutation_symmetry_of_pump_indices() {
        let p = params(3, 1.1, 0.9, 0.7);
        let cm = comb_covariance(&p).unwrap().cm;
        for j in 0..3 {
            for k in 0..3 {
                if j == k {
                    continue;
                }
                assert_relative_eq!(
                    cm.qq(p.idx_plus(j), p.idx_minus(k)),
                    cm.qq(p.idx_plus(0), p.idx_minus(0)),
                    epsilon = 1e-13
                );
                assert_relative_eq!(
                    cm.qq(p.idx_plus(j), p.idx_plus(k)),
                    cm.qq(p.idx_plus(0), p.idx_plus(1)),
                    epsilon = 1e-13
                );
            }
        }
    }
}
