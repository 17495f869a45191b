//! The two-optical-modes-plus-microwave system.
//!
//! A pumped cavity couples an anti-Stokes mode (`+`, beam-splitter-like
//! exchange with the microwave), a Stokes mode (`-`, two-mode squeezing with
//! the microwave) and the microwave mode (`Ω`). Everything here is stated in
//! the frequency domain for the steady state; rates are in MHz but only
//! ratios enter the results.
//!
//! Two independent routes are provided for the scattering coefficients:
//! [`scattering_matrix`] evaluates hand-derived closed forms, while
//! [`solve_scattering_numeric`] assembles the 3x3 linear system straight
//! from the equations of motion and solves it per input channel. Tests and
//! the self-test battery hold them to 1e-10 of each other.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::gaussian::CovarianceMatrix;
use crate::inout::{covariance_from_rows, ModeRows};
use crate::scalar::{cabs, im, re, Scalar, C};

/// Loss budget of one resonator mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeLoss<T: Scalar> {
    kappa_e: T,
    kappa_i: T,
}

impl<T: Scalar> ModeLoss<T> {
    /// External (waveguide) and intrinsic loss rates in MHz.
    pub fn new(kappa_e: T, kappa_i: T) -> Result<Self> {
        if kappa_e < T::zero() || kappa_i < T::zero() || kappa_e + kappa_i <= T::zero() {
            return Err(Error::InvalidParameter {
                name: "kappa",
                reason: "rates must be nonnegative with kappa_e + kappa_i > 0".into(),
            });
        }
        Ok(Self { kappa_e, kappa_i })
    }

    /// Total rate and waveguide coupling ratio.
    pub fn from_total(kappa: T, eta: T) -> Result<Self> {
        if kappa <= T::zero() || eta < T::zero() || eta > T::one() {
            return Err(Error::InvalidParameter {
                name: "kappa/eta",
                reason: "kappa must be positive and eta in [0, 1]".into(),
            });
        }
        Ok(Self {
            kappa_e: kappa * eta,
            kappa_i: kappa * (T::one() - eta),
        })
    }

    pub fn kappa_e(&self) -> T {
        self.kappa_e
    }

    pub fn kappa_i(&self) -> T {
        self.kappa_i
    }

    pub fn kappa(&self) -> T {
        self.kappa_e + self.kappa_i
    }

    pub fn eta(&self) -> T {
        self.kappa_e / self.kappa()
    }
}

/// Thermal occupations of the microwave input channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicrowaveNoise<T: Scalar> {
    pub n_ext: T,
    pub n_int: T,
}

impl<T: Scalar> MicrowaveNoise<T> {
    pub fn new(n_ext: T, n_int: T) -> Result<Self> {
        if n_ext < T::zero() || n_int < T::zero() {
            return Err(Error::InvalidParameter {
                name: "noise",
                reason: "occupations must be nonnegative".into(),
            });
        }
        Ok(Self { n_ext, n_int })
    }

    pub fn vacuum() -> Self {
        Self {
            n_ext: T::zero(),
            n_int: T::zero(),
        }
    }

    /// Effective occupation `(κ_e n_ext + κ_i n_int) / κ`.
    pub fn n_bar(&self, loss: &ModeLoss<T>) -> T {
        (loss.kappa_e * self.n_ext + loss.kappa_i * self.n_int) / loss.kappa()
    }
}

/// Stability classification against the oscillation threshold `c2 = 1 + c1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    AtThreshold,
    Unstable,
}

/// Output mode selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Plus,
    Minus,
    Microwave,
}

/// Full parameter set of the three-mode system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeModeParams<T: Scalar> {
    pub loss_plus: ModeLoss<T>,
    pub loss_minus: ModeLoss<T>,
    pub loss_mw: ModeLoss<T>,
    /// Anti-Stokes (frequency-conversion) cooperativity.
    pub c1: T,
    /// Stokes (parametric-gain) cooperativity.
    pub c2: T,
    pub noise: MicrowaveNoise<T>,
}

impl<T: Scalar> ThreeModeParams<T> {
    pub fn new(
        loss_plus: ModeLoss<T>,
        loss_minus: ModeLoss<T>,
        loss_mw: ModeLoss<T>,
        c1: T,
        c2: T,
        noise: MicrowaveNoise<T>,
    ) -> Result<Self> {
        if c1 < T::zero() || c2 < T::zero() {
            return Err(Error::InvalidParameter {
                name: "c1/c2",
                reason: "cooperativities must be nonnegative".into(),
            });
        }
        Ok(Self {
            loss_plus,
            loss_minus,
            loss_mw,
            c1,
            c2,
            noise,
        })
    }

    /// Build from pump-enhanced couplings, `c_k = 4 |g_k|^2 / (κ_k κ_Ω)`.
    ///
    /// Only the magnitudes matter: every observable depends on `|g_k|`,
    /// so the coupling phases are dropped here.
    pub fn from_couplings(
        loss_plus: ModeLoss<T>,
        loss_minus: ModeLoss<T>,
        loss_mw: ModeLoss<T>,
        g1: C<T>,
        g2: C<T>,
        noise: MicrowaveNoise<T>,
    ) -> Result<Self> {
        let four = T::lit(4.0);
        let c1 = four * g1.norm_sqr() / (loss_plus.kappa() * loss_mw.kappa());
        let c2 = four * g2.norm_sqr() / (loss_minus.kappa() * loss_mw.kappa());
        Self::new(loss_plus, loss_minus, loss_mw, c1, c2, noise)
    }

    /// Enhanced coupling `G_1 = sqrt(c1 κ_+ κ_Ω) / 2` (real by convention).
    pub fn g1(&self) -> T {
        (self.c1 * self.loss_plus.kappa() * self.loss_mw.kappa()).sqrt() / T::lit(2.0)
    }

    /// Enhanced coupling `G_2 = sqrt(c2 κ_- κ_Ω) / 2` (real by convention).
    pub fn g2(&self) -> T {
        (self.c2 * self.loss_minus.kappa() * self.loss_mw.kappa()).sqrt() / T::lit(2.0)
    }

    pub fn n_bar(&self) -> T {
        self.noise.n_bar(&self.loss_mw)
    }
}

/// Classify stability: unstable once `c2 >= 1 + c1` (to 1e-12), at threshold
/// within 1e-9 of equality.
pub fn stability<T: Scalar>(params: &ThreeModeParams<T>) -> Stability {
    let margin = T::one() + params.c1 - params.c2;
    if margin.abs() <= T::lit(1e-9) {
        Stability::AtThreshold
    } else if margin < -T::lit(1e-12) || margin < T::zero() {
        Stability::Unstable
    } else {
        Stability::Stable
    }
}

fn require_stable<T: Scalar>(params: &ThreeModeParams<T>) -> Result<()> {
    match stability(params) {
        Stability::Stable => Ok(()),
        _ => Err(Error::Unstable {
            c2: params.c2.to_subset().unwrap_or(f64::NAN),
            threshold: (T::one() + params.c1).to_subset().unwrap_or(f64::NAN),
        }),
    }
}

/// Bose-Einstein occupation for ordinary frequency in GHz and temperature
/// in kelvin. Returns 0 at `T = 0`.
pub fn thermal_occupation<T: Scalar>(frequency_ghz: T, temperature_k: T) -> Result<T> {
    if frequency_ghz <= T::zero() {
        return Err(Error::InvalidParameter {
            name: "frequency_ghz",
            reason: "frequency must be positive".into(),
        });
    }
    if temperature_k < T::zero() {
        return Err(Error::InvalidParameter {
            name: "temperature_k",
            reason: "temperature must be nonnegative".into(),
        });
    }
    if temperature_k == T::zero() {
        return Ok(T::zero());
    }
    // h * 1 GHz / k_B in kelvin
    let h_over_kb_ghz = T::lit(0.047_992_430_733_662_31);
    let x = h_over_kb_ghz * frequency_ghz / temperature_k;
    Ok(T::one() / (x.exp() - T::one()))
}

/// Scattering coefficients at one detuning: outputs
/// `(a_+, a_-†, a_Ω)` from inputs `(e+, i+, e-†, i-†, eΩ, iΩ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringMatrix<T: Scalar> {
    pub omega: T,
    coefficients: [[C<T>; 6]; 3],
}

impl<T: Scalar> ScatteringMatrix<T> {
    #[cfg(test)]
    pub(crate) fn from_raw(omega: T, coefficients: [[C<T>; 6]; 3]) -> Self {
        Self {
            omega,
            coefficients,
        }
    }

    pub fn coefficient(&self, row: usize, col: usize) -> C<T> {
        self.coefficients[row][col]
    }

    pub fn row(&self, row: usize) -> &[C<T>; 6] {
        &self.coefficients[row]
    }

    /// Commutator-preservation defect of each output row:
    /// `|Σ_bs |T|² - Σ_sq |T|² - 1|` where the squeezer columns are the
    /// conjugated Stokes inputs for rows +/Ω and everything else for row -.
    pub fn bogoliubov_defects(&self) -> [T; 3] {
        let mut out = [T::zero(); 3];
        for (r, defect) in out.iter_mut().enumerate() {
            let mut s = -T::one();
            for (c, t) in self.coefficients[r].iter().enumerate() {
                let squeezer_col = matches!(c, 2 | 3);
                // Row 1 holds a_-† whose beam-splitter channels are the
                // conjugated Stokes inputs.
                let bs = if r == 1 { squeezer_col } else { !squeezer_col };
                if bs {
                    s += t.norm_sqr();
                } else {
                    s -= t.norm_sqr();
                }
            }
            *defect = s.abs();
        }
        out
    }

    /// Maximum entry-wise deviation from another matrix, relative to the
    /// largest coefficient magnitude of the two.
    pub fn max_relative_deviation(&self, other: &Self) -> T {
        let mut scale = T::one();
        let mut dev = T::zero();
        for r in 0..3 {
            for c in 0..6 {
                scale = scale.max(cabs(self.coefficients[r][c]));
                scale = scale.max(cabs(other.coefficients[r][c]));
                let d = cabs(self.coefficients[r][c] - other.coefficients[r][c]);
                if d > dev {
                    dev = d;
                }
            }
        }
        dev / scale
    }
}

struct Propagators<T: Scalar> {
    gp: C<T>,
    gm: C<T>,
    gw: C<T>,
    g1: T,
    g2: T,
    m: C<T>,
}

/// `Γ_k = κ_k/2 - iω` for all channels and the system determinant
/// `M = Γ_+ Γ_- Γ_Ω + G1² Γ_- - G2² Γ_+`.
fn propagators<T: Scalar>(params: &ThreeModeParams<T>, omega: T) -> Propagators<T> {
    let half = T::lit(0.5);
    let gp = C::new(params.loss_plus.kappa() * half, -omega);
    let gm = C::new(params.loss_minus.kappa() * half, -omega);
    let gw = C::new(params.loss_mw.kappa() * half, -omega);
    let g1 = params.g1();
    let g2 = params.g2();
    let m = gp * gm * gw + gm * re(g1 * g1) - gp * re(g2 * g2);
    Propagators {
        gp,
        gm,
        gw,
        g1,
        g2,
        m,
    }
}

fn check_not_singular<T: Scalar>(params: &ThreeModeParams<T>, m: C<T>) -> Result<()> {
    let eighth = T::lit(0.125);
    let scale =
        params.loss_plus.kappa() * params.loss_minus.kappa() * params.loss_mw.kappa() * eighth;
    if cabs(m) < T::lit(1e-14) * scale {
        return Err(Error::SingularSystem {
            magnitude: cabs(m).to_subset().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Closed-form scattering matrix at detuning `omega`.
pub fn scattering_matrix<T: Scalar>(
    params: &ThreeModeParams<T>,
    omega: T,
) -> Result<ScatteringMatrix<T>> {
    require_stable(params)?;
    let p = propagators(params, omega);
    check_not_singular(params, p.m)?;

    let (kep, kip) = (params.loss_plus.kappa_e(), params.loss_plus.kappa_i());
    let (kem, kim) = (params.loss_minus.kappa_e(), params.loss_minus.kappa_i());
    let (kew, kiw) = (params.loss_mw.kappa_e(), params.loss_mw.kappa_i());
    let g1 = re(p.g1);
    let g2 = re(p.g2);
    let i = im::<T>();
    let one = re(T::one());

    let row_plus = p.gm * p.gw - g2 * g2;
    let row_minus = p.gp * p.gw + g1 * g1;
    let row_mw = p.gp * p.gm;

    let coefficients = [
        [
            row_plus * re(kep) / p.m - one,
            row_plus * re((kep * kip).sqrt()) / p.m,
            -g1 * g2 * re((kep * kem).sqrt()) / p.m,
            -g1 * g2 * re((kep * kim).sqrt()) / p.m,
            -i * g1 * p.gm * re((kep * kew).sqrt()) / p.m,
            -i * g1 * p.gm * re((kep * kiw).sqrt()) / p.m,
        ],
        [
            g1 * g2 * re((kem * kep).sqrt()) / p.m,
            g1 * g2 * re((kem * kip).sqrt()) / p.m,
            row_minus * re(kem) / p.m - one,
            row_minus * re((kem * kim).sqrt()) / p.m,
            i * g2 * p.gp * re((kem * kew).sqrt()) / p.m,
            i * g2 * p.gp * re((kem * kiw).sqrt()) / p.m,
        ],
        [
            -i * g1 * p.gm * re((kew * kep).sqrt()) / p.m,
            -i * g1 * p.gm * re((kew * kip).sqrt()) / p.m,
            -i * g2 * p.gp * re((kew * kem).sqrt()) / p.m,
            -i * g2 * p.gp * re((kew * kim).sqrt()) / p.m,
            row_mw * re(kew) / p.m - one,
            row_mw * re((kew * kiw).sqrt()) / p.m,
        ],
    ];
    Ok(ScatteringMatrix {
        omega,
        coefficients,
    })
}

/// First-principles oracle: assemble the 3x3 frequency-domain system for
/// `(a_+, a_-†, a_Ω)` directly from the equations of motion and solve it
/// numerically per input channel. No reuse of the closed forms.
pub fn solve_scattering_numeric<T: Scalar>(
    params: &ThreeModeParams<T>,
    omega: T,
) -> Result<ScatteringMatrix<T>> {
    require_stable(params)?;
    let half = T::lit(0.5);
    let zero = C::new(T::zero(), T::zero());
    let i = im::<T>();
    let gp = C::new(params.loss_plus.kappa() * half, -omega);
    let gm = C::new(params.loss_minus.kappa() * half, -omega);
    let gw = C::new(params.loss_mw.kappa() * half, -omega);
    let g1 = re(params.g1());
    let g2 = re(params.g2());

    // Γ_+ a_+            + i G1 a_Ω = F_+
    //        Γ_- a_-†    - i G2 a_Ω = F_-†
    // i G1 a_+ + i G2 a_-† + Γ_Ω a_Ω = F_Ω
    let a = Matrix3::new(
        gp, zero, i * g1, //
        zero, gm, -i * g2, //
        i * g1, i * g2, gw,
    );
    let lu = a.lu();
    let det = lu.determinant();
    check_not_singular(params, det)?;

    let sqrt_e = [
        params.loss_plus.kappa_e().sqrt(),
        params.loss_minus.kappa_e().sqrt(),
        params.loss_mw.kappa_e().sqrt(),
    ];
    let drive = [
        (0usize, params.loss_plus.kappa_e()),
        (0usize, params.loss_plus.kappa_i()),
        (1usize, params.loss_minus.kappa_e()),
        (1usize, params.loss_minus.kappa_i()),
        (2usize, params.loss_mw.kappa_e()),
        (2usize, params.loss_mw.kappa_i()),
    ];

    let mut coefficients = [[zero; 6]; 3];
    for (ch, &(target, rate)) in drive.iter().enumerate() {
        let mut rhs = Vector3::from_element(zero);
        rhs[target] = re(rate.sqrt());
        let x = lu.solve(&rhs).ok_or(Error::SingularSystem {
            magnitude: cabs(det).to_subset().unwrap_or(f64::NAN),
        })?;
        for out in 0..3 {
            let mut t = x[out] * re(sqrt_e[out]);
            // input-output relation subtracts the reflected external drive
            if ch == 2 * out {
                t -= re(T::one());
            }
            coefficients[out][ch] = t;
        }
    }
    Ok(ScatteringMatrix {
        omega,
        coefficients,
    })
}

/// Denominator `D(ω)` of the emission spectra.
fn d_factor<T: Scalar>(params: &ThreeModeParams<T>, omega: T) -> T {
    let four = T::lit(4.0);
    let kp = params.loss_plus.kappa();
    let km = params.loss_minus.kappa();
    let kw = params.loss_mw.kappa();
    let w2 = omega * omega;
    let re_part = T::one() + params.c1 - params.c2 - four * w2 * (kp + km + kw) / (kp * km * kw);
    let im_part = (T::one() + params.c1) / km
        + (T::one() - params.c2) / kp
        + (kp * km - four * w2) / (kp * km * kw);
    let d_inv = re_part * re_part + four * w2 * im_part * im_part;
    T::one() / d_inv
}

/// Output photon generation rates `(n_+, n_-, n_Ω)` at detuning `omega`
/// from the parametric and frequency-conversion processes (zero-noise
/// spectra; thermal pass-through lives in the covariance matrix).
pub fn output_spectra<T: Scalar>(params: &ThreeModeParams<T>, omega: T) -> Result<(T, T, T)> {
    require_stable(params)?;
    let four = T::lit(4.0);
    let d = d_factor(params, omega);
    let kp2 = params.loss_plus.kappa() * params.loss_plus.kappa();
    let lorentz_plus = T::one() + four * omega * omega / kp2;
    let n_plus = four * params.loss_plus.eta() * params.c1 * params.c2 * d;
    let n_minus =
        four * params.loss_minus.eta() * params.c2 * (params.c1 + lorentz_plus) * d;
    let n_mw = four * params.loss_mw.eta() * params.c2 * lorentz_plus * d;
    Ok((n_plus, n_minus, n_mw))
}

fn spectrum_of<T: Scalar>(params: &ThreeModeParams<T>, mode: Mode, omega: T) -> Result<T> {
    let (p, m, w) = output_spectra(params, omega)?;
    Ok(match mode {
        Mode::Plus => p,
        Mode::Minus => m,
        Mode::Microwave => w,
    })
}

/// Bisection FWHM solver shared by the three-mode and comb spectra.
///
/// `spectrum` must be even in `omega` with its maximum at resonance; the
/// half-maximum crossing is bracketed by doubling and solved to `tol`.
pub(crate) fn fwhm_bisect<T: Scalar>(
    spectrum: &dyn Fn(T) -> Result<T>,
    scale: T,
    tol: T,
) -> Result<T> {
    let n0 = spectrum(T::zero())?;
    if n0 <= T::zero() {
        return Err(Error::ZeroPhotonRate { mode: "spectrum" });
    }
    let half = n0 * T::lit(0.5);
    let mut hi = scale * T::lit(2.0f64.powi(-10));
    let mut lo = T::zero();
    let bump = T::one() + T::lit(1e-9);
    let mut found = false;
    for _ in 0..220 {
        let v = spectrum(hi)?;
        if v > n0 * bump {
            return Err(Error::NonUnimodalSpectrum);
        }
        if v < half {
            found = true;
            break;
        }
        lo = hi;
        hi *= T::lit(2.0);
    }
    if !found {
        return Err(Error::NonUnimodalSpectrum);
    }
    while hi - lo > tol {
        let mid = (hi + lo) * T::lit(0.5);
        if spectrum(mid)? < half {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi + lo) // FWHM = 2 * omega_half, spectra are even
}

/// FWHM of the selected mode's emission spectrum, in MHz.
pub fn bandwidth<T: Scalar>(params: &ThreeModeParams<T>, mode: Mode) -> Result<T> {
    require_stable(params)?;
    let scale = params
        .loss_plus
        .kappa()
        .max(params.loss_minus.kappa())
        .max(params.loss_mw.kappa());
    fwhm_bisect(&|w| spectrum_of(params, mode, w), scale, T::lit(1e-6))
}

/// Closed-form resonance covariance matrix, mode order `(+, -, Ω)`.
///
/// All entries are real in the convention where the output mode phases are
/// chosen to make the squeezer correlations positive; the matching oracle
/// assembly is [`covariance_from_scattering`].
pub fn covariance<T: Scalar>(params: &ThreeModeParams<T>) -> Result<CovarianceMatrix<T>> {
    require_stable(params)?;
    let half = T::lit(0.5);
    let four = T::lit(4.0);
    let two = T::lit(2.0);
    let (c1, c2) = (params.c1, params.c2);
    let (ep, em, ew) = (
        params.loss_plus.eta(),
        params.loss_minus.eta(),
        params.loss_mw.eta(),
    );
    let nb = params.n_bar();
    let ne = params.noise.n_ext;
    let t = T::one() + c1 - c2;
    let t2 = t * t;

    let v_pp = half + four * c1 * (c2 + nb) * ep / t2;
    let v_mm = half + four * c2 * (c1 + T::one() + nb) * em / t2;
    let v_ww = half + four * (c2 + nb) * ew / t2 + ne * (T::one() - four * ew / t);
    let v_pm = (four * ep * em * c1 * c2).sqrt() * (T::one() + c1 + c2 + two * nb) / t2;
    let v_pw = (four * ep * ew * c1).sqrt() * (two * c2 + two * nb - t * ne) / t2;
    let v_mw = (four * em * ew * c2).sqrt() * (T::one() + c1 + c2 + two * nb - t * ne) / t2;

    build_three_mode_cm(v_pp, v_mm, v_ww, v_pm, v_pw, v_mw)
}

/// Assemble the 6x6 matrix from the six independent block values:
/// diagonals are isotropic, `{+,-}` and `{-,Ω}` couple through `Z`,
/// `{+,Ω}` couples through the identity.
pub(crate) fn build_three_mode_cm<T: Scalar>(
    v_pp: T,
    v_mm: T,
    v_ww: T,
    v_pm: T,
    v_pw: T,
    v_mw: T,
) -> Result<CovarianceMatrix<T>> {
    let z = T::zero();
    let rows = [
        [v_pp, z, v_pm, z, v_pw, z],
        [z, v_pp, z, -v_pm, z, v_pw],
        [v_pm, z, v_mm, z, v_mw, z],
        [z, -v_pm, z, v_mm, z, -v_mw],
        [v_pw, z, v_mw, z, v_ww, z],
        [z, v_pw, z, -v_mw, z, v_ww],
    ];
    let m = nalgebra::DMatrix::from_fn(6, 6, |i, j| rows[i][j]);
    CovarianceMatrix::new(3, m)
}

/// Output-mode Bogoliubov rows at resonance, in the fixed phase convention
/// (`a_+ -> -a_+`, `a_Ω -> i a_Ω`) that makes the covariance matrix real.
///
/// Channel order: `(e+, i+, e-, i-, eΩ, iΩ)`; the Stokes channels enter the
/// `+`/`Ω` rows through their creation operators.
pub fn output_mode_rows<T: Scalar>(
    params: &ThreeModeParams<T>,
    numeric: bool,
) -> Result<[ModeRows<T>; 3]> {
    let sm = if numeric {
        solve_scattering_numeric(params, T::zero())?
    } else {
        scattering_matrix(params, T::zero())?
    };
    Ok(rows_from_scattering(&sm))
}

pub(crate) fn rows_from_scattering<T: Scalar>(sm: &ScatteringMatrix<T>) -> [ModeRows<T>; 3] {
    let minus_one = re(-T::one());
    let i = im::<T>();

    // a_+^out, phase -1
    let mut plus = ModeRows::zero(6);
    for ch in [0usize, 1, 4, 5] {
        plus.alpha[ch] = sm.coefficient(0, ch) * minus_one;
    }
    for ch in [2usize, 3] {
        plus.beta[ch] = sm.coefficient(0, ch) * minus_one;
    }

    // row 1 carries a_-^out†; conjugate to get a_-^out
    let mut minus = ModeRows::zero(6);
    for ch in [2usize, 3] {
        minus.alpha[ch] = sm.coefficient(1, ch).conj();
    }
    for ch in [0usize, 1, 4, 5] {
        minus.beta[ch] = sm.coefficient(1, ch).conj();
    }

    // a_Ω^out, phase i
    let mut mw = ModeRows::zero(6);
    for ch in [0usize, 1, 4, 5] {
        mw.alpha[ch] = sm.coefficient(2, ch) * i;
    }
    for ch in [2usize, 3] {
        mw.beta[ch] = sm.coefficient(2, ch) * i;
    }
    [plus, minus, mw]
}

/// Channel occupations matching [`output_mode_rows`]: optical inputs are
/// vacuum, the microwave external/internal channels carry the declared
/// thermal occupations.
pub fn channel_occupations<T: Scalar>(params: &ThreeModeParams<T>) -> [T; 6] {
    [
        T::zero(),
        T::zero(),
        T::zero(),
        T::zero(),
        params.noise.n_ext,
        params.noise.n_int,
    ]
}

/// Oracle covariance matrix: assembled from the numerically solved
/// scattering coefficients at resonance with the declared input occupations.
pub fn covariance_from_scattering<T: Scalar>(
    params: &ThreeModeParams<T>,
) -> Result<CovarianceMatrix<T>> {
    let rows = output_mode_rows(params, true)?;
    covariance_from_rows(&rows, &channel_occupations(params))
}
