//! Quantum-channel figures of merit built on two-mode squeezing.
//!
//! The Braunstein-Kimble teleporter with unit gain and ideal Bell detection
//! acts on the input Wigner function as an additive Gaussian noise channel
//! of variance `2 Δq_-²` per quadrature. The closed-form fidelities below
//! are validated against brute-force Wigner-overlap integrals that apply
//! exactly that channel numerically.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Input state teleported through the channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputState<T: Scalar> {
    /// `|alpha, r>`: displaced squeezed vacuum.
    SqueezedCoherent { alpha: Complex<T>, r: T },
    /// `N (|alpha> + e^{i phi} |-alpha>)`.
    YurkeStolerCat { alpha: Complex<T>, phi: T },
}

/// Channel description for dense coding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec<T: Scalar> {
    /// Squeezed standard deviation of the shared pair.
    pub dq_minus: T,
    /// Anti-squeezed standard deviation of the shared pair.
    pub dq_plus: T,
    /// Mean photon number of the encoding mode.
    pub n_mean: T,
    /// Homodyne/heterodyne detection efficiency.
    pub eta_det: T,
}

impl<T: Scalar> ChannelSpec<T> {
    /// Noise variance `V_ne = 2 Δq_-²` in vacuum-unit normalization.
    pub fn v_ne(&self) -> T {
        T::lit(2.0) * self.dq_minus * self.dq_minus
    }

    /// Excess anti-squeezing `b = 2 Δq_+² - 1 / V_ne`; zero for pure pairs.
    pub fn b(&self) -> T {
        T::lit(2.0) * self.dq_plus * self.dq_plus - T::one() / self.v_ne()
    }

    /// Photon number carried by one arm of the shared pair,
    /// `(V_ne + 1/V_ne + b - 2) / 4`.
    pub fn arm_photons(&self) -> T {
        (self.v_ne() + T::one() / self.v_ne() + self.b() - T::lit(2.0)) / T::lit(4.0)
    }
}

/// Capacities in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseCodingCapacities<T: Scalar> {
    /// Coherent-state single-quadrature encoding with homodyne detection.
    pub c_c: T,
    /// Coherent-state dual-quadrature encoding with heterodyne detection.
    pub c_ch: T,
    /// Dense coding over the shared entangled pair.
    pub c_dc: T,
    /// Set when the dense-coding argument fell below the zero-capacity
    /// floor and was clamped (deeply noisy channel).
    pub clamped: bool,
}

fn check_dq<T: Scalar>(dq_minus: T) -> Result<()> {
    if dq_minus < T::zero() {
        return Err(Error::InvalidParameter {
            name: "dq_minus",
            reason: "squeezed deviation must be nonnegative".into(),
        });
    }
    Ok(())
}

/// Teleportation fidelity of a squeezed coherent state `|alpha, r>`.
///
/// Displacement-covariant protocol: the result does not depend on `alpha`.
pub fn teleport_fidelity_gaussian<T: Scalar>(
    dq_minus: T,
    _alpha: Complex<T>,
    r: T,
) -> Result<T> {
    check_dq(dq_minus)?;
    let four = T::lit(4.0);
    let s = dq_minus * dq_minus;
    Ok(T::one() / (four * s * s + four * s * (T::lit(2.0) * r).cosh() + T::one()).sqrt())
}

/// Teleportation fidelity of the cat state `N (|alpha> + e^{i phi} |-alpha>)`.
pub fn teleport_fidelity_cat<T: Scalar>(dq_minus: T, alpha: Complex<T>, phi: T) -> Result<T> {
    check_dq(dq_minus)?;
    let one = T::one();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let a2 = alpha.norm_sqr();
    let s = dq_minus * dq_minus;
    let norm = one + (-two * a2).exp() * phi.cos();
    if norm < T::lit(1e-12) {
        return Err(Error::InvalidParameter {
            name: "alpha/phi",
            reason: "cat state normalization vanishes".into(),
        });
    }
    let g = one + two * s;
    let bracket = one + (-four * a2).exp()
        - (-four * a2 / g).exp()
        - (-four * two * s * a2 / g).exp();
    Ok(one / g - bracket / ((two + four * s) * norm * norm))
}

/// Classical teleportation benchmark for squeezed coherent inputs,
/// `F_cl = e^{-r} / (1 + e^{-2r})`; 0.5 for coherent states.
pub fn classical_fidelity_limit<T: Scalar>(r: T) -> Result<T> {
    if r < T::zero() {
        return Err(Error::InvalidParameter {
            name: "r",
            reason: "squeezing parameter must be nonnegative".into(),
        });
    }
    Ok((-r).exp() / (T::one() + (-T::lit(2.0) * r).exp()))
}

/// Dense-coding and coherent-state channel capacities.
pub fn dense_coding_capacities<T: Scalar>(
    spec: &ChannelSpec<T>,
) -> Result<DenseCodingCapacities<T>> {
    let one = T::one();
    let four = T::lit(4.0);
    if spec.eta_det < T::zero() || spec.eta_det > one {
        return Err(Error::InvalidParameter {
            name: "eta_det",
            reason: "detection efficiency must lie in [0, 1]".into(),
        });
    }
    if spec.n_mean < T::zero() {
        return Err(Error::InvalidParameter {
            name: "n_mean",
            reason: "mean photon number must be nonnegative".into(),
        });
    }
    let v = spec.v_ne();
    if v <= T::zero() {
        return Err(Error::InvalidParameter {
            name: "v_ne",
            reason: "noise variance must be positive".into(),
        });
    }
    let b = spec.b();
    let eta = spec.eta_det;
    let n = spec.n_mean;

    let c_c = (one + four * n).sqrt().log2_();
    let c_ch = (one + n).log2_();
    let arg = one + eta * (four * n - v - one / v - b + T::lit(2.0))
        / (four * (eta * v + one - eta));
    let (c_dc, clamped) = if arg <= T::zero() {
        (T::zero(), true)
    } else {
        let c = arg.log2_();
        if c < T::zero() {
            (T::zero(), true)
        } else {
            (c, false)
        }
    };
    Ok(DenseCodingCapacities {
        c_c,
        c_ch,
        c_dc,
        clamped,
    })
}

// ---------------------------------------------------------------------------
// Numeric Wigner-overlap oracles
// ---------------------------------------------------------------------------

/// Composite-Simpson weight for node `i` of `n` (odd `n`).
fn simpson_weight(i: usize, n: usize) -> f64 {
    if i == 0 || i == n - 1 {
        1.0
    } else if i % 2 == 1 {
        4.0
    } else {
        2.0
    }
}

/// Brute-force fidelity for the squeezed-coherent input: both Wigner
/// functions are sampled on a Simpson grid scaled to the state and the
/// overlap `2π ∫ W_in W_out dq dp` is accumulated directly.
///
/// Independent of [`teleport_fidelity_gaussian`]: only the additive-noise
/// channel action `V -> V + 2Δq_-² I` is shared physics.
pub fn gaussian_overlap_fidelity(dq_minus: f64, alpha: Complex<f64>, r: f64) -> f64 {
    let s = 2.0 * dq_minus * dq_minus;
    let (vq_in, vp_in) = ((-2.0 * r).exp() / 2.0, (2.0 * r).exp() / 2.0);
    let (vq_out, vp_out) = (vq_in + s, vp_in + s);
    let (cq, cp) = (
        std::f64::consts::SQRT_2 * alpha.re,
        std::f64::consts::SQRT_2 * alpha.im,
    );

    let n = 513usize;
    let half_q = 8.0 * vq_out.sqrt();
    let half_p = 8.0 * vp_out.sqrt();
    let hq = 2.0 * half_q / (n - 1) as f64;
    let hp = 2.0 * half_p / (n - 1) as f64;
    let norm_in = 1.0 / (2.0 * std::f64::consts::PI * (vq_in * vp_in).sqrt());
    let norm_out = 1.0 / (2.0 * std::f64::consts::PI * (vq_out * vp_out).sqrt());

    let mut total = 0.0;
    for i in 0..n {
        let q = cq - half_q + i as f64 * hq;
        let dq2 = (q - cq) * (q - cq);
        let mut row = 0.0;
        for j in 0..n {
            let p = cp - half_p + j as f64 * hp;
            let dp2 = (p - cp) * (p - cp);
            let w_in = norm_in * (-0.5 * (dq2 / vq_in + dp2 / vp_in)).exp();
            let w_out = norm_out * (-0.5 * (dq2 / vq_out + dp2 / vp_out)).exp();
            row += simpson_weight(j, n) * w_in * w_out;
        }
        total += simpson_weight(i, n) * row;
    }
    total *= hq * hp / 9.0;
    2.0 * std::f64::consts::PI * total
}

/// Cat-state Wigner function in `(q, p)` with `∫ W dq dp = 1`.
fn cat_wigner(q: f64, p: f64, a: f64, phi: f64) -> f64 {
    let n2 = 2.0 + 2.0 * (-2.0 * a * a).exp() * phi.cos();
    let q0 = std::f64::consts::SQRT_2 * a;
    let g = |x: f64| (-x).exp();
    let blobs = g((q - q0) * (q - q0) + p * p) + g((q + q0) * (q + q0) + p * p);
    let interference = 2.0 * g(q * q + p * p) * (2.0 * q0 * p + phi).cos();
    (blobs + interference) / (std::f64::consts::PI * n2)
}

/// Brute-force fidelity for the Yurke-Stoler cat: the exact input Wigner
/// function on a fixed 12x12 window (513² Simpson nodes) is pushed through
/// the additive-noise channel by separable numeric convolution, then
/// overlapped with the input.
pub fn cat_overlap_fidelity(dq_minus: f64, alpha: Complex<f64>, phi: f64) -> f64 {
    let a = alpha.norm();
    let s = 2.0 * dq_minus * dq_minus;
    let n = 513usize;
    let half = 6.0;
    let h = 2.0 * half / (n - 1) as f64;

    let mut w_in = vec![0.0f64; n * n];
    for i in 0..n {
        let q = -half + i as f64 * h;
        for j in 0..n {
            let p = -half + j as f64 * h;
            w_in[i * n + j] = cat_wigner(q, p, a, phi);
        }
    }

    let w_out = if s < 1e-14 {
        w_in.clone()
    } else {
        // separable Gaussian blur, kernel sampled on the grid out to 8 sigma
        let sigma = s.sqrt();
        let radius = ((8.0 * sigma / h).ceil() as usize).max(1);
        let mut kernel = Vec::with_capacity(2 * radius + 1);
        let mut ksum = 0.0;
        for k in 0..=(2 * radius) {
            let x = (k as f64 - radius as f64) * h;
            let v = (-0.5 * x * x / s).exp();
            kernel.push(v);
            ksum += v;
        }
        for v in &mut kernel {
            *v /= ksum;
        }
        let convolve_rows = |src: &[f64]| -> Vec<f64> {
            let mut dst = vec![0.0f64; n * n];
            for i in 0..n {
                for j in 0..n {
                    let mut acc = 0.0;
                    for (k, &kv) in kernel.iter().enumerate() {
                        let jj = j as isize + k as isize - radius as isize;
                        if jj >= 0 && (jj as usize) < n {
                            acc += kv * src[i * n + jj as usize];
                        }
                    }
                    dst[i * n + j] = acc;
                }
            }
            dst
        };
        let transpose = |src: &[f64]| -> Vec<f64> {
            let mut dst = vec![0.0f64; n * n];
            for i in 0..n {
                for j in 0..n {
                    dst[j * n + i] = src[i * n + j];
                }
            }
            dst
        };
        let pass1 = convolve_rows(&w_in);
        transpose(&convolve_rows(&transpose(&pass1)))
    };

    let mut total = 0.0;
    for i in 0..n {
        let wi = simpson_weight(i, n);
        let mut row = 0.0;
        for j in 0..n {
            row += simpson_weight(j, n) * w_in[i * n + j] * w_out[i * n + j];
        }
        total += wi * row;
    }
    total *= h * h / 9.0;
    2.0 * std::f64::consts::PI * total
}
