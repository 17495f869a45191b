//! Mode-count-agnostic Gaussian-state primitives.
//!
//! Covariance matrices are stored in the quadrature ordering
//! `(q1, p1, q2, p2, ...)` with the vacuum normalized to `0.5 * I`, i.e.
//! `V_jk = <Δx_j Δx_k + Δx_k Δx_j> / 2`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Tolerance on symmetry of accepted covariance matrices.
const SYMMETRY_TOL: f64 = 1e-12;
/// Physical floor for symplectic eigenvalues (vacuum-0.5 convention).
const SYMPLECTIC_FLOOR_TOL: f64 = 1e-9;
/// Eigenvalues this far below their theoretical floor are clamped; anything
/// worse is reported as unphysical input.
const CLAMP_TOL: f64 = 1e-10;

/// Symmetrized second-moment matrix of a zero-mean Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix<T: Scalar> {
    mode_count: usize,
    entries: DMatrix<T>,
}

/// Two-mode squeezing ellipse: squeezed/anti-squeezed standard deviations
/// and the orientation of the squeezed axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingResult<T: Scalar> {
    /// Standard deviation along the squeezed axis.
    pub dq_minus: T,
    /// Standard deviation along the anti-squeezed axis.
    pub dq_plus: T,
    /// Squeezed-axis angle in degrees, principal value in (-90, 90].
    pub theta_deg: T,
}

/// Symplectic eigenvalues of a two-mode covariance matrix together with the
/// smallest eigenvalue of its partial transpose.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticPair<T: Scalar> {
    pub d_minus: T,
    pub d_plus: T,
    /// Smallest symplectic eigenvalue after partial transposition;
    /// values below 0.5 certify entanglement.
    pub d_tilde_minus: T,
}

impl<T: Scalar> CovarianceMatrix<T> {
    /// Build from a square `2M x 2M` matrix, checking shape and symmetry.
    pub fn new(mode_count: usize, entries: DMatrix<T>) -> Result<Self> {
        let dim = 2 * mode_count;
        if mode_count == 0 || entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::InvalidParameter {
                name: "entries",
                reason: format!(
                    "expected {dim}x{dim} matrix for {mode_count} modes, got {}x{}",
                    entries.nrows(),
                    entries.ncols()
                ),
            });
        }
        let mut asym = T::zero();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let d = (entries[(i, j)] - entries[(j, i)]).abs();
                if d > asym {
                    asym = d;
                }
            }
        }
        if asym > T::lit(SYMMETRY_TOL) {
            return Err(Error::NotSymmetric {
                asymmetry: asym.to_subset().unwrap_or(f64::NAN),
            });
        }
        // Store the exactly symmetrized matrix so downstream block reads are
        // insensitive to which triangle the caller filled in.
        let half = T::lit(0.5);
        let sym = DMatrix::from_fn(dim, dim, |i, j| (entries[(i, j)] + entries[(j, i)]) * half);
        Ok(Self {
            mode_count,
            entries: sym,
        })
    }

    /// Vacuum state: `0.5 * I`.
    pub fn vacuum(mode_count: usize) -> Self {
        let dim = 2 * mode_count;
        Self {
            mode_count,
            entries: DMatrix::identity(dim, dim) * T::lit(0.5),
        }
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn entries(&self) -> &DMatrix<T> {
        &self.entries
    }

    /// Entry in quadrature indexing (row/col in `0..2M`).
    pub fn get(&self, row: usize, col: usize) -> T {
        self.entries[(row, col)]
    }

    /// q-q covariance of modes `l` and `k`.
    pub fn qq(&self, l: usize, k: usize) -> T {
        self.entries[(2 * l, 2 * k)]
    }

    /// Marginal covariance matrix of the selected modes, in the order given.
    pub fn reduce(&self, modes: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.mode_count];
        for &m in modes {
            if m >= self.mode_count {
                return Err(Error::IndexOutOfRange {
                    index: m,
                    mode_count: self.mode_count,
                });
            }
            if seen[m] {
                return Err(Error::DuplicateIndex { index: m });
            }
            seen[m] = true;
        }
        let dim = 2 * modes.len();
        let sub = DMatrix::from_fn(dim, dim, |i, j| {
            let (mi, qi) = (modes[i / 2], i % 2);
            let (mj, qj) = (modes[j / 2], j % 2);
            self.entries[(2 * mi + qi, 2 * mj + qj)]
        });
        Ok(Self {
            mode_count: modes.len(),
            entries: sub,
        })
    }

    /// Symplectic spectrum: the `M` positive eigenvalues `d_k` of `i Ω V`.
    ///
    /// Computed through the real Schur eigenvalues of `Ω V`, which come in
    /// `±i d_k` pairs; this is the generic route used to validate the
    /// closed-form two-mode expressions.
    pub fn symplectic_spectrum(&self) -> Vec<T> {
        let dim = 2 * self.mode_count;
        let mut omega_v = DMatrix::zeros(dim, dim);
        // Ω = ⊕ [[0, 1], [-1, 0]] per mode; (ΩV)[2m] = V[2m+1], (ΩV)[2m+1] = -V[2m].
        for m in 0..self.mode_count {
            for j in 0..dim {
                omega_v[(2 * m, j)] = self.entries[(2 * m + 1, j)];
                omega_v[(2 * m + 1, j)] = -self.entries[(2 * m, j)];
            }
        }
        let eig = omega_v.complex_eigenvalues();
        let mut mags: Vec<T> = eig.iter().map(|z| crate::scalar::cabs(*z)).collect();
        mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // Eigenvalues come in conjugate pairs; keep one of each.
        mags.into_iter().skip(1).step_by(2).collect()
    }

    /// Check physicality: every symplectic eigenvalue at least `0.5 - 1e-9`.
    pub fn check_physical(&self) -> Result<()> {
        let floor = T::lit(0.5) - T::lit(SYMPLECTIC_FLOOR_TOL);
        for d in self.symplectic_spectrum() {
            if d < floor {
                return Err(Error::Unphysical {
                    value: d.to_subset().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(())
    }

    /// Apply the same local phase-space rotation `q -> p, p -> -q` to every
    /// mode. Useful for invariance checks: no metric may depend on it.
    pub fn rotate_quadratures(&self) -> Self {
        let dim = 2 * self.mode_count;
        let mut r = DMatrix::zeros(dim, dim);
        for m in 0..self.mode_count {
            r[(2 * m, 2 * m + 1)] = T::one();
            r[(2 * m + 1, 2 * m)] = -T::one();
        }
        Self {
            mode_count: self.mode_count,
            entries: &r * &self.entries * r.transpose(),
        }
    }
}

fn clamp_floor<T: Scalar>(value: T, floor: T) -> Result<T> {
    if value >= floor {
        Ok(value)
    } else if value >= floor - T::lit(CLAMP_TOL) {
        Ok(floor)
    } else {
        Err(Error::NegativeDiscriminant {
            value: (value - floor).to_subset().unwrap_or(f64::NAN),
        })
    }
}

fn det2<T: Scalar>(a: T, b: T, c: T, d: T) -> T {
    a * d - b * c
}

/// Symplectic eigenvalues `d_∓` of a two-mode covariance matrix and the
/// smallest PPT eigenvalue `d̃_-`.
///
/// Uses the two-mode invariants `Δ = det A + det B + 2 det C` and
/// `Δ̃ = Δ - 4 det C` with `d_∓ = sqrt((Δ ∓ sqrt(Δ² - 4 det V)) / 2)`,
/// valid for arbitrary (not only X-shaped) two-mode states. For the
/// X-shaped matrices produced here `Δ̃` reduces to `V₁₁² + V₃₃² + 2V₁₃²`.
pub fn symplectic_pair<T: Scalar>(cm: &CovarianceMatrix<T>) -> Result<SymplecticPair<T>> {
    if cm.mode_count() != 2 {
        return Err(Error::InvalidParameter {
            name: "cm",
            reason: format!("expected a two-mode CM, got {} modes", cm.mode_count()),
        });
    }
    let v = cm.entries();
    let det_a = det2(v[(0, 0)], v[(0, 1)], v[(1, 0)], v[(1, 1)]);
    let det_b = det2(v[(2, 2)], v[(2, 3)], v[(3, 2)], v[(3, 3)]);
    let det_c = det2(v[(0, 2)], v[(0, 3)], v[(1, 2)], v[(1, 3)]);
    let det_v = v.clone_owned().determinant();

    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let pair_from = |delta: T| -> Result<(T, T)> {
        let disc = clamp_floor(delta * delta - four * det_v, T::zero())?;
        let lo = clamp_floor((delta - disc.sqrt()) / two, T::zero())?;
        let hi = (delta + disc.sqrt()) / two;
        Ok((lo.sqrt(), hi.sqrt()))
    };

    let (d_minus, d_plus) = pair_from(det_a + det_b + two * det_c)?;
    let (d_tilde_minus, _) = pair_from(det_a + det_b - two * det_c)?;
    Ok(SymplecticPair {
        d_minus,
        d_plus,
        d_tilde_minus,
    })
}

/// Independent route to the PPT spectrum: partial-transpose the second mode
/// (`p₂ -> -p₂`) and read the symplectic spectrum of the result.
pub fn ptranspose_symplectic_spectrum<T: Scalar>(cm: &CovarianceMatrix<T>) -> Result<Vec<T>> {
    if cm.mode_count() != 2 {
        return Err(Error::InvalidParameter {
            name: "cm",
            reason: format!("expected a two-mode CM, got {} modes", cm.mode_count()),
        });
    }
    let mut v = cm.entries().clone_owned();
    for i in 0..4 {
        v[(i, 3)] = -v[(i, 3)];
        v[(3, i)] = -v[(3, i)];
    }
    // The double flip restored the (3,3) entry's sign.
    let flipped = CovarianceMatrix {
        mode_count: 2,
        entries: v,
    };
    Ok(flipped.symplectic_spectrum())
}

/// Squeezing ellipse of the q-quadrature pair `(l, k)`.
///
/// The 2x2 block `[[V_ll, V_lk], [V_lk, V_kk]]` is eigen-decomposed; the
/// squeezed/anti-squeezed variances are its extremal eigenvalues and the
/// angle is the branch of `tan(2Θ) = 2 V_lk / (V_ll - V_kk)` attached to the
/// squeezed axis.
pub fn squeezing_ellipse<T: Scalar>(
    cm: &CovarianceMatrix<T>,
    l: usize,
    k: usize,
) -> Result<SqueezingResult<T>> {
    if l == k {
        return Err(Error::DuplicateIndex { index: l });
    }
    for &m in &[l, k] {
        if m >= cm.mode_count() {
            return Err(Error::IndexOutOfRange {
                index: m,
                mode_count: cm.mode_count(),
            });
        }
    }
    let a = cm.qq(l, l);
    let b = cm.qq(k, k);
    let c = cm.qq(l, k);
    Ok(squeeze_block(a, b, c))
}

/// Squeezing ellipse of an explicit 2x2 q-block `[[a, c], [c, b]]`.
pub fn squeeze_block<T: Scalar>(a: T, b: T, c: T) -> SqueezingResult<T> {
    let half = T::lit(0.5);
    let mean = (a + b) * half;
    let d = (a - b) * half;
    let radius = (d * d + c * c).sqrt();
    let lam_min = (mean - radius).max(T::zero());
    let lam_max = mean + radius;

    // Variance along angle θ is mean + d cos2θ + c sin2θ; minimal where
    // (cos2θ, sin2θ) = -(d, c)/radius.
    let theta = if radius == T::zero() {
        T::zero()
    } else {
        let mut t = T::lit(0.5) * (-c).atan2(-d);
        let pi = T::pi();
        let half_pi = pi * half;
        if t > half_pi {
            t -= pi;
        }
        if t <= -half_pi {
            t += pi;
        }
        t
    };
    SqueezingResult {
        dq_minus: lam_min.sqrt(),
        dq_plus: lam_max.sqrt(),
        theta_deg: theta * T::lit(180.0) / T::pi(),
    }
}

/// Wigner quasi-probability density at phase-space point `x`.
///
/// `W(x) = exp(-x^T V^{-1} x / 2) / ((2π)^M sqrt(det V))`, normalized so the
/// integral over all quadratures is one for any mode count.
pub fn wigner_density<T: Scalar>(cm: &CovarianceMatrix<T>, x: &[T]) -> Result<T> {
    let dim = 2 * cm.mode_count();
    if x.len() != dim {
        return Err(Error::InvalidParameter {
            name: "x",
            reason: format!("expected {dim} quadrature values, got {}", x.len()),
        });
    }
    let eig = cm.entries().clone_owned().symmetric_eigen();
    let mut lam_min = T::lit(f64::INFINITY);
    let mut lam_max = T::zero();
    for &l in eig.eigenvalues.iter() {
        if l < lam_min {
            lam_min = l;
        }
        if l > lam_max {
            lam_max = l;
        }
    }
    if lam_min <= T::zero() || lam_max / lam_min > T::lit(1e12) {
        return Err(Error::SingularMatrix {
            cond: if lam_min <= T::zero() {
                f64::INFINITY
            } else {
                (lam_max / lam_min).to_subset().unwrap_or(f64::NAN)
            },
        });
    }
    let chol = cm
        .entries()
        .clone_owned()
        .cholesky()
        .ok_or(Error::SingularMatrix { cond: f64::NAN })?;
    let xv = nalgebra::DVector::from_column_slice(x);
    let solved = chol.solve(&xv);
    let quad = xv.dot(&solved);
    let det = chol.determinant();
    let two_pi = T::two_pi();
    let mut norm = det.sqrt();
    for _ in 0..cm.mode_count() {
        norm *= two_pi;
    }
    Ok((-T::lit(0.5) * quad).exp() / norm)
}

/// Purity figure `P = 1 / (2 dq_- dq_+)` of the `(l, k)` q-block.
pub fn purity<T: Scalar>(cm: &CovarianceMatrix<T>, l: usize, k: usize) -> Result<T> {
    let s = squeezing_ellipse(cm, l, k)?;
    let prod = s.dq_minus * s.dq_plus;
    if prod <= T::zero() {
        return Err(Error::Unphysical {
            value: prod.to_subset().unwrap_or(f64::NAN),
        });
    }
    Ok(T::one() / (T::lit(2.0) * prod))
}

/// Entropy kernel `h(x) = (x+1/2) log2(x+1/2) - (x-1/2) log2(x-1/2)`.
///
/// `h(ν)` is the von Neumann entropy (in bits) of a Gaussian mode with
/// symplectic eigenvalue `ν`; `h(0.5) = 0` by continuity.
pub fn entropy_h<T: Scalar>(x: T) -> Result<T> {
    let half = T::lit(0.5);
    let floor = half - T::lit(SYMPLECTIC_FLOOR_TOL);
    if x < floor {
        return Err(Error::EntropyDomain {
            x: x.to_subset().unwrap_or(f64::NAN),
        });
    }
    let x = x.max(half);
    let xp = x + half;
    let xm = x - half;
    let mut h = xp * xp.log2_();
    if xm > T::zero() {
        h -= xm * xm.log2_();
    }
    Ok(h)
}
