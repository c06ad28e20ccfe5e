//! Physical parameters of the displaced-squeezed thermal state and the
//! degenerate parametric amplifier Hamiltonian that prepares it.
//!
//! Units: ħ = 1. The thermal state enters only through its mean photon
//! number `nbar`. Every time-dependent quantity is a function of the scaled
//! time `x = Ωτ` with `Ω = r / t_prep`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Preparation time used when none is given.
pub const DEFAULT_T_PREP: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianParams {
    /// Mean photon number of the initial thermal state.
    pub nbar: f64,
    /// Squeeze magnitude, ξ = r e^{iθ}.
    pub r: f64,
    /// Squeeze phase θ in radians.
    pub theta: f64,
    /// Coherent amplitude |α|.
    pub alpha_mag: f64,
    /// Coherent phase φ in radians, α = |α| e^{iφ}.
    pub phi: f64,
    /// Preparation time t; only the Fock oracle needs it explicitly.
    pub t_prep: f64,
}

impl GaussianParams {
    pub fn new(nbar: f64, r: f64, theta: f64, alpha_mag: f64, phi: f64, t_prep: f64) -> Result<Self> {
        validate(GaussianParams { nbar, r, theta, alpha_mag, phi, t_prep })
    }

    /// Amplitude-quadrature squeezing: θ = 2φ, t = 1.
    pub fn amplitude_quadrature(nbar: f64, r: f64, alpha_mag: f64, phi: f64) -> Result<Self> {
        Self::new(nbar, r, 2.0 * phi, alpha_mag, phi, DEFAULT_T_PREP)
    }

    pub fn alpha(&self) -> Complex64 {
        Complex64::from_polar(self.alpha_mag, self.phi)
    }

    pub fn xi(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }

    /// Squeezing rate Ω = r / t.
    pub fn omega(&self) -> f64 {
        self.r / self.t_prep
    }

    /// Physical delay τ = x t / r corresponding to the scaled time `x`.
    pub fn tau(&self, x: ScaledTime) -> Result<f64> {
        if x.value() == 0.0 {
            return Ok(0.0);
        }
        require_dynamics(self, x)?;
        Ok(x.value() * self.t_prep / self.r)
    }

    pub fn is_amplitude_quadrature(&self) -> bool {
        self.theta == 2.0 * self.phi
    }

    pub fn with_alpha(self, alpha_mag: f64, phi: f64) -> Self {
        GaussianParams { alpha_mag, phi, ..self }
    }

    /// Mean photon number of the prepared state, ⟨n(0)⟩.
    pub fn mean_photon_number(&self) -> f64 {
        (self.nbar + 0.5) * (2.0 * self.r).cosh() - 0.5 + self.alpha_mag * self.alpha_mag
    }
}

/// Checks the parameter invariants and hands the value back unchanged.
pub fn validate(params: GaussianParams) -> Result<GaussianParams> {
    let GaussianParams { nbar, r, theta, alpha_mag, phi, t_prep } = params;
    let nonneg = [("nbar", nbar), ("r", r), ("alpha_mag", alpha_mag)];
    for (field, value) in nonneg {
        if !value.is_finite() {
            return Err(Error::domain(field, format!("must be finite, got {value}")));
        }
        if value < 0.0 {
            return Err(Error::domain(field, format!("must be nonnegative, got {value}")));
        }
    }
    for (field, value) in [("theta", theta), ("phi", phi)] {
        if !value.is_finite() {
            return Err(Error::domain(field, format!("must be finite, got {value}")));
        }
    }
    if !(t_prep.is_finite() && t_prep > 0.0) {
        return Err(Error::domain("t_prep", format!("must be positive, got {t_prep}")));
    }
    Ok(params)
}

/// Dimensionless time x = Ωτ ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScaledTime(f64);

impl ScaledTime {
    pub const ZERO: ScaledTime = ScaledTime(0.0);

    pub fn new(x: f64) -> Result<Self> {
        if x.is_finite() && x >= 0.0 {
            Ok(ScaledTime(x))
        } else {
            Err(Error::domain("x", format!("scaled time must be finite and nonnegative, got {x}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for ScaledTime {
    type Error = Error;

    fn try_from(x: f64) -> Result<Self> {
        ScaledTime::new(x)
    }
}

/// Rejects evolution (x > 0) without squeezing; Ω = r/t vanishes at r = 0.
pub(crate) fn require_dynamics(params: &GaussianParams, x: ScaledTime) -> Result<()> {
    if params.r == 0.0 && x.value() > 0.0 {
        return Err(Error::domain("r", "time evolution (x > 0) requires r > 0"));
    }
    Ok(())
}

/// Coefficients of H = c a†² + c* a² + b a + b* a†.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianCoeffs {
    pub c: Complex64,
    pub b: Complex64,
}

/// Coefficients that map the thermal state onto the Gaussian state in time
/// `t_prep`.
///
/// `c = -i r e^{iθ} / (2t)` and `b = -i (α e^{-iθ} + α* coth(r/2)) r / (2t)`.
pub fn hamiltonian_coeffs(params: &GaussianParams) -> Result<HamiltonianCoeffs> {
    let p = validate(*params)?;
    if p.r == 0.0 {
        return Err(Error::domain("r", "coth(r/2) is singular at r = 0"));
    }
    let half_rate = 0.5 * p.r / p.t_prep;
    let minus_i = Complex64::new(0.0, -1.0);
    let alpha = p.alpha();
    let coth = 1.0 / (0.5 * p.r).tanh();
    let c = minus_i * half_rate * Complex64::from_polar(1.0, p.theta);
    let b = minus_i * half_rate * (alpha * Complex64::from_polar(1.0, -p.theta) + alpha.conj() * coth);
    Ok(HamiltonianCoeffs { c, b })
}
