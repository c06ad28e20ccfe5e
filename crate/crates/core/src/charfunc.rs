//! Normally ordered characteristic function and the one-time moments it
//! generates.
//!
//! χ(η) = e^{|η|²/2} · e^{ηA* − η*A} · e^{−(n̄+½)|ξ(τ)|²} with
//! ξ(τ) = η cosh(x+r) + η* e^{iθ} sinh(x+r), so that
//! |ξ(τ)|² = η² T* + η*² T + |η|² S,
//! T = ½ e^{iθ} sinh 2(x+r), S = cosh 2(x+r).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherence::amplitude_a;
use crate::error::{Error, Result};
use crate::params::{require_dynamics, validate, GaussianParams, ScaledTime};

/// Argument η of the characteristic function.
pub type CharVariable = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticKernel {
    pub t_tau: Complex64,
    pub s_tau: f64,
}

impl QuadraticKernel {
    /// |ξ(τ)|² expanded through T and S.
    pub fn xi_norm_sqr(&self, eta: CharVariable) -> f64 {
        let z = eta * eta * self.t_tau.conj() + eta.conj() * eta.conj() * self.t_tau;
        z.re + eta.norm_sqr() * self.s_tau
    }
}

/// Normally ordered first and second moments at scaled time x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSet {
    /// ⟨a⟩
    pub mean_a: Complex64,
    /// ⟨a†a⟩
    pub n_mean: f64,
    /// ⟨a²⟩ − ⟨a⟩²
    pub aa_central: Complex64,
    /// ⟨a†a⟩ − |⟨a⟩|²
    pub n_central: f64,
    /// ⟨a†²a²⟩
    pub a2dag_a2: f64,
}

impl MomentSet {
    /// Mandel Q from the stored moments.
    pub fn mandel_q(&self) -> Result<f64> {
        if self.n_mean <= 0.0 {
            return Err(Error::DegenerateState("⟨n⟩ = 0, Mandel Q is undefined".into()));
        }
        Ok((self.a2dag_a2 - self.n_mean * self.n_mean) / self.n_mean)
    }
}

pub fn kernel(params: &GaussianParams, x: ScaledTime) -> QuadraticKernel {
    let y = 2.0 * (x.value() + params.r);
    QuadraticKernel { t_tau: Complex64::from_polar(0.5 * y.sinh(), params.theta), s_tau: y.cosh() }
}

/// ξ(τ) for a given η.
pub fn xi_tau(params: &GaussianParams, x: ScaledTime, eta: CharVariable) -> Complex64 {
    let y = x.value() + params.r;
    eta * y.cosh() + eta.conj() * Complex64::from_polar(y.sinh(), params.theta)
}

pub fn chi(params: &GaussianParams, x: ScaledTime, eta: CharVariable) -> Result<Complex64> {
    let p = validate(*params)?;
    let a = amplitude_a(&p, x)?;
    let k = kernel(&p, x);
    let exponent =
        Complex64::from(0.5 * eta.norm_sqr()) + (eta * a.conj() - eta.conj() * a) - (p.nbar + 0.5) * k.xi_norm_sqr(eta);
    Ok(exponent.exp())
}

/// Cumulants read off the Gaussian exponent of χ, with the fourth-order
/// moment assembled by Wick's theorem around the mean.
pub fn moments(params: &GaussianParams, x: ScaledTime) -> Result<MomentSet> {
    let p = validate(*params)?;
    require_dynamics(&p, x)?;
    let mean_a = amplitude_a(&p, x)?;
    let k = kernel(&p, x);
    let half = p.nbar + 0.5;
    let n_central = half * k.s_tau - 0.5;
    let aa_central = -2.0 * half * k.t_tau;
    let m2 = mean_a.norm_sqr();
    let n_mean = m2 + n_central;
    let a2dag_a2 = n_mean * n_mean + n_mean_excess(mean_a, n_central, aa_central);
    Ok(MomentSet { mean_a, n_mean, aa_central, n_central, a2dag_a2 })
}

/// ⟨a†²a²⟩ − ⟨n⟩² for a Gaussian state; this is Δn² − ⟨n⟩.
fn n_mean_excess(mean_a: Complex64, n_central: f64, aa_central: Complex64) -> f64 {
    let m2 = mean_a.norm_sqr();
    2.0 * m2 * n_central
        + 2.0 * (mean_a.conj() * mean_a.conj() * aa_central).re
        + n_central * n_central
        + aa_central.norm_sqr()
}

/// Mandel parameter Q_M = (Δn² − ⟨n⟩)/⟨n⟩.
///
/// The numerator is formed directly from the cumulants instead of as the
/// difference ⟨a†²a²⟩ − ⟨n⟩², which cancels badly for bright states.
pub fn mandel_q(params: &GaussianParams, x: ScaledTime) -> Result<f64> {
    let m = moments(params, x)?;
    if m.n_mean <= 0.0 {
        return Err(Error::DegenerateState("⟨n⟩ = 0, Mandel Q is undefined".into()));
    }
    Ok(n_mean_excess(m.mean_a, m.n_central, m.aa_central) / m.n_mean)
}
