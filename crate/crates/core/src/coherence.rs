//! Two-time second-order coherence g²(τ) in closed form.
//!
//! ```text
//! g²(τ) = 1 + (n² + s² + u n − v s) / (⟨n(0)⟩ ⟨n(τ)⟩)
//! n(τ)  = (n̄+½) cosh(x+2r) − ½ cosh x
//! s(τ)  = (n̄+½) sinh(x+2r) − ½ sinh x
//! u(τ)  = α A* + α* A
//! v(τ)  = α A e^{−iθ} + α* A* e^{iθ}
//! ⟨n(τ)⟩ = (n̄+½) cosh 2(x+r) + |A|² − ½
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{require_dynamics, validate, GaussianParams, ScaledTime};

/// Beyond this value of `x + 2r` every g² evaluation uses the analytic limit.
pub const OVERFLOW_GUARD: f64 = 350.0;

/// Largest imaginary part tolerated before a nominally real quantity is
/// realified.
pub const REALNESS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherenceIngredients {
    pub a_tau: Complex64,
    pub n_tau: f64,
    pub s_tau: f64,
    pub u_tau: f64,
    pub v_tau: f64,
    pub mean_n0: f64,
    pub mean_n_tau: f64,
}

fn coth_half(r: f64) -> f64 {
    1.0 / (0.5 * r).tanh()
}

/// Mean field ⟨a(τ)⟩ = A(τ).
pub fn amplitude_a(params: &GaussianParams, x: ScaledTime) -> Result<Complex64> {
    let p = validate(*params)?;
    let alpha = p.alpha();
    if x.value() == 0.0 {
        return Ok(alpha);
    }
    require_dynamics(&p, x)?;
    let x = x.value();
    let (ch, sh) = (x.cosh(), x.sinh());
    let k = coth_half(p.r);
    let same = ch + 0.5 * k * sh - 0.5 * (ch - 1.0);
    let mixed = -0.5 * sh - 0.5 * k * (ch - 1.0);
    // α e^{i(θ−2φ)} = α* e^{iθ}
    Ok(alpha * same + alpha.conj() * Complex64::from_polar(1.0, p.theta) * mixed)
}

/// Realifies `z`, failing when its imaginary part is not negligible.
pub(crate) fn realify(z: Complex64, what: &'static str) -> Result<f64> {
    if z.im.abs() <= REALNESS_TOL * z.re.abs().max(1.0) {
        Ok(z.re)
    } else {
        Err(Error::domain(what, format!("expected a real value, imaginary part {:e}", z.im)))
    }
}

pub fn ingredients(params: &GaussianParams, x: ScaledTime) -> Result<CoherenceIngredients> {
    let p = validate(*params)?;
    let a_tau = amplitude_a(&p, x)?;
    let alpha = p.alpha();
    let half = p.nbar + 0.5;
    let xv = x.value();
    let n_tau = half * (xv + 2.0 * p.r).cosh() - 0.5 * xv.cosh();
    let s_tau = half * (xv + 2.0 * p.r).sinh() - 0.5 * xv.sinh();
    let u_tau = 2.0 * (alpha * a_tau.conj()).re;
    let rot = Complex64::from_polar(1.0, -p.theta);
    let v = alpha * a_tau * rot + (alpha * a_tau * rot).conj();
    let v_tau = realify(v, "v_tau")?;
    let mean_n_tau = half * (2.0 * (xv + p.r)).cosh() + a_tau.norm_sqr() - 0.5;
    Ok(CoherenceIngredients { a_tau, n_tau, s_tau, u_tau, v_tau, mean_n0: p.mean_photon_number(), mean_n_tau })
}

fn require_photons(mean_n0: f64) -> Result<()> {
    if mean_n0 > 0.0 {
        Ok(())
    } else {
        Err(Error::DegenerateState("⟨n(0)⟩ = 0, g² is undefined for the vacuum".into()))
    }
}

/// Degree of second-order coherence at scaled delay `x`.
pub fn g2(params: &GaussianParams, x: ScaledTime) -> Result<f64> {
    let p = validate(*params)?;
    require_photons(p.mean_photon_number())?;
    if x.value() + 2.0 * p.r > OVERFLOW_GUARD {
        require_dynamics(&p, x)?;
        return g2_asymptote(&p);
    }
    let ing = ingredients(&p, x)?;
    if ing.mean_n_tau <= 0.0 {
        return Err(Error::DegenerateState("⟨n(τ)⟩ = 0".into()));
    }
    let num = ing.n_tau * ing.n_tau + ing.s_tau * ing.s_tau + ing.u_tau * ing.n_tau - ing.v_tau * ing.s_tau;
    Ok(1.0 + num / (ing.mean_n0 * ing.mean_n_tau))
}

/// lim_{x→∞} g²(x).
///
/// All growing pieces are pulled out analytically: n and s both approach
/// e^x [(n̄+½)e^{2r} − ½]/2, A(τ) approaches e^x κ with
/// κ = (1 + coth(r/2))(α − α* e^{iθ})/4, and ⟨n(τ)⟩ approaches
/// e^{2x} [(n̄+½)e^{2r}/2 + |κ|²]. The e^{2x} cancels between numerator and
/// denominator.
pub fn g2_asymptote(params: &GaussianParams) -> Result<f64> {
    let p = validate(*params)?;
    if p.r == 0.0 {
        return Err(Error::domain("r", "the long-time limit requires r > 0"));
    }
    let mean_n0 = p.mean_photon_number();
    require_photons(mean_n0)?;
    let half = p.nbar + 0.5;
    let e2r = (2.0 * p.r).exp();
    let alpha = p.alpha();
    let n_lim = 0.5 * (half * e2r - 0.5);
    let kappa = 0.25 * (1.0 + coth_half(p.r)) * (alpha - alpha.conj() * Complex64::from_polar(1.0, p.theta));
    let u_lim = 2.0 * (alpha * kappa.conj()).re;
    let v_lim = 2.0 * (alpha * kappa * Complex64::from_polar(1.0, -p.theta)).re;
    let mean_lim = 0.5 * half * e2r + kappa.norm_sqr();
    let num = 2.0 * n_lim * n_lim + (u_lim - v_lim) * n_lim;
    Ok(1.0 + num / (mean_n0 * mean_lim))
}
