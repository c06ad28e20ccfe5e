//! Glauber–Sudarshan P-representation of the evolved Gaussian state.
//!
//! ```text
//! P(β) = (2/π) (4a²b² − c²)^{-1/2} exp[−(a²f² + b²d² + cfd) / (4a²b² − c²)]
//! a² = −½ + (n̄+½)(T + T* + S)      d = i(A − A* − β + β*)
//! b² = −½ − (n̄+½)(T + T* − S)      f = A + A* − β − β*
//! c  = −2i (n̄+½)(T* − T)
//! ```
//!
//! P exists as a genuine density iff (2n̄+1) e^{−2(x+r)} ≥ 1, independently
//! of the coherent amplitude.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::charfunc::kernel;
use crate::coherence::{amplitude_a, realify};
use crate::error::{Error, Result};
use crate::params::{require_dynamics, validate, GaussianParams, ScaledTime};

/// Coherent-state label β.
pub type PhasePoint = Complex64;

/// Margins closer to zero than this are the delta-function boundary.
pub const DELTA_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PCoefficients {
    pub a_sq: f64,
    pub b_sq: f64,
    pub c_coef: f64,
    /// 4a²b² − c²
    pub discriminant: f64,
    /// Eigenvalues of the quadratic form in (Re(A−β), Im(A−β)).
    pub eig_plus: f64,
    pub eig_minus: f64,
}

pub fn p_coefficients(params: &GaussianParams, x: ScaledTime) -> Result<PCoefficients> {
    let p = validate(*params)?;
    require_dynamics(&p, x)?;
    let k = kernel(&p, x);
    let half = p.nbar + 0.5;
    let t = k.t_tau;
    let a_sq = -0.5 + half * (2.0 * t.re + k.s_tau);
    let b_sq = -0.5 - half * (2.0 * t.re - k.s_tau);
    let c = Complex64::new(0.0, -2.0) * half * (t.conj() - t);
    let c_coef = realify(c, "c_coef")?;
    let y = 2.0 * (x.value() + p.r);
    let k2 = 2.0 * p.nbar + 1.0;
    Ok(PCoefficients {
        a_sq,
        b_sq,
        c_coef,
        discriminant: 4.0 * a_sq * b_sq - c_coef * c_coef,
        eig_plus: 2.0 * (-1.0 + k2 * y.exp()),
        eig_minus: 2.0 * (-1.0 + k2 * (-y).exp()),
    })
}

/// (2n̄+1) e^{−2(x+r)} − 1: nonnegative where P(β) is a distribution,
/// negative where the state is nonclassical.
pub fn p_exists_margin(params: &GaussianParams, x: ScaledTime) -> f64 {
    (2.0 * params.nbar + 1.0) * (-2.0 * (x.value() + params.r)).exp() - 1.0
}

/// Where the P-existence margin changes sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "x")]
pub enum PThreshold {
    /// Classical for x ≤ x*, nonclassical afterwards.
    Crossing(f64),
    /// Nonclassical from x = 0 on.
    Nonclassical,
    /// Margin exactly zero at x = 0 (n̄ = 0, r = 0); classical there only.
    Boundary,
}

impl PThreshold {
    pub fn crossing(self) -> Option<f64> {
        match self {
            PThreshold::Crossing(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_boundary(self) -> bool {
        matches!(self, PThreshold::Boundary)
    }
}

/// x* = ln(2n̄+1)/2 − r.
pub fn p_threshold(nbar: f64, r: f64) -> PThreshold {
    let x_star = 0.5 * (2.0 * nbar + 1.0).ln() - r;
    if x_star > 0.0 {
        PThreshold::Crossing(x_star)
    } else if x_star == 0.0 {
        PThreshold::Boundary
    } else {
        PThreshold::Nonclassical
    }
}

/// Value of P(β); only defined strictly inside the classical region.
pub fn p_value(params: &GaussianParams, x: ScaledTime, beta: PhasePoint) -> Result<f64> {
    let p = validate(*params)?;
    let margin = p_exists_margin(&p, x);
    let center = amplitude_a(&p, x)?;
    if margin.abs() < DELTA_MARGIN {
        return Err(Error::DegenerateDistribution { center });
    }
    if margin < 0.0 {
        return Err(Error::NonclassicalRegion { margin });
    }
    let coef = p_coefficients(&p, x)?;
    Ok(density(&coef, center, beta))
}

fn density(coef: &PCoefficients, center: Complex64, beta: PhasePoint) -> f64 {
    let delta = center - beta;
    let f = 2.0 * delta.re;
    let d = -2.0 * delta.im;
    let disc = coef.discriminant;
    let q = coef.a_sq * f * f + coef.b_sq * d * d + coef.c_coef * f * d;
    2.0 / (PI * disc.sqrt()) * (-q / disc).exp()
}

/// Half-width of the square quadrature window centered at the origin:
/// max(6 √(n̄+1) e^{x+r}, |A(τ)| + 8).
pub fn quadrature_half_width(params: &GaussianParams, x: ScaledTime) -> Result<f64> {
    let a = amplitude_a(params, x)?;
    let spread = 6.0 * (params.nbar + 1.0).sqrt() * (x.value() + params.r).exp();
    Ok(spread.max(a.norm() + 8.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PSample {
    pub re: f64,
    pub im: f64,
    pub p: f64,
}

/// P(β) at the midpoints of an `n × n` grid covering
/// [−half_width, half_width]², real part outermost.
pub fn p_grid(params: &GaussianParams, x: ScaledTime, half_width: f64, n: usize) -> Result<Vec<PSample>> {
    if !(half_width.is_finite() && half_width > 0.0) {
        return Err(Error::domain("half_width", format!("must be positive, got {half_width}")));
    }
    if n == 0 {
        return Err(Error::domain("grid", "needs at least one point per axis"));
    }
    // Surface NonclassicalRegion / DegenerateDistribution before the sweep.
    p_value(params, x, Complex64::new(0.0, 0.0))?;
    let coef = p_coefficients(params, x)?;
    let center = amplitude_a(params, x)?;
    let step = 2.0 * half_width / n as f64;
    let coord = |i: usize| -half_width + (i as f64 + 0.5) * step;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let beta = Complex64::new(coord(i), coord(j));
            out.push(PSample { re: beta.re, im: beta.im, p: density(&coef, center, beta) });
        }
    }
    Ok(out)
}
