//! Parameter sets and caption constants of the seven reference curves.

use serde::{Deserialize, Serialize};

use crate::charfunc::mandel_q;
use crate::coherence::{g2, g2_asymptote};
use crate::criteria::{crossings, rc_margin, rc_margin_asymptote, Criterion, DEFAULT_SCAN_POINTS};
use crate::error::{Error, Result};
use crate::params::{GaussianParams, ScaledTime};
use crate::prep::p_exists_margin;

/// A scalar curve over scaled time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// g²(x)
    G2,
    /// |g²(0) − 1| − |g²(x) − 1|
    Rc,
    /// Mandel Q_M(x)
    Qm,
    /// (2n̄+1) e^{−2(x+r)} − 1
    Pmargin,
}

impl Quantity {
    pub fn at(self, params: &GaussianParams, x: ScaledTime) -> Result<f64> {
        match self {
            Quantity::G2 => g2(params, x),
            Quantity::Rc => rc_margin(params, x),
            Quantity::Qm => mandel_q(params, x),
            Quantity::Pmargin => Ok(p_exists_margin(params, x)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Quantity::G2 => "g2",
            Quantity::Rc => "rc",
            Quantity::Qm => "qm",
            Quantity::Pmargin => "pmargin",
        }
    }
}

/// A caption constant and its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaptionValue {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Figure {
    pub number: u8,
    pub quantity: Quantity,
    pub params: GaussianParams,
    pub x_max: f64,
    pub caption: Vec<CaptionValue>,
}

const fn cap(name: &'static str, value: f64, tolerance: f64) -> CaptionValue {
    CaptionValue { name, value, tolerance }
}

pub fn figure(number: u8) -> Result<Figure> {
    let cold = |alpha: f64| GaussianParams::amplitude_quadrature(0.1, 0.1, alpha, 0.0);
    let (quantity, params, caption) = match number {
        1 => (Quantity::G2, cold(0.0)?, vec![cap("g2_0", 3.1625, 5e-4), cap("g2_inf", 1.6603, 5e-4)]),
        2 => (Quantity::Rc, cold(0.0)?, vec![cap("rc_inf", 1.5022, 5e-4)]),
        3 => (Quantity::G2, cold(2.0)?, vec![cap("g2_0", 0.9975, 5e-4), cap("g2_inf", 1.0180, 5e-4)]),
        4 => (Quantity::Rc, cold(2.0)?, vec![cap("rc_inf", -0.0155, 5e-4), cap("rc_crossing", 2.5793, 1e-3)]),
        5 => (
            Quantity::G2,
            GaussianParams::amplitude_quadrature(1.0, 0.1, 0.0, 0.0)?,
            vec![cap("g2_0", 2.0859, 5e-4), cap("g2_inf", 1.9402, 5e-4), cap("antibunching_crossing", 0.5605, 1e-3)],
        ),
        6 => (
            Quantity::Rc,
            GaussianParams::amplitude_quadrature(1.0, 0.1, 0.0, 0.0)?,
            vec![cap("rc_inf", 0.1457, 5e-4), cap("rc_crossing", 0.5605, 1e-3)],
        ),
        7 => (Quantity::Qm, cold(2.0)?, vec![cap("qm_0", -0.0104, 5e-4), cap("mandel_crossing", 1.7704, 1e-3)]),
        _ => return Err(Error::domain("figure", format!("must be 1..=7, got {number}"))),
    };
    Ok(Figure { number, quantity, params, x_max: 5.0, caption })
}

fn first_crossing(params: &GaussianParams, c: Criterion, x_max: f64) -> Result<f64> {
    crossings(params, c, x_max, DEFAULT_SCAN_POINTS)?.first().copied().ok_or(Error::NoBracket { upper: x_max })
}

impl Figure {
    /// Recomputes one caption constant from the closed forms.
    pub fn compute(&self, name: &str) -> Result<f64> {
        let p = &self.params;
        match name {
            "g2_0" => g2(p, ScaledTime::ZERO),
            "g2_inf" => g2_asymptote(p),
            "rc_inf" => rc_margin_asymptote(p),
            "qm_0" => mandel_q(p, ScaledTime::ZERO),
            "rc_crossing" => first_crossing(p, Criterion::RcInequality, self.x_max),
            "antibunching_crossing" => first_crossing(p, Criterion::Antibunching, self.x_max),
            "mandel_crossing" => first_crossing(p, Criterion::MandelQ, self.x_max),
            other => Err(Error::domain("caption", format!("unknown constant {other}"))),
        }
    }

    /// (caption constant, recomputed value) pairs.
    pub fn check(&self) -> Result<Vec<(CaptionValue, f64)>> {
        self.caption.iter().map(|c| Ok((*c, self.compute(c.name)?))).collect()
    }
}
