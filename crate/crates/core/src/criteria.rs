//! Nonclassicality criteria and regime classification over scaled time.
//!
//! Every criterion is reduced to a signed margin that is positive exactly
//! when the criterion signals nonclassical light. A margin of zero is
//! reported as classical and flagged as a boundary.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::charfunc::mandel_q;
use crate::coherence::{g2, g2_asymptote};
use crate::error::{Error, Result};
use crate::params::{validate, GaussianParams, ScaledTime};
use crate::prep::p_exists_margin;
use crate::roots::{bisect, sign_change_brackets, uniform_grid};

/// Minimum number of scan points used to bracket crossings.
pub const DEFAULT_SCAN_POINTS: usize = 2048;
/// Bisection tolerance on crossing times.
pub const CROSSING_TOL: f64 = 1e-10;
/// Bisection tolerance on the critical amplitude.
pub const CRITICAL_ALPHA_TOL: f64 = 1e-6;
/// Largest amplitude tried when bracketing the critical amplitude.
pub const CRITICAL_ALPHA_MAX: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// g²(0) < 1
    SubPoissonian,
    /// g²(0) < g²(x)
    Antibunching,
    /// |g²(0) − 1| < |g²(x) − 1|
    RcInequality,
    /// Q_M(x) < 0
    MandelQ,
    /// (2n̄+1) e^{−2(x+r)} < 1, P(β) ceases to be a distribution
    PExistence,
}

impl Criterion {
    pub const ALL: [Criterion; 5] = [
        Criterion::SubPoissonian,
        Criterion::Antibunching,
        Criterion::RcInequality,
        Criterion::MandelQ,
        Criterion::PExistence,
    ];

    /// Criteria whose margin depends on x and can therefore cross zero.
    pub const TIME_DEPENDENT: [Criterion; 4] =
        [Criterion::Antibunching, Criterion::RcInequality, Criterion::MandelQ, Criterion::PExistence];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::SubPoissonian => "sub_poissonian",
            Criterion::Antibunching => "antibunching",
            Criterion::RcInequality => "rc_inequality",
            Criterion::MandelQ => "mandel_q",
            Criterion::PExistence => "p_existence",
        }
    }

    /// Signed margin, positive ⇔ nonclassical.
    pub fn margin(self, params: &GaussianParams, x: ScaledTime) -> Result<f64> {
        match self {
            Criterion::SubPoissonian => Ok(1.0 - g2(params, ScaledTime::ZERO)?),
            Criterion::Antibunching => Ok(g2(params, x)? - g2(params, ScaledTime::ZERO)?),
            Criterion::RcInequality => Ok(-rc_margin(params, x)?),
            Criterion::MandelQ => Ok(-mandel_q(params, x)?),
            Criterion::PExistence => Ok(-p_exists_margin(params, x)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub sub_poissonian: bool,
    pub antibunched_at_x: bool,
    pub rc_criterion_at_x: bool,
    pub mandel_negative_at_x: bool,
    pub p_nonclassical_at_x: bool,
    /// Criteria whose margin is exactly zero here.
    pub boundary: Vec<Criterion>,
}

impl CriterionVerdict {
    pub fn get(&self, criterion: Criterion) -> bool {
        match criterion {
            Criterion::SubPoissonian => self.sub_poissonian,
            Criterion::Antibunching => self.antibunched_at_x,
            Criterion::RcInequality => self.rc_criterion_at_x,
            Criterion::MandelQ => self.mandel_negative_at_x,
            Criterion::PExistence => self.p_nonclassical_at_x,
        }
    }
}

/// |g²(0) − 1| − |g²(x) − 1|; negative where the rc inequality signals
/// nonclassical light.
pub fn rc_margin(params: &GaussianParams, x: ScaledTime) -> Result<f64> {
    Ok((g2(params, ScaledTime::ZERO)? - 1.0).abs() - (g2(params, x)? - 1.0).abs())
}

/// Long-time limit of [`rc_margin`].
pub fn rc_margin_asymptote(params: &GaussianParams) -> Result<f64> {
    Ok((g2(params, ScaledTime::ZERO)? - 1.0).abs() - (g2_asymptote(params)? - 1.0).abs())
}

pub fn evaluate(params: &GaussianParams, x: ScaledTime) -> Result<CriterionVerdict> {
    let p = validate(*params)?;
    let g0 = g2(&p, ScaledTime::ZERO)?;
    let gx = g2(&p, x)?;
    let margins = [
        (Criterion::SubPoissonian, 1.0 - g0),
        (Criterion::Antibunching, gx - g0),
        (Criterion::RcInequality, (gx - 1.0).abs() - (g0 - 1.0).abs()),
        (Criterion::MandelQ, -mandel_q(&p, x)?),
        (Criterion::PExistence, -p_exists_margin(&p, x)),
    ];
    let on = |c: Criterion| margins.iter().any(|&(k, m)| k == c && m > 0.0);
    Ok(CriterionVerdict {
        sub_poissonian: on(Criterion::SubPoissonian),
        antibunched_at_x: on(Criterion::Antibunching),
        rc_criterion_at_x: on(Criterion::RcInequality),
        mandel_negative_at_x: on(Criterion::MandelQ),
        p_nonclassical_at_x: on(Criterion::PExistence),
        boundary: margins.iter().filter(|(_, m)| *m == 0.0).map(|&(k, _)| k).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictPoint {
    pub x: f64,
    pub verdict: CriterionVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Asymptotes {
    pub g2_inf: f64,
    pub rc_margin_inf: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub params: GaussianParams,
    pub x_max: f64,
    /// False when θ ≠ 2φ.
    pub amplitude_quadrature: bool,
    pub verdict_curve: Vec<VerdictPoint>,
    /// Sorted crossing times of each time-dependent margin.
    pub crossings: BTreeMap<Criterion, Vec<f64>>,
    pub asymptotes: Asymptotes,
}

/// Crossing times of one criterion's margin on `[0, x_max]`.
pub fn crossings(params: &GaussianParams, criterion: Criterion, x_max: f64, scan_points: usize) -> Result<Vec<f64>> {
    let xs = uniform_grid(x_max, scan_points.max(2));
    let margin = |x: f64| criterion.margin(params, ScaledTime::new(x)?);
    let values = xs.iter().map(|&x| margin(x)).collect::<Result<Vec<_>>>()?;
    sign_change_brackets(&xs, &values).into_iter().map(|(lo, hi)| bisect(margin, lo, hi, CROSSING_TOL)).collect()
}

/// Verdicts on an `n_points` grid over `[0, x_max]` plus refined crossings
/// found on a grid of at least [`DEFAULT_SCAN_POINTS`].
pub fn classify(params: &GaussianParams, x_max: f64, n_points: usize) -> Result<ClassificationReport> {
    let p = validate(*params)?;
    if !(x_max.is_finite() && x_max > 0.0) {
        return Err(Error::domain("x_max", format!("must be positive, got {x_max}")));
    }
    if n_points < 2 {
        return Err(Error::domain("points", format!("need at least 2, got {n_points}")));
    }
    if p.r == 0.0 {
        return Err(Error::domain("r", "classification over time requires r > 0"));
    }
    let verdict_curve = uniform_grid(x_max, n_points)
        .into_iter()
        .map(|x| Ok(VerdictPoint { x, verdict: evaluate(&p, ScaledTime::new(x)?)? }))
        .collect::<Result<Vec<_>>>()?;
    let scan = n_points.max(DEFAULT_SCAN_POINTS);
    let mut found = BTreeMap::new();
    for c in Criterion::TIME_DEPENDENT {
        found.insert(c, crossings(&p, c, x_max, scan)?);
    }
    Ok(ClassificationReport {
        params: p,
        x_max,
        amplitude_quadrature: p.is_amplitude_quadrature(),
        verdict_curve,
        crossings: found,
        asymptotes: Asymptotes { g2_inf: g2_asymptote(&p)?, rc_margin_inf: rc_margin_asymptote(&p)? },
    })
}

/// g²(∞) − g²(0) for amplitude-quadrature squeezing at amplitude `alpha`.
pub fn long_time_shift(nbar: f64, r: f64, alpha: f64) -> Result<f64> {
    let p = GaussianParams::amplitude_quadrature(nbar, r, alpha, 0.0)?;
    Ok(g2_asymptote(&p)? - g2(&p, ScaledTime::ZERO)?)
}

/// Coherent amplitude |α_c| at which g²(∞) = g²(0), with θ = 2φ.
pub fn critical_alpha(nbar: f64, r: f64) -> Result<f64> {
    if r.is_nan() || r <= 0.0 {
        return Err(Error::domain("r", "critical amplitude requires r > 0"));
    }
    let shift = |a: f64| long_time_shift(nbar, r, a);
    let s0 = shift(0.0)?;
    if s0 == 0.0 {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    loop {
        let s = shift(hi)?;
        if s == 0.0 {
            return Ok(hi);
        }
        if s.signum() != s0.signum() {
            break;
        }
        if hi >= CRITICAL_ALPHA_MAX {
            return Err(Error::NoBracket { upper: hi });
        }
        hi = (2.0 * hi).min(CRITICAL_ALPHA_MAX);
    }
    bisect(shift, 0.0, hi, CRITICAL_ALPHA_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(x: f64) -> ScaledTime {
        ScaledTime::new(x).unwrap()
    }

    fn aq(nbar: f64, r: f64, alpha: f64) -> GaussianParams {
        GaussianParams::amplitude_quadrature(nbar, r, alpha, 0.0).unwrap()
    }

    #[test]
    fn cold_undisplaced_state_violates_coherence_criteria() {
        let v = evaluate(&aq(0.1, 0.1, 0.0), st(1.0)).unwrap();
        assert!(!v.sub_poissonian && !v.antibunched_at_x && !v.rc_criterion_at_x);
        assert!(v.p_nonclassical_at_x);
    }

    #[test]
    fn displaced_state_satisfies_both_coherence_inequalities() {
        let v = evaluate(&aq(0.1, 0.1, 2.0), st(1.0)).unwrap();
        assert!(v.sub_poissonian && v.antibunched_at_x);
    }

    #[test]
    fn coherent_state_is_classical_on_the_boundary() {
        let p = GaussianParams::new(0.0, 0.0, 0.0, 1.0, 0.4, 1.0).unwrap();
        let v = evaluate(&p, ScaledTime::ZERO).unwrap();
        for c in Criterion::ALL {
            assert!(!v.get(c), "{c:?}");
        }
        assert!(v.boundary.contains(&Criterion::PExistence));
        assert!(v.boundary.contains(&Criterion::SubPoissonian));
    }

    #[test]
    fn vacuum_cannot_be_evaluated() {
        let p = GaussianParams::new(0.0, 0.0, 0.0, 0.0, 0.0, 1.0).unwrap();
        assert!(matches!(evaluate(&p, ScaledTime::ZERO), Err(Error::DegenerateState(_))));
    }

    #[test]
    fn rc_asymptotes_match_reference_values() {
        assert!((rc_margin_asymptote(&aq(0.1, 0.1, 0.0)).unwrap() - 1.5022).abs() < 5e-4);
        assert!((rc_margin_asymptote(&aq(1.0, 0.1, 0.0)).unwrap() - 0.1457).abs() < 5e-4);
        assert!((rc_margin_asymptote(&aq(0.1, 0.1, 2.0)).unwrap() + 0.0155).abs() < 5e-4);
    }

    #[test]
    fn hot_state_crossings() {
        let report = classify(&aq(1.0, 0.1, 0.0), 3.0, 64).unwrap();
        let c = &report.crossings;
        assert_eq!(c[&Criterion::Antibunching].len(), 1);
        assert!((c[&Criterion::Antibunching][0] - 0.5605).abs() < 1e-3);
        assert!((c[&Criterion::RcInequality][0] - 0.5605).abs() < 1e-3);
        assert!((c[&Criterion::PExistence][0] - 0.4493).abs() < 1e-4);
        assert!(report.amplitude_quadrature);
    }

    #[test]
    fn displaced_state_crossings() {
        let report = classify(&aq(0.1, 0.1, 2.0), 4.0, 16).unwrap();
        let c = &report.crossings;
        assert!((c[&Criterion::RcInequality][0] - 2.5793).abs() < 1e-3);
        assert!((c[&Criterion::MandelQ][0] - 1.7704).abs() < 1e-3);
    }

    #[test]
    fn cold_state_has_no_coherence_crossings() {
        let report = classify(&aq(0.1, 0.1, 0.0), 3.0, 32).unwrap();
        assert!(report.crossings[&Criterion::Antibunching].is_empty());
        assert!(report.crossings[&Criterion::RcInequality].is_empty());
        assert!(report.crossings[&Criterion::PExistence].is_empty());
        assert!(report.verdict_curve.iter().all(|v| v.verdict.p_nonclassical_at_x));
    }

    #[test]
    fn classify_flags_other_phases() {
        let p = GaussianParams::new(1.0, 0.1, 0.5, 0.0, 0.0, 1.0).unwrap();
        assert!(!classify(&p, 1.0, 8).unwrap().amplitude_quadrature);
    }

    #[test]
    fn classify_rejects_bad_grid() {
        assert!(classify(&aq(1.0, 0.1, 0.0), 0.0, 8).is_err());
        assert!(classify(&aq(1.0, 0.1, 0.0), 1.0, 1).is_err());
        assert!(classify(&aq(1.0, 0.0, 1.0), 1.0, 8).is_err());
    }

    #[test]
    fn critical_amplitude() {
        let a = critical_alpha(0.1, 0.1).unwrap();
        assert!((a - 0.45397).abs() < 1e-4, "{a}");
        assert!(long_time_shift(0.1, 0.1, 0.6).unwrap() > 0.0);
        assert!(long_time_shift(0.1, 0.1, 0.3).unwrap() < 0.0);
        assert!(critical_alpha(0.1, 0.0).is_err());
    }
}
