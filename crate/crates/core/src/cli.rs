//! Command-line front end: argument model, artifact rendering and exit
//! codes. The binary only parses arguments and writes what [`run`] returns.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::charfunc::{chi, mandel_q};
use crate::coherence::{g2, ingredients};
use crate::criteria::{classify, critical_alpha};
use crate::error::{Error, Result};
use crate::figures::{figure, Quantity};
use crate::fock::{with_escalation, FockOracle, DEFAULT_DIM};
use crate::params::{GaussianParams, ScaledTime};
use crate::prep::{p_grid, quadrature_half_width};
use crate::roots::uniform_grid;

/// Overrides the oracle's starting Fock dimension.
pub const DIM_ENV: &str = "NCLAB_DEFAULT_DIM";

/// η used by `oracle-check` for the characteristic function.
pub const CHECK_ETA: Complex64 = Complex64::new(0.3, 0.2);

pub const EXIT_FLAGS: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_NONCLASSICAL: i32 = 4;
pub const EXIT_TRUNCATION: i32 = 5;

#[derive(Debug, Clone, Parser)]
#[command(name = "nclab", version, about = "Nonclassicality diagnostics for displaced-squeezed thermal states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// (x, value) rows of one quantity over [0, x-max]
    Curve,
    /// Criterion verdicts and crossing times as JSON
    Classify,
    /// Coherent amplitude where g²(∞) = g²(0), with θ = 2φ
    CriticalAlpha,
    /// P(β) on a square grid at scaled time --x
    Pmap,
    /// One of the seven reference curves with its caption constants
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=7))]
        number: u8,
    },
    /// Closed form against the truncated Fock model
    OracleCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    #[arg(long, global = true, default_value_t = 0.0)]
    pub nbar: f64,
    #[arg(long, global = true, default_value_t = 0.0)]
    pub r: f64,
    /// Squeeze phase in radians
    #[arg(long, global = true, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
    /// Coherent amplitude |α|
    #[arg(long, global = true, default_value_t = 0.0)]
    pub alpha: f64,
    /// Coherent phase in radians
    #[arg(long, global = true, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    #[arg(long = "t-prep", global = true, default_value_t = 1.0)]
    pub t_prep: f64,
    /// Set θ = 2φ, overriding --theta
    #[arg(long = "amplitude-quadrature", global = true)]
    pub amplitude_quadrature: bool,
    #[arg(long = "x-max", global = true)]
    pub x_max: Option<f64>,
    #[arg(long, global = true, default_value_t = 201)]
    pub points: usize,
    #[arg(long, global = true, value_enum, default_value_t = Quantity::G2)]
    pub quantity: Quantity,
    /// Scaled time for pmap
    #[arg(long, global = true, default_value_t = 0.0)]
    pub x: f64,
    #[arg(long = "half-width", global = true)]
    pub half_width: Option<f64>,
    #[arg(long, global = true, default_value_t = 101)]
    pub grid: usize,
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

pub const DEFAULT_X_MAX: f64 = 3.0;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: GaussianParams,
    pub x_max: Option<f64>,
    pub points: usize,
    pub quantity: Quantity,
    pub x: f64,
    pub half_width: Option<f64>,
    pub grid: usize,
    pub dim: usize,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    /// Validates the flags; `env_dim` is the value of [`DIM_ENV`], if set.
    pub fn from_cli(cli: Cli, env_dim: Option<&str>) -> Result<Self> {
        let o = cli.opts;
        let theta = if o.amplitude_quadrature { 2.0 * o.phi } else { o.theta };
        let params = GaussianParams::new(o.nbar, o.r, theta, o.alpha, o.phi, o.t_prep)?;
        if o.points < 2 {
            return Err(Error::domain("points", format!("need at least 2, got {}", o.points)));
        }
        if let Some(x_max) = o.x_max {
            if !(x_max.is_finite() && x_max > 0.0) {
                return Err(Error::domain("x_max", format!("must be positive, got {x_max}")));
            }
        }
        let dim = match (o.dim, env_dim) {
            (Some(d), _) => d,
            (None, Some(s)) => {
                s.trim().parse().map_err(|_| Error::domain("dim", format!("{DIM_ENV}={s:?} is not a dimension")))?
            }
            (None, None) => DEFAULT_DIM,
        };
        Ok(RunConfig {
            command: cli.command,
            params,
            x_max: o.x_max,
            points: o.points,
            quantity: o.quantity,
            x: o.x,
            half_width: o.half_width,
            grid: o.grid,
            dim,
            output_format: o.format,
            output_path: o.out,
        })
    }

    fn x_max_or(&self, default: f64) -> f64 {
        self.x_max.unwrap_or(default)
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NonclassicalRegion { .. } => EXIT_NONCLASSICAL,
        Error::Truncation { .. } => EXIT_TRUNCATION,
        _ => EXIT_DOMAIN,
    }
}

/// Formats like C's `%.12g`.
pub fn fmt_num(v: f64) -> String {
    const SIG: i32 = 12;
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", (SIG - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-4..SIG).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIG - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `v` rounded to the printed precision.
fn round12(v: f64) -> f64 {
    if v.is_finite() {
        fmt_num(v).parse().unwrap_or(v)
    } else {
        v
    }
}

fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(f) if !n.is_i64() && !n.is_u64() => json!(round12(f)),
            _ => Value::Number(n),
        },
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let v = round_json(serde_json::to_value(value).expect("serializable"));
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn csv<const N: usize>(header: [&str; N], rows: impl IntoIterator<Item = [String; N]>) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

fn curve_rows(params: &GaussianParams, quantity: Quantity, x_max: f64, points: usize) -> Result<Vec<(f64, f64)>> {
    uniform_grid(x_max, points).into_iter().map(|x| Ok((x, quantity.at(params, ScaledTime::new(x)?)?))).collect()
}

fn render_curve(rows: &[(f64, f64)], format: OutputFormat, header: Option<Value>) -> String {
    match format {
        OutputFormat::Csv => {
            let body = csv(["x", "value"], rows.iter().map(|&(x, v)| [fmt_num(x), fmt_num(v)]));
            match header {
                Some(h) => format!("# {}\n{body}", serde_json::to_string(&round_json(h)).expect("json")),
                None => body,
            }
        }
        OutputFormat::Json => {
            let points: Vec<Value> = rows.iter().map(|&(x, v)| json!({"x": x, "value": v})).collect();
            let mut obj = match header {
                Some(Value::Object(m)) => m,
                _ => serde_json::Map::new(),
            };
            obj.insert("points".into(), Value::Array(points));
            to_json(&Value::Object(obj))
        }
    }
}

/// Executes one command and returns the artifact text.
pub fn run(config: &RunConfig) -> Result<String> {
    let p = &config.params;
    match config.command {
        Command::Curve => {
            let rows = curve_rows(p, config.quantity, config.x_max_or(DEFAULT_X_MAX), config.points)?;
            let header = json!({"quantity": config.quantity.name(), "params": p});
            let header = (config.output_format == OutputFormat::Json).then_some(header);
            Ok(render_curve(&rows, config.output_format, header))
        }
        Command::Classify => Ok(to_json(&classify(p, config.x_max_or(DEFAULT_X_MAX), config.points)?)),
        Command::CriticalAlpha => {
            let a = critical_alpha(p.nbar, p.r)?;
            Ok(match config.output_format {
                OutputFormat::Csv => csv(["nbar", "r", "alpha_c"], [[fmt_num(p.nbar), fmt_num(p.r), fmt_num(a)]]),
                OutputFormat::Json => to_json(&json!({"nbar": p.nbar, "r": p.r, "alpha_c": a})),
            })
        }
        Command::Pmap => {
            let x = ScaledTime::new(config.x)?;
            let half_width = match config.half_width {
                Some(w) => w,
                None => quadrature_half_width(p, x)?,
            };
            let samples = p_grid(p, x, half_width, config.grid)?;
            Ok(match config.output_format {
                OutputFormat::Csv => {
                    csv(["re", "im", "p"], samples.iter().map(|s| [fmt_num(s.re), fmt_num(s.im), fmt_num(s.p)]))
                }
                OutputFormat::Json => to_json(&json!({
                    "x": config.x, "half_width": half_width, "grid": config.grid, "samples": samples,
                })),
            })
        }
        Command::Figure { number } => {
            let fig = figure(number)?;
            let x_max = config.x_max_or(fig.x_max);
            let rows = curve_rows(&fig.params, fig.quantity, x_max, config.points)?;
            let caption: BTreeMap<_, _> = fig.caption.iter().map(|c| (c.name, c.value)).collect();
            let computed = fig.check()?.into_iter().map(|(c, v)| (c.name, v)).collect::<BTreeMap<_, _>>();
            let header = json!({
                "figure": number,
                "quantity": fig.quantity.name(),
                "params": fig.params,
                "x_max": x_max,
                "caption": caption,
                "computed": computed,
            });
            Ok(render_curve(&rows, config.output_format, Some(header)))
        }
        Command::OracleCheck => oracle_check(config),
    }
}

#[derive(Debug, Clone, Serialize)]
struct CheckRow {
    x: f64,
    quantity: &'static str,
    closed_form: f64,
    oracle: f64,
    abs_delta: f64,
    rel_delta: f64,
}

fn oracle_check(config: &RunConfig) -> Result<String> {
    let p = &config.params;
    let xs = uniform_grid(config.x_max_or(1.0), config.points);
    let etas = [CHECK_ETA];
    let (observed, dim) = with_escalation(config.dim, |d| {
        let oracle = FockOracle::new(p, d)?;
        let obs = xs.iter().map(|&x| oracle.observables(ScaledTime::new(x)?, &etas)).collect::<Result<Vec<_>>>()?;
        Ok((obs, d))
    })?;
    let mut rows = Vec::new();
    for (&x, obs) in xs.iter().zip(&observed) {
        let t = ScaledTime::new(x)?;
        let c = chi(p, t, CHECK_ETA)?;
        let pairs = [
            ("g2", g2(p, t)?, obs.g2),
            ("n_mean", ingredients(p, t)?.mean_n_tau, obs.moments.n_mean),
            ("mandel_q", mandel_q(p, t)?, obs.moments.mandel_q()?),
            ("chi_re", c.re, obs.chi[0].re),
            ("chi_im", c.im, obs.chi[0].im),
        ];
        for (quantity, closed_form, oracle) in pairs {
            let abs_delta = (closed_form - oracle).abs();
            let rel_delta = if closed_form != 0.0 { abs_delta / closed_form.abs() } else { abs_delta };
            rows.push(CheckRow { x, quantity, closed_form, oracle, abs_delta, rel_delta });
        }
    }
    Ok(match config.output_format {
        OutputFormat::Csv => csv(
            ["x", "quantity", "closed_form", "oracle", "abs_delta", "rel_delta", "dim"],
            rows.iter().map(|r| {
                [
                    fmt_num(r.x),
                    r.quantity.to_string(),
                    fmt_num(r.closed_form),
                    fmt_num(r.oracle),
                    fmt_num(r.abs_delta),
                    fmt_num(r.rel_delta),
                    dim.to_string(),
                ]
            }),
        ),
        OutputFormat::Json => to_json(&json!({"params": p, "dim": dim, "eta": CHECK_ETA, "rows": rows})),
    })
}
