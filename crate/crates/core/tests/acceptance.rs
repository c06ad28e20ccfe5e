//! Acceptance gate: reproduces the reference numbers and the oracle and
//! identity checks, printing one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the summary is always visible.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use nclab::charfunc::{kernel, mandel_q};
use nclab::criteria::{crossings, rc_margin_asymptote, DEFAULT_SCAN_POINTS};
use nclab::fock::{max_abs_diff, with_escalation, FockOracle, DEFAULT_DIM};
use nclab::prep::{p_grid, quadrature_half_width};
use nclab::{
    amplitude_a, chi, critical_alpha, evaluate, g2, g2_asymptote, ingredients, moments, p_exists_margin, p_threshold,
    Complex64, Criterion, Error, GaussianParams, ScaledTime,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn st(x: f64) -> ScaledTime {
    ScaledTime::new(x).unwrap()
}

fn cold(alpha: f64) -> GaussianParams {
    GaussianParams::amplitude_quadrature(0.1, 0.1, alpha, 0.0).unwrap()
}

fn hot() -> GaussianParams {
    GaussianParams::amplitude_quadrature(1.0, 0.1, 0.0, 0.0).unwrap()
}

/// Collects `name=value (target ± tol)` checks and fails if any misses.
#[derive(Default)]
struct Checks {
    parts: Vec<String>,
    failed: bool,
}

impl Checks {
    fn near(&mut self, name: &str, got: f64, want: f64, tol: f64) {
        let ok = (got - want).abs() <= tol;
        self.failed |= !ok;
        self.parts.push(format!("{name}={got:.6} (want {want} ± {tol:e}){}", if ok { "" } else { " MISS" }));
    }

    fn holds(&mut self, name: &str, ok: bool) {
        self.failed |= !ok;
        self.parts.push(format!("{name}={ok}"));
    }

    fn finish(self) -> Outcome {
        let s = self.parts.join(", ");
        if self.failed {
            Err(s)
        } else {
            Ok(s)
        }
    }
}

fn err(e: Error) -> String {
    format!("error: {e}")
}

fn first_crossing(p: &GaussianParams, c: Criterion) -> Result<f64, String> {
    crossings(p, c, 5.0, DEFAULT_SCAN_POINTS)
        .map_err(err)?
        .first()
        .copied()
        .ok_or_else(|| format!("no {} crossing", c.name()))
}

/// x values on (0, 5] used for "holds everywhere" checks.
fn fine_grid() -> impl Iterator<Item = f64> {
    (1..=5000).map(|i| i as f64 * 1e-3)
}

fn criterion_1() -> Outcome {
    let p = cold(0.0);
    let mut c = Checks::default();
    c.near("g2(0)", g2(&p, ScaledTime::ZERO).map_err(err)?, 3.1625, 5e-4);
    c.near("g2(inf)", g2_asymptote(&p).map_err(err)?, 1.6603, 5e-4);
    c.finish()
}

fn criterion_2() -> Outcome {
    let p = cold(0.0);
    let mut c = Checks::default();
    c.near("rc(inf)", rc_margin_asymptote(&p).map_err(err)?, 1.5022, 5e-4);
    let mut never = true;
    for x in fine_grid() {
        never &= !evaluate(&p, st(x)).map_err(err)?.rc_criterion_at_x;
    }
    c.holds("rc inequality never satisfied on (0,5]", never);
    c.finish()
}

fn criterion_3() -> Outcome {
    let p = cold(2.0);
    let mut c = Checks::default();
    c.near("g2(0)", g2(&p, ScaledTime::ZERO).map_err(err)?, 0.9975, 5e-4);
    c.near("g2(inf)", g2_asymptote(&p).map_err(err)?, 1.0180, 5e-4);
    let (mut sub, mut anti) = (true, true);
    for x in fine_grid() {
        let v = evaluate(&p, st(x)).map_err(err)?;
        sub &= v.sub_poissonian;
        anti &= v.antibunched_at_x;
    }
    c.holds("sub-Poissonian", sub);
    c.holds("antibunched on (0,5]", anti);
    c.finish()
}

fn criterion_4() -> Outcome {
    let p = cold(2.0);
    let mut c = Checks::default();
    c.near("rc crossing", first_crossing(&p, Criterion::RcInequality)?, 2.5793, 1e-3);
    c.near("rc(inf)", rc_margin_asymptote(&p).map_err(err)?, -0.0155, 5e-4);
    c.finish()
}

fn criterion_5() -> Outcome {
    let p = hot();
    let mut c = Checks::default();
    c.near("g2(0)", g2(&p, ScaledTime::ZERO).map_err(err)?, 2.0859, 5e-4);
    c.near("g2(inf)", g2_asymptote(&p).map_err(err)?, 1.9402, 5e-4);
    c.near("antibunching crossing", first_crossing(&p, Criterion::Antibunching)?, 0.5605, 1e-3);
    c.near("rc crossing", first_crossing(&p, Criterion::RcInequality)?, 0.5605, 1e-3);
    c.near("rc(inf)", rc_margin_asymptote(&p).map_err(err)?, 0.1457, 5e-4);
    c.finish()
}

fn criterion_6() -> Outcome {
    let mut c = Checks::default();
    let x_star = p_threshold(1.0, 0.1).crossing().ok_or("no P threshold for nbar=1, r=0.1")?;
    c.near("P threshold", x_star, 0.4493, 1e-4);
    let hot_scale = p_exists_margin(&hot(), ScaledTime::ZERO) + 1.0;
    c.near("(2n+1)e^-2r hot", hot_scale, 2.4562, 1e-4);
    let cold_scale = p_exists_margin(&cold(0.0), ScaledTime::ZERO) + 1.0;
    c.near("(2n+1)e^-2r cold", cold_scale, 0.9825, 1e-4);
    c.holds("cold has no threshold", p_threshold(0.1, 0.1).crossing().is_none());
    c.finish()
}

fn criterion_7() -> Outcome {
    let p = cold(2.0);
    let mut c = Checks::default();
    c.near("Q(0)", mandel_q(&p, ScaledTime::ZERO).map_err(err)?, -0.0104, 5e-4);
    c.near("Q crossing", first_crossing(&p, Criterion::MandelQ)?, 1.7704, 1e-3);
    c.finish()
}

fn criterion_8() -> Outcome {
    let mut c = Checks::default();
    c.near("alpha_c", critical_alpha(0.1, 0.1).map_err(err)?, 0.45397, 1e-4);
    c.finish()
}

const ORACLE_SETS: usize = 20;
const ORACLE_MAX_DRAWS: usize = 200;
const ORACLE_REL_TOL: f64 = 1e-5;
const PATH_TOL: f64 = 1e-8;

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

/// Random sets from n̄ ≤ 1, r ≤ 0.3, |α| ≤ 2, x ≤ 1 with θ = 2φ. Draws the
/// basis cannot hold even after escalating past 160 are skipped and counted.
fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9_0AC1E);
    let (mut accepted, mut skipped, mut draws) = (0usize, 0usize, 0usize);
    let (mut worst, mut worst_path, mut max_dim, mut above_160) = (0.0f64, 0.0f64, 0usize, 0usize);
    let mut failures = Vec::new();
    while accepted < ORACLE_SETS && draws < ORACLE_MAX_DRAWS {
        draws += 1;
        let nbar = rng.gen_range(0.0..=1.0);
        let r = 0.3 * (1.0 - rng.gen::<f64>());
        let alpha = rng.gen_range(0.0..=2.0);
        let phi = rng.gen_range(0.0..2.0 * PI);
        let x = rng.gen_range(0.0..=1.0);
        let etas: Vec<Complex64> =
            (0..5).map(|_| Complex64::new(rng.gen_range(-0.3..=0.3), rng.gen_range(-0.3..=0.3))).collect();
        let p = GaussianParams::amplitude_quadrature(nbar, r, alpha, phi).unwrap();
        let run = with_escalation(DEFAULT_DIM, |d| {
            let oracle = FockOracle::new(&p, d)?;
            let obs = oracle.observables(st(x), &etas)?;
            let via = oracle.prepared_via_hamiltonian()?;
            Ok((obs, max_abs_diff(&oracle.prepared().rho, &via.rho)))
        });
        let (obs, path_delta) = match run {
            Ok(o) => o,
            Err(Error::Truncation { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(format!("draw {draws}: {e}")),
        };
        accepted += 1;
        max_dim = max_dim.max(obs.dim);
        above_160 += usize::from(obs.dim > 160);

        let m = moments(&p, st(x)).map_err(err)?;
        let q = mandel_q(&p, st(x)).map_err(err)?;
        let q_oracle = obs.moments.mandel_q().map_err(err)?;
        let mut deltas = vec![
            ("g2", rel(obs.g2, g2(&p, st(x)).map_err(err)?)),
            ("n", rel(obs.moments.n_mean, m.n_mean)),
            ("Q", (q_oracle - q).abs() / q.abs().max(1.0)),
        ];
        for (eta, got) in etas.iter().zip(&obs.chi) {
            let want = chi(&p, st(x), *eta).map_err(err)?;
            deltas.push(("chi", (got - want).norm() / want.norm()));
        }
        for (name, d) in deltas {
            worst = worst.max(d);
            if d.is_nan() || d > ORACLE_REL_TOL {
                failures.push(format!("{name} Δ={d:.2e} at (n={nbar:.3}, r={r:.3}, |α|={alpha:.3}, x={x:.3})"));
            }
        }

        worst_path = worst_path.max(path_delta);
        if path_delta.is_nan() || path_delta > PATH_TOL {
            failures.push(format!("state paths differ by {path_delta:.2e} at (n={nbar:.3}, r={r:.3}, |α|={alpha:.3})"));
        }
    }
    let summary = format!(
        "{accepted}/{ORACLE_SETS} sets after {draws} draws ({skipped} skipped: leakage gate at dim 320), \
         max dim {max_dim} ({above_160} above 160), worst Δ={worst:.2e}, worst path Δ={worst_path:.2e}"
    );
    if accepted < ORACLE_SETS || !failures.is_empty() {
        Err(format!("{summary}; {}", failures.join("; ")))
    } else {
        Ok(summary)
    }
}

const IDENTITY_DRAWS: usize = 1000;
const P_GRID: usize = 400;
const P_TOL: f64 = 1e-6;
const P_MIN_MARGIN: f64 = 0.05;

fn random_params(rng: &mut ChaCha8Rng) -> GaussianParams {
    GaussianParams::new(
        rng.gen_range(0.0..=2.0),
        rng.gen_range(0.0..=1.0),
        rng.gen_range(0.0..2.0 * PI),
        rng.gen_range(0.0..=3.0),
        rng.gen_range(0.0..2.0 * PI),
        1.0,
    )
    .unwrap()
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut c = Checks::default();

    // Q(0) = ⟨n(0)⟩ (g²(0) − 1)
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < IDENTITY_DRAWS {
        let p = random_params(&mut rng);
        if p.mean_photon_number() == 0.0 {
            continue;
        }
        n += 1;
        let ing = ingredients(&p, ScaledTime::ZERO).map_err(err)?;
        let q = mandel_q(&p, ScaledTime::ZERO).map_err(err)?;
        let rhs = ing.mean_n0 * (g2(&p, ScaledTime::ZERO).map_err(err)? - 1.0);
        worst = worst.max((q - rhs).abs() / q.abs().max(1.0));
    }
    c.holds(&format!("Q(0)=n0(g2(0)-1) worst {worst:.1e}"), worst <= 1e-12);

    // S² − 4|T|² = 1, relative to the size of the cancelling terms
    let mut worst = 0.0f64;
    for _ in 0..IDENTITY_DRAWS {
        let mut p = random_params(&mut rng);
        p.r = rng.gen_range(0.0..=1.0);
        let x = if p.r > 0.0 { rng.gen_range(0.0..=3.0) } else { 0.0 };
        let k = kernel(&p, st(x));
        let d = (k.s_tau * k.s_tau - 4.0 * k.t_tau.norm_sqr() - 1.0).abs() / (k.s_tau * k.s_tau);
        worst = worst.max(d);
    }
    c.holds(&format!("S^2-4|T|^2=1 worst {worst:.1e}"), worst <= 1e-14);

    // χ(0) = 1
    let mut exact = true;
    for _ in 0..IDENTITY_DRAWS {
        let p = random_params(&mut rng);
        let x = if p.r > 0.0 { rng.gen_range(0.0..=3.0) } else { 0.0 };
        exact &= chi(&p, st(x), Complex64::new(0.0, 0.0)).map_err(err)? == Complex64::new(1.0, 0.0);
    }
    c.holds("chi(0)=1", exact);

    // P normalization and mean on a 400×400 midpoint grid. The grid is
    // fixed, so draws whose cell is wider than the narrowest P width
    // √(margin/4) cannot be resolved by it and are counted, not used.
    let (mut worst_norm, mut worst_mean, mut n, mut unresolved) = (0.0f64, 0.0f64, 0, 0);
    while n < IDENTITY_DRAWS {
        let nbar = rng.gen_range(0.05..=1.0);
        let r = rng.gen_range(0.0..=0.3);
        let x = if r > 0.0 { rng.gen_range(0.0..=1.0) } else { 0.0 };
        let p = GaussianParams::new(
            nbar,
            r,
            rng.gen_range(0.0..2.0 * PI),
            rng.gen_range(0.0..=2.0),
            rng.gen_range(0.0..2.0 * PI),
            1.0,
        )
        .unwrap();
        let margin = p_exists_margin(&p, st(x));
        if margin < P_MIN_MARGIN {
            continue;
        }
        let hw = quadrature_half_width(&p, st(x)).map_err(err)?;
        let step = 2.0 * hw / P_GRID as f64;
        if step > (margin / 4.0).sqrt() {
            unresolved += 1;
            continue;
        }
        n += 1;
        let cell = step * step;
        let (mut total, mut mean) = (0.0, Complex64::new(0.0, 0.0));
        for s in p_grid(&p, st(x), hw, P_GRID).map_err(err)? {
            total += s.p * cell;
            mean += Complex64::new(s.re, s.im) * s.p * cell;
        }
        let a = amplitude_a(&p, st(x)).map_err(err)?;
        worst_norm = worst_norm.max((total - 1.0).abs());
        worst_mean = worst_mean.max((mean - a).norm());
    }
    c.parts.push(format!("{unresolved} P draws unresolved by the grid"));
    c.holds(&format!("P norm worst {worst_norm:.1e}"), worst_norm <= P_TOL);
    c.holds(&format!("P mean worst {worst_mean:.1e}"), worst_mean <= P_TOL);

    // the existence margin ignores α entirely
    let mut invariant = true;
    for _ in 0..IDENTITY_DRAWS {
        let p = random_params(&mut rng);
        let x = st(rng.gen_range(0.0..=5.0));
        let q = p.with_alpha(rng.gen_range(0.0..=10.0), rng.gen_range(0.0..2.0 * PI));
        invariant &= p_exists_margin(&p, x).to_bits() == p_exists_margin(&q, x).to_bits();
    }
    c.holds("P margin alpha-invariant", invariant);

    c.finish()
}

fn main() -> ExitCode {
    let criteria: [Check; 10] = [
        ("thermal squeezed g2 endpoints", criterion_1),
        ("thermal squeezed rc asymptote, never nonclassical", criterion_2),
        ("displaced g2 endpoints and antibunching", criterion_3),
        ("displaced rc crossing and asymptote", criterion_4),
        ("hot state g2 and crossings", criterion_5),
        ("P existence threshold and scale constants", criterion_6),
        ("Mandel Q at zero and its crossing", criterion_7),
        ("critical coherent amplitude", criterion_8),
        ("closed forms vs truncated Fock oracle", criterion_9),
        ("identity suite over random draws", criterion_10),
    ];
    let results: Vec<(Outcome, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                scope.spawn(move || {
                    let start = Instant::now();
                    (f(), start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap_or_else(|_| (Err("panicked".into()), 0.0))).collect()
    });
    let mut passed = 0;
    for (i, ((label, _), (outcome, secs))) in criteria.iter().zip(&results).enumerate() {
        let (tag, detail) = match outcome {
            Ok(d) => {
                passed += 1;
                ("PASS", d)
            }
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {tag} [{secs:.1}s] {label}: {detail}", i + 1);
    }
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
