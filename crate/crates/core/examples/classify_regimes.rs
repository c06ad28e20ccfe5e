//! Which nonclassicality criteria fire, and when, for a few states; plus the
//! coherent amplitude at which g²(∞) = g²(0).
//!
//!     cargo run --example classify_regimes

use nclab::{classify, critical_alpha, GaussianParams};

fn main() -> nclab::Result<()> {
    for (nbar, alpha) in [(0.1, 0.0), (0.1, 2.0), (1.0, 0.0)] {
        let p = GaussianParams::amplitude_quadrature(nbar, 0.1, alpha, 0.0)?;
        let report = classify(&p, 5.0, 101)?;
        println!("n̄ = {nbar}, |α| = {alpha}");
        for (criterion, xs) in &report.crossings {
            let shown: Vec<String> = xs.iter().map(|x| format!("{x:.4}")).collect();
            println!("  {:<14} crossings [{}]", criterion.name(), shown.join(", "));
        }
        println!("  g²(∞) = {:.4}, rc(∞) = {:+.4}", report.asymptotes.g2_inf, report.asymptotes.rc_margin_inf);
    }
    println!("|α_c|(n̄ = 0.1, r = 0.1) = {:.5}", critical_alpha(0.1, 0.1)?);
    Ok(())
}
