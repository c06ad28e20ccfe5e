//! Second-order coherence g²(x) for the three reference states, with the
//! long-time limit.
//!
//!     cargo run --example g2_curves

use nclab::{g2, g2_asymptote, GaussianParams, ScaledTime};

fn main() -> nclab::Result<()> {
    let states = [
        ("squeezed thermal, cold", GaussianParams::amplitude_quadrature(0.1, 0.1, 0.0, 0.0)?),
        ("displaced, |α| = 2", GaussianParams::amplitude_quadrature(0.1, 0.1, 2.0, 0.0)?),
        ("squeezed thermal, hot", GaussianParams::amplitude_quadrature(1.0, 0.1, 0.0, 0.0)?),
    ];
    print!("{:>5}", "x");
    for (name, _) in &states {
        print!("  {name:>24}");
    }
    println!();
    for i in 0..=10 {
        let x = ScaledTime::new(0.5 * i as f64)?;
        print!("{:>5.2}", x.value());
        for (_, p) in &states {
            print!("  {:>24.6}", g2(p, x)?);
        }
        println!();
    }
    print!("{:>5}", "inf");
    for (_, p) in &states {
        print!("  {:>24.6}", g2_asymptote(p)?);
    }
    println!();
    Ok(())
}
