//! Reference curves with their caption constants recomputed.
//!
//!     cargo run --example figure_tables

use nclab::figures::figure;
use nclab::ScaledTime;

fn main() -> nclab::Result<()> {
    for n in 1..=7 {
        let fig = figure(n)?;
        println!("figure {n}: {} for {:?}", fig.quantity.name(), fig.params);
        for (cap, got) in fig.check()? {
            let ok = if (got - cap.value).abs() <= cap.tolerance { "ok" } else { "MISS" };
            println!("  {:<22} {:>10.6}  (caption {}) {ok}", cap.name, got, cap.value);
        }
        let samples: Vec<String> = (0..=5)
            .map(|i| ScaledTime::new(i as f64).and_then(|x| fig.quantity.at(&fig.params, x)).map(|v| format!("{v:.4}")))
            .collect::<nclab::Result<_>>()?;
        println!("  x = 0..5: {}", samples.join(" "));
    }
    Ok(())
}
