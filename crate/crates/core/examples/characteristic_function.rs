//! Normally ordered characteristic function and the moments read off it.
//!
//!     cargo run --example characteristic_function

use nclab::charfunc::kernel;
use nclab::{chi, moments, Complex64, GaussianParams, ScaledTime};

fn main() -> nclab::Result<()> {
    let p = GaussianParams::amplitude_quadrature(0.1, 0.1, 2.0, 0.0)?;
    for x in [0.0, 0.5, 1.0] {
        let t = ScaledTime::new(x)?;
        let k = kernel(&p, t);
        let m = moments(&p, t)?;
        println!("x = {x}");
        println!(
            "  S = {:.6}, T = {:.6}, S² − 4|T|² = {:.3e}",
            k.s_tau,
            k.t_tau,
            k.s_tau.powi(2) - 4.0 * k.t_tau.norm_sqr()
        );
        println!("  ⟨a⟩ = {:.6}, ⟨n⟩ = {:.6}, Q = {:+.6}", m.mean_a, m.n_mean, m.mandel_q()?);
        for eta in [Complex64::new(0.1, 0.0), Complex64::new(0.0, 0.1), Complex64::new(0.3, 0.2)] {
            println!("  χ({eta}) = {:.6}", chi(&p, t, eta)?);
        }
    }
    Ok(())
}
