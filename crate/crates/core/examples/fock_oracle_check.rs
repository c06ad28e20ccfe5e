//! Brute-force check of the closed forms in a truncated Fock basis.
//!
//!     cargo run --release --example fock_oracle_check

use nclab::fock::{max_abs_diff, oracle_observables, FockOracle};
use nclab::{chi, g2, moments, Complex64, GaussianParams, ScaledTime};

fn main() -> nclab::Result<()> {
    let p = GaussianParams::amplitude_quadrature(0.1, 0.1, 2.0, 0.0)?;

    let oracle = FockOracle::new(&p, 80)?;
    let via_h = oracle.prepared_via_hamiltonian()?;
    println!("state paths differ by {:.2e}", max_abs_diff(&oracle.prepared().rho, &via_h.rho));

    let eta = Complex64::new(0.3, 0.2);
    println!("{:>4} {:>5} {:>14} {:>14} {:>14} {:>14}", "x", "dim", "g2", "oracle g2", "n", "oracle n");
    for x in [0.0, 0.25, 0.5, 0.75] {
        let t = ScaledTime::new(x)?;
        let obs = oracle_observables(&p, t, &[eta], 80)?;
        let m = moments(&p, t)?;
        println!(
            "{x:>4} {:>5} {:>14.9} {:>14.9} {:>14.9} {:>14.9}   |Δχ| = {:.1e}",
            obs.dim,
            g2(&p, t)?,
            obs.g2,
            m.n_mean,
            obs.moments.n_mean,
            (obs.chi[0] - chi(&p, t, eta)?).norm()
        );
    }
    Ok(())
}
