//! Glauber P function: existence margin, threshold time, and a quadrature
//! check of normalization inside the classical region.
//!
//!     cargo run --example p_representation

use nclab::prep::{p_grid, quadrature_half_width};
use nclab::{
    amplitude_a, p_coefficients, p_exists_margin, p_threshold, p_value, Complex64, GaussianParams, ScaledTime,
};

fn main() -> nclab::Result<()> {
    let p = GaussianParams::amplitude_quadrature(1.0, 0.1, 1.0, 0.0)?;
    println!("threshold: {:?}", p_threshold(p.nbar, p.r));

    let x = ScaledTime::new(0.2)?;
    println!("margin at x = 0.2: {:.6}", p_exists_margin(&p, x));
    let c = p_coefficients(&p, x)?;
    println!("quadratic form eigenvalues: {:.6}, {:.6}", c.eig_plus, c.eig_minus);

    let hw = quadrature_half_width(&p, x)?;
    let n = 400;
    let cell = (2.0 * hw / n as f64).powi(2);
    let (mut total, mut mean) = (0.0, Complex64::new(0.0, 0.0));
    for s in p_grid(&p, x, hw, n)? {
        total += s.p * cell;
        mean += Complex64::new(s.re, s.im) * s.p * cell;
    }
    let a = amplitude_a(&p, x)?;
    println!("∫P = {total:.9}, ∫βP = {mean:.6}, A = {a:.6}");
    println!("P(A) = {:.6}", p_value(&p, x, a)?);

    match p_value(&p, ScaledTime::new(1.0)?, a) {
        Err(e) => println!("x = 1: {e}"),
        Ok(v) => println!("x = 1: P(A) = {v}"),
    }
    Ok(())
}
