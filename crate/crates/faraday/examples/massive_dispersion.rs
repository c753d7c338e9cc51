//! Measure omega(k) for the massive wave on the lattice.
//!
//! A transverse plane wave is evolved with the leapfrog and its phase is
//! fitted per step. The measured frequency follows the massive branch
//! omega^2 = c^2 (k^2 + m^2); the leftover error is the second-order
//! lattice truncation and falls fourfold when the grid doubles.

use faraday::sim::{measure_dispersion, DispersionSpec};
use std::f64::consts::TAU;

fn main() {
    let k = TAU; // mode 1 in a unit box

    println!("nx = 128, six periods fitted:");
    println!("  mass      omega_measured  omega_predicted  rel_error");
    for mass in [0.0, k / 2.0, k] {
        let r = measure_dispersion(DispersionSpec { nx: 128, mode: 1, mass, c: 1.0, periods: 6 })
            .unwrap();
        println!(
            "  {mass:7.4}   {:.8}      {:.8}       {:.2e}",
            r.measured_omega, r.predicted_omega, r.rel_error
        );
        assert!(r.rel_error < 0.01);
    }

    println!("\nmassless limit recovers the light cone; the massive branch");
    println!("bends upward by sqrt(1 + m^2/k^2):");
    let r = measure_dispersion(DispersionSpec { nx: 128, mode: 1, mass: k, c: 1.0, periods: 6 })
        .unwrap();
    println!(
        "  measured omega / ck = {:.6} (sqrt 2 = {:.6})",
        r.measured_omega / (1.0 * k),
        2.0f64.sqrt()
    );

    println!("\nconvergence at m = k/2:");
    let mut last = None;
    for nx in [32, 64, 128] {
        let r = measure_dispersion(DispersionSpec {
            nx,
            mode: 1,
            mass: k / 2.0,
            c: 1.0,
            periods: 4,
        })
        .unwrap();
        match last.replace(r.rel_error) {
            Some(prev) => println!(
                "  nx = {nx:3}: rel_error = {:.3e}  ({:.2}x down)",
                r.rel_error,
                prev / r.rel_error
            ),
            None => println!("  nx = {nx:3}: rel_error = {:.3e}", r.rel_error),
        }
    }

    // a request the grid cannot honestly resolve is refused outright
    let refused = measure_dispersion(DispersionSpec {
        nx: 32,
        mode: 4,
        mass: 0.0,
        c: 1.0,
        periods: 2,
    });
    println!("\nmode 4 on nx = 32: {}", refused.unwrap_err());
}
