//! Driven steady state in the definite signature.
//!
//! With all generators squaring alike, the second-order operator on a
//! field component is (c^2 laplacian + d_t^2); a plane driven at frequency
//! omega therefore obeys u'' = (omega/c)^2 u in the interior: no traveling
//! solutions, only exponential growth or decay away from the drive. The
//! experiment is posed as the boundary-value problem it really is (an
//! initial-value march would be ill-posed): drive u(0) = 1, natural u' = 0
//! at the far end, solve the tridiagonal system directly, then fit the
//! decay rate kappa and compare with omega/c.

use super::SimError;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Serialize)]
pub struct EvanescenceReport {
    pub omega: f64,
    pub c: f64,
    pub n: usize,
    pub kappa_fit: f64,
    pub kappa_expected: f64,
    pub rel_error: f64,
    /// largest |u| at ten or more decay lengths from the drive, relative
    /// to the drive amplitude (the "no transmitted wave" number)
    pub tail_amplitude: f64,
    /// x-window the fit used
    pub fit_window: [f64; 2],
    /// the steady-state profile, for plotting
    pub profile: Vec<(f64, f64)>,
}

/// Solve the driven slab of length `len` sampled at `n+1` nodes and fit
/// the spatial decay rate. omega = 0 is allowed and yields a uniform
/// profile with kappa = 0.
pub fn evanescence_report(
    omega: f64,
    c: f64,
    n: usize,
    len: f64,
) -> Result<EvanescenceReport, SimError> {
    if n < 16 {
        return Err(SimError::Config(format!("need at least 16 intervals, got {n}")));
    }
    let h = len / n as f64;
    let kappa = omega / c;
    let k2h2 = (kappa * h).powi(2);

    // u_0 = 1 (drive); interior u_{i-1} - (2 + (kappa h)^2) u_i + u_{i+1} = 0;
    // far end one-sided u_n = u_{n-1} (zero-slope closure)
    let mut u = vec![0.0f64; n + 1];
    u[0] = 1.0;
    // Thomas elimination on the interior nodes 1..n-1 with the far-end
    // closure folded into the last equation
    let diag = 2.0 + k2h2;
    let mut cprime = vec![0.0f64; n];
    let mut dprime = vec![0.0f64; n];
    // first interior row: -diag u_1 + u_2 = -u_0
    cprime[1] = 1.0 / -diag;
    dprime[1] = -u[0] / -diag;
    for i in 2..n {
        let denom = -diag - cprime[i - 1];
        let rhs = if i == n - 1 {
            // u_n = u_{n-1}: the last interior equation becomes
            // u_{n-2} - (1 + (kappa h)^2) u_{n-1} = 0
            cprime[i] = 0.0;
            let denom_last = -(1.0 + k2h2) - cprime[i - 1];
            dprime[i] = (0.0 - dprime[i - 1]) / denom_last;
            continue;
        } else {
            0.0
        };
        cprime[i] = 1.0 / denom;
        dprime[i] = (rhs - dprime[i - 1]) / denom;
    }
    u[n - 1] = dprime[n - 1];
    for i in (1..n - 1).rev() {
        u[i] = dprime[i] - cprime[i] * u[i + 1];
    }
    u[n] = u[n - 1];

    // fit log u over a window clear of both boundaries
    let profile: Vec<(f64, f64)> = (0..=n).map(|i| (i as f64 * h, u[i])).collect();
    let kappa_fit = if omega == 0.0 {
        0.0
    } else {
        let lo = (0.05 * n as f64) as usize;
        let hi = (0.45 * n as f64) as usize;
        let pts: Vec<(f64, f64)> = (lo..=hi)
            .filter(|&i| u[i] > 0.0)
            .map(|i| (i as f64 * h, u[i].ln()))
            .collect();
        if pts.len() < 8 {
            return Err(SimError::FitFailed(
                "profile not positive over the fit window".into(),
            ));
        }
        for w in pts.windows(2) {
            if w[1].1 >= w[0].1 {
                return Err(SimError::FitFailed("profile not monotonically decaying".into()));
            }
        }
        let m = pts.len() as f64;
        let xbar = pts.iter().map(|p| p.0).sum::<f64>() / m;
        let ybar = pts.iter().map(|p| p.1).sum::<f64>() / m;
        let num: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.1 - ybar)).sum();
        let den: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.0 - xbar)).sum();
        -(num / den)
    };

    let tail_amplitude = if kappa > 0.0 {
        let cut = 10.0 / kappa;
        profile
            .iter()
            .filter(|p| p.0 >= cut)
            .map(|p| p.1.abs())
            .fold(0.0f64, f64::max)
    } else {
        0.0
    };
    let rel_error = if kappa > 0.0 { (kappa_fit - kappa).abs() / kappa } else { kappa_fit.abs() };
    Ok(EvanescenceReport {
        omega,
        c,
        n,
        kappa_fit,
        kappa_expected: kappa,
        rel_error,
        tail_amplitude,
        fit_window: [0.05 * len, 0.45 * len],
        profile,
    })
}

pub fn write_evanescence_csv(report: &EvanescenceReport, path: &Path) -> std::io::Result<()> {
    let mut out = Vec::new();
    writeln!(out, "x,u")?;
    for (x, v) in &report.profile {
        writeln!(out, "{},{}", x, v)?;
    }
    std::fs::write(path, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn zero_frequency_means_uniform_field() {
        let r = evanescence_report(0.0, 1.0, 128, 1.0).unwrap();
        assert_eq!(r.kappa_fit, 0.0);
        // Neumann far end: the drive fills the slab
        assert!(r.profile.iter().all(|p| (p.1 - 1.0).abs() < 1e-10));
    }

    #[test]
    fn decay_rate_matches_omega_over_c() {
        // kappa L = 4 pi gives plenty of decay lengths inside the slab
        let omega = 2.0 * TAU;
        let r = evanescence_report(omega, 1.0, 128, 1.0).unwrap();
        assert!(r.rel_error < 0.02, "kappa {} vs {}", r.kappa_fit, r.kappa_expected);
    }

    #[test]
    fn doubling_frequency_doubles_kappa() {
        let r1 = evanescence_report(TAU, 1.0, 256, 1.0).unwrap();
        let r2 = evanescence_report(2.0 * TAU, 1.0, 256, 1.0).unwrap();
        let ratio = r2.kappa_fit / r1.kappa_fit;
        assert!((ratio - 2.0).abs() < 0.05, "ratio {ratio}");
    }

    #[test]
    fn no_transmitted_amplitude_beyond_ten_decay_lengths() {
        // kappa = 4 pi: ten decay lengths sit at x ~ 0.8, inside the slab
        let omega = 2.0 * TAU;
        let r = evanescence_report(omega, 1.0, 128, 1.0).unwrap();
        assert!(r.tail_amplitude < 1e-4, "tail {}", r.tail_amplitude);
    }

    #[test]
    fn speed_of_light_scales_kappa() {
        let r = evanescence_report(2.0 * TAU, 2.0, 128, 1.0).unwrap();
        assert!((r.kappa_expected - TAU).abs() < 1e-12);
        assert!(r.rel_error < 0.02);
    }
}
