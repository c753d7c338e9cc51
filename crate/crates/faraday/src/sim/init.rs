//! Initial conditions for simulation runs.

use super::SimError;
use crate::fields::{synth, FieldState, GridSpec, ScalarField, VectorField};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// A single transverse eigenmode of the massive wave equation,
/// omega = c sqrt(k^2 + m^2), placed at t = 0:
///
/// ```text
/// A  = eps a cos(k.x)           A0 = 0
/// E  = -(a omega / c) eps sin(k.x)
/// B  = -a (k x eps) sin(k.x)
/// ```
///
/// The polarization is projected orthogonal to k, so any non-parallel hint
/// works. With an axis-aligned k and axis-aligned eps the discrete
/// divergence of A vanishes identically; oblique k leaves an O(h^2)
/// divergence, which is exactly what the gauge-drift checks want to watch.
pub fn plane_wave_state(
    grid: GridSpec,
    k_cells: [i32; 3],
    polarization: [f64; 3],
    amplitude: f64,
    mass: f64,
    c: f64,
) -> Result<FieldState, SimError> {
    let len = grid.len();
    let k = [
        TAU * k_cells[0] as f64 / len[0],
        TAU * k_cells[1] as f64 / len[1],
        TAU * k_cells[2] as f64 / len[2],
    ];
    let k2 = dot(k, k);
    if k2 == 0.0 {
        return Err(SimError::Config("plane wave needs a nonzero k".into()));
    }
    // project the hint orthogonal to k
    let along = dot(polarization, k) / k2;
    let mut eps = [
        polarization[0] - along * k[0],
        polarization[1] - along * k[1],
        polarization[2] - along * k[2],
    ];
    let n = dot(eps, eps).sqrt();
    if n < 1e-12 {
        return Err(SimError::DegeneratePolarization);
    }
    for e in &mut eps {
        *e /= n;
    }
    let omega = c * (k2 + mass * mass).sqrt();
    let kxe = cross(k, eps);

    let mut state = FieldState::vacuum(grid, mass, c);
    let phase = |p: [f64; 3]| k[0] * p[0] + k[1] * p[1] + k[2] * p[2];
    state.a = VectorField::from_fn(grid, |p| {
        let v = amplitude * phase(p).cos();
        [eps[0] * v, eps[1] * v, eps[2] * v]
    });
    state.e = VectorField::from_fn(grid, |p| {
        let v = -(amplitude * omega / c) * phase(p).sin();
        [eps[0] * v, eps[1] * v, eps[2] * v]
    });
    state.b = VectorField::from_fn(grid, |p| {
        let v = -amplitude * phase(p).sin();
        [kxe[0] * v, kxe[1] * v, kxe[2] * v]
    });
    Ok(state)
}

/// Normalized Gaussian blob of total weight `charge`, centered in the box.
/// Width is given in units of the smallest grid spacing; keep it at 3h or
/// wider so central differences resolve it.
fn gaussian_blob(grid: GridSpec, charge: f64, width_cells: f64) -> ScalarField {
    let len = grid.len();
    let w = width_cells * grid.min_h();
    let center = [len[0] / 2.0, len[1] / 2.0, len[2] / 2.0];
    let norm = charge / ((TAU * w * w).powi(3).sqrt());
    ScalarField::from_fn(grid, |p| {
        let r2 = (0..3).map(|i| (p[i] - center[i]).powi(2)).sum::<f64>();
        norm * (-r2 / (2.0 * w * w)).exp()
    })
}

/// A magnetic charge at rest: Gaussian rho_m, no currents, fields zero.
pub fn gaussian_monopole_state(
    grid: GridSpec,
    charge: f64,
    width_cells: f64,
    mass: f64,
    c: f64,
) -> FieldState {
    let mut state = FieldState::vacuum(grid, mass, c);
    state.rho_m = gaussian_blob(grid, charge, width_cells);
    state
}

/// An electric charge at rest: Gaussian rho_e, no currents, fields zero.
pub fn gaussian_electric_state(
    grid: GridSpec,
    charge: f64,
    width_cells: f64,
    mass: f64,
    c: f64,
) -> FieldState {
    let mut state = FieldState::vacuum(grid, mass, c);
    state.rho_e = gaussian_blob(grid, charge, width_cells);
    state
}

/// Source-free massless state whose E and B are discrete curls, so the
/// divergence constraints start at rounding level and any later growth is
/// the scheme's own doing.
pub fn divergence_free_random(grid: GridSpec, seed: u64, c: f64) -> FieldState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = synth::band_limited_vector(grid, &mut rng, 2, 1.0);
    let q = synth::band_limited_vector(grid, &mut rng, 2, 1.0);
    let mut state = FieldState::vacuum(grid, 0.0, c);
    state.e = p.curl();
    state.b = q.curl();
    state
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blob_integrates_to_its_charge() {
        let grid = GridSpec::cube(64, 1.0).unwrap();
        let rho = gaussian_blob(grid, 2.5, 4.0);
        assert!((rho.integral() - 2.5).abs() < 1e-3, "{}", rho.integral());
    }

    #[test]
    fn plane_wave_polarization_is_orthogonalized() {
        let grid = GridSpec::new([32, 32, 8], [1.0, 1.0, 1.0]).unwrap();
        // hint deliberately not orthogonal to k
        let state = plane_wave_state(grid, [1, 2, 0], [1.0, 0.0, 0.0], 1.0, 0.3, 1.0).unwrap();
        // analytic transversality shows up as a small discrete divergence
        assert!(state.a.divergence().linf() < 0.2);
        assert!(state.e.linf() > 0.5);
    }

    #[test]
    fn parallel_polarization_is_rejected() {
        let grid = GridSpec::cube(16, 1.0).unwrap();
        let err = plane_wave_state(grid, [1, 0, 0], [2.0, 0.0, 0.0], 1.0, 0.0, 1.0);
        assert!(matches!(err, Err(SimError::DegeneratePolarization)));
    }

    #[test]
    fn divergence_free_state_satisfies_constraints() {
        let grid = GridSpec::cube(16, 1.0).unwrap();
        let state = divergence_free_random(grid, 5, 1.0);
        assert!(state.e.divergence().linf() < 1e-12);
        assert!(state.b.divergence().linf() < 1e-12);
    }
}
