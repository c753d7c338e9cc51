//! Synthetic field states: band-limited random data for algebraic checks
//! and manufactured analytic states with known residual behavior.

use super::grid::GridSpec;
use super::scalar::{gradient, ScalarField, VectorField};
use super::state::{FieldState, TimeDerivs};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// One Fourier mode with a random amplitude and phase.
struct Mode {
    /// Integer wavenumbers; k below is the same triple scaled to the box.
    m: [i32; 3],
    k: [f64; 3],
    amp: f64,
    phase: f64,
}

fn random_modes(rng: &mut ChaCha8Rng, grid: GridSpec, max_mode: i32, amp: f64) -> Vec<Mode> {
    let len = grid.len();
    let mut modes = Vec::new();
    for mx in -max_mode..=max_mode {
        for my in -max_mode..=max_mode {
            for mz in -max_mode..=max_mode {
                if mx == 0 && my == 0 && mz == 0 {
                    continue;
                }
                modes.push(Mode {
                    m: [mx, my, mz],
                    k: [
                        TAU * mx as f64 / len[0],
                        TAU * my as f64 / len[1],
                        TAU * mz as f64 / len[2],
                    ],
                    amp: amp * rng.gen_range(-1.0..1.0),
                    phase: rng.gen_range(0.0..TAU),
                });
            }
        }
    }
    modes
}

/// Smooth periodic random scalar: a handful of low modes, so derivatives
/// stay well resolved on any grid this crate accepts.
///
/// amp sin(ax i + r) = Im(e^{i ax i} amp e^{i r}), so modes sharing an x
/// wavenumber are first collapsed into one complex plane Z(j, k), and the
/// grid fill sums 2 max_mode + 1 planes per cell instead of every mode.
/// Mode and plane orders are fixed, so results are reproducible.
pub fn band_limited_scalar(grid: GridSpec, rng: &mut ChaCha8Rng, max_mode: i32, amp: f64) -> ScalarField {
    let modes = random_modes(rng, grid, max_mode, amp);
    let [nx, ny, nz] = grid.n();
    let h = grid.h();
    let planes = (2 * max_mode + 1) as usize;

    // Z_g(j,k) = sum of amp e^{i(ay j + az k + phase)} over the plane's
    // modes, each column advanced by a unit rotation in j
    let mut zre = vec![vec![0.0f64; ny * nz]; planes];
    let mut zim = vec![vec![0.0f64; ny * nz]; planes];
    for m in &modes {
        let g = (m.m[0] + max_mode) as usize;
        let (ay, az) = (m.k[1] * h[1], m.k[2] * h[2]);
        let (rot_s, rot_c) = ay.sin_cos();
        let (re_g, im_g) = (&mut zre[g], &mut zim[g]);
        for k in 0..nz {
            let (s0, c0) = (az * k as f64 + m.phase).sin_cos();
            let (mut re, mut im) = (m.amp * c0, m.amp * s0);
            for j in 0..ny {
                re_g[k * ny + j] += re;
                im_g[k * ny + j] += im;
                let next = re * rot_c - im * rot_s;
                im = re * rot_s + im * rot_c;
                re = next;
            }
        }
    }

    // per-plane x tables: e^{i ax i} with ax = TAU mx / nx
    let mut sx = vec![0.0f64; planes * nx];
    let mut cx = vec![0.0f64; planes * nx];
    for g in 0..planes {
        let ax = TAU * (g as i32 - max_mode) as f64 / nx as f64;
        for i in 0..nx {
            let (s, c) = (ax * i as f64).sin_cos();
            sx[g * nx + i] = s;
            cx[g * nx + i] = c;
        }
    }

    let mut field = ScalarField::zeros(grid);
    let data = field.data_mut();
    for k in 0..nz {
        for j in 0..ny {
            let plane_idx = k * ny + j;
            let row = plane_idx * nx;
            for g in 0..planes {
                let (zr, zi) = (zre[g][plane_idx], zim[g][plane_idx]);
                let sxg = &sx[g * nx..(g + 1) * nx];
                let cxg = &cx[g * nx..(g + 1) * nx];
                for i in 0..nx {
                    data[row + i] += sxg[i] * zr + cxg[i] * zi;
                }
            }
        }
    }
    field
}

pub fn band_limited_vector(grid: GridSpec, rng: &mut ChaCha8Rng, max_mode: i32, amp: f64) -> VectorField {
    VectorField {
        x: band_limited_scalar(grid, rng, max_mode, amp),
        y: band_limited_scalar(grid, rng, max_mode, amp),
        z: band_limited_scalar(grid, rng, max_mode, amp),
    }
}

/// Fully random smooth state: every field, source, and time derivative is
/// an independent band-limited sample. Nothing satisfies any equation of
/// motion; this is the right input for checks of *algebraic* identities
/// between residual formulations, which must hold for arbitrary data.
pub fn random_state(grid: GridSpec, seed: u64, mass: f64, c: f64) -> (FieldState, TimeDerivs) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mm = 2;
    let mut state = FieldState::vacuum(grid, mass, c);
    state.e = band_limited_vector(grid, &mut rng, mm, 1.0);
    state.b = band_limited_vector(grid, &mut rng, mm, 1.0);
    state.a0 = band_limited_scalar(grid, &mut rng, mm, 1.0);
    state.a = band_limited_vector(grid, &mut rng, mm, 1.0);
    state.rho_e = band_limited_scalar(grid, &mut rng, mm, 0.5);
    state.j_e = band_limited_vector(grid, &mut rng, mm, 0.5);
    state.rho_m = band_limited_scalar(grid, &mut rng, mm, 0.5);
    state.j_m = band_limited_vector(grid, &mut rng, mm, 0.5);
    let derivs = TimeDerivs {
        de: band_limited_vector(grid, &mut rng, mm, 1.0),
        db: band_limited_vector(grid, &mut rng, mm, 1.0),
    };
    (state, derivs)
}

/// Static electric state built so the discrete field equations hold to
/// the order of the scheme: the potential is analytic and periodic, the
/// electric field is its *discrete* negative gradient, and the charge is
/// the *analytic* Laplacian. The even-sector residual is then pure
/// discretization error, O(h^2), while the odd sector is zero to rounding.
pub fn manufactured_static_electric(grid: GridSpec, c: f64) -> (FieldState, TimeDerivs) {
    let len = grid.len();
    let (kx, ky, kz) = (TAU / len[0], TAU * 2.0 / len[1], TAU / len[2]);
    let a0 = ScalarField::from_fn(grid, |p| {
        (kx * p[0]).sin() * (ky * p[1]).cos() * (kz * p[2]).sin()
    });
    // rho = -lap(A0)/4pi analytically; each factor contributes -k_i^2
    let k2 = kx * kx + ky * ky + kz * kz;
    let rho_e = a0.scale(k2 / (4.0 * std::f64::consts::PI));
    let mut state = FieldState::vacuum(grid, 0.0, c);
    state.e = gradient(&a0).scale(-1.0);
    state.a0 = a0;
    state.rho_e = rho_e;
    let derivs = TimeDerivs::zero(grid);
    (state, derivs)
}
