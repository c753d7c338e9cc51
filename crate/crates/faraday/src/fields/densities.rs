//! Pointwise field densities, all computed through Clifford products of
//! the assembled field bivector (never from component formulas; the
//! component forms appear only in tests as oracles).

use super::scalar::{ScalarField, VectorField};
use super::state::FieldState;
use crate::algebra::{
    component_on, field_bivector, relative_basis, Multivector, EUCLIDEAN4, MINKOWSKI,
};
use serde::Serialize;
use std::f64::consts::PI;

type Mv = Multivector<f64>;

/// The scalar and vector densities of one state.
#[derive(Debug, Clone)]
pub struct DensityMaps {
    /// <F^2>_0 / 8 pi: the action-type invariant (E^2 - B^2)/8pi.
    pub action: ScalarField,
    /// Pseudoscalar coefficient of F^2 / 8 pi: (E.B)/4pi.
    pub pseudo: ScalarField,
    /// <F F!>_0 / 8 pi: energy density (E^2 + B^2)/8pi.
    pub energy: ScalarField,
    /// c <F F!>_2 / 8 pi on the relative basis: the energy flux c(E x B)/4pi.
    pub flux: VectorField,
    /// Momentum density from the stress tensor, -(1/8pi)<F g0 F>_1 spatial
    /// part; equals flux / c^2.
    pub momentum: VectorField,
}

/// Totals: the densities integrated over the box.
#[derive(Debug, Clone, Serialize)]
pub struct DensityTotals {
    pub action: f64,
    pub pseudo: f64,
    pub energy: f64,
    pub flux: [f64; 3],
    pub momentum: [f64; 3],
}

pub fn density_maps(state: &FieldState) -> DensityMaps {
    let sig = MINKOWSKI;
    let grid = state.grid();
    let i_blade = 0b1111u16;
    let s: Vec<Mv> = (1..4).map(|k| relative_basis(sig, k)).collect();
    let g0 = Mv::basis_vector(sig, 0);
    let inv8pi = 1.0 / (8.0 * PI);

    let mut action = ScalarField::zeros(grid);
    let mut pseudo = ScalarField::zeros(grid);
    let mut energy = ScalarField::zeros(grid);
    let mut flux = VectorField::zeros(grid);
    let mut momentum = VectorField::zeros(grid);

    grid.for_each(|idx, ii, jj, kk| {
        let f = field_bivector(sig, &state.e.at(ii, jj, kk), &state.b.at(ii, jj, kk));
        let f2 = f.geometric(&f);
        action.data_mut()[idx] = f2.scalar_part() * inv8pi;
        pseudo.data_mut()[idx] = f2.coeff(i_blade) * inv8pi;

        let ff = f.geometric(&f.hermitian_adjoint());
        energy.data_mut()[idx] = ff.scalar_part() * inv8pi;
        let flux2 = ff.grade(2);
        let t = f.geometric(&g0).geometric(&f).scale(&-inv8pi).grade(1);
        for axis in 0..3 {
            let val = state.c * inv8pi * component_on(&flux2, &s[axis]);
            match axis {
                0 => flux.x.data_mut()[idx] = val,
                1 => flux.y.data_mut()[idx] = val,
                _ => flux.z.data_mut()[idx] = val,
            }
            // spatial part of T(g0) is the energy flux over c; dividing by
            // another c gives momentum density. component_on handles the
            // g_k^2 = -1 metric sign.
            let p = component_on(&t, &Mv::basis_vector(sig, axis as u32 + 1)) / state.c;
            match axis {
                0 => momentum.x.data_mut()[idx] = p,
                1 => momentum.y.data_mut()[idx] = p,
                _ => momentum.z.data_mut()[idx] = p,
            }
        }
    });
    DensityMaps { action, pseudo, energy, flux, momentum }
}

pub fn density_totals(maps: &DensityMaps) -> DensityTotals {
    DensityTotals {
        action: maps.action.integral(),
        pseudo: maps.pseudo.integral(),
        energy: maps.energy.integral(),
        flux: [maps.flux.x.integral(), maps.flux.y.integral(), maps.flux.z.integral()],
        momentum: [
            maps.momentum.x.integral(),
            maps.momentum.y.integral(),
            maps.momentum.z.integral(),
        ],
    }
}

/// Total field energy including the mass (potential) terms:
/// integral of (E^2 + B^2 + m^2 (A0^2 + A^2)) / 8 pi. For source-free
/// evolution this is the conserved quantity of the massive equations.
pub fn total_energy_with_mass(state: &FieldState) -> f64 {
    let maps_energy = density_maps(state).energy.integral();
    let m2 = state.mass * state.mass;
    let inv8pi = 1.0 / (8.0 * PI);
    let pot = state
        .a0
        .map(|v| v * v)
        .add(&state.a.x.map(|v| v * v))
        .add(&state.a.y.map(|v| v * v))
        .add(&state.a.z.map(|v| v * v))
        .scale(m2 * inv8pi)
        .integral();
    maps_energy + pot
}

/// Densities of the definite-signature (Euclidean) field bivector
/// built on the relative basis e_k e0 of Cl(4,0). Both come out with
/// definite overall signs; see the identity corpus.
#[derive(Debug, Clone)]
pub struct EuclideanDensityMaps {
    /// <F^2>_0 / 8 pi = -(E^2 + B^2)/8pi: definite.
    pub action: ScalarField,
    /// <F F!>_0 / 8 pi = (B^2 - E^2)/8pi.
    pub difference: ScalarField,
}

pub fn euclidean_density_maps(e: &VectorField, b: &VectorField) -> EuclideanDensityMaps {
    let sig = EUCLIDEAN4;
    let grid = e.grid();
    let inv8pi = 1.0 / (8.0 * PI);
    let mut action = ScalarField::zeros(grid);
    let mut difference = ScalarField::zeros(grid);
    grid.for_each(|idx, ii, jj, kk| {
        let f = field_bivector(sig, &e.at(ii, jj, kk), &b.at(ii, jj, kk));
        action.data_mut()[idx] = f.geometric(&f).scalar_part() * inv8pi;
        difference.data_mut()[idx] =
            f.geometric(&f.hermitian_adjoint()).scalar_part() * inv8pi;
    });
    EuclideanDensityMaps { action, difference }
}

/// The stress map T(a) = -(1/2) F a F for a homogeneous grade-1 direction.
/// Always lands on grade 1: F a F reverses to itself but carries odd grade,
/// which rules the trivector part out. The physical tensor is this divided
/// by 4 pi, which is how density_maps scales it; the bare -1/2 form keeps
/// T(g0) . g0 = (E^2 + B^2)/2 clean for algebra-level checks.
pub fn energy_momentum(f: &Mv, a: &Mv) -> Result<Mv, crate::algebra::AlgebraError> {
    match a.homogeneous_grade()? {
        1 => Ok(f.geometric(a).geometric(f).scale(&-0.5)),
        found => Err(crate::algebra::AlgebraError::ExpectedVector { found }),
    }
}

/// T(a) evaluated per cell against the state's field bivector.
pub fn energy_momentum_field(
    state: &FieldState,
    a: &Mv,
) -> Result<super::residual::MultivectorField, crate::algebra::AlgebraError> {
    if a.homogeneous_grade()? != 1 {
        return Err(crate::algebra::AlgebraError::ExpectedVector {
            found: a.homogeneous_grade()?,
        });
    }
    let grid = state.grid();
    let mut out = super::residual::MultivectorField::zeros(grid);
    grid.for_each(|idx, i, j, k| {
        let f = field_bivector(MINKOWSKI, &state.e.at(i, j, k), &state.b.at(i, j, k));
        out.data_mut()[idx] = f.geometric(a).geometric(&f).scale(&-0.5);
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{synth, GridSpec};
    use rand_chacha::rand_core::SeedableRng;

    #[test]
    fn densities_match_component_formulas() {
        let grid = GridSpec::cube(8, 1.0).unwrap();
        let (state, _) = synth::random_state(grid, 11, 0.0, 2.0);
        let maps = density_maps(&state);
        let inv8pi = 1.0 / (8.0 * PI);
        let mut worst: f64 = 0.0;
        grid.for_each(|_, i, j, k| {
            let e = state.e.at(i, j, k);
            let b = state.b.at(i, j, k);
            let e2: f64 = e.iter().map(|v| v * v).sum();
            let b2: f64 = b.iter().map(|v| v * v).sum();
            let dot: f64 = e.iter().zip(&b).map(|(x, y)| x * y).sum();
            let cross = [
                e[1] * b[2] - e[2] * b[1],
                e[2] * b[0] - e[0] * b[2],
                e[0] * b[1] - e[1] * b[0],
            ];
            worst = worst.max((maps.action.at(i, j, k) - (e2 - b2) * inv8pi).abs());
            worst = worst.max((maps.pseudo.at(i, j, k) - dot / (4.0 * PI)).abs());
            worst = worst.max((maps.energy.at(i, j, k) - (e2 + b2) * inv8pi).abs());
            for axis in 0..3 {
                let s = state.c * cross[axis] / (4.0 * PI);
                worst = worst.max((maps.flux.at(i, j, k)[axis] - s).abs());
                // momentum = flux / c^2
                let g = cross[axis] / (4.0 * PI * state.c);
                worst = worst.max((maps.momentum.at(i, j, k)[axis] - g).abs());
            }
        });
        assert!(worst < 1e-12, "worst {worst}");
    }

    #[test]
    fn euclidean_action_is_negative_definite_and_swap_symmetric() {
        let grid = GridSpec::cube(8, 1.0).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let e = synth::band_limited_vector(grid, &mut rng, 2, 1.0);
        let b = synth::band_limited_vector(grid, &mut rng, 2, 1.0);
        let maps = euclidean_density_maps(&e, &b);
        let swapped = euclidean_density_maps(&b, &e);
        assert!(maps.action.data().iter().all(|&v| v <= 0.0));
        // exact float equality / negation under the swap
        assert_eq!(maps.action, swapped.action);
        assert_eq!(maps.difference, swapped.difference.scale(-1.0));
    }

    #[test]
    fn stress_map_projects_to_energy_and_rejects_non_vectors() {
        let sig = MINKOWSKI;
        let e = [0.3, -1.1, 0.7];
        let b = [0.9, 0.2, -0.4];
        let f = field_bivector(sig, &e, &b);
        let g0 = Mv::basis_vector(sig, 0);
        let t = energy_momentum(&f, &g0).unwrap();
        assert_eq!(t.homogeneous_grade().unwrap(), 1);
        let e2: f64 = e.iter().map(|v| v * v).sum();
        let b2: f64 = b.iter().map(|v| v * v).sum();
        assert!((component_on(&t, &g0) - 0.5 * (e2 + b2)).abs() < 1e-14);
        // spatial components carry the cross product
        let cross = [
            e[1] * b[2] - e[2] * b[1],
            e[2] * b[0] - e[0] * b[2],
            e[0] * b[1] - e[1] * b[0],
        ];
        for axis in 0..3 {
            let gk = Mv::basis_vector(sig, axis as u32 + 1);
            assert!((component_on(&t, &gk) - cross[axis]).abs() < 1e-14, "axis {axis}");
        }
        // a bivector direction is rejected with its grade reported
        match energy_momentum(&f, &f) {
            Err(crate::algebra::AlgebraError::ExpectedVector { found: 2 }) => {}
            other => panic!("expected grade complaint, got {other:?}"),
        }
        // mixed-grade directions are rejected too
        let mixed = &g0 + &Mv::scalar(sig, 1.0);
        assert!(energy_momentum(&f, &mixed).is_err());
    }

    #[test]
    fn stress_map_is_duality_invariant() {
        use crate::algebra::duality_rotor;
        let sig = MINKOWSKI;
        let f = field_bivector(sig, &[0.5, -0.2, 1.3], &[-0.7, 0.4, 0.6]);
        let a = {
            // an arbitrary timelike direction
            let mut v = Mv::basis_vector(sig, 0).scale(&2.0);
            v = &v + &Mv::basis_vector(sig, 2).scale(&0.5);
            v
        };
        let t = energy_momentum(&f, &a).unwrap();
        // exact for the quarter turn
        let fq = f.geometric(&duality_rotor(sig, std::f64::consts::FRAC_PI_2).unwrap());
        let tq = energy_momentum(&fq, &a).unwrap();
        assert_eq!(t, tq);
        // rounding-level for a generic angle
        let fg = f.geometric(&duality_rotor(sig, 0.37).unwrap());
        let tg = energy_momentum(&fg, &a).unwrap();
        let diff = &t - &tg;
        assert!(diff.max_abs_coeff() < 1e-14, "{}", diff.max_abs_coeff());
    }

    #[test]
    fn stress_field_matches_momentum_and_energy_maps() {
        let grid = GridSpec::cube(8, 1.0).unwrap();
        let (state, _) = synth::random_state(grid, 13, 0.0, 2.0);
        let maps = density_maps(&state);
        let g0 = Mv::basis_vector(MINKOWSKI, 0);
        let t = energy_momentum_field(&state, &g0).unwrap();
        let inv4pi = 1.0 / (4.0 * PI);
        let mut worst: f64 = 0.0;
        grid.for_each(|idx, i, j, k| {
            let cell = &t.data()[idx];
            // time component over 4 pi is the energy density
            let en = component_on(cell, &g0) * inv4pi;
            worst = worst.max((en - maps.energy.at(i, j, k)).abs());
            // spatial part over 4 pi c is the momentum density
            for axis in 0..3 {
                let gk = Mv::basis_vector(MINKOWSKI, axis as u32 + 1);
                let p = component_on(cell, &gk) * inv4pi / state.c;
                worst = worst.max((p - maps.momentum.at(i, j, k)[axis]).abs());
            }
        });
        assert!(worst < 1e-12, "{worst}");
    }
}
