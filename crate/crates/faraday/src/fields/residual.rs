//! Field-equation residuals, computed two independent ways.
//!
//! The unified form evaluates, per grid cell,
//!
//! ```text
//! R = grad F + m^2 A - (4 pi / c) J_e + (4 pi / c) I J_m
//! ```
//!
//! entirely with Clifford products (F = E + I B, grad = g0 (1/c) d_t - g_k d_k).
//! The classical form evaluates the four textbook combinations
//!
//! ```text
//! gauss_e  = div E - 4 pi rho_e + m^2 A0
//! faraday  = curl E + (1/c) dB/dt + (4 pi / c) j_m
//! gauss_m  = div B - 4 pi rho_m
//! ampere   = curl B - (1/c) dE/dt - (4 pi / c) j_e + m^2 A
//! ```
//!
//! and reassembles them into the same multivector. Both paths read the
//! identical central-difference values from one shared table, so agreement
//! to rounding is a check of the algebra, not of the discretization.

use super::grid::{tree_sum, GridSpec};
use super::scalar::{ScalarField, VectorField};
use super::state::{FieldState, SourceDerivs, TimeDerivs};
use crate::algebra::{blade_grade, field_bivector, relative_vector, Multivector, MINKOWSKI};
use serde::Serialize;
use std::f64::consts::PI;

/// A multivector per grid cell.
#[derive(Debug, Clone)]
pub struct MultivectorField {
    grid: GridSpec,
    data: Vec<Multivector<f64>>,
}

impl MultivectorField {
    pub fn zeros(grid: GridSpec) -> Self {
        MultivectorField { grid, data: vec![Multivector::zero(MINKOWSKI); grid.cells()] }
    }

    #[inline]
    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    #[inline]
    pub fn data(&self) -> &[Multivector<f64>] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [Multivector<f64>] {
        &mut self.data
    }

    /// Largest |coefficient| over all cells and blades.
    pub fn linf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, mv| m.max(mv.max_abs_coeff()))
    }

    /// Largest |coefficient| restricted to one grade.
    pub fn grade_linf(&self, k: u32) -> f64 {
        let mut m = 0.0f64;
        for mv in &self.data {
            for mask in 0..16u16 {
                if blade_grade(mask) == k {
                    m = m.max(mv.coeff(mask).abs());
                }
            }
        }
        m
    }

    /// Volume-weighted L2 norm of one grade (all blades of that grade).
    pub fn grade_l2(&self, k: u32) -> f64 {
        let dv = self.grid.cell_volume();
        let mut terms = Vec::with_capacity(self.data.len());
        for mv in &self.data {
            let mut cell = 0.0;
            for mask in 0..16u16 {
                if blade_grade(mask) == k {
                    let c = mv.coeff(mask);
                    cell += c * c;
                }
            }
            terms.push(cell * dv);
        }
        tree_sum(terms).sqrt()
    }

    pub fn sub(&self, other: &Self) -> MultivectorField {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        MultivectorField {
            grid: self.grid,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// The field bivector F = E + I B per cell.
pub fn assemble_field(state: &FieldState) -> MultivectorField {
    let grid = state.grid();
    let mut out = MultivectorField::zeros(grid);
    grid.for_each(|idx, i, j, k| {
        out.data[idx] = field_bivector(MINKOWSKI, &state.e.at(i, j, k), &state.b.at(i, j, k));
    });
    out
}

/// The spacetime vector derivative of an arbitrary multivector field:
/// grad M = g0 (1/c) dM/dt - g_k d_k M, central differences on every blade
/// coefficient. Pass `None` for a static field. Applied twice to a static
/// scalar this is -laplacian, i.e. the spatial part of the wave operator.
pub fn nabla(
    field: &MultivectorField,
    dfield_dt: Option<&MultivectorField>,
    c: f64,
) -> MultivectorField {
    let sig = MINKOWSKI;
    type Mv = Multivector<f64>;
    let grid = field.grid();
    let mut coeff_partials: Vec<[ScalarField; 3]> = Vec::with_capacity(16);
    for mask in 0..16u16 {
        let mut f = ScalarField::zeros(grid);
        for (idx, mv) in field.data.iter().enumerate() {
            f.data_mut()[idx] = *mv.coeff(mask);
        }
        coeff_partials.push([f.partial(0), f.partial(1), f.partial(2)]);
    }
    let g: Vec<Mv> = (0..4).map(|k| Mv::basis_vector(sig, k)).collect();
    let inv_c = 1.0 / c;
    let mut out = MultivectorField::zeros(grid);
    grid.for_each(|idx, _, _, _| {
        let mut r = match dfield_dt {
            Some(d) => g[0].geometric(&d.data[idx].scale(&inv_c)),
            None => Mv::zero(sig),
        };
        for axis in 0..3 {
            let mut da = Mv::zero(sig);
            for mask in 0..16u16 {
                da.set_coeff(mask, coeff_partials[mask as usize][axis].data()[idx]);
            }
            r = &r - &g[axis + 1].geometric(&da);
        }
        out.data[idx] = r;
    });
    out
}

/// All first partials both residual paths need, computed once.
pub struct DerivTable {
    /// d_axis E as a vector field, axis = 0,1,2.
    pub de: [VectorField; 3],
    pub db: [VectorField; 3],
}

pub fn deriv_table(state: &FieldState) -> DerivTable {
    let d = |v: &VectorField, axis: usize| VectorField {
        x: v.x.partial(axis),
        y: v.y.partial(axis),
        z: v.z.partial(axis),
    };
    DerivTable {
        de: [d(&state.e, 0), d(&state.e, 1), d(&state.e, 2)],
        db: [d(&state.b, 0), d(&state.b, 1), d(&state.b, 2)],
    }
}

fn div_from(table: &[VectorField; 3]) -> ScalarField {
    table[0].x.add(&table[1].y).add(&table[2].z)
}

fn curl_from(table: &[VectorField; 3]) -> VectorField {
    VectorField {
        x: table[1].z.sub(&table[2].y),
        y: table[2].x.sub(&table[0].z),
        z: table[0].y.sub(&table[1].x),
    }
}

/// The four classical residual fields.
#[derive(Debug, Clone)]
pub struct ClassicalResiduals {
    pub gauss_e: ScalarField,
    pub faraday: VectorField,
    pub gauss_m: ScalarField,
    pub ampere: VectorField,
}

pub fn classical_residuals(
    state: &FieldState,
    derivs: &TimeDerivs,
    table: &DerivTable,
) -> ClassicalResiduals {
    let four_pi = 4.0 * PI;
    let inv_c = 1.0 / state.c;
    let m2 = state.mass * state.mass;
    let gauss_e = div_from(&table.de)
        .sub(&state.rho_e.scale(four_pi))
        .add(&state.a0.scale(m2));
    let faraday = curl_from(&table.de)
        .add(&derivs.db.scale(inv_c))
        .add(&state.j_m.scale(four_pi * inv_c));
    let gauss_m = div_from(&table.db).sub(&state.rho_m.scale(four_pi));
    let ampere = curl_from(&table.db)
        .sub(&derivs.de.scale(inv_c))
        .sub(&state.j_e.scale(four_pi * inv_c))
        .add(&state.a.scale(m2));
    ClassicalResiduals { gauss_e, faraday, gauss_m, ampere }
}

/// Unified residual R = grad F + m^2 A - (4 pi/c) J_e + (4 pi/c) I J_m,
/// evaluated cell by cell with Clifford products only.
pub fn unified_residual(
    state: &FieldState,
    derivs: &TimeDerivs,
    table: &DerivTable,
) -> MultivectorField {
    let sig = MINKOWSKI;
    type Mv = Multivector<f64>;
    let g: Vec<Mv> = (0..4).map(|k| Mv::basis_vector(sig, k)).collect();
    let i = Mv::pseudoscalar(sig);
    let four_pi_c = 4.0 * PI / state.c;
    let inv_c = 1.0 / state.c;
    let m2 = state.mass * state.mass;

    let mut out = MultivectorField::zeros(state.grid());
    let grid = state.grid();
    grid.for_each(|idx, ii, jj, kk| {
        // grad F: g0 (1/c) d_t F - g_k d_k F
        let ft = field_bivector(
            sig,
            &derivs.de.at(ii, jj, kk).map(|v| v * inv_c),
            &derivs.db.at(ii, jj, kk).map(|v| v * inv_c),
        );
        let mut r = g[0].geometric(&ft);
        for axis in 0..3 {
            let fa = field_bivector(
                sig,
                &table.de[axis].at(ii, jj, kk),
                &table.db[axis].at(ii, jj, kk),
            );
            r = &r - &g[axis + 1].geometric(&fa);
        }
        // + m^2 A
        let a = state.a.at(ii, jj, kk);
        let mut pot = g[0].scale(&state.a0.at(ii, jj, kk));
        for axis in 0..3 {
            pot = &pot + &g[axis + 1].scale(&a[axis]);
        }
        r = &r + &pot.scale(&m2);
        // - (4 pi / c) J_e
        let je = state.j_e.at(ii, jj, kk);
        let mut cur_e = g[0].scale(&(state.c * state.rho_e.at(ii, jj, kk)));
        for axis in 0..3 {
            cur_e = &cur_e + &g[axis + 1].scale(&je[axis]);
        }
        r = &r - &cur_e.scale(&four_pi_c);
        // + (4 pi / c) I J_m
        let jm = state.j_m.at(ii, jj, kk);
        let mut cur_m = g[0].scale(&(state.c * state.rho_m.at(ii, jj, kk)));
        for axis in 0..3 {
            cur_m = &cur_m + &g[axis + 1].scale(&jm[axis]);
        }
        r = &r + &i.geometric(&cur_m).scale(&four_pi_c);
        out.data[idx] = r;
    });
    out
}

/// Reassemble the classical residuals into the multivector the unified
/// path computes: R = g0 (gauss_e - ampere_s + I faraday_s + I gauss_m)
/// on the relative basis s_k = g_k g0.
pub fn classical_as_multivector(classical: &ClassicalResiduals) -> MultivectorField {
    let sig = MINKOWSKI;
    type Mv = Multivector<f64>;
    let g0 = Mv::basis_vector(sig, 0);
    let i = Mv::pseudoscalar(sig);
    let grid = classical.gauss_e.grid();
    let mut out = MultivectorField::zeros(grid);
    grid.for_each(|idx, ii, jj, kk| {
        let inner = Mv::scalar(sig, classical.gauss_e.at(ii, jj, kk));
        let amp = relative_vector(sig, &classical.ampere.at(ii, jj, kk));
        let far = relative_vector(sig, &classical.faraday.at(ii, jj, kk));
        let inner = &inner - &amp;
        let inner = &inner + &i.geometric(&far);
        let inner = &inner + &i.scale(&classical.gauss_m.at(ii, jj, kk));
        out.data[idx] = g0.geometric(&inner);
    });
    out
}

/// Norm summary of one residual field, per sector.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    /// Electric sector (vector part: charge form).
    pub grade1_linf: f64,
    pub grade1_l2: f64,
    /// Magnetic sector (trivector part: monopole form).
    pub grade3_linf: f64,
    pub grade3_l2: f64,
    pub gauss_e_linf: f64,
    pub gauss_e_l2: f64,
    pub faraday_linf: f64,
    pub faraday_l2: f64,
    pub gauss_m_linf: f64,
    pub gauss_m_l2: f64,
    pub ampere_linf: f64,
    pub ampere_l2: f64,
}

pub fn residual_report(state: &FieldState, derivs: &TimeDerivs) -> ResidualReport {
    let table = deriv_table(state);
    let classical = classical_residuals(state, derivs, &table);
    let unified = unified_residual(state, derivs, &table);
    ResidualReport {
        grade1_linf: unified.grade_linf(1),
        grade1_l2: unified.grade_l2(1),
        grade3_linf: unified.grade_linf(3),
        grade3_l2: unified.grade_l2(3),
        gauss_e_linf: classical.gauss_e.linf(),
        gauss_e_l2: classical.gauss_e.l2(),
        faraday_linf: classical.faraday.linf(),
        faraday_l2: classical.faraday.l2(),
        gauss_m_linf: classical.gauss_m.linf(),
        gauss_m_l2: classical.gauss_m.l2(),
        ampere_linf: classical.ampere.linf(),
        ampere_l2: classical.ampere.l2(),
    }
}

/// Agreement between the two residual paths.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub max_diff: f64,
    pub unified_linf: f64,
    pub classical_linf: f64,
    pub cells: usize,
}

pub fn equivalence_report(state: &FieldState, derivs: &TimeDerivs) -> EquivalenceReport {
    let table = deriv_table(state);
    let unified = unified_residual(state, derivs, &table);
    let classical = classical_as_multivector(&classical_residuals(state, derivs, &table));
    EquivalenceReport {
        max_diff: unified.sub(&classical).linf(),
        unified_linf: unified.linf(),
        classical_linf: classical.linf(),
        cells: state.grid().cells(),
    }
}

/// Continuity of both current sectors, as spacetime divergences
/// d rho/dt + div j. Applying the vector derivative to the field equation
/// forces the scalar part (4 pi/c) div J_e - m^2 div A to vanish and the
/// pseudoscalar part div J_m to vanish outright, so the electric current
/// is conserved up to the mass compensator (c/4 pi) m^2 (dA0/(c dt) + div A)
/// and the magnetic current unconditionally.
#[derive(Debug, Clone, Serialize)]
pub struct ConservationReport {
    pub electric_linf: f64,
    pub electric_l2: f64,
    pub magnetic_linf: f64,
    pub magnetic_l2: f64,
}

pub fn conservation_report(state: &FieldState, sources: &SourceDerivs) -> ConservationReport {
    let m2 = state.mass * state.mass;
    let div_a = state.a.divergence().add(&sources.da0_dt.scale(1.0 / state.c));
    let electric = sources
        .drho_e
        .add(&state.j_e.divergence())
        .sub(&div_a.scale(state.c * m2 / (4.0 * PI)));
    let magnetic = sources.drho_m.add(&state.j_m.divergence());
    ConservationReport {
        electric_linf: electric.linf(),
        electric_l2: electric.l2(),
        magnetic_linf: magnetic.linf(),
        magnetic_l2: magnetic.l2(),
    }
}
