//! Discrete multivector fields: periodic grids, central differences,
//! residuals of the field equations, densities, and transforms.

pub mod densities;
pub mod grid;
pub mod residual;
pub mod scalar;
pub mod state;
pub mod synth;
pub mod transforms;

pub use densities::{
    density_maps, density_totals, energy_momentum, energy_momentum_field, euclidean_density_maps,
    total_energy_with_mass, DensityMaps, DensityTotals, EuclideanDensityMaps,
};
pub use grid::{tree_sum, GridSpec};
pub use residual::{
    assemble_field, classical_as_multivector, classical_residuals, conservation_report,
    deriv_table, equivalence_report, nabla, residual_report, unified_residual,
    ClassicalResiduals, ConservationReport, DerivTable, EquivalenceReport, MultivectorField,
    ResidualReport,
};
pub use scalar::{gradient, ScalarField, VectorField};
pub use state::{
    read_snapshot, write_snapshot, FieldState, SnapshotMeta, SourceDerivs, TimeDerivs,
};
pub use transforms::{
    boost_fields, duality_report, duality_rotate, duality_rotate_derivs, euclidean_swap,
    fields_from_potentials, gauge_report, gauge_shift, DualityReport, GaugeProbe, GaugeReport,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("grid needs at least {min} points per axis, got {n}")]
    GridTooSmall { n: usize, min: usize },
    #[error("box length must be finite and positive, got {0}")]
    BadBoxLength(f64),
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("non-finite value in field '{0}'")]
    NonFinite(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Format(String),
}
