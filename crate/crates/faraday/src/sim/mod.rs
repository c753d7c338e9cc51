//! Time evolution and the signature experiments: massive dispersion,
//! driven evanescence in the definite signature, the monopole Gauss law,
//! and duality time series over stored snapshots.

pub mod dispersion;
pub mod evanescence;
pub mod init;
pub mod leapfrog;
pub mod monopole;

pub use dispersion::{measure_dispersion, write_dispersion_csv, DispersionResult, DispersionSpec};
pub use evanescence::{evanescence_report, write_evanescence_csv, EvanescenceReport};
pub use init::{divergence_free_random, gaussian_electric_state, gaussian_monopole_state, plane_wave_state};
pub use leapfrog::{
    duality_timeseries, write_duality_csv, write_timeseries_csv, DualityRow, Simulation,
    TimeSeriesRow,
};
pub use monopole::{monopole_gauss_check, MonopoleFluxReport};

use crate::fields::{FieldError, FieldState, GridSpec};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("time step violates the CFL bound: c dt / h = {ratio:.4} > {max}")]
    Cfl { ratio: f64, max: f64 },
    #[error("time step must be positive, got {0}")]
    BadDt(f64),
    #[error("non-finite field value detected at step {step}")]
    NonFinite { step: u64 },
    #[error("plane-wave polarization is parallel to k")]
    DegeneratePolarization,
    #[error("wave under-resolved: {cells_per_wavelength:.1} cells per wavelength < {min}")]
    UnderResolved { cells_per_wavelength: f64, min: f64 },
    #[error("decay profile fit failed: {0}")]
    FitFailed(String),
    #[error("relaxation did not reach residual {target:e} after {iters} sweeps (at {reached:e})")]
    NoConvergence { iters: usize, target: f64, reached: f64 },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}

/// Safety factor for the explicit leapfrog on the compact stencil.
pub const CFL_MAX: f64 = 0.5;

/// Run configuration, readable from TOML. Every field has a default so a
/// config file only needs the keys it wants to change.
///
/// ```toml
/// [grid]
/// n = [64, 8, 8]
/// box = [1.0, 1.0, 1.0]
///
/// [physics]
/// mass = 0.0
/// c = 1.0
///
/// [run]
/// dt = 0.003            # omit to use the CFL-limited default
/// steps = 2000
/// diagnostics_every = 10
///
/// [init]
/// kind = "plane-wave"   # plane-wave | gaussian-monopole |
///                       # gaussian-electric | snapshot | zero
/// k_cells = [1, 0, 0]
/// polarization = [0.0, 1.0, 0.0]
/// amplitude = 1.0
/// charge = 1.0          # gaussian-* kinds
/// width_cells = 4.0
/// path = "state.csv"    # snapshot kind
/// ```
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub physics: PhysicsSection,
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub init: InitSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    #[serde(default = "default_n")]
    pub n: [usize; 3],
    #[serde(rename = "box", default = "default_box")]
    pub box_len: [f64; 3],
}

fn default_n() -> [usize; 3] {
    [32, 32, 32]
}
fn default_box() -> [f64; 3] {
    [1.0, 1.0, 1.0]
}

impl Default for GridSection {
    fn default() -> Self {
        GridSection { n: default_n(), box_len: default_box() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicsSection {
    #[serde(default)]
    pub mass: f64,
    #[serde(default = "default_c")]
    pub c: f64,
}

fn default_c() -> f64 {
    1.0
}

impl Default for PhysicsSection {
    fn default() -> Self {
        PhysicsSection { mass: 0.0, c: default_c() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    /// Time step; `None` means the CFL-limited default 0.5 h_min / c.
    #[serde(default)]
    pub dt: Option<f64>,
    #[serde(default = "default_steps")]
    pub steps: u64,
    #[serde(default = "default_cadence")]
    pub diagnostics_every: u64,
}

fn default_steps() -> u64 {
    100
}
fn default_cadence() -> u64 {
    10
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection { dt: None, steps: default_steps(), diagnostics_every: default_cadence() }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitSection {
    pub kind: String,
    #[serde(default = "default_k_cells")]
    pub k_cells: [i32; 3],
    #[serde(default = "default_polarization")]
    pub polarization: [f64; 3],
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
    #[serde(default = "default_charge")]
    pub charge: f64,
    #[serde(default = "default_width")]
    pub width_cells: f64,
    #[serde(default)]
    pub path: Option<String>,
}

fn default_k_cells() -> [i32; 3] {
    [1, 0, 0]
}
fn default_polarization() -> [f64; 3] {
    [0.0, 1.0, 0.0]
}
fn default_amplitude() -> f64 {
    1.0
}
fn default_charge() -> f64 {
    1.0
}
fn default_width() -> f64 {
    4.0
}

impl Default for InitSection {
    fn default() -> Self {
        InitSection {
            kind: "zero".into(),
            k_cells: default_k_cells(),
            polarization: default_polarization(),
            amplitude: default_amplitude(),
            charge: default_charge(),
            width_cells: default_width(),
            path: None,
        }
    }
}

impl SimConfig {
    pub fn from_toml(text: &str) -> Result<Self, SimError> {
        toml::from_str(text).map_err(|e| SimError::Config(e.to_string()))
    }

    pub fn grid_spec(&self) -> Result<GridSpec, FieldError> {
        GridSpec::new(self.grid.n, self.grid.box_len)
    }

    /// CFL-limited default when dt is not given.
    pub fn time_step(&self, grid: GridSpec) -> f64 {
        self.run.dt.unwrap_or(CFL_MAX * grid.min_h() / self.physics.c)
    }

    /// Build the initial state the `[init]` section describes.
    pub fn initial_state(&self) -> Result<FieldState, SimError> {
        let grid = self.grid_spec()?;
        let (mass, c) = (self.physics.mass, self.physics.c);
        match self.init.kind.as_str() {
            "zero" => Ok(FieldState::vacuum(grid, mass, c)),
            "plane-wave" => plane_wave_state(
                grid,
                self.init.k_cells,
                self.init.polarization,
                self.init.amplitude,
                mass,
                c,
            ),
            "gaussian-monopole" => Ok(gaussian_monopole_state(
                grid,
                self.init.charge,
                self.init.width_cells,
                mass,
                c,
            )),
            "gaussian-electric" => Ok(gaussian_electric_state(
                grid,
                self.init.charge,
                self.init.width_cells,
                mass,
                c,
            )),
            "snapshot" => {
                let path = self.init.path.as_deref().ok_or_else(|| {
                    SimError::Config("init.kind = \"snapshot\" needs init.path".into())
                })?;
                let mut state = crate::fields::read_snapshot(std::path::Path::new(path))?;
                state.mass = mass;
                state.c = c;
                Ok(state)
            }
            other => Err(SimError::Config(format!(
                "unknown init.kind {other:?}; expected zero | plane-wave | \
                 gaussian-monopole | gaussian-electric | snapshot"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_roundtrip_with_defaults() {
        let cfg = SimConfig::from_toml("").unwrap();
        assert_eq!(cfg.grid.n, [32, 32, 32]);
        assert_eq!(cfg.physics.c, 1.0);
        assert_eq!(cfg.init.kind, "zero");
        let grid = cfg.grid_spec().unwrap();
        let dt = cfg.time_step(grid);
        assert!((dt - 0.5 / 32.0).abs() < 1e-15);
    }

    #[test]
    fn toml_sections_override_defaults() {
        let cfg = SimConfig::from_toml(
            r#"
            [grid]
            n = [64, 8, 8]
            box = [2.0, 1.0, 1.0]

            [physics]
            mass = 0.5
            c = 2.0

            [run]
            steps = 500
            diagnostics_every = 25

            [init]
            kind = "plane-wave"
            k_cells = [2, 0, 0]
            amplitude = 0.1
            "#,
        )
        .unwrap();
        assert_eq!(cfg.grid.n, [64, 8, 8]);
        assert_eq!(cfg.physics.mass, 0.5);
        assert_eq!(cfg.run.steps, 500);
        assert_eq!(cfg.init.k_cells, [2, 0, 0]);
        let state = cfg.initial_state().unwrap();
        assert_eq!(state.mass, 0.5);
        assert!(state.e.linf() > 0.0);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = SimConfig::from_toml("[grid]\nn = [8,8,8]\nbox = [1,1,1]\ntypo = 3\n");
        assert!(err.is_err());
    }

    #[test]
    fn partial_sections_keep_defaults_for_missing_keys() {
        let cfg = SimConfig::from_toml("[physics]\nmass = 0.5\n\n[run]\nsteps = 7\n").unwrap();
        assert_eq!(cfg.physics.c, 1.0);
        assert_eq!(cfg.physics.mass, 0.5);
        assert_eq!(cfg.run.steps, 7);
        assert_eq!(cfg.run.diagnostics_every, 10);
    }

    #[test]
    fn unknown_init_kind_is_an_error() {
        let cfg = SimConfig::from_toml("[init]\nkind = \"vortex\"\n").unwrap();
        assert!(matches!(cfg.initial_state(), Err(SimError::Config(_))));
    }
}
