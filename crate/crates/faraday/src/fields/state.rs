//! Full electromagnetic state on a grid, plus snapshot serialization.

use super::grid::GridSpec;
use super::scalar::{ScalarField, VectorField};
use super::FieldError;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

/// Everything the field equations mention, colocated on one grid at one
/// instant: fields, potentials, and both kinds of source.
#[derive(Debug, Clone)]
pub struct FieldState {
    pub e: VectorField,
    pub b: VectorField,
    pub a0: ScalarField,
    pub a: VectorField,
    pub rho_e: ScalarField,
    pub j_e: VectorField,
    pub rho_m: ScalarField,
    pub j_m: VectorField,
    /// Field mass in inverse length units (0 = massless).
    pub mass: f64,
    /// Wave speed.
    pub c: f64,
    /// Time of this snapshot.
    pub t: f64,
}

impl FieldState {
    pub fn vacuum(grid: GridSpec, mass: f64, c: f64) -> Self {
        FieldState {
            e: VectorField::zeros(grid),
            b: VectorField::zeros(grid),
            a0: ScalarField::zeros(grid),
            a: VectorField::zeros(grid),
            rho_e: ScalarField::zeros(grid),
            j_e: VectorField::zeros(grid),
            rho_m: ScalarField::zeros(grid),
            j_m: VectorField::zeros(grid),
            mass,
            c,
            t: 0.0,
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.e.grid()
    }

    pub fn is_finite(&self) -> bool {
        self.e.is_finite()
            && self.b.is_finite()
            && self.a0.is_finite()
            && self.a.is_finite()
            && self.rho_e.is_finite()
            && self.j_e.is_finite()
            && self.rho_m.is_finite()
            && self.j_m.is_finite()
    }
}

/// Time derivatives of the dynamic fields at the same instant, supplied
/// either analytically or from bracketing simulation steps.
#[derive(Debug, Clone)]
pub struct TimeDerivs {
    pub de: VectorField,
    pub db: VectorField,
}

impl TimeDerivs {
    pub fn zero(grid: GridSpec) -> Self {
        TimeDerivs { de: VectorField::zeros(grid), db: VectorField::zeros(grid) }
    }
}

/// Time derivatives needed for the continuity checks: the two charge
/// densities and the scalar potential.
#[derive(Debug, Clone)]
pub struct SourceDerivs {
    pub drho_e: ScalarField,
    pub drho_m: ScalarField,
    pub da0_dt: ScalarField,
}

impl SourceDerivs {
    pub fn zero(grid: GridSpec) -> Self {
        SourceDerivs {
            drho_e: ScalarField::zeros(grid),
            drho_m: ScalarField::zeros(grid),
            da0_dt: ScalarField::zeros(grid),
        }
    }
}

/// Sidecar metadata written next to every snapshot CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SnapshotMeta {
    pub n: [usize; 3],
    pub box_len: [f64; 3],
    pub mass: f64,
    pub c: f64,
    pub t: f64,
    pub columns: Vec<String>,
}

const COLUMNS: [&str; 13] =
    ["ix", "iy", "iz", "Ex", "Ey", "Ez", "Bx", "By", "Bz", "A0", "Ax", "Ay", "Az"];

fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

/// Write `<path>` as CSV (fields only; sources are scenario inputs, not
/// state) and `<path with .json>` as metadata. Output is deterministic:
/// fixed column order, storage-order rows, shortest round-trip floats.
pub fn write_snapshot(state: &FieldState, path: &Path) -> Result<(), FieldError> {
    let grid = state.grid();
    let meta = SnapshotMeta {
        n: grid.n(),
        box_len: grid.len(),
        mass: state.mass,
        c: state.c,
        t: state.t,
        columns: COLUMNS.iter().map(|s| s.to_string()).collect(),
    };
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "{}", COLUMNS.join(","))?;
    let mut row_err = Ok(());
    grid.for_each(|_, i, j, k| {
        if row_err.is_err() {
            return;
        }
        let e = state.e.at(i, j, k);
        let b = state.b.at(i, j, k);
        let a = state.a.at(i, j, k);
        row_err = writeln!(
            out,
            "{i},{j},{k},{},{},{},{},{},{},{},{},{},{}",
            e[0], e[1], e[2], b[0], b[1], b[2],
            state.a0.at(i, j, k), a[0], a[1], a[2]
        );
    });
    row_err?;
    out.flush()?;
    let json = serde_json::to_string_pretty(&meta).expect("meta serializes");
    std::fs::write(sidecar_path(path), json + "\n")?;
    Ok(())
}

/// Read a snapshot written by [`write_snapshot`]. Sources come back zeroed.
pub fn read_snapshot(path: &Path) -> Result<FieldState, FieldError> {
    let meta_src = std::fs::read_to_string(sidecar_path(path))?;
    let meta: SnapshotMeta = serde_json::from_str(&meta_src)
        .map_err(|e| FieldError::Format(format!("snapshot sidecar: {e}")))?;
    let grid = GridSpec::new(meta.n, meta.box_len)?;
    let mut state = FieldState::vacuum(grid, meta.mass, meta.c);
    state.t = meta.t;

    let file = BufReader::new(std::fs::File::open(path)?);
    let mut lines = file.lines();
    let header = lines
        .next()
        .ok_or_else(|| FieldError::Format("empty snapshot".into()))??;
    if header != COLUMNS.join(",") {
        return Err(FieldError::Format(format!("unexpected snapshot header: {header}")));
    }
    let mut rows = 0usize;
    for line in lines {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let mut cells = line.split(',');
        let mut next = |what: &str| -> Result<f64, FieldError> {
            cells
                .next()
                .ok_or_else(|| FieldError::Format(format!("missing column {what}")))?
                .parse::<f64>()
                .map_err(|e| FieldError::Format(format!("bad {what}: {e}")))
        };
        let i = next("ix")? as usize;
        let j = next("iy")? as usize;
        let k = next("iz")? as usize;
        if i >= meta.n[0] || j >= meta.n[1] || k >= meta.n[2] {
            return Err(FieldError::Format(format!("index ({i},{j},{k}) outside grid")));
        }
        state.e.x.set(i, j, k, next("Ex")?);
        state.e.y.set(i, j, k, next("Ey")?);
        state.e.z.set(i, j, k, next("Ez")?);
        state.b.x.set(i, j, k, next("Bx")?);
        state.b.y.set(i, j, k, next("By")?);
        state.b.z.set(i, j, k, next("Bz")?);
        state.a0.set(i, j, k, next("A0")?);
        state.a.x.set(i, j, k, next("Ax")?);
        state.a.y.set(i, j, k, next("Ay")?);
        state.a.z.set(i, j, k, next("Az")?);
        rows += 1;
    }
    if rows != grid.cells() {
        return Err(FieldError::Format(format!(
            "snapshot has {rows} rows, grid needs {}",
            grid.cells()
        )));
    }
    Ok(state)
}
