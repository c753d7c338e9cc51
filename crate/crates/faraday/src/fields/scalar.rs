//! Scalar and 3-vector fields on a periodic grid, with the second-order
//! central difference operators used everywhere in this crate.

use super::grid::{tree_sum, GridSpec};
use super::FieldError;

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: GridSpec,
    data: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: GridSpec) -> Self {
        ScalarField { grid, data: vec![0.0; grid.cells()] }
    }

    pub fn from_fn(grid: GridSpec, mut f: impl FnMut([f64; 3]) -> f64) -> Self {
        let mut field = Self::zeros(grid);
        grid.for_each(|idx, i, j, k| {
            field.data[idx] = f(grid.position(i, j, k));
        });
        field
    }

    #[inline]
    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    #[inline]
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[self.grid.index(i, j, k)]
    }

    #[inline]
    pub fn at_wrapped(&self, i: isize, j: isize, k: isize) -> f64 {
        self.data[self.grid.index_wrapped(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: f64) {
        let idx = self.grid.index(i, j, k);
        self.data[idx] = v;
    }

    fn same_grid(&self, other: &Self) -> Result<(), FieldError> {
        if self.grid != other.grid {
            return Err(FieldError::GridMismatch);
        }
        Ok(())
    }

    /// Central difference along `axis` (0, 1, 2), second order, periodic.
    pub fn partial(&self, axis: usize) -> ScalarField {
        let h2 = 2.0 * self.grid.h()[axis];
        let mut out = Self::zeros(self.grid);
        self.grid.for_each(|idx, i, j, k| {
            let (i, j, k) = (i as isize, j as isize, k as isize);
            let (fwd, bwd) = match axis {
                0 => (self.at_wrapped(i + 1, j, k), self.at_wrapped(i - 1, j, k)),
                1 => (self.at_wrapped(i, j + 1, k), self.at_wrapped(i, j - 1, k)),
                2 => (self.at_wrapped(i, j, k + 1), self.at_wrapped(i, j, k - 1)),
                _ => panic!("axis out of range"),
            };
            out.data[idx] = (fwd - bwd) / h2;
        });
        out
    }

    /// Compact 7-point Laplacian: one-cell stencil, second order. This is
    /// the operator the potential solver inverts; its face-difference form
    /// makes discrete flux balances exact.
    pub fn laplacian_compact(&self) -> ScalarField {
        let h = self.grid.h();
        let inv = [1.0 / (h[0] * h[0]), 1.0 / (h[1] * h[1]), 1.0 / (h[2] * h[2])];
        let mut out = Self::zeros(self.grid);
        self.grid.for_each(|idx, i, j, k| {
            let (i, j, k) = (i as isize, j as isize, k as isize);
            let c = self.data[idx];
            out.data[idx] = (self.at_wrapped(i + 1, j, k) - 2.0 * c + self.at_wrapped(i - 1, j, k)) * inv[0]
                + (self.at_wrapped(i, j + 1, k) - 2.0 * c + self.at_wrapped(i, j - 1, k)) * inv[1]
                + (self.at_wrapped(i, j, k + 1) - 2.0 * c + self.at_wrapped(i, j, k - 1)) * inv[2];
        });
        out
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> ScalarField {
        ScalarField { grid: self.grid, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn zip(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<ScalarField, FieldError> {
        self.same_grid(other)?;
        Ok(ScalarField {
            grid: self.grid,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> ScalarField {
        self.zip(other, |a, b| a + b).expect("grid mismatch")
    }

    pub fn sub(&self, other: &Self) -> ScalarField {
        self.zip(other, |a, b| a - b).expect("grid mismatch")
    }

    pub fn scale(&self, s: f64) -> ScalarField {
        self.map(|v| v * s)
    }

    pub fn linf(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Volume-weighted L2 norm.
    pub fn l2(&self) -> f64 {
        let dv = self.grid.cell_volume();
        tree_sum(self.data.iter().map(|v| v * v * dv).collect()).sqrt()
    }

    pub fn integral(&self) -> f64 {
        let dv = self.grid.cell_volume();
        tree_sum(self.data.iter().map(|v| v * dv).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub x: ScalarField,
    pub y: ScalarField,
    pub z: ScalarField,
}

impl VectorField {
    pub fn zeros(grid: GridSpec) -> Self {
        VectorField {
            x: ScalarField::zeros(grid),
            y: ScalarField::zeros(grid),
            z: ScalarField::zeros(grid),
        }
    }

    pub fn from_fn(grid: GridSpec, f: impl Fn([f64; 3]) -> [f64; 3]) -> Self {
        VectorField {
            x: ScalarField::from_fn(grid, |p| f(p)[0]),
            y: ScalarField::from_fn(grid, |p| f(p)[1]),
            z: ScalarField::from_fn(grid, |p| f(p)[2]),
        }
    }

    #[inline]
    pub fn grid(&self) -> GridSpec {
        self.x.grid()
    }

    pub fn component(&self, axis: usize) -> &ScalarField {
        match axis {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("axis out of range"),
        }
    }

    pub fn at(&self, i: usize, j: usize, k: usize) -> [f64; 3] {
        [self.x.at(i, j, k), self.y.at(i, j, k), self.z.at(i, j, k)]
    }

    pub fn divergence(&self) -> ScalarField {
        self.x.partial(0).add(&self.y.partial(1)).add(&self.z.partial(2))
    }

    pub fn curl(&self) -> VectorField {
        VectorField {
            x: self.z.partial(1).sub(&self.y.partial(2)),
            y: self.x.partial(2).sub(&self.z.partial(0)),
            z: self.y.partial(0).sub(&self.x.partial(1)),
        }
    }

    pub fn add(&self, other: &Self) -> VectorField {
        VectorField { x: self.x.add(&other.x), y: self.y.add(&other.y), z: self.z.add(&other.z) }
    }

    pub fn sub(&self, other: &Self) -> VectorField {
        VectorField { x: self.x.sub(&other.x), y: self.y.sub(&other.y), z: self.z.sub(&other.z) }
    }

    pub fn scale(&self, s: f64) -> VectorField {
        VectorField { x: self.x.scale(s), y: self.y.scale(s), z: self.z.scale(s) }
    }

    pub fn linf(&self) -> f64 {
        self.x.linf().max(self.y.linf()).max(self.z.linf())
    }

    pub fn l2(&self) -> f64 {
        let dv = self.grid().cell_volume();
        let sq = |f: &ScalarField| f.data().iter().map(|v| v * v * dv).collect::<Vec<_>>();
        let mut terms = sq(&self.x);
        terms.extend(sq(&self.y));
        terms.extend(sq(&self.z));
        tree_sum(terms).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Gradient of a scalar field.
pub fn gradient(f: &ScalarField) -> VectorField {
    VectorField { x: f.partial(0), y: f.partial(1), z: f.partial(2) }
}
