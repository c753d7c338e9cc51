//! Periodic structured grid.

use super::FieldError;

/// Uniform periodic grid over a rectangular box. Cell (i,j,k) sits at
/// (i*hx, j*hy, k*hz); the point at n*h wraps back to 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n: [usize; 3],
    len: [f64; 3],
}

impl GridSpec {
    /// Smallest edge supported by the wide (two-cell) stencils.
    pub const MIN_POINTS: usize = 8;

    pub fn new(n: [usize; 3], len: [f64; 3]) -> Result<Self, FieldError> {
        for &ni in &n {
            if ni < Self::MIN_POINTS {
                return Err(FieldError::GridTooSmall { n: ni, min: Self::MIN_POINTS });
            }
        }
        for &li in &len {
            if !(li.is_finite() && li > 0.0) {
                return Err(FieldError::BadBoxLength(li));
            }
        }
        Ok(GridSpec { n, len })
    }

    pub fn cube(n: usize, len: f64) -> Result<Self, FieldError> {
        Self::new([n, n, n], [len, len, len])
    }

    #[inline]
    pub fn n(&self) -> [usize; 3] {
        self.n
    }

    #[inline]
    pub fn len(&self) -> [f64; 3] {
        self.len
    }

    #[inline]
    pub fn cells(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    /// Grid spacing along each axis.
    #[inline]
    pub fn h(&self) -> [f64; 3] {
        [
            self.len[0] / self.n[0] as f64,
            self.len[1] / self.n[1] as f64,
            self.len[2] / self.n[2] as f64,
        ]
    }

    #[inline]
    pub fn min_h(&self) -> f64 {
        let h = self.h();
        h[0].min(h[1]).min(h[2])
    }

    /// Volume of one cell.
    #[inline]
    pub fn cell_volume(&self) -> f64 {
        let h = self.h();
        h[0] * h[1] * h[2]
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.n[0] && j < self.n[1] && k < self.n[2]);
        (k * self.n[1] + j) * self.n[0] + i
    }

    /// Index with periodic wrapping of possibly-negative offsets.
    #[inline]
    pub fn index_wrapped(&self, i: isize, j: isize, k: isize) -> usize {
        let i = i.rem_euclid(self.n[0] as isize) as usize;
        let j = j.rem_euclid(self.n[1] as isize) as usize;
        let k = k.rem_euclid(self.n[2] as isize) as usize;
        self.index(i, j, k)
    }

    /// Coordinates of the cell corner (i,j,k).
    #[inline]
    pub fn position(&self, i: usize, j: usize, k: usize) -> [f64; 3] {
        let h = self.h();
        [i as f64 * h[0], j as f64 * h[1], k as f64 * h[2]]
    }

    /// Visit every cell in storage order.
    pub fn for_each(&self, mut f: impl FnMut(usize, usize, usize, usize)) {
        let mut idx = 0;
        for k in 0..self.n[2] {
            for j in 0..self.n[1] {
                for i in 0..self.n[0] {
                    f(idx, i, j, k);
                    idx += 1;
                }
            }
        }
    }
}

/// Balanced pairwise sum: reproducible independent of chunking or thread
/// count, and noticeably more accurate than naive accumulation.
pub fn tree_sum(mut values: Vec<f64>) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let target = values.len().next_power_of_two();
    values.resize(target, 0.0);
    let mut len = target;
    while len > 1 {
        len /= 2;
        for i in 0..len {
            values[i] += values[i + len];
        }
    }
    values[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(GridSpec::cube(8, 1.0).is_ok());
        assert!(GridSpec::cube(7, 1.0).is_err());
        assert!(GridSpec::new([8, 8, 8], [1.0, 0.0, 1.0]).is_err());
        assert!(GridSpec::new([8, 8, 8], [1.0, f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn anisotropic_spacing() {
        let g = GridSpec::new([16, 8, 8], [2.0, 1.0, 4.0]).unwrap();
        assert_eq!(g.h(), [0.125, 0.125, 0.5]);
        assert_eq!(g.min_h(), 0.125);
        assert_eq!(g.cells(), 1024);
    }

    #[test]
    fn wrapping() {
        let g = GridSpec::cube(8, 1.0).unwrap();
        assert_eq!(g.index_wrapped(-1, 0, 0), g.index(7, 0, 0));
        assert_eq!(g.index_wrapped(8, 3, -2), g.index(0, 3, 6));
    }

    #[test]
    fn tree_sum_matches_exact_and_is_order_stable() {
        let v: Vec<f64> = (1..=100).map(|i| i as f64).collect();
        assert_eq!(tree_sum(v), 5050.0);
        assert_eq!(tree_sum(vec![]), 0.0);
        // padding with zeros must not change a power-of-two sum
        assert_eq!(tree_sum(vec![1.0, 2.0, 3.0]), 6.0);
    }
}
