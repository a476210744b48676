//! Uniform periodic grids on the circle and the 2-torus.
//!
//! The fundamental domain is `[-pi, pi)`; a grid of size `N` consists of the
//! points `x_j = -pi + 2*pi*j/N` and owns the cells `[x_j, x_j + h)` with
//! `h = 2*pi/N`. Sizes are restricted to powers of two so that dyadic
//! bisection and the fast transforms are exact. Quadrature is the plain cell
//! sum `h * sum f(x_j)`, which on a uniform periodic grid coincides with the
//! trapezoid and midpoint rules and integrates trigonometric polynomials of
//! degree below `N/2` exactly.

use crate::error::{LabError, Result};
use std::f64::consts::PI;

pub const TWO_PI: f64 = 2.0 * PI;

/// Uniform grid of `n` cells on `[-pi, pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodicGrid {
    n: usize,
}

impl PeriodicGrid {
    /// Builds a grid with `n` cells; `n` must be a power of two, at least 8.
    pub fn new(n: usize) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(LabError::InvalidResolution { n });
        }
        Ok(PeriodicGrid { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cell width `h = 2*pi/n`.
    pub fn cell_width(&self) -> f64 {
        TWO_PI / self.n as f64
    }

    /// The grid point `x_j = -pi + 2*pi*j/n`.
    pub fn point(&self, j: usize) -> f64 {
        -PI + TWO_PI * j as f64 / self.n as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.point(j))
    }

    /// Index of the grid point equal to `x` (within 1e-12), if any.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let u = (x + PI) / self.cell_width();
        let j = u.round();
        if (u - j).abs() > 1e-12 * self.n as f64 {
            return None;
        }
        let j = j as i64;
        if j >= 0 && (j as usize) < self.n {
            Some(j as usize)
        } else if j as usize == self.n {
            Some(0)
        } else {
            None
        }
    }

    /// Wraps an index onto the grid.
    pub fn wrap(&self, j: i64) -> usize {
        j.rem_euclid(self.n as i64) as usize
    }

    /// Maximal representable partial-sum frequency, `n/2 - 1`.
    pub fn max_frequency(&self) -> usize {
        self.n / 2 - 1
    }
}

/// Real-valued samples of a `2*pi`-periodic function on a [`PeriodicGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction1D {
    grid: PeriodicGrid,
    values: Vec<f64>,
}

impl SampledFunction1D {
    pub fn from_values(grid: PeriodicGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(LabError::InvalidConfig {
                reason: format!("expected {} samples, got {}", grid.len(), values.len()),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(LabError::InvalidConfig {
                reason: "non-finite sample value".to_string(),
            });
        }
        Ok(SampledFunction1D { grid, values })
    }

    pub fn from_fn(grid: PeriodicGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::from_values(grid, values)
    }

    pub fn grid(&self) -> PeriodicGrid {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, j: usize) -> f64 {
        self.values[j]
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_values(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        self.map(|v| c * v)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(LabError::InvalidConfig {
                reason: "grid mismatch in add".to_string(),
            });
        }
        Self::from_values(
            self.grid,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Cell-sum quadrature `h * sum_j f(x_j)`; summation is left-to-right.
    pub fn integrate(&self) -> f64 {
        let mut acc = 0.0;
        for &v in &self.values {
            acc += v;
        }
        acc * self.grid.cell_width()
    }

    /// Cell-counting measure of the level set `{x : f(x) > lambda}`.
    pub fn level_set_measure(&self, lambda: f64) -> f64 {
        let count = self.values.iter().filter(|&&v| v > lambda).count();
        count as f64 * self.grid.cell_width()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, &v| m.max(v.abs()))
    }
}

/// Real-valued samples on a product grid, stored row-major by the first
/// coordinate: the value at `(x1_i, x2_j)` sits at `values[i * n2 + j]`.
/// Accessor order is `(x1, x2)` everywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction2D {
    grid1: PeriodicGrid,
    grid2: PeriodicGrid,
    values: Vec<f64>,
}

impl SampledFunction2D {
    pub fn from_values(grid1: PeriodicGrid, grid2: PeriodicGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid1.len() * grid2.len() {
            return Err(LabError::InvalidConfig {
                reason: format!(
                    "expected {} samples, got {}",
                    grid1.len() * grid2.len(),
                    values.len()
                ),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(LabError::InvalidConfig {
                reason: "non-finite sample value".to_string(),
            });
        }
        Ok(SampledFunction2D { grid1, grid2, values })
    }

    pub fn from_fn(
        grid1: PeriodicGrid,
        grid2: PeriodicGrid,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(grid1.len() * grid2.len());
        for i in 0..grid1.len() {
            let x1 = grid1.point(i);
            for j in 0..grid2.len() {
                values.push(f(x1, grid2.point(j)));
            }
        }
        Self::from_values(grid1, grid2, values)
    }

    pub fn grid1(&self) -> PeriodicGrid {
        self.grid1
    }

    pub fn grid2(&self) -> PeriodicGrid {
        self.grid2
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i1: usize, i2: usize) -> f64 {
        self.values[i1 * self.grid2.len() + i2]
    }

    /// The section `x1 -> f(x1, x2)` at the fixed second coordinate.
    pub fn section_at_x2(&self, i2: usize) -> SampledFunction1D {
        let n2 = self.grid2.len();
        let values = (0..self.grid1.len())
            .map(|i1| self.values[i1 * n2 + i2])
            .collect();
        SampledFunction1D { grid: self.grid1, values }
    }

    /// The section `x2 -> f(x1, x2)` at the fixed first coordinate.
    pub fn section_at_x1(&self, i1: usize) -> SampledFunction1D {
        let n2 = self.grid2.len();
        let values = self.values[i1 * n2..(i1 + 1) * n2].to_vec();
        SampledFunction1D { grid: self.grid2, values }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_values(
            self.grid1,
            self.grid2,
            self.values.iter().map(|&v| f(v)).collect(),
        )
    }

    pub fn scale(&self, c: f64) -> Result<Self> {
        self.map(|v| c * v)
    }

    pub fn integrate(&self) -> f64 {
        let mut acc = 0.0;
        for &v in &self.values {
            acc += v;
        }
        acc * self.grid1.cell_width() * self.grid2.cell_width()
    }

    pub fn level_set_measure(&self, lambda: f64) -> f64 {
        let count = self.values.iter().filter(|&&v| v > lambda).count();
        count as f64 * self.grid1.cell_width() * self.grid2.cell_width()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, &v| m.max(v.abs()))
    }
}

/// Periodic arc distance between two angles.
pub fn torus_distance(a: f64, b: f64) -> f64 {
    let mut d = (a - b).rem_euclid(TWO_PI);
    if d > PI {
        d = TWO_PI - d;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_points_n8() {
        let g = PeriodicGrid::new(8).unwrap();
        let pts: Vec<f64> = g.points().collect();
        assert_eq!(pts.len(), 8);
        assert_eq!(pts[0], -PI);
        assert!((pts[1] - (-3.0 * PI / 4.0)).abs() < 1e-15);
        assert!((pts[7] - 3.0 * PI / 4.0).abs() < 1e-15);
        assert!((g.cell_width() - PI / 4.0).abs() < 1e-15);
        // strictly increasing, inside [-pi, pi)
        for w in pts.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(*pts.last().unwrap() < PI);
    }

    #[test]
    fn grid_rejects_bad_sizes() {
        assert!(matches!(
            PeriodicGrid::new(7),
            Err(LabError::InvalidResolution { n: 7 })
        ));
        assert!(PeriodicGrid::new(4).is_err());
        assert!(PeriodicGrid::new(12).is_err());
    }

    #[test]
    fn grid_n256_last_point() {
        let g = PeriodicGrid::new(256).unwrap();
        assert_eq!(g.len(), 256);
        assert!((g.point(255) - (PI - TWO_PI / 256.0)).abs() < 1e-15);
    }

    #[test]
    fn index_of_roundtrip() {
        let g = PeriodicGrid::new(64).unwrap();
        for j in 0..64 {
            assert_eq!(g.index_of(g.point(j)), Some(j));
        }
        assert_eq!(g.index_of(0.1), None);
    }

    #[test]
    fn integrate_constant() {
        let g = PeriodicGrid::new(16).unwrap();
        let f = SampledFunction1D::from_fn(g, |_| 1.0).unwrap();
        assert!((f.integrate() - TWO_PI).abs() < 1e-14);
    }

    #[test]
    fn integrate_cosine_vanishes() {
        let g = PeriodicGrid::new(16).unwrap();
        let f = SampledFunction1D::from_fn(g, |x| x.cos()).unwrap();
        assert!(f.integrate().abs() < 1e-13);
    }

    #[test]
    fn integrate_abs_x_refinement() {
        // coarse run against the fine-grid oracle
        let coarse = SampledFunction1D::from_fn(PeriodicGrid::new(64).unwrap(), |x| x.abs())
            .unwrap()
            .integrate();
        let fine = SampledFunction1D::from_fn(PeriodicGrid::new(4096).unwrap(), |x| x.abs())
            .unwrap()
            .integrate();
        assert!((coarse - fine).abs() < 1e-2, "coarse {coarse} fine {fine}");
    }

    #[test]
    fn level_set_trivial() {
        let g = PeriodicGrid::new(32).unwrap();
        let f = SampledFunction1D::from_fn(g, |_| 1.0).unwrap();
        assert!((f.level_set_measure(0.5) - TWO_PI).abs() < 1e-14);
        assert_eq!(f.level_set_measure(2.0), 0.0);
    }

    #[test]
    fn level_set_identity_function() {
        // oracle: count positive grid points directly
        let g = PeriodicGrid::new(64).unwrap();
        let f = SampledFunction1D::from_fn(g, |x| x).unwrap();
        let direct = g.points().filter(|&x| x > 0.0).count() as f64 * g.cell_width();
        assert_eq!(f.level_set_measure(0.0), direct);
        // half the cells minus the zero cell
        assert!((direct - (PI - g.cell_width())).abs() < 1e-14);
    }

    #[test]
    fn level_set_monotone_and_complementary() {
        let g = PeriodicGrid::new(64).unwrap();
        let f = SampledFunction1D::from_fn(g, |x| (3.0 * x).sin() + 0.3 * x).unwrap();
        let neg = f.scale(-1.0).unwrap();
        let lambdas = [-2.0, -1.0, -0.5, 0.0, 0.3, 1.0, 2.0];
        for w in lambdas.windows(2) {
            assert!(f.level_set_measure(w[0]) >= f.level_set_measure(w[1]));
        }
        for &l in &lambdas {
            let exact = f.values().iter().filter(|&&v| v == l).count() as f64 * g.cell_width();
            let total = f.level_set_measure(l) + neg.level_set_measure(-l);
            assert!(total >= TWO_PI - exact - 1e-12);
        }
    }

    #[test]
    fn integrate_2d_constant() {
        let g = PeriodicGrid::new(8).unwrap();
        let f = SampledFunction2D::from_fn(g, g, |_, _| 2.0).unwrap();
        assert!((f.integrate() - 2.0 * TWO_PI * TWO_PI).abs() < 1e-12);
    }

    #[test]
    fn sections_respect_accessor_order() {
        let g1 = PeriodicGrid::new(8).unwrap();
        let g2 = PeriodicGrid::new(16).unwrap();
        let f = SampledFunction2D::from_fn(g1, g2, |x1, x2| x1 + 10.0 * x2).unwrap();
        assert_eq!(f.value(3, 5), g1.point(3) + 10.0 * g2.point(5));
        let s2 = f.section_at_x2(5);
        assert_eq!(s2.value(3), f.value(3, 5));
        let s1 = f.section_at_x1(3);
        assert_eq!(s1.value(5), f.value(3, 5));
    }

    #[test]
    fn rejects_non_finite() {
        let g = PeriodicGrid::new(8).unwrap();
        assert!(SampledFunction1D::from_values(g, vec![f64::NAN; 8]).is_err());
    }

    #[test]
    fn torus_distance_wraps() {
        assert!((torus_distance(-PI + 0.1, PI - 0.1) - 0.2).abs() < 1e-14);
        assert!((torus_distance(1.0, 1.0)).abs() < 1e-15);
    }
}
