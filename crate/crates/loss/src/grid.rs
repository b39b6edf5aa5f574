//! Uniform 1-D knot grids.

use crate::{LossError, Result};

/// Uniform grid over `[x_min, x_max]` with `n` intervals (`n + 1` knots).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n: usize,
    h: f64,
}

impl Grid1D {
    /// At least four intervals are required for the cubic fit.
    pub const MIN_INTERVALS: usize = 4;

    pub fn new(x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(LossError::InvalidGrid(format!(
                "bad extent [{x_min}, {x_max}]"
            )));
        }
        if n < Self::MIN_INTERVALS {
            return Err(LossError::InvalidGrid(format!(
                "need at least {} intervals, got {n}",
                Self::MIN_INTERVALS
            )));
        }
        let h = (x_max - x_min) / n as f64;
        Ok(Self { x_min, x_max, n, h })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    /// Number of intervals.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of knots (`n + 1`).
    pub fn knots(&self) -> usize {
        self.n + 1
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Position of knot `i`; `i` may lie outside `0..=n` (ghost knots).
    pub fn knot(&self, i: i64) -> f64 {
        self.x_min + i as f64 * self.h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knot_positions_are_one_rounding_exact() {
        let g = Grid1D::new(-5.0, 5.0, 64).unwrap();
        assert_eq!(g.h(), 10.0 / 64.0);
        for i in 0..=64 {
            assert_eq!(g.knot(i), -5.0 + i as f64 * g.h());
        }
        assert_eq!(g.knot(0), -5.0);
    }

    #[test]
    fn rejects_degenerate_grids() {
        assert!(Grid1D::new(0.0, 0.0, 8).is_err());
        assert!(Grid1D::new(1.0, 0.0, 8).is_err());
        assert!(Grid1D::new(0.0, 1.0, 3).is_err());
    }
}
