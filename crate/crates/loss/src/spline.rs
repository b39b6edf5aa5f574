//! Cubic B-spline basis, global natural fit, and knot derivatives.
//!
//! A field sampled at the `N + 1` knots of a [`Grid1D`] is represented by
//! `N + 3` spline coefficients. The fit closes the system with natural
//! boundary conditions (vanishing second derivative at both ends) and is
//! solved by a forward/backward sweep in `O(N)`.

use crate::grid::Grid1D;
use crate::{LossError, Result};

/// Cubic B-spline centered at knot `i`, evaluated at `x`.
///
/// Supported on `[x_{i-2}, x_{i+2}]`; takes the values `(1/6, 2/3, 1/6)`
/// at the three knots it covers. Out-of-support positions return zero.
pub fn eval_basis(i: i64, x: f64, grid: &Grid1D) -> f64 {
    // Local variable keeps the piecewise cubics well conditioned far
    // from the origin.
    let u = (x - grid.knot(i)) / grid.h();
    if u <= -2.0 || u >= 2.0 {
        0.0
    } else if u <= -1.0 {
        let s = u + 2.0;
        s * s * s / 6.0
    } else if u <= 0.0 {
        let s = u + 1.0;
        -s * s * s / 2.0 + s * s / 2.0 + s / 2.0 + 1.0 / 6.0
    } else if u <= 1.0 {
        let s = 1.0 - u;
        -s * s * s / 2.0 + s * s / 2.0 + s / 2.0 + 1.0 / 6.0
    } else {
        let s = 2.0 - u;
        s * s * s / 6.0
    }
}

/// First derivative of the cubic B-spline centered at knot `i`.
///
/// At the knots: `dB_{i+1}/dx(x_i) = 1/(2h)`, `dB_{i-1}/dx(x_i) = -1/(2h)`,
/// `dB_i/dx(x_i) = 0`.
pub fn eval_basis_derivative(i: i64, x: f64, grid: &Grid1D) -> f64 {
    let h = grid.h();
    let u = (x - grid.knot(i)) / h;
    if u <= -2.0 || u >= 2.0 {
        0.0
    } else if u <= -1.0 {
        let s = u + 2.0;
        s * s / (2.0 * h)
    } else if u <= 0.0 {
        let s = u + 1.0;
        (-1.5 * s * s + s + 0.5) / h
    } else if u <= 1.0 {
        let s = 1.0 - u;
        (1.5 * s * s - s - 0.5) / h
    } else {
        let s = 2.0 - u;
        -s * s / (2.0 * h)
    }
}

/// Expansion coefficients of a fitted 1-D spline.
///
/// `values[k]` holds the coefficient with spline index `k - 1`, i.e. the
/// storage is shifted by one against the natural `-1 ..= N+1` indexing.
#[derive(Debug, Clone)]
pub struct SplineCoefficients {
    values: Vec<f64>,
    grid: Grid1D,
}

impl SplineCoefficients {
    pub fn from_values(values: Vec<f64>, grid: Grid1D) -> Result<Self> {
        if values.len() != grid.n() + 3 {
            return Err(LossError::DimensionMismatch {
                expected: grid.n() + 3,
                got: values.len(),
            });
        }
        Ok(Self { values, grid })
    }

    /// Coefficient with spline index `i` in `-1 ..= N+1`.
    pub fn value(&self, i: i64) -> f64 {
        self.values[(i + 1) as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    /// Residuals of the two natural closure rows, relative to the
    /// coefficient scale.
    pub fn natural_residuals(&self) -> (f64, f64) {
        let v = &self.values;
        let n = self.grid.n();
        let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
        let left = (v[0] - 2.0 * v[1] + v[2]) / scale;
        let right = (v[n] - 2.0 * v[n + 1] + v[n + 2]) / scale;
        (left, right)
    }
}

/// Precomputed elimination factors for the natural-fit sweep at a given
/// interval count. Reusable across all lines sharing the same `N`.
#[derive(Debug, Clone)]
pub struct GlobalSplineSystem {
    n: usize,
    /// Thomas pivots for the interior unknowns (index 0 is unused).
    diag: Vec<f64>,
}

impl GlobalSplineSystem {
    pub fn new(n: usize) -> Self {
        // The natural rows eliminate exactly against their neighbor rows
        // (giving coeff_0 = sample_0 and coeff_N = sample_N), leaving a
        // pure (1, 4, 1) tridiagonal for the N-1 interior coefficients.
        let m = n - 1;
        let mut diag = vec![0.0; m + 1];
        diag[1] = 4.0;
        for i in 2..=m {
            diag[i] = 4.0 - 1.0 / diag[i - 1];
        }
        Self { n, diag }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Solve the natural-fit system for one set of knot samples, writing
    /// the `N + 3` coefficients into `out`.
    pub fn solve_into(&self, samples: &[f64], out: &mut [f64]) {
        let n = self.n;
        debug_assert_eq!(samples.len(), n + 1);
        debug_assert_eq!(out.len(), n + 3);
        let m = n - 1;
        // out[1..=n+1] doubles as the rhs/solution workspace for the
        // interior sweep; out[k] holds spline coefficient k-1.
        out[1] = samples[0];
        out[n + 1] = samples[n];
        out[2] = 6.0 * samples[1] - samples[0];
        for i in 2..m {
            out[i + 1] = 6.0 * samples[i];
        }
        out[m + 1] = 6.0 * samples[m] - samples[n];
        for i in 2..=m {
            out[i + 1] -= out[i] / self.diag[i - 1];
        }
        out[m + 1] /= self.diag[m];
        for i in (1..m).rev() {
            out[i + 1] = (out[i + 1] - out[i + 2]) / self.diag[i];
        }
        out[0] = 2.0 * out[1] - out[2];
        out[n + 2] = 2.0 * out[n + 1] - out[n];
    }
}

/// Fit a natural cubic spline through `samples` at the grid knots.
pub fn fit_global(samples: &[f64], grid: &Grid1D) -> Result<SplineCoefficients> {
    if samples.len() != grid.knots() {
        return Err(LossError::DimensionMismatch {
            expected: grid.knots(),
            got: samples.len(),
        });
    }
    let system = GlobalSplineSystem::new(grid.n());
    let mut values = vec![0.0; grid.n() + 3];
    system.solve_into(samples, &mut values);
    SplineCoefficients::from_values(values, grid.clone())
}

/// First derivative at every knot: `(coeff_{i+1} - coeff_{i-1}) / (2h)`.
pub fn derivative_at_knots(coeffs: &SplineCoefficients) -> Vec<f64> {
    let n = coeffs.grid().n();
    let inv_2h = 1.0 / (2.0 * coeffs.grid().h());
    let v = coeffs.values();
    (0..=n).map(|i| (v[i + 2] - v[i]) * inv_2h).collect()
}

/// Evaluate the fitted spline at an arbitrary in-domain position.
pub fn eval_spline(coeffs: &SplineCoefficients, x: f64) -> Result<f64> {
    let grid = coeffs.grid();
    // The last knot may sit one rounding away from x_max; admit it.
    let hi = grid.x_max().max(grid.knot(grid.n() as i64));
    if x < grid.x_min() || x > hi {
        return Err(LossError::OutOfDomain {
            x,
            min: grid.x_min(),
            max: grid.x_max(),
        });
    }
    let cell = (((x - grid.x_min()) / grid.h()) as i64).clamp(0, grid.n() as i64 - 1);
    let mut acc = 0.0;
    for j in cell - 1..=cell + 2 {
        acc += coeffs.value(j) * eval_basis(j, x, grid);
    }
    Ok(acc)
}
