//! Minimal banded LU solver.
//!
//! Pivot-free elimination is sufficient for the coefficient matrices
//! appearing here: their interior rows are diagonally dominant and the
//! anomalous closure rows produce bounded multipliers. Tests check the
//! factorization against a dense pivoted oracle.

use crate::{LossError, Result};

/// Square banded matrix with `kl` sub- and `ku` super-diagonals,
/// stored row-major: row `i` holds columns `i - kl ..= i + ku`.
#[derive(Debug, Clone)]
pub struct Banded {
    n: usize,
    kl: usize,
    ku: usize,
    rows: Vec<f64>,
}

/// LU factors of a [`Banded`] matrix; multipliers live in the sub-band.
#[derive(Debug, Clone)]
pub struct BandedLu {
    inner: Banded,
}

impl Banded {
    pub fn zero(n: usize, kl: usize, ku: usize) -> Self {
        Self {
            n,
            kl,
            ku,
            rows: vec![0.0; n * (kl + ku + 1)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        let lo = i.saturating_sub(self.kl);
        if j < lo || j > i + self.ku || j >= self.n {
            return None;
        }
        Some(i * (self.kl + self.ku + 1) + (j + self.kl - i))
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let s = self
            .slot(i, j)
            .unwrap_or_else(|| panic!("({i}, {j}) outside band"));
        self.rows[s] = v;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.slot(i, j).map_or(0.0, |s| self.rows[s])
    }

    /// Factor in place. Errors on a vanishing pivot.
    pub fn factor(mut self) -> Result<BandedLu> {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        let w = kl + ku + 1;
        for k in 0..n {
            let piv = self.rows[k * w + kl];
            if piv.abs() < f64::MIN_POSITIVE {
                return Err(LossError::InvalidGrid(format!(
                    "zero pivot at banded elimination step {k}"
                )));
            }
            for r in 1..=kl.min(n - 1 - k) {
                let i = k + r;
                let s = i * w + kl - r; // column k in row i
                let m = self.rows[s] / piv;
                self.rows[s] = m;
                for c in 1..=ku {
                    if k + c < n {
                        self.rows[i * w + kl - r + c] -= m * self.rows[k * w + kl + c];
                    }
                }
            }
        }
        Ok(BandedLu { inner: self })
    }
}

impl BandedLu {
    /// Solve `A x = rhs` in place.
    pub fn solve(&self, rhs: &mut [f64]) {
        let b = &self.inner;
        let (n, kl, ku) = (b.n, b.kl, b.ku);
        assert_eq!(rhs.len(), n, "rhs length mismatch");
        let w = kl + ku + 1;
        for k in 0..n {
            for r in 1..=kl.min(n - 1 - k) {
                let m = b.rows[(k + r) * w + kl - r];
                rhs[k + r] -= m * rhs[k];
            }
        }
        for i in (0..n).rev() {
            let mut v = rhs[i];
            for c in 1..=ku.min(n - 1 - i) {
                v -= b.rows[i * w + kl + c] * rhs[i + c];
            }
            rhs[i] = v / b.rows[i * w + kl];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_solve(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
        let n = b.len();
        let mut m: Vec<Vec<f64>> = a.iter().cloned().collect();
        let mut x = b.to_vec();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| m[i][k].abs().partial_cmp(&m[j][k].abs()).unwrap())
                .unwrap();
            m.swap(k, p);
            x.swap(k, p);
            for i in k + 1..n {
                let f = m[i][k] / m[k][k];
                for j in k..n {
                    m[i][j] -= f * m[k][j];
                }
                x[i] -= f * x[k];
            }
        }
        for i in (0..n).rev() {
            let mut v = x[i];
            for j in i + 1..n {
                v -= m[i][j] * x[j];
            }
            x[i] = v / m[i][i];
        }
        x
    }

    #[test]
    fn matches_dense_pivoted_solve() {
        let n = 17;
        let (kl, ku) = (2, 2);
        let mut banded = Banded::zero(n, kl, ku);
        let mut dense = vec![vec![0.0; n]; n];
        // Deterministic diagonally dominant band.
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for i in 0..n {
            for j in i.saturating_sub(kl)..(i + ku + 1).min(n) {
                let v = if i == j { 5.0 + next() } else { next() };
                banded.set(i, j, v);
                dense[i][j] = v;
            }
        }
        let rhs: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
        let lu = banded.factor().unwrap();
        let mut x = rhs.clone();
        lu.solve(&mut x);
        let want = dense_solve(&dense, &rhs);
        for (a, b) in x.iter().zip(&want) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }
}
