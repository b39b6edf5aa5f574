//! Dense linear-algebra oracles shared by the integration tests.
//!
//! These deliberately avoid the crate's banded solvers: plain dense
//! Gaussian elimination with partial pivoting, O(n^3), used only to
//! cross-check the production paths at small sizes.

#![allow(dead_code)]

/// Dense global fit matrix: natural closure rows at both ends,
/// `(1, 4, 1)/6` interior rows. Size `(n+3) x (n+3)`.
pub fn dense_fit_matrix(n: usize, h: f64) -> Vec<Vec<f64>> {
    let q = n + 3;
    let u = 1.0 / (h * h);
    let mut a = vec![vec![0.0; q]; q];
    a[0][0] = u;
    a[0][1] = -2.0 * u;
    a[0][2] = u;
    for r in 1..=n + 1 {
        a[r][r - 1] = 1.0 / 6.0;
        a[r][r] = 4.0 / 6.0;
        a[r][r + 1] = 1.0 / 6.0;
    }
    a[q - 1][q - 3] = u;
    a[q - 1][q - 2] = -2.0 * u;
    a[q - 1][q - 1] = u;
    a
}

/// Gaussian elimination with partial pivoting.
pub fn dense_solve(a: &[Vec<f64>], rhs: &[f64]) -> Vec<f64> {
    let n = rhs.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut x = rhs.to_vec();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].abs().partial_cmp(&m[j][k].abs()).unwrap())
            .unwrap();
        m.swap(k, p);
        x.swap(k, p);
        assert!(m[k][k].abs() > 0.0, "singular dense system");
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

/// Full dense inverse via column-by-column solves.
pub fn dense_invert(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut inv = vec![vec![0.0; n]; n];
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        let col = dense_solve(a, &e);
        for i in 0..n {
            inv[i][j] = col[i];
        }
    }
    inv
}

/// Solve the global fit densely and return the `n + 3` coefficients.
pub fn dense_fit(samples: &[f64], n: usize, h: f64) -> Vec<f64> {
    assert_eq!(samples.len(), n + 1);
    let a = dense_fit_matrix(n, h);
    let mut rhs = vec![0.0; n + 3];
    rhs[1..=n + 1].copy_from_slice(samples);
    dense_solve(&a, &rhs)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}
