//! Patched spline reconstruction closed by perfectly matched boundary
//! conditions (PMBC).
//!
//! A line of `N + 1` knots is split into `p` patches of `M = N/p`
//! intervals; junction knots are shared by both adjacent patches. Each
//! patch solves a small Hermite-bounded system whose boundary slopes are
//! assembled from truncated rows of the global coefficient-matrix
//! inverse. Those rows decay geometrically away from the diagonal (ratio
//! `2 - sqrt(3)`), so a half-width of `n_nb` entries recovers the global
//! spline to near machine precision while only one partial-sum scalar
//! per junction crosses between neighbors.

use std::collections::BTreeMap;

use crate::banded::{Banded, BandedLu};
use crate::grid::Grid1D;
use crate::spline::GlobalSplineSystem;
use crate::{LossError, Result};

/// Decomposition of a knot line into `p` equal patches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchLayout1D {
    p: usize,
    m: usize,
    n_nb: usize,
}

impl PatchLayout1D {
    pub fn new(n: usize, p: usize, n_nb: usize) -> Result<Self> {
        if p == 0 {
            return Err(LossError::InvalidLayout("patch count must be >= 1".into()));
        }
        if n % p != 0 {
            return Err(LossError::InvalidLayout(format!(
                "{n} intervals not divisible into {p} patches"
            )));
        }
        let m = n / p;
        if p > 1 {
            if n_nb == 0 {
                return Err(LossError::InvalidLayout("n_nb must be >= 1".into()));
            }
            if m < n_nb + 2 {
                return Err(LossError::InvalidLayout(format!(
                    "patch width M = {m} too small for stencil half-width n_nb = {n_nb} \
                     (need M >= n_nb + 2)"
                )));
            }
        }
        Ok(Self { p, m, n_nb })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Intervals per patch.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n_nb(&self) -> usize {
        self.n_nb
    }

    /// Total intervals on the line.
    pub fn n(&self) -> usize {
        self.p * self.m
    }

    /// Global knot indices of the interior junctions (`l*M`, `l = 1..p-1`).
    pub fn junctions(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.p).map(move |l| l * self.m)
    }
}

/// Explicit LU factors of the Hermite-bounded local system for one patch.
///
/// `d[1] = 4`, `l[1] = 1/4`, `d[2] = 7/2`, then `l[i] = 1/d[i]`,
/// `d[i+1] = 4 - l[i]`, closed by `l[M+1] = 1/(d[M] d[M+1])` and
/// `d[M+2] = 1 - l[M+1]`.
#[derive(Debug, Clone)]
pub struct LocalSplineSystem {
    m: usize,
    /// `l[1..=M+1]`; index 0 unused.
    l: Vec<f64>,
    /// `d[1..=M+2]`; index 0 unused.
    d: Vec<f64>,
}

impl LocalSplineSystem {
    pub fn new(m: usize) -> Self {
        assert!(m >= 2, "patch must span at least 2 intervals");
        let mut l = vec![0.0; m + 2];
        let mut d = vec![0.0; m + 3];
        d[1] = 4.0;
        l[1] = 0.25;
        d[2] = 4.0 - 2.0 * l[1];
        for i in 2..=m {
            l[i] = 1.0 / d[i];
            d[i + 1] = 4.0 - l[i];
        }
        l[m + 1] = 1.0 / (d[m] * d[m + 1]);
        d[m + 2] = 1.0 - l[m + 1];
        Self { m, l, d }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn l_factors(&self) -> &[f64] {
        &self.l[1..]
    }

    pub fn u_diagonals(&self) -> &[f64] {
        &self.d[1..]
    }

    /// Solve the local system for one patch line.
    ///
    /// `samples` holds the `M + 1` knot values of the patch, `phi_l` and
    /// `phi_r` the prescribed end slopes. `out` receives the `M + 3`
    /// local coefficients (spline indices `-1 ..= M+1`).
    pub fn solve_into(&self, h: f64, samples: &[f64], phi_l: f64, phi_r: f64, out: &mut [f64]) {
        let m = self.m;
        debug_assert_eq!(samples.len(), m + 1);
        debug_assert_eq!(out.len(), m + 3);
        // Forward sweep L y = (phi_l, v_0 .. v_M, phi_r).
        out[0] = phi_l;
        out[1] = samples[0] + h / 3.0 * out[0];
        for r in 2..=m + 1 {
            out[r] = samples[r - 1] - self.l[r - 1] * out[r - 1];
        }
        out[m + 2] =
            phi_r + 3.0 * self.l[m] / h * out[m] - 3.0 * self.l[m + 1] / h * out[m + 1];
        // Backward sweep on U (in place; slot r is read before written).
        out[m + 2] *= 2.0 * h / self.d[m + 2];
        for r in (2..=m + 1).rev() {
            out[r] = (6.0 * out[r] - out[r + 1]) / self.d[r];
        }
        out[1] = (6.0 * out[1] - 2.0 * out[2]) / self.d[1];
        out[0] = out[2] - 2.0 * h * out[0];
    }

    /// Blocked variant of [`Self::solve_into`] over `width` lines at once.
    ///
    /// Buffers are laid out position-major: entry `(pos, line)` lives at
    /// `pos * width + line`. Identical arithmetic per line as the scalar
    /// path, so results are bitwise equal.
    pub fn solve_block(
        &self,
        h: f64,
        samples: &[f64],
        phi_l: &[f64],
        phi_r: &[f64],
        out: &mut [f64],
        width: usize,
    ) {
        let m = self.m;
        debug_assert_eq!(samples.len(), (m + 1) * width);
        debug_assert_eq!(out.len(), (m + 3) * width);
        let third_h = h / 3.0;
        for b in 0..width {
            out[b] = phi_l[b];
            out[width + b] = samples[b] + third_h * out[b];
        }
        for r in 2..=m + 1 {
            let lr = self.l[r - 1];
            let (prev, cur) = out.split_at_mut(r * width);
            let prev = &prev[(r - 1) * width..];
            for b in 0..width {
                cur[b] = samples[(r - 1) * width + b] - lr * prev[b];
            }
        }
        let (cl, cl1) = (3.0 * self.l[m] / h, 3.0 * self.l[m + 1] / h);
        for b in 0..width {
            out[(m + 2) * width + b] =
                phi_r[b] + cl * out[m * width + b] - cl1 * out[(m + 1) * width + b];
        }
        let dl = 2.0 * h / self.d[m + 2];
        for b in 0..width {
            out[(m + 2) * width + b] *= dl;
        }
        for r in (2..=m + 1).rev() {
            let dr = self.d[r];
            let (cur, next) = out.split_at_mut((r + 1) * width);
            let cur = &mut cur[r * width..];
            for b in 0..width {
                cur[b] = (6.0 * cur[b] - next[b]) / dr;
            }
        }
        let d1 = self.d[1];
        let two_h = 2.0 * h;
        let (head, tail) = out.split_at_mut(2 * width);
        let (row0, row1) = head.split_at_mut(width);
        let row2 = &tail[..width];
        for b in 0..width {
            row1[b] = (6.0 * row1[b] - 2.0 * row2[b]) / d1;
            row0[b] = row2[b] - two_h * row0[b];
        }
    }
}

/// Solve one patch line given its end slopes; convenience wrapper.
pub fn fit_local(
    samples: &[f64],
    phi_l: f64,
    phi_r: f64,
    system: &LocalSplineSystem,
    h: f64,
) -> Result<Vec<f64>> {
    if samples.len() != system.m() + 1 {
        return Err(LossError::DimensionMismatch {
            expected: system.m() + 1,
            got: samples.len(),
        });
    }
    let mut out = vec![0.0; system.m() + 3];
    system.solve_into(h, samples, phi_l, phi_r, &mut out);
    Ok(out)
}

/// Build the banded transpose of the global fit matrix (size `N + 3`).
///
/// `u` is the closure-row weight: `1/h^2` for the physical matrix, `1`
/// for the h-normalized form (the natural rows have zero right-hand side,
/// so their scaling does not change the solution map).
fn fit_matrix_transpose(n: usize, u: f64) -> Banded {
    let q = n + 3;
    let mut at = Banded::zero(q, 2, 2);
    let mut set = |i: usize, j: usize, v: f64| at.set(j, i, v);
    set(0, 0, u);
    set(0, 1, -2.0 * u);
    set(0, 2, u);
    for r in 1..=n + 1 {
        set(r, r - 1, 1.0 / 6.0);
        set(r, r, 4.0 / 6.0);
        set(r, r + 1, 1.0 / 6.0);
    }
    set(q - 1, q - 3, u);
    set(q - 1, q - 2, -2.0 * u);
    set(q - 1, q - 1, u);
    at
}

fn inverse_row(lu: &BandedLu, q: usize, row: usize) -> Vec<f64> {
    let mut y = vec![0.0; q];
    y[row] = 1.0;
    lu.solve(&mut y);
    y
}

/// Exact rows of the inverse of the global fit matrix.
///
/// Row indices use the spline numbering `-1 ..= N+1`; each returned row
/// has length `N + 3` (columns in the same numbering, offset by one).
/// Computed by banded transpose-solves, not by a decay formula.
pub fn compute_inverse_rows(grid: &Grid1D, rows: &[i64]) -> Result<BTreeMap<i64, Vec<f64>>> {
    let n = grid.n();
    let max = n as i64 + 1;
    for &r in rows {
        if r < -1 || r > max {
            return Err(LossError::InvalidRow { row: r, max });
        }
    }
    let u = 1.0 / (grid.h() * grid.h());
    let lu = fit_matrix_transpose(n, u).factor()?;
    let q = n + 3;
    Ok(rows
        .iter()
        .map(|&r| (r, inverse_row(&lu, q, (r + 1) as usize)))
        .collect())
}

/// Which half of a junction sum a patch contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Truncated PMBC stencils for every junction plus both end closures.
///
/// Values are stored h-normalized (the underlying inverse entries do not
/// depend on the spacing); applications scale by `1/h`.
#[derive(Debug, Clone)]
pub struct PmbcStencil {
    layout: PatchLayout1D,
    /// `c_0` per junction `l = 1..p-1`.
    c0: Vec<f64>,
    /// `c^-_j`, `j = 1..=n_nb`, per junction.
    c_minus: Vec<Vec<f64>>,
    /// `c^+_j`, `j = 1..=n_nb`, per junction.
    c_plus: Vec<Vec<f64>>,
    /// Left end closure, `j = 0..=n_nb` applied to `v_0 .. v_{n_nb}`.
    c_left: Vec<f64>,
    /// Right end closure, `j = 0..=n_nb` applied to `v_N .. v_{N-n_nb}`.
    c_right: Vec<f64>,
}

impl PmbcStencil {
    pub fn layout(&self) -> &PatchLayout1D {
        &self.layout
    }

    pub fn junction_c0(&self, l: usize) -> f64 {
        self.c0[l - 1]
    }

    pub fn junction_minus(&self, l: usize) -> &[f64] {
        &self.c_minus[l - 1]
    }

    pub fn junction_plus(&self, l: usize) -> &[f64] {
        &self.c_plus[l - 1]
    }

    pub fn end_left(&self) -> &[f64] {
        &self.c_left
    }

    pub fn end_right(&self) -> &[f64] {
        &self.c_right
    }

    /// Left-end slope closure from the first patch's samples.
    pub fn apply_end_left(&self, first_patch: &[f64], h: f64) -> f64 {
        let mut acc = 0.0;
        for (j, c) in self.c_left.iter().enumerate() {
            acc += c * first_patch[j];
        }
        acc / h
    }

    /// Right-end slope closure from the last patch's samples.
    pub fn apply_end_right(&self, last_patch: &[f64], h: f64) -> f64 {
        let m = self.layout.m();
        let mut acc = 0.0;
        for (j, c) in self.c_right.iter().enumerate() {
            acc += c * last_patch[m - j];
        }
        acc / h
    }

    /// Diagnostic dump: one block per junction with `j, c-, c+` columns.
    pub fn dump_text(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "# junction j c_minus c_plus");
        for l in 1..self.layout.p() {
            let _ = writeln!(s, "{l} 0 {0:.17e} {0:.17e}", self.c0[l - 1] / 2.0);
            for j in 1..=self.layout.n_nb() {
                let _ = writeln!(
                    s,
                    "{l} {j} {:.17e} {:.17e}",
                    self.c_minus[l - 1][j - 1],
                    self.c_plus[l - 1][j - 1]
                );
            }
        }
        let _ = writeln!(s, "# end j c_left c_right");
        for j in 0..=self.layout.n_nb() {
            let _ = writeln!(s, "end {j} {:.17e} {:.17e}", self.c_left[j], self.c_right[j]);
        }
        s
    }
}

/// Assemble the PMBC stencil tables for a grid/layout pair.
///
/// Depends only on `(N, p, n_nb)`; the result is h-normalized and can be
/// shared between axes with equal interval counts.
pub fn build_pmbc_stencils(grid: &Grid1D, layout: &PatchLayout1D) -> Result<PmbcStencil> {
    if layout.n() != grid.n() {
        return Err(LossError::InvalidLayout(format!(
            "layout covers {} intervals but grid has {}",
            layout.n(),
            grid.n()
        )));
    }
    if layout.p() < 2 {
        return Err(LossError::InvalidLayout(
            "PMBC stencils need at least two patches".into(),
        ));
    }
    let n = grid.n();
    let n_nb = layout.n_nb();
    let q = n + 3;
    // h-normalized matrix: closure rows weighted 1.
    let lu = fit_matrix_transpose(n, 1.0).factor()?;
    // Row of A^{-1} for spline index i, as a closure over sample columns.
    let row = |i: i64| inverse_row(&lu, q, (i + 1) as usize);
    // Column for sample v_j sits at array index j + 1.
    let col = |r: &[f64], j: i64| r[(j + 1) as usize];

    let mut c0 = Vec::new();
    let mut c_minus = Vec::new();
    let mut c_plus = Vec::new();
    for jk in layout.junctions() {
        let jk = jk as i64;
        let below = row(jk - 1);
        let above = row(jk + 1);
        let diff = |j: i64| (-col(&below, j) + col(&above, j)) / 2.0;
        c0.push(diff(jk));
        c_minus.push((1..=n_nb as i64).map(|j| diff(jk - j)).collect());
        c_plus.push((1..=n_nb as i64).map(|j| diff(jk + j)).collect());
    }

    let rm1 = row(-1);
    let rp1 = row(1);
    let c_left: Vec<f64> = (0..=n_nb as i64)
        .map(|j| (-col(&rm1, j) + col(&rp1, j)) / 2.0)
        .collect();
    let rnm = row(n as i64 - 1);
    let rnp = row(n as i64 + 1);
    let c_right: Vec<f64> = (0..=n_nb as i64)
        .map(|j| (-col(&rnm, n as i64 - j) + col(&rnp, n as i64 - j)) / 2.0)
        .collect();

    Ok(PmbcStencil {
        layout: layout.clone(),
        c0,
        c_minus,
        c_plus,
        c_left,
        c_right,
    })
}

/// One patch's half of the junction slope sum.
///
/// `samples` are the `M + 1` knot values owned by the patch on `side` of
/// junction `l`; the shared knot contributes half of `c_0` to each side.
/// The full slope is the plain sum of the two halves.
pub fn junction_partial_sum(
    samples: &[f64],
    stencil: &PmbcStencil,
    side: Side,
    l: usize,
    h: f64,
) -> Result<f64> {
    let m = stencil.layout.m();
    if samples.len() != m + 1 {
        return Err(LossError::DimensionMismatch {
            expected: m + 1,
            got: samples.len(),
        });
    }
    if l == 0 || l >= stencil.layout.p() {
        return Err(LossError::InvalidLayout(format!("no junction {l}")));
    }
    let n_nb = stencil.layout.n_nb();
    let acc = match side {
        Side::Left => {
            // Patch ends at the junction: shared knot is local M.
            let mut acc = 0.5 * stencil.c0[l - 1] * samples[m];
            for j in 1..=n_nb {
                acc += stencil.c_minus[l - 1][j - 1] * samples[m - j];
            }
            acc
        }
        Side::Right => {
            // Patch starts at the junction: shared knot is local 0.
            let mut acc = 0.5 * stencil.c0[l - 1] * samples[0];
            for j in 1..=n_nb {
                acc += stencil.c_plus[l - 1][j - 1] * samples[j];
            }
            acc
        }
    };
    Ok(acc / h)
}

/// Knot derivatives of a full line through the patched path.
///
/// Junction slopes are assembled as `own half + neighbor half`; each
/// patch then runs its local solve and reports the derivatives of its
/// knots. `p = 1` short-circuits to the global fit, which doubles as the
/// serial oracle. `exchanged` counts the partial-sum scalars that would
/// cross between workers (two per junction).
pub fn patched_derivative_line(
    samples: &[f64],
    grid: &Grid1D,
    layout: &PatchLayout1D,
    stencil: Option<&PmbcStencil>,
    exchanged: &mut u64,
) -> Result<Vec<f64>> {
    if samples.len() != grid.knots() {
        return Err(LossError::DimensionMismatch {
            expected: grid.knots(),
            got: samples.len(),
        });
    }
    if layout.n() != grid.n() {
        return Err(LossError::InvalidLayout(
            "layout does not match grid".into(),
        ));
    }
    let h = grid.h();
    let n = grid.n();
    if layout.p() == 1 {
        let coeffs = crate::spline::fit_global(samples, grid)?;
        return Ok(crate::spline::derivative_at_knots(&coeffs));
    }
    let stencil = stencil.ok_or_else(|| {
        LossError::InvalidLayout("patched path requires a PMBC stencil".into())
    })?;
    let (p, m) = (layout.p(), layout.m());
    let patch = |l: usize| &samples[(l - 1) * m..=(l - 1) * m + m];

    // Junction slopes: left half + received right half, identically on
    // both sides (floating-point addition commutes).
    let mut phi = vec![0.0; p + 1];
    phi[0] = stencil.apply_end_left(patch(1), h);
    phi[p] = stencil.apply_end_right(patch(p), h);
    for l in 1..p {
        let own = junction_partial_sum(patch(l), stencil, Side::Left, l, h)?;
        let nb = junction_partial_sum(patch(l + 1), stencil, Side::Right, l, h)?;
        phi[l] = own + nb;
        *exchanged += 2;
    }

    let system = LocalSplineSystem::new(m);
    let mut out = vec![0.0; n + 1];
    let mut coeffs = vec![0.0; m + 3];
    let inv_2h = 1.0 / (2.0 * h);
    for l in 1..=p {
        system.solve_into(h, patch(l), phi[l - 1], phi[l], &mut coeffs);
        let base = (l - 1) * m;
        for i in 0..=m {
            let d = (coeffs[i + 2] - coeffs[i]) * inv_2h;
            if i == 0 && l > 1 {
                // Shared junction: both owners must agree.
                debug_assert!(
                    (out[base] - d).abs()
                        <= 1e-13 * out[base].abs().max(d.abs()).max(1.0),
                    "junction derivative mismatch at knot {base}"
                );
                continue;
            }
            out[base + i] = d;
        }
    }
    Ok(out)
}
