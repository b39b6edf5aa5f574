//! Dense knot-field containers.
//!
//! Values are stored with the last axis fastest: 2-D fields are indexed
//! `(ix, iz)` with `iz` contiguous, 3-D fields `(ix, iy, iz)` with `iz`
//! contiguous. Sizes are given in intervals per axis; a field holds one
//! value per knot.

/// Axis selector for derivative passes and traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// Scalar field on a 2-D knot grid (`(nx+1) * (nz+1)` values).
#[derive(Debug, Clone, PartialEq)]
pub struct Field2 {
    nx: usize,
    nz: usize,
    data: Vec<f64>,
}

impl Field2 {
    pub fn zeros(nx: usize, nz: usize) -> Self {
        Self {
            nx,
            nz,
            data: vec![0.0; (nx + 1) * (nz + 1)],
        }
    }

    pub fn from_fn(nx: usize, nz: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut out = Self::zeros(nx, nz);
        for ix in 0..=nx {
            for iz in 0..=nz {
                out.data[ix * (nz + 1) + iz] = f(ix, iz);
            }
        }
        out
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn nz(&self) -> usize {
        self.nz
    }

    #[inline]
    pub fn at(&self, ix: usize, iz: usize) -> f64 {
        self.data[ix * (self.nz + 1) + iz]
    }

    #[inline]
    pub fn at_mut(&mut self, ix: usize, iz: usize) -> &mut f64 {
        &mut self.data[ix * (self.nz + 1) + iz]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Line geometry for a derivative pass along `axis`: returns
    /// `(line_count, line_stride, start_of_line)` where positions along
    /// the line advance by `line_stride`.
    pub fn lines(&self, axis: Axis) -> (usize, usize, impl Fn(usize) -> usize) {
        let nz1 = self.nz + 1;
        match axis {
            Axis::X => (nz1, nz1, Box::new(move |line: usize| line) as Box<dyn Fn(usize) -> usize>),
            Axis::Z => (
                self.nx + 1,
                1,
                Box::new(move |line: usize| line * nz1) as Box<dyn Fn(usize) -> usize>,
            ),
            Axis::Y => panic!("2-D fields have no Y axis"),
        }
    }
}

/// Scalar field on a 3-D knot grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Field3 {
    nx: usize,
    ny: usize,
    nz: usize,
    data: Vec<f64>,
}

impl Field3 {
    pub fn zeros(nx: usize, ny: usize, nz: usize) -> Self {
        Self {
            nx,
            ny,
            nz,
            data: vec![0.0; (nx + 1) * (ny + 1) * (nz + 1)],
        }
    }

    pub fn from_fn(
        nx: usize,
        ny: usize,
        nz: usize,
        mut f: impl FnMut(usize, usize, usize) -> f64,
    ) -> Self {
        let mut out = Self::zeros(nx, ny, nz);
        let mut k = 0;
        for ix in 0..=nx {
            for iy in 0..=ny {
                for iz in 0..=nz {
                    out.data[k] = f(ix, iy, iz);
                    k += 1;
                }
            }
        }
        out
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn nz(&self) -> usize {
        self.nz
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.nx, self.ny, self.nz)
    }

    #[inline]
    pub fn idx(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (ix * (self.ny + 1) + iy) * (self.nz + 1) + iz
    }

    #[inline]
    pub fn at(&self, ix: usize, iy: usize, iz: usize) -> f64 {
        self.data[self.idx(ix, iy, iz)]
    }

    #[inline]
    pub fn at_mut(&mut self, ix: usize, iy: usize, iz: usize) -> &mut f64 {
        let i = self.idx(ix, iy, iz);
        &mut self.data[i]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}
