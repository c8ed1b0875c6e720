//! Uniform Cartesian grids.

use crate::error::{Error, Result};

/// Ghost layers appended on each side of a 1-D line. Three are needed so the
/// WENO-Z stencil of the first ghost cell stays inside the extended array.
pub const GHOSTS_1D: usize = 3;
/// Ghost layers appended on each side in 2-D (minmod only).
pub const GHOSTS_2D: usize = 2;

/// Minimum number of cells per axis.
pub const MIN_CELLS: usize = 5;

/// One uniform coordinate axis split into `n` cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub n: usize,
    pub lo: f64,
    pub hi: f64,
    pub delta: f64,
}

impl Axis {
    pub fn new(n: usize, lo: f64, hi: f64) -> Result<Self> {
        if n < MIN_CELLS {
            return Err(Error::config(format!("need at least {MIN_CELLS} cells, got {n}")));
        }
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(Error::config(format!("invalid bounds [{lo}, {hi}]")));
        }
        Ok(Self { n, lo, hi, delta: (hi - lo) / n as f64 })
    }

    /// Center of cell `k` (0-based). Negative or `>= n` indices address ghost cells.
    pub fn center(&self, k: isize) -> f64 {
        self.lo + (k as f64 + 0.5) * self.delta
    }

    /// Interface `i`, where interface 0 is the left boundary and `n` the right one.
    pub fn interface(&self, i: usize) -> f64 {
        self.lo + i as f64 * self.delta
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n as isize).map(|k| self.center(k)).collect()
    }
}

/// 1-D grid along `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub y: Axis,
}

impl Grid1D {
    pub fn new(n: usize, y_lo: f64, y_hi: f64) -> Result<Self> {
        Ok(Self { y: Axis::new(n, y_lo, y_hi)? })
    }

    pub fn n(&self) -> usize {
        self.y.n
    }

    pub fn dy(&self) -> f64 {
        self.y.delta
    }
}

/// 2-D grid; cell `(j, k)` is stored at `k * nx + j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub x: Axis,
    pub y: Axis,
}

impl Grid2D {
    pub fn new(nx: usize, ny: usize, x: (f64, f64), y: (f64, f64)) -> Result<Self> {
        Ok(Self { x: Axis::new(nx, x.0, x.1)?, y: Axis::new(ny, y.0, y.1)? })
    }

    pub fn nx(&self) -> usize {
        self.x.n
    }

    pub fn ny(&self) -> usize {
        self.y.n
    }

    pub fn cells(&self) -> usize {
        self.x.n * self.y.n
    }

    pub fn idx(&self, j: usize, k: usize) -> usize {
        k * self.x.n + j
    }

    pub fn cell_area(&self) -> f64 {
        self.x.delta * self.y.delta
    }
}
