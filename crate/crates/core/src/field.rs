//! Cell-average state containers.

use crate::error::{Error, Result};

/// Component indices shared by the 1-D and 2-D fields.
pub const H: usize = 0;
pub const HU: usize = 1;
pub const HV: usize = 2;
pub const HA: usize = 3;
pub const HB: usize = 4;
/// `A = (ha)_x`; 2-D only.
pub const A2: usize = 5;
/// `B = (hb)_y`; index 5 in 1-D, 6 in 2-D.
pub const B1: usize = 5;
pub const B2: usize = 6;

/// Cell averages of `(h, hu, hv, ha, hb, B)` on a 1-D grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ConservedField1D {
    pub comps: [Vec<f64>; 6],
}

impl ConservedField1D {
    pub fn zeros(n: usize) -> Self {
        Self { comps: std::array::from_fn(|_| vec![0.0; n]) }
    }

    pub fn len(&self) -> usize {
        self.comps[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn h(&self) -> &[f64] {
        &self.comps[H]
    }

    pub fn hu(&self) -> &[f64] {
        &self.comps[HU]
    }

    pub fn hv(&self) -> &[f64] {
        &self.comps[HV]
    }

    pub fn ha(&self) -> &[f64] {
        &self.comps[HA]
    }

    pub fn hb(&self) -> &[f64] {
        &self.comps[HB]
    }

    pub fn b_der(&self) -> &[f64] {
        &self.comps[B1]
    }

    /// Conserved 5-vector of cell `k`.
    pub fn cell(&self, k: usize) -> [f64; 5] {
        [self.comps[H][k], self.comps[HU][k], self.comps[HV][k], self.comps[HA][k], self.comps[HB][k]]
    }

    pub fn validate(&self) -> Result<()> {
        check_shapes(&self.comps)
    }
}

/// Cell averages of `(h, hu, hv, ha, hb, A, B)` on a 2-D grid, row-major in `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConservedField2D {
    pub nx: usize,
    pub ny: usize,
    pub comps: [Vec<f64>; 7],
}

impl ConservedField2D {
    pub fn zeros(nx: usize, ny: usize) -> Self {
        Self { nx, ny, comps: std::array::from_fn(|_| vec![0.0; nx * ny]) }
    }

    pub fn idx(&self, j: usize, k: usize) -> usize {
        k * self.nx + j
    }

    pub fn h(&self) -> &[f64] {
        &self.comps[H]
    }

    pub fn a_der(&self) -> &[f64] {
        &self.comps[A2]
    }

    pub fn b_der(&self) -> &[f64] {
        &self.comps[B2]
    }

    pub fn cell(&self, i: usize) -> [f64; 5] {
        [self.comps[H][i], self.comps[HU][i], self.comps[HV][i], self.comps[HA][i], self.comps[HB][i]]
    }

    /// Swaps the axes: `x <-> y`, `u <-> v`, `a <-> b`, `A <-> B`.
    pub fn transposed(&self) -> Self {
        let mut out = Self::zeros(self.ny, self.nx);
        let map = [H, HV, HU, HB, HA, B2, A2];
        for k in 0..self.ny {
            for j in 0..self.nx {
                let src = self.idx(j, k);
                let dst = out.idx(k, j);
                for (c, &m) in map.iter().enumerate() {
                    out.comps[m][dst] = self.comps[c][src];
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        check_shapes(&self.comps)?;
        if self.comps[0].len() != self.nx * self.ny {
            return Err(Error::ShapeMismatch { left: self.comps[0].len(), right: self.nx * self.ny });
        }
        Ok(())
    }
}

fn check_shapes(comps: &[Vec<f64>]) -> Result<()> {
    let n = comps[0].len();
    for c in comps {
        if c.len() != n {
            return Err(Error::ShapeMismatch { left: n, right: c.len() });
        }
        if c.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteState { stage: 0 });
        }
    }
    Ok(())
}
