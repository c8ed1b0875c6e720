//! Slope-limited linear reconstruction, WENO-Z interpolation and the
//! divergence-free magnetic slopes.

use crate::error::{Error, Result};

/// Minmod of a nonempty list: the smallest argument if all are positive, the
/// largest if all are negative, zero otherwise.
pub fn minmod(values: &[f64]) -> Result<f64> {
    let (&first, rest) = values.split_first().ok_or(Error::EmptyInput)?;
    let mut out = first;
    for &v in rest {
        if out > 0.0 && v > 0.0 {
            out = out.min(v);
        } else if out < 0.0 && v < 0.0 {
            out = out.max(v);
        } else {
            return Ok(0.0);
        }
    }
    if out > 0.0 || out < 0.0 {
        Ok(out)
    } else {
        Ok(0.0)
    }
}

#[inline]
pub fn minmod3(a: f64, b: f64, c: f64) -> f64 {
    if a > 0.0 && b > 0.0 && c > 0.0 {
        a.min(b).min(c)
    } else if a < 0.0 && b < 0.0 && c < 0.0 {
        a.max(b).max(c)
    } else {
        0.0
    }
}

/// Generalized minmod slope of the middle value.
#[inline]
pub fn limited_slope(left: f64, mid: f64, right: f64, delta: f64, theta: f64) -> f64 {
    minmod3(
        theta * (mid - left) / delta,
        (right - left) / (2.0 * delta),
        theta * (right - mid) / delta,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructionConfig {
    pub theta: f64,
}

impl Default for ReconstructionConfig {
    fn default() -> Self {
        Self { theta: 1.3 }
    }
}

/// Result of [`linear_reconstruct`] on an extended array.
///
/// The first and last entries are stencil support only: their slopes are zero.
/// Interface `c + 1/2` has left value `east[c]` and right value `west[c + 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearReconstruction {
    pub slopes: Vec<f64>,
    pub east: Vec<f64>,
    pub west: Vec<f64>,
}

impl LinearReconstruction {
    pub fn minus(&self, c: usize) -> f64 {
        self.east[c]
    }

    pub fn plus(&self, c: usize) -> f64 {
        self.west[c + 1]
    }
}

pub fn linear_reconstruct(psi: &[f64], delta: f64, theta: f64) -> Result<LinearReconstruction> {
    let n = psi.len();
    if n < 3 {
        return Err(Error::TooShort { needed: 3, got: n });
    }
    let mut slopes = vec![0.0; n];
    for c in 1..n - 1 {
        slopes[c] = limited_slope(psi[c - 1], psi[c], psi[c + 1], delta, theta);
    }
    let half = 0.5 * delta;
    let east = psi.iter().zip(&slopes).map(|(p, s)| p + half * s).collect();
    let west = psi.iter().zip(&slopes).map(|(p, s)| p - half * s).collect();
    Ok(LinearReconstruction { slopes, east, west })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WenoZConfig {
    pub d: [f64; 3],
    pub eps: f64,
    pub r: i32,
}

impl Default for WenoZConfig {
    fn default() -> Self {
        Self { d: [1.0 / 16.0, 5.0 / 8.0, 5.0 / 16.0], eps: 1e-12, r: 2 }
    }
}

/// Fifth-order WENO-Z value at the right face of the middle cell of
/// `s = (ψ_{k-2}, ..., ψ_{k+2})`.
pub fn weno_z_value(s: &[f64; 5], cfg: &WenoZConfig) -> f64 {
    let [m2, m1, c, p1, p2] = *s;
    let q = [
        0.375 * m2 - 1.25 * m1 + 1.875 * c,
        -0.125 * m1 + 0.75 * c + 0.375 * p1,
        0.375 * c + 0.75 * p1 - 0.125 * p2,
    ];
    let sq = |x: f64| x * x;
    let b = [
        13.0 / 12.0 * sq(m2 - 2.0 * m1 + c) + 0.25 * sq(m2 - 4.0 * m1 + 3.0 * c),
        13.0 / 12.0 * sq(m1 - 2.0 * c + p1) + 0.25 * sq(m1 - p1),
        13.0 / 12.0 * sq(c - 2.0 * p1 + p2) + 0.25 * sq(3.0 * c - 4.0 * p1 + p2),
    ];
    let tau = (b[2] - b[0]).abs();
    let alpha: [f64; 3] = std::array::from_fn(|l| cfg.d[l] * (1.0 + (tau / (b[l] + cfg.eps)).powi(cfg.r)));
    let sum = alpha[0] + alpha[1] + alpha[2];
    (alpha[0] * q[0] + alpha[1] * q[1] + alpha[2] * q[2]) / sum
}

/// Mirror image of [`weno_z_value`]: the value at the left face of the middle cell.
pub fn weno_z_value_left(s: &[f64; 5], cfg: &WenoZConfig) -> f64 {
    weno_z_value(&[s[4], s[3], s[2], s[1], s[0]], cfg)
}

/// Divergence-free scaling factor `σ = min{1, σˣ, σʸ}`.
pub fn divergence_free_factor(ha_x: f64, hb_y: f64, a_bar: f64, b_bar: f64) -> f64 {
    let partial = |slope: f64, avg: f64| if slope * avg > 0.0 { (slope / avg).min(1.0) } else { 0.0 };
    partial(ha_x, a_bar).min(partial(hb_y, b_bar)).min(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagneticFaces {
    pub ha_east: f64,
    pub ha_west: f64,
    pub hb_north: f64,
    pub hb_south: f64,
    pub sigma: f64,
}

/// Face values of `ha` and `hb` whose slopes are `σ Ā` and `σ B̄`.
#[allow(clippy::too_many_arguments)]
pub fn magnetic_interface_2d(
    ha: f64,
    hb: f64,
    a_bar: f64,
    b_bar: f64,
    ha_x: f64,
    hb_y: f64,
    dx: f64,
    dy: f64,
) -> MagneticFaces {
    let sigma = divergence_free_factor(ha_x, hb_y, a_bar, b_bar);
    let sx = sigma * a_bar * (0.5 * dx);
    let sy = sigma * b_bar * (0.5 * dy);
    MagneticFaces { ha_east: ha + sx, ha_west: ha - sx, hb_north: hb + sy, hb_south: hb - sy, sigma }
}
