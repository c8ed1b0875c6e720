//! Energy, balance residuals, vorticity, error norms and convergence rates.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::{ConservedField1D, ConservedField2D, H, HA, HB, HU, HV};
use crate::grid::{Grid1D, Grid2D};
use crate::model::{coriolis_at, ModelConfig};

/// Energy density `h(u² + v² + a² + b²)/2 + g h (h/2 + Z)` of one cell.
pub fn cell_energy(q: [f64; 5], z: f64, g: f64) -> f64 {
    let [h, hu, hv, ha, hb] = q;
    0.5 * (hu * hu + hv * hv + ha * ha + hb * hb) / h + g * h * (0.5 * h + z)
}

/// Sum of cell energies times `volume`; `z` holds cell-center topography.
pub fn total_energy(cells: impl Iterator<Item = [f64; 5]>, z: &[f64], g: f64, volume: f64) -> f64 {
    cells.zip(z).map(|(q, &zc)| cell_energy(q, zc, g)).sum::<f64>() * volume
}

pub fn total_energy_1d(w: &ConservedField1D, z: &[f64], g: f64, dy: f64) -> f64 {
    total_energy((0..w.len()).map(|k| w.cell(k)), z, g, dy)
}

pub fn total_energy_2d(w: &ConservedField2D, z: &[f64], g: f64, area: f64) -> f64 {
    total_energy((0..w.nx * w.ny).map(|i| w.cell(i)), z, g, area)
}

pub fn total_mass(h: &[f64], volume: f64) -> f64 {
    h.iter().sum::<f64>() * volume
}

/// Second-order central difference, one-sided at the ends.
pub fn central_derivative(psi: &[f64], delta: f64) -> Vec<f64> {
    let n = psi.len();
    (0..n)
        .map(|k| match (k, n) {
            (_, 0 | 1) => 0.0,
            (0, _) => (psi[1] - psi[0]) / delta,
            (k, n) if k == n - 1 => (psi[k] - psi[k - 1]) / delta,
            (k, _) => (psi[k + 1] - psi[k - 1]) / (2.0 * delta),
        })
        .collect()
}

/// Both sides of the magneto-geostrophic balance in 1-D: `g h_y - b b_y` and `-f u`.
pub fn balance_residual_instant(w: &ConservedField1D, grid: &Grid1D, cfg: &ModelConfig) -> (Vec<f64>, Vec<f64>) {
    let n = w.len();
    let h = &w.comps[H];
    let b: Vec<f64> = (0..n).map(|k| w.comps[HB][k] / h[k]).collect();
    let h_y = central_derivative(h, grid.dy());
    let b_y = central_derivative(&b, grid.dy());
    let lhs = (0..n).map(|k| cfg.g * h_y[k] - b[k] * b_y[k]).collect();
    let rhs = (0..n).map(|k| -coriolis_at(cfg, grid.y.center(k as isize)) * w.comps[HU][k] / h[k]).collect();
    (lhs, rhs)
}

/// Running time integrals of both balance fields over `[2 T_f, t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BalanceAccumulator {
    /// `2 T_f` with `T_f = 2π / |f|`.
    pub window_start: f64,
    pub pressure: Vec<f64>,
    pub coriolis: Vec<f64>,
    pub samples: usize,
    last: Option<(f64, Vec<f64>, Vec<f64>)>,
}

impl BalanceAccumulator {
    pub fn new(f: f64, n: usize) -> Self {
        Self {
            window_start: 2.0 * 2.0 * PI / f.abs(),
            pressure: vec![0.0; n],
            coriolis: vec![0.0; n],
            samples: 0,
            last: None,
        }
    }

    /// Adds the sample `(lhs, rhs)` at time `t` with trapezoidal weights; a
    /// step straddling the window start is cut by linear interpolation.
    pub fn sample(&mut self, t: f64, lhs: Vec<f64>, rhs: Vec<f64>) {
        let s = self.window_start;
        if let Some((t0, l0, r0)) = &self.last {
            if t > s {
                let (ta, frac) = if *t0 >= s { (*t0, 0.0) } else { (s, (s - t0) / (t - t0)) };
                let half = 0.5 * (t - ta);
                for k in 0..lhs.len() {
                    let la = l0[k] + frac * (lhs[k] - l0[k]);
                    let ra = r0[k] + frac * (rhs[k] - r0[k]);
                    self.pressure[k] += half * (la + lhs[k]);
                    self.coriolis[k] += half * (ra + rhs[k]);
                }
                self.samples += 1;
            }
        }
        self.last = Some((t, lhs, rhs));
    }
}

/// Both accumulated integrals divided by `T - 2 T_f`.
pub fn balance_residual_timeavg(acc: &BalanceAccumulator, t_final: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let span = t_final - acc.window_start;
    if span <= 0.0 || acc.samples == 0 {
        return Err(Error::WindowNotStarted { start: acc.window_start });
    }
    Ok((acc.pressure.iter().map(|x| x / span).collect(), acc.coriolis.iter().map(|x| x / span).collect()))
}

/// Vorticity `v_x - u_y` and divergence `u_x + v_y` from central differences.
pub fn vorticity_and_divergence(w: &ConservedField2D, grid: &Grid2D) -> (Vec<f64>, Vec<f64>) {
    let (nx, ny) = (w.nx, w.ny);
    let u: Vec<f64> = (0..nx * ny).map(|i| w.comps[HU][i] / w.comps[H][i]).collect();
    let v: Vec<f64> = (0..nx * ny).map(|i| w.comps[HV][i] / w.comps[H][i]).collect();
    let mut u_x = vec![0.0; nx * ny];
    let mut v_x = vec![0.0; nx * ny];
    for k in 0..ny {
        let r = k * nx..(k + 1) * nx;
        u_x[r.clone()].copy_from_slice(&central_derivative(&u[r.clone()], grid.x.delta));
        v_x[r.clone()].copy_from_slice(&central_derivative(&v[r], grid.x.delta));
    }
    let mut u_y = vec![0.0; nx * ny];
    let mut v_y = vec![0.0; nx * ny];
    for j in 0..nx {
        let cu: Vec<f64> = (0..ny).map(|k| u[k * nx + j]).collect();
        let cv: Vec<f64> = (0..ny).map(|k| v[k * nx + j]).collect();
        let (du, dv) = (central_derivative(&cu, grid.y.delta), central_derivative(&cv, grid.y.delta));
        for k in 0..ny {
            u_y[k * nx + j] = du[k];
            v_y[k * nx + j] = dv[k];
        }
    }
    let zeta = (0..nx * ny).map(|i| v_x[i] - u_y[i]).collect();
    let div = (0..nx * ny).map(|i| u_x[i] + v_y[i]).collect();
    (zeta, div)
}

/// `(L∞, L1)` norms of `field - reference`, the latter weighted by `delta`.
pub fn error_norms(field: &[f64], reference: &[f64], delta: f64) -> Result<(f64, f64)> {
    if field.len() != reference.len() {
        return Err(Error::ShapeMismatch { left: field.len(), right: reference.len() });
    }
    let (mut linf, mut l1) = (0.0_f64, 0.0);
    for (a, b) in field.iter().zip(reference) {
        let d = (a - b).abs();
        linf = linf.max(d);
        l1 += d;
    }
    Ok((linf, l1 * delta))
}

/// `log₂(d_coarse / d_fine)` for successive-mesh differences.
pub fn runge_rate(diff_coarse: f64, diff_fine: f64) -> Result<f64> {
    for d in [diff_coarse, diff_fine] {
        if !(d > 0.0) {
            return Err(Error::NonPositive(d));
        }
    }
    Ok((diff_coarse / diff_fine).log2())
}

/// Per-component helpers on primitive values.
pub fn primitive(w: &ConservedField1D, comp: usize) -> Vec<f64> {
    (0..w.len()).map(|k| if comp == H { w.comps[H][k] } else { w.comps[comp][k] / w.comps[H][k] }).collect()
}

pub fn primitive_2d(w: &ConservedField2D, comp: usize) -> Vec<f64> {
    (0..w.nx * w.ny).map(|i| if comp == H { w.comps[H][i] } else { w.comps[comp][i] / w.comps[H][i] }).collect()
}

/// `max_k |(hb)_k - (hb)_0|`.
pub fn hb_spread(w: &ConservedField1D) -> f64 {
    let hb = &w.comps[HB];
    hb.iter().fold(0.0_f64, |m, x| m.max((x - hb[0]).abs()))
}

pub const PRIMITIVE_NAMES: [(&str, usize); 5] = [("h", H), ("u", HU), ("v", HV), ("a", HA), ("b", HB)];
