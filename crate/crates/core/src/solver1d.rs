//! Semi-discrete 1-D right-hand side.

use crate::cubic::{solve_energy_cubic, EnergyCubic};
use crate::error::{Error, Result};
use crate::field::{ConservedField1D, B1, H, HA, HB, HU, HV};
use crate::grid::{Grid1D, GHOSTS_1D};
use crate::line::{self, InterfaceStates, Ledger, LineData, LineParams, LineSweep, Speeds, TransverseScheme, NW};
use crate::model::{check_depth, coriolis_at, ModelConfig};
use crate::topography::Topography1D;

/// Equilibrium variables `(hv, u, E, a, hb)` per cell and the global
/// Coriolis integral `P` at centers and interfaces.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumField1D {
    pub hv: Vec<f64>,
    pub u: Vec<f64>,
    pub e: Vec<f64>,
    pub a: Vec<f64>,
    pub hb: Vec<f64>,
    pub p_center: Vec<f64>,
    /// `n + 1` values, `p_face[0] = 0`.
    pub p_face: Vec<f64>,
}

/// Boundary data held fixed during a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boundary1D {
    /// `u` at the left boundary, anchoring the trapezoidal `P` recursion.
    pub u_left: f64,
}

pub fn equilibrium_from_conserved(
    w: &ConservedField1D,
    topo: &Topography1D,
    grid: &Grid1D,
    cfg: &ModelConfig,
    u_boundary: f64,
) -> Result<EquilibriumField1D> {
    let n = grid.n();
    let dy = grid.dy();
    let g = cfg.g;
    let mut u = vec![0.0; n];
    let mut a = vec![0.0; n];
    for k in 0..n {
        let h = w.comps[H][k];
        check_depth(h)?;
        u[k] = w.comps[HU][k] / h;
        a[k] = w.comps[HA][k] / h;
    }
    let f: Vec<f64> = (0..n).map(|k| coriolis_at(cfg, grid.y.center(k as isize))).collect();
    let mut p_center = vec![0.0; n];
    p_center[0] = 0.25 * dy * (coriolis_at(cfg, grid.y.lo) * u_boundary + f[0] * u[0]);
    for k in 1..n {
        p_center[k] = p_center[k - 1] + 0.5 * dy * (f[k - 1] * u[k - 1] + f[k] * u[k]);
    }
    let mut p_face = vec![0.0; n + 1];
    for k in 0..n {
        p_face[k + 1] = p_face[k] + dy * f[k] * u[k];
    }
    let e = (0..n)
        .map(|k| {
            let (h, hv, hb) = (w.comps[H][k], w.comps[HV][k], w.comps[HB][k]);
            0.5 * (hv * hv - hb * hb) / (h * h) + g * (h + topo.center(k)) + p_center[k]
        })
        .collect();
    Ok(EquilibriumField1D { hv: w.comps[HV].clone(), u, e, a, hb: w.comps[HB].clone(), p_center, p_face })
}

/// One ghost cell with both its conserved and equilibrium values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhostCell {
    pub y: f64,
    pub z: f64,
    pub h: f64,
    pub hu: f64,
    pub hv: f64,
    pub ha: f64,
    pub hb: f64,
    pub b_der: f64,
    pub u: f64,
    pub a: f64,
    pub e: f64,
    pub p: f64,
}

/// Ghost layers ordered outward: `low[0]` is the cell just left of the domain.
#[derive(Debug, Clone, PartialEq)]
pub struct GhostCells1D {
    pub low: Vec<GhostCell>,
    pub high: Vec<GhostCell>,
}

/// Coefficients of the steady `u` and `a` profiles,
/// `u = cu * (f_c y + β y²/2) + const` and likewise for `a`.
fn profile_coefficients(hv: f64, hb: f64) -> (f64, f64) {
    let den = hv * hv - hb * hb;
    if den.abs() <= 1e-14 * (hv * hv + hb * hb) || den == 0.0 {
        (0.0, 0.0)
    } else {
        (hv * hv / den, hv * hb / den)
    }
}

fn coriolis_primitive(cfg: &ModelConfig, y: f64) -> f64 {
    cfg.f_c * y + 0.5 * cfg.beta * y * y
}

/// Outflow ghost cells continuing the steady profiles of the nearest interior cell.
pub fn outflow_ghost_1d(
    w: &ConservedField1D,
    eq: &EquilibriumField1D,
    topo: &Topography1D,
    grid: &Grid1D,
    cfg: &ModelConfig,
) -> Result<GhostCells1D> {
    let n = grid.n();
    let dy = grid.dy();
    let g = cfg.g;
    let build = |edge: usize, dir: isize| -> Result<Vec<GhostCell>> {
        let (hv, hb, e) = (eq.hv[edge], eq.hb[edge], eq.e[edge]);
        let (cu, ca) = profile_coefficients(hv, hb);
        let ye = grid.y.center(edge as isize);
        let phi_e = coriolis_primitive(cfg, ye);
        let uc = eq.u[edge] - cu * phi_e;
        let ac = eq.a[edge] - ca * phi_e;
        let c_kin = 0.5 * (hv * hv - hb * hb);
        let mut out = Vec::with_capacity(GHOSTS_1D);
        let (mut y_prev, mut u_prev, mut p_prev) = (ye, eq.u[edge], eq.p_center[edge]);
        for layer in 1..=GHOSTS_1D {
            let idx = edge as isize + dir * layer as isize;
            let y = grid.y.center(idx);
            let phi = coriolis_primitive(cfg, y);
            let u = cu * phi + uc;
            let a = ca * phi + ac;
            let trap = 0.5 * dy * (coriolis_at(cfg, y) * u + coriolis_at(cfg, y_prev) * u_prev);
            let p = if dir < 0 { p_prev - trap } else { p_prev + trap };
            let z = topo.padded[(idx + GHOSTS_1D as isize) as usize];
            let h = solve_energy_cubic(&EnergyCubic { c_kin, z_eff: g * z + p, e_tgt: e, g, h_guess: w.comps[H][edge] })?;
            check_depth(h)?;
            out.push(GhostCell { y, z, h, hu: h * u, hv, ha: h * a, hb, b_der: w.comps[B1][edge], u, a, e, p });
            (y_prev, u_prev, p_prev) = (y, u, p);
        }
        Ok(out)
    };
    Ok(GhostCells1D { low: build(0, -1)?, high: build(n - 1, 1)? })
}

/// Padded arrays feeding the line kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct PaddedLine1D {
    pub h: Vec<f64>,
    pub hu: Vec<f64>,
    pub hv: Vec<f64>,
    pub ha: Vec<f64>,
    pub hb: Vec<f64>,
    pub b_der: Vec<f64>,
    pub w: Vec<f64>,
    pub e: Vec<f64>,
    pub u: Vec<f64>,
    pub a: Vec<f64>,
    pub zeros: Vec<f64>,
}

impl PaddedLine1D {
    pub fn new(w: &ConservedField1D, eq: &EquilibriumField1D, ghosts: &GhostCells1D, topo: &Topography1D) -> Self {
        let n = w.len();
        let len = n + 2 * GHOSTS_1D;
        let mut out = Self {
            h: vec![0.0; len],
            hu: vec![0.0; len],
            hv: vec![0.0; len],
            ha: vec![0.0; len],
            hb: vec![0.0; len],
            b_der: vec![0.0; len],
            w: vec![0.0; len],
            e: vec![0.0; len],
            u: vec![0.0; len],
            a: vec![0.0; len],
            zeros: vec![0.0; len],
        };
        let mut put = |c: usize, gc: &GhostCell| {
            out.h[c] = gc.h;
            out.hu[c] = gc.hu;
            out.hv[c] = gc.hv;
            out.ha[c] = gc.ha;
            out.hb[c] = gc.hb;
            out.b_der[c] = gc.b_der;
            out.e[c] = gc.e;
            out.u[c] = gc.u;
            out.a[c] = gc.a;
        };
        for (layer, gc) in ghosts.low.iter().enumerate() {
            put(GHOSTS_1D - 1 - layer, gc);
        }
        for (layer, gc) in ghosts.high.iter().enumerate() {
            put(GHOSTS_1D + n + layer, gc);
        }
        for k in 0..n {
            let c = k + GHOSTS_1D;
            out.h[c] = w.comps[H][k];
            out.hu[c] = w.comps[HU][k];
            out.hv[c] = w.comps[HV][k];
            out.ha[c] = w.comps[HA][k];
            out.hb[c] = w.comps[HB][k];
            out.b_der[c] = w.comps[B1][k];
            out.e[c] = eq.e[k];
            out.u[c] = eq.u[k];
            out.a[c] = eq.a[k];
        }
        for c in 0..len {
            out.w[c] = out.h[c] + topo.padded[c];
        }
        out
    }

    pub fn line<'a>(&'a self, grid: &Grid1D, topo: &'a Topography1D, eq: &'a EquilibriumField1D) -> LineData<'a> {
        LineData {
            ghosts: GHOSTS_1D,
            delta: grid.dy(),
            h: &self.h,
            qn: &self.hv,
            qt: &self.hu,
            pn: &self.hb,
            pt: &self.ha,
            dn: &self.b_der,
            dt: &self.zeros,
            w: &self.w,
            e: &self.e,
            vt: &self.u,
            bt: &self.a,
            pn_slope: &self.b_der,
            tdv: &self.zeros,
            z_minus: &topo.face_minus,
            z_plus: &topo.face_plus,
            p_face: &eq.p_face,
        }
    }
}

/// WENO-Z for `u` and `a` on the beta-plane, minmod otherwise.
pub fn line_params(cfg: &ModelConfig) -> LineParams {
    LineParams {
        g: cfg.g,
        theta: cfg.theta,
        variant: cfg.variant,
        transverse: if cfg.beta != 0.0 { TransverseScheme::WenoZ } else { TransverseScheme::Minmod },
    }
}

pub type InterfaceStates1D = InterfaceStates;
pub type FluxLedger1D = Ledger;

/// Interface values (with hat values equal to the face values).
pub fn wb_interface_reconstruction(
    w: &ConservedField1D,
    eq: &EquilibriumField1D,
    topo: &Topography1D,
    grid: &Grid1D,
    cfg: &ModelConfig,
) -> Result<InterfaceStates1D> {
    let ghosts = outflow_ghost_1d(w, eq, topo, grid, cfg)?;
    let padded = PaddedLine1D::new(w, eq, &ghosts, topo);
    line::reconstruct_line(&padded.line(grid, topo, eq), &line_params(cfg))
}

pub fn hat_states(states: &mut InterfaceStates1D, eq: &EquilibriumField1D, cfg: &ModelConfig) -> Result<()> {
    line::apply_hat(states, &eq.p_face, cfg.g)
}

/// In-cell Coriolis contribution `Δy f_k (hv̄)_k` to the `hu` component.
pub fn coriolis_source(w: &ConservedField1D, grid: &Grid1D, cfg: &ModelConfig) -> Vec<f64> {
    (0..grid.n()).map(|k| grid.dy() * coriolis_at(cfg, grid.y.center(k as isize)) * w.comps[HV][k]).collect()
}

pub fn global_flux_ledger(states: &InterfaceStates1D, w: &ConservedField1D, grid: &Grid1D, cfg: &ModelConfig) -> FluxLedger1D {
    line::ledger(states, Some(&coriolis_source(w, grid, cfg)), cfg.g)
}

pub fn local_speeds_1d(states: &InterfaceStates1D, g: f64) -> Vec<Speeds> {
    line::speeds(states, g)
}

/// Maps a local flux vector to `(h, hu, hv, ha, hb, B)`.
pub fn to_global(f: &[f64; NW]) -> [f64; 6] {
    [f[0], f[2], f[1], f[4], f[3], f[5]]
}

pub fn cu_flux_1d(states: &InterfaceStates1D, ledger: &FluxLedger1D, speeds: &[Speeds], g: f64) -> Vec<[f64; 6]> {
    line::cu_fluxes(states, ledger, speeds, g).iter().map(to_global).collect()
}

/// Full sweep; exposes every intermediate stage.
pub fn sweep_1d(
    w: &ConservedField1D,
    topo: &Topography1D,
    grid: &Grid1D,
    cfg: &ModelConfig,
    bc: &Boundary1D,
) -> Result<LineSweep> {
    let eq = equilibrium_from_conserved(w, topo, grid, cfg, bc.u_left)?;
    let ghosts = outflow_ghost_1d(w, &eq, topo, grid, cfg)?;
    let padded = PaddedLine1D::new(w, &eq, &ghosts, topo);
    let source = coriolis_source(w, grid, cfg);
    line::sweep(&padded.line(grid, topo, &eq), &line_params(cfg), Some(&source))
}

/// `dW/dt` and the largest local speed.
pub fn semidiscrete_rhs_1d(
    w: &ConservedField1D,
    topo: &Topography1D,
    grid: &Grid1D,
    cfg: &ModelConfig,
    bc: &Boundary1D,
) -> Result<(ConservedField1D, f64)> {
    let sw = sweep_1d(w, topo, grid, cfg, bc)?;
    let n = grid.n();
    let dy = grid.dy();
    let fl: Vec<[f64; 6]> = sw.fluxes.iter().map(to_global).collect();
    let mut rate = ConservedField1D::zeros(n);
    for k in 0..n {
        for c in 0..6 {
            rate.comps[c][k] = -(fl[k + 1][c] - fl[k][c]) / dy;
        }
    }
    Ok((rate, sw.max_speed()))
}

/// Targets of a 1-D moving-water equilibrium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyTargets1D {
    pub hv: f64,
    pub e: f64,
    pub hb: f64,
    pub u_c: f64,
    pub a_c: f64,
}

impl SteadyTargets1D {
    pub fn u_at(&self, cfg: &ModelConfig, y: f64) -> f64 {
        profile_coefficients(self.hv, self.hb).0 * coriolis_primitive(cfg, y) + self.u_c
    }

    pub fn a_at(&self, cfg: &ModelConfig, y: f64) -> f64 {
        profile_coefficients(self.hv, self.hb).1 * coriolis_primitive(cfg, y) + self.a_c
    }
}

/// Discrete steady state: closed-form `u`, `a` and `h` from the cell cubics.
pub fn steady_state_discrete(
    cfg: &ModelConfig,
    grid: &Grid1D,
    topo: &Topography1D,
    t: &SteadyTargets1D,
) -> Result<ConservedField1D> {
    let den = t.hv * t.hv - t.hb * t.hb;
    if den == 0.0 && t.hv != 0.0 {
        return Err(Error::DegenerateEquilibrium);
    }
    let n = grid.n();
    let dy = grid.dy();
    let g = cfg.g;
    let y: Vec<f64> = grid.y.centers();
    let u: Vec<f64> = y.iter().map(|&y| t.u_at(cfg, y)).collect();
    let u_half = t.u_at(cfg, grid.y.lo);
    let mut p = 0.25 * dy * (coriolis_at(cfg, grid.y.lo) * u_half + coriolis_at(cfg, y[0]) * u[0]);
    let c_kin = 0.5 * den;
    let mut out = ConservedField1D::zeros(n);
    for k in 0..n {
        if k > 0 {
            p += 0.5 * dy * (coriolis_at(cfg, y[k - 1]) * u[k - 1] + coriolis_at(cfg, y[k]) * u[k]);
        }
        let z_eff = g * topo.center(k) + p;
        let guess = ((t.e - z_eff) / g).max(1.0);
        let h = solve_energy_cubic(&EnergyCubic { c_kin, z_eff, e_tgt: t.e, g, h_guess: guess })?;
        check_depth(h)?;
        out.comps[H][k] = h;
        out.comps[HU][k] = h * u[k];
        out.comps[HV][k] = t.hv;
        out.comps[HA][k] = h * t.a_at(cfg, y[k]);
        out.comps[HB][k] = t.hb;
    }
    Ok(out)
}
