//! Semi-discrete 2-D right-hand side built from row (`x`) and column (`y`) sweeps.

use crate::cubic::{solve_energy_cubic, EnergyCubic};
use crate::error::{Error, Result};
use crate::field::{ConservedField2D, A2, B2, H, HA, HB, HU, HV};
use crate::grid::{Grid2D, GHOSTS_2D};
use crate::line::{self, InterfaceStates, Ledger, LineData, LineParams, LineSweep, Speeds, TransverseScheme, NW};
use crate::model::{check_depth, coriolis_at, ModelConfig};
use crate::reconstruct::{divergence_free_factor, limited_slope};
use crate::timeint::WaveSpeeds;
use crate::topography::Topography2D;

const G: usize = GHOSTS_2D;

/// Boundary velocities anchoring the trapezoidal `P` recursions.
#[derive(Debug, Clone, PartialEq)]
pub struct Boundary2D {
    /// `u(x_j, y_{1/2})`, one per column.
    pub u_south: Vec<f64>,
    /// `v(x_{1/2}, y_k)`, one per row.
    pub v_west: Vec<f64>,
}

impl Boundary2D {
    pub fn zero(grid: &Grid2D) -> Self {
        Self { u_south: vec![0.0; grid.nx()], v_west: vec![0.0; grid.ny()] }
    }
}

/// Primitive fields, both energies and the `P` integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumField2D {
    pub nx: usize,
    pub ny: usize,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub ex: Vec<f64>,
    pub ey: Vec<f64>,
    pub px_center: Vec<f64>,
    pub py_center: Vec<f64>,
    /// `Pˣ` at x-interfaces, index `k * (nx + 1) + i`.
    pub px_face: Vec<f64>,
    /// `Pʸ` at y-interfaces, index `i * nx + j`.
    pub py_face: Vec<f64>,
}

pub fn equilibrium_from_conserved_2d(
    w: &ConservedField2D,
    topo: &Topography2D,
    grid: &Grid2D,
    cfg: &ModelConfig,
    bc: &Boundary2D,
) -> Result<EquilibriumField2D> {
    let (nx, ny) = (grid.nx(), grid.ny());
    let (dx, dy) = (grid.x.delta, grid.y.delta);
    let g = cfg.g;
    if bc.u_south.len() != nx {
        return Err(Error::ShapeMismatch { left: bc.u_south.len(), right: nx });
    }
    if bc.v_west.len() != ny {
        return Err(Error::ShapeMismatch { left: bc.v_west.len(), right: ny });
    }
    let n = nx * ny;
    let (mut u, mut v, mut a, mut b) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    for i in 0..n {
        let h = w.comps[H][i];
        check_depth(h)?;
        u[i] = w.comps[HU][i] / h;
        v[i] = w.comps[HV][i] / h;
        a[i] = w.comps[HA][i] / h;
        b[i] = w.comps[HB][i] / h;
    }
    let f: Vec<f64> = (0..ny).map(|k| coriolis_at(cfg, grid.y.center(k as isize))).collect();
    let f_south = coriolis_at(cfg, grid.y.lo);

    let mut px_center = vec![0.0; n];
    let mut px_face = vec![0.0; (nx + 1) * ny];
    for k in 0..ny {
        let row = k * nx;
        px_center[row] = -0.25 * f[k] * dx * (bc.v_west[k] + v[row]);
        for j in 1..nx {
            px_center[row + j] = px_center[row + j - 1] - 0.5 * f[k] * dx * (v[row + j - 1] + v[row + j]);
        }
        let fr = k * (nx + 1);
        for j in 0..nx {
            px_face[fr + j + 1] = px_face[fr + j] - dx * f[k] * v[row + j];
        }
    }
    let mut py_center = vec![0.0; n];
    let mut py_face = vec![0.0; nx * (ny + 1)];
    for j in 0..nx {
        py_center[j] = 0.25 * dy * (f_south * bc.u_south[j] + f[0] * u[j]);
        for k in 1..ny {
            let (c, s) = (k * nx + j, (k - 1) * nx + j);
            py_center[c] = py_center[s] + 0.5 * dy * (f[k - 1] * u[s] + f[k] * u[c]);
        }
        for k in 0..ny {
            py_face[(k + 1) * nx + j] = py_face[k * nx + j] + dy * f[k] * u[k * nx + j];
        }
    }

    let mut ex = vec![0.0; n];
    let mut ey = vec![0.0; n];
    for k in 0..ny {
        for j in 0..nx {
            let i = k * nx + j;
            let h = w.comps[H][i];
            let pot = g * (h + topo.center(j, k));
            ex[i] = 0.5 * (u[i] * u[i] - a[i] * a[i]) + pot + px_center[i];
            ey[i] = 0.5 * (v[i] * v[i] - b[i] * b[i]) + pot + py_center[i];
        }
    }
    Ok(EquilibriumField2D { nx, ny, u, v, a, b, ex, ey, px_center, py_center, px_face, py_face })
}

/// All fields on the `(nx + 2G) x (ny + 2G)` padded mesh, row-major in `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Padded2D {
    pub px: usize,
    pub py: usize,
    pub h: Vec<f64>,
    pub hu: Vec<f64>,
    pub hv: Vec<f64>,
    pub ha: Vec<f64>,
    pub hb: Vec<f64>,
    pub a_der: Vec<f64>,
    pub b_der: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub ex: Vec<f64>,
    pub ey: Vec<f64>,
    pub w: Vec<f64>,
    /// `σ Ā` and `σ B̄`: slopes of `ha` in `x` and `hb` in `y`.
    pub ha_slope: Vec<f64>,
    pub hb_slope: Vec<f64>,
    pub sigma: Vec<f64>,
    pub u_y: Vec<f64>,
    pub v_x: Vec<f64>,
}

impl Padded2D {
    fn empty(px: usize, py: usize) -> Self {
        let z = vec![0.0; px * py];
        Self {
            px,
            py,
            h: z.clone(),
            hu: z.clone(),
            hv: z.clone(),
            ha: z.clone(),
            hb: z.clone(),
            a_der: z.clone(),
            b_der: z.clone(),
            u: z.clone(),
            v: z.clone(),
            a: z.clone(),
            b: z.clone(),
            ex: z.clone(),
            ey: z.clone(),
            w: z.clone(),
            ha_slope: z.clone(),
            hb_slope: z.clone(),
            sigma: z.clone(),
            u_y: z.clone(),
            v_x: z,
        }
    }

    pub fn at(&self, jp: usize, kp: usize) -> usize {
        kp * self.px + jp
    }

    /// Copies cell `src` into `dst` except for the depth-dependent quantities.
    fn copy_cell(&mut self, dst: usize, src: usize) {
        for arr in [
            &mut self.h,
            &mut self.hu,
            &mut self.hv,
            &mut self.ha,
            &mut self.hb,
            &mut self.a_der,
            &mut self.b_der,
            &mut self.u,
            &mut self.v,
            &mut self.a,
            &mut self.b,
            &mut self.ex,
            &mut self.ey,
        ] {
            arr[dst] = arr[src];
        }
    }
}

/// Depth of a ghost cell: `c/h² + g(h + Z_g) + ΔP = c/h_e² + g(h_e + Z_e)`.
fn ghost_depth(c_kin: f64, h_e: f64, z_e: f64, z_g: f64, dp: f64, g: f64) -> Result<f64> {
    let e_tgt = c_kin / (h_e * h_e) + g * (h_e + z_e);
    let h = solve_energy_cubic(&EnergyCubic { c_kin, z_eff: g * z_g + dp, e_tgt, g, h_guess: h_e })?;
    check_depth(h)?;
    Ok(h)
}

/// Outflow ghost frame: zero-order extrapolation of the `x`-family across the
/// west/east edges, then of the `y`-family across the south/north edges
/// (including corners), with the depth recovered from the energy relation.
pub fn outflow_ghost_2d(
    w: &ConservedField2D,
    eq: &EquilibriumField2D,
    topo: &Topography2D,
    grid: &Grid2D,
    cfg: &ModelConfig,
) -> Result<Padded2D> {
    let (nx, ny) = (grid.nx(), grid.ny());
    let (dx, dy) = (grid.x.delta, grid.y.delta);
    let g = cfg.g;
    let (px, py) = (nx + 2 * G, ny + 2 * G);
    let mut p = Padded2D::empty(px, py);
    let zp = |jp: usize, kp: usize| topo.padded[kp * topo.padded_nx + jp];

    for k in 0..ny {
        for j in 0..nx {
            let (i, d) = (k * nx + j, p.at(j + G, k + G));
            p.h[d] = w.comps[H][i];
            p.hu[d] = w.comps[HU][i];
            p.hv[d] = w.comps[HV][i];
            p.ha[d] = w.comps[HA][i];
            p.hb[d] = w.comps[HB][i];
            p.a_der[d] = w.comps[A2][i];
            p.b_der[d] = w.comps[B2][i];
            p.u[d] = eq.u[i];
            p.v[d] = eq.v[i];
            p.a[d] = eq.a[i];
            p.b[d] = eq.b[i];
            p.ex[d] = eq.ex[i];
            p.ey[d] = eq.ey[i];
        }
    }

    for k in 0..ny {
        let kp = k + G;
        let f = coriolis_at(cfg, grid.y.center(k as isize));
        for (edge, dir) in [(G, -1isize), (G + nx - 1, 1)] {
            let e = p.at(edge, kp);
            let (h_e, hu, ha) = (p.h[e], p.hu[e], p.ha[e]);
            let c_kin = 0.5 * (hu * hu - ha * ha);
            for m in 1..=G {
                let jp = (edge as isize + dir * m as isize) as usize;
                let dst = p.at(jp, kp);
                p.copy_cell(dst, e);
                let dp = -(dir as f64) * m as f64 * f * dx * p.v[e];
                let h = ghost_depth(c_kin, h_e, zp(edge, kp), zp(jp, kp), dp, g)?;
                p.h[dst] = h;
                p.hv[dst] = h * p.v[e];
                p.hb[dst] = h * p.b[e];
                p.u[dst] = hu / h;
                p.a[dst] = ha / h;
                p.ey[dst] = 0.0;
            }
        }
    }

    for jp in 0..px {
        for (edge, dir) in [(G, -1isize), (G + ny - 1, 1)] {
            let e = p.at(jp, edge);
            let (h_e, hv, hb, u_e) = (p.h[e], p.hv[e], p.hb[e], p.u[e]);
            let c_kin = 0.5 * (hv * hv - hb * hb);
            let (mut y_prev, mut dp) = (grid.y.center(edge as isize - G as isize), 0.0);
            for m in 1..=G {
                let kp = (edge as isize + dir * m as isize) as usize;
                let y = grid.y.center(kp as isize - G as isize);
                dp += (dir as f64) * 0.5 * dy * (coriolis_at(cfg, y_prev) + coriolis_at(cfg, y)) * u_e;
                y_prev = y;
                let dst = p.at(jp, kp);
                p.copy_cell(dst, e);
                let h = ghost_depth(c_kin, h_e, zp(jp, edge), zp(jp, kp), dp, g)?;
                p.h[dst] = h;
                p.hu[dst] = h * u_e;
                p.ha[dst] = h * p.a[e];
                p.v[dst] = hv / h;
                p.b[dst] = hb / h;
                p.ex[dst] = 0.0;
            }
        }
    }

    for i in 0..px * py {
        p.w[i] = p.h[i] + topo.padded[i];
    }
    let th = cfg.theta;
    for kp in 1..py - 1 {
        for jp in 1..px - 1 {
            let c = p.at(jp, kp);
            let (west, east, south, north) = (c - 1, c + 1, c - px, c + px);
            let ha_x = limited_slope(p.ha[west], p.ha[c], p.ha[east], dx, th);
            let hb_y = limited_slope(p.hb[south], p.hb[c], p.hb[north], dy, th);
            let s = divergence_free_factor(ha_x, hb_y, p.a_der[c], p.b_der[c]);
            p.sigma[c] = s;
            p.ha_slope[c] = s * p.a_der[c];
            p.hb_slope[c] = s * p.b_der[c];
            p.u_y[c] = limited_slope(p.u[south], p.u[c], p.u[north], dy, th);
            p.v_x[c] = limited_slope(p.v[west], p.v[c], p.v[east], dx, th);
        }
    }
    Ok(p)
}

/// Owned per-line arrays in the sweep frame.
#[derive(Debug, Clone, Default)]
struct OwnedLine {
    h: Vec<f64>,
    qn: Vec<f64>,
    qt: Vec<f64>,
    pn: Vec<f64>,
    pt: Vec<f64>,
    dn: Vec<f64>,
    dt: Vec<f64>,
    w: Vec<f64>,
    e: Vec<f64>,
    vt: Vec<f64>,
    bt: Vec<f64>,
    pn_slope: Vec<f64>,
    tdv: Vec<f64>,
    z_minus: Vec<f64>,
    z_plus: Vec<f64>,
    p_face: Vec<f64>,
}

impl OwnedLine {
    fn view(&self, delta: f64) -> LineData<'_> {
        LineData {
            ghosts: G,
            delta,
            h: &self.h,
            qn: &self.qn,
            qt: &self.qt,
            pn: &self.pn,
            pt: &self.pt,
            dn: &self.dn,
            dt: &self.dt,
            w: &self.w,
            e: &self.e,
            vt: &self.vt,
            bt: &self.bt,
            pn_slope: &self.pn_slope,
            tdv: &self.tdv,
            z_minus: &self.z_minus,
            z_plus: &self.z_plus,
            p_face: &self.p_face,
        }
    }
}

/// Everything needed to run the sweeps.
#[derive(Debug, Clone)]
pub struct Prepared2D {
    pub eq: EquilibriumField2D,
    pub padded: Padded2D,
}

impl Prepared2D {
    pub fn new(w: &ConservedField2D, topo: &Topography2D, grid: &Grid2D, cfg: &ModelConfig, bc: &Boundary2D) -> Result<Self> {
        let eq = equilibrium_from_conserved_2d(w, topo, grid, cfg, bc)?;
        let padded = outflow_ghost_2d(w, &eq, topo, grid, cfg)?;
        Ok(Self { eq, padded })
    }

    fn row(&self, k: usize, topo: &Topography2D) -> OwnedLine {
        let p = &self.padded;
        let nx = self.eq.nx;
        let r = (k + G) * p.px..(k + G + 1) * p.px;
        let f = k * (nx + 1)..(k + 1) * (nx + 1);
        OwnedLine {
            h: p.h[r.clone()].to_vec(),
            qn: p.hu[r.clone()].to_vec(),
            qt: p.hv[r.clone()].to_vec(),
            pn: p.ha[r.clone()].to_vec(),
            pt: p.hb[r.clone()].to_vec(),
            dn: p.a_der[r.clone()].to_vec(),
            dt: p.b_der[r.clone()].to_vec(),
            w: p.w[r.clone()].to_vec(),
            e: p.ex[r.clone()].to_vec(),
            vt: p.v[r.clone()].to_vec(),
            bt: p.b[r.clone()].to_vec(),
            pn_slope: p.ha_slope[r.clone()].to_vec(),
            tdv: p.u_y[r].to_vec(),
            z_minus: topo.xface_minus[f.clone()].to_vec(),
            z_plus: topo.xface_plus[f.clone()].to_vec(),
            p_face: self.eq.px_face[f].to_vec(),
        }
    }

    fn column(&self, j: usize, topo: &Topography2D) -> OwnedLine {
        let p = &self.padded;
        let nx = self.eq.nx;
        let col = |arr: &[f64]| (0..p.py).map(|kp| arr[kp * p.px + j + G]).collect::<Vec<f64>>();
        let faces = |arr: &[f64]| (0..=self.eq.ny).map(|i| arr[i * nx + j]).collect::<Vec<f64>>();
        OwnedLine {
            h: col(&p.h),
            qn: col(&p.hv),
            qt: col(&p.hu),
            pn: col(&p.hb),
            pt: col(&p.ha),
            dn: col(&p.b_der),
            dt: col(&p.a_der),
            w: col(&p.w),
            e: col(&p.ey),
            vt: col(&p.u),
            bt: col(&p.a),
            pn_slope: col(&p.hb_slope),
            tdv: col(&p.v_x),
            z_minus: faces(&topo.yface_minus),
            z_plus: faces(&topo.yface_plus),
            p_face: faces(&self.eq.py_face),
        }
    }
}

pub fn line_params_2d(cfg: &ModelConfig) -> LineParams {
    LineParams { g: cfg.g, theta: cfg.theta, variant: cfg.variant, transverse: TransverseScheme::Minmod }
}

/// Local index -> global component for y-sweeps.
pub const Y_TO_GLOBAL: [usize; NW] = [H, HV, HU, HB, HA, B2, A2];

/// Maps a y-sweep flux to global component order (x-sweeps are already global).
pub fn y_to_global(f: &[f64; NW]) -> [f64; NW] {
    let mut out = [0.0; NW];
    for (local, &global) in Y_TO_GLOBAL.iter().enumerate() {
        out[global] = f[local];
    }
    out
}

/// Face values along every row (`x`-interfaces) and column (`y`-interfaces).
#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceStates2D {
    /// `rows[k]` holds the `nx + 1` x-interfaces of row `k` (local frame of an x-sweep).
    pub rows: Vec<InterfaceStates>,
    /// `cols[j]` holds the `ny + 1` y-interfaces of column `j` (local frame of a y-sweep).
    pub cols: Vec<InterfaceStates>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FluxLedger2D {
    pub rows: Vec<Ledger>,
    pub cols: Vec<Ledger>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Speeds2D {
    pub rows: Vec<Vec<Speeds>>,
    pub cols: Vec<Vec<Speeds>>,
}

/// Numerical fluxes in global component order.
#[derive(Debug, Clone, PartialEq)]
pub struct Fluxes2D {
    /// `x[k][i]`: interface `i` of row `k`.
    pub x: Vec<Vec<[f64; NW]>>,
    /// `y[j][i]`: interface `i` of column `j`.
    pub y: Vec<Vec<[f64; NW]>>,
}

/// Face values with the hat values still equal to the face values.
pub fn wb_interface_reconstruction_2d(
    prep: &Prepared2D,
    topo: &Topography2D,
    grid: &Grid2D,
    cfg: &ModelConfig,
) -> Result<InterfaceStates2D> {
    let params = line_params_2d(cfg);
    let rows = (0..grid.ny())
        .map(|k| line::reconstruct_line(&prep.row(k, topo).view(grid.x.delta), &params))
        .collect::<Result<_>>()?;
    let cols = (0..grid.nx())
        .map(|j| line::reconstruct_line(&prep.column(j, topo).view(grid.y.delta), &params))
        .collect::<Result<_>>()?;
    Ok(InterfaceStates2D { rows, cols })
}

pub fn hat_states_2d(states: &mut InterfaceStates2D, eq: &EquilibriumField2D, cfg: &ModelConfig) -> Result<()> {
    let nx = eq.nx;
    for (k, row) in states.rows.iter_mut().enumerate() {
        line::apply_hat(row, &eq.px_face[k * (nx + 1)..(k + 1) * (nx + 1)], cfg.g)?;
    }
    for (j, col) in states.cols.iter_mut().enumerate() {
        let p: Vec<f64> = (0..=eq.ny).map(|i| eq.py_face[i * nx + j]).collect();
        line::apply_hat(col, &p, cfg.g)?;
    }
    Ok(())
}

pub fn global_flux_ledger_2d(states: &InterfaceStates2D, cfg: &ModelConfig) -> FluxLedger2D {
    FluxLedger2D {
        rows: states.rows.iter().map(|s| line::ledger(s, None, cfg.g)).collect(),
        cols: states.cols.iter().map(|s| line::ledger(s, None, cfg.g)).collect(),
    }
}

pub fn local_speeds_2d(states: &InterfaceStates2D, g: f64) -> Speeds2D {
    Speeds2D {
        rows: states.rows.iter().map(|s| line::speeds(s, g)).collect(),
        cols: states.cols.iter().map(|s| line::speeds(s, g)).collect(),
    }
}

pub fn cu_flux_2d(states: &InterfaceStates2D, ledger: &FluxLedger2D, speeds: &Speeds2D, g: f64) -> Fluxes2D {
    Fluxes2D {
        x: (0..states.rows.len()).map(|k| line::cu_fluxes(&states.rows[k], &ledger.rows[k], &speeds.rows[k], g)).collect(),
        y: (0..states.cols.len())
            .map(|j| {
                line::cu_fluxes(&states.cols[j], &ledger.cols[j], &speeds.cols[j], g).iter().map(y_to_global).collect()
            })
            .collect(),
    }
}

/// Result of both sweeps.
#[derive(Debug, Clone)]
pub struct Sweep2D {
    pub rows: Vec<LineSweep>,
    pub cols: Vec<LineSweep>,
}

impl Sweep2D {
    pub fn fluxes(&self) -> Fluxes2D {
        Fluxes2D {
            x: self.rows.iter().map(|s| s.fluxes.clone()).collect(),
            y: self.cols.iter().map(|s| s.fluxes.iter().map(y_to_global).collect()).collect(),
        }
    }

    pub fn wave_speeds(&self) -> WaveSpeeds {
        WaveSpeeds {
            x: self.rows.iter().fold(0.0, |m, s| m.max(s.max_speed())),
            y: self.cols.iter().fold(0.0, |m, s| m.max(s.max_speed())),
        }
    }
}

pub fn sweep_2d(
    w: &ConservedField2D,
    topo: &Topography2D,
    grid: &Grid2D,
    cfg: &ModelConfig,
    bc: &Boundary2D,
) -> Result<Sweep2D> {
    let prep = Prepared2D::new(w, topo, grid, cfg, bc)?;
    let params = line_params_2d(cfg);
    let rows = (0..grid.ny())
        .map(|k| line::sweep(&prep.row(k, topo).view(grid.x.delta), &params, None))
        .collect::<Result<_>>()?;
    let cols = (0..grid.nx())
        .map(|j| line::sweep(&prep.column(j, topo).view(grid.y.delta), &params, None))
        .collect::<Result<_>>()?;
    Ok(Sweep2D { rows, cols })
}

/// Flux differences for given interface fluxes.
pub fn flux_divergence(fl: &Fluxes2D, grid: &Grid2D) -> ConservedField2D {
    let (nx, ny) = (grid.nx(), grid.ny());
    let (dx, dy) = (grid.x.delta, grid.y.delta);
    let mut rate = ConservedField2D::zeros(nx, ny);
    for k in 0..ny {
        for j in 0..nx {
            let i = k * nx + j;
            let (xw, xe) = (&fl.x[k][j], &fl.x[k][j + 1]);
            let (ys, yn) = (&fl.y[j][k], &fl.y[j][k + 1]);
            for c in 0..NW {
                rate.comps[c][i] = -(xe[c] - xw[c]) / dx - (yn[c] - ys[c]) / dy;
            }
        }
    }
    rate
}

/// `dW/dt` and the largest local speeds per direction.
pub fn semidiscrete_rhs_2d(
    w: &ConservedField2D,
    topo: &Topography2D,
    grid: &Grid2D,
    cfg: &ModelConfig,
    bc: &Boundary2D,
) -> Result<(ConservedField2D, WaveSpeeds)> {
    let sw = sweep_2d(w, topo, grid, cfg, bc)?;
    Ok((flux_divergence(&sw.fluxes(), grid), sw.wave_speeds()))
}

/// Cell-wise `Ā + B̄` and its max norm.
pub fn discrete_divergence(w: &ConservedField2D) -> (Vec<f64>, f64) {
    let d: Vec<f64> = w.comps[A2].iter().zip(&w.comps[B2]).map(|(a, b)| a + b).collect();
    let m = d.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    (d, m)
}

/// Quasi-1-D steady-state families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quasi1DTarget {
    /// `v = b = 0`, constant `u` and `a`, `Eʸ ≡ e`; depth varies with `y`.
    YVarying { u: f64, a: f64, e: f64 },
    /// `u = a = 0`, constant `v` and `b`, `Eˣ ≡ e`; depth varies with `x`.
    XVarying { v: f64, b: f64, e: f64 },
}

impl Quasi1DTarget {
    pub fn boundary(&self, grid: &Grid2D) -> Boundary2D {
        match *self {
            Self::YVarying { u, .. } => Boundary2D { u_south: vec![u; grid.nx()], v_west: vec![0.0; grid.ny()] },
            Self::XVarying { v, .. } => Boundary2D { u_south: vec![0.0; grid.nx()], v_west: vec![v; grid.ny()] },
        }
    }
}

/// Discrete quasi-1-D steady state; depth from `g(h + Z) + P = e` with the
/// trapezoidal `P` of the scheme.
pub fn quasi1d_steady_state_2d(
    cfg: &ModelConfig,
    grid: &Grid2D,
    topo: &Topography2D,
    target: &Quasi1DTarget,
) -> Result<ConservedField2D> {
    let (nx, ny) = (grid.nx(), grid.ny());
    let (dx, dy) = (grid.x.delta, grid.y.delta);
    let g = cfg.g;
    let mut out = ConservedField2D::zeros(nx, ny);
    let depth = |z: f64, p: f64, e: f64| -> Result<f64> {
        let h = solve_energy_cubic(&EnergyCubic { c_kin: 0.0, z_eff: g * z + p, e_tgt: e, g, h_guess: 1.0 })?;
        if h <= 0.0 {
            return Err(Error::DegenerateEquilibrium);
        }
        Ok(h)
    };
    match *target {
        Quasi1DTarget::YVarying { u, a, e } => {
            let f = |k: isize| coriolis_at(cfg, grid.y.center(k));
            for j in 0..nx {
                let mut p = 0.25 * dy * (coriolis_at(cfg, grid.y.lo) * u + f(0) * u);
                for k in 0..ny {
                    if k > 0 {
                        p += 0.5 * dy * (f(k as isize - 1) * u + f(k as isize) * u);
                    }
                    let h = depth(topo.center(j, k), p, e)?;
                    let i = k * nx + j;
                    out.comps[H][i] = h;
                    out.comps[HU][i] = h * u;
                    out.comps[HA][i] = h * a;
                }
            }
        }
        Quasi1DTarget::XVarying { v, b, e } => {
            for k in 0..ny {
                let f = coriolis_at(cfg, grid.y.center(k as isize));
                let mut p = -0.25 * f * dx * (v + v);
                for j in 0..nx {
                    if j > 0 {
                        p -= 0.5 * f * dx * (v + v);
                    }
                    let h = depth(topo.center(j, k), p, e)?;
                    let i = k * nx + j;
                    out.comps[H][i] = h;
                    out.comps[HV][i] = h * v;
                    out.comps[HB][i] = h * b;
                }
            }
        }
    }
    Ok(out)
}
