//! Initial data for the eight numbered experiments and a constant-state custom setup.

use crate::error::{Error, Result};
use crate::field::{ConservedField1D, ConservedField2D, A2, B2, H, HA, HB, HU, HV};
use crate::grid::{Grid1D, Grid2D};
use crate::model::ModelConfig;
use crate::solver1d::{steady_state_discrete, Boundary1D, SteadyTargets1D};
use crate::solver2d::{quasi1d_steady_state_2d, Boundary2D, Quasi1DTarget};
use crate::topography::{Topography1D, Topography2D, TopographyDescriptor};

use super::config::{ExampleId, ExperimentConfig, Mesh};

/// Fully initialized 1-D problem.
#[derive(Debug, Clone)]
pub struct Setup1D {
    pub model: ModelConfig,
    pub grid: Grid1D,
    pub topo: Topography1D,
    pub initial: ConservedField1D,
    pub bc: Boundary1D,
    /// Steady state the solution should stay at (or near), if any.
    pub reference: Option<ConservedField1D>,
}

#[derive(Debug, Clone)]
pub struct Setup2D {
    pub model: ModelConfig,
    pub grid: Grid2D,
    pub topo: Topography2D,
    pub initial: ConservedField2D,
    pub bc: Boundary2D,
    pub reference: Option<ConservedField2D>,
}

#[derive(Debug, Clone)]
pub enum Setup {
    OneD(Setup1D),
    TwoD(Setup2D),
}

/// Default mesh, final time, snapshot times and domain of each example.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetDefaults {
    pub mesh: Mesh,
    pub t_end: f64,
    pub snapshots: Vec<f64>,
    pub domain: (f64, f64),
}

pub fn defaults(id: ExampleId) -> PresetDefaults {
    let (mesh, t_end, snapshots, half) = match id {
        ExampleId::Numbered(1 | 2) => (Mesh::One(100), 5.0, vec![], 10.0),
        ExampleId::Numbered(3 | 4) => (Mesh::One(32000), 5.0, vec![], 200.0),
        ExampleId::Numbered(5) => (Mesh::Two(100, 100), 1.0, vec![], 10.0),
        ExampleId::Numbered(6 | 7) => (Mesh::Two(400, 400), 8.0, vec![2.0, 4.0, 6.0, 8.0], 10.0),
        ExampleId::Numbered(_) => (Mesh::Two(200, 200), 8.0, vec![2.0, 4.0, 6.0, 8.0], 10.0),
        ExampleId::Custom => (Mesh::One(100), 1.0, vec![], 10.0),
    };
    PresetDefaults { mesh, t_end, snapshots, domain: (-half, half) }
}

/// Root of `V²/r + f V = g φ'` that vanishes with `φ'`.
pub fn balanced_vortex_velocity(r: f64, f: f64, g: f64, dphi: f64) -> Result<f64> {
    if r <= 0.0 {
        return Err(Error::config("vortex radius must be positive"));
    }
    let disc = f * f + 4.0 * g * dphi / r;
    if disc < 0.0 {
        return Err(Error::ComplexRoot);
    }
    let s = disc.sqrt();
    // Both forms are the same root; pick the one without cancellation.
    Ok(if f >= 0.0 { 2.0 * g * dphi / (f + s) } else { 0.5 * r * (s - f) })
}

fn ex1_u(y: f64) -> f64 {
    -y / 35.0 + 0.3
}

fn ex2_u(y: f64) -> f64 {
    -y * y / 700.0 + 0.3
}

fn ex4_u(y: f64) -> f64 {
    let t2 = 2.0_f64.tanh();
    1.1 * (1.0 + (4.0 * y + 2.0).tanh()) * (1.0 - (4.0 * y - 2.0).tanh()) / ((1.0 + t2) * (1.0 + t2))
}

fn model_with(cfg: &ExperimentConfig, f_c: f64, beta: f64, topography: TopographyDescriptor) -> Result<ModelConfig> {
    let mut m = ModelConfig { f_c, beta, topography, variant: cfg.variant, ..ModelConfig::default() };
    if let Some(g) = cfg.g {
        m.g = g;
    }
    if let Some(f) = cfg.f_c {
        m.f_c = f;
    }
    if let Some(b) = cfg.beta {
        m.beta = b;
    }
    if let Some(t) = cfg.theta {
        m.theta = t;
    }
    if let Some(c) = cfg.cfl {
        m.cfl = c;
    }
    m.validate()?;
    Ok(m)
}

/// Builds the initial state of the configured experiment.
pub fn build_setup(cfg: &ExperimentConfig) -> Result<Setup> {
    let d = defaults(cfg.example);
    let mesh = cfg.mesh.unwrap_or(d.mesh);
    let domain = cfg.domain.unwrap_or(d.domain);
    match cfg.example {
        ExampleId::Numbered(n @ 1..=4) => {
            let Mesh::One(n_cells) = mesh else {
                return Err(Error::config(format!("example {n} is one-dimensional")));
            };
            let grid = Grid1D::new(n_cells, domain.0, domain.1)?;
            setup_1d(n, cfg, grid).map(Setup::OneD)
        }
        ExampleId::Numbered(n @ 5..=8) => {
            let Mesh::Two(nx, ny) = mesh else {
                return Err(Error::config(format!("example {n} is two-dimensional")));
            };
            let grid = Grid2D::new(nx, ny, domain, domain)?;
            setup_2d(n, cfg, grid).map(Setup::TwoD)
        }
        ExampleId::Numbered(n) => Err(Error::config(format!("unknown example {n}"))),
        ExampleId::Custom => custom(cfg, mesh, domain),
    }
}

fn gaussian_bump() -> TopographyDescriptor {
    TopographyDescriptor::Gaussian { amplitude: 0.5, center: (0.0, 0.0), width: 1.0 }
}

fn setup_1d(n: u8, cfg: &ExperimentConfig, grid: Grid1D) -> Result<Setup1D> {
    let ys = grid.y.centers();
    let (model, initial, bc, reference) = match n {
        1 | 2 => {
            let (f_c, beta, u_c) = if n == 1 { (1.0, 0.0, ex1_u as fn(f64) -> f64) } else { (0.0, 0.1, ex2_u as fn(f64) -> f64) };
            let model = model_with(cfg, f_c, beta, gaussian_bump())?;
            let topo = Topography1D::new(&model.topography, &grid)?;
            let targets = SteadyTargets1D { hv: 0.5, e: 1.0, hb: 3.0, u_c: 0.3, a_c: 2.0 };
            let eq = steady_state_discrete(&model, &grid, &topo, &targets)?;
            let mut init = eq.clone();
            if cfg.perturbed {
                for (k, &y) in ys.iter().enumerate() {
                    if (y + 2.0).abs() < 0.25 {
                        let h = init.comps[H][k] + 1e-3;
                        init.comps[H][k] = h;
                        init.comps[HU][k] = h * targets.u_at(&model, y);
                        init.comps[HA][k] = h * targets.a_at(&model, y);
                    }
                }
            }
            (model, init, Boundary1D { u_left: u_c(grid.y.lo) }, Some(eq))
        }
        _ => {
            let model = model_with(cfg, 1.0, 0.0, TopographyDescriptor::Flat)?;
            let (u, b): (fn(f64) -> f64, f64) = if n == 3 { (|y| 0.1 * (-y * y).exp(), 0.1) } else { (ex4_u, 1.1) };
            let mut w = ConservedField1D::zeros(grid.n());
            for (k, &y) in ys.iter().enumerate() {
                w.comps[H][k] = 1.0;
                w.comps[HU][k] = u(y);
                w.comps[HB][k] = b;
            }
            (model, w, Boundary1D { u_left: u(grid.y.lo) }, None)
        }
    };
    let topo = Topography1D::new(&model.topography, &grid)?;
    Ok(Setup1D { model, grid, topo, initial, bc, reference })
}

/// Fills a 2-D field from pointwise primitives `(h, u, v, a, b)` and the
/// magnetic derivative `A = (ha)_x`; `B` is set to `-A`.
fn fill_2d(grid: &Grid2D, prim: impl Fn(f64, f64) -> ([f64; 5], f64)) -> ConservedField2D {
    let mut w = ConservedField2D::zeros(grid.nx(), grid.ny());
    for k in 0..grid.ny() {
        for j in 0..grid.nx() {
            let (x, y) = (grid.x.center(j as isize), grid.y.center(k as isize));
            let ([h, u, v, a, b], a_der) = prim(x, y);
            let i = grid.idx(j, k);
            w.comps[H][i] = h;
            w.comps[HU][i] = h * u;
            w.comps[HV][i] = h * v;
            w.comps[HA][i] = h * a;
            w.comps[HB][i] = h * b;
            w.comps[A2][i] = a_der;
            w.comps[B2][i] = -a_der;
        }
    }
    w
}

fn ex7_velocity_over_r(x: f64, y: f64, g: f64, f: f64) -> f64 {
    let r2 = x * x + y * y;
    // φ'(r)/r for Z = e^{-r²}/20 and flat h.
    let dphi_over_r = -0.1 * (-r2).exp();
    2.0 * g * dphi_over_r / (f + (f * f + 4.0 * g * dphi_over_r).sqrt())
}

fn setup_2d(n: u8, cfg: &ExperimentConfig, grid: Grid2D) -> Result<Setup2D> {
    let (model, initial, reference) = match n {
        5 => {
            let model = model_with(cfg, 0.0, 0.1, TopographyDescriptor::GaussianY { amplitude: 0.5, center: 0.0, width: 1.0 })?;
            let topo = Topography2D::new(&model.topography, &grid)?;
            let target = Quasi1DTarget::YVarying { u: 0.25, a: 3.0, e: 6.0 };
            let eq = quasi1d_steady_state_2d(&model, &grid, &topo, &target)?;
            let mut init = eq.clone();
            if cfg.perturbed {
                for k in 0..grid.ny() {
                    for j in 0..grid.nx() {
                        let (x, y) = (grid.x.center(j as isize), grid.y.center(k as isize));
                        if ((x - 2.0).powi(2) + (y - 2.0).powi(2)).sqrt() < 0.25 {
                            let i = grid.idx(j, k);
                            let h = init.comps[H][i] + 0.05;
                            init.comps[H][i] = h;
                            init.comps[HU][i] = h * 0.25;
                            init.comps[HA][i] = h * 3.0;
                        }
                    }
                }
            }
            (model, init, Some(eq))
        }
        6 => {
            let model = model_with(cfg, 1.0, 0.0, TopographyDescriptor::Flat)?;
            let w = fill_2d(&grid, |x, y| {
                let e = (-(x * x + y * y)).exp();
                ([1.0, 0.0, 0.0, 2.0 * y * e, -2.0 * x * e], -4.0 * x * y * e)
            });
            (model, w, None)
        }
        7 => {
            let model = model_with(cfg, 2.0, 0.0, TopographyDescriptor::Gaussian { amplitude: 0.05, center: (0.0, 0.0), width: 1.0 })?;
            let (g, f) = (model.g, model.f_c);
            let w = fill_2d(&grid, |x, y| {
                let r = (x * x + y * y).sqrt();
                let vr = ex7_velocity_over_r(x, y, g, f);
                if r < 1e-14 {
                    return ([1.0, 0.0, 0.0, 0.0, 0.0], 0.0);
                }
                let e = (-r).exp();
                let (s, c) = (y / r, x / r);
                ([1.0, -vr * y, vr * x, -1.1 * e * s, 1.1 * e * c], 1.1 * x * y * e * (r + 1.0) / (r * r * r))
            });
            (model, w, None)
        }
        _ => {
            let model = model_with(cfg, 1.0, 0.0, TopographyDescriptor::Flat)?;
            let w = fill_2d(&grid, |x, y| {
                let h = 1.0 + (-(x * x + y * y)).exp();
                ([h, 0.0, 0.0, 1.0 / h, 0.0], 0.0)
            });
            (model, w, None)
        }
    };
    let topo = Topography2D::new(&model.topography, &grid)?;
    let bc = analytic_boundary(n, &grid, model.g);
    Ok(Setup2D { model, grid, topo, initial, bc, reference })
}

/// Boundary anchors from the analytic initial data at `y_{1/2}` and `x_{1/2}`.
fn analytic_boundary(n: u8, grid: &Grid2D, g: f64) -> Boundary2D {
    let prim = |x: f64, y: f64| analytic_initial(n, x, y, g).unwrap_or([1.0, 0.0, 0.0, 0.0, 0.0]);
    Boundary2D {
        u_south: (0..grid.nx()).map(|j| prim(grid.x.center(j as isize), grid.y.lo)[1]).collect(),
        v_west: (0..grid.ny()).map(|k| prim(grid.x.lo, grid.y.center(k as isize))[2]).collect(),
    }
}

fn custom(cfg: &ExperimentConfig, mesh: Mesh, domain: (f64, f64)) -> Result<Setup> {
    let [h, u, v, a, b] = cfg.custom_state;
    let topo_desc = cfg.topography.clone().unwrap_or_default();
    let model = model_with(cfg, 0.0, 0.0, topo_desc)?;
    match mesh {
        Mesh::One(n) => {
            let grid = Grid1D::new(n, domain.0, domain.1)?;
            let topo = Topography1D::new(&model.topography, &grid)?;
            let mut w = ConservedField1D::zeros(n);
            for k in 0..n {
                let hk = (h - topo.center(k)).max(0.0);
                w.comps[H][k] = hk;
                w.comps[HU][k] = hk * u;
                w.comps[HV][k] = hk * v;
                w.comps[HA][k] = hk * a;
                w.comps[HB][k] = hk * b;
            }
            w.validate()?;
            Ok(Setup::OneD(Setup1D { model, grid, topo, initial: w, bc: Boundary1D { u_left: u }, reference: None }))
        }
        Mesh::Two(nx, ny) => {
            let grid = Grid2D::new(nx, ny, domain, domain)?;
            let topo = Topography2D::new(&model.topography, &grid)?;
            let mut w = fill_2d(&grid, |_, _| ([1.0, u, v, a, b], 0.0));
            for k in 0..ny {
                for j in 0..nx {
                    let i = grid.idx(j, k);
                    let hk = (h - topo.center(j, k)).max(0.0);
                    for c in [H, HU, HV, HA, HB] {
                        w.comps[c][i] *= hk;
                    }
                }
            }
            w.validate()?;
            let bc = Boundary2D { u_south: vec![u; nx], v_west: vec![v; ny] };
            Ok(Setup::TwoD(Setup2D { model, grid, topo, initial: w, bc, reference: None }))
        }
    }
}

/// Pointwise initial primitives `(h, u, v, a, b)` of the analytic presets.
pub fn analytic_initial(n: u8, x: f64, y: f64, g: f64) -> Option<[f64; 5]> {
    match n {
        5 => Some([f64::NAN, 0.25, 0.0, 3.0, 0.0]),
        3 => Some([1.0, 0.1 * (-y * y).exp(), 0.0, 0.0, 0.1]),
        4 => Some([1.0, ex4_u(y), 0.0, 0.0, 1.1]),
        6 => {
            let e = (-(x * x + y * y)).exp();
            Some([1.0, 0.0, 0.0, 2.0 * y * e, -2.0 * x * e])
        }
        7 => {
            let r = (x * x + y * y).sqrt();
            let v = balanced_vortex_velocity(r, 2.0, g, -0.1 * r * (-r * r).exp()).ok()?;
            let e = (-r).exp();
            Some([1.0, -v * y / r, v * x / r, -1.1 * e * y / r, 1.1 * e * x / r])
        }
        8 => {
            let h = 1.0 + (-(x * x + y * y)).exp();
            Some([h, 0.0, 0.0, 1.0 / h, 0.0])
        }
        _ => None,
    }
}
