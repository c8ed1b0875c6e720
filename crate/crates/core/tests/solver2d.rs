use mrsw_core::experiment::{build_setup, ExperimentConfig, Mesh, Setup, Setup2D};
use mrsw_core::field::{ConservedField2D, A2, B2, H, HA, HB, HU, HV};
use mrsw_core::grid::Grid2D;
use mrsw_core::line::flux_vector;
use mrsw_core::model::{ModelConfig, Variant};
use mrsw_core::solver2d::*;
use mrsw_core::timeint::{max_dt, ssp_rk3_step, SemiDiscrete};
use mrsw_core::topography::{Topography2D, TopographyDescriptor};
use mrsw_core::Result;

fn setup(example: u8, n: usize) -> Setup2D {
    match build_setup(&ExperimentConfig::example(example).with_mesh(Mesh::Two(n, n))).unwrap() {
        Setup::TwoD(s) => s,
        Setup::OneD(_) => unreachable!(),
    }
}

fn max_abs(w: &ConservedField2D) -> f64 {
    w.comps.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()))
}

fn constant_state(nx: usize, ny: usize, q: [f64; 5]) -> ConservedField2D {
    let mut w = ConservedField2D::zeros(nx, ny);
    for (c, &v) in q.iter().enumerate() {
        w.comps[c].iter_mut().for_each(|x| *x = v);
    }
    w
}

fn square(n: usize, half: f64) -> Grid2D {
    Grid2D::new(n, n, (-half, half), (-half, half)).unwrap()
}

/// Radially symmetric bump, invariant under transposition of a square grid.
fn bump(grid: &Grid2D) -> Topography2D {
    Topography2D::new(&TopographyDescriptor::parse("gaussian(0.2,0,0,1)").unwrap(), grid).unwrap()
}

fn smooth_state(grid: &Grid2D) -> ConservedField2D {
    let mut w = ConservedField2D::zeros(grid.nx(), grid.ny());
    for k in 0..grid.ny() {
        for j in 0..grid.nx() {
            let (x, y) = (grid.x.center(j as isize), grid.y.center(k as isize));
            let i = grid.idx(j, k);
            let h = 2.0 + 0.1 * (0.7 * x).sin() * (0.4 * y).cos();
            w.comps[H][i] = h;
            w.comps[HU][i] = h * (0.3 + 0.05 * (0.5 * y).sin());
            w.comps[HV][i] = h * (-0.2 + 0.04 * (0.3 * x).cos());
            w.comps[HA][i] = h * (1.0 + 0.1 * (0.2 * x * y).sin());
            w.comps[HB][i] = h * (0.5 - 0.05 * (0.6 * x).sin());
            w.comps[A2][i] = 0.01 * (0.9 * x).cos();
            w.comps[B2][i] = -w.comps[A2][i];
        }
    }
    w
}

#[test]
fn no_rotation_or_no_transverse_velocity_gives_zero_px() {
    let grid = square(7, 3.0);
    let topo = bump(&grid);
    let mut w = smooth_state(&grid);
    w.comps[HV].iter_mut().for_each(|x| *x = 0.0);
    let cfg = ModelConfig { f_c: 1.0, ..ModelConfig::default() };
    let eq = equilibrium_from_conserved_2d(&w, &topo, &grid, &cfg, &Boundary2D::zero(&grid)).unwrap();
    assert!(eq.px_center.iter().chain(&eq.px_face).all(|&p| p == 0.0));
    let w = smooth_state(&grid);
    let eq = equilibrium_from_conserved_2d(&w, &topo, &grid, &ModelConfig::default(), &Boundary2D::zero(&grid)).unwrap();
    assert!(eq.px_center.iter().chain(&eq.py_center).all(|&p| p == 0.0));
}

#[test]
fn prefix_sums_match_direct_summation() {
    let grid = Grid2D::new(5, 5, (0.0, 2.5), (-1.0, 1.5)).unwrap();
    let topo = Topography2D::new(&TopographyDescriptor::Flat, &grid).unwrap();
    let w = smooth_state(&grid);
    let cfg = ModelConfig { f_c: 0.7, beta: 0.3, ..ModelConfig::default() };
    let bc = Boundary2D { u_south: vec![0.1, 0.2, 0.3, 0.4, 0.5], v_west: vec![-0.1, 0.0, 0.1, 0.2, 0.3] };
    let eq = equilibrium_from_conserved_2d(&w, &topo, &grid, &cfg, &bc).unwrap();
    let (dx, dy) = (grid.x.delta, grid.y.delta);
    let f = |y: f64| 0.7 + 0.3 * y;
    let v = |j: usize, k: usize| w.comps[HV][grid.idx(j, k)] / w.comps[H][grid.idx(j, k)];
    let u = |j: usize, k: usize| w.comps[HU][grid.idx(j, k)] / w.comps[H][grid.idx(j, k)];
    for k in 0..5 {
        let fk = f(grid.y.center(k as isize));
        for j in 0..5 {
            // Half cell from the west edge, then full trapezoids between centres.
            let mut s = 0.5 * dx * 0.5 * (bc.v_west[k] + v(0, k));
            for m in 0..j {
                s += dx * 0.5 * (v(m, k) + v(m + 1, k));
            }
            let want = -fk * s;
            assert!((eq.px_center[grid.idx(j, k)] - want).abs() < 1e-14, "px({j},{k})");
            let face: f64 = (0..=j).map(|m| dx * v(m, k)).sum();
            assert!((eq.px_face[k * 6 + j + 1] + fk * face).abs() < 1e-14);
        }
    }
    for j in 0..5 {
        for k in 0..5 {
            let yk = |k: usize| grid.y.center(k as isize);
            let mut s = 0.5 * dy * 0.5 * (f(grid.y.lo) * bc.u_south[j] + f(yk(0)) * u(j, 0));
            for m in 0..k {
                s += dy * 0.5 * (f(yk(m)) * u(j, m) + f(yk(m + 1)) * u(j, m + 1));
            }
            assert!((eq.py_center[grid.idx(j, k)] - s).abs() < 1e-14, "py({j},{k})");
            let face: f64 = (0..=k).map(|m| dy * f(yk(m)) * u(j, m)).sum();
            assert!((eq.py_face[(k + 1) * 5 + j] - face).abs() < 1e-14);
        }
    }
}

#[test]
fn example_five_has_constant_ey() {
    let s = setup(5, 100);
    let eq = equilibrium_from_conserved_2d(&s.initial, &s.topo, &s.grid, &s.model, &s.bc).unwrap();
    assert!(eq.ey.iter().all(|&e| (e - 6.0).abs() < 1e-13));
    assert!(eq.u.iter().all(|&u| (u - 0.25).abs() < 1e-15));
    assert!(eq.a.iter().all(|&a| (a - 3.0).abs() < 1e-15));
}

#[test]
fn constant_state_faces_are_the_cell_values() {
    let grid = square(6, 3.0);
    let topo = Topography2D::new(&TopographyDescriptor::Flat, &grid).unwrap();
    let q = [1.5, 0.3, -0.6, 0.45, 0.9];
    let w = constant_state(6, 6, q);
    let cfg = ModelConfig::default();
    let prep = Prepared2D::new(&w, &topo, &grid, &cfg, &Boundary2D { u_south: vec![0.2; 6], v_west: vec![-0.4; 6] }).unwrap();
    let st = wb_interface_reconstruction_2d(&prep, &topo, &grid, &cfg).unwrap();
    for row in &st.rows {
        for f in row.minus.iter().chain(&row.plus) {
            assert!((f.h - 1.5).abs() < 1e-14);
            assert!((f.qn - 0.3).abs() < 1e-14 && (f.qt + 0.6).abs() < 1e-14);
            assert!((f.pn - 0.45).abs() < 1e-14 && (f.pt - 0.9).abs() < 1e-14);
        }
    }
    for col in &st.cols {
        for f in col.minus.iter().chain(&col.plus) {
            assert!((f.qn + 0.6).abs() < 1e-14 && (f.qt - 0.3).abs() < 1e-14);
            assert!((f.pn - 0.9).abs() < 1e-14 && (f.pt - 0.45).abs() < 1e-14);
        }
    }
}

#[test]
fn steady_faces_carry_the_targets_and_hats_agree() {
    let s = setup(5, 40);
    let prep = Prepared2D::new(&s.initial, &s.topo, &s.grid, &s.model, &s.bc).unwrap();
    let mut st = wb_interface_reconstruction_2d(&prep, &s.topo, &s.grid, &s.model).unwrap();
    hat_states_2d(&mut st, &prep.eq, &s.model).unwrap();
    for (j, col) in st.cols.iter().enumerate() {
        for (i, (m, p)) in col.minus.iter().zip(&col.plus).enumerate() {
            for f in [m, p] {
                assert!((f.e - 6.0).abs() < 1e-12);
                assert!((f.vt - 0.25).abs() < 1e-14 && (f.bt - 3.0).abs() < 1e-14);
                // Depth satisfies g(h + Z) + P = E at the face.
                let pf = prep.eq.py_face[i * 40 + j];
                assert!((f.h + f.z + pf - 6.0).abs() < 1e-12, "col {j} face {i}");
            }
            assert!((m.h_hat - p.h_hat).abs() < 1e-12);
            assert!((m.qt_hat - p.qt_hat).abs() < 1e-12 && (m.pt_hat - p.pt_hat).abs() < 1e-12);
        }
    }
}

#[test]
fn magnetic_faces_preserve_zero_divergence() {
    let s = setup(6, 40);
    let prep = Prepared2D::new(&s.initial, &s.topo, &s.grid, &s.model, &s.bc).unwrap();
    let st = wb_interface_reconstruction_2d(&prep, &s.topo, &s.grid, &s.model).unwrap();
    let (dx, dy) = (s.grid.x.delta, s.grid.y.delta);
    let mut worst = 0.0_f64;
    for k in 0..40 {
        for j in 0..40 {
            let ha = (st.rows[k].minus[j + 1].pn - st.rows[k].plus[j].pn) / dx;
            let hb = (st.cols[j].minus[k + 1].pn - st.cols[j].plus[k].pn) / dy;
            worst = worst.max((ha + hb).abs());
        }
    }
    assert!(worst < 1e-13, "{worst}");
    assert_eq!(discrete_divergence(&s.initial).1, 0.0);
}

#[test]
fn steady_ledger_is_constant_along_columns() {
    let s = setup(5, 30);
    let prep = Prepared2D::new(&s.initial, &s.topo, &s.grid, &s.model, &s.bc).unwrap();
    let mut st = wb_interface_reconstruction_2d(&prep, &s.topo, &s.grid, &s.model).unwrap();
    hat_states_2d(&mut st, &prep.eq, &s.model).unwrap();
    let led = global_flux_ledger_2d(&st, &s.model);
    for (col, l) in st.cols.iter().zip(&led.cols) {
        let k0 = flux_vector(&col.plus[0], &l.plus[0], 1.0);
        for i in 0..col.minus.len() {
            for kk in [flux_vector(&col.minus[i], &l.minus[i], 1.0), flux_vector(&col.plus[i], &l.plus[i], 1.0)] {
                for c in 0..5 {
                    assert!((kk[c] - k0[c]).abs() < 1e-12, "face {i} comp {c}");
                }
            }
        }
    }
}

#[test]
fn speed_examples() {
    let grid = square(5, 2.5);
    let topo = Topography2D::new(&TopographyDescriptor::Flat, &grid).unwrap();
    let cfg = ModelConfig::default();
    let w = constant_state(5, 5, [1.0, 0.0, 0.0, 0.0, 3.0]);
    let prep = Prepared2D::new(&w, &topo, &grid, &cfg, &Boundary2D::zero(&grid)).unwrap();
    let st = wb_interface_reconstruction_2d(&prep, &topo, &grid, &cfg).unwrap();
    let sp = local_speeds_2d(&st, 1.0);
    for s in sp.rows.iter().flatten() {
        assert!((s.plus - 1.0).abs() < 1e-14 && (s.minus + 1.0).abs() < 1e-14);
    }
    for s in sp.cols.iter().flatten() {
        assert!((s.plus - 10f64.sqrt()).abs() < 1e-14 && (s.minus + 10f64.sqrt()).abs() < 1e-14);
    }
}

#[test]
fn constant_state_fluxes_are_physical() {
    let grid = square(5, 2.5);
    let topo = Topography2D::new(&TopographyDescriptor::Flat, &grid).unwrap();
    let cfg = ModelConfig::default();
    let (h, u, v, a, b) = (2.0, 0.5, -0.25, 0.75, 0.4);
    let w = constant_state(5, 5, [h, h * u, h * v, h * a, h * b]);
    let fl = sweep_2d(&w, &topo, &grid, &cfg, &Boundary2D::zero(&grid)).unwrap().fluxes();
    let hx = [h * u, h * u * u + 0.5 * h * h - h * a * a, h * u * v - h * a * b, 0.0, h * (u * b - v * a)];
    let hy = [h * v, h * u * v - h * a * b, h * v * v + 0.5 * h * h - h * b * b, h * (v * a - u * b), 0.0];
    for f in fl.x.iter().flatten() {
        for c in 0..5 {
            assert!((f[c] - hx[c]).abs() < 1e-13, "x comp {c}: {} vs {}", f[c], hx[c]);
        }
    }
    for f in fl.y.iter().flatten() {
        for c in 0..5 {
            assert!((f[c] - hy[c]).abs() < 1e-13, "y comp {c}: {} vs {}", f[c], hy[c]);
        }
    }
    let (rate, _) = semidiscrete_rhs_2d(&w, &topo, &grid, &cfg, &Boundary2D::zero(&grid)).unwrap();
    assert!(max_abs(&rate) < 1e-13);
}

#[test]
fn example_five_rhs_vanishes() {
    let s = setup(5, 100);
    let (rate, speeds) = semidiscrete_rhs_2d(&s.initial, &s.topo, &s.grid, &s.model, &s.bc).unwrap();
    assert!(max_abs(&rate) < 1e-12, "{}", max_abs(&rate));
    assert!(speeds.x > 0.0 && speeds.y > 0.0);
}

#[test]
fn x_varying_family_is_steady() {
    let grid = square(60, 10.0);
    let topo = Topography2D::new(&TopographyDescriptor::Flat, &grid).unwrap();
    // Constant f only: a beta plane breaks this family.
    let cfg = ModelConfig { f_c: 0.2, ..ModelConfig::default() };
    let target = Quasi1DTarget::XVarying { v: 0.3, b: 2.0, e: 5.0 };
    let w = quasi1d_steady_state_2d(&cfg, &grid, &topo, &target).unwrap();
    let (rate, _) = semidiscrete_rhs_2d(&w, &topo, &grid, &cfg, &target.boundary(&grid)).unwrap();
    assert!(max_abs(&rate) < 1e-12, "{}", max_abs(&rate));
}

#[test]
fn families_map_into_each_other_under_transposition() {
    let grid = square(30, 5.0);
    let topo = bump(&grid);
    let cfg = ModelConfig { f_c: 0.4, ..ModelConfig::default() };
    let flipped = ModelConfig { f_c: -0.4, ..ModelConfig::default() };
    let y = quasi1d_steady_state_2d(&cfg, &grid, &topo, &Quasi1DTarget::YVarying { u: 0.2, a: 1.5, e: 4.0 }).unwrap();
    let x = quasi1d_steady_state_2d(&flipped, &grid, &topo, &Quasi1DTarget::XVarying { v: 0.2, b: 1.5, e: 4.0 }).unwrap();
    let t = y.transposed();
    for c in 0..7 {
        for i in 0..t.comps[c].len() {
            assert!((t.comps[c][i] - x.comps[c][i]).abs() < 1e-13);
        }
    }
}

#[test]
fn rhs_commutes_with_transposition() {
    let grid = square(24, 4.0);
    let topo = bump(&grid);
    let cfg = ModelConfig::default();
    let bc = Boundary2D::zero(&grid);
    let w = smooth_state(&grid);
    let (r, _) = semidiscrete_rhs_2d(&w, &topo, &grid, &cfg, &bc).unwrap();
    let (rt, _) = semidiscrete_rhs_2d(&w.transposed(), &topo, &grid, &cfg, &bc).unwrap();
    let back = rt.transposed();
    for c in 0..7 {
        for i in 0..back.comps[c].len() {
            assert!((back.comps[c][i] - r.comps[c][i]).abs() < 1e-12, "comp {c} cell {i}");
        }
    }
}

#[test]
fn mass_rate_telescopes_for_compact_perturbation() {
    let grid = square(30, 5.0);
    let topo = bump(&grid);
    let cfg = ModelConfig { f_c: 0.5, ..ModelConfig::default() };
    let mut w = constant_state(30, 30, [1.0, 0.0, 0.0, 0.5, 0.0]);
    for k in 0..30 {
        for j in 0..30 {
            let (x, y) = (grid.x.center(j as isize), grid.y.center(k as isize));
            let i = grid.idx(j, k);
            w.comps[H][i] = 1.0 - topo.center(j, k) + 0.1 * (-(x * x + y * y)).exp();
            w.comps[HA][i] = 0.5 * w.comps[H][i];
        }
    }
    let (rate, _) = semidiscrete_rhs_2d(&w, &topo, &grid, &cfg, &Boundary2D::zero(&grid)).unwrap();
    let total: f64 = rate.comps[H].iter().sum();
    assert!(total.abs() < 1e-12, "{total}");
}

struct Op<'a> {
    s: &'a Setup2D,
}

impl SemiDiscrete<ConservedField2D> for Op<'_> {
    fn rate(&self, w: &ConservedField2D) -> Result<(ConservedField2D, mrsw_core::timeint::WaveSpeeds)> {
        semidiscrete_rhs_2d(w, &self.s.topo, &self.s.grid, &self.s.model, &self.s.bc)
    }
}

#[test]
fn divergence_stays_at_roundoff_over_many_steps() {
    let s = setup(6, 40);
    let op = Op { s: &s };
    let mut w = s.initial.clone();
    for _ in 0..100 {
        let (_, speeds) = op.rate(&w).unwrap();
        let dt = max_dt(speeds, s.grid.x.delta, s.grid.y.delta, s.model.cfl);
        w = ssp_rk3_step(&w, &op, dt).unwrap();
    }
    assert!(discrete_divergence(&w).1 <= 1e-13, "{}", discrete_divergence(&w).1);
}

#[test]
fn vortex_ghosts_are_finite_and_positive() {
    let s = setup(8, 40);
    let prep = Prepared2D::new(&s.initial, &s.topo, &s.grid, &s.model, &s.bc).unwrap();
    assert!(prep.padded.h.iter().all(|&h| h.is_finite() && h > 0.0));
    assert!(prep.padded.hu.iter().chain(&prep.padded.hv).all(|x| x.is_finite()));
}

#[test]
fn non_well_balanced_scheme_drifts_from_example_five() {
    let s = setup(5, 40);
    let nwb = ModelConfig { variant: Variant::NonWellBalanced, ..s.model.clone() };
    let (rate, _) = semidiscrete_rhs_2d(&s.initial, &s.topo, &s.grid, &nwb, &s.bc).unwrap();
    assert!(max_abs(&rate) > 1e-6, "{}", max_abs(&rate));
}
