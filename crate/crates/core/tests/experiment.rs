use std::process::Command;

use mrsw_core::experiment::converge::{rates_from_diffs, successive_difference};
use mrsw_core::experiment::*;
use mrsw_core::field::{A2, B2, H, HA, HB, HU, HV};
use mrsw_core::model::Variant;
use mrsw_core::Error;

fn setup(cfg: &ExperimentConfig) -> Setup {
    build_setup(cfg).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn config_parsing_and_validation() {
    let cfg = ExperimentConfig::parse("# comment\nexample = 5\nmesh = 20x30\ntfinal = 0.5\nscheme = nwb\nsnapshots = 0.1, 0.2\ncfl=0.2\n").unwrap();
    assert_eq!(cfg.example, ExampleId::Numbered(5));
    assert_eq!(cfg.mesh, Some(Mesh::Two(20, 30)));
    assert_eq!(cfg.variant, Variant::NonWellBalanced);
    assert_eq!(cfg.snapshots, Some(vec![0.1, 0.2]));
    assert!(cfg.validate().is_ok());
    assert!(ExperimentConfig::parse("example = 9").is_err());
    assert!(ExperimentConfig::parse("colour = red").is_err());
    assert!(ExperimentConfig::parse("just text").is_err());
    assert!(ExperimentConfig::example(1).with_mesh(Mesh::One(4)).validate().is_err());
    assert!(ExperimentConfig::example(1).with_t_end(-1.0).validate().is_err());
    let mut c = ExperimentConfig::example(1).with_t_end(1.0);
    c.snapshots = Some(vec![2.0]);
    assert!(c.validate().is_err());
    assert_eq!("64".parse::<Mesh>().unwrap(), Mesh::One(64));
    assert!("4x".parse::<Mesh>().is_err());
}

#[test]
fn dimension_mismatch_is_rejected() {
    assert!(build_setup(&ExperimentConfig::example(1).with_mesh(Mesh::Two(10, 10))).is_err());
    assert!(build_setup(&ExperimentConfig::example(6).with_mesh(Mesh::One(10))).is_err());
}

#[test]
fn zero_final_time_returns_the_initial_state() {
    let s = run_experiment(&ExperimentConfig::example(1).with_mesh(Mesh::One(100)).with_t_end(0.0)).unwrap();
    let (FinalState::OneD(w), Setup::OneD(init)) = (&s.final_state, &s.setup) else { panic!() };
    assert_eq!(w, &init.initial);
    assert_eq!(s.steps, 0);
    assert!(s.errors.iter().all(|e| e.1 == 0.0));
}

#[test]
fn snapshots_round_trip_and_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ExperimentConfig::example(2).with_mesh(Mesh::One(5)).with_t_end(0.2);
    cfg.domain = Some((-1.0, 1.0));
    cfg.out_dir = Some(dir.path().to_path_buf());
    let s = run_experiment(&cfg).unwrap();
    let csv = s.files.iter().find(|p| p.extension().is_some_and(|e| e == "csv") && !p.to_string_lossy().contains("series") && p.to_string_lossy().contains("t000.2")).unwrap();
    let text = std::fs::read_to_string(csv).unwrap();
    let rec = read_snapshot(&text, 0.2).unwrap();
    assert_eq!(rec.rows(), 5);
    assert!(csv.with_extension("gp").exists());
    let (FinalState::OneD(w), Setup::OneD(st)) = (&s.final_state, &s.setup) else { panic!() };
    let expected = SnapshotRecord::from_1d(s.t_final, w, &st.grid, &st.topo);
    for (name, col) in &expected.columns {
        let got = rec.column(name).unwrap();
        assert!(got.iter().zip(col).all(|(a, b)| a.to_bits() == b.to_bits()), "column {name}");
    }
    assert_eq!(render_csv(&rec), text);
    let again = run_experiment(&cfg).unwrap();
    for (a, b) in s.files.iter().zip(&again.files) {
        assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    }
}

#[test]
fn two_d_snapshot_has_derived_columns() {
    let Setup::TwoD(s) = setup(&ExperimentConfig::example(6).with_mesh(Mesh::Two(8, 6))) else { panic!() };
    let rec = SnapshotRecord::from_2d(0.0, &s.initial, &s.grid, &s.topo);
    assert_eq!(rec.rows(), 48);
    let header = render_csv(&rec).lines().next().unwrap().to_string();
    assert_eq!(header, "x,y,h,u,v,a,b,A,B,Z,zeta,divv");
}

#[test]
fn one_d_presets_match_closed_forms() {
    let tol = 1e-14;
    for (n, u, a) in [
        (1, (|y: f64| -y / 35.0 + 0.3) as fn(f64) -> f64, (|y: f64| -6.0 * y / 35.0 + 2.0) as fn(f64) -> f64),
        (2, |y: f64| -y * y / 700.0 + 0.3, |y: f64| -3.0 * y * y / 350.0 + 2.0),
    ] {
        let Setup::OneD(s) = setup(&ExperimentConfig::example(n)) else { panic!() };
        for (k, y) in s.grid.y.centers().into_iter().enumerate() {
            let h = s.initial.comps[H][k];
            assert!(close(s.initial.comps[HU][k] / h, u(y), tol), "example {n} u at {y}");
            assert!(close(s.initial.comps[HA][k] / h, a(y), tol), "example {n} a at {y}");
            assert!(close(s.initial.comps[HV][k], 0.5, tol) && close(s.initial.comps[HB][k], 3.0, tol));
        }
    }
    let t2 = 2.0_f64.tanh();
    let jet: Box<dyn Fn(f64) -> f64> = Box::new(|y: f64| 0.1 * (-y * y).exp());
    let shear: Box<dyn Fn(f64) -> f64> = Box::new(move |y: f64| 1.1 * (1.0 + (4.0 * y + 2.0).tanh()) * (1.0 - (4.0 * y - 2.0).tanh()) / (1.0 + t2).powi(2));
    for (n, u, b) in [(3, jet, 0.1), (4, shear, 1.1)] {
        let Setup::OneD(s) = setup(&ExperimentConfig::example(n).with_mesh(Mesh::One(400))) else { panic!() };
        for (k, y) in s.grid.y.centers().into_iter().enumerate() {
            assert_eq!(s.initial.comps[H][k], 1.0);
            assert!(close(s.initial.comps[HU][k], u(y), tol));
            assert!(s.initial.comps[HV][k] == 0.0 && s.initial.comps[HA][k] == 0.0);
            assert_eq!(s.initial.comps[HB][k], b);
        }
    }
}

#[test]
fn two_d_presets_match_closed_forms() {
    let tol = 1e-14;
    let cells = |s: &Setup2D| {
        (0..s.grid.ny()).flat_map(move |k| (0..s.grid.nx()).map(move |j| (j, k))).collect::<Vec<_>>()
    };
    let Setup::TwoD(s6) = setup(&ExperimentConfig::example(6).with_mesh(Mesh::Two(30, 30))) else { panic!() };
    for (j, k) in cells(&s6) {
        let (x, y) = (s6.grid.x.center(j as isize), s6.grid.y.center(k as isize));
        let i = s6.grid.idx(j, k);
        let e = (-(x * x + y * y)).exp();
        assert_eq!(s6.initial.comps[H][i], 1.0);
        assert!(close(s6.initial.comps[HA][i], 2.0 * y * e, tol) && close(s6.initial.comps[HB][i], -2.0 * x * e, tol));
        assert_eq!(s6.initial.comps[A2][i], -s6.initial.comps[B2][i]);
    }
    let Setup::TwoD(s8) = setup(&ExperimentConfig::example(8).with_mesh(Mesh::Two(30, 30))) else { panic!() };
    for (j, k) in cells(&s8) {
        let (x, y) = (s8.grid.x.center(j as isize), s8.grid.y.center(k as isize));
        let i = s8.grid.idx(j, k);
        assert!(close(s8.initial.comps[H][i], 1.0 + (-(x * x + y * y)).exp(), tol));
        assert!(close(s8.initial.comps[HA][i], 1.0, tol) && s8.initial.comps[HB][i] == 0.0);
    }
    let Setup::TwoD(s7) = setup(&ExperimentConfig::example(7).with_mesh(Mesh::Two(30, 30))) else { panic!() };
    for (j, k) in cells(&s7) {
        let (x, y) = (s7.grid.x.center(j as isize), s7.grid.y.center(k as isize));
        let r = (x * x + y * y).sqrt();
        let i = s7.grid.idx(j, k);
        let (u, v) = (s7.initial.comps[HU][i], s7.initial.comps[HV][i]);
        // Tangential speed solves the cyclo-geostrophic balance with φ' = Z'(r).
        let vt = (x * v - y * u) / r;
        let dphi = -0.1 * r * (-r * r).exp();
        assert!(close(vt * vt / r + 2.0 * vt, dphi, 1e-14), "balance at r = {r}");
        assert!(close(x * u + y * v, 0.0, 1e-14));
        let e = (-r).exp();
        assert!(close(s7.initial.comps[HA][i], -1.1 * e * y / r, tol) && close(s7.initial.comps[HB][i], 1.1 * e * x / r, tol));
    }
    let Setup::TwoD(s5) = setup(&ExperimentConfig::example(5).with_mesh(Mesh::Two(20, 20))) else { panic!() };
    for i in 0..400 {
        let h = s5.initial.comps[H][i];
        assert!(close(s5.initial.comps[HU][i] / h, 0.25, tol) && close(s5.initial.comps[HA][i] / h, 3.0, tol));
        assert!(s5.initial.comps[HV][i] == 0.0 && s5.initial.comps[HB][i] == 0.0);
    }
}

#[test]
fn vortex_velocity_examples() {
    assert_eq!(balanced_vortex_velocity(1.0, 2.0, 1.0, 0.0).unwrap(), 0.0);
    let dphi = -0.1 * (-1.0f64).exp();
    let v = balanced_vortex_velocity(1.0, 2.0, 1.0, dphi).unwrap();
    let closed = 1.0 * (-2.0 + (4.0 + 4.0 * dphi).sqrt()) / 2.0;
    assert!(close(v, closed, 1e-15));
    assert!((v * v + 2.0 * v - dphi).abs() < 1e-14);
    let f = 1e3;
    let v = balanced_vortex_velocity(1.0, f, 1.0, dphi).unwrap();
    let geo = dphi / f;
    // Next term of the series is -g²φ'²/(r f³).
    assert!(close(v, geo - dphi * dphi / (f * f * f), 1e-12));
    assert!(matches!(balanced_vortex_velocity(1.0, 0.1, 1.0, -1.0), Err(Error::ComplexRoot)));
    assert!(balanced_vortex_velocity(0.0, 1.0, 1.0, 0.1).is_err());
}

#[test]
fn convergence_of_identical_solutions_reports_nan() {
    let mut cfg = ExperimentConfig::example(1);
    cfg.example = ExampleId::Custom;
    cfg.custom_state = [1.5, 0.2, 0.0, 0.3, 0.1];
    cfg.t_end = Some(0.1);
    let table = convergence_study(&cfg, &[10, 20, 40]).unwrap();
    assert!(table.diffs.iter().flatten().all(|&d| d < 1e-14));
    assert!(table.rates.iter().flatten().all(|r| r.is_nan()));
    assert!(table.render().contains("NaN"));
    assert!(convergence_study(&cfg, &[10, 30]).is_err());
}

#[test]
fn manufactured_second_order_field_converges() {
    // Point samples of a smooth profile differ from its cell averages by O(Δ²).
    let q = |y: f64| (0.7 * y).sin() + 0.3 * (1.3 * y).cos();
    let samples = |n: usize| -> (f64, Vec<f64>) {
        let d = 10.0 / n as f64;
        (d, (0..n).map(|k| q(-5.0 + (k as f64 + 0.5) * d)).collect())
    };
    let meshes = [50, 100, 200, 400];
    let sols: Vec<_> = meshes.iter().map(|&n| samples(n)).collect();
    let diffs: Vec<f64> = sols.windows(2).map(|p| successive_difference(&p[0].1, &p[1].1, p[0].0).unwrap()).collect();
    for r in &rates_from_diffs(&[diffs])[0] {
        assert!(*r >= 1.9, "rate {r}");
    }
    assert_eq!(block_mean(&[1.0, 3.0, -2.0, 2.0]), vec![2.0, 0.0]);
}

#[test]
fn variant_toggle_only_changes_the_scheme() {
    let base = ExperimentConfig::example(1).with_mesh(Mesh::One(100)).with_t_end(1.0);
    let (Setup::OneD(a), Setup::OneD(b)) = (setup(&base), setup(&base.clone().with_variant(Variant::NonWellBalanced))) else { panic!() };
    assert_eq!(a.initial, b.initial);
    assert_eq!(a.reference, b.reference);
    let wb = run_experiment(&base).unwrap();
    let nwb = run_experiment(&base.with_variant(Variant::NonWellBalanced)).unwrap();
    assert!(wb.error("h").unwrap().0 < 1e-12);
    assert!(nwb.error("h").unwrap().0 > 1e-8);
}

#[test]
fn simulation_advances_incrementally() {
    let cfg = ExperimentConfig::example(3).with_mesh(Mesh::One(200));
    let mut sim = Simulation::new(&cfg).unwrap();
    assert_eq!(sim.dims(), (1, 200));
    let e0 = sim.energy();
    sim.advance(0.5).unwrap();
    sim.advance(0.2).unwrap();
    assert_eq!(sim.clock.t, 0.5);
    sim.advance(1.0).unwrap();
    let direct = run_experiment(&cfg.clone().with_t_end(1.0)).unwrap();
    let FinalState::OneD(w) = &direct.final_state else { panic!() };
    assert_eq!(sim.component(H).unwrap().len(), 200);
    // Stopping at 0.5 clamps one step, so agreement is to discretization level only.
    let diff = sim.component(H).unwrap().iter().zip(&w.comps[H]).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    assert!(diff < 1e-4, "{diff}");
    assert!(sim.energy() <= e0 * (1.0 + 1e-10));
    assert!(sim.max_divergence() <= 1e-13);
    assert!(sim.advance(f64::NAN).is_err());
}

fn mrsw(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_mrsw")).args(args).output().unwrap()
}

#[test]
fn cli_run_writes_files_and_reports_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = mrsw(&["run", "--example", "1", "--mesh", "20", "--tfinal", "0.1", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("error h:") && stdout.contains("wrote"));
    assert!(dir.path().join("example1_series.csv").exists());
    let o = mrsw(&["run", "--example", "12"]);
    assert_eq!(o.status.code(), Some(1));
    let o = mrsw(&["run", "--example", "6", "--mesh", "40"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn cli_config_file_and_converge() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "example = 5\nmesh = 10x10\ntfinal = 0.05\n").unwrap();
    let o = mrsw(&["run", "--config", cfg.to_str().unwrap(), "--scheme", "wb", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = dir.path().join("conv.csv");
    let o = mrsw(&["converge", "--example", "3", "--meshes", "50,100", "--tfinal", "0.1", "--out", table.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(std::fs::read_to_string(&table).unwrap().starts_with("N,L1(h)"));
    assert_eq!(mrsw(&["converge", "--meshes", "50,70"]).status.code(), Some(1));
}

#[test]
fn cli_verify_exit_code() {
    let o = mrsw(&["verify", "--only", "10"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("criterion 10 PASS"));
}
