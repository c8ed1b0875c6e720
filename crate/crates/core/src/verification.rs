//! Acceptance checks shared by `mrsw verify` and the `acceptance` test target.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cubic::{solve_energy_cubic, EnergyCubic, H_MAX, TIE_ULPS};
use crate::error::Result;
use crate::experiment::{convergence_study, render_csv, run_experiment, ExperimentConfig, FinalState, Mesh, Setup, SnapshotRecord};
use crate::field::H;
use crate::model::{Variant, H_FLOOR};
use crate::reconstruct::{minmod, weno_z_value, WenoZConfig};
use crate::timeint::{ssp_rk3_step, WaveSpeeds};

/// Pinned tolerances.
pub const WB_TOL: f64 = 1e-12;
pub const NWB_RANGE: (f64, f64) = (1e-5, 1e-1);
pub const RATE_RANGE: (f64, f64) = (1.7, 2.7);
pub const DIV_TOL: f64 = 1e-13;
pub const ENERGY_GROWTH: f64 = 1e-10;
pub const ENERGY_DROP: f64 = 1e-4;
pub const PERTURBATION_TOL: f64 = 5e-3;
pub const CUBIC_DRAWS: usize = 10_000;
pub const CUBIC_REL_TOL: f64 = 1e-10;
pub const WENO_ULPS: f64 = 10.0;
pub const RK_TOL: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!("criterion {:>2} {} {}: {}", self.id, if self.passed { "PASS" } else { "FAIL" }, self.title, self.detail)
    }
}

pub const TITLES: [&str; 10] = [
    "1-D well-balanced, constant f",
    "1-D well-balanced, beta-plane",
    "non-well-balanced contrast",
    "convergence order",
    "2-D well-balanced",
    "2-D discrete divergence",
    "1-D divergence constraint",
    "energy behavior",
    "small-perturbation robustness",
    "property suites",
];

/// Runs criterion `id` (1..=10); solver errors count as failures.
pub fn check(id: u8) -> Outcome {
    let title = TITLES.get(id.wrapping_sub(1) as usize).copied().unwrap_or("unknown");
    let result = match id {
        1 => wb_1d(1),
        2 => wb_1d(2),
        3 => nwb_contrast(),
        4 => convergence(),
        5 => wb_2d(),
        6 => divergence_2d(),
        7 => divergence_1d(),
        8 => energy(),
        9 => perturbation(),
        10 => properties(),
        _ => Ok((false, "no such criterion".to_string())),
    };
    let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome { id, title, passed, detail }
}

fn wb_1d(example: u8) -> Result<(bool, String)> {
    let s = run_experiment(&ExperimentConfig::example(example).with_mesh(Mesh::One(100)).with_t_end(5.0))?;
    let worst = ["h", "u", "v", "a"].iter().map(|f| s.error(f).map_or(f64::INFINITY, |e| e.0)).fold(0.0, f64::max);
    Ok((worst < WB_TOL, format!("{} | max {worst:.3e} < {WB_TOL:e}", error_list(&s.errors))))
}

fn error_list(errors: &[(String, f64, f64)]) -> String {
    errors.iter().map(|e| format!("{}={:.3e}", e.0, e.1)).collect::<Vec<_>>().join(" ")
}

fn nwb_contrast() -> Result<(bool, String)> {
    let cfg = ExperimentConfig::example(1).with_mesh(Mesh::One(100)).with_t_end(5.0).with_variant(Variant::NonWellBalanced);
    let s = run_experiment(&cfg)?;
    let e = s.error("h").map_or(f64::NAN, |e| e.0);
    Ok((e >= NWB_RANGE.0 && e <= NWB_RANGE.1, format!("h={e:.3e} in [{:e}, {:e}]", NWB_RANGE.0, NWB_RANGE.1)))
}

fn convergence() -> Result<(bool, String)> {
    let t = convergence_study(&ExperimentConfig::example(3).with_t_end(5.0), &[1000, 2000, 4000, 8000])?;
    let mut ok = true;
    let mut parts = Vec::new();
    for (f, name) in t.fields.iter().enumerate() {
        let r = &t.rates[f];
        ok &= r.iter().all(|x| *x >= RATE_RANGE.0 && *x <= RATE_RANGE.1);
        parts.push(format!("{name}:{}", r.iter().map(|x| format!("{x:.2}")).collect::<Vec<_>>().join("/")));
    }
    Ok((ok, format!("{} in [{}, {}]", parts.join(" "), RATE_RANGE.0, RATE_RANGE.1)))
}

fn wb_2d() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for t in [1.0, 5.0] {
        let s = run_experiment(&ExperimentConfig::example(5).with_mesh(Mesh::Two(100, 100)).with_t_end(t))?;
        let worst = s.errors.iter().map(|e| e.1).fold(0.0, f64::max);
        ok &= worst < WB_TOL && !s.errors.is_empty();
        parts.push(format!("t={t}: {}", error_list(&s.errors)));
    }
    Ok((ok, format!("{} < {WB_TOL:e}", parts.join("; "))))
}

fn divergence_2d() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for ex in [6, 7, 8] {
        let s = run_experiment(&ExperimentConfig::example(ex).with_mesh(Mesh::Two(100, 100)).with_t_end(2.0))?;
        let m = s.max_divergence();
        ok &= m <= DIV_TOL;
        parts.push(format!("ex{ex}={m:.3e} ({} steps)", s.steps));
    }
    Ok((ok, format!("{} <= {DIV_TOL:e}", parts.join(" "))))
}

fn divergence_1d() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for ex in [3, 4] {
        let s = run_experiment(&ExperimentConfig::example(ex).with_mesh(Mesh::One(4000)).with_t_end(5.0))?;
        let m = s.max_divergence();
        ok &= m <= DIV_TOL;
        parts.push(format!("ex{ex}={m:.3e}"));
    }
    Ok((ok, format!("max |hb_k - hb_1|: {} <= {DIV_TOL:e}", parts.join(" "))))
}

fn energy() -> Result<(bool, String)> {
    let s = run_experiment(&ExperimentConfig::example(4).with_mesh(Mesh::One(4000)).with_t_end(5.0))?;
    let e0 = s.series[0].energy;
    let peak = s.series.iter().map(|r| r.energy / e0).fold(f64::MIN, f64::max);
    let last = s.series.last().map_or(f64::NAN, |r| r.energy / e0);
    let ok = peak <= 1.0 + ENERGY_GROWTH && last < 1.0 - ENERGY_DROP;
    Ok((ok, format!("max E/E0 - 1 = {:.3e}, E(5)/E0 - 1 = {:.3e}", peak - 1.0, last - 1.0)))
}

fn perturbation() -> Result<(bool, String)> {
    let mut cfg = ExperimentConfig::example(1).with_mesh(Mesh::One(100)).with_t_end(1.0);
    cfg.perturbed = true;
    let s = run_experiment(&cfg)?;
    let (FinalState::OneD(w), Setup::OneD(setup)) = (&s.final_state, &s.setup) else {
        return Ok((false, "unexpected dimension".into()));
    };
    let reference = setup.reference.as_ref().map(|r| r.comps[H].clone()).unwrap_or_default();
    let m = w.comps[H].iter().zip(&reference).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok((m <= PERTURBATION_TOL, format!("max |h - h_eq| = {m:.3e} <= {PERTURBATION_TOL:e}")))
}

fn properties() -> Result<(bool, String)> {
    let checks = [
        ("cubic", cubic_oracle(CUBIC_DRAWS, 7)),
        ("weno", weno_quadratic()),
        ("rk3", rk3_polynomial()),
        ("minmod", minmod_laws()),
        ("determinism", determinism()?),
    ];
    let ok = checks.iter().all(|c| c.1 .0);
    let detail = checks.iter().map(|(n, (p, d))| format!("{n}:{}({d})", if *p { "ok" } else { "FAIL" })).collect::<Vec<_>>().join(" ");
    Ok((ok, detail))
}

/// Admissible roots of `(g h + z - E) h² + c` by bisection on the monotone
/// pieces split at the nonzero critical point.
pub fn bisection_roots(c: &EnergyCubic) -> Vec<f64> {
    let p = |h: f64| c.poly(h);
    let crit = -2.0 * (c.z_eff - c.e_tgt) / (3.0 * c.g);
    let mut knots = vec![H_FLOOR];
    if crit > H_FLOOR && crit < H_MAX {
        knots.push(crit);
    }
    knots.push(H_MAX);
    let mut roots = Vec::new();
    for w in knots.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (plo, phi) = (p(lo), p(hi));
        if plo == 0.0 {
            roots.push(lo);
            continue;
        }
        if plo.signum() == phi.signum() {
            continue;
        }
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if p(mid).signum() == plo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots
}

/// Draws cubics with a planted root and compares the solver with the
/// bisection oracle (root closest to the guess, ties to the larger).
pub fn cubic_oracle(draws: usize, seed: u64) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    let mut failures = 0;
    for _ in 0..draws {
        let g = 10f64.powf(rng.gen_range(-1.0..1.0));
        let h0 = 10f64.powf(rng.gen_range(-1.0..1.0));
        let c_kin = rng.gen_range(-5.0..5.0);
        let z_eff = rng.gen_range(-2.0..2.0);
        let e_tgt = c_kin / (h0 * h0) + g * h0 + z_eff;
        let h_guess = h0 * (1.0 + rng.gen_range(-0.05..0.05));
        let cubic = EnergyCubic { c_kin, z_eff, e_tgt, g, h_guess };
        let oracle = bisection_roots(&cubic).into_iter().fold(None::<f64>, |best, r| match best {
            None => Some(r),
            Some(b) => {
                let (db, dr) = ((b - h_guess).abs(), (r - h_guess).abs());
                if (dr - db).abs() <= TIE_ULPS * f64::EPSILON * r.max(b) {
                    Some(r.max(b))
                } else {
                    Some(if dr < db { r } else { b })
                }
            }
        });
        match (solve_energy_cubic(&cubic), oracle) {
            (Ok(h), Some(o)) => {
                let rel = (h - o).abs() / o;
                worst = worst.max(rel);
                if rel > CUBIC_REL_TOL {
                    failures += 1;
                }
            }
            _ => failures += 1,
        }
    }
    (failures == 0, format!("{draws} draws, worst rel {worst:.1e}, {failures} failures"))
}

/// WENO-Z face values interpolated from point samples of a quadratic.
pub fn weno_quadratic() -> (bool, String) {
    let cfg = WenoZConfig::default();
    let mut worst = 0.0_f64;
    for &(a, b, c, dx) in &[(1.0, -2.0, 0.5, 0.1), (-3.0, 0.25, 2.0, 0.37), (0.5, 1.0, -1.0, 1.0), (2.0, 0.0, 0.0, 0.05)] {
        let q = |y: f64| a * y * y + b * y + c;
        let s: [f64; 5] = std::array::from_fn(|i| q((i as f64 - 2.0) * dx));
        let exact = q(0.5 * dx);
        let got = weno_z_value(&s, &cfg);
        worst = worst.max((got - exact).abs() / (exact.abs().max(1.0) * f64::EPSILON));
    }
    (worst <= WENO_ULPS, format!("worst {worst:.1} ulp"))
}

/// One SSP-RK3 step of `w' = λ w` against the stability polynomial.
pub fn rk3_polynomial() -> (bool, String) {
    let mut worst = 0.0_f64;
    for &(lambda, dt) in &[(-1.0, 0.1), (-2.5, 0.04), (0.3, 0.2), (-10.0, 0.01)] {
        let op = |w: &Vec<f64>| -> Result<(Vec<f64>, WaveSpeeds)> { Ok((w.iter().map(|x| lambda * x).collect(), WaveSpeeds::default())) };
        let out = ssp_rk3_step(&vec![1.0], &op, dt).map(|v| v[0]).unwrap_or(f64::NAN);
        let z: f64 = lambda * dt;
        let poly = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
        worst = worst.max((out - poly).abs());
    }
    (worst <= RK_TOL, format!("worst {worst:.1e}"))
}

pub fn minmod_laws() -> (bool, String) {
    let cases: [&[f64]; 5] = [&[1.0, 2.0, 3.0], &[-1.0, -0.5, -4.0], &[1.0, -1.0, 2.0], &[0.0, 1.0, 1.0], &[2.5]];
    let expected = [1.0, -0.5, 0.0, 0.0, 2.5];
    let mut ok = true;
    for (c, e) in cases.iter().zip(expected) {
        let m = minmod(c).unwrap_or(f64::NAN);
        let neg: Vec<f64> = c.iter().map(|x| -x).collect();
        ok &= m == e && minmod(&neg).unwrap_or(f64::NAN) == -m;
    }
    ok &= minmod(&[]).is_err();
    (ok, format!("{} cases", cases.len()))
}

/// Two identical short runs must render identical snapshot bytes.
pub fn determinism() -> Result<(bool, String)> {
    let render = || -> Result<String> {
        let s = run_experiment(&ExperimentConfig::example(2).with_mesh(Mesh::One(100)).with_t_end(0.5))?;
        let (FinalState::OneD(w), Setup::OneD(setup)) = (&s.final_state, &s.setup) else { unreachable!() };
        Ok(render_csv(&SnapshotRecord::from_1d(s.t_final, w, &setup.grid, &setup.topo)))
    };
    let (a, b) = (render()?, render()?);
    Ok((a == b, format!("{} bytes", a.len())))
}
