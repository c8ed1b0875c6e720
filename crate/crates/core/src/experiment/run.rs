//! Time integration of a configured experiment.

use std::path::PathBuf;

use crate::diagnostics::{balance_residual_instant, balance_residual_timeavg, error_norms, hb_spread, primitive, primitive_2d, total_energy_1d, total_energy_2d, total_mass};
use crate::diagnostics::BalanceAccumulator;
use crate::error::Result;
use crate::field::{ConservedField1D, ConservedField2D, H, HA, HB, HU, HV};
use crate::solver1d::semidiscrete_rhs_1d;
use crate::solver2d::{discrete_divergence, semidiscrete_rhs_2d};
use crate::timeint::{integrate, TimeState, WaveSpeeds};

use super::config::{ExampleId, ExperimentConfig};
use super::output::{snapshot_name, write_balance, write_series, write_snapshot, SeriesRow, SnapshotRecord};
use super::presets::{build_setup, defaults, Setup, Setup1D, Setup2D};

/// `(name, L∞, L1)` errors against the preset reference state.
pub type ErrorRow = (String, f64, f64);

#[derive(Debug, Clone)]
pub enum FinalState {
    OneD(ConservedField1D),
    TwoD(ConservedField2D),
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub t_final: f64,
    pub steps: usize,
    pub errors: Vec<ErrorRow>,
    pub series: Vec<SeriesRow>,
    pub files: Vec<PathBuf>,
    pub setup: Setup,
    pub final_state: FinalState,
    pub balance: Option<BalanceSummary>,
}

/// Instantaneous and time-averaged sides of the 1-D balance at the final time.
#[derive(Debug, Clone, PartialEq)]
pub struct BalanceSummary {
    pub y: Vec<f64>,
    pub pressure: Vec<f64>,
    pub coriolis: Vec<f64>,
    /// `None` when the run ended before the averaging window opened.
    pub averaged: Option<(Vec<f64>, Vec<f64>)>,
}

impl RunSummary {
    pub fn max_divergence(&self) -> f64 {
        self.series.iter().fold(0.0, |m, r| m.max(r.max_divergence))
    }

    pub fn error(&self, name: &str) -> Option<(f64, f64)> {
        self.errors.iter().find(|e| e.0 == name).map(|e| (e.1, e.2))
    }
}

fn label(cfg: &ExperimentConfig) -> String {
    match cfg.example {
        ExampleId::Numbered(n) => format!("example{n}"),
        ExampleId::Custom => "custom".to_string(),
    }
}

/// Error rows for `h, u, v, a` against the reference state.
fn errors_1d(w: &ConservedField1D, reference: &ConservedField1D, dy: f64) -> Result<Vec<ErrorRow>> {
    [("h", H), ("u", HU), ("v", HV), ("a", HA)]
        .into_iter()
        .map(|(name, c)| {
            let (linf, l1) = error_norms(&primitive(w, c), &primitive(reference, c), dy)?;
            Ok((name.to_string(), linf, l1))
        })
        .collect()
}

fn errors_2d(w: &ConservedField2D, reference: &ConservedField2D, area: f64) -> Result<Vec<ErrorRow>> {
    [("h", H), ("u", HU), ("v", HV), ("a", HA), ("b", HB)]
        .into_iter()
        .map(|(name, c)| {
            let (linf, l1) = error_norms(&primitive_2d(w, c), &primitive_2d(reference, c), area)?;
            Ok((name.to_string(), linf, l1))
        })
        .collect()
}

/// Snapshot bookkeeping shared by both dimensions.
struct Snapshots {
    times: Vec<f64>,
    next: usize,
}

impl Snapshots {
    /// Target of the next integration leg.
    fn next_stop(&self, t_end: f64) -> f64 {
        self.times.get(self.next).copied().unwrap_or(t_end).min(t_end)
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunSummary> {
    cfg.validate()?;
    let setup = build_setup(cfg)?;
    let d = defaults(cfg.example);
    let t_end = cfg.t_end.unwrap_or(d.t_end);
    let mut times: Vec<f64> = cfg.snapshots.clone().unwrap_or(d.snapshots).into_iter().filter(|&s| s > 0.0 && s <= t_end).collect();
    times.sort_by(f64::total_cmp);
    times.dedup();
    let mut snaps = Snapshots { times, next: 0 };
    let name = label(cfg);
    match &setup {
        Setup::OneD(s) => run_1d(cfg, s, t_end, &mut snaps, &name, setup.clone()),
        Setup::TwoD(s) => run_2d(cfg, s, t_end, &mut snaps, &name, setup.clone()),
    }
}

fn run_1d(cfg: &ExperimentConfig, s: &Setup1D, t_end: f64, snaps: &mut Snapshots, name: &str, setup: Setup) -> Result<RunSummary> {
    let (grid, topo, model) = (&s.grid, &s.topo, &s.model);
    let dy = grid.dy();
    let row = |t: f64, w: &ConservedField1D| SeriesRow {
        t,
        energy: total_energy_1d(w, topo.centers(), model.g, dy),
        max_divergence: hb_spread(w),
        mass: total_mass(&w.comps[H], dy),
    };
    let mut w = s.initial.clone();
    let mut series = vec![row(0.0, &w)];
    let mut files = Vec::new();
    let write = |t: f64, w: &ConservedField1D, files: &mut Vec<PathBuf>| -> Result<()> {
        if let Some(dir) = &cfg.out_dir {
            let rec = SnapshotRecord::from_1d(t, w, grid, topo);
            files.extend(write_snapshot(&rec, &dir.join(snapshot_name(name, t)))?);
        }
        Ok(())
    };
    write(0.0, &w, &mut files)?;
    let op = |w: &ConservedField1D| -> Result<(ConservedField1D, WaveSpeeds)> {
        let (r, s) = semidiscrete_rhs_1d(w, topo, grid, model, &s.bc)?;
        Ok((r, WaveSpeeds { x: 0.0, y: s }))
    };
    let mut acc = cfg.balance.then(|| {
        let mut acc = BalanceAccumulator::new(model.coriolis(0.0), grid.n());
        let (l, r) = balance_residual_instant(&w, grid, model);
        acc.sample(0.0, l, r);
        acc
    });
    let mut clock = TimeState::default();
    loop {
        let stop = snaps.next_stop(t_end);
        integrate(&mut w, &mut clock, stop, &op, dy, dy, model.cfl, |w, c| {
            series.push(row(c.t, w));
            if let Some(acc) = acc.as_mut() {
                let (l, r) = balance_residual_instant(w, grid, model);
                acc.sample(c.t, l, r);
            }
            Ok(())
        })?;
        if snaps.next < snaps.times.len() && clock.t >= snaps.times[snaps.next] {
            write(clock.t, &w, &mut files)?;
            snaps.next += 1;
        }
        if clock.t >= t_end {
            break;
        }
    }
    if t_end > 0.0 && snaps.times.last() != Some(&t_end) {
        write(clock.t, &w, &mut files)?;
    }
    if let Some(dir) = &cfg.out_dir {
        files.push(write_series(&series, &dir.join(format!("{name}_series.csv")))?);
    }
    let balance = acc.map(|acc| {
        let (pressure, coriolis) = balance_residual_instant(&w, grid, model);
        BalanceSummary { y: grid.y.centers(), pressure, coriolis, averaged: balance_residual_timeavg(&acc, clock.t).ok() }
    });
    if let (Some(b), Some(dir)) = (&balance, &cfg.out_dir) {
        files.push(write_balance(b, &dir.join(format!("{name}_balance.csv")))?);
    }
    let errors = match &s.reference {
        Some(r) => errors_1d(&w, r, dy)?,
        None => Vec::new(),
    };
    Ok(RunSummary { t_final: clock.t, steps: clock.steps, errors, series, files, setup, final_state: FinalState::OneD(w), balance })
}

fn run_2d(cfg: &ExperimentConfig, s: &Setup2D, t_end: f64, snaps: &mut Snapshots, name: &str, setup: Setup) -> Result<RunSummary> {
    let (grid, topo, model) = (&s.grid, &s.topo, &s.model);
    let area = grid.cell_area();
    let z: Vec<f64> = (0..grid.cells()).map(|i| topo.center(i % grid.nx(), i / grid.nx())).collect();
    let row = |t: f64, w: &ConservedField2D| SeriesRow {
        t,
        energy: total_energy_2d(w, &z, model.g, area),
        max_divergence: discrete_divergence(w).1,
        mass: total_mass(&w.comps[H], area),
    };
    let mut w = s.initial.clone();
    let mut series = vec![row(0.0, &w)];
    let mut files = Vec::new();
    let write = |t: f64, w: &ConservedField2D, files: &mut Vec<PathBuf>| -> Result<()> {
        if let Some(dir) = &cfg.out_dir {
            let rec = SnapshotRecord::from_2d(t, w, grid, topo);
            files.extend(write_snapshot(&rec, &dir.join(snapshot_name(name, t)))?);
        }
        Ok(())
    };
    write(0.0, &w, &mut files)?;
    let op = |w: &ConservedField2D| semidiscrete_rhs_2d(w, topo, grid, model, &s.bc);
    let mut clock = TimeState::default();
    loop {
        let stop = snaps.next_stop(t_end);
        integrate(&mut w, &mut clock, stop, &op, grid.x.delta, grid.y.delta, model.cfl, |w, c| {
            series.push(row(c.t, w));
            Ok(())
        })?;
        if snaps.next < snaps.times.len() && clock.t >= snaps.times[snaps.next] {
            write(clock.t, &w, &mut files)?;
            snaps.next += 1;
        }
        if clock.t >= t_end {
            break;
        }
    }
    if t_end > 0.0 && snaps.times.last() != Some(&t_end) {
        write(clock.t, &w, &mut files)?;
    }
    if let Some(dir) = &cfg.out_dir {
        files.push(write_series(&series, &dir.join(format!("{name}_series.csv")))?);
    }
    let errors = match &s.reference {
        Some(r) => errors_2d(&w, r, area)?,
        None => Vec::new(),
    };
    Ok(RunSummary { t_final: clock.t, steps: clock.steps, errors, series, files, setup, final_state: FinalState::TwoD(w), balance: None })
}
