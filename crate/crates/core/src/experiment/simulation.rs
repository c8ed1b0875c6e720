//! Incremental stepping of a configured experiment.

use crate::diagnostics::{hb_spread, total_energy_1d, total_energy_2d};
use crate::error::{Error, Result};
use crate::solver1d::semidiscrete_rhs_1d;
use crate::solver2d::{discrete_divergence, semidiscrete_rhs_2d};
use crate::timeint::{integrate, TimeState, WaveSpeeds};

use super::config::ExperimentConfig;
use super::presets::{build_setup, Setup};
use super::run::FinalState;

/// A preset or custom setup plus its evolving state.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub setup: Setup,
    pub state: FinalState,
    pub clock: TimeState,
}

impl Simulation {
    pub fn new(cfg: &ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        let setup = build_setup(cfg)?;
        let state = match &setup {
            Setup::OneD(s) => FinalState::OneD(s.initial.clone()),
            Setup::TwoD(s) => FinalState::TwoD(s.initial.clone()),
        };
        Ok(Self { setup, state, clock: TimeState::default() })
    }

    /// `(nx, ny)`; `nx = 1` in one dimension.
    pub fn dims(&self) -> (usize, usize) {
        match &self.setup {
            Setup::OneD(s) => (1, s.grid.n()),
            Setup::TwoD(s) => (s.grid.nx(), s.grid.ny()),
        }
    }

    pub fn components(&self) -> usize {
        match &self.state {
            FinalState::OneD(w) => w.comps.len(),
            FinalState::TwoD(w) => w.comps.len(),
        }
    }

    pub fn component(&self, c: usize) -> Option<&[f64]> {
        match &self.state {
            FinalState::OneD(w) => w.comps.get(c).map(Vec::as_slice),
            FinalState::TwoD(w) => w.comps.get(c).map(Vec::as_slice),
        }
    }

    /// Integrates up to `t_target`; a target at or before the current time is a no-op.
    pub fn advance(&mut self, t_target: f64) -> Result<()> {
        if !t_target.is_finite() {
            return Err(Error::config("target time must be finite"));
        }
        if t_target <= self.clock.t {
            return Ok(());
        }
        match (&self.setup, &mut self.state) {
            (Setup::OneD(s), FinalState::OneD(w)) => {
                let op = |w: &_| -> Result<_> {
                    let (r, sp) = semidiscrete_rhs_1d(w, &s.topo, &s.grid, &s.model, &s.bc)?;
                    Ok((r, WaveSpeeds { x: 0.0, y: sp }))
                };
                let dy = s.grid.dy();
                integrate(w, &mut self.clock, t_target, &op, dy, dy, s.model.cfl, |_, _| Ok(()))
            }
            (Setup::TwoD(s), FinalState::TwoD(w)) => {
                let op = |w: &_| semidiscrete_rhs_2d(w, &s.topo, &s.grid, &s.model, &s.bc);
                integrate(w, &mut self.clock, t_target, &op, s.grid.x.delta, s.grid.y.delta, s.model.cfl, |_, _| Ok(()))
            }
            _ => unreachable!("state dimension always matches the setup"),
        }
    }

    pub fn energy(&self) -> f64 {
        match (&self.setup, &self.state) {
            (Setup::OneD(s), FinalState::OneD(w)) => total_energy_1d(w, s.topo.centers(), s.model.g, s.grid.dy()),
            (Setup::TwoD(s), FinalState::TwoD(w)) => {
                let nx = s.grid.nx();
                let z: Vec<f64> = (0..s.grid.cells()).map(|i| s.topo.center(i % nx, i / nx)).collect();
                total_energy_2d(w, &z, s.model.g, s.grid.cell_area())
            }
            _ => unreachable!("state dimension always matches the setup"),
        }
    }

    /// `max |Ā + B̄|` in 2-D, `max |(hb)_k - (hb)_1|` in 1-D.
    pub fn max_divergence(&self) -> f64 {
        match &self.state {
            FinalState::OneD(w) => hb_spread(w),
            FinalState::TwoD(w) => discrete_divergence(w).1,
        }
    }
}
