//! Successive-mesh convergence study for 1-D experiments.

use crate::diagnostics::{primitive, runge_rate};
use crate::error::{Error, Result};
use crate::field::{H, HA, HU, HV};

use super::config::{ExperimentConfig, Mesh};
use super::run::{run_experiment, FinalState};

/// Cell-block means of a factor-2 refined field.
pub fn block_mean(fine: &[f64]) -> Vec<f64> {
    fine.chunks_exact(2).map(|p| 0.5 * (p[0] + p[1])).collect()
}

/// L1 differences between successive meshes and the resulting rates.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub meshes: Vec<usize>,
    pub fields: Vec<&'static str>,
    /// `diffs[f][i] = ‖q_{N_i} - M(q_{N_{i+1}})‖₁` on mesh `N_i`.
    pub diffs: Vec<Vec<f64>>,
    /// `rates[f][i] = log₂(diffs[f][i] / diffs[f][i+1])`; NaN when undefined.
    pub rates: Vec<Vec<f64>>,
}

impl ConvergenceTable {
    pub fn render(&self) -> String {
        let mut out = String::from("N");
        for f in &self.fields {
            out.push_str(&format!(",L1({f}),rate({f})"));
        }
        out.push('\n');
        for i in 0..self.meshes.len().saturating_sub(1) {
            out.push_str(&self.meshes[i].to_string());
            for f in 0..self.fields.len() {
                let rate = if i > 0 { self.rates[f][i - 1] } else { f64::NAN };
                out.push_str(&format!(",{:.6e},{:.4}", self.diffs[f][i], rate));
            }
            out.push('\n');
        }
        out
    }
}

/// Rates from a table of successive differences.
pub fn rates_from_diffs(diffs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    diffs.iter().map(|d| d.windows(2).map(|p| runge_rate(p[0], p[1]).unwrap_or(f64::NAN)).collect()).collect()
}

/// Differences of `coarse` against the block means of `fine` on the coarse mesh.
pub fn successive_difference(coarse: &[f64], fine: &[f64], delta: f64) -> Result<f64> {
    if fine.len() != 2 * coarse.len() {
        return Err(Error::ShapeMismatch { left: fine.len(), right: 2 * coarse.len() });
    }
    Ok(coarse.iter().zip(block_mean(fine)).map(|(c, f)| (c - f).abs()).sum::<f64>() * delta)
}

pub fn convergence_study(base: &ExperimentConfig, meshes: &[usize]) -> Result<ConvergenceTable> {
    if meshes.len() < 2 || meshes.windows(2).any(|p| p[1] != 2 * p[0]) {
        return Err(Error::config("meshes must form a doubling chain of at least two entries"));
    }
    let fields: Vec<(&'static str, usize)> = vec![("h", H), ("u", HU), ("v", HV), ("a", HA)];
    let mut solutions = Vec::new();
    for &n in meshes {
        let mut cfg = base.clone();
        cfg.mesh = Some(Mesh::One(n));
        cfg.out_dir = None;
        let summary = run_experiment(&cfg)?;
        let FinalState::OneD(w) = summary.final_state else {
            return Err(Error::config("convergence studies are one-dimensional"));
        };
        let super::presets::Setup::OneD(setup) = summary.setup else { unreachable!() };
        solutions.push((setup.grid.dy(), fields.iter().map(|&(_, c)| primitive(&w, c)).collect::<Vec<_>>()));
    }
    let mut diffs = vec![Vec::new(); fields.len()];
    for pair in solutions.windows(2) {
        let ((dy, coarse), (_, fine)) = (&pair[0], &pair[1]);
        for f in 0..fields.len() {
            diffs[f].push(successive_difference(&coarse[f], &fine[f], *dy)?);
        }
    }
    let rates = rates_from_diffs(&diffs);
    Ok(ConvergenceTable { meshes: meshes.to_vec(), fields: fields.iter().map(|f| f.0).collect(), diffs, rates })
}
