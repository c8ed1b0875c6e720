//! Experiment harness: presets, configuration, runs, output and convergence studies.

pub mod config;
pub mod converge;
pub mod output;
pub mod presets;
pub mod run;
pub mod simulation;

pub use config::{ExampleId, ExperimentConfig, Mesh};
pub use converge::{block_mean, convergence_study, ConvergenceTable};
pub use output::{read_snapshot, render_csv, write_balance, write_series, write_snapshot, SeriesRow, SnapshotRecord};
pub use presets::{balanced_vortex_velocity, build_setup, Setup, Setup1D, Setup2D};
pub use run::{run_experiment, BalanceSummary, FinalState, RunSummary};
pub use simulation::Simulation;
