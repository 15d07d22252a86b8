//! Replicated experiments, MSE curves, rate fits and the command line.

mod cli;
mod experiment;
mod rate;
mod spec;

pub use cli::{run_cli, EXIT_NUMERIC, EXIT_OK, EXIT_RUNTIME, EXIT_USAGE};
pub use experiment::{
    replicate_rng, run_experiment, run_experiment_on, write_csv, CurveRow, ExperimentResult,
    Preset, ReplicateRng, RunConfig, MAX_ORACLE_DIM,
};
pub use rate::{estimate_rate, least_squares_slope, median_smooth, MseCurve};
pub use spec::{ChainSpec, Family};
