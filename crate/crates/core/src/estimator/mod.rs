//! Stochastic-approximation recursions for the quasi-stationary distribution.
//!
//! Each tour is started from the current estimate `mu_n`; its occupancy
//! `occ` and lifetime `tau` feed the innovation `occ - tau * mu_n`. The
//! vanilla recursion divides by the running mean lifetime `T_n` and uses
//! steps `1 / (n + 1)`; the projected recursion uses a free step schedule and
//! an L2 projection back onto the simplex.

mod projection;
mod runner;
mod schedule;
mod state;
mod trace;

pub use projection::project_simplex;
pub use runner::{run_estimator, RecordSchedule, RunOptions, Snapshot, MAX_RECORDED_POINTS};
pub use schedule::StepSchedule;
pub use state::{polyak_average, EstimatorState, PolyakAverage, Variant, MAX_SIMPLEX_DRIFT};
pub use trace::TraceWriter;
