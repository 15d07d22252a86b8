//! Estimation of quasi-stationary distributions of absorbing Markov chains by
//! stochastic approximation.
//!
//! - [`models`]: transient blocks, chain families, Doeblinization and
//!   uniformization.
//! - [`tour`]: simulation of excursions to absorption.
//! - [`estimator`]: the recursions (vanilla, projected, Polyak-averaged) and
//!   their driver.
//! - [`spectral`]: eigen-solvers that supply ground truth and CLT diagnostics.
//! - [`harness`]: replicated experiments, MSE curves and the CLI.

pub mod error;
pub mod estimator;
pub mod harness;
pub mod models;
pub mod spectral;
pub mod tour;

pub use error::{Error, Result};
