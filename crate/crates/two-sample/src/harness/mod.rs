//! Experiment harness: config parsing, replication running, power and
//! Type-I sweeps, CSV input and output.

mod config;
mod csvio;
mod runner;

pub use config::{ExperimentConfig, GammaChoice, Generator, SweepVariable, TestEntry, TestMethod};
pub use csvio::{load_csv_pair, write_rows, HarnessError};
pub use runner::{run_power_curve, run_replication, run_type1, wald_interval, PowerCurve, PowerRow};
