//! The result record shared by every test in the crate.

use std::time::Duration;

use crate::statdist::DegreesOfFreedom;

/// How the null distribution of a statistic was calibrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullMethod {
    /// Asymptotic chi-squared law with the given degrees of freedom.
    ChiSquared(DegreesOfFreedom),
    /// Empirical permutation null with the given number of permutations.
    Permutation { draws: usize },
    /// Normal approximation from the empirical block variance.
    NormalApprox,
}

impl NullMethod {
    /// JSON value for the `dof` field: the number for chi-squared nulls, a
    /// tag string otherwise.
    pub fn dof_json(&self) -> serde_json::Value {
        match self {
            NullMethod::ChiSquared(k) => serde_json::json!(k.get()),
            NullMethod::Permutation { .. } => serde_json::json!("permutation"),
            NullMethod::NormalApprox => serde_json::json!("normal"),
        }
    }
}

impl std::fmt::Display for NullMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NullMethod::ChiSquared(k) => write!(f, "chi2({k})"),
            NullMethod::Permutation { draws } => write!(f, "permutation({draws})"),
            NullMethod::NormalApprox => write!(f, "normal"),
        }
    }
}

/// Statistic value, calibration, decision and wall-clock cost of one test.
///
/// The elapsed time covers the statistic and the decision only; generating
/// or loading the data is the caller's business.
#[derive(Debug, Clone)]
pub struct TestOutcome {
    pub statistic: f64,
    pub null: NullMethod,
    pub p_value: f64,
    pub threshold: f64,
    pub reject: bool,
    pub alpha: f64,
    pub elapsed: Duration,
    /// Set when a degenerate situation (e.g. zero block variance) forced the
    /// documented fallback rule instead of the regular calibration.
    pub degenerate: bool,
}

impl TestOutcome {
    pub fn elapsed_s(&self) -> f64 {
        self.elapsed.as_secs_f64()
    }
}
