//! Linear-time nonparametric two-sample tests built on analytic
//! representations of distributions — Gaussian-kernel mean embeddings and
//! smoothed empirical characteristic functions evaluated at a handful of
//! random frequencies — plus the quadratic, block and sub-sampled MMD
//! baselines they are benchmarked against.
//!
//! The analytic tests compare two samples through the vector of per-pair
//! feature differences Z_i, whose mean W and covariance Sigma feed a
//! Hotelling-type statistic S = n W' Sigma^-1 W with an asymptotic
//! chi-squared null. Cost is linear in the sample size, so power per second
//! is the interesting metric; the [`harness`] module sweeps sample size,
//! dimension or noise level and records rejection rates with Wald bands and
//! per-test wall clock into CSV.
//!
//! Every randomized step takes an explicit [`rng::Seed`] and the whole
//! pipeline is deterministic given one.
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example
//! quickstart` is the place to start. The `two-sample` binary exposes the
//! same machinery as `test`, `power`, `type1` and `tune` subcommands.

// Negated comparisons like `!(x > 0.0)` are deliberate: they reject NaN
// along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod datagen;
pub mod error;
pub mod features;
pub mod harness;
pub mod linalg;
pub mod mmd;
pub mod outcome;
pub mod rng;
pub mod sample;
pub mod smoothing;
pub mod statdist;
pub mod tuning;

pub use analytic::{
    difference_matrix, hotelling_statistic, mean_and_covariance, run_analytic_test,
    AnalyticOptions, DifferenceMatrix, HotellingSummary,
};
pub use error::Error;
pub use features::{feature_dim, feature_map, FeatureKind};
pub use mmd::{block_mmd_test, h_term, mmd2_unbiased, permutation_mmd_test, subsampled_mmd_test};
pub use outcome::{NullMethod, TestOutcome};
pub use rng::Seed;
pub use sample::{draw_frequencies, scale_data, FrequencyMatrix, SampleSet, Scaling};
pub use statdist::{chi2_cdf, chi2_quantile, normal_cdf, DegreesOfFreedom};
pub use tuning::{select_scaling, Resample, ScalingGrid};
