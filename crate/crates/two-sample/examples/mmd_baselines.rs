//! The three MMD baselines on one dataset: the quadratic-time U-statistic
//! with a permutation null, the fixed-block B-test, and MMD on a sqrt(n)
//! subsample. Compare p-values and wall clock against the linear-time
//! mean-embedding test.
//!
//!     cargo run --release --example mmd_baselines

use two_sample::datagen::dataset_one;
use two_sample::{
    block_mmd_test, mmd2_unbiased, permutation_mmd_test, run_analytic_test, subsampled_mmd_test,
    FeatureKind, Scaling, Seed,
};

fn main() -> Result<(), two_sample::Error> {
    let n = 1500;
    let (x, y) = dataset_one(n, 5, Seed(21))?;
    let gamma = Scaling::new(2.0)?;
    let alpha = 0.05;

    println!("raw MMD^2 estimate: {:.5}", mmd2_unbiased(&x, &y, gamma)?);

    let mmd = permutation_mmd_test(&x, &y, gamma, 250, alpha, Seed(22))?;
    let block = block_mmd_test(&x, &y, gamma, 10, alpha)?;
    let sub = subsampled_mmd_test(&x, &y, gamma, 250, alpha, Seed(23))?;
    let me = run_analytic_test(FeatureKind::MeanEmbedding, &x, &y, 5, gamma, alpha, Seed(24))?;

    for (name, outcome) in [
        ("mmd (permutation)", &mmd),
        ("block (B = 10)", &block),
        ("sub (sqrt n)", &sub),
        ("me (J = 5)", &me),
    ] {
        println!(
            "{name:>18}: p = {:<12.5} reject = {:<5} elapsed = {:8.2} ms  [{}]",
            outcome.p_value,
            outcome.reject,
            outcome.elapsed_s() * 1e3,
            outcome.null,
        );
    }
    Ok(())
}
