//! Smallest useful run: draw two samples that differ in their first
//! coordinate mean, test them with the mean-embedding statistic.
//!
//!     cargo run --release --example quickstart

use two_sample::datagen::dataset_one;
use two_sample::{run_analytic_test, FeatureKind, Scaling, Seed};

fn main() -> Result<(), two_sample::Error> {
    let (x, y) = dataset_one(2000, 5, Seed(1))?;
    let outcome = run_analytic_test(
        FeatureKind::MeanEmbedding,
        &x,
        &y,
        /* frequencies */ 5,
        Scaling::new(1.0)?,
        /* alpha */ 0.05,
        Seed(2),
    )?;
    println!("statistic  = {:.3}", outcome.statistic);
    println!("null law   = {}", outcome.null);
    println!("p-value    = {:.2e}", outcome.p_value);
    println!("threshold  = {:.3}", outcome.threshold);
    println!("reject H0  = {}", outcome.reject);
    println!("elapsed    = {:.3} ms", outcome.elapsed_s() * 1e3);
    Ok(())
}
