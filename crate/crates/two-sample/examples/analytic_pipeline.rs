//! The analytic tests taken apart: frequencies, feature differences, mean
//! and covariance, Hotelling statistic, chi-squared decision. The same
//! pipeline runs for all three feature maps; only the feature dimension
//! changes (J for ME, 2J for SCF and CF).
//!
//!     cargo run --release --example analytic_pipeline

use two_sample::analytic::{difference_matrix, hotelling_statistic, mean_and_covariance};
use two_sample::datagen::dataset_two;
use two_sample::sample::draw_frequencies;
use two_sample::statdist::{chi2_quantile, chi2_sf, DegreesOfFreedom};
use two_sample::{feature_dim, FeatureKind, Scaling, Seed};

fn main() -> Result<(), two_sample::Error> {
    let n = 5000;
    let (x, y) = dataset_two(n, 10, Seed(7))?;
    let gamma = Scaling::new(4.0)?;
    let j_count = 4;

    for kind in [FeatureKind::MeanEmbedding, FeatureKind::SmoothCf, FeatureKind::Cf] {
        let t = draw_frequencies(j_count, x.dim(), Seed(8))?;
        let z = difference_matrix(kind, &x, &y, &t, gamma)?;
        let summary = mean_and_covariance(&z, /* centered */ true);
        let statistic = hotelling_statistic(&summary, 0.0)?;

        let dof = DegreesOfFreedom::new(feature_dim(kind, j_count) as u32)?;
        let p = chi2_sf(statistic, dof)?;
        let threshold = chi2_quantile(0.95, dof)?;
        println!(
            "{:>3}: p = {}  Z is {}x{}  S_n = {:8.3}  chi2({}) threshold = {:6.3}  reject = {}",
            kind.label(),
            p,
            z.n(),
            z.feature_dim(),
            statistic,
            dof,
            threshold,
            statistic > threshold,
        );
    }
    Ok(())
}
