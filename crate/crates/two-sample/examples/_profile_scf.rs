use std::time::Instant;
use two_sample::datagen::{blobs, BlobsBranch, BlobsSpec};
use two_sample::sample::{draw_frequencies, scale_data, Scaling};
use two_sample::rng::Seed;
use two_sample::analytic::{run_analytic_test, difference_matrix, mean_and_covariance, hotelling_statistic};
use two_sample::mmd::block_mmd_test;
use two_sample::FeatureKind;

fn main() {
    let spec = BlobsSpec::default();
    let n = 4000;
    let x = blobs(n, &spec, BlobsBranch::P, Seed(1)).unwrap();
    let y = blobs(n, &spec, BlobsBranch::Q, Seed(2)).unwrap();
    let g = Scaling::new(2.0).unwrap();
    // warm
    for _ in 0..3 { run_analytic_test(FeatureKind::SmoothCf, &x, &y, 5, g, 0.05, Seed(3)).unwrap(); }
    let t0 = Instant::now();
    for _ in 0..50 { run_analytic_test(FeatureKind::SmoothCf, &x, &y, 5, g, 0.05, Seed(3)).unwrap(); }
    println!("scf full: {:.3} ms", t0.elapsed().as_secs_f64()/50.0*1e3);
    let t0 = Instant::now();
    for _ in 0..50 { run_analytic_test(FeatureKind::MeanEmbedding, &x, &y, 5, g, 0.05, Seed(3)).unwrap(); }
    println!("me  full: {:.3} ms", t0.elapsed().as_secs_f64()/50.0*1e3);
    let t0 = Instant::now();
    for _ in 0..50 { block_mmd_test(&x, &y, g, 5, 0.05).unwrap(); }
    println!("block   : {:.3} ms", t0.elapsed().as_secs_f64()/50.0*1e3);
    // pieces
    let t0 = Instant::now();
    for _ in 0..50 { let _ = (scale_data(&x, g), scale_data(&y, g)); }
    println!("scale   : {:.3} ms", t0.elapsed().as_secs_f64()/50.0*1e3);
    let t0 = Instant::now();
    for _ in 0..50 { let _ = draw_frequencies(5, 2, Seed(3)).unwrap(); }
    println!("freqs   : {:.3} ms", t0.elapsed().as_secs_f64()/50.0*1e3);
    let t = draw_frequencies(5, 2, Seed(3)).unwrap();
    let z = difference_matrix(FeatureKind::SmoothCf, &x, &y, &t, g).unwrap();
    let t0 = Instant::now();
    for _ in 0..50 { let s = mean_and_covariance(&z, true); let _ = hotelling_statistic(&s, 1e-10).unwrap(); }
    println!("cov+sol : {:.3} ms", t0.elapsed().as_secs_f64()/50.0*1e3);
    // raw libm throughput
    let vals: Vec<f64> = (0..40000).map(|i| -(i as f64 % 7.0)).collect();
    let t0 = Instant::now();
    let mut acc = 0.0;
    for _ in 0..50 { for v in &vals { acc += v.exp(); } }
    println!("40k exp : {:.3} ms (acc {acc:.1})", t0.elapsed().as_secs_f64()/50.0*1e3);
    let t0 = Instant::now();
    let mut acc2 = 0.0;
    for _ in 0..50 { for v in &vals { let (s,c) = v.sin_cos(); acc2 += s + c; } }
    println!("40k sc  : {:.3} ms (acc {acc2:.1})", t0.elapsed().as_secs_f64()/50.0*1e3);
}
