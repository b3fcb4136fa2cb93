//! Loading user data: write two small CSV files, load them as a sample
//! pair, and test. The same files work with the CLI:
//!
//!     two-sample test --x x.csv --y y.csv --method scf --J 5 --gamma 1 --json
//!
//!     cargo run --release --example csv_pair

use std::io::Write;

use two_sample::harness::load_csv_pair;
use two_sample::{run_analytic_test, FeatureKind, Scaling, Seed};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir();
    let x_path = dir.join("two_sample_example_x.csv");
    let y_path = dir.join("two_sample_example_y.csv");

    // Header rows are detected and skipped.
    let mut fx = std::fs::File::create(&x_path)?;
    writeln!(fx, "u,v")?;
    let mut fy = std::fs::File::create(&y_path)?;
    for i in 0..200 {
        let t = i as f64 / 10.0;
        writeln!(fx, "{},{}", t.sin(), t.cos())?;
        writeln!(fy, "{},{}", 1.3 * t.sin(), t.cos())?;
    }
    drop(fx);
    drop(fy);

    let (x, y) = load_csv_pair(&x_path, &y_path)?;
    println!("loaded {}x{} and {}x{}", x.n(), x.dim(), y.n(), y.dim());

    let outcome = run_analytic_test(
        FeatureKind::SmoothCf,
        &x,
        &y,
        5,
        Scaling::new(1.0)?,
        0.05,
        Seed(5),
    )?;
    println!("p = {:.5}, reject = {}", outcome.p_value, outcome.reject);
    Ok(())
}
