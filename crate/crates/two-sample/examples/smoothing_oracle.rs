//! Why smoothing matters: two distinct triangular (Polya) characteristic
//! functions agree exactly outside a small interval, so a pointwise CF
//! comparison at random frequencies misses them almost surely. Convolving
//! with an analytic Gaussian kernel spreads the difference over the whole
//! line, where any frequency sees it.
//!
//!     cargo run --release --example smoothing_oracle

use two_sample::smoothing::{polya_cf, smooth_cf_quadrature};

fn main() -> Result<(), two_sample::Error> {
    let a = polya_cf(2.0)?; // support |t| <= 1/2
    let b = polya_cf(3.0)?; // support |t| <= 1/3
    let ell = 1.0;

    println!("   t    |cf_a - cf_b|   |smoothed_a - smoothed_b|");
    for i in 0..10 {
        let t = 0.25 + 0.5 * i as f64;
        let raw = (a.evaluate(t) - b.evaluate(t)).norm();
        let smoothed =
            (smooth_cf_quadrature(&a, t, ell)? - smooth_cf_quadrature(&b, t, ell)?).norm();
        println!("{t:>5.2}   {raw:<13.6}   {smoothed:.3e}");
    }
    println!("\nraw differences vanish beyond t = 0.5; smoothed ones never do");
    Ok(())
}
