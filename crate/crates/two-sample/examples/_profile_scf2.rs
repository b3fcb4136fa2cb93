use std::time::Instant;
fn main() {
    for scale in [1.0f64, 8.0, 60.0, 1e4] {
        let vals: Vec<f64> = (0..40000).map(|i| ((i as f64 * 0.7919) % 2.0 - 1.0) * scale).collect();
        let t0 = Instant::now();
        let mut acc = 0.0;
        for _ in 0..50 { for v in &vals { let (s, c) = v.sin_cos(); acc += s + c; } }
        println!("sincos |x|<{scale:>8}: {:.3} ms  (acc {acc:.1})", t0.elapsed().as_secs_f64() / 50.0 * 1e3);
    }
    for lo in [-5.0f64, -100.0, -800.0] {
        let vals: Vec<f64> = (0..40000).map(|i| (i as f64 / 40000.0) * lo).collect();
        let t0 = Instant::now();
        let mut acc = 0.0;
        for _ in 0..50 { for v in &vals { acc += v.exp(); } }
        println!("exp [{lo},0]: {:.3} ms (acc {acc:.3e})", t0.elapsed().as_secs_f64() / 50.0 * 1e3);
    }
}
