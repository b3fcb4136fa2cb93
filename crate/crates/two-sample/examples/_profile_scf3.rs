use ndarray::Array2;
use std::time::Instant;
use two_sample::datagen::{blobs, BlobsBranch, BlobsSpec};
use two_sample::rng::Seed;
use two_sample::sample::{draw_frequencies, scale_data, Scaling};

fn main() {
    let spec = BlobsSpec::default();
    let n = 4000;
    let j_count = 5;
    let g = Scaling::new(2.0).unwrap();
    let x = scale_data(&blobs(n, &spec, BlobsBranch::P, Seed(1)).unwrap(), g);
    let y = scale_data(&blobs(n, &spec, BlobsBranch::Q, Seed(2)).unwrap(), g);
    let t = draw_frequencies(j_count, 2, Seed(3)).unwrap();
    let proj_x = x.matrix().dot(&t.matrix().t());
    let proj_y = y.matrix().dot(&t.matrix().t());
    let xn: Vec<f64> = (0..n).map(|i| x.row(i).iter().map(|v| v * v).sum()).collect();
    let yn: Vec<f64> = (0..n).map(|i| y.row(i).iter().map(|v| v * v).sum()).collect();
    let mut col_max = vec![f64::NEG_INFINITY; j_count];
    for i in 0..n {
        for j in 0..j_count {
            col_max[j] = col_max[j].max(2.0 * proj_x[(i, j)] - xn[i]).max(2.0 * proj_y[(i, j)] - yn[i]);
        }
    }
    let t0 = Instant::now();
    let mut z = Array2::zeros((n, 2 * j_count));
    for _ in 0..50 {
        for i in 0..n {
            let dx = proj_x.row(i);
            let dy = proj_y.row(i);
            let mut zrow = z.row_mut(i);
            let zrow = zrow.as_slice_mut().unwrap();
            for j in 0..j_count {
                let ex = (2.0 * dx[j] - xn[i] - col_max[j]).exp();
                let ey = (2.0 * dy[j] - yn[i] - col_max[j]).exp();
                let (sx, cx) = dx[j].sin_cos();
                let (sy, cy) = dy[j].sin_cos();
                zrow[2 * j] = ex * sx - ey * sy;
                zrow[2 * j + 1] = ex * cx - ey * cy;
            }
        }
    }
    println!("scf fill loop: {:.3} ms (z00 {})", t0.elapsed().as_secs_f64() / 50.0 * 1e3, z[(0,0)]);
    // how slow are THE ACTUAL exp arguments?
    let mut args = Vec::new();
    for i in 0..n {
        for j in 0..j_count {
            args.push(2.0 * proj_x[(i, j)] - xn[i] - col_max[j]);
            args.push(2.0 * proj_y[(i, j)] - yn[i] - col_max[j]);
        }
    }
    let t0 = Instant::now();
    let mut acc = 0.0;
    for _ in 0..50 { for a in &args { acc += a.exp(); } }
    println!("actual exp args ({}): {:.3} ms (acc {acc:.2e}) min {:.1} max {:.1}",
        args.len(), t0.elapsed().as_secs_f64() / 50.0 * 1e3,
        args.iter().cloned().fold(f64::INFINITY, f64::min),
        args.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
    let trig: Vec<f64> = proj_x.iter().chain(proj_y.iter()).cloned().collect();
    let t0 = Instant::now();
    let mut acc2 = 0.0;
    for _ in 0..50 { for a in &trig { let (s, c) = a.sin_cos(); acc2 += s + c; } }
    println!("actual trig args ({}): {:.3} ms (acc {acc2:.2e})", trig.len(), t0.elapsed().as_secs_f64() / 50.0 * 1e3);
}
