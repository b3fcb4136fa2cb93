//! A small power sweep through the experiment harness, emitting the same
//! CSV the `power` subcommand writes. Sweeps sample size on the mean-shift
//! pair and compares a linear-time test against the block baseline.
//!
//!     cargo run --release --example power_curve

use two_sample::harness::{run_power_curve, write_rows, ExperimentConfig};

const CONFIG: &str = "\
generator = dataset_one
sweep = n
values = 100,400,1600
D = 5
replications = 80
alpha = 0.05
seed = 99

test.name = me
test.J = 3
test.gamma = 1.0

test.name = block
test.B = 5
test.gamma = 2.0
";

fn main() {
    let config = ExperimentConfig::from_str_contents(CONFIG).expect("valid config");
    let curve = run_power_curve(&config).expect("sweep runs");
    let stdout = std::io::stdout();
    write_rows(&mut stdout.lock(), &curve).expect("write csv");
}
