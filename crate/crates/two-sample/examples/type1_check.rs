//! Type-I calibration: both samples drawn from the same distribution, so
//! every rejection is a false positive. Rates should sit inside the 99%
//! Wald band around the design level; each row carries an in/out-of-band
//! flag.
//!
//!     cargo run --release --example type1_check

use two_sample::harness::{run_type1, write_rows, ExperimentConfig};

const CONFIG: &str = "\
generator = blobs
sweep = n
values = 500,2000
replications = 300
alpha = 0.05
seed = 17

test.name = me
test.J = 5
test.gamma = 1.0

test.name = scf
test.J = 5
test.gamma = 1.0

test.name = block
test.B = 10
test.gamma = 1.0
";

fn main() {
    let config = ExperimentConfig::from_str_contents(CONFIG).expect("valid config");
    let curve = run_type1(&config).expect("sweep runs");
    let stdout = std::io::stdout();
    write_rows(&mut stdout.lock(), &curve).expect("write csv");
}
