//! Exhaustive sweep of one family up to a given order, printing the check table.
//!
//! cargo run --release --example sweep -- btheta 7

use std::time::Instant;

use tricolor::generators::{ColoringMode, Family, GreenOrientation};
use tricolor::verify::{verify, SweepSpec};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family = match args.first().map(String::as_str) {
        Some("binf") => Family::BicyclicInfinity,
        Some("btheta") => Family::BicyclicTheta,
        _ => Family::Unicyclic,
    };
    let max_n = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let spec = SweepSpec::new(vec![family], max_n, ColoringMode::Exhaustive { green: GreenOrientation::Canonical });
    let start = Instant::now();
    let report = verify(spec).expect("valid sweep");
    print!("{}", report.to_text());
    println!("elapsed: {:.1?}", start.elapsed());
}
