//! Decides nonsingularity, zero inverse diagonal, unimodularity and 3-colored inverse from the
//! graph structure alone and compares each verdict with exact arithmetic.
//!
//! cargo run --example characterize -- path/to/graph.txt

use tricolor::graph::parse_graph;
use tricolor::report::{classify, ReportOptions};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable graph file"),
        None => "n=8; 1 5 r; 2 6 r; 3 4 r; 3 7 r; 4 8 r; 5 7 r; 5 8 g; 6 7 b; 6 8 g".into(),
    };
    let g = parse_graph(&text).expect("valid graph");
    let report = classify(&g, ReportOptions { inverse: true, timing: false }).expect("small graph");
    for (p, v) in &report.verdicts {
        let mark = if v.agrees { "" } else { "   <- disagrees with the exact inverse" };
        println!("{p:<17} {:<5} ({}){mark}", v.holds, v.clause);
    }
    if let Some(inv) = &report.inverse {
        println!("\n{}", inv.combinatorial);
    }
}
