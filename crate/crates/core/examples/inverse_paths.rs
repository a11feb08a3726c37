//! Inverse entries from paths: for each pair, the paths whose complement still has a
//! contributing spanning elementary subgraph, and the mm-alternating ones among them.
//!
//! cargo run --example inverse_paths -- "n=5; 1 2 r; 1 4 r; 2 5 r; 3 4 r; 3 5 r; 4 5 g"

use tricolor::combinatorics::{inverse_combinatorial, mm_alternating_paths};
use tricolor::exact::inverse_exact;
use tricolor::graph::{adjacency_matrix, parse_graph, path_weight};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "n=6; 1 2 r; 2 3 r; 4 3 g; 4 1 r; 1 6 r; 2 5 r; 5 6 r".into());
    let g = parse_graph(&text).expect("valid graph");
    let inv = inverse_combinatorial(&g).expect("nonsingular graph");
    assert_eq!(inv, inverse_exact(&adjacency_matrix(&g)).unwrap());
    println!("{inv}");
    for u in 1..=g.order() {
        for v in u + 1..=g.order() {
            let paths = mm_alternating_paths(&g, u, v).unwrap();
            if paths.is_empty() {
                continue;
            }
            println!("b_{u}{v} = {}", inv[(u - 1, v - 1)]);
            for (p, m) in paths {
                println!("  {:?} weight {} via matching {:?}", p.vertices(), path_weight(&g, &p), m.edges());
            }
        }
    }
}
