//! Perfect matchings, independent cycles and pegs of a bicyclic graph.

use tricolor::combinatorics::{enumerate_perfect_matchings, is_independent_cycle, pegs};
use tricolor::graph::{cycle_weight, enumerate_cycles, parse_graph};

fn main() {
    let g = parse_graph("n=6; 1 2 r; 2 3 r; 4 3 g; 4 1 r; 1 6 r; 2 5 r; 5 6 r").unwrap();
    let matchings = enumerate_perfect_matchings(&g);
    for m in &matchings {
        println!("perfect matching {:?}", m.edges());
    }
    for c in enumerate_cycles(&g) {
        println!("cycle {:?}: weight {}, independent {}", c.vertices(), cycle_weight(&g, &c), is_independent_cycle(&g, &c));
        for m in &matchings {
            let p = pegs(m, &c);
            println!("  {} pegs ({} outgoing) relative to {:?}", p.count(), p.outgoing(), m.edges());
        }
    }
}
