//! Determinants three ways: exact elimination, the signed sum over contributing spanning
//! elementary subgraphs, and the closed form for bicyclic graphs.

use tricolor::combinatorics::{det_bicyclic_formula, det_combinatorial, enumerate_spanning_elementary, is_contributing};
use tricolor::exact::det_exact;
use tricolor::graph::{adjacency_matrix, classify_shape, parse_graph};

fn main() {
    let graphs = [
        "n=4; 1 2 g; 2 3 r; 3 4 r; 4 1 r",
        "n=5; 1 2 r; 2 3 g; 3 1 r; 3 4 r; 4 5 b; 5 3 r",
        "n=6; 1 2 r; 2 3 r; 4 3 g; 4 1 r; 1 6 r; 2 5 r; 5 6 r",
    ];
    for text in graphs {
        let g = parse_graph(text).expect("valid graph");
        let spanning = enumerate_spanning_elementary(&g).expect("small cyclomatic number");
        let contributing = spanning.iter().filter(|h| is_contributing(&g, h)).count();
        println!("{text}");
        println!("  shape {}, {} spanning elementary subgraphs, {contributing} contributing", classify_shape(&g), spanning.len());
        println!("  exact {}  combinatorial {}", det_exact(&adjacency_matrix(&g)), det_combinatorial(&g).unwrap());
        if let Ok(d) = det_bicyclic_formula(&g) {
            println!("  bicyclic closed form {d}");
        }
    }
}
