//! The six-vertex theta graph with a single green arc: determinant -1, a Gaussian-integer
//! inverse with zero diagonal, and an inverse that is not itself 3-colored.

use tricolor::combinatorics::{det_combinatorial, inverse_combinatorial};
use tricolor::exact::{det_exact, inverse_exact};
use tricolor::graph::{adjacency_matrix, parse_graph};

const GRAPH: &str = "n=6
1 2 r
2 3 r
4 3 g
4 1 r
1 6 r
2 5 r
5 6 r
";

fn main() {
    let g = parse_graph(GRAPH).expect("valid graph");
    let a = adjacency_matrix(&g);
    println!("A(G):\n{}", a.as_matrix());
    println!("det (exact)         = {}", det_exact(&a));
    println!("det (combinatorial) = {}", det_combinatorial(&g).expect("bicyclic"));

    let inv = inverse_combinatorial(&g).expect("nonsingular");
    assert_eq!(inv, inverse_exact(&a).expect("nonsingular"));
    println!("A(G)^-1:\n{inv}");
    println!("b_36 = {}, b_56 = {}, b_65 = {}", inv[(2, 5)], inv[(4, 5)], inv[(5, 4)]);
}
