//! Fixtures shared by unit tests.

use crate::exact::{GaussianRational, Matrix};
use crate::graph::{parse_graph, ColoredDigraph};

/// The six-vertex θ-graph whose only green arc is `4→3`; it is unimodular with a
/// non-3-colored inverse.
pub const GOLDEN_THETA: &str = "n=6\n1 2 r\n2 3 r\n4 3 g\n4 1 r\n1 6 r\n2 5 r\n5 6 r\n";

pub fn golden_theta() -> ColoredDigraph {
    parse_graph(GOLDEN_THETA).unwrap()
}

pub fn golden_theta_inverse() -> Matrix {
    let rows = [
        ["0", "-i", "0", "1", "0", "i"],
        ["i", "0", "1", "0", "-i", "0"],
        ["0", "1", "0", "0", "0", "-1"],
        ["1", "0", "0", "0", "-1", "0"],
        ["0", "i", "0", "-1", "0", "1-i"],
        ["-i", "0", "-1", "0", "1+i", "0"],
    ];
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| entry(s)).collect()).collect()).unwrap()
}

fn entry(s: &str) -> GaussianRational {
    match s {
        "0" => GaussianRational::zero(),
        "1" => GaussianRational::one(),
        "-1" => -GaussianRational::one(),
        "i" => GaussianRational::i(),
        "-i" => -GaussianRational::i(),
        "1-i" => GaussianRational::from_integers(1, -1),
        "1+i" => GaussianRational::from_integers(1, 1),
        _ => unreachable!(),
    }
}
