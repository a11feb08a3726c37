//! Randomized properties of the combinatorial formulas against independent oracles.

use std::collections::HashMap;

use proptest::prelude::*;

use tricolor::characterize::{model_structure, Predicate};
use tricolor::combinatorics::{det_combinatorial, inverse_combinatorial, Structure};
use tricolor::exact::{det_exact, GaussianRational, Matrix};
use tricolor::graph::{adjacency_matrix, classify_shape, parse_graph, Color, ColoredDigraph, ColoredEdge, ShapeClass};

/// Laplace expansion along the first row, memoized on the set of remaining columns.
fn det_laplace(m: &Matrix) -> GaussianRational {
    fn rec(m: &Matrix, row: usize, cols: u32, memo: &mut HashMap<u32, GaussianRational>) -> GaussianRational {
        if row == m.order() {
            return GaussianRational::one();
        }
        if let Some(d) = memo.get(&cols) {
            return d.clone();
        }
        let mut acc = GaussianRational::zero();
        let mut sign_flip = false;
        for c in 0..m.order() {
            if cols & (1 << c) == 0 {
                continue;
            }
            let a = m.get(row, c);
            if !a.is_zero() {
                let term = a * &rec(m, row + 1, cols & !(1 << c), memo);
                acc = if sign_flip { &acc + &(-term) } else { &acc + &term };
            }
            sign_flip = !sign_flip;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    rec(m, 0, (1u32 << m.order()) - 1, &mut HashMap::new())
}

fn color(code: u8) -> Color {
    match code % 3 {
        0 => Color::Red,
        1 => Color::Blue,
        _ => Color::Green,
    }
}

/// A connected graph: a random tree from its Prüfer code plus `extra` further edges.
fn build(n: usize, prufer: &[usize], extra: &[(usize, usize)], codes: &[u8], flips: &[bool]) -> Option<ColoredDigraph> {
    let mut degree = vec![1usize; n];
    for &p in prufer {
        degree[p] += 1;
    }
    let mut pairs = Vec::new();
    for &p in prufer {
        let leaf = (0..n).find(|&v| degree[v] == 1)?;
        pairs.push((leaf, p));
        degree[leaf] -= 1;
        degree[p] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    pairs.push((rest[0], rest[1]));
    for &(a, b) in extra {
        let (a, b) = (a % n, b % n);
        if a == b || pairs.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a)) {
            return None;
        }
        pairs.push((a, b));
    }
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| {
            let (u, v) = if flips[k % flips.len()] { (b + 1, a + 1) } else { (a + 1, b + 1) };
            ColoredEdge::new(u, v, color(codes[k % codes.len()]))
        })
        .collect();
    ColoredDigraph::new(n, edges).ok()
}

fn graphs(max_n: usize, max_extra: usize) -> impl Strategy<Value = ColoredDigraph> {
    (3..=max_n)
        .prop_flat_map(move |n| {
            (
                Just(n),
                prop::collection::vec(0..n, n - 2),
                prop::collection::vec((0..n, 0..n), 0..=max_extra),
                prop::collection::vec(any::<u8>(), n + max_extra),
                prop::collection::vec(any::<bool>(), n + max_extra),
            )
        })
        .prop_filter_map("extra edge repeats an existing one", |(n, prufer, extra, codes, flips)| {
            build(n, &prufer, &extra, &codes, &flips)
        })
}

fn in_model_uni_or_bicyclic(max_n: usize) -> impl Strategy<Value = ColoredDigraph> {
    graphs(max_n, 2).prop_filter("needs an imaginary cycle", |g| model_structure(g).is_ok())
}

fn relabel(g: &ColoredDigraph, perm: &[usize]) -> ColoredDigraph {
    let edges = g.edges().iter().map(|e| ColoredEdge::new(perm[e.u - 1] + 1, perm[e.v - 1] + 1, e.color)).collect();
    ColoredDigraph::new(g.order(), edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn combinatorial_det_matches_laplace_expansion(g in graphs(8, 3)) {
        let laplace = det_laplace(adjacency_matrix(&g).as_matrix());
        prop_assert_eq!(GaussianRational::from(det_combinatorial(&g).unwrap()), laplace.clone());
        prop_assert_eq!(det_exact(&adjacency_matrix(&g)), laplace);
    }

    #[test]
    fn combinatorial_inverse_is_an_inverse(g in graphs(8, 3)) {
        let a = adjacency_matrix(&g).into_matrix();
        match inverse_combinatorial(&g) {
            Ok(inv) => {
                prop_assert_eq!(&a * &inv, Matrix::identity(g.order()));
                prop_assert!(inv.is_hermitian());
            }
            Err(_) => prop_assert!(det_laplace(&a).is_zero()),
        }
    }

    #[test]
    fn reversing_green_arcs_conjugates_the_inverse(g in graphs(7, 2)) {
        let h = g.with_green_reversed();
        prop_assert_eq!(det_combinatorial(&g).unwrap(), det_combinatorial(&h).unwrap());
        if let (Ok(a), Ok(b)) = (inverse_combinatorial(&g), inverse_combinatorial(&h)) {
            let conj = Matrix::from_fn(a.order(), |r, c| a.get(r, c).conj());
            prop_assert_eq!(conj, b);
        }
    }

    #[test]
    fn relabelling_preserves_det_and_shape(g in graphs(8, 2), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for k in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(k, (s >> 33) as usize % (k + 1));
        }
        let h = relabel(&g, &perm);
        prop_assert_eq!(det_combinatorial(&g).unwrap(), det_combinatorial(&h).unwrap());
        prop_assert_eq!(classify_shape(&g), classify_shape(&h));
    }

    #[test]
    fn cofactor_inverse_agrees_with_the_path_expansion(g in graphs(7, 2)) {
        let a = adjacency_matrix(&g).into_matrix();
        let det = det_laplace(&a);
        if !det.is_zero() {
            prop_assert_eq!(inverse_combinatorial(&g).unwrap(), inverse_by_cofactors(&a, &det));
        }
    }

    #[test]
    fn graph_files_round_trip(g in graphs(10, 3)) {
        prop_assert_eq!(parse_graph(&g.to_graph_file()).unwrap(), g);
    }

    #[test]
    fn unicyclic_predicates_match_the_oracle(g in graphs(12, 1).prop_filter("unicyclic in the model", |g| {
        classify_shape(g) == ShapeClass::Unicyclic && model_structure(g).is_ok()
    })) {
        check_predicates(&g, &Predicate::ALL)?;
    }

    #[test]
    fn bicyclic_invertibility_predicates_match_the_oracle(g in in_model_uni_or_bicyclic(10)) {
        check_predicates(&g, &[Predicate::Nonsingular, Predicate::ZeroDiagonal, Predicate::Unimodular])?;
    }
}

/// `adj(A) / det A` with every cofactor from the Laplace expansion.
fn inverse_by_cofactors(a: &Matrix, det: &GaussianRational) -> Matrix {
    let n = a.order();
    let inv_det = det.inv().expect("nonsingular");
    Matrix::from_fn(n, |r, c| {
        // entry (r, c) of the inverse is the (c, r) cofactor over det
        let minor = Matrix::from_fn(n - 1, |i, j| a.get(i + (i >= c) as usize, j + (j >= r) as usize).clone());
        let cof = det_laplace(&minor);
        let cof = if (r + c) % 2 == 0 { cof } else { -cof };
        &cof * &inv_det
    })
}

/// Ground truth from Laplace expansion only.
fn check_predicates(g: &ColoredDigraph, which: &[Predicate]) -> Result<(), TestCaseError> {
    let a = adjacency_matrix(g).into_matrix();
    let det = det_laplace(&a);
    let s = Structure::new(g).unwrap();
    let analysis = s.analyze(g);
    let inverse = if det.is_zero() { None } else { Some(inverse_by_cofactors(&a, &det)) };
    let zero_diagonal = inverse.as_ref().map(|m| m.diagonal().all(GaussianRational::is_zero));
    for v in analysis.verdicts() {
        if !which.contains(&v.predicate) {
            continue;
        }
        let truth = match v.predicate {
            Predicate::Nonsingular => Some(!det.is_zero()),
            Predicate::ZeroDiagonal => zero_diagonal,
            Predicate::Unimodular => Some(det.norm() == 1.into()),
            Predicate::InverseThreeColored => {
                inverse.as_ref().map(|m| m.entries().iter().all(GaussianRational::is_zero_or_unit))
            }
        };
        prop_assert_eq!(Some(v.holds), truth, "{} on\n{}", v.predicate, g.to_graph_file());
    }
    Ok(())
}
