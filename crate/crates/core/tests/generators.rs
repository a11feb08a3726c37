use std::collections::BTreeSet;

use tricolor::generators::{generate, generate_skeletons, ColoringMode, Family, FamilySpec, GreenOrientation};
use tricolor::graph::{classify_shape, ColoredDigraph};

fn degrees(g: &ColoredDigraph) -> Vec<usize> {
    let mut d: Vec<usize> = (1..=g.order()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

#[test]
fn unicyclic_four_is_the_square_and_the_paw() {
    let skeletons = generate_skeletons(&FamilySpec::exhaustive(Family::Unicyclic, 4)).unwrap();
    let shapes: BTreeSet<Vec<usize>> = skeletons.iter().map(degrees).collect();
    assert_eq!(shapes, BTreeSet::from([vec![1, 2, 2, 3], vec![2, 2, 2, 2]]));
}

#[test]
fn theta_four_is_k4_minus_an_edge() {
    let skeletons = generate_skeletons(&FamilySpec::exhaustive(Family::BicyclicTheta, 4)).unwrap();
    assert_eq!(skeletons.len(), 1);
    assert_eq!((skeletons[0].size(), degrees(&skeletons[0])), (5, vec![2, 2, 3, 3]));
}

#[test]
fn infinity_five_includes_the_bowtie() {
    let skeletons = generate_skeletons(&FamilySpec::exhaustive(Family::BicyclicInfinity, 5)).unwrap();
    assert!(skeletons.iter().any(|g| degrees(g) == vec![2, 2, 2, 2, 4]));
    assert!(skeletons.iter().all(|g| classify_shape(g) == Family::BicyclicInfinity.shape()));
}

/// Colorings of K4 minus an edge with some imaginary cycle, counted by brute force over all
/// 4^5 choices (red, blue, green either way) using the two triangles' weight exponents.
#[test]
fn theta_four_coloring_count() {
    // edges 12 13 23 24 34 (0-based pairs); triangles 1-2-3 and 2-3-4 share edge 23
    let triangles: [[(usize, bool); 3]; 2] = [[(0, true), (2, true), (1, false)], [(2, true), (4, true), (3, false)]];
    let mut expected_both = 0;
    let mut expected_canonical = 0;
    for code in 0..4usize.pow(5) {
        let c: Vec<usize> = (0..5).map(|k| code / 4usize.pow(k) % 4).collect();
        let exponent = |(e, forward): (usize, bool)| match c[e] {
            0 => 0,
            1 => 2,
            2 => if forward { 1 } else { 3 },
            _ => if forward { 3 } else { 1 },
        };
        // the third cycle's weight is the product of the two triangles' up to conjugation
        // of the shared edge, so it is imaginary only if one triangle is
        let imaginary = triangles.iter().any(|t| t.iter().map(|&a| exponent(a)).sum::<usize>() % 2 == 1);
        if imaginary {
            expected_both += 1;
            if c.iter().all(|&x| x != 3) {
                expected_canonical += 1;
            }
        }
    }
    let count = |green| {
        let spec = FamilySpec { coloring: ColoringMode::Exhaustive { green }, ..FamilySpec::exhaustive(Family::BicyclicTheta, 4) };
        generate(&spec).unwrap().count()
    };
    assert_eq!(count(GreenOrientation::Both), expected_both);
    assert_eq!(count(GreenOrientation::Canonical), expected_canonical);
}

#[test]
fn generated_instances_are_distinct_and_in_model() {
    let all: Vec<ColoredDigraph> = generate(&FamilySpec::exhaustive(Family::BicyclicInfinity, 6)).unwrap().collect();
    let distinct: BTreeSet<String> = all.iter().map(|g| g.to_graph_file()).collect();
    assert_eq!(distinct.len(), all.len());
    assert!(all.iter().all(tricolor::graph::in_model));
}

#[test]
fn sampling_depends_only_on_the_seed() {
    let draw = |seed| -> Vec<String> {
        generate(&FamilySpec::sampled(Family::BicyclicTheta, 9, 25, seed)).unwrap().map(|g| g.to_graph_file()).collect()
    };
    assert_eq!(draw(11), draw(11));
    assert_ne!(draw(11), draw(12));
    assert!(draw(11).len() == 25);
}
