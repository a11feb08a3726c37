use std::fmt;

use serde::{Serialize, Serializer};

use super::{bits, classify_shape, ColoredDigraph, ShapeClass, Vertex};
use crate::error::{Error, Result};
use crate::exact::Unit;

/// A simple cycle, stored starting at its lowest vertex and continuing towards the smaller of
/// that vertex's two cycle neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    vertices: Vec<Vertex>,
}

impl Cycle {
    /// Canonicalizes the traversal. Panics on fewer than three vertices or repeated vertices;
    /// adjacency is not checked here.
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        assert!(vertices.len() >= 3, "a cycle needs at least three vertices");
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), vertices.len(), "cycle vertices must be distinct");
        let start = (0..vertices.len()).min_by_key(|&k| vertices[k]).unwrap();
        vertices.rotate_left(start);
        if vertices[1] > vertices[vertices.len() - 1] {
            vertices[1..].reverse();
        }
        Cycle { vertices }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// `|Γ|`, the number of edges (equal to the number of vertices).
    pub fn length(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_even(&self) -> bool {
        self.length().is_multiple_of(2)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    /// Consecutive pairs along the canonical traversal, closing edge last.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |k| (self.vertices[k], self.vertices[(k + 1) % n]))
    }

    /// Whether `[u, v]` is one of the cycle's own edges.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.arcs().any(|(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    pub(crate) fn mask(&self) -> u32 {
        self.vertices.iter().fold(0, |m, &v| m | 1 << (v - 1))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.vertices))
    }
}

impl Serialize for Cycle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

/// A simple path `i⇝j`, kept in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    vertices: Vec<Vertex>,
}

impl Path {
    /// Panics on an empty or self-intersecting vertex sequence.
    pub fn new(vertices: Vec<Vertex>) -> Self {
        assert!(!vertices.is_empty(), "a path has at least one vertex");
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), vertices.len(), "path vertices must be distinct");
        Path { vertices }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// `|P|`, the number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.vertices.clone();
        v.reverse();
        Path { vertices: v }
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub(crate) fn mask(&self) -> u32 {
        self.vertices.iter().fold(0, |m, &v| m | 1 << (v - 1))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.vertices))
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

fn join(vs: &[Vertex]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Every simple cycle of the underlying graph given by 0-based neighbour masks, each as a
/// canonical 0-based vertex sequence, in lexicographic order.
pub(crate) fn simple_cycles(adj: &[u32]) -> Vec<Vec<usize>> {
    fn extend(adj: &[u32], start: usize, path: &mut Vec<usize>, on_path: u32, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        for next in bits(adj[last]) {
            if next == start {
                if path.len() >= 3 && path[1] < last {
                    out.push(path.clone());
                }
            } else if next > start && on_path & (1 << next) == 0 {
                path.push(next);
                extend(adj, start, path, on_path | 1 << next, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..adj.len() {
        let mut path = vec![s];
        extend(adj, s, &mut path, 1 << s, &mut out);
    }
    out.sort();
    out
}

/// All simple cycles of `g`'s underlying graph, canonicalized and sorted.
pub fn enumerate_cycles(g: &ColoredDigraph) -> Vec<Cycle> {
    simple_cycles(g.adjacency_masks())
        .into_iter()
        .map(|c| Cycle { vertices: c.into_iter().map(|v| v + 1).collect() })
        .collect()
}

/// Product of adjacency entries along the canonical traversal, closing edge included.
/// Reversing the traversal would give the conjugate.
///
/// Panics if some consecutive pair of `cycle` is not an edge of `g`.
pub fn cycle_weight(g: &ColoredDigraph, cycle: &Cycle) -> Unit {
    cycle.arcs().map(|(u, v)| g.weight(u, v).expect("cycle edge missing from graph")).product()
}

/// Product of adjacency entries from the first vertex of `path` to its last.
///
/// Panics if some consecutive pair of `path` is not an edge of `g`.
pub fn path_weight(g: &ColoredDigraph, path: &Path) -> Unit {
    path.arcs().map(|(u, v)| g.weight(u, v).expect("path edge missing from graph")).product()
}

/// Whether some cycle of `g` has weight `±i`.
pub fn in_model(g: &ColoredDigraph) -> bool {
    enumerate_cycles(g).iter().any(|c| cycle_weight(g, c).is_imaginary())
}

/// The two branch vertices of a θ-graph and the three edge-disjoint paths between them,
/// ordered by length and then by vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaPaths {
    pub i: Vertex,
    pub j: Vertex,
    pub paths: [Path; 3],
}

impl ThetaPaths {
    /// The cycles `P1∪P2`, `P1∪P3`, `P2∪P3`.
    pub fn cycles(&self) -> [Cycle; 3] {
        let join = |a: &Path, b: &Path| {
            let mut v = a.vertices().to_vec();
            let back = b.reversed();
            v.extend_from_slice(&back.vertices()[1..back.vertices().len() - 1]);
            Cycle::new(v)
        };
        let [p1, p2, p3] = &self.paths;
        [join(p1, p2), join(p1, p3), join(p2, p3)]
    }
}

pub fn theta_paths(g: &ColoredDigraph) -> Result<ThetaPaths> {
    let shape = classify_shape(g);
    if shape != ShapeClass::BicyclicTheta {
        return Err(Error::Shape { expected: "bicyclic_theta", found: shape });
    }
    // prune pendant trees down to the 2-core
    let adj = g.adjacency_masks();
    let mut alive = super::full_mask(g.order());
    loop {
        let leaf = bits(alive).find(|&v| (adj[v] & alive).count_ones() <= 1);
        match leaf {
            Some(v) => alive &= !(1 << v),
            None => break,
        }
    }
    let branch: Vec<usize> = bits(alive).filter(|&v| (adj[v] & alive).count_ones() == 3).collect();
    let [i, j] = branch[..] else {
        unreachable!("a theta core has exactly two vertices of degree three");
    };
    let mut paths: Vec<Path> = bits(adj[i] & alive)
        .map(|first| {
            let mut walk = vec![i, first];
            while *walk.last().unwrap() != j {
                let cur = *walk.last().unwrap();
                let prev = walk[walk.len() - 2];
                let next = bits(adj[cur] & alive & !(1 << prev)).next().unwrap();
                walk.push(next);
            }
            Path::new(walk.into_iter().map(|v| v + 1).collect())
        })
        .collect();
    paths.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
    let [p1, p2, p3]: [Path; 3] = paths.try_into().expect("three branch paths");
    Ok(ThetaPaths { i: i + 1, j: j + 1, paths: [p1, p2, p3] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::testing::golden_theta;

    #[test]
    fn canonical_cycle_form() {
        assert_eq!(Cycle::new(vec![3, 4, 1, 6, 5, 2]).vertices(), &[1, 4, 3, 2, 5, 6]);
        assert_eq!(Cycle::new(vec![4, 3, 2, 1]).vertices(), &[1, 2, 3, 4]);
        assert_eq!(Cycle::new(vec![2, 1, 3]), Cycle::new(vec![1, 2, 3]));
    }

    #[test]
    fn c4_has_one_cycle() {
        let g = parse_graph("n=4; 1 2 r; 2 3 r; 3 4 r; 4 1 r").unwrap();
        assert_eq!(enumerate_cycles(&g), vec![Cycle::new(vec![1, 2, 3, 4])]);
        assert_eq!(cycle_weight(&g, &enumerate_cycles(&g)[0]), Unit::ONE);
        assert!(!in_model(&g));
    }

    #[test]
    fn golden_theta_cycles() {
        let g = golden_theta();
        let cycles = enumerate_cycles(&g);
        let lengths: Vec<usize> = cycles.iter().map(Cycle::length).collect();
        assert_eq!(
            cycles,
            vec![
                Cycle::new(vec![1, 2, 3, 4]),
                Cycle::new(vec![1, 2, 5, 6]),
                Cycle::new(vec![1, 4, 3, 2, 5, 6]),
            ]
        );
        assert_eq!(lengths, vec![4, 4, 6]);
        assert!(cycle_weight(&g, &cycles[0]).is_imaginary());
        assert!(cycle_weight(&g, &cycles[1]).is_real());
        assert!(cycle_weight(&g, &cycles[2]).is_imaginary());
        assert!(in_model(&g));
    }

    #[test]
    fn one_green_triangle_is_imaginary() {
        let g = parse_graph("n=3; 1 2 g; 2 3 r; 3 1 r").unwrap();
        let c = &enumerate_cycles(&g)[0];
        assert!(cycle_weight(&g, c).is_imaginary());
    }

    #[test]
    fn path_weights_follow_direction() {
        let g = golden_theta();
        let p2 = Path::new(vec![3, 4, 1, 6]);
        assert_eq!(path_weight(&g, &p2), Unit::MINUS_I);
        assert_eq!(path_weight(&g, &p2.reversed()), Unit::I);
        assert_eq!(path_weight(&g, &Path::new(vec![1, 2])), Unit::ONE);
        assert_eq!(p2.length(), 3);
    }

    #[test]
    fn trees_are_never_in_model() {
        let g = parse_graph("n=4; 1 2 g; 2 3 g; 2 4 b").unwrap();
        assert!(enumerate_cycles(&g).is_empty());
        assert!(!in_model(&g));
    }

    #[test]
    fn theta_decomposition_of_golden_theta() {
        let t = theta_paths(&golden_theta()).unwrap();
        assert_eq!((t.i, t.j), (1, 2));
        let lengths: Vec<usize> = t.paths.iter().map(Path::length).collect();
        assert_eq!(lengths, vec![1, 3, 3]);
        let mut from_paths: Vec<Cycle> = t.cycles().to_vec();
        from_paths.sort();
        assert_eq!(from_paths, enumerate_cycles(&golden_theta()));
    }

    #[test]
    fn theta_with_pendant_trees() {
        // three paths 1-2, 1-3-2, 1-4-5-2 plus pendants hanging off the core
        let g = parse_graph("n=8; 1 2 r; 1 3 r; 3 2 r; 1 4 r; 4 5 r; 5 2 r; 3 6 r; 6 7 r; 5 8 r").unwrap();
        let t = theta_paths(&g).unwrap();
        assert_eq!(t.paths[0].vertices(), &[1, 2]);
        assert_eq!(t.paths[1].vertices(), &[1, 3, 2]);
        assert_eq!(t.paths[2].vertices(), &[1, 4, 5, 2]);
    }

    #[test]
    fn theta_paths_rejects_other_shapes() {
        let g = parse_graph("n=4; 1 2 r; 2 3 r; 3 4 r; 4 1 r").unwrap();
        assert!(matches!(theta_paths(&g), Err(Error::Shape { .. })));
    }
}
