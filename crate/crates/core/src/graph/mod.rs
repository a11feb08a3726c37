//! 3-colored digraphs: red edges weigh `+1`, blue edges `-1`, and a green arc `u→v` puts `i`
//! at `(u, v)` and `-i` at `(v, u)` of the adjacency matrix.

mod cycles;
mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ModelError, Result};
use crate::exact::{GaussianRational, HermitianMatrix, Matrix, Unit};

pub use cycles::{
    cycle_weight, enumerate_cycles, in_model, path_weight, theta_paths, Cycle, Path, ThetaPaths,
};
pub use parse::parse_graph;
pub(crate) use cycles::simple_cycles;

/// Vertices are labelled `1..=n`, as in graph files.
pub type Vertex = usize;

/// Largest order accepted anywhere in the crate; every enumeration is exponential.
pub const MAX_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
    Green,
}

impl Color {
    pub fn code(self) -> char {
        match self {
            Color::Red => 'r',
            Color::Blue => 'b',
            Color::Green => 'g',
        }
    }

    pub fn from_code(c: &str) -> Option<Color> {
        match c {
            "r" => Some(Color::Red),
            "b" => Some(Color::Blue),
            "g" => Some(Color::Green),
            _ => None,
        }
    }
}

/// An edge `[u, v]`; for green edges this is the arc `u→v` of weight `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub color: Color,
}

impl ColoredEdge {
    pub fn new(u: Vertex, v: Vertex, color: Color) -> Self {
        ColoredEdge { u, v, color }
    }

    /// The adjacency entry at `(u, v)`.
    pub fn weight(&self) -> Unit {
        match self.color {
            Color::Red => Unit::ONE,
            Color::Blue => Unit::MINUS_ONE,
            Color::Green => Unit::I,
        }
    }

    fn key(&self) -> (Vertex, Vertex) {
        (self.u.min(self.v), self.u.max(self.v))
    }

    fn normalized(self) -> Self {
        if self.color != Color::Green && self.u > self.v {
            ColoredEdge { u: self.v, v: self.u, color: self.color }
        } else {
            self
        }
    }
}

/// A simple connected 3-colored digraph on vertices `1..=n`.
///
/// Edges are kept sorted by their unordered endpoint pair, red and blue edges with the
/// smaller endpoint first, so two graphs with the same edges compare equal regardless of the
/// order they were listed in.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredDigraph {
    order: usize,
    edges: Vec<ColoredEdge>,
    // 0-based neighbour bitmasks
    adj: Vec<u32>,
    // 0-based `a[r * n + c]`, `None` for non-adjacent pairs
    arcs: Vec<Option<Unit>>,
}

impl ColoredDigraph {
    pub fn new(order: usize, edges: Vec<ColoredEdge>) -> Result<Self> {
        if order == 0 {
            return Err(ModelError::NoVertices.into());
        }
        if order > MAX_ORDER {
            return Err(Error::Limit(format!("order {order} exceeds the supported maximum {MAX_ORDER}")));
        }
        let mut seen = vec![false; order * order];
        for e in &edges {
            for x in [e.u, e.v] {
                if !(1..=order).contains(&x) {
                    return Err(ModelError::VertexOutOfRange { vertex: x, order }.into());
                }
            }
            if e.u == e.v {
                return Err(ModelError::SelfLoop(e.u).into());
            }
            let (a, b) = e.key();
            if std::mem::replace(&mut seen[(a - 1) * order + (b - 1)], true) {
                return Err(ModelError::DuplicateEdge(a, b).into());
            }
        }
        let g = Self::assemble(order, edges);
        if !g.is_connected() {
            return Err(ModelError::Disconnected.into());
        }
        Ok(g)
    }

    /// Same vertex set and edge pairs, new colors. Skips validation: the skeleton is unchanged.
    pub(crate) fn recolored(&self, edges: Vec<ColoredEdge>) -> Self {
        debug_assert_eq!(edges.len(), self.edges.len());
        let g = Self::assemble(self.order, edges);
        debug_assert_eq!(g.adj, self.adj);
        g
    }

    fn assemble(order: usize, edges: Vec<ColoredEdge>) -> Self {
        let mut edges: Vec<ColoredEdge> = edges.into_iter().map(ColoredEdge::normalized).collect();
        edges.sort_by_key(|e| (e.key(), e.u));
        let mut adj = vec![0u32; order];
        let mut arcs = vec![None; order * order];
        for e in &edges {
            let (a, b) = (e.u - 1, e.v - 1);
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
            arcs[a * order + b] = Some(e.weight());
            arcs[b * order + a] = Some(e.weight().conj());
        }
        ColoredDigraph { order, edges, adj, arcs }
    }

    fn is_connected(&self) -> bool {
        let full = full_mask(self.order);
        let mut reached = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & !reached;
            reached |= new;
            frontier |= new;
        }
        reached == full
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[ColoredEdge] {
        &self.edges
    }

    /// Adjacency entry `a_uv`, or `None` when `u` and `v` are not adjacent.
    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<Unit> {
        if !(1..=self.order).contains(&u) || !(1..=self.order).contains(&v) {
            return None;
        }
        self.arcs[(u - 1) * self.order + (v - 1)]
    }

    pub fn are_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.weight(u, v).is_some()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        bits(self.adj[v - 1]).map(|b| b + 1)
    }

    /// `|E| - |V| + 1`.
    pub fn cyclomatic_number(&self) -> usize {
        self.edges.len() + 1 - self.order
    }

    pub fn colors(&self) -> impl Iterator<Item = Color> + '_ {
        self.edges.iter().map(|e| e.color)
    }

    /// The same graph with every green arc reversed; its adjacency matrix is the conjugate.
    pub fn with_green_reversed(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| match e.color {
                Color::Green => ColoredEdge::new(e.v, e.u, Color::Green),
                _ => *e,
            })
            .collect();
        self.recolored(edges)
    }

    /// Graph-file text that [`parse_graph`] reads back to an equal graph.
    pub fn to_graph_file(&self) -> String {
        let mut s = format!("n={}\n", self.order);
        for e in &self.edges {
            s.push_str(&format!("{} {} {}\n", e.u, e.v, e.color.code()));
        }
        s
    }

    pub(crate) fn adjacency_masks(&self) -> &[u32] {
        &self.adj
    }

    /// 0-based adjacency entry; the pair must be adjacent.
    pub(crate) fn arc(&self, a: usize, b: usize) -> Unit {
        self.arcs[a * self.order + b].expect("vertices are adjacent")
    }
}

impl fmt::Debug for ColoredDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> =
            self.edges.iter().map(|e| format!("{}{}{}", e.u, e.v, e.color.code())).collect();
        write!(f, "ColoredDigraph(n={}; {})", self.order, edges.join(" "))
    }
}

impl fmt::Display for ColoredDigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph_file())
    }
}

impl std::str::FromStr for ColoredDigraph {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Indices of the set bits, ascending.
pub(crate) fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// `A(G)`: `w_uv` at `(u, v)`, its conjugate at `(v, u)`, zero elsewhere.
pub fn adjacency_matrix(g: &ColoredDigraph) -> HermitianMatrix {
    let n = g.order;
    let m = Matrix::from_fn(n, |r, c| match g.arcs[r * n + c] {
        Some(w) => w.into(),
        None => GaussianRational::zero(),
    });
    HermitianMatrix::try_from(m).expect("adjacency matrix of a colored digraph is Hermitian")
}

/// Coarse structure of a connected graph by its cyclomatic number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeClass {
    Tree,
    Unicyclic,
    /// Two cycles sharing at most one vertex.
    BicyclicInfinity,
    /// Three cycles formed by three internally disjoint paths between two branch vertices.
    BicyclicTheta,
    /// `k >= 3` independent cycles.
    KCyclic(usize),
}

impl ShapeClass {
    pub fn is_bicyclic(self) -> bool {
        matches!(self, ShapeClass::BicyclicInfinity | ShapeClass::BicyclicTheta)
    }

    pub fn label(self) -> String {
        match self {
            ShapeClass::Tree => "tree".into(),
            ShapeClass::Unicyclic => "unicyclic".into(),
            ShapeClass::BicyclicInfinity => "bicyclic_infinity".into(),
            ShapeClass::BicyclicTheta => "bicyclic_theta".into(),
            ShapeClass::KCyclic(k) => format!("{k}_cyclic"),
        }
    }
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn classify_shape(g: &ColoredDigraph) -> ShapeClass {
    match g.cyclomatic_number() {
        0 => ShapeClass::Tree,
        1 => ShapeClass::Unicyclic,
        2 => {
            let cycles = enumerate_cycles(g);
            let theta = cycles.iter().enumerate().any(|(k, a)| {
                cycles[k + 1..]
                    .iter()
                    .any(|b| a.vertices().iter().filter(|v| b.contains(**v)).count() >= 2)
            });
            if theta {
                ShapeClass::BicyclicTheta
            } else {
                ShapeClass::BicyclicInfinity
            }
        }
        k => ShapeClass::KCyclic(k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::golden_theta;

    #[test]
    fn k2_adjacency() {
        let g = parse_graph("n=2; 1 2 r").unwrap();
        let a = adjacency_matrix(&g);
        assert_eq!(a.to_string(), "0+0*i 1+0*i\n1+0*i 0+0*i\n");
        assert_eq!(classify_shape(&g), ShapeClass::Tree);
    }

    #[test]
    fn green_arc_is_i_forward_and_minus_i_back() {
        let g = parse_graph("n=2\n1 2 g").unwrap();
        let a = adjacency_matrix(&g);
        assert_eq!(a[(0, 1)], GaussianRational::i());
        assert_eq!(a[(1, 0)], -GaussianRational::i());
        assert_eq!(g.weight(1, 2), Some(Unit::I));
        assert_eq!(g.weight(2, 1), Some(Unit::MINUS_I));
    }

    #[test]
    fn golden_theta_adjacency() {
        let a = adjacency_matrix(&golden_theta());
        assert_eq!(a[(3, 2)], GaussianRational::i());
        assert_eq!(a[(2, 3)], -GaussianRational::i());
        assert_eq!(a[(0, 1)], GaussianRational::one());
        assert!(a.diagonal().all(|z| z.is_zero()));
    }

    #[test]
    fn shapes() {
        let c4 = parse_graph("n=4; 1 2 r; 2 3 r; 3 4 r; 4 1 r").unwrap();
        assert_eq!(classify_shape(&c4), ShapeClass::Unicyclic);
        assert_eq!(classify_shape(&golden_theta()), ShapeClass::BicyclicTheta);
        let bowtie = parse_graph("n=5; 1 2 r; 2 3 r; 3 1 r; 3 4 r; 4 5 r; 5 3 r").unwrap();
        assert_eq!(classify_shape(&bowtie), ShapeClass::BicyclicInfinity);
        let dumbbell =
            parse_graph("n=6; 1 2 r; 2 3 r; 3 1 r; 3 4 r; 4 5 r; 5 6 r; 6 4 r").unwrap();
        assert_eq!(classify_shape(&dumbbell), ShapeClass::BicyclicInfinity);
        let k4 = parse_graph("n=4; 1 2 r; 1 3 r; 1 4 r; 2 3 r; 2 4 r; 3 4 r").unwrap();
        assert_eq!(classify_shape(&k4), ShapeClass::KCyclic(3));
    }

    #[test]
    fn equality_ignores_listing_order_but_not_green_direction() {
        let a = parse_graph("n=3; 1 2 r; 3 2 b; 1 3 g").unwrap();
        let b = parse_graph("n=3; 3 1 g; 2 3 b; 2 1 r").unwrap();
        assert_ne!(a, b);
        let c = parse_graph("n=3; 1 3 g; 2 3 b; 2 1 r").unwrap();
        assert_eq!(a, c);
        assert_eq!(a.with_green_reversed(), b);
    }

    #[test]
    fn order_limit() {
        let edges = (1..17).map(|v| ColoredEdge::new(v, v + 1, Color::Red)).collect();
        assert!(matches!(ColoredDigraph::new(17, edges), Err(Error::Limit(_))));
    }
}
