//! Matchings, elementary subgraphs, pegs and paths, and the determinant and inverse expansions
//! built from them.

mod analysis;
mod structure;

use std::fmt;

use serde::Serialize;

pub use analysis::Analysis;
pub(crate) use structure::Shape;
pub use structure::{Structure, MAX_COMBINATORIAL_CYCLOMATIC};

use crate::error::{Error, Result};
use crate::exact::{det_exact, principal_minor, Matrix};
use crate::graph::{adjacency_matrix, cycle_weight, full_mask, ColoredDigraph, Cycle, Path, Vertex};

/// Pairwise disjoint edges, each stored with its smaller endpoint first, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Matching {
    edges: Vec<(Vertex, Vertex)>,
}

impl Matching {
    /// Panics if two edges share a vertex.
    pub fn new(edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut edges: Vec<_> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        let mut seen: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 2 * edges.len(), "matching edges must be disjoint");
        Matching { edges }
    }

    pub(crate) fn from_compact(edges: &[(u8, u8)]) -> Self {
        Matching::new(edges.iter().map(|&(u, v)| (u as usize + 1, v as usize + 1)))
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// The vertex matched with `v`, if any.
    pub fn partner(&self, v: Vertex) -> Option<Vertex> {
        self.edges.iter().find_map(|&(a, b)| match v {
            _ if v == a => Some(b),
            _ if v == b => Some(a),
            _ => None,
        })
    }

    pub fn is_perfect(&self, g: &ColoredDigraph) -> bool {
        2 * self.edges.len() == g.order() && self.edges.iter().all(|&(u, v)| g.are_adjacent(u, v))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}{v}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Vertex-disjoint independent edges and cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementarySubgraph {
    pub independent_edges: Matching,
    pub cycles: Vec<Cycle>,
}

impl ElementarySubgraph {
    pub fn vertex_count(&self) -> usize {
        2 * self.independent_edges.len() + self.cycles.iter().map(Cycle::length).sum::<usize>()
    }

    /// `|S_H|`: independent edges plus cycles of weight exactly 1.
    pub fn singular_count(&self, g: &ColoredDigraph) -> usize {
        let unit = self.cycles.iter().filter(|c| cycle_weight(g, c) == crate::exact::Unit::ONE).count();
        self.independent_edges.len() + unit
    }

    /// `|C_H|`.
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub(crate) fn from_shape(s: &Structure, h: &Shape) -> Self {
        ElementarySubgraph {
            independent_edges: Matching::from_compact(&h.edges),
            cycles: h.cycles.iter().map(|&c| s.cycles()[c as usize].clone()).collect(),
        }
    }
}

/// A matching edge that is a peg on a cycle: a chord, or an edge with exactly one endpoint on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Peg {
    /// Endpoint on the cycle; for a chord, the smaller endpoint.
    pub on_cycle: Vertex,
    pub other: Vertex,
    pub chord: bool,
}

/// The pegs on `cycle` relative to `matching`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PegSet {
    pub cycle: Cycle,
    pub matching: Matching,
    pub pegs: Vec<Peg>,
}

impl PegSet {
    pub fn count(&self) -> usize {
        self.pegs.len()
    }

    /// Pegs with one endpoint off the cycle.
    pub fn outgoing(&self) -> usize {
        self.pegs.iter().filter(|p| !p.chord).count()
    }

    pub fn chords(&self) -> usize {
        self.pegs.iter().filter(|p| p.chord).count()
    }
}

/// Pegs on `cycle` relative to the perfect matching `m`.
pub fn pegs(m: &Matching, cycle: &Cycle) -> PegSet {
    let pegs = m
        .edges()
        .iter()
        .filter_map(|&(u, v)| match (cycle.contains(u), cycle.contains(v)) {
            (true, true) if cycle.has_edge(u, v) => None,
            (true, true) => Some(Peg { on_cycle: u, other: v, chord: true }),
            (true, false) => Some(Peg { on_cycle: u, other: v, chord: false }),
            (false, true) => Some(Peg { on_cycle: v, other: u, chord: false }),
            (false, false) => None,
        })
        .collect();
    PegSet { cycle: cycle.clone(), matching: m.clone(), pegs }
}

/// All perfect matchings in lexicographic order; a graph's empty vertex set has one, the empty
/// matching, but a [`ColoredDigraph`] always has vertices.
pub fn enumerate_perfect_matchings(g: &ColoredDigraph) -> Vec<Matching> {
    structure::matchings(g.adjacency_masks(), full_mask(g.order()))
        .iter()
        .map(|m| Matching::from_compact(m))
        .collect()
}

/// Whether `G - Γ` has a perfect matching; vacuously true when `Γ` covers every vertex.
pub fn is_independent_cycle(g: &ColoredDigraph, cycle: &Cycle) -> bool {
    structure::has_matching(g.adjacency_masks(), full_mask(g.order()) & !cycle.mask())
}

pub fn enumerate_spanning_elementary(g: &ColoredDigraph) -> Result<Vec<ElementarySubgraph>> {
    let s = Structure::new(g)?;
    Ok(s.spanning().iter().map(|h| ElementarySubgraph::from_shape(&s, h)).collect())
}

/// Whether no cycle of `h` has weight `±i`.
pub fn is_contributing(g: &ColoredDigraph, h: &ElementarySubgraph) -> bool {
    h.cycles.iter().all(|c| cycle_weight(g, c).is_real())
}

/// `det A(G)` from contributing spanning elementary subgraphs.
pub fn det_combinatorial(g: &ColoredDigraph) -> Result<i64> {
    let s = Structure::new(g)?;
    Ok(s.analyze(g).det())
}

pub fn det_bicyclic_formula(g: &ColoredDigraph) -> Result<i64> {
    let s = Structure::new(g)?;
    s.analyze(g).det_bicyclic_formula()
}

/// `A(G)^{-1}` from the path expansion: off-diagonal entries sum over `i⇝j` paths `P` such that
/// `G - P` has a contributing spanning elementary subgraph.
pub fn inverse_combinatorial(g: &ColoredDigraph) -> Result<Matrix> {
    let s = Structure::new(g)?;
    s.analyze(g).inverse()
}

/// Paths `u⇝v` alternating out of and into some perfect matching, first and last edge
/// matched, each with one such matching, in lexicographic order.
pub fn mm_alternating_paths(g: &ColoredDigraph, u: Vertex, v: Vertex) -> Result<Vec<(Path, Matching)>> {
    if u == v || !(1..=g.order()).contains(&u) || !(1..=g.order()).contains(&v) {
        return Err(Error::Precondition(format!("need two distinct vertices, got {u} and {v}")));
    }
    let s = Structure::new(g)?;
    Ok(s.mm_alternating(u, v))
}

impl Structure {
    /// See [`mm_alternating_paths`]; vertices are 1-based and distinct.
    pub fn mm_alternating(&self, u: Vertex, v: Vertex) -> Vec<(Path, Matching)> {
        let n = self.order();
        let (a, b) = (u.min(v) - 1, u.max(v) - 1);
        let table = self.paths();
        let mut out: Vec<(Path, Matching)> = table.pairs[a * n + b]
            .iter()
            .filter(|p| p.mm_alternating)
            .map(|p| {
                let path = p.to_path();
                let rest = self.full() & !path.mask();
                let mut edges: Vec<(u8, u8)> = p.vertices.chunks(2).map(|e| (e[0], e[1])).collect();
                edges.extend(self.matchings(rest).swap_remove(0));
                let path = if u < v { path } else { path.reversed() };
                (path, Matching::from_compact(&edges))
            })
            .collect();
        out.sort();
        out
    }
}

/// Whether `A(G)^{-1}` has zero diagonal, from the principal minors of the adjacency matrix.
pub fn zero_diagonal(g: &ColoredDigraph) -> Result<bool> {
    let a = adjacency_matrix(g);
    if det_exact(&a).is_zero() {
        return Err(Error::Singular);
    }
    Ok((1..=g.order()).all(|i| principal_minor(&a, i).is_zero()))
}
