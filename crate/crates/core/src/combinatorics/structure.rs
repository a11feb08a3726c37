use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{bits, full_mask, simple_cycles, ColoredDigraph, Cycle, Path, ShapeClass};

/// Beyond this many independent cycles the path and subgraph enumerations explode.
pub const MAX_COMBINATORIAL_CYCLOMATIC: usize = 8;

/// One elementary subgraph in compact form: its independent edges (0-based endpoints) and the
/// ids of its cycle components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Shape {
    pub edges: Vec<(u8, u8)>,
    pub cycles: Vec<u16>,
}

/// A simple path with everything its inverse-entry term needs that does not depend on colors.
#[derive(Clone, Debug)]
pub(crate) struct PathEntry {
    pub vertices: Vec<u8>,
    /// Index into [`PathTable::lists`] of the elementary subgraphs spanning `G - P`.
    pub rest: usize,
    /// `|P|` odd and `G - P` has a perfect matching.
    pub mm_alternating: bool,
}

impl PathEntry {
    pub fn to_path(&self) -> Path {
        Path::new(self.vertices.iter().map(|&v| v as usize + 1).collect())
    }
}

#[derive(Debug)]
pub(crate) struct PathTable {
    /// Paths from `i` to `j` (`i < j`, 0-based) at `i * n + j`, in lexicographic order.
    pub pairs: Vec<Vec<PathEntry>>,
    pub lists: Vec<Vec<Shape>>,
}

/// Everything about a graph that depends only on its underlying simple graph: cycles,
/// matchings, elementary subgraphs and paths. Colorings of one skeleton share a `Structure`,
/// and [`Structure::analyze`] adds the weights.
#[derive(Debug)]
pub struct Structure {
    n: usize,
    shape: ShapeClass,
    adj: Vec<u32>,
    cycles: Vec<Cycle>,
    cycle_vertices: Vec<Vec<u8>>,
    cycle_masks: Vec<u32>,
    cycles_at: Vec<Vec<u16>>,
    spanning: OnceLock<Vec<Shape>>,
    minors: OnceLock<Vec<Vec<Shape>>>,
    paths: OnceLock<PathTable>,
}

impl Structure {
    pub fn new(g: &ColoredDigraph) -> Result<Self> {
        if g.cyclomatic_number() > MAX_COMBINATORIAL_CYCLOMATIC {
            return Err(Error::Limit(format!(
                "combinatorial enumeration supports at most {MAX_COMBINATORIAL_CYCLOMATIC} independent cycles, graph has {}",
                g.cyclomatic_number()
            )));
        }
        let n = g.order();
        let adj = g.adjacency_masks().to_vec();
        let raw = simple_cycles(&adj);
        let mut cycles_at = vec![Vec::new(); n];
        for (id, c) in raw.iter().enumerate() {
            for &v in c {
                cycles_at[v].push(id as u16);
            }
        }
        // a bicyclic graph has two cycles when they share at most one vertex, three otherwise
        let shape = match g.cyclomatic_number() {
            0 => ShapeClass::Tree,
            1 => ShapeClass::Unicyclic,
            2 if raw.len() == 3 => ShapeClass::BicyclicTheta,
            2 => ShapeClass::BicyclicInfinity,
            k => ShapeClass::KCyclic(k),
        };
        Ok(Structure {
            n,
            shape,
            cycle_masks: raw.iter().map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect(),
            cycles: raw.iter().map(|c| Cycle::new(c.iter().map(|v| v + 1).collect())).collect(),
            cycle_vertices: raw.iter().map(|c| c.iter().map(|&v| v as u8).collect()).collect(),
            cycles_at,
            adj,
            spanning: OnceLock::new(),
            minors: OnceLock::new(),
            paths: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> ShapeClass {
        self.shape
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub(crate) fn cycle_vertices(&self, id: usize) -> &[u8] {
        &self.cycle_vertices[id]
    }

    pub(crate) fn cycle_mask(&self, id: usize) -> u32 {
        self.cycle_masks[id]
    }

    pub(crate) fn full(&self) -> u32 {
        full_mask(self.n)
    }

    pub(crate) fn adjacency(&self) -> &[u32] {
        &self.adj
    }

    /// Elementary subgraphs spanning exactly the vertices of `mask`.
    pub(crate) fn elementary(&self, mask: u32) -> Vec<Shape> {
        let mut out = Vec::new();
        let mut cur = Shape { edges: Vec::new(), cycles: Vec::new() };
        self.elementary_rec(mask, &mut cur, &mut out);
        out
    }

    fn elementary_rec(&self, mask: u32, cur: &mut Shape, out: &mut Vec<Shape>) {
        if mask == 0 {
            out.push(cur.clone());
            return;
        }
        // every component through the lowest uncovered vertex, all its other vertices are higher
        let v = mask.trailing_zeros() as usize;
        for u in bits(self.adj[v] & mask) {
            cur.edges.push((v as u8, u as u8));
            self.elementary_rec(mask & !(1 << v | 1 << u), cur, out);
            cur.edges.pop();
        }
        for &c in &self.cycles_at[v] {
            let cm = self.cycle_masks[c as usize];
            if cm & mask == cm {
                cur.cycles.push(c);
                self.elementary_rec(mask & !cm, cur, out);
                cur.cycles.pop();
            }
        }
    }

    pub(crate) fn matchings(&self, mask: u32) -> Vec<Vec<(u8, u8)>> {
        matchings(&self.adj, mask)
    }

    pub(crate) fn matching_count(&self, mask: u32) -> usize {
        matching_count(&self.adj, mask)
    }

    pub(crate) fn has_matching(&self, mask: u32) -> bool {
        has_matching(&self.adj, mask)
    }

    /// `m_0`, the number of perfect matchings.
    pub fn perfect_matching_count(&self) -> usize {
        self.matching_count(self.full())
    }

    /// Whether `G - Γ` has a perfect matching, for the cycle with the given index.
    pub fn is_independent(&self, cycle: usize) -> bool {
        self.has_matching(self.full() & !self.cycle_masks[cycle])
    }

    pub(crate) fn spanning(&self) -> &[Shape] {
        self.spanning.get_or_init(|| self.elementary(self.full()))
    }

    /// Elementary subgraphs spanning `G - v` for each 0-based `v`.
    pub(crate) fn minors(&self) -> &[Vec<Shape>] {
        self.minors.get_or_init(|| (0..self.n).map(|v| self.elementary(self.full() & !(1 << v))).collect())
    }

    pub(crate) fn paths(&self) -> &PathTable {
        self.paths.get_or_init(|| self.build_paths())
    }

    fn build_paths(&self) -> PathTable {
        let n = self.n;
        let mut pairs: Vec<Vec<PathEntry>> = vec![Vec::new(); n * n];
        let mut lists: Vec<Vec<Shape>> = Vec::new();
        let mut index: HashMap<u32, usize> = HashMap::new();
        let full = self.full();
        for s in 0..n {
            let mut stack = vec![s as u8];
            let mut found = Vec::new();
            self.walk(&mut stack, 1 << s, &mut found);
            for (verts, mask) in found {
                let rest_mask = full & !mask;
                let rest = *index.entry(rest_mask).or_insert_with(|| {
                    lists.push(self.elementary(rest_mask));
                    lists.len() - 1
                });
                let end = *verts.last().unwrap() as usize;
                let mm = (verts.len() - 1) % 2 == 1 && lists[rest].iter().any(|h| h.cycles.is_empty());
                pairs[s * n + end].push(PathEntry { vertices: verts, rest, mm_alternating: mm });
            }
        }
        PathTable { pairs, lists }
    }

    /// Every simple path starting with `stack`, ending at a vertex higher than the start.
    fn walk(&self, stack: &mut Vec<u8>, on: u32, found: &mut Vec<(Vec<u8>, u32)>) {
        let last = *stack.last().unwrap() as usize;
        for next in bits(self.adj[last] & !on) {
            stack.push(next as u8);
            if next > stack[0] as usize {
                found.push((stack.clone(), on | 1 << next));
            }
            self.walk(stack, on | 1 << next, found);
            stack.pop();
        }
    }
}

/// Perfect matchings of the subgraph induced on `mask`, each as sorted 0-based edges, in
/// lexicographic order.
pub(crate) fn matchings(adj: &[u32], mask: u32) -> Vec<Vec<(u8, u8)>> {
    fn rec(adj: &[u32], mask: u32, cur: &mut Vec<(u8, u8)>, out: &mut Vec<Vec<(u8, u8)>>) {
        if mask == 0 {
            out.push(cur.clone());
            return;
        }
        let v = mask.trailing_zeros() as usize;
        for u in bits(adj[v] & mask) {
            cur.push((v as u8, u as u8));
            rec(adj, mask & !(1 << v | 1 << u), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if mask.count_ones().is_multiple_of(2) {
        rec(adj, mask, &mut Vec::new(), &mut out);
    }
    out
}

pub(crate) fn matching_count(adj: &[u32], mask: u32) -> usize {
    fn rec(adj: &[u32], mask: u32) -> usize {
        if mask == 0 {
            return 1;
        }
        let v = mask.trailing_zeros() as usize;
        bits(adj[v] & mask).map(|u| rec(adj, mask & !(1 << v | 1 << u))).sum()
    }
    if mask.count_ones() % 2 == 1 {
        0
    } else {
        rec(adj, mask)
    }
}

pub(crate) fn has_matching(adj: &[u32], mask: u32) -> bool {
    fn rec(adj: &[u32], mask: u32) -> bool {
        if mask == 0 {
            return true;
        }
        let v = mask.trailing_zeros() as usize;
        bits(adj[v] & mask).any(|u| rec(adj, mask & !(1 << v | 1 << u)))
    }
    mask.count_ones().is_multiple_of(2) && rec(adj, mask)
}
