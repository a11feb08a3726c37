//! Small unicyclic and bicyclic colored digraphs for sweeps: every skeleton up to isomorphism
//! (or every labelled one) with every coloring, or seeded random samples.

mod canon;

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, simple_cycles, Color, ColoredDigraph, ColoredEdge, ShapeClass};

/// Largest order for exhaustive colorings.
pub const MAX_EXHAUSTIVE_ORDER: usize = 12;
/// Largest order for sampled colorings.
pub const MAX_SAMPLED_ORDER: usize = 16;
/// Largest order for the labelled skeleton enumeration (`n!` relabellings per skeleton).
pub const MAX_LABELED_ORDER: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Unicyclic,
    BicyclicInfinity,
    BicyclicTheta,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Unicyclic, Family::BicyclicInfinity, Family::BicyclicTheta];

    pub fn shape(self) -> ShapeClass {
        match self {
            Family::Unicyclic => ShapeClass::Unicyclic,
            Family::BicyclicInfinity => ShapeClass::BicyclicInfinity,
            Family::BicyclicTheta => ShapeClass::BicyclicTheta,
        }
    }

    /// Extra edges over a spanning tree.
    fn extra_edges(self) -> usize {
        match self {
            Family::Unicyclic => 1,
            _ => 2,
        }
    }

    /// Smallest order with a member: `C_3`, `K_4` minus an edge, two triangles on a vertex.
    pub fn min_order(self) -> usize {
        match self {
            Family::Unicyclic => 3,
            Family::BicyclicTheta => 4,
            Family::BicyclicInfinity => 5,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.shape().label())
    }
}

/// Which of the two green arcs an exhaustive coloring tries on each edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GreenOrientation {
    /// Only `u→v` with `u < v`. Reversing every green arc conjugates the adjacency matrix,
    /// which leaves the determinant and the inverse's entry classes unchanged.
    Canonical,
    /// Both arcs, four colors per edge.
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum ColoringMode {
    Exhaustive { green: GreenOrientation },
    /// `count` random instances per order; the same seed gives the same instances.
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Labels {
    /// One skeleton per isomorphism class, canonically labelled.
    Canonical,
    /// Every labelled skeleton on `1..=n`.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub coloring: ColoringMode,
    pub require_in_model: bool,
    pub labels: Labels,
}

impl FamilySpec {
    pub fn exhaustive(family: Family, n: usize) -> Self {
        FamilySpec {
            family,
            n,
            coloring: ColoringMode::Exhaustive { green: GreenOrientation::Canonical },
            require_in_model: true,
            labels: Labels::Canonical,
        }
    }

    pub fn sampled(family: Family, n: usize, count: usize, seed: u64) -> Self {
        FamilySpec {
            family,
            n,
            coloring: ColoringMode::Sampled { count, seed },
            require_in_model: true,
            labels: Labels::Canonical,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (limit, what) = match self.coloring {
            ColoringMode::Exhaustive { .. } => (MAX_EXHAUSTIVE_ORDER, "exhaustive colorings"),
            ColoringMode::Sampled { .. } => (MAX_SAMPLED_ORDER, "sampled colorings"),
        };
        if self.n > limit {
            return Err(Error::Limit(format!("{what} support n <= {limit}, requested {}", self.n)));
        }
        if self.labels == Labels::All && self.n > MAX_LABELED_ORDER {
            return Err(Error::Limit(format!(
                "labelled skeletons support n <= {MAX_LABELED_ORDER}, requested {}",
                self.n
            )));
        }
        Ok(())
    }
}

fn graph_from_masks(adj: &[u32]) -> ColoredDigraph {
    let mut edges = Vec::new();
    for (v, &m) in adj.iter().enumerate() {
        for u in bits(m) {
            if u > v {
                edges.push(ColoredEdge::new(v + 1, u + 1, Color::Red));
            }
        }
    }
    ColoredDigraph::new(adj.len(), edges).expect("generated skeletons are simple and connected")
}

fn shape_of(adj: &[u32], extra: usize) -> ShapeClass {
    match (extra, simple_cycles(adj).len()) {
        (1, _) => ShapeClass::Unicyclic,
        (_, 3) => ShapeClass::BicyclicTheta,
        _ => ShapeClass::BicyclicInfinity,
    }
}

/// Canonical representatives of one isomorphism class each, keyed by certificate.
type Classes = BTreeMap<canon::Certificate, Vec<u32>>;

fn insert_canonical(classes: &mut Classes, adj: &[u32]) {
    let c = canon::canonical_form(adj);
    classes.entry(c.certificate).or_insert_with(|| canon::relabel(adj, &c.position));
}

fn trees(n: usize) -> Classes {
    let mut level: Classes = BTreeMap::new();
    insert_canonical(&mut level, &[0]);
    for k in 2..=n {
        let mut next = BTreeMap::new();
        for adj in level.values() {
            for v in 0..k - 1 {
                let mut grown = adj.clone();
                grown.push(1 << v);
                grown[v] |= 1 << (k - 1);
                insert_canonical(&mut next, &grown);
            }
        }
        level = next;
    }
    level
}

fn add_edge_everywhere(classes: &Classes) -> Classes {
    let mut out = BTreeMap::new();
    for adj in classes.values() {
        let n = adj.len();
        for v in 0..n {
            for u in v + 1..n {
                if adj[v] & (1 << u) == 0 {
                    let mut g = adj.clone();
                    g[v] |= 1 << u;
                    g[u] |= 1 << v;
                    insert_canonical(&mut out, &g);
                }
            }
        }
    }
    out
}

fn labeled_copies(adj: &[u32]) -> Vec<Vec<u32>> {
    fn next_permutation(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }
    let mut perm: Vec<usize> = (0..adj.len()).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    loop {
        let g = canon::relabel(adj, &perm);
        if seen.insert(g.clone()) {
            out.push(g);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// All-red skeletons of the requested family and order, in a fixed order.
pub fn generate_skeletons(spec: &FamilySpec) -> Result<Vec<ColoredDigraph>> {
    spec.validate()?;
    let n = spec.n;
    if n < spec.family.min_order() {
        return Ok(Vec::new());
    }
    let mut classes = trees(n);
    for _ in 0..spec.family.extra_edges() {
        classes = add_edge_everywhere(&classes);
    }
    let wanted = spec.family.shape();
    let skeletons = classes.values().filter(|adj| shape_of(adj, spec.family.extra_edges()) == wanted);
    Ok(match spec.labels {
        Labels::Canonical => skeletons.map(|adj| graph_from_masks(adj)).collect(),
        Labels::All => {
            let mut all: Vec<Vec<u32>> = skeletons.flat_map(|adj| labeled_copies(adj)).collect();
            all.sort();
            all.iter().map(|adj| graph_from_masks(adj)).collect()
        }
    })
}

/// Cycles of a skeleton as lists of (edge index, traversed from the smaller endpoint).
fn cycle_arcs(skeleton: &ColoredDigraph) -> Vec<Vec<(usize, bool)>> {
    let edges = skeleton.edges();
    let index = |a: usize, b: usize| {
        let (u, v) = (a.min(b) + 1, a.max(b) + 1);
        edges.iter().position(|e| (e.u.min(e.v), e.u.max(e.v)) == (u, v)).unwrap()
    };
    simple_cycles(skeleton.adjacency_masks())
        .iter()
        .map(|c| (0..c.len()).map(|k| (c[k], c[(k + 1) % c.len()])).map(|(a, b)| (index(a, b), a < b)).collect())
        .collect()
}

/// Color codes: 0 red, 1 blue, 2 green from the smaller endpoint, 3 green towards it.
fn exponent(code: u8, forward: bool) -> u32 {
    let e = match code {
        0 => 0,
        1 => 2,
        2 => 1,
        _ => 3,
    };
    if forward {
        e
    } else {
        (4 - e) % 4
    }
}

fn has_imaginary_cycle(cycles: &[Vec<(usize, bool)>], codes: &[u8]) -> bool {
    cycles.iter().any(|c| c.iter().map(|&(e, fwd)| exponent(codes[e], fwd)).sum::<u32>() % 2 == 1)
}

fn apply_codes(skeleton: &ColoredDigraph, codes: &[u8]) -> ColoredDigraph {
    let edges = skeleton
        .edges()
        .iter()
        .zip(codes)
        .map(|(e, &c)| {
            let (u, v) = (e.u.min(e.v), e.u.max(e.v));
            match c {
                0 => ColoredEdge::new(u, v, Color::Red),
                1 => ColoredEdge::new(u, v, Color::Blue),
                2 => ColoredEdge::new(u, v, Color::Green),
                _ => ColoredEdge::new(v, u, Color::Green),
            }
        })
        .collect();
    skeleton.recolored(edges)
}

/// Every coloring of one skeleton, in lexicographic order of edge colors
/// (red < blue < green forward < green backward, first edge most significant).
pub struct Colorings {
    skeleton: ColoredDigraph,
    cycles: Vec<Vec<(usize, bool)>>,
    base: u8,
    codes: Vec<u8>,
    done: bool,
    require_in_model: bool,
}

impl Iterator for Colorings {
    type Item = ColoredDigraph;

    fn next(&mut self) -> Option<ColoredDigraph> {
        while !self.done {
            let current = self.codes.clone();
            // odometer step, last edge fastest
            self.done = true;
            for k in (0..self.codes.len()).rev() {
                self.codes[k] += 1;
                if self.codes[k] < self.base {
                    self.done = false;
                    break;
                }
                self.codes[k] = 0;
            }
            if !self.require_in_model || has_imaginary_cycle(&self.cycles, &current) {
                return Some(apply_codes(&self.skeleton, &current));
            }
        }
        None
    }
}

pub fn exhaustive_colorings(skeleton: &ColoredDigraph, green: GreenOrientation, require_in_model: bool) -> Colorings {
    Colorings {
        skeleton: skeleton.clone(),
        cycles: cycle_arcs(skeleton),
        base: match green {
            GreenOrientation::Canonical => 3,
            GreenOrientation::Both => 4,
        },
        codes: vec![0; skeleton.size()],
        done: false,
        require_in_model,
    }
}

/// Attempts per sample before giving up on an in-model coloring (only skeletons without
/// cycles ever fail).
const MAX_ATTEMPTS: usize = 1000;

fn random_coloring(
    rng: &mut ChaCha8Rng,
    skeleton: &ColoredDigraph,
    cycles: &[Vec<(usize, bool)>],
    require_in_model: bool,
) -> Option<ColoredDigraph> {
    for _ in 0..MAX_ATTEMPTS {
        let codes: Vec<u8> = (0..skeleton.size()).map(|_| rng.gen_range(0..4)).collect();
        if !require_in_model || has_imaginary_cycle(cycles, &codes) {
            return Some(apply_codes(skeleton, &codes));
        }
    }
    None
}

/// `count` random colorings of one skeleton, each edge uniform over red, blue and both green
/// arcs (resampled until some cycle is imaginary when required).
pub fn sampled_colorings(
    skeleton: &ColoredDigraph,
    count: usize,
    seed: u64,
    require_in_model: bool,
) -> Vec<ColoredDigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cycles = cycle_arcs(skeleton);
    (0..count).map_while(|_| random_coloring(&mut rng, skeleton, &cycles, require_in_model)).collect()
}

/// Colorings of `skeleton` under `mode`.
pub fn colorize(
    skeleton: &ColoredDigraph,
    mode: ColoringMode,
    require_in_model: bool,
) -> Box<dyn Iterator<Item = ColoredDigraph>> {
    match mode {
        ColoringMode::Exhaustive { green } => Box::new(exhaustive_colorings(skeleton, green, require_in_model)),
        ColoringMode::Sampled { count, seed } => {
            Box::new(sampled_colorings(skeleton, count, seed, require_in_model).into_iter())
        }
    }
}

/// Uniform labelled tree from a random Prüfer sequence, as 0-based masks.
fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    let join = |adj: &mut Vec<u32>, a: usize, b: usize| {
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    };
    if n == 2 {
        join(&mut adj, 0, 1);
    }
    if n <= 2 {
        return adj;
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        join(&mut adj, leaf, s);
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    join(&mut adj, rest[0], rest[1]);
    adj
}

/// A random labelled skeleton of the family: random tree plus random extra edges, redrawn
/// until the shape matches.
fn random_skeleton(rng: &mut ChaCha8Rng, family: Family, n: usize) -> Vec<u32> {
    loop {
        let mut adj = random_tree(rng, n);
        let mut missing: Vec<(usize, usize)> =
            (0..n).flat_map(|v| (v + 1..n).map(move |u| (v, u))).filter(|&(v, u)| adj[v] & (1 << u) == 0).collect();
        missing.shuffle(rng);
        for &(v, u) in &missing[..family.extra_edges()] {
            adj[v] |= 1 << u;
            adj[u] |= 1 << v;
        }
        if shape_of(&adj, family.extra_edges()) == family.shape() {
            return adj;
        }
    }
}

/// The instances a spec describes. Exhaustive specs enumerate skeleton by skeleton; sampled
/// specs draw `count` labelled instances, skeleton and coloring together.
pub fn generate(spec: &FamilySpec) -> Result<Box<dyn Iterator<Item = ColoredDigraph>>> {
    spec.validate()?;
    match spec.coloring {
        ColoringMode::Exhaustive { green } => {
            let require = spec.require_in_model;
            let skeletons = generate_skeletons(spec)?;
            Ok(Box::new(skeletons.into_iter().flat_map(move |s| exhaustive_colorings(&s, green, require))))
        }
        ColoringMode::Sampled { count, seed } => {
            if spec.n < spec.family.min_order() {
                return Ok(Box::new(std::iter::empty()));
            }
            // one stream per order so that widening the order range keeps earlier samples
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(spec.n as u64);
            let mut out = Vec::with_capacity(count);
            while out.len() < count {
                let adj = random_skeleton(&mut rng, spec.family, spec.n);
                let skeleton = graph_from_masks(&adj);
                let cycles = cycle_arcs(&skeleton);
                if let Some(g) = random_coloring(&mut rng, &skeleton, &cycles, spec.require_in_model) {
                    out.push(g);
                }
            }
            Ok(Box::new(out.into_iter()))
        }
    }
}
