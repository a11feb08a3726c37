use super::structure::{PathEntry, Shape, Structure};
use crate::error::{Error, Result};
use crate::exact::{GaussianInteger, GaussianRational, Matrix, Unit};
use crate::graph::ColoredDigraph;

/// A [`Structure`] together with one coloring of its skeleton.
pub struct Analysis<'a> {
    structure: &'a Structure,
    graph: &'a ColoredDigraph,
    weights: Vec<Unit>,
}

impl Structure {
    /// `g` must have the skeleton this structure was built from.
    pub fn analyze<'a>(&'a self, g: &'a ColoredDigraph) -> Analysis<'a> {
        assert_eq!(g.adjacency_masks(), self.adjacency(), "graph does not match the structure");
        let weights = (0..self.cycles().len())
            .map(|id| {
                let vs = self.cycle_vertices(id);
                (0..vs.len()).map(|k| g.arc(vs[k] as usize, vs[(k + 1) % vs.len()] as usize)).product()
            })
            .collect();
        Analysis { structure: self, graph: g, weights }
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl<'a> Analysis<'a> {
    pub fn structure(&self) -> &'a Structure {
        self.structure
    }

    pub fn graph(&self) -> &'a ColoredDigraph {
        self.graph
    }

    /// Weight of the cycle `structure().cycles()[id]` along its canonical traversal.
    pub fn cycle_weight(&self, id: usize) -> Unit {
        self.weights[id]
    }

    /// Whether some cycle has weight `±i`.
    pub fn in_model(&self) -> bool {
        self.weights.iter().any(|w| w.is_imaginary())
    }

    pub(crate) fn is_contributing_shape(&self, h: &Shape) -> bool {
        h.cycles.iter().all(|&c| self.weights[c as usize].is_real())
    }

    /// `Σ (-1)^{|S_H|} 2^{|C_H|}` over the contributing members of `shapes`.
    pub(crate) fn shape_sum(&self, shapes: &[Shape]) -> i64 {
        shapes
            .iter()
            .filter(|h| self.is_contributing_shape(h))
            .map(|h| {
                let unit_cycles = h.cycles.iter().filter(|&&c| self.weights[c as usize] == Unit::ONE).count();
                sign(h.edges.len() + unit_cycles) << h.cycles.len()
            })
            .sum()
    }

    /// `det A(G)` as a signed sum over contributing spanning elementary subgraphs.
    pub fn det(&self) -> i64 {
        sign(self.structure.order()) * self.shape_sum(self.structure.spanning())
    }

    /// `det A(G - v)` for a 1-based vertex, by the same expansion.
    pub fn minor(&self, v: usize) -> i64 {
        sign(self.structure.order() - 1) * self.shape_sum(&self.structure.minors()[v - 1])
    }

    pub(crate) fn path_weight(&self, vertices: &[u8]) -> Unit {
        vertices.windows(2).map(|w| self.graph.arc(w[0] as usize, w[1] as usize)).product()
    }

    /// `det A(G) · A(G)^{-1}` row-major: off-diagonal entries summed over paths, diagonal
    /// entries from the vertex-deleted minors.
    pub fn adjugate(&self) -> Vec<GaussianInteger> {
        let n = self.structure.order();
        let table = self.structure.paths();
        let sums: Vec<i64> = table.lists.iter().map(|l| self.shape_sum(l)).collect();
        let mut out = vec![GaussianInteger::ZERO; n * n];
        for i in 0..n {
            out[i * n + i] = GaussianInteger::new(self.minor(i + 1) as i128, 0);
            for j in i + 1..n {
                let mut acc = GaussianInteger::ZERO;
                for p in &table.pairs[i * n + j] {
                    acc += self.path_term(p, sums[p.rest]);
                }
                out[i * n + j] = acc;
                // the j ⇝ i paths are the reversals, whose weights are conjugate
                let mut back = GaussianInteger::ZERO;
                for p in &table.pairs[i * n + j] {
                    back += self.path_term(p, sums[p.rest]).conj();
                }
                out[j * n + i] = back;
            }
        }
        out
    }

    /// `w(P) (-1)^{n-1} Σ_H (-1)^{|S_H|} 2^{|C_H|}`. The cyclic permutation along `P` has sign
    /// `(-1)^{|P|}` and `det A(G - P)` carries `(-1)^{n-|P|-1}`, so the path length cancels.
    fn path_term(&self, p: &PathEntry, rest_sum: i64) -> GaussianInteger {
        let coefficient = sign(self.structure.order() - 1) * rest_sum;
        self.path_weight(&p.vertices).to_gaussian_integer().scale(coefficient as i128)
    }

    /// `A(G)^{-1}` from the path expansion of its entries.
    pub fn inverse(&self) -> Result<Matrix> {
        let det = self.det();
        if det == 0 {
            return Err(Error::Singular);
        }
        let n = self.structure.order();
        let d = GaussianInteger::new(det as i128, 0);
        let entries = self
            .adjugate()
            .into_iter()
            .map(|z| GaussianRational::from_quotient(z, d).expect("nonzero determinant"))
            .collect();
        Ok(Matrix::new(n, entries))
    }

    /// Whether every `det A(G - v)` vanishes; the diagonal of the inverse is then zero.
    pub fn minors_vanish(&self) -> bool {
        (1..=self.structure.order()).all(|v| self.minor(v) == 0)
    }

    /// `m_0 (-1)^{n/2} - 2 Σ m_{1_i} Re w(Γ_i) (-1)^{(n+|Γ_i|)/2}`, the determinant of a bicyclic
    /// graph in which some cycle has imaginary weight.
    pub fn det_bicyclic_formula(&self) -> Result<i64> {
        let shape = self.structure.shape();
        if !shape.is_bicyclic() {
            return Err(Error::Shape { expected: "bicyclic", found: shape });
        }
        let s = self.structure;
        let n = s.order();
        let mut det = 0i64;
        if n.is_multiple_of(2) {
            det += s.perfect_matching_count() as i64 * sign(n / 2);
        }
        for (id, c) in s.cycles().iter().enumerate() {
            let re = self.weights[id].re();
            if re == 0 || (n + c.length()) % 2 == 1 {
                continue;
            }
            let m1 = s.matching_count(s.full() & !s.cycle_mask(id)) as i64;
            det -= 2 * m1 * re * sign((n + c.length()) / 2);
        }
        Ok(det)
    }
}
