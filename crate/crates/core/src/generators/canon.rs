//! Canonical labelling of small simple graphs by colour refinement and individualization,
//! used to enumerate graphs up to isomorphism.

use crate::graph::bits;

/// Upper-triangle adjacency bits of the graph relabelled by `order`; equal for isomorphic
/// graphs once minimized over the search tree.
pub(crate) type Certificate = u128;

#[derive(Clone, Debug)]
pub(crate) struct Canonical {
    pub certificate: Certificate,
    /// `position[v]` is the canonical 0-based label of vertex `v`.
    pub position: Vec<usize>,
}

fn pair_index(n: usize, p: usize, q: usize) -> usize {
    debug_assert!(p < q && q < n);
    p * (2 * n - p - 1) / 2 + (q - p - 1)
}

pub(crate) fn certificate(adj: &[u32], position: &[usize]) -> Certificate {
    let n = adj.len();
    let mut cert = 0u128;
    for (v, &m) in adj.iter().enumerate() {
        for u in bits(m) {
            if u > v {
                let (p, q) = (position[v].min(position[u]), position[v].max(position[u]));
                cert |= 1u128 << pair_index(n, p, q);
            }
        }
    }
    cert
}

/// Splits cells by the multiset of neighbour colours until stable. Colours stay ordered: a
/// refined cell keeps the place of the cell it came from.
fn refine(adj: &[u32], colors: &mut [usize]) {
    let n = adj.len();
    let mut cells = count_cells(colors);
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = bits(adj[v]).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut rank = 0;
        for k in 0..n {
            if k > 0 && (sigs[k].0 != sigs[k - 1].0 || sigs[k].1 != sigs[k - 1].1) {
                rank += 1;
            }
            colors[sigs[k].2] = rank;
        }
        let now = rank + 1;
        if now == cells {
            break;
        }
        cells = now;
    }
    // ranks are dense; rebase so that cell colours are the position of their first member
    let mut sizes = vec![0usize; n];
    for &c in colors.iter() {
        sizes[c] += 1;
    }
    let mut start = vec![0usize; n];
    for c in 1..n {
        start[c] = start[c - 1] + sizes[c - 1];
    }
    for c in colors.iter_mut() {
        *c = start[*c];
    }
}

fn count_cells(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

pub(crate) fn canonical_form(adj: &[u32]) -> Canonical {
    let n = adj.len();
    let mut colors = vec![0usize; n];
    let mut best: Option<Canonical> = None;
    search(adj, &mut colors, &mut best);
    best.expect("search reaches at least one discrete partition")
}

fn search(adj: &[u32], colors: &mut [usize], best: &mut Option<Canonical>) {
    let n = adj.len();
    refine(adj, colors);
    // with colours as cell start positions, a cell is a singleton iff no other vertex shares it
    let mut size = vec![0usize; n];
    for &c in colors.iter() {
        size[c] += 1;
    }
    let target = (0..n).find(|&c| size[c] > 1);
    let Some(cell) = target else {
        let cert = certificate(adj, colors);
        if best.as_ref().is_none_or(|b| cert < b.certificate) {
            *best = Some(Canonical { certificate: cert, position: colors.to_vec() });
        }
        return;
    };
    let members: Vec<usize> = (0..n).filter(|&v| colors[v] == cell).collect();
    for (k, &v) in members.iter().enumerate() {
        // swapping twins is an automorphism fixing the partition: their subtrees agree
        let twin = members[..k].iter().any(|&u| adj[u] & !(1 << v) == adj[v] & !(1 << u));
        if twin {
            continue;
        }
        let mut next: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(u, &c)| if c == cell && u != v { 2 * c + 1 } else { 2 * c })
            .collect();
        search(adj, &mut next, best);
    }
}

/// The graph relabelled canonically, as 0-based adjacency masks.
pub(crate) fn relabel(adj: &[u32], position: &[usize]) -> Vec<u32> {
    let mut out = vec![0u32; adj.len()];
    for (v, &m) in adj.iter().enumerate() {
        for u in bits(m) {
            out[position[v]] |= 1 << position[u];
        }
    }
    out
}
