//! Maximal-clique estimation of the hyperedges of one degree class.
//!
//! The estimate for degree `d` is the set of maximal cliques of the projected
//! graph that have exactly `d` vertices. Enumeration is pivoted Bron–Kerbosch
//! over a degeneracy ordering, cut off as soon as a branch can no longer reach
//! `d` vertices or has already passed them.

use std::collections::BTreeSet;

use crate::model::{ProjectedGraph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSet {
    pub size: usize,
    pub cliques: BTreeSet<VertexSet>,
}

impl CliqueSet {
    pub fn new(size: usize) -> Self {
        Self {
            size,
            cliques: BTreeSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.cliques.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexSet> {
        self.cliques.iter()
    }
}

/// Vertex order produced by repeatedly removing a minimum-degree vertex.
pub fn degeneracy_order(g: &ProjectedGraph) -> Vec<usize> {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
    for v in 0..n {
        buckets[degree[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut cursor = 0;
    while order.len() < n {
        // stale bucket entries are skipped; a vertex's true degree only drops
        while buckets[cursor].is_empty() {
            cursor += 1;
        }
        let v = buckets[cursor].pop().unwrap();
        if removed[v] || degree[v] != cursor {
            continue;
        }
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                buckets[degree[w]].push(w);
                cursor = cursor.min(degree[w]);
            }
        }
    }
    order
}

struct Search<'a> {
    g: &'a ProjectedGraph,
    target: usize,
    out: BTreeSet<VertexSet>,
}

impl Search<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>) {
        if r.len() == self.target {
            if p.is_empty() && x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                self.out.insert(c);
            }
            return;
        }
        if r.len() + p.len() < self.target || p.is_empty() {
            return;
        }
        let g = self.g;
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&w| g.has_edge(u, w)).count())
            .unwrap();
        let branch: Vec<usize> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
        let mut p = p;
        let mut x = x;
        for v in branch {
            let np: Vec<usize> = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            let nx: Vec<usize> = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            r.push(v);
            self.expand(r, np, nx);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
}

/// All maximal cliques of `g` with exactly `d` vertices.
///
/// Maximality is with respect to the whole graph: no vertex outside the clique
/// is adjacent to all of its members.
pub fn maximal_cliques_of_size(g: &ProjectedGraph, d: usize) -> CliqueSet {
    if d == 0 || d > g.n() {
        return CliqueSet::new(d);
    }
    let mut search = Search {
        g,
        target: d,
        out: BTreeSet::new(),
    };
    let order = degeneracy_order(g);
    let mut position = vec![0usize; g.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    for &v in &order {
        if g.degree(v) + 1 < d {
            // v can only sit in cliques smaller than d
            continue;
        }
        let (later, earlier): (Vec<usize>, Vec<usize>) = g
            .neighbors(v)
            .iter()
            .partition(|&&w| position[w] > position[v]);
        let mut r = vec![v];
        search.expand(&mut r, later, earlier);
    }
    CliqueSet {
        size: d,
        cliques: search.out,
    }
}

/// Estimate of the degree-`d` hyperedges from the projected graph.
pub fn recover(g: &ProjectedGraph, d: usize) -> CliqueSet {
    maximal_cliques_of_size(g, d)
}

/// True when `s` is a clique of `g` that no outside vertex extends.
pub fn is_maximal_clique(g: &ProjectedGraph, s: &[usize]) -> bool {
    g.is_clique(s) && (0..g.n()).all(|v| s.contains(&v) || !s.iter().all(|&w| g.has_edge(v, w)))
}
