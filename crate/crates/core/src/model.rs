//! The heterogeneous random hypergraph ensemble and its graph projection.
//!
//! Vertices are `0..n`. Each degree class `j` contributes every `d_j`-subset
//! independently with probability `p_j`; classes are independent of each other.

use std::collections::BTreeSet;

use num_traits::Float;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial_u64, unrank_combination};
use crate::error::{Error, Result};

/// A hyperedge or clique: strictly increasing vertex ids.
pub type VertexSet = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeClassSpec {
    pub degree: usize,
    pub exponent: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probability_override: Option<f64>,
}

impl DegreeClassSpec {
    pub fn new(degree: usize, exponent: f64) -> Result<Self> {
        let spec = Self {
            degree,
            exponent,
            probability_override: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_override(mut self, p: f64) -> Result<Self> {
        self.probability_override = Some(p);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree < 2 {
            return Err(Error::InvalidParams(format!(
                "class degree {} is below 2",
                self.degree
            )));
        }
        if !(self.exponent > 0.0 && self.exponent < 1.0) {
            return Err(Error::InvalidParams(format!(
                "exponent {} outside (0, 1)",
                self.exponent
            )));
        }
        if let Some(p) = self.probability_override {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParams(format!(
                    "probability override {p} outside [0, 1]"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub classes: Vec<DegreeClassSpec>,
}

impl ModelParams {
    pub fn new(n: usize, classes: Vec<DegreeClassSpec>) -> Result<Self> {
        let params = Self { n, classes };
        params.validate()?;
        Ok(params)
    }

    /// Shorthand for tests and examples: `(degree, exponent)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, f64)]) -> Result<Self> {
        let classes = pairs
            .iter()
            .map(|&(d, delta)| DegreeClassSpec::new(d, delta))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, classes)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParams(format!("n = {} is below 2", self.n)));
        }
        if self.classes.is_empty() {
            return Err(Error::InvalidParams("no degree classes".into()));
        }
        for c in &self.classes {
            c.validate()?;
            if c.degree > self.n {
                return Err(Error::InvalidParams(format!(
                    "class degree {} exceeds n = {}",
                    c.degree, self.n
                )));
            }
        }
        if self.classes.windows(2).any(|w| w[0].degree >= w[1].degree) {
            return Err(Error::InvalidParams(
                "class degrees must be strictly increasing".into(),
            ));
        }
        Ok(())
    }

    /// Same ensemble on a different vertex count.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(n, self.classes.clone())
    }

    pub fn class_index(&self, degree: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.degree == degree)
    }

    pub fn max_degree(&self) -> usize {
        self.classes.last().map_or(0, |c| c.degree)
    }

    /// δ* = max over classes of the density exponent.
    pub fn delta_star(&self) -> f64 {
        self.classes
            .iter()
            .map(|c| c.exponent)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.classes
            .iter()
            .map(|c| edge_probability(self.n, c))
            .collect()
    }
}

/// `min(1, n^(1 - d + δ))` in any float type.
pub fn density_probability<T: Float>(n: T, degree: usize, exponent: T) -> T {
    let d = T::from(degree).expect("degree representable");
    let p = n.powf(T::one() - d + exponent);
    p.min(T::one())
}

/// Per-hyperedge probability of a class: the override if present, else the density formula.
pub fn edge_probability(n: usize, spec: &DegreeClassSpec) -> f64 {
    match spec.probability_override {
        Some(p) => p,
        None => density_probability(n as f64, spec.degree, spec.exponent),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HyperedgeClass {
    pub spec: DegreeClassSpec,
    pub probability: f64,
    pub edges: BTreeSet<VertexSet>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hypergraph {
    pub n: usize,
    pub classes: Vec<HyperedgeClass>,
}

impl Hypergraph {
    /// Build from explicit hyperedges; every edge is sorted and checked against its class.
    pub fn from_edges(n: usize, classes: Vec<(DegreeClassSpec, f64, Vec<VertexSet>)>) -> Result<Self> {
        let mut out = Vec::with_capacity(classes.len());
        for (spec, probability, edges) in classes {
            let mut set = BTreeSet::new();
            for mut e in edges {
                e.sort_unstable();
                if e.len() != spec.degree || e.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::InvalidArgument(format!(
                        "hyperedge {e:?} does not have {} distinct vertices",
                        spec.degree
                    )));
                }
                if e.last().is_some_and(|&v| v >= n) {
                    return Err(Error::InvalidArgument(format!(
                        "hyperedge {e:?} has a vertex outside 0..{n}"
                    )));
                }
                set.insert(e);
            }
            out.push(HyperedgeClass {
                spec,
                probability,
                edges: set,
            });
        }
        Ok(Self { n, classes: out })
    }

    pub fn class_by_degree(&self, degree: usize) -> Option<&HyperedgeClass> {
        self.classes.iter().find(|c| c.spec.degree == degree)
    }

    pub fn edge_count(&self) -> usize {
        self.classes.iter().map(|c| c.edges.len()).sum()
    }

    pub fn all_edges(&self) -> impl Iterator<Item = &VertexSet> {
        self.classes.iter().flat_map(|c| c.edges.iter())
    }
}

/// Generator for one class: a ChaCha stream keyed by `(seed, class index)`.
pub fn class_rng(seed: u64, class_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(class_index as u64);
    rng
}

/// Draw one hypergraph from the ensemble.
///
/// Per class: the count `K ~ Binomial(C(n, d), p)`, then `K` distinct
/// `d`-subsets uniformly at random. Sparse draws use rejection against the set
/// of already drawn subsets; draws covering more than half of all candidates
/// sample ranks without replacement and unrank them.
pub fn sample_hypergraph(params: &ModelParams, seed: u64) -> Result<Hypergraph> {
    params.validate()?;
    let n = params.n;
    let mut classes = Vec::with_capacity(params.classes.len());
    for (j, spec) in params.classes.iter().enumerate() {
        let d = spec.degree;
        let total = binomial_u64(n as u64, d as u64)
            .filter(|&c| usize::try_from(c).is_ok())
            .ok_or(Error::InstanceTooLarge { n, d })?;
        let p = edge_probability(n, spec);
        let mut rng = class_rng(seed, j);
        let count = if p <= 0.0 {
            0
        } else if p >= 1.0 {
            total
        } else {
            Binomial::new(total, p)
                .map_err(|e| Error::InvalidParams(e.to_string()))?
                .sample(&mut rng)
        };
        let edges = draw_distinct_subsets(&mut rng, n, d, total, count);
        classes.push(HyperedgeClass {
            spec: spec.clone(),
            probability: p,
            edges,
        });
    }
    Ok(Hypergraph { n, classes })
}

fn draw_distinct_subsets<R: Rng>(
    rng: &mut R,
    n: usize,
    d: usize,
    total: u64,
    count: u64,
) -> BTreeSet<VertexSet> {
    let mut seen = BTreeSet::new();
    if count == 0 {
        return seen;
    }
    if count.saturating_mul(2) <= total {
        while (seen.len() as u64) < count {
            let mut s = index::sample(rng, n, d).into_vec();
            s.sort_unstable();
            seen.insert(s);
        }
    } else {
        for rank in index::sample(rng, total as usize, count as usize).iter() {
            seen.insert(unrank_combination(n, d, rank as u64));
        }
    }
    seen
}

/// Simple graph on `0..n` with O(1) adjacency queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedGraph {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
    neighbors: Vec<Vec<usize>>,
    edge_count: usize,
}

impl ProjectedGraph {
    pub fn empty(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        Self {
            n,
            words_per_row,
            bits: vec![0; words_per_row * n],
            neighbors: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Build from unordered pairs; duplicates are merged, self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a}, {b}) outside 0..{n}"
                )));
            }
            g.insert(a, b);
        }
        g.finish();
        Ok(g)
    }

    fn insert(&mut self, a: usize, b: usize) {
        if self.has_edge(a, b) {
            return;
        }
        self.bits[a * self.words_per_row + b / 64] |= 1 << (b % 64);
        self.bits[b * self.words_per_row + a / 64] |= 1 << (a % 64);
        self.neighbors[a].push(b);
        self.neighbors[b].push(a);
        self.edge_count += 1;
    }

    fn finish(&mut self) {
        for nb in &mut self.neighbors {
            nb.sort_unstable();
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.bits[a * self.words_per_row + b / 64] & (1 << (b % 64)) != 0
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Edges as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |a| {
            self.neighbors[a]
                .iter()
                .filter(move |&&b| b > a)
                .map(move |&b| (a, b))
        })
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }
}

/// Clique expansion: `{a, b}` is an edge iff some hyperedge contains both.
pub fn project(h: &Hypergraph) -> ProjectedGraph {
    let mut g = ProjectedGraph::empty(h.n);
    for e in h.all_edges() {
        for (i, &a) in e.iter().enumerate() {
            for &b in &e[i + 1..] {
                g.insert(a, b);
            }
        }
    }
    g.finish();
    g
}
