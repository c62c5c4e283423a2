//! Finite-n probabilities of implied hyperedges and of subgraphs of the projection.
//!
//! For a fixed vertex set `V` and a subset `V' ⊆ V`, the event "some hyperedge
//! contains all of `V'` and nothing else of `V`" depends on a set of candidate
//! hyperedges disjoint from that of any other subset of `V`. These events are
//! therefore independent, which makes the per-cover products below exact.

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::binomial_f64;
use crate::cover_oracle::{delta_profile, g_value, CoverTable, EdgeSet};
use crate::error::{Error, Result};
use crate::model::{edge_probability, sample_hypergraph, Hypergraph, ModelParams};
use crate::scalar::ext_to_f64;
use crate::seeds::derive_seed;

use num_traits::Float;

/// `1 - Π (1 - p_i)^{m_i}` over `(m_i, p_i)` pairs, computed through `ln_1p`/`exp_m1`.
pub fn union_probability<T: Float>(terms: impl IntoIterator<Item = (T, T)>) -> T {
    let mut log_miss = T::zero();
    for (count, p) in terms {
        if count <= T::zero() || p <= T::zero() {
            continue;
        }
        if p >= T::one() {
            return T::one();
        }
        log_miss = log_miss + count * (-p).ln_1p();
    }
    -log_miss.exp_m1()
}

/// Probability that some hyperedge contains a fixed `v_sub`-subset of a fixed
/// `v_total`-set and no other vertex of it, on `n` vertices:
/// `1 - Π_{j : d_j ≥ d'} (1 - p_j)^{C(n - |V|, d_j - d')}`.
///
/// Class probabilities are evaluated at this `n`. Returns 0 when no class has
/// degree at least `v_sub`.
pub fn implied_prob_exact(n: usize, v_total: usize, v_sub: usize, params: &ModelParams) -> Result<f64> {
    if v_sub < 2 || v_total < v_sub || n < v_total {
        return Err(Error::InvalidArgument(format!(
            "need 2 <= d' <= |V| <= n, got d' = {v_sub}, |V| = {v_total}, n = {n}"
        )));
    }
    let outside = (n - v_total) as u64;
    Ok(union_probability(
        params
            .classes
            .iter()
            .filter(|c| c.degree >= v_sub)
            .map(|c| {
                (
                    binomial_f64(outside, (c.degree - v_sub) as u64),
                    edge_probability(n, c),
                )
            }),
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbBounds {
    pub lower: f64,
    /// Sum over covers; may exceed one.
    pub upper_raw: f64,
    pub upper: f64,
}

/// Sandwich bounds on `P(E ⊂ ψ)` at `n` vertices.
///
/// `lower` is the best single cover's probability, `upper` the union bound over
/// all covers. Covers whose members exceed the largest class degree have
/// probability zero and are not enumerated.
pub fn subgraph_prob_bounds(e: &EdgeSet, n: usize, params: &ModelParams) -> Result<ProbBounds> {
    let k = e.vertices().len();
    if n < k {
        return Err(Error::InvalidArgument(format!(
            "edge set spans {k} vertices but n = {n}"
        )));
    }
    let cap = params.max_degree().min(k);
    let table = CoverTable::new(e, cap)?;
    let mut implied = vec![0.0; cap + 1];
    for (size, slot) in implied.iter_mut().enumerate().skip(2) {
        *slot = implied_prob_exact(n, k, size, params)?;
    }
    let mut lower = 0.0f64;
    let mut upper_raw = 0.0f64;
    for (signature, multiplicity) in table.signatures() {
        let p: f64 = signature.iter().map(|&s| implied[s]).product();
        lower = lower.max(p);
        upper_raw += multiplicity as f64 * p;
    }
    Ok(ProbBounds {
        lower,
        upper_raw,
        upper: upper_raw.min(1.0),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub hits: u64,
    pub trials: u64,
}

impl McEstimate {
    fn from_hits(hits: u64, trials: u64) -> Self {
        let p = hits as f64 / trials as f64;
        Self {
            estimate: p,
            stderr: (p * (1.0 - p) / trials as f64).sqrt(),
            hits,
            trials,
        }
    }
}

fn count_hits<F>(params: &ModelParams, trials: u64, seed: u64, event: F) -> Result<u64>
where
    F: Fn(&Hypergraph) -> bool + Sync,
{
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    (0..trials)
        .into_par_iter()
        .map(|t| sample_hypergraph(params, derive_seed(seed, &[t])).map(|h| u64::from(event(&h))))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

fn projection_contains(h: &Hypergraph, e: &EdgeSet) -> bool {
    let mut covered = vec![false; e.edges().len()];
    for he in h.all_edges() {
        for (i, &(a, b)) in e.edges().iter().enumerate() {
            if !covered[i] && he.binary_search(&a).is_ok() && he.binary_search(&b).is_ok() {
                covered[i] = true;
            }
        }
    }
    covered.into_iter().all(|c| c)
}

/// Fraction of sampled hypergraphs whose projection contains `E`.
pub fn mc_subgraph_prob(e: &EdgeSet, params: &ModelParams, trials: u64, seed: u64) -> Result<McEstimate> {
    if e.vertices().last().is_some_and(|&v| v >= params.n) {
        return Err(Error::InvalidArgument(format!(
            "edge set has a vertex outside 0..{}",
            params.n
        )));
    }
    let hits = count_hits(params, trials, seed, |h| projection_contains(h, e))?;
    Ok(McEstimate::from_hits(hits, trials))
}

/// Monte Carlo estimate of the implied-hyperedge event for `V = 0..v_total`,
/// `V' = 0..v_sub` on the ensemble's own `n`.
pub fn mc_implied_prob(
    v_total: usize,
    v_sub: usize,
    params: &ModelParams,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    if v_sub < 2 || v_total < v_sub || params.n < v_total {
        return Err(Error::InvalidArgument(format!(
            "need 2 <= d' <= |V| <= n, got d' = {v_sub}, |V| = {v_total}, n = {}",
            params.n
        )));
    }
    let hits = count_hits(params, trials, seed, |h| {
        h.all_edges().any(|he| {
            (0..v_sub).all(|v| he.binary_search(&v).is_ok())
                && (v_sub..v_total).all(|v| he.binary_search(&v).is_err())
        })
    })?;
    Ok(McEstimate::from_hits(hits, trials))
}

/// One row of the probability check table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbCheckRow {
    pub n: usize,
    /// `n^g(E, Δ)`, the rate the exponent predicts.
    pub formula: f64,
    pub mc_estimate: f64,
    pub stderr: f64,
    pub lower: f64,
    pub upper: f64,
}

pub const PROBCHECK_HEADER: &str = "n,formula,mc_estimate,stderr,lower,upper";

impl ProbCheckRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n, self.formula, self.mc_estimate, self.stderr, self.lower, self.upper
        )
    }
}

/// Compare rate prediction, exact bounds and simulation for each `n`.
pub fn probcheck(
    e: &EdgeSet,
    params: &ModelParams,
    n_grid: &[usize],
    trials: u64,
    seed: u64,
) -> Result<Vec<ProbCheckRow>> {
    let profile = delta_profile(params, e.vertices().len().max(2), None)?;
    let g = ext_to_f64(&g_value(e, &profile)?);
    n_grid
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let at_n = params.with_n(n)?;
            let bounds = subgraph_prob_bounds(e, n, &at_n)?;
            let mc = mc_subgraph_prob(e, &at_n, trials, derive_seed(seed, &[i as u64]))?;
            Ok(ProbCheckRow {
                n,
                formula: (n as f64).powf(g),
                mc_estimate: mc.estimate,
                stderr: mc.stderr,
                lower: bounds.lower,
                upper: bounds.upper,
            })
        })
        .collect()
}
