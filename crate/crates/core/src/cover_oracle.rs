//! Exact cover optimization over small edge sets.
//!
//! A cover of an edge set `E` spanning `V` is a family of subsets of `V`, each
//! with at least two vertices, whose internal pairs contain `E` and in which
//! every member covers some edge no other member covers. The exponent
//!
//! ```text
//! g(E, Δ) = max over covers U of  Σ_{u ∈ U} (1 + Δ_|u| - |u|)
//! ```
//!
//! is computed by enumerating every cover. Enumeration branches on the first
//! uncovered edge, tries every subset containing it, and abandons a branch the
//! moment an earlier member loses its last private edge (members never regain
//! private edges as the cover grows).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::{ModelParams, VertexSet};
use crate::scalar::{Ext, Scalar};

/// Largest vertex count the enumerator accepts.
pub const ORACLE_VERTEX_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSet {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl EdgeSet {
    /// Pairs are normalized to `a < b` and deduplicated; `V` is the set of endpoints.
    pub fn new<I>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {a}")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        let vertices: BTreeSet<usize> = set.iter().flat_map(|&(a, b)| [a, b]).collect();
        Ok(Self {
            vertices: vertices.into_iter().collect(),
            edges: set.into_iter().collect(),
        })
    }

    /// All pairs of `0..k`.
    pub fn complete(k: usize) -> Self {
        let mut e = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                e.push((a, b));
            }
        }
        Self::new(e).expect("no self-loops")
    }

    /// Star on `k` vertices: center `0`, leaves `1..k`.
    pub fn star(k: usize) -> Self {
        Self::new((1..k).map(|leaf| (0, leaf))).expect("no self-loops")
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// A family of vertex subsets, each sorted, kept in canonical (sorted) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cover {
    members: Vec<VertexSet>,
}

impl Cover {
    pub fn new(members: Vec<VertexSet>) -> Self {
        let mut members: Vec<VertexSet> = members
            .into_iter()
            .map(|mut m| {
                m.sort_unstable();
                m.dedup();
                m
            })
            .collect();
        members.sort();
        members.dedup();
        Self { members }
    }

    pub fn members(&self) -> &[VertexSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member sizes in ascending order; the value of a cover depends only on these.
    pub fn signature(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.members.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    pub fn value<T: Scalar>(&self, delta: &DeltaProfile<T>) -> Ext<T> {
        signature_value(&self.signature(), delta)
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str("{")?;
            for (j, v) in m.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// `Δ_ℓ` for `ℓ = 2..=max_size`; sizes outside that range read as `NegInf`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaProfile<T> {
    values: Vec<Ext<T>>,
}

impl<T: Scalar> DeltaProfile<T> {
    /// `values[0]` is `Δ_2`. Finite entries must lie in `(0, 1)`.
    pub fn new(values: Vec<Ext<T>>) -> Result<Self> {
        for v in values.iter().filter_map(Ext::finite) {
            if !(*v > T::zero() && *v < T::one()) {
                return Err(Error::InvalidArgument(format!(
                    "profile value {v} outside (0, 1)"
                )));
            }
        }
        Ok(Self { values })
    }

    /// `Δ_ℓ = max { δ_r : d_r ≥ ℓ }`, `NegInf` when no class qualifies, and
    /// `Δ_s = NegInf` when `exclude_at = Some(s)`.
    pub fn from_classes(classes: &[(usize, T)], max_size: usize, exclude_at: Option<usize>) -> Result<Self> {
        if max_size < 2 {
            return Err(Error::InvalidArgument(format!(
                "profile max size {max_size} below 2"
            )));
        }
        let values = (2..=max_size)
            .map(|size| {
                if exclude_at == Some(size) {
                    return Ext::NegInf;
                }
                classes
                    .iter()
                    .filter(|(d, _)| *d >= size)
                    .fold(Ext::NegInf, |acc, (_, delta)| acc.max(Ext::Finite(delta.clone())))
            })
            .collect();
        Self::new(values)
    }

    /// `Δ_ℓ = δ` for every size up to `max_size`.
    pub fn constant(delta: T, max_size: usize) -> Result<Self> {
        Self::new(vec![Ext::Finite(delta); max_size.saturating_sub(1)])
    }

    /// `Δ_ℓ = δ` for `ℓ < d` and `Δ_d = NegInf`: the profile that forbids
    /// covering `K_d` by the whole vertex set.
    pub fn without_full_clique(delta: T, d: usize) -> Result<Self> {
        let mut values = vec![Ext::Finite(delta); d.saturating_sub(2)];
        values.push(Ext::NegInf);
        Self::new(values)
    }

    pub fn max_size(&self) -> usize {
        self.values.len() + 1
    }

    pub fn get(&self, size: usize) -> Ext<T> {
        if size < 2 {
            return Ext::NegInf;
        }
        self.values.get(size - 2).cloned().unwrap_or(Ext::NegInf)
    }

    /// Copy with `Δ_size` replaced.
    pub fn with(&self, size: usize, value: Ext<T>) -> Result<Self> {
        let mut values = self.values.clone();
        if size < 2 {
            return Err(Error::InvalidArgument(format!("profile size {size} below 2")));
        }
        if values.len() < size - 1 {
            values.resize(size - 1, Ext::NegInf);
        }
        values[size - 2] = value;
        Self::new(values)
    }

    /// δ*: the largest finite entry.
    pub fn star_delta(&self) -> Ext<T> {
        self.values
            .iter()
            .cloned()
            .fold(Ext::NegInf, |acc, v| acc.max(v))
    }

    /// Every finite entry replaced by δ*; `NegInf` entries stay.
    pub fn flattened(&self) -> Self {
        let star = self.star_delta();
        Self {
            values: self
                .values
                .iter()
                .map(|v| if v.is_neg_inf() { Ext::NegInf } else { star.clone() })
                .collect(),
        }
    }

    /// Largest size with a finite entry, if any.
    pub fn largest_finite_size(&self) -> Option<usize> {
        self.values.iter().rposition(|v| !v.is_neg_inf()).map(|i| i + 2)
    }

    pub fn values(&self) -> &[Ext<T>] {
        &self.values
    }
}

/// Profile of an ensemble, optionally with one size forced to `NegInf`.
pub fn delta_profile(params: &ModelParams, max_size: usize, exclude_at: Option<usize>) -> Result<DeltaProfile<f64>> {
    let classes: Vec<(usize, f64)> = params.classes.iter().map(|c| (c.degree, c.exponent)).collect();
    DeltaProfile::from_classes(&classes, max_size, exclude_at)
}

fn signature_value<T: Scalar>(sizes: &[usize], delta: &DeltaProfile<T>) -> Ext<T> {
    sizes.iter().fold(Ext::zero(), |acc, &s| {
        acc + delta
            .get(s)
            .map(|d| T::one() + d - T::from_count(s))
    })
}

/// Local indexing of an edge set: vertices as bits, edges as bits.
struct Indexed {
    labels: Vec<usize>,
    /// `(i, j)` local endpoints per edge index
    edge_ends: Vec<(usize, usize)>,
    full: u32,
}

impl Indexed {
    fn new(e: &EdgeSet) -> Result<Self> {
        let k = e.vertices.len();
        if k > ORACLE_VERTEX_LIMIT {
            return Err(Error::OracleTooLarge {
                vertices: k,
                limit: ORACLE_VERTEX_LIMIT,
            });
        }
        let local = |v: usize| e.vertices.binary_search(&v).expect("endpoint in V");
        let edge_ends: Vec<(usize, usize)> = e.edges.iter().map(|&(a, b)| (local(a), local(b))).collect();
        let full = if edge_ends.is_empty() {
            0
        } else {
            u32::MAX >> (32 - edge_ends.len())
        };
        Ok(Self {
            labels: e.vertices.clone(),
            edge_ends,
            full,
        })
    }

    /// Edges of E whose endpoints both lie in the vertex mask.
    fn edge_mask(&self, vmask: u32) -> u32 {
        self.edge_ends
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| vmask & (1 << a) != 0 && vmask & (1 << b) != 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    fn vmask_of(&self, member: &[usize]) -> Option<u32> {
        member.iter().try_fold(0u32, |acc, v| {
            self.labels.binary_search(v).ok().map(|i| acc | (1 << i))
        })
    }

    fn members(&self, vmasks: &[u32]) -> Cover {
        Cover::new(
            vmasks
                .iter()
                .map(|&m| {
                    (0..self.labels.len())
                        .filter(|i| m & (1 << i) != 0)
                        .map(|i| self.labels[i])
                        .collect()
                })
                .collect(),
        )
    }
}

struct Enumerator<'a> {
    ix: &'a Indexed,
    /// `(vertex mask, edge mask)` of every admissible member
    candidates: Vec<(u32, u32)>,
    by_edge: Vec<Vec<usize>>,
    counts: Vec<u8>,
    chosen: Vec<usize>,
    found: BTreeSet<Vec<u32>>,
}

impl<'a> Enumerator<'a> {
    fn new(ix: &'a Indexed, size_cap: usize) -> Self {
        let k = ix.labels.len();
        let mut candidates = Vec::new();
        for vmask in 0u32..(1 << k) {
            let size = vmask.count_ones() as usize;
            if size < 2 || size > size_cap {
                continue;
            }
            let emask = ix.edge_mask(vmask);
            if emask != 0 {
                candidates.push((vmask, emask));
            }
        }
        let mut by_edge = vec![Vec::new(); ix.edge_ends.len()];
        for (ci, &(_, emask)) in candidates.iter().enumerate() {
            for (e, list) in by_edge.iter_mut().enumerate() {
                if emask & (1 << e) != 0 {
                    list.push(ci);
                }
            }
        }
        Self {
            ix,
            candidates,
            by_edge,
            counts: vec![0; ix.edge_ends.len()],
            chosen: Vec::new(),
            found: BTreeSet::new(),
        }
    }

    fn covered(&self) -> u32 {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    fn singly_covered(&self) -> u32 {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 1)
            .fold(0, |acc, (i, _)| acc | (1 << i))
    }

    fn every_member_has_private_edge(&self) -> bool {
        let once = self.singly_covered();
        self.chosen
            .iter()
            .all(|&ci| self.candidates[ci].1 & once != 0)
    }

    fn run(&mut self) {
        let covered = self.covered();
        if covered == self.ix.full {
            let mut key: Vec<u32> = self.chosen.iter().map(|&ci| self.candidates[ci].0).collect();
            key.sort_unstable();
            self.found.insert(key);
            return;
        }
        let first = (!covered & self.ix.full).trailing_zeros() as usize;
        for idx in 0..self.by_edge[first].len() {
            let ci = self.by_edge[first][idx];
            let emask = self.candidates[ci].1;
            self.apply(emask, true);
            self.chosen.push(ci);
            if self.every_member_has_private_edge() {
                self.run();
            }
            self.chosen.pop();
            self.apply(emask, false);
        }
    }

    fn apply(&mut self, emask: u32, add: bool) {
        for (e, c) in self.counts.iter_mut().enumerate() {
            if emask & (1 << e) != 0 {
                if add {
                    *c += 1;
                } else {
                    *c -= 1;
                }
            }
        }
    }
}

fn canonical_sort(covers: &mut [Cover]) {
    covers.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
}

/// Every valid cover of `e` whose members have at most `size_cap` vertices,
/// sorted by number of members, then lexicographically.
pub fn enumerate_covers(e: &EdgeSet, size_cap: usize) -> Result<Vec<Cover>> {
    let ix = Indexed::new(e)?;
    let mut en = Enumerator::new(&ix, size_cap);
    en.run();
    let mut covers: Vec<Cover> = en.found.iter().map(|key| ix.members(key)).collect();
    debug_assert!(covers.iter().all(|c| is_valid_cover(e, c)));
    canonical_sort(&mut covers);
    Ok(covers)
}

/// Covering and minimality, checked directly.
pub fn is_valid_cover(e: &EdgeSet, c: &Cover) -> bool {
    let Ok(ix) = Indexed::new(e) else {
        return false;
    };
    let mut emasks = Vec::with_capacity(c.len());
    for m in c.members() {
        if m.len() < 2 {
            return false;
        }
        match ix.vmask_of(m) {
            Some(vmask) => emasks.push(ix.edge_mask(vmask)),
            None => return false,
        }
    }
    let union = emasks.iter().fold(0u32, |acc, m| acc | m);
    if union != ix.full {
        return false;
    }
    (0..emasks.len()).all(|skip| {
        let rest = emasks
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .fold(0u32, |acc, (_, m)| acc | m);
        rest != ix.full
    })
}

/// All covers of an edge set, grouped by member-size signature so the
/// exponent can be evaluated cheaply for many profiles.
#[derive(Clone, Debug)]
pub struct CoverTable {
    covers: Vec<Cover>,
    signatures: BTreeMap<Vec<usize>, usize>,
}

impl CoverTable {
    pub fn new(e: &EdgeSet, size_cap: usize) -> Result<Self> {
        let covers = enumerate_covers(e, size_cap)?;
        let mut signatures = BTreeMap::new();
        for c in &covers {
            *signatures.entry(c.signature()).or_insert(0) += 1;
        }
        Ok(Self { covers, signatures })
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    /// Distinct member-size signatures with their multiplicities.
    pub fn signatures(&self) -> impl Iterator<Item = (&[usize], usize)> {
        self.signatures.iter().map(|(s, &c)| (s.as_slice(), c))
    }

    pub fn g<T: Scalar>(&self, delta: &DeltaProfile<T>) -> Ext<T> {
        self.signatures
            .keys()
            .map(|s| signature_value(s, delta))
            .fold(Ext::NegInf, Ext::max)
    }

    pub fn g_restricted<T: Scalar>(&self, delta: &DeltaProfile<T>, members: usize) -> Ext<T> {
        self.signatures
            .keys()
            .filter(|s| s.len() == members)
            .map(|s| signature_value(s, delta))
            .fold(Ext::NegInf, Ext::max)
    }

    /// First cover (canonical order) attaining the maximum, if any cover is finite.
    pub fn argmax<T: Scalar>(&self, delta: &DeltaProfile<T>) -> Option<&Cover> {
        let best = self.g(delta);
        if best.is_neg_inf() {
            return None;
        }
        self.covers.iter().find(|c| c.value(delta) == best)
    }
}

fn finite_cap<T: Scalar>(e: &EdgeSet, delta: &DeltaProfile<T>) -> usize {
    delta
        .largest_finite_size()
        .unwrap_or(0)
        .min(e.vertices().len())
}

/// `g(E, Δ)`; `NegInf` when every cover uses a size with `Δ = NegInf`.
pub fn g_value<T: Scalar>(e: &EdgeSet, delta: &DeltaProfile<T>) -> Result<Ext<T>> {
    // covers with a NegInf-sized member cannot win, so they are never generated
    Ok(CoverTable::new(e, finite_cap(e, delta))?.g(delta))
}

/// `g(E, Δ; M)`: the maximum over covers with exactly `m` members.
pub fn g_restricted<T: Scalar>(e: &EdgeSet, delta: &DeltaProfile<T>, m: usize) -> Result<Ext<T>> {
    let k = e.vertices().len();
    if m < 1 || m > k * k.saturating_sub(1) / 2 {
        return Err(Error::InvalidArgument(format!(
            "cover size {m} outside 1..=C({k}, 2)"
        )));
    }
    Ok(CoverTable::new(e, finite_cap(e, delta))?.g_restricted(delta, m))
}

/// `max { dδ - 2d + 3, C(d,2)(δ - 1) }`: the exponent of `K_d` without the full clique.
pub fn clique_g_closed_form<T: Scalar>(d: usize, delta: T) -> T {
    let dd = T::from_count(d);
    let clique_plus_star = dd.clone() * delta.clone() - T::from_count(2) * dd + T::from_count(3);
    let all_edges = T::from_count(d * (d - 1) / 2) * (delta - T::one());
    if clique_plus_star > all_edges {
        clique_plus_star
    } else {
        all_edges
    }
}

/// `(d - 1)(δ - 1)`: the exponent of a star on `d` vertices.
pub fn star_g_closed_form<T: Scalar>(d: usize, delta: T) -> T {
    T::from_count(d - 1) * (delta - T::one())
}

/// Convex-relaxation bound on `g(K_d, Δ; M)`:
/// `M(δ - 1) + 2 - (1 + sqrt(1 + 8(C(d,2) - M + 1))) / 2`.
pub fn relaxation_upper_bound<T: Float>(d: usize, delta: T, m: usize) -> T {
    let c = |x: usize| T::from(x).expect("count representable");
    let pairs = d * (d - 1) / 2;
    let mm = c(m);
    let radicand = T::one() + c(8) * (c(pairs) + T::one() - mm);
    mm * (delta - T::one()) + c(2) - (T::one() + radicand.sqrt()) / c(2)
}

/// Exact test of `value ≤ relaxation_upper_bound(d, δ, m)` without square roots.
///
/// With `r = 2(M(δ - 1) + 2 - value) - 1` the inequality reads `sqrt(s) ≤ r`,
/// i.e. `r ≥ 0` and `s ≤ r²`.
pub fn within_relaxation_bound<T: Scalar>(d: usize, delta: T, m: usize, value: T) -> bool {
    let pairs = d * (d - 1) / 2;
    let radicand = T::one() + T::from_count(8) * (T::from_count(pairs + 1) - T::from_count(m));
    let two = T::from_count(2);
    let r = two.clone() * (T::from_count(m) * (delta - T::one()) + two - value) - T::one();
    r >= T::zero() && radicand <= r.clone() * r
}
