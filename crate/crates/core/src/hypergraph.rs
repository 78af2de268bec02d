//! Uniform hypergraphs with explicit or predicate-backed edge sets.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::combin::{binom, for_each_subset};
use crate::error::{Error, Result};
use crate::extremal::ExtremalSpec;
use crate::vset::VertexSet;

/// Default cap on membership tests for enumerations over implicit backends.
pub const DEFAULT_ENUM_BUDGET: u64 = 100_000_000;

/// Anything that can answer "is this k-set an edge?".
pub trait EdgeOracle: Sync {
    fn uniformity(&self) -> u32;
    fn is_edge(&self, e: &VertexSet) -> bool;
}

/// A membership predicate together with a description of where it comes from.
#[derive(Clone)]
pub enum Structure {
    Complete,
    Extremal(ExtremalSpec),
    /// Every edge meets each part exactly once.
    KPartiteComplete { parts: Arc<Vec<VertexSet>> },
    /// Edges of `host` that meet each part exactly once.
    KPartiteRestricted { parts: Arc<Vec<VertexSet>>, host: Arc<Hypergraph> },
    /// `base` with each edge independently dropped by a seeded hash test.
    Thinned { base: Arc<Hypergraph>, threshold: u64, seed: u64 },
    /// `base` with explicit additions and deletions.
    Edited {
        base: Arc<Hypergraph>,
        added: Arc<BTreeSet<VertexSet>>,
        removed: Arc<BTreeSet<VertexSet>>,
    },
    Complement(Arc<Hypergraph>),
    /// Relabeled view: new vertex `i` is `map[i]` in `base`.
    Induced { base: Arc<Hypergraph>, map: Arc<Vec<u32>> },
}

impl Structure {
    pub fn descriptor(&self) -> &'static str {
        match self {
            Structure::Complete => "complete",
            Structure::Extremal(_) => "extremal-spec",
            Structure::KPartiteComplete { .. } => "k-partite-complete",
            Structure::KPartiteRestricted { .. } => "k-partite-restricted",
            Structure::Thinned { .. } => "thinned",
            Structure::Edited { .. } => "edited",
            Structure::Complement(_) => "complement",
            Structure::Induced { .. } => "induced",
        }
    }

    fn contains(&self, e: &VertexSet) -> bool {
        match self {
            Structure::Complete => true,
            Structure::Extremal(spec) => spec.contains(e),
            Structure::KPartiteComplete { parts } => {
                parts.iter().all(|p| p.intersection_len(e) == 1)
            }
            Structure::KPartiteRestricted { parts, host } => {
                parts.iter().all(|p| p.intersection_len(e) == 1) && host.contains_unchecked(e)
            }
            Structure::Thinned { base, threshold, seed } => {
                edge_hash(e, *seed) >= *threshold && base.contains_unchecked(e)
            }
            Structure::Edited { base, added, removed } => {
                if removed.contains(e) {
                    false
                } else {
                    added.contains(e) || base.contains_unchecked(e)
                }
            }
            Structure::Complement(base) => !base.contains_unchecked(e),
            Structure::Induced { base, map } => base.contains_unchecked(&e.map(map)),
        }
    }
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Structure::Extremal(spec) => write!(f, "Extremal({spec:?})"),
            other => f.write_str(other.descriptor()),
        }
    }
}

/// Seeded 64-bit hash of a vertex set (splitmix64 finalizer per word).
pub fn edge_hash(e: &VertexSet, seed: u64) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for &w in e.words() {
        h = splitmix(h ^ w);
    }
    splitmix(h)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone)]
enum Backend {
    Explicit(Arc<EdgeList>),
    Implicit(Structure),
}

struct EdgeList {
    edges: Vec<VertexSet>,
    index: HashSet<VertexSet>,
}

/// A k-uniform hypergraph on the vertex labels `0..n`.
#[derive(Clone)]
pub struct Hypergraph {
    n: u32,
    k: u32,
    backend: Backend,
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.backend {
            Backend::Explicit(list) => {
                write!(f, "Hypergraph(n={}, k={}, {} edges)", self.n, self.k, list.edges.len())
            }
            Backend::Implicit(s) => write!(f, "Hypergraph(n={}, k={}, {:?})", self.n, self.k, s),
        }
    }
}

fn check_dims(n: u32, k: u32) -> Result<()> {
    if k < 2 || k > n {
        return Err(Error::Size(format!("need 2 <= k <= n, got n={n}, k={k}")));
    }
    Ok(())
}

impl Hypergraph {
    /// Builds an explicit hypergraph; edges are canonicalized (sorted, deduplicated).
    pub fn explicit(n: u32, k: u32, edges: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        check_dims(n, k)?;
        let mut edges: Vec<VertexSet> = edges.into_iter().collect();
        for e in &edges {
            if e.len() != k as usize || e.last().is_some_and(|m| m >= n) {
                return Err(Error::BadEdge(e.clone()));
            }
        }
        edges.sort();
        edges.dedup();
        Ok(Self::from_sorted(n, k, edges))
    }

    fn from_sorted(n: u32, k: u32, edges: Vec<VertexSet>) -> Self {
        let index = edges.iter().cloned().collect();
        Hypergraph { n, k, backend: Backend::Explicit(Arc::new(EdgeList { edges, index })) }
    }

    pub fn implicit(n: u32, k: u32, structure: Structure) -> Result<Self> {
        check_dims(n, k)?;
        Ok(Hypergraph { n, k, backend: Backend::Implicit(structure) })
    }

    pub fn complete(n: u32, k: u32) -> Result<Self> {
        Self::implicit(n, k, Structure::Complete)
    }

    pub fn empty(n: u32, k: u32) -> Result<Self> {
        Self::explicit(n, k, std::iter::empty())
    }

    pub fn extremal(spec: &ExtremalSpec) -> Self {
        Hypergraph { n: spec.n, k: spec.k, backend: Backend::Implicit(Structure::Extremal(spec.clone())) }
    }

    /// The complete k-partite hypergraph on disjoint `parts` (one part per edge vertex).
    pub fn kpartite_complete(n: u32, parts: Vec<VertexSet>) -> Result<Self> {
        check_parts(n, &parts)?;
        Self::implicit(n, parts.len() as u32, Structure::KPartiteComplete { parts: Arc::new(parts) })
    }

    /// Edges of `host` that cross `parts`.
    pub fn kpartite_restricted(host: &Hypergraph, parts: Vec<VertexSet>) -> Result<Self> {
        check_parts(host.n, &parts)?;
        if parts.len() as u32 != host.k {
            return Err(Error::Size(format!("{} parts for a {}-graph", parts.len(), host.k)));
        }
        Self::implicit(
            host.n,
            host.k,
            Structure::KPartiteRestricted { parts: Arc::new(parts), host: Arc::new(host.clone()) },
        )
    }

    /// Drops each edge with probability `rate`, decided by a seeded hash of the edge.
    pub fn thinned(&self, rate: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&rate) {
            return Err(Error::Precondition(format!("deletion rate {rate} outside [0,1]")));
        }
        let threshold = if rate >= 1.0 { u64::MAX } else { (rate * 2f64.powi(64)) as u64 };
        Self::implicit(
            self.n,
            self.k,
            Structure::Thinned { base: Arc::new(self.clone()), threshold, seed },
        )
    }

    /// Adds and removes explicit edges. Explicit inputs stay explicit.
    pub fn edited(
        &self,
        added: impl IntoIterator<Item = VertexSet>,
        removed: impl IntoIterator<Item = VertexSet>,
    ) -> Result<Self> {
        let added: BTreeSet<VertexSet> = added.into_iter().collect();
        let removed: BTreeSet<VertexSet> = removed.into_iter().collect();
        for e in added.iter().chain(removed.iter()) {
            self.check_edge(e)?;
        }
        match &self.backend {
            Backend::Explicit(list) => {
                let mut edges: BTreeSet<VertexSet> = list.edges.iter().cloned().collect();
                edges.extend(added);
                for e in &removed {
                    edges.remove(e);
                }
                Ok(Self::from_sorted(self.n, self.k, edges.into_iter().collect()))
            }
            Backend::Implicit(_) => Self::implicit(
                self.n,
                self.k,
                Structure::Edited {
                    base: Arc::new(self.clone()),
                    added: Arc::new(added),
                    removed: Arc::new(removed),
                },
            ),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_explicit(&self) -> bool {
        matches!(self.backend, Backend::Explicit(_))
    }

    pub fn descriptor(&self) -> &'static str {
        match &self.backend {
            Backend::Explicit(_) => "explicit",
            Backend::Implicit(s) => s.descriptor(),
        }
    }

    pub fn structure(&self) -> Option<&Structure> {
        match &self.backend {
            Backend::Implicit(s) => Some(s),
            Backend::Explicit(_) => None,
        }
    }

    /// The extremal spec when this graph is a bare extremal predicate.
    pub fn as_extremal(&self) -> Option<&ExtremalSpec> {
        match &self.backend {
            Backend::Implicit(Structure::Extremal(s)) => Some(s),
            _ => None,
        }
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::range(self.n)
    }

    fn check_edge(&self, e: &VertexSet) -> Result<()> {
        if e.len() != self.k as usize || e.last().is_some_and(|m| m >= self.n) {
            return Err(Error::BadEdge(e.clone()));
        }
        Ok(())
    }

    fn check_subset(&self, s: &VertexSet) -> Result<()> {
        if s.last().is_some_and(|m| m >= self.n) {
            return Err(Error::Size(format!("{s} is not a subset of 0..{}", self.n)));
        }
        Ok(())
    }

    /// Membership; sets of the wrong size or out of range are never edges.
    pub fn contains(&self, e: &VertexSet) -> bool {
        self.check_edge(e).is_ok() && self.contains_unchecked(e)
    }

    /// Membership for a set already known to be a k-subset of `0..n`.
    #[inline]
    pub fn contains_unchecked(&self, e: &VertexSet) -> bool {
        match &self.backend {
            Backend::Explicit(list) => list.index.contains(e),
            Backend::Implicit(s) => s.contains(e),
        }
    }

    /// All edges in lexicographic order.
    pub fn edges(&self, budget: u64) -> Result<Vec<VertexSet>> {
        match &self.backend {
            Backend::Explicit(list) => Ok(list.edges.clone()),
            Backend::Implicit(_) => {
                charge(binom(self.n as i64, self.k as i64), budget)?;
                let all: Vec<u32> = (0..self.n).collect();
                let mut out = Vec::new();
                for_each_subset::<()>(&all, self.k as usize, |s| {
                    let e = VertexSet::from_slice(s);
                    if self.contains_unchecked(&e) {
                        out.push(e);
                    }
                    ControlFlow::Continue(())
                });
                Ok(out)
            }
        }
    }

    /// Borrowed edge list for explicit graphs.
    pub fn explicit_edges(&self) -> Option<&[VertexSet]> {
        match &self.backend {
            Backend::Explicit(list) => Some(&list.edges),
            Backend::Implicit(_) => None,
        }
    }

    pub fn edge_count(&self, budget: u64) -> Result<u128> {
        match &self.backend {
            Backend::Explicit(list) => Ok(list.edges.len() as u128),
            Backend::Implicit(Structure::Complete) => Ok(binom(self.n as i64, self.k as i64)),
            Backend::Implicit(_) => Ok(self.edges(budget)?.len() as u128),
        }
    }

    /// An explicit copy of this graph.
    pub fn materialize(&self, budget: u64) -> Result<Self> {
        if self.is_explicit() {
            return Ok(self.clone());
        }
        Ok(Self::from_sorted(self.n, self.k, self.edges(budget)?))
    }

    /// The link of `s`: all `(k-|s|)`-sets `t` disjoint from `s` with `s ∪ t` an edge.
    pub fn link(&self, s: &VertexSet, budget: u64) -> Result<Vec<VertexSet>> {
        let mut out = Vec::new();
        self.visit_link(s, budget, |t| {
            out.push(t.clone());
            ControlFlow::<()>::Continue(())
        })?;
        Ok(out)
    }

    pub fn degree(&self, s: &VertexSet, budget: u64) -> Result<u128> {
        let mut d = 0u128;
        self.visit_link(s, budget, |_| {
            d += 1;
            ControlFlow::<()>::Continue(())
        })?;
        Ok(d)
    }

    /// Walks the link of `s` in lexicographic order; the visitor may stop early.
    pub fn visit_link<B>(
        &self,
        s: &VertexSet,
        budget: u64,
        mut visit: impl FnMut(&VertexSet) -> ControlFlow<B>,
    ) -> Result<Option<B>> {
        self.check_subset(s)?;
        let j = s.len() as u32;
        if j >= self.k {
            return Err(Error::Size(format!("|S| = {j} must be below k = {}", self.k)));
        }
        match &self.backend {
            Backend::Explicit(list) => {
                for e in list.edges.iter().filter(|e| s.is_subset(e)) {
                    if let ControlFlow::Break(b) = visit(&e.difference(s)) {
                        return Ok(Some(b));
                    }
                }
                Ok(None)
            }
            Backend::Implicit(_) => {
                let r = (self.k - j) as usize;
                charge(binom((self.n - j) as i64, r as i64), budget)?;
                let pool: Vec<u32> = (0..self.n).filter(|v| !s.contains(*v)).collect();
                let mut e = s.clone();
                Ok(for_each_subset(&pool, r, |t| {
                    for &v in t {
                        e.insert(v);
                    }
                    let hit = self.contains_unchecked(&e);
                    for &v in t {
                        e.remove(v);
                    }
                    if hit {
                        visit(&VertexSet::from_slice(t))
                    } else {
                        ControlFlow::Continue(())
                    }
                }))
            }
        }
    }

    /// Minimum `ℓ`-degree; for `ℓ = 0` this is the number of edges.
    pub fn min_ell_degree(&self, ell: u32, budget: u64) -> Result<u128> {
        if ell >= self.k {
            return Err(Error::Size(format!("ell = {ell} must be below k = {}", self.k)));
        }
        if ell == 0 {
            return self.edge_count(budget);
        }
        let all: Vec<u32> = (0..self.n).collect();
        match &self.backend {
            Backend::Explicit(list) => {
                let mut counts: HashMap<VertexSet, u128> = HashMap::new();
                for e in &list.edges {
                    for_each_subset::<()>(&e.to_vec(), ell as usize, |s| {
                        *counts.entry(VertexSet::from_slice(s)).or_default() += 1;
                        ControlFlow::Continue(())
                    });
                }
                if (counts.len() as u128) < binom(self.n as i64, ell as i64) {
                    return Ok(0);
                }
                Ok(counts.values().copied().min().unwrap_or(0))
            }
            Backend::Implicit(_) => {
                let per = binom((self.n - ell) as i64, (self.k - ell) as i64);
                charge(binom(self.n as i64, ell as i64).saturating_mul(per), budget)?;
                let mut best = u128::MAX;
                for_each_subset::<()>(&all, ell as usize, |s| {
                    let d = self.degree(&VertexSet::from_slice(s), u64::MAX).unwrap_or(0);
                    best = best.min(d);
                    if best == 0 {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                Ok(best)
            }
        }
    }

    /// Induced subgraph on `u`, relabeled order-preservingly to `0..|u|`.
    ///
    /// The returned table maps each new label to its original label.
    pub fn restrict(&self, u: &VertexSet) -> Result<(Hypergraph, Vec<u32>)> {
        self.check_subset(u)?;
        let size = u.len() as u32;
        if size < self.k {
            return Err(Error::Size(format!("|U| = {size} is below k = {}", self.k)));
        }
        let table = u.to_vec();
        let g = match &self.backend {
            Backend::Explicit(list) => {
                let mut inverse = vec![u32::MAX; self.n as usize];
                for (i, &v) in table.iter().enumerate() {
                    inverse[v as usize] = i as u32;
                }
                // the order-preserving relabeling keeps the list sorted
                let edges = list.edges.iter().filter(|e| e.is_subset(u)).map(|e| e.map(&inverse)).collect();
                Self::from_sorted(size, self.k, edges)
            }
            Backend::Implicit(Structure::Complete) => Self::complete(size, self.k)?,
            Backend::Implicit(Structure::Extremal(spec)) => Self::extremal(&spec.restrict(u)),
            Backend::Implicit(_) => Self::implicit(
                size,
                self.k,
                Structure::Induced { base: Arc::new(self.clone()), map: Arc::new(table.clone()) },
            )?,
        };
        Ok((g, table))
    }

    /// The complement within all k-subsets of `0..n`.
    pub fn complement(&self) -> Hypergraph {
        let flipped = match &self.backend {
            Backend::Implicit(Structure::Extremal(spec)) => Structure::Extremal(spec.flipped()),
            Backend::Implicit(Structure::Complement(base)) => return (**base).clone(),
            _ => Structure::Complement(Arc::new(self.clone())),
        };
        Hypergraph { n: self.n, k: self.k, backend: Backend::Implicit(flipped) }
    }

    /// Serializes to the line-based text format (header `n k`, one edge per line).
    pub fn to_text(&self, budget: u64) -> Result<String> {
        let edges = self.edges(budget)?;
        let mut out = format!("{} {}\n", self.n, self.k);
        for e in edges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        Ok(out)
    }

    /// Parses the text format, rejecting anything that is not in canonical form.
    pub fn parse_text(text: &str) -> Result<Hypergraph> {
        let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        if !text.ends_with('\n') {
            return Err(perr(text.lines().count().max(1), "missing trailing newline"));
        }
        let mut lines = text.split_terminator('\n').enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
        let nums = parse_labels(header).ok_or_else(|| perr(1, "header must be `n k`"))?;
        let [n, k] = nums[..] else {
            return Err(perr(1, "header must be `n k`"));
        };
        check_dims(n, k).map_err(|e| perr(1, &e.to_string()))?;
        let mut edges: Vec<VertexSet> = Vec::new();
        for (no, line) in lines {
            if line.starts_with('#') {
                continue;
            }
            let vs = parse_labels(line).ok_or_else(|| perr(no, "expected labels separated by single spaces"))?;
            if vs.len() != k as usize {
                return Err(perr(no, &format!("expected {k} labels, found {}", vs.len())));
            }
            if vs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(perr(no, "labels must be strictly increasing"));
            }
            if vs[vs.len() - 1] >= n {
                return Err(perr(no, &format!("label out of range 0..{n}")));
            }
            let e = VertexSet::from_slice(&vs);
            if edges.last().is_some_and(|prev| *prev >= e) {
                return Err(perr(no, "edges must be strictly increasing in lexicographic order"));
            }
            edges.push(e);
        }
        Ok(Self::from_sorted(n, k, edges))
    }
}

fn parse_labels(line: &str) -> Option<Vec<u32>> {
    line.split(' ')
        .map(|tok| {
            if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) || (tok.len() > 1 && tok.starts_with('0')) {
                None
            } else {
                tok.parse().ok()
            }
        })
        .collect()
}

fn check_parts(n: u32, parts: &[VertexSet]) -> Result<()> {
    let mut seen = VertexSet::new();
    for p in parts {
        if !p.is_disjoint(&seen) || p.last().is_some_and(|m| m >= n) || p.is_empty() {
            return Err(Error::Size("parts must be non-empty, disjoint and inside 0..n".into()));
        }
        seen.union_with(p);
    }
    Ok(())
}

fn charge(cost: u128, budget: u64) -> Result<()> {
    if cost > budget as u128 {
        return Err(Error::BudgetExceeded { limit: budget });
    }
    Ok(())
}

impl EdgeOracle for Hypergraph {
    fn uniformity(&self) -> u32 {
        self.k
    }

    fn is_edge(&self, e: &VertexSet) -> bool {
        self.contains(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const B: u64 = DEFAULT_ENUM_BUDGET;

    fn vs(v: &[u32]) -> VertexSet {
        VertexSet::from_slice(v)
    }

    fn random_explicit(n: u32, k: u32, p: f64, seed: u64) -> Hypergraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let all = Hypergraph::complete(n, k).unwrap().edges(B).unwrap();
        Hypergraph::explicit(n, k, all.into_iter().filter(|_| rng.random_bool(p))).unwrap()
    }

    #[test]
    fn link_of_complete_and_empty() {
        let h = Hypergraph::complete(5, 3).unwrap();
        let l = h.link(&vs(&[0]), B).unwrap();
        assert_eq!(l.len(), 6);
        assert!(l.iter().all(|t| t.len() == 2 && !t.contains(0)));
        let e = Hypergraph::empty(5, 3).unwrap();
        assert!(e.link(&vs(&[0, 1]), B).unwrap().is_empty());
    }

    #[test]
    fn link_in_odd_family() {
        let spec = ExtremalSpec::new(6, 3, vs(&[0, 1, 2]), 1).unwrap();
        let h = Hypergraph::extremal(&spec);
        assert_eq!(h.link(&vs(&[0, 1]), B).unwrap(), vec![vs(&[2])]);
        // explicit copy agrees
        let x = h.materialize(B).unwrap();
        assert_eq!(x.link(&vs(&[0, 1]), B).unwrap(), vec![vs(&[2])]);
    }

    #[test]
    fn link_rejects_bad_sizes() {
        let h = Hypergraph::complete(5, 3).unwrap();
        assert!(matches!(h.link(&vs(&[0, 1, 2]), B), Err(Error::Size(_))));
        assert!(matches!(h.link(&vs(&[9]), B), Err(Error::Size(_))));
        let big = Hypergraph::complete(70, 7).unwrap();
        assert!(matches!(big.link(&VertexSet::new(), 1000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn min_degrees() {
        assert_eq!(Hypergraph::complete(6, 3).unwrap().min_ell_degree(2, B).unwrap(), 4);
        let spec = ExtremalSpec::new(6, 3, vs(&[0, 1, 2]), 1).unwrap();
        assert_eq!(Hypergraph::extremal(&spec).min_ell_degree(2, B).unwrap(), 1);
        assert_eq!(Hypergraph::extremal(&spec).materialize(B).unwrap().min_ell_degree(2, B).unwrap(), 1);
        for ell in 0..3 {
            assert_eq!(Hypergraph::empty(6, 3).unwrap().min_ell_degree(ell, B).unwrap(), 0);
        }
        assert_eq!(Hypergraph::complete(6, 3).unwrap().min_ell_degree(0, B).unwrap(), 20);
    }

    #[test]
    fn restrict_complete_and_extremal() {
        let (h, table) = Hypergraph::complete(6, 3).unwrap().restrict(&vs(&[1, 2, 4, 5])).unwrap();
        assert_eq!(table, vec![1, 2, 4, 5]);
        assert_eq!(h.edge_count(B).unwrap(), 4);
        let spec = ExtremalSpec::new(6, 3, vs(&[0, 1, 2]), 1).unwrap();
        let big = Hypergraph::extremal(&spec);
        let u = vs(&[0, 1, 3, 4]);
        let (small, table) = big.restrict(&u).unwrap();
        assert_eq!(small.as_extremal().unwrap().a, vs(&[0, 1]));
        for e in Hypergraph::complete(4, 3).unwrap().edges(B).unwrap() {
            assert_eq!(small.contains(&e), big.contains(&e.map(&table)));
        }
        assert!(matches!(big.restrict(&vs(&[0, 1])), Err(Error::Size(_))));
    }

    #[test]
    fn complement_basics() {
        let c = Hypergraph::complete(6, 3).unwrap().complement();
        assert_eq!(c.edge_count(B).unwrap(), 0);
        let spec = ExtremalSpec::new(6, 3, vs(&[0, 1]), 1).unwrap();
        let bar = Hypergraph::extremal(&spec).complement();
        assert_eq!(bar.as_extremal().unwrap().eta, 0);
    }

    #[test]
    fn double_complement_is_identity() {
        let h = random_explicit(8, 3, 0.5, 11);
        let cc = h.complement().complement();
        assert_eq!(cc.edges(B).unwrap(), h.edges(B).unwrap());
        // also through an explicit materialization of the complement
        let c = h.complement().materialize(B).unwrap();
        assert_eq!(c.complement().edges(B).unwrap(), h.edges(B).unwrap());
    }

    #[test]
    fn degree_plus_complement_degree_is_binomial() {
        let h = random_explicit(10, 4, 0.4, 3);
        let c = h.complement();
        for ell in 1..4u32 {
            let all: Vec<u32> = (0..10).collect();
            for_each_subset::<()>(&all, ell as usize, |s| {
                let s = VertexSet::from_slice(s);
                let total = h.degree(&s, B).unwrap() + c.degree(&s, B).unwrap();
                assert_eq!(total, binom(10 - ell as i64, 4 - ell as i64));
                ControlFlow::Continue(())
            });
        }
    }

    #[test]
    fn implicit_and_explicit_agree() {
        let base = random_explicit(12, 3, 0.6, 5);
        let spec = ExtremalSpec::new(12, 3, vs(&[0, 3, 5, 7, 8]), 0).unwrap();
        let parts = vec![vs(&[0, 1, 2, 3]), vs(&[4, 5, 6, 7]), vs(&[8, 9, 10, 11])];
        let graphs = vec![
            Hypergraph::extremal(&spec),
            Hypergraph::kpartite_complete(12, parts.clone()).unwrap(),
            Hypergraph::kpartite_restricted(&base, parts).unwrap(),
            Hypergraph::extremal(&spec).thinned(0.3, 9).unwrap(),
            Hypergraph::extremal(&spec).edited([vs(&[0, 1, 2])], [vs(&[0, 1, 3])]).unwrap(),
            base.complement(),
        ];
        for g in graphs {
            let x = g.materialize(B).unwrap();
            for e in Hypergraph::complete(12, 3).unwrap().edges(B).unwrap() {
                assert_eq!(g.contains(&e), x.contains(&e), "{g:?} on {e}");
            }
        }
    }

    #[test]
    fn thinning_is_seeded() {
        let h = Hypergraph::complete(12, 4).unwrap();
        let a = h.thinned(0.25, 1).unwrap().edge_count(B).unwrap();
        let b = h.thinned(0.25, 1).unwrap().edge_count(B).unwrap();
        assert_eq!(a, b);
        assert!((a as f64 - 495.0 * 0.75).abs() < 60.0);
        assert_eq!(h.thinned(1.0, 2).unwrap().edge_count(B).unwrap(), 0);
        assert_eq!(h.thinned(0.0, 2).unwrap().edge_count(B).unwrap(), 495);
    }

    #[test]
    fn text_roundtrip() {
        let h = random_explicit(9, 3, 0.3, 1);
        let text = h.to_text(B).unwrap();
        let back = Hypergraph::parse_text(&text).unwrap();
        assert_eq!(back.edges(B).unwrap(), h.edges(B).unwrap());
        assert_eq!(back.to_text(B).unwrap(), text);
    }

    #[test]
    fn text_parser_is_strict() {
        assert!(Hypergraph::parse_text("4 2\n0 1\n# note\n1 3\n").is_ok());
        let bad = [
            "4 2\n0 1",
            "4 2\n1 0\n",
            "4 2\n1 3\n0 1\n",
            "4 2\n0 1\n0 1\n",
            "4 2\n0  1\n",
            "4 2\n0 4\n",
            "4 2\n0 1 2\n",
            "4\n",
            "4 2\n\n",
        ];
        for text in bad {
            assert!(matches!(Hypergraph::parse_text(text), Err(Error::Parse { .. })), "{text:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn restrict_is_functorial(seed in 0u64..1000, mask1 in 0u32..4096, mask2 in 0u32..4096) {
            let n = 12;
            let h = random_explicit(n, 3, 0.5, seed);
            let u1: VertexSet = (0..n).filter(|v| mask1 >> v & 1 == 1).collect();
            let u2: VertexSet = (0..n).filter(|v| mask2 >> v & 1 == 1).collect();
            let both = u1.intersection(&u2);
            prop_assume!(both.len() >= 3);
            let (h1, t1) = h.restrict(&u1).unwrap();
            // u2 ∩ u1 expressed in the labels of h1
            let inner: VertexSet = t1.iter().enumerate().filter(|(_, v)| u2.contains(**v)).map(|(i, _)| i as u32).collect();
            let (h12, t12) = h1.restrict(&inner).unwrap();
            let (hd, td) = h.restrict(&both).unwrap();
            prop_assert_eq!(h12.edges(B).unwrap(), hd.edges(B).unwrap());
            let composed: Vec<u32> = t12.iter().map(|&i| t1[i as usize]).collect();
            prop_assert_eq!(composed, td);
        }
    }
}
