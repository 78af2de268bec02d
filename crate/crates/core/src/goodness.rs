//! Goodness of vertex sets against an extremal family, edit distance to the
//! family, and the bipartite link graph between ℓ-sets and (k−ℓ)-sets.

use std::collections::HashMap;
use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combin::{binom, for_each_subset, nonempty_subsets, subsets_of};
use crate::error::{Error, Result};
use crate::extremal::ExtremalSpec;
use crate::hypergraph::{Hypergraph, Structure};
use crate::vset::VertexSet;
use crate::Rational;

/// `deg_B(S)` for the family of `spec`, by a binomial sum.
pub fn extremal_degree(spec: &ExtremalSpec, s: &VertexSet) -> u128 {
    let (n, k, a) = (spec.n as i64, spec.k as i64, spec.a.len() as i64);
    let size = s.len() as i64;
    let j = s.intersection_len(&spec.a) as i64;
    (0..=k - size)
        .filter(|i| (i + j) % 2 == spec.eta as i64)
        .map(|i| binom(a - j, i) * binom(n - a - (size - j), k - size - i))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoodnessReport {
    pub set: VertexSet,
    /// `deg_{B∖H}(S) / C(n−|S|, k−|S|)`.
    #[serde(serialize_with = "ser_ratio")]
    pub alpha_star: Rational,
    pub missing: u128,
    pub extremal_degree: u128,
}

pub(crate) fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Rational", 2)?;
    st.serialize_field("num", r.numer())?;
    st.serialize_field("den", r.denom())?;
    st.end()
}

/// Counts the edges of `B` through `s` that are missing from `h`.
pub fn missing_degree(h: &Hypergraph, spec: &ExtremalSpec, s: &VertexSet, budget: u64) -> Result<u128> {
    if h.n() != spec.n || h.k() != spec.k {
        return Err(Error::Size("hypergraph and spec disagree on n or k".into()));
    }
    if s.len() >= spec.k as usize || s.last().is_some_and(|v| v >= spec.n) {
        return Err(Error::Size(format!("goodness needs |S| <= k-1 inside 0..n, got {s}")));
    }
    if let Some(edges) = h.explicit_edges() {
        let present = edges.iter().filter(|e| s.is_subset(e) && spec.contains(e)).count() as u128;
        return Ok(extremal_degree(spec, s) - present);
    }
    match h.structure() {
        Some(Structure::Extremal(own)) if own == spec => return Ok(0),
        Some(Structure::Edited { base, added, removed }) if base.as_extremal() == Some(spec) => {
            let gone = removed.iter().filter(|e| s.is_subset(e) && spec.contains(e) && !added.contains(e));
            return Ok(gone.count() as u128);
        }
        _ => {}
    }
    // enumerate the link of S in B and test each completion against H
    let r = spec.k as usize - s.len();
    let cost = binom(spec.n as i64 - s.len() as i64, r as i64);
    if cost > budget as u128 {
        return Err(Error::BudgetExceeded { limit: budget });
    }
    let pool: Vec<u32> = (0..spec.n).filter(|v| !s.contains(*v)).collect();
    let mut missing = 0u128;
    let mut e = s.clone();
    for_each_subset::<()>(&pool, r, |t| {
        e.extend(t.iter().copied());
        if spec.contains(&e) && !h.contains_unchecked(&e) {
            missing += 1;
        }
        for v in t {
            e.remove(*v);
        }
        ControlFlow::Continue(())
    });
    Ok(missing)
}

pub fn goodness(h: &Hypergraph, spec: &ExtremalSpec, s: &VertexSet, budget: u64) -> Result<GoodnessReport> {
    let missing = missing_degree(h, spec, s, budget)?;
    let denom = binom(spec.n as i64 - s.len() as i64, spec.k as i64 - s.len() as i64);
    Ok(GoodnessReport {
        set: s.clone(),
        alpha_star: Rational::new(missing as i128, denom as i128),
        missing,
        extremal_degree: extremal_degree(spec, s),
    })
}

pub fn is_good(h: &Hypergraph, spec: &ExtremalSpec, s: &VertexSet, alpha: Rational, budget: u64) -> Result<bool> {
    Ok(goodness(h, spec, s, budget)?.alpha_star <= alpha)
}

/// All `size`-sets whose goodness ratio exceeds `alpha`, in lexicographic order.
///
/// Explicit graphs and edits of the extremal family itself are handled in one
/// pass over their edges; other backends query every set.
pub fn not_good_sets(h: &Hypergraph, spec: &ExtremalSpec, size: u32, alpha: Rational, budget: u64) -> Result<Vec<VertexSet>> {
    if size == 0 || size >= spec.k {
        return Err(Error::Size(format!("goodness needs 1 <= |S| <= k-1, got {size}")));
    }
    let denom = binom(spec.n as i64 - size as i64, (spec.k - size) as i64) as i128;
    let bad = |missing: u128| Rational::new(missing as i128, denom) > alpha;
    let all = VertexSet::range(spec.n);
    let total = binom(spec.n as i64, size as i64);
    let mut out = Vec::new();
    if let Some(edges) = h.explicit_edges() {
        if total > budget as u128 {
            return Err(Error::BudgetExceeded { limit: budget });
        }
        let mut present: HashMap<VertexSet, u128> = HashMap::new();
        for e in edges.iter().filter(|e| spec.contains(e)) {
            for s in subsets_of(e, size as usize) {
                *present.entry(s).or_default() += 1;
            }
        }
        for s in subsets_of(&all, size as usize) {
            let have = present.get(&s).copied().unwrap_or(0);
            if bad(extremal_degree(spec, &s) - have) {
                out.push(s);
            }
        }
        return Ok(out);
    }
    match h.structure() {
        Some(Structure::Extremal(own)) if own == spec => return Ok(out),
        Some(Structure::Edited { base, added, removed }) if base.as_extremal() == Some(spec) => {
            let mut missing: HashMap<VertexSet, u128> = HashMap::new();
            for e in removed.iter().filter(|e| spec.contains(e) && !added.contains(e)) {
                for s in subsets_of(e, size as usize) {
                    *missing.entry(s).or_default() += 1;
                }
            }
            out.extend(missing.into_iter().filter(|(_, m)| bad(*m)).map(|(s, _)| s));
            out.sort();
            return Ok(out);
        }
        _ => {}
    }
    let per_set = binom(spec.n as i64 - size as i64, (spec.k - size) as i64);
    if total.saturating_mul(per_set) > budget as u128 {
        return Err(Error::BudgetExceeded { limit: budget });
    }
    for s in subsets_of(&all, size as usize) {
        if bad(missing_degree(h, spec, &s, budget)?) {
            out.push(s);
        }
    }
    Ok(out)
}

/// True when every non-empty subset of `s` is `alpha`-good.
pub fn typicality(h: &Hypergraph, spec: &ExtremalSpec, s: &VertexSet, alpha: Rational, budget: u64) -> Result<bool> {
    if alpha >= Rational::from_integer(1) {
        return Ok(true);
    }
    for sub in nonempty_subsets(s) {
        if !is_good(h, spec, &sub, alpha, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A threshold of the form `√x` compared exactly through squares.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootBound {
    pub square: Rational,
}

impl RootBound {
    /// `√(k^k ε)`.
    pub fn eps_prime(eps: Rational, k: u32) -> Self {
        RootBound { square: eps * Rational::from_integer((k as i128).pow(k)) }
    }

    /// `√(2^k α)`.
    pub fn alpha_prime(alpha: Rational, k: u32) -> Self {
        RootBound { square: alpha * Rational::from_integer(1i128 << k) }
    }

    /// `x ≤ √square`.
    pub fn admits(&self, x: Rational) -> bool {
        x <= Rational::from_integer(0) || x * x <= self.square
    }

    /// `x ≤ √square · y` for nonnegative `y`.
    pub fn admits_scaled(&self, x: Rational, y: Rational) -> bool {
        x <= Rational::from_integer(0) || x * x <= self.square * y * y
    }

    pub fn to_f64(&self) -> f64 {
        (*self.square.numer() as f64 / *self.square.denom() as f64).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosenessMode {
    Exact,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosenessReport {
    pub distance: u128,
    pub a: VertexSet,
    pub eta: u8,
    /// False for heuristic runs, whose distance is only an upper bound.
    pub exact: bool,
    pub partitions_examined: u64,
}

/// Size of the family `{e : |e ∩ A| ≡ eta}` when `|A| = a`.
fn family_size(n: u32, k: u32, a: u32, eta: u8) -> u128 {
    (0..=k as i64)
        .filter(|i| i % 2 == eta as i64)
        .map(|i| binom(a as i64, i) * binom((n - a) as i64, k as i64 - i))
        .sum()
}

/// `|H Δ B(A)|` for an explicit edge list.
pub fn distance_to(edges: &[VertexSet], n: u32, k: u32, a: &VertexSet, eta: u8) -> u128 {
    let inside = edges.iter().filter(|e| (e.intersection_len(a) % 2) as u8 == eta).count() as u128;
    edges.len() as u128 + family_size(n, k, a.len() as u32, eta) - 2 * inside
}

/// Minimum edit distance from `h` to a parity family over near-balanced bipartitions.
///
/// With `widen` every size of `A` is scanned instead of `⌈n/2⌉` only.
pub fn closeness(
    h: &Hypergraph,
    eta: u8,
    mode: ClosenessMode,
    widen: bool,
    seed: u64,
    budget: u64,
) -> Result<ClosenessReport> {
    let n = h.n();
    let k = h.k();
    let edges = h.edges(budget)?;
    let sizes: Vec<u32> = if widen { (0..=n).collect() } else { vec![n.div_ceil(2)] };
    match mode {
        ClosenessMode::Exact => {
            if n > 16 {
                return Err(Error::Size(format!("exact closeness scans bipartitions; n = {n} > 16")));
            }
            let all = VertexSet::range(n);
            let mut candidates = Vec::new();
            for &size in &sizes {
                candidates.extend(subsets_of(&all, size as usize));
            }
            let score = |a: &VertexSet| (distance_to(&edges, n, k, a, eta), a.clone());
            #[cfg(feature = "parallel")]
            let best = {
                use rayon::prelude::*;
                candidates.par_iter().map(score).min()
            };
            #[cfg(not(feature = "parallel"))]
            let best = candidates.iter().map(score).min();
            let (distance, a) = best.expect("at least one bipartition");
            Ok(ClosenessReport { distance, a, eta, exact: true, partitions_examined: candidates.len() as u64 })
        }
        ClosenessMode::Heuristic => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best: Option<(u128, VertexSet)> = None;
            let mut examined = 0u64;
            for start in 0..32 {
                let size = sizes[start % sizes.len()];
                let mut order: Vec<u32> = (0..n).collect();
                order.shuffle(&mut rng);
                let mut a: VertexSet = order[..size as usize].iter().copied().collect();
                let mut current = distance_to(&edges, n, k, &a, eta);
                examined += 1;
                // steepest descent over swaps of one A-vertex with one B-vertex
                loop {
                    let b = VertexSet::range(n).difference(&a);
                    let mut step: Option<(u128, VertexSet)> = None;
                    for u in a.iter() {
                        for v in b.iter() {
                            let mut next = a.clone();
                            next.remove(u);
                            next.insert(v);
                            let d = distance_to(&edges, n, k, &next, eta);
                            examined += 1;
                            if d < current && step.as_ref().is_none_or(|(sd, sa)| (d, &next) < (*sd, sa)) {
                                step = Some((d, next));
                            }
                        }
                    }
                    match step {
                        Some((d, next)) => {
                            current = d;
                            a = next;
                        }
                        None => break,
                    }
                }
                if best.as_ref().is_none_or(|(bd, ba)| (current, &a) < (*bd, ba)) {
                    best = Some((current, a));
                }
            }
            let (distance, a) = best.expect("32 starts");
            Ok(ClosenessReport { distance, a, eta, exact: false, partitions_examined: examined })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub n: u32,
    pub k: u32,
    pub ell: u32,
    pub left_size: u128,
    pub right_size: u128,
    pub min_left_degree: u128,
    pub min_right_degree: u128,
    /// Every ℓ-set has degree above `(1/2 − γ/2)·N′`.
    pub left_degree_bound: bool,
    /// Every (k−ℓ)-set has degree above `(1/2 − γ/2)·N`.
    pub right_degree_bound: bool,
    /// For each ℓ-set (lexicographic), how many ℓ-sets share at least `γN′` neighbours with it.
    pub overlap_counts: Vec<u64>,
    /// Number of (k−ℓ)-sets with degree at least `(1/2 + γ)·N`.
    pub heavy_right: u64,
    pub property_i: bool,
    pub property_ii: bool,
}

/// Degree and overlap profile of the bipartite link graph `G(H)`.
pub fn link_bigraph_probe(h: &Hypergraph, ell: u32, gamma: Rational, budget: u64) -> Result<ProbeReport> {
    let (n, k) = (h.n(), h.k());
    if ell == 0 || ell >= k {
        return Err(Error::Size(format!("need 1 <= ell <= k-1, got {ell}")));
    }
    let all = VertexSet::range(n);
    let lefts = subsets_of(&all, ell as usize);
    let rights = subsets_of(&all, (k - ell) as usize);
    let (big_n, big_n2) = (lefts.len(), rights.len());
    if (big_n as u128) * (big_n2 as u128) > budget as u128 {
        return Err(Error::BudgetExceeded { limit: budget });
    }
    let words = big_n2.div_ceil(64);
    let rows: Vec<Vec<u64>> = lefts
        .iter()
        .map(|l| {
            let mut row = vec![0u64; words];
            for (j, r) in rights.iter().enumerate() {
                if l.is_disjoint(r) && h.contains_unchecked(&l.union(r)) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    let left_deg: Vec<u128> = rows.iter().map(|r| r.iter().map(|w| w.count_ones() as u128).sum()).collect();
    let mut right_deg = vec![0u128; big_n2];
    for row in &rows {
        for (j, d) in right_deg.iter_mut().enumerate() {
            *d += (row[j / 64] >> (j % 64) & 1) as u128;
        }
    }
    let half = Rational::new(1, 2);
    let lower = half - gamma / 2;
    let above = |deg: u128, total: usize, bound: Rational| Rational::from_integer(deg as i128) > bound * total as i128;
    let at_least = |deg: u128, total: usize, bound: Rational| Rational::from_integer(deg as i128) >= bound * total as i128;
    let overlap_counts: Vec<u64> = rows
        .iter()
        .map(|a| {
            rows.iter()
                .filter(|b| {
                    let common: u128 = a.iter().zip(b.iter()).map(|(x, y)| (x & y).count_ones() as u128).sum();
                    at_least(common, big_n2, gamma)
                })
                .count() as u64
        })
        .collect();
    let heavy_right = right_deg.iter().filter(|&&d| at_least(d, big_n, half + gamma)).count() as u64;
    let min_overlap = overlap_counts.iter().copied().min().unwrap_or(0);
    Ok(ProbeReport {
        n,
        k,
        ell,
        left_size: big_n as u128,
        right_size: big_n2 as u128,
        min_left_degree: left_deg.iter().copied().min().unwrap_or(0),
        min_right_degree: right_deg.iter().copied().min().unwrap_or(0),
        left_degree_bound: left_deg.iter().all(|&d| above(d, big_n2, lower)),
        right_degree_bound: right_deg.iter().all(|&d| above(d, big_n, lower)),
        property_i: at_least(min_overlap as u128, big_n, half + gamma),
        property_ii: at_least(heavy_right as u128, big_n2, gamma * 2),
        overlap_counts,
        heavy_right,
    })
}
