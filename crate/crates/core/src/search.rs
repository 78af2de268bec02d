//! Exhaustive backtracking deciders for matchings, Hamilton cycles and paths,
//! connectors, absorbers and wrong-parity edge pairs.
//!
//! Every decider distinguishes a definitive "none" (search space exhausted)
//! from "unknown" (budget ran out first).

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Duration;

use serde::Serialize;

use crate::combin::{binom, for_each_subset};
use crate::cycle::{validate_path, Matching, SegCycle, SegPath};
use crate::error::{Error, Result};
use crate::extremal::ExtremalSpec;
use crate::hypergraph::Hypergraph;
use crate::vset::VertexSet;

#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Maximum number of search nodes (candidate placements) to expand.
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
    pub parallel: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 50_000_000, time_limit: None, parallel: false }
    }
}

impl SearchBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes, ..Default::default() }
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "lowercase")]
pub enum Outcome<T> {
    Found(T),
    None,
    Unknown,
}

impl<T> Outcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn is_none(&self) -> bool {
        matches!(self, Outcome::None)
    }

    pub fn found(&self) -> Option<&T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn into_found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::None => Outcome::None,
            Outcome::Unknown => Outcome::Unknown,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            Outcome::Found(_) => "found",
            Outcome::None => "none",
            Outcome::Unknown => "unknown",
        }
    }
}

/// A search outcome with the number of nodes it took.
#[derive(Clone, Debug)]
pub struct Search<T> {
    pub outcome: Outcome<T>,
    pub nodes: u64,
}

struct Tracker {
    nodes: AtomicU64,
    max: u64,
    deadline: Option<std::time::Instant>,
    stop: AtomicBool,
}

impl Tracker {
    fn new(budget: &SearchBudget) -> Self {
        Tracker {
            nodes: AtomicU64::new(0),
            max: budget.max_nodes,
            // the clock is only consulted when a time cap is set
            deadline: budget.time_limit.map(|d| std::time::Instant::now() + d),
            stop: AtomicBool::new(false),
        }
    }

    #[inline]
    fn tick(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over = n > self.max
            || (n % 1024 == 0 && self.deadline.is_some_and(|d| std::time::Instant::now() > d));
        if over {
            self.stop.store(true, Ordering::Relaxed);
        }
        !over
    }

    fn used(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed).min(self.max)
    }
}

enum Step {
    Found,
    Exhausted,
    Budget,
}

type Accept<'a> = dyn Fn(&[VertexSet], &VertexSet) -> bool + Sync + 'a;

/// Depth-first placement of blocks of the given sizes. Each new block must
/// form an edge with the previous one (if any) and pass `accept`.
struct Chain<'a> {
    h: &'a Hypergraph,
    tracker: &'a Tracker,
    sizes: &'a [usize],
    accept: &'a Accept<'a>,
}

impl Chain<'_> {
    fn candidate_ok(&self, blocks: &[VertexSet], cand: &VertexSet) -> bool {
        if let Some(prev) = blocks.last() {
            if !self.h.contains_unchecked(&prev.union(cand)) {
                return false;
            }
        }
        (self.accept)(blocks, cand)
    }

    fn dfs(&self, blocks: &mut Vec<VertexSet>, free: &mut VertexSet, depth: usize) -> Step {
        if depth == self.sizes.len() {
            return Step::Found;
        }
        let items = free.to_vec();
        let res = for_each_subset(&items, self.sizes[depth], |s| {
            if !self.tracker.tick() {
                return ControlFlow::Break(Step::Budget);
            }
            let cand = VertexSet::from_slice(s);
            if !self.candidate_ok(blocks, &cand) {
                return ControlFlow::Continue(());
            }
            free.difference_with(&cand);
            blocks.push(cand);
            match self.dfs(blocks, free, depth + 1) {
                Step::Exhausted => {
                    let cand = blocks.pop().expect("pushed above");
                    free.union_with(&cand);
                    ControlFlow::Continue(())
                }
                other => ControlFlow::Break(other),
            }
        });
        res.unwrap_or(Step::Exhausted)
    }

    /// Runs the search from `prefix`; in parallel mode the first level is split
    /// across threads and the earliest success in lexicographic order wins.
    fn run(&self, prefix: Vec<VertexSet>, free: VertexSet, parallel: bool) -> Outcome<Vec<VertexSet>> {
        if self.sizes.is_empty() {
            return Outcome::Found(prefix);
        }
        if parallel && cfg!(feature = "parallel") {
            return self.run_parallel(prefix, free);
        }
        let mut blocks = prefix;
        let mut free = free;
        match self.dfs(&mut blocks, &mut free, 0) {
            Step::Found => Outcome::Found(blocks),
            Step::Exhausted => Outcome::None,
            Step::Budget => Outcome::Unknown,
        }
    }

    #[cfg(feature = "parallel")]
    fn run_parallel(&self, prefix: Vec<VertexSet>, free: VertexSet) -> Outcome<Vec<VertexSet>> {
        use rayon::prelude::*;
        let firsts: Vec<VertexSet> = crate::combin::subsets_of(&free, self.sizes[0])
            .into_iter()
            .filter(|c| self.candidate_ok(&prefix, c))
            .collect();
        let out_of_budget = AtomicBool::new(false);
        let hit = firsts.par_iter().find_map_first(|first| {
            if !self.tracker.tick() {
                out_of_budget.store(true, Ordering::Relaxed);
                return None;
            }
            let mut blocks = prefix.clone();
            blocks.push(first.clone());
            let mut rest = free.difference(first);
            match self.dfs(&mut blocks, &mut rest, 1) {
                Step::Found => Some(blocks),
                Step::Budget => {
                    out_of_budget.store(true, Ordering::Relaxed);
                    None
                }
                Step::Exhausted => None,
            }
        });
        match hit {
            Some(b) => Outcome::Found(b),
            None if out_of_budget.load(Ordering::Relaxed) => Outcome::Unknown,
            None => Outcome::None,
        }
    }

    #[cfg(not(feature = "parallel"))]
    fn run_parallel(&self, prefix: Vec<VertexSet>, free: VertexSet) -> Outcome<Vec<VertexSet>> {
        let mut blocks = prefix;
        let mut free = free;
        match self.dfs(&mut blocks, &mut free, 0) {
            Step::Found => Outcome::Found(blocks),
            Step::Exhausted => Outcome::None,
            Step::Budget => Outcome::Unknown,
        }
    }
}

fn check_divisible(h: &Hypergraph) -> Result<()> {
    if h.n() % h.k() != 0 {
        return Err(Error::Size(format!("k = {} does not divide n = {}", h.k(), h.n())));
    }
    Ok(())
}

fn check_ell(h: &Hypergraph, ell: u32) -> Result<()> {
    if ell == 0 || ell >= h.k() {
        return Err(Error::Size(format!("need 1 <= ell <= k-1, got ell={ell}")));
    }
    Ok(())
}

/// Searches for a perfect matching, always covering the least uncovered vertex next.
pub fn find_perfect_matching(h: &Hypergraph, budget: &SearchBudget) -> Result<Search<Matching>> {
    check_divisible(h)?;
    let tracker = Tracker::new(budget);
    let incident = h.explicit_edges().map(|edges| {
        let mut by_min: Vec<Vec<VertexSet>> = vec![Vec::new(); h.n() as usize];
        for e in edges {
            by_min[e.first().expect("edges are non-empty") as usize].push(e.clone());
        }
        by_min
    });
    let pm = Pm { h, tracker: &tracker, incident: incident.as_deref() };
    let free = h.vertices();
    let outcome = if budget.parallel && cfg!(feature = "parallel") {
        pm.run_parallel(free)
    } else {
        let mut chosen = Vec::new();
        let mut free = free;
        match pm.dfs(&mut chosen, &mut free) {
            Step::Found => Outcome::Found(chosen),
            Step::Exhausted => Outcome::None,
            Step::Budget => Outcome::Unknown,
        }
    };
    Ok(Search { outcome: outcome.map(Matching::new), nodes: tracker.used() })
}

struct Pm<'a> {
    h: &'a Hypergraph,
    tracker: &'a Tracker,
    incident: Option<&'a [Vec<VertexSet>]>,
}

impl Pm<'_> {
    /// Edges inside `free` whose smallest vertex is `v`, lexicographically.
    fn candidates(&self, v: u32, free: &VertexSet, mut visit: impl FnMut(VertexSet) -> ControlFlow<Step>) -> Step {
        match self.incident {
            Some(lists) => {
                for e in &lists[v as usize] {
                    if e.is_subset(free) {
                        if let ControlFlow::Break(s) = visit(e.clone()) {
                            return s;
                        }
                    }
                }
                Step::Exhausted
            }
            None => {
                let rest: Vec<u32> = free.iter().filter(|&u| u != v).collect();
                let res = for_each_subset(&rest, self.h.k() as usize - 1, |s| {
                    let mut e = VertexSet::from_slice(s);
                    e.insert(v);
                    if self.h.contains_unchecked(&e) {
                        visit(e)
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                res.unwrap_or(Step::Exhausted)
            }
        }
    }

    fn dfs(&self, chosen: &mut Vec<VertexSet>, free: &mut VertexSet) -> Step {
        let Some(v) = free.first() else {
            return Step::Found;
        };
        let snapshot = free.clone();
        self.candidates(v, &snapshot, |e| {
            if !self.tracker.tick() {
                return ControlFlow::Break(Step::Budget);
            }
            free.difference_with(&e);
            chosen.push(e);
            match self.dfs(chosen, free) {
                Step::Exhausted => {
                    let e = chosen.pop().expect("pushed above");
                    free.union_with(&e);
                    ControlFlow::Continue(())
                }
                other => ControlFlow::Break(other),
            }
        })
    }

    #[cfg(feature = "parallel")]
    fn run_parallel(&self, free: VertexSet) -> Outcome<Vec<VertexSet>> {
        use rayon::prelude::*;
        let Some(v) = free.first() else {
            return Outcome::Found(Vec::new());
        };
        let mut firsts = Vec::new();
        self.candidates(v, &free, |e| {
            firsts.push(e);
            ControlFlow::Continue(())
        });
        let out_of_budget = AtomicBool::new(false);
        let hit = firsts.par_iter().find_map_first(|e| {
            if !self.tracker.tick() {
                out_of_budget.store(true, Ordering::Relaxed);
                return None;
            }
            let mut chosen = vec![e.clone()];
            let mut rest = free.difference(e);
            match self.dfs(&mut chosen, &mut rest) {
                Step::Found => Some(chosen),
                Step::Budget => {
                    out_of_budget.store(true, Ordering::Relaxed);
                    None
                }
                Step::Exhausted => None,
            }
        });
        match hit {
            Some(m) => Outcome::Found(m),
            None if out_of_budget.load(Ordering::Relaxed) => Outcome::Unknown,
            None => Outcome::None,
        }
    }

    #[cfg(not(feature = "parallel"))]
    fn run_parallel(&self, free: VertexSet) -> Outcome<Vec<VertexSet>> {
        let mut chosen = Vec::new();
        let mut free = free;
        match self.dfs(&mut chosen, &mut free) {
            Step::Found => Outcome::Found(chosen),
            Step::Exhausted => Outcome::None,
            Step::Budget => Outcome::Unknown,
        }
    }
}

/// Searches for a Hamilton (ℓ,k−ℓ)-cycle and returns it in canonical form.
///
/// Only canonical block sequences are explored, in lexicographic order, so a
/// sequential run returns the least canonical witness.
pub fn find_ham_cycle(h: &Hypergraph, ell: u32, budget: &SearchBudget) -> Result<Search<SegCycle>> {
    check_divisible(h)?;
    check_ell(h, ell)?;
    let k = h.k();
    let t = h.n() / k;
    if t < 2 {
        return Err(Error::Precondition("a cycle needs t = n/k >= 2".into()));
    }
    let symmetric = 2 * ell == k;
    let r_vertices = t * (k - ell);
    let last = 2 * t as usize - 1;
    let accept = move |blocks: &[VertexSet], cand: &VertexSet| -> bool {
        let depth = blocks.len();
        let cmin = cand.first().expect("blocks are non-empty");
        if depth == 0 {
            // every vertex below min(L_0) sits in an R-block
            return if symmetric { cmin == 0 } else { cmin <= r_vertices };
        }
        if depth % 2 == 0 && cmin <= blocks[0].first().expect("non-empty") {
            return false;
        }
        if depth == last {
            return cand > &blocks[1] && h.contains_unchecked(&cand.union(&blocks[0]));
        }
        true
    };
    let sizes: Vec<usize> = (0..2 * t).map(|i| if i % 2 == 0 { ell } else { k - ell } as usize).collect();
    let tracker = Tracker::new(budget);
    let chain = Chain { h, tracker: &tracker, sizes: &sizes, accept: &accept };
    let outcome = chain.run(Vec::new(), h.vertices(), budget.parallel);
    Ok(Search { outcome: outcome.map(|b| SegCycle::new(ell, b)), nodes: tracker.used() })
}

/// Searches for a Hamilton (ℓ,k−ℓ)-path whose ends are exactly `l` and `r`.
pub fn find_ham_path(
    h: &Hypergraph,
    ell: u32,
    l: &VertexSet,
    r: &VertexSet,
    budget: &SearchBudget,
) -> Result<Search<SegPath>> {
    check_ell(h, ell)?;
    let k = h.k();
    if l.len() != ell as usize || r.len() != (k - ell) as usize || !l.is_disjoint(r) {
        return Err(Error::Size(format!("ends must be disjoint with sizes {ell} and {}", k - ell)));
    }
    if l.union(r).last().is_some_and(|v| v >= h.n()) {
        return Err(Error::Size("ends are not inside the vertex set".into()));
    }
    check_divisible(h)?;
    let tracker = Tracker::new(budget);
    let free = h.vertices().difference(&l.union(r));
    if has_isolated(h, &free) {
        return Ok(Search { outcome: Outcome::None, nodes: 0 });
    }
    let pairs = (h.n() / k - 1) as usize;
    let sizes: Vec<usize> = (0..2 * pairs).map(|i| if i % 2 == 0 { k - ell } else { ell } as usize).collect();
    let last = 2 * pairs;
    let accept = |blocks: &[VertexSet], cand: &VertexSet| -> bool {
        blocks.len() != last || h.contains_unchecked(&cand.union(r))
    };
    let chain = Chain { h, tracker: &tracker, sizes: &sizes, accept: &accept };
    let outcome = if pairs == 0 {
        if h.contains_unchecked(&l.union(r)) {
            Outcome::Found(vec![l.clone()])
        } else {
            Outcome::None
        }
    } else {
        chain.run(vec![l.clone()], free, budget.parallel)
    };
    let outcome = outcome.map(|mut blocks| {
        blocks.push(r.clone());
        SegPath::new(ell, blocks)
    });
    Ok(Search { outcome, nodes: tracker.used() })
}

/// True when some vertex of `pool` lies in no edge at all (cheap cases only).
fn has_isolated(h: &Hypergraph, pool: &VertexSet) -> bool {
    if let Some(edges) = h.explicit_edges() {
        let covered: VertexSet = edges.iter().flat_map(|e| e.iter()).collect();
        return !pool.is_subset(&covered);
    }
    if binom(h.n() as i64 - 1, h.k() as i64 - 1) > 1_000_000 {
        return false;
    }
    pool.iter().any(|v| {
        let hit = h.visit_link(&VertexSet::singleton(v), u64::MAX, |_| ControlFlow::Break(()));
        matches!(hit, Ok(None))
    })
}

/// Decides whether the 2k-set `c` connects `l` to `r`, returning the path if so.
///
/// Tries every ordered split `(R′, L′, R″, L″)` of `c` and checks the five
/// unions `L∪R′, R′∪L′, L′∪R″, R″∪L″, L″∪R`.
pub fn decide_connector(h: &Hypergraph, l: &VertexSet, r: &VertexSet, c: &VertexSet) -> Option<SegPath> {
    let ell = l.len();
    let k = h.k() as usize;
    let items = c.to_vec();
    let found = for_each_subset(&items, k - ell, |r1| {
        let r1 = VertexSet::from_slice(r1);
        if !h.contains_unchecked(&l.union(&r1)) {
            return ControlFlow::Continue(());
        }
        let rest1 = c.difference(&r1).to_vec();
        let inner = for_each_subset(&rest1, ell, |l1| {
            let l1 = VertexSet::from_slice(l1);
            if !h.contains_unchecked(&r1.union(&l1)) {
                return ControlFlow::Continue(());
            }
            let rest2: Vec<u32> = rest1.iter().copied().filter(|v| !l1.contains(*v)).collect();
            let last = for_each_subset(&rest2, k - ell, |r2| {
                let r2 = VertexSet::from_slice(r2);
                let l2: VertexSet = rest2.iter().copied().filter(|v| !r2.contains(*v)).collect();
                if h.contains_unchecked(&l1.union(&r2))
                    && h.contains_unchecked(&r2.union(&l2))
                    && h.contains_unchecked(&l2.union(r))
                {
                    ControlFlow::Break(vec![l.clone(), r1.clone(), l1.clone(), r2, l2, r.clone()])
                } else {
                    ControlFlow::Continue(())
                }
            });
            match last {
                Some(p) => ControlFlow::Break(p),
                None => ControlFlow::Continue(()),
            }
        });
        match inner {
            Some(p) => ControlFlow::Break(p),
            None => ControlFlow::Continue(()),
        }
    });
    found.map(|blocks| SegPath::new(ell as u32, blocks))
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectorCount {
    pub count: u128,
    /// The first few connectors (in lexicographic order) with their paths.
    pub witnesses: Vec<SegPath>,
    /// False when the node budget cut the scan short; `count` is then a lower bound.
    pub complete: bool,
    pub examined: u128,
}

/// Counts the 2k-sets disjoint from `l ∪ r` that connect `l` to `r`.
pub fn count_connectors(
    h: &Hypergraph,
    l: &VertexSet,
    r: &VertexSet,
    budget: &SearchBudget,
    max_witnesses: usize,
) -> Result<ConnectorCount> {
    let k = h.k();
    let ell = l.len() as u32;
    check_ell(h, ell)?;
    if r.len() as u32 != k - ell || !l.is_disjoint(r) {
        return Err(Error::Size(format!("ends must be disjoint with sizes {ell} and {}", k - ell)));
    }
    let pool = h.vertices().difference(&l.union(r));
    let total = binom(pool.len() as i64, 2 * k as i64);
    let limit = (budget.max_nodes as u128).min(total);
    let mut sets = Vec::with_capacity(limit.min(1 << 24) as usize);
    for_each_subset(&pool.to_vec(), 2 * k as usize, |s| {
        if sets.len() as u128 >= limit {
            return ControlFlow::Break(());
        }
        sets.push(VertexSet::from_slice(s));
        ControlFlow::Continue(())
    });
    let decide = |c: &VertexSet| decide_connector(h, l, r, c);
    #[cfg(feature = "parallel")]
    let results: Vec<Option<SegPath>> = if budget.parallel {
        use rayon::prelude::*;
        sets.par_iter().map(decide).collect()
    } else {
        sets.iter().map(decide).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Option<SegPath>> = sets.iter().map(decide).collect();
    let count = results.iter().filter(|p| p.is_some()).count() as u128;
    let witnesses = results.into_iter().flatten().take(max_witnesses).collect();
    Ok(ConnectorCount { count, witnesses, complete: limit == total, examined: limit })
}

/// Decides whether `p` absorbs `(l, r)`: whether `V(P) ∪ l ∪ r` carries a
/// Hamilton path with the same ends as `p`. A found outcome carries that path.
pub fn is_absorber(
    h: &Hypergraph,
    p: &SegPath,
    l: &VertexSet,
    r: &VertexSet,
    budget: &SearchBudget,
) -> Result<Outcome<SegPath>> {
    let k = h.k() as usize;
    let span = p.vertices();
    if span.len() != 10 * k || p.vertex_count() != 10 * k {
        return Err(Error::Size(format!("an absorber spans exactly 10k = {} vertices", 10 * k)));
    }
    if !l.is_disjoint(&span) || !r.is_disjoint(&span) || !l.is_disjoint(r) {
        return Err(Error::Precondition("L and R must avoid each other and the absorber".into()));
    }
    if l.len() + r.len() != k {
        return Err(Error::Size("|L| + |R| must equal k".into()));
    }
    if let Err(v) = validate_path(h, p) {
        return Err(Error::Precondition(format!("absorber is not a path of H: {v}")));
    }
    let ell = p.ell as usize;
    let p = if p.first().map(|b| b.len()) == Some(ell) { p.clone() } else { p.reversed() };
    let (start, end) = (p.first().expect("non-empty"), p.last().expect("non-empty"));
    if start.len() != ell || end.len() != k - ell {
        return Err(Error::Precondition("absorber ends must have sizes ell and k-ell".into()));
    }
    let u = span.union(l).union(r);
    let (sub, table) = h.restrict(&u)?;
    let mut inverse = vec![u32::MAX; h.n() as usize];
    for (i, &v) in table.iter().enumerate() {
        inverse[v as usize] = i as u32;
    }
    let found = find_ham_path(&sub, p.ell, &start.map(&inverse), &end.map(&inverse), budget)?;
    Ok(found.outcome.map(|path| path.relabeled(&table)))
}

/// True when `spec` has `f = 1` and every edge of `h` lies in its family:
/// then no subgraph of `h` has a perfect matching, hence no Hamilton cycle.
pub fn parity_certificate(h: &Hypergraph, spec: &ExtremalSpec, enum_budget: u64) -> Result<bool> {
    if spec.n != h.n() || spec.k != h.k() || spec.f_parity()? != 1 {
        return Ok(false);
    }
    if h.as_extremal() == Some(spec) {
        return Ok(true);
    }
    Ok(h.edges(enum_budget)?.iter().all(|e| spec.contains(e)))
}

/// Finds two edges of `h` outside the family of `spec` that meet in 0 or ℓ vertices.
pub fn find_parity_pair(
    h: &Hypergraph,
    spec: &ExtremalSpec,
    ell: u32,
    budget: &SearchBudget,
) -> Result<Search<(VertexSet, VertexSet)>> {
    check_ell(h, ell)?;
    let wrong: Vec<VertexSet> = h.edges(budget.max_nodes)?.into_iter().filter(|e| !spec.contains(e)).collect();
    let tracker = Tracker::new(budget);
    for (i, e1) in wrong.iter().enumerate() {
        for e2 in &wrong[i + 1..] {
            if !tracker.tick() {
                return Ok(Search { outcome: Outcome::Unknown, nodes: tracker.used() });
            }
            let common = e1.intersection_len(e2);
            if common == 0 || common == ell as usize {
                return Ok(Search { outcome: Outcome::Found((e1.clone(), e2.clone())), nodes: tracker.used() });
            }
        }
    }
    Ok(Search { outcome: Outcome::None, nodes: tracker.used() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::{cycle_to_matchings, validate_cycle, validate_matching};
    use crate::hypergraph::DEFAULT_ENUM_BUDGET;

    fn vs(v: &[u32]) -> VertexSet {
        VertexSet::from_slice(v)
    }

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    fn ext(n: u32, k: u32, a: u32, eta: u8) -> Hypergraph {
        Hypergraph::extremal(&ExtremalSpec::with_prefix(n, k, a, eta).unwrap())
    }

    #[test]
    fn perfect_matching_examples() {
        let h = Hypergraph::complete(6, 3).unwrap();
        let m = find_perfect_matching(&h, &budget()).unwrap().outcome.into_found().unwrap();
        assert_eq!(validate_matching(&h, &m, true), Ok(()));
        assert!(find_perfect_matching(&ext(6, 3, 3, 1), &budget()).unwrap().outcome.is_none());
        let h = ext(6, 3, 2, 1);
        let m = find_perfect_matching(&h, &budget()).unwrap().outcome.into_found().unwrap();
        assert_eq!(validate_matching(&h, &m, true), Ok(()));
        // explicit backend takes the incidence-list route
        let x = h.materialize(DEFAULT_ENUM_BUDGET).unwrap();
        let mx = find_perfect_matching(&x, &budget()).unwrap().outcome.into_found().unwrap();
        assert_eq!(mx, m);
        assert!(find_perfect_matching(&Hypergraph::complete(7, 3).unwrap(), &budget()).is_err());
    }

    #[test]
    fn ham_cycle_examples() {
        let h = Hypergraph::complete(6, 3).unwrap();
        let c = find_ham_cycle(&h, 2, &budget()).unwrap().outcome.into_found().unwrap();
        assert_eq!(validate_cycle(&h, &c, true), Ok(()));
        assert_eq!(c.canonical(), c);
        assert!(find_ham_cycle(&ext(6, 3, 3, 1), 2, &budget()).unwrap().outcome.is_none());
        let h = ext(6, 3, 2, 1);
        let c = find_ham_cycle(&h, 2, &budget()).unwrap().outcome.into_found().unwrap();
        assert_eq!(validate_cycle(&h, &c, true), Ok(()));
        let (m1, m2) = cycle_to_matchings(&c).unwrap();
        assert_eq!(validate_matching(&h, &m1, true), Ok(()));
        assert_eq!(validate_matching(&h, &m2, true), Ok(()));
        assert!(find_ham_cycle(&Hypergraph::complete(3, 3).unwrap(), 1, &budget()).is_err());
    }

    /// Independent oracle: every block sequence, no canonical pruning.
    fn brute_cycles(h: &Hypergraph, ell: u32) -> Vec<SegCycle> {
        let k = h.k();
        let t = h.n() / k;
        let sizes: Vec<usize> = (0..2 * t).map(|i| if i % 2 == 0 { ell } else { k - ell } as usize).collect();
        let mut out = Vec::new();
        fn go(h: &Hypergraph, sizes: &[usize], blocks: &mut Vec<VertexSet>, free: &VertexSet, ell: u32, out: &mut Vec<SegCycle>) {
            if blocks.len() == sizes.len() {
                let c = SegCycle::new(ell, blocks.clone());
                if validate_cycle(h, &c, true).is_ok() {
                    out.push(c.canonical());
                }
                return;
            }
            for cand in crate::combin::subsets_of(free, sizes[blocks.len()]) {
                blocks.push(cand.clone());
                go(h, sizes, blocks, &free.difference(&cand), ell, out);
                blocks.pop();
            }
        }
        go(h, &sizes, &mut Vec::new(), &h.vertices(), ell, &mut out);
        out.sort_by(|a, b| a.blocks.cmp(&b.blocks));
        out.dedup();
        out
    }

    #[test]
    fn sequential_search_returns_least_canonical_witness() {
        for (a, eta) in [(2, 1), (1, 0), (4, 0), (0, 0)] {
            let h = ext(6, 3, a, eta);
            for ell in 1..3 {
                let all = brute_cycles(&h, ell);
                let got = find_ham_cycle(&h, ell, &budget()).unwrap().outcome;
                match all.first() {
                    Some(least) => assert_eq!(got.found(), Some(least), "a={a} eta={eta} ell={ell}"),
                    None => assert!(got.is_none()),
                }
            }
        }
    }

    #[test]
    fn parallel_search_returns_valid_witness() {
        let h = ext(9, 3, 3, 1);
        let seq = find_ham_cycle(&h, 1, &budget()).unwrap().outcome;
        let par = find_ham_cycle(&h, 1, &budget().parallel(true)).unwrap().outcome;
        assert_eq!(seq.is_found(), par.is_found());
        if let Some(c) = par.found() {
            assert_eq!(validate_cycle(&h, c, true), Ok(()));
        }
        let pm = find_perfect_matching(&h, &budget().parallel(true)).unwrap().outcome;
        assert!(validate_matching(&h, pm.found().unwrap(), true).is_ok());
    }

    #[test]
    fn tiny_budget_is_unknown_not_none() {
        let h = ext(12, 4, 5, 1);
        let s = find_ham_cycle(&h, 2, &SearchBudget::nodes(10)).unwrap();
        assert_eq!(s.outcome, Outcome::Unknown);
        assert_eq!(s.nodes, 10);
    }

    #[test]
    fn ham_path_examples() {
        let h = Hypergraph::complete(9, 3).unwrap();
        let (l, r) = (vs(&[3, 7]), vs(&[1]));
        let p = find_ham_path(&h, 2, &l, &r, &budget()).unwrap().outcome.into_found().unwrap();
        assert_eq!(validate_path(&h, &p), Ok(()));
        assert_eq!(p.vertex_count(), 9);
        assert_eq!((p.first(), p.last()), (Some(&l), Some(&r)));
        let empty = Hypergraph::empty(9, 3).unwrap();
        assert!(find_ham_path(&empty, 2, &l, &r, &budget()).unwrap().outcome.is_none());
        assert!(find_ham_path(&h, 2, &vs(&[1, 2]), &vs(&[2]), &budget()).is_err());
    }

    #[test]
    fn ham_path_agrees_with_closing_a_cycle() {
        // a path with ends L, R closes into a cycle exactly when R ∪ L is an edge
        for a in 0..=9 {
            for eta in 0..2 {
                let h = ext(9, 3, a, eta);
                let cycle = find_ham_cycle(&h, 2, &budget()).unwrap().outcome;
                let mut any_closing = false;
                for l in crate::combin::subsets_of(&h.vertices(), 2) {
                    if l.first() != Some(0) {
                        continue;
                    }
                    for r in crate::combin::subsets_of(&h.vertices().difference(&l), 1) {
                        if !h.contains(&l.union(&r)) {
                            continue;
                        }
                        if find_ham_path(&h, 2, &l, &r, &budget()).unwrap().outcome.is_found() {
                            any_closing = true;
                        }
                    }
                }
                assert_eq!(cycle.is_found(), any_closing, "a={a} eta={eta}");
            }
        }
    }

    #[test]
    fn connector_counts() {
        let h = Hypergraph::complete(9, 3).unwrap();
        let c = count_connectors(&h, &vs(&[0, 1]), &vs(&[2]), &budget(), 2).unwrap();
        assert_eq!((c.count, c.complete), (1, true));
        assert_eq!(validate_path(&h, &c.witnesses[0]), Ok(()));
        let h = Hypergraph::complete(12, 3).unwrap();
        assert_eq!(count_connectors(&h, &vs(&[0, 1]), &vs(&[2]), &budget(), 0).unwrap().count, 84);
        let h = Hypergraph::empty(12, 3).unwrap();
        assert_eq!(count_connectors(&h, &vs(&[0, 1]), &vs(&[2]), &budget(), 0).unwrap().count, 0);
        let cut = count_connectors(&Hypergraph::complete(12, 3).unwrap(), &vs(&[0, 1]), &vs(&[2]), &SearchBudget::nodes(10), 0).unwrap();
        assert_eq!((cut.count, cut.complete), (10, false));
    }

    #[test]
    fn connector_decision_matches_path_search() {
        let h = ext(9, 3, 4, 1).thinned(0.3, 4).unwrap();
        let (l, r) = (vs(&[0, 5]), vs(&[1]));
        for c in crate::combin::subsets_of(&h.vertices().difference(&l.union(&r)), 6) {
            let (sub, table) = h.restrict(&c.union(&l).union(&r)).unwrap();
            let mut inv = vec![0u32; 9];
            for (i, &v) in table.iter().enumerate() {
                inv[v as usize] = i as u32;
            }
            let by_search = find_ham_path(&sub, 2, &l.map(&inv), &r.map(&inv), &budget()).unwrap().outcome.is_found();
            assert_eq!(decide_connector(&h, &l, &r, &c).is_some(), by_search);
        }
    }

    fn zigzag(start: u32, blocks: usize, ell: u32, k: u32) -> SegPath {
        let mut next = start;
        let segs = (0..blocks)
            .map(|i| {
                let size = if i % 2 == 0 { ell } else { k - ell };
                let s: VertexSet = (next..next + size).collect();
                next += size;
                s
            })
            .collect();
        SegPath::new(ell, segs)
    }

    #[test]
    fn absorber_in_complete_graph() {
        let h = Hypergraph::complete(36, 3).unwrap();
        let p = zigzag(0, 20, 2, 3);
        let out = is_absorber(&h, &p, &vs(&[30, 31]), &vs(&[32]), &budget()).unwrap();
        let alt = out.into_found().unwrap();
        assert_eq!(validate_path(&h, &alt), Ok(()));
        assert_eq!(alt.vertex_count(), 33);
        assert_eq!((alt.first(), alt.last()), (p.first(), p.last()));
    }

    #[test]
    fn absorber_trap_and_preconditions() {
        let complete = Hypergraph::complete(36, 3).unwrap();
        let edges = complete.edges(DEFAULT_ENUM_BUDGET).unwrap();
        let h = Hypergraph::explicit(36, 3, edges.into_iter().filter(|e| !e.contains(30))).unwrap();
        let p = zigzag(0, 20, 2, 3);
        assert!(is_absorber(&h, &p, &vs(&[30, 31]), &vs(&[32]), &budget()).unwrap().is_none());
        assert!(is_absorber(&complete, &p, &vs(&[0, 31]), &vs(&[32]), &budget()).is_err());
    }

    #[test]
    fn parity_pairs() {
        let spec = ExtremalSpec::with_prefix(8, 3, 4, 1).unwrap();
        let h = Hypergraph::complete(8, 3).unwrap();
        let (e1, e2) = find_parity_pair(&h, &spec, 2, &budget()).unwrap().outcome.into_found().unwrap();
        assert!(!spec.contains(&e1) && !spec.contains(&e2));
        assert!([0, 2].contains(&e1.intersection_len(&e2)));
        let b = Hypergraph::extremal(&spec);
        assert!(find_parity_pair(&b, &spec, 2, &budget()).unwrap().outcome.is_none());
        let planted = b.edited([vs(&[0, 1, 4]), vs(&[2, 3, 5])], []).unwrap();
        let pair = find_parity_pair(&planted, &spec, 2, &budget()).unwrap().outcome.into_found().unwrap();
        assert_eq!(pair, (vs(&[0, 1, 4]), vs(&[2, 3, 5])));
    }

    #[test]
    fn certificate_for_small_hext() {
        let spec = ExtremalSpec::with_prefix(6, 3, 3, 1).unwrap();
        assert!(parity_certificate(&Hypergraph::extremal(&spec), &spec, DEFAULT_ENUM_BUDGET).unwrap());
        let other = ExtremalSpec::with_prefix(6, 3, 2, 1).unwrap();
        assert!(!parity_certificate(&Hypergraph::extremal(&other), &other, DEFAULT_ENUM_BUDGET).unwrap());
    }
}
