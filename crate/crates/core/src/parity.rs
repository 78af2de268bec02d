//! Covering bad vertices and repairing the parity of an almost-extremal
//! hypergraph with one short path.

use std::collections::HashMap;
use std::ops::ControlFlow;

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combin::{for_each_subset, subsets_of};
use crate::cycle::{validate_path, SegPath};
use crate::error::{construction, Error, Result};
use crate::extremal::{delta_threshold, ExtremalSpec, ThresholdMethod};
use crate::goodness::{goodness, not_good_sets, RootBound};
use crate::hypergraph::{Hypergraph, DEFAULT_ENUM_BUDGET};
use crate::search::{find_parity_pair, Outcome, SearchBudget};
use crate::vset::VertexSet;
use crate::Rational;

/// Thresholds used by the parity engine. Desk-sized instances may need looser
/// values than the defaults.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParityConfig {
    /// Vertices above this goodness ratio are bad.
    #[serde(serialize_with = "crate::goodness::ser_ratio")]
    pub eps_prime: Rational,
    /// Bad vertices above this ratio switch sides.
    #[serde(serialize_with = "crate::goodness::ser_ratio")]
    pub relocate: Rational,
    /// An ℓ-set above this ratio selects the single-set repair.
    #[serde(serialize_with = "crate::goodness::ser_ratio")]
    pub split: Rational,
    /// Goodness demanded of path ends; `None` means `√(k^k ε′)`.
    #[serde(skip)]
    pub eps_double: Option<RootBound>,
    /// Target for `|V(P)| / n`; only reported.
    #[serde(serialize_with = "crate::goodness::ser_ratio")]
    pub size_fraction: Rational,
    /// Compare `δ_ℓ(H)` with the threshold before starting (costly).
    pub check_degree: bool,
    pub budget: u64,
}

impl Default for ParityConfig {
    fn default() -> Self {
        ParityConfig {
            eps_prime: Rational::new(1, 20),
            relocate: Rational::new(1, 4),
            split: Rational::new(1, 5),
            eps_double: None,
            size_fraction: Rational::new(1, 20),
            check_degree: false,
            budget: DEFAULT_ENUM_BUDGET,
        }
    }
}

impl ParityConfig {
    pub fn end_bound(&self, k: u32) -> RootBound {
        self.eps_double.unwrap_or_else(|| RootBound::eps_prime(self.eps_prime, k))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BadVertexReport {
    #[serde(serialize_with = "crate::goodness::ser_ratio")]
    pub alpha: Rational,
    /// Vertices that are not `alpha`-good.
    pub v0: VertexSet,
    /// Vertices that are not 1/4-good; these change sides.
    pub v0_prime: VertexSet,
    pub a1: VertexSet,
    pub spec1: ExtremalSpec,
}

/// Finds the bad vertices and moves the very bad ones to the other side.
pub fn relocate_bad(h: &Hypergraph, spec: &ExtremalSpec, alpha: Rational, budget: u64) -> Result<BadVertexReport> {
    relocate_with(h, spec, alpha, Rational::new(1, 4), budget)
}

fn relocate_with(h: &Hypergraph, spec: &ExtremalSpec, alpha: Rational, far: Rational, budget: u64) -> Result<BadVertexReport> {
    let singles = |t| -> Result<VertexSet> {
        Ok(not_good_sets(h, spec, 1, t, budget)?.iter().filter_map(|s| s.first()).collect())
    };
    let v0 = singles(alpha)?;
    let v0_prime = singles(far)?.intersection(&v0);
    let a1 = spec.a.difference(&v0_prime).union(&v0_prime.difference(&spec.a));
    let spec1 = ExtremalSpec::new(spec.n, spec.k, a1.clone(), spec.eta)?;
    Ok(BadVertexReport { alpha, v0, v0_prime, a1, spec1 })
}

/// Cached goodness and membership queries against one family.
struct Judge<'a> {
    h: &'a Hypergraph,
    spec: &'a ExtremalSpec,
    bound: RootBound,
    budget: u64,
    cache: HashMap<VertexSet, bool>,
}

impl<'a> Judge<'a> {
    fn new(h: &'a Hypergraph, spec: &'a ExtremalSpec, bound: RootBound, budget: u64) -> Self {
        Judge { h, spec, bound, budget, cache: HashMap::new() }
    }

    fn good(&mut self, s: &VertexSet) -> Result<bool> {
        if let Some(&g) = self.cache.get(s) {
            return Ok(g);
        }
        let g = self.bound.admits(goodness(self.h, self.spec, s, self.budget)?.alpha_star);
        self.cache.insert(s.clone(), g);
        Ok(g)
    }

    fn subsets_good(&mut self, e: &VertexSet, size: usize) -> Result<bool> {
        for s in subsets_of(e, size) {
            if !self.good(&s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn in_family(&self, e: &VertexSet) -> bool {
        self.spec.contains(e) && self.h.contains_unchecked(e)
    }

    fn all(&self) -> VertexSet {
        VertexSet::range(self.spec.n)
    }
}

/// Lexicographically least `size`-subset of `pool` accepted by `pred`.
fn first_set(pool: &VertexSet, size: usize, mut pred: impl FnMut(&VertexSet) -> Result<bool>) -> Result<Option<VertexSet>> {
    let found = for_each_subset(&pool.to_vec(), size, |s| {
        let s = VertexSet::from_slice(s);
        match pred(&s) {
            Ok(true) => ControlFlow::Break(Ok(s)),
            Ok(false) => ControlFlow::Continue(()),
            Err(e) => ControlFlow::Break(Err(e)),
        }
    });
    found.transpose()
}

/// Two link sets of `v` sharing ℓ−1 vertices whose private parts both have parity `choice`.
fn find_gadget(
    judge: &mut Judge,
    v: u32,
    ell: usize,
    forbidden: &VertexSet,
    choice: u8,
) -> Result<Option<(VertexSet, VertexSet)>> {
    let k = judge.spec.k as usize;
    let r = k - ell;
    let mut pool = judge.all().difference(forbidden);
    pool.remove(v);
    let mut partner = None;
    let first = first_set(&pool, k - 1, |e1| {
        if !judge.in_family(&e1.union(&VertexSet::singleton(v))) || !judge.subsets_good(e1, r)? {
            return Ok(false);
        }
        let rest = pool.difference(e1);
        for s1 in subsets_of(e1, r).into_iter().filter(|s| judge.spec.eta_of(s) == choice) {
            let core = e1.difference(&s1);
            for s2 in subsets_of(&rest, r).into_iter().filter(|s| judge.spec.eta_of(s) == choice) {
                let e2 = core.union(&s2);
                let mut with_v = e2.clone();
                with_v.insert(v);
                if judge.in_family(&with_v) && judge.subsets_good(&e2, r)? {
                    partner = Some(e2);
                    return Ok(true);
                }
            }
        }
        Ok(false)
    })?;
    Ok(first.zip(partner))
}

/// Least ℓ-set outside `forbidden` joining `prev` and `next` by two family edges.
fn connect(judge: &mut Judge, ell: usize, prev: &VertexSet, next: &VertexSet, forbidden: &VertexSet) -> Result<Option<VertexSet>> {
    let pool = judge.all().difference(forbidden).difference(prev).difference(next);
    first_set(&pool, ell, |l| Ok(judge.in_family(&prev.union(l)) && judge.in_family(&l.union(next))))
}

fn cover_with(judge: &mut Judge, ell: u32, m: &VertexSet, u: &VertexSet, choice: u8) -> Result<SegPath> {
    let k = judge.spec.k;
    if k < 5 {
        return Err(Error::Unsupported(format!("covering bad vertices needs k >= 5, got {k}")));
    }
    if ell == 0 || ell >= k {
        return Err(Error::Size(format!("need 1 <= ell <= k-1, got {ell}")));
    }
    if u.len() > 2 * k as usize || !m.is_disjoint(u) || choice > 1 {
        return Err(Error::Precondition("need |U| <= 2k, M disjoint from U and a 0/1 parity choice".into()));
    }
    let ell = ell as usize;
    let mut forbidden = m.union(u);
    let mut gadgets = Vec::new();
    for v in m.iter() {
        let (e1, e2) = find_gadget(judge, v, ell, &forbidden, choice)?.ok_or(Error::NoGadget { vertex: v })?;
        forbidden.union_with(&e1);
        forbidden.union_with(&e2);
        let mut middle = e1.intersection(&e2);
        middle.insert(v);
        gadgets.push([e1.difference(&e2), middle, e2.difference(&e1)]);
    }
    let mut blocks: Vec<VertexSet> = Vec::new();
    for (i, g) in gadgets.iter().enumerate() {
        if i > 0 {
            let prev = blocks.last().expect("previous gadget").clone();
            let link = connect(judge, ell, &prev, &g[0], &forbidden)?
                .ok_or_else(|| construction("cover", format!("no {ell}-set joins gadget {} to gadget {i}", i - 1)))?;
            forbidden.union_with(&link);
            blocks.push(link);
        }
        blocks.extend(g.iter().cloned());
    }
    Ok(SegPath::new(ell as u32, blocks))
}

/// A path of `2k|M| − ℓ` vertices through every vertex of `m`, avoiding `u`,
/// using only edges of `h` inside the family of `spec1`. Both end blocks are
/// (k−ℓ)-sets of parity `choice`. An empty `m` gives the empty path.
pub fn cover_bad_vertices(
    h: &Hypergraph,
    spec1: &ExtremalSpec,
    ell: u32,
    m: &VertexSet,
    u: &VertexSet,
    choice: u8,
    cfg: &ParityConfig,
) -> Result<SegPath> {
    let mut judge = Judge::new(h, spec1, cfg.end_bound(spec1.k), cfg.budget);
    cover_with(&mut judge, ell, m, u, choice)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FixCase {
    #[serde(rename = "case1")]
    Case1,
    #[serde(rename = "case2.1")]
    Case21,
    #[serde(rename = "case2.2")]
    Case22,
}

impl FixCase {
    pub fn tag(&self) -> &'static str {
        match self {
            FixCase::Case1 => "case1",
            FixCase::Case21 => "case2.1",
            FixCase::Case22 => "case2.2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub vertices: VertexSet,
    pub a: VertexSet,
    pub eta: u8,
    pub f: u8,
}

impl Residual {
    /// The residual family relabeled onto `0..|V′|`.
    pub fn spec(&self, k: u32) -> Result<ExtremalSpec> {
        let full = ExtremalSpec::new(self.vertices.last().map_or(0, |v| v + 1).max(k), k, self.a.clone(), self.eta)?;
        Ok(full.restrict(&self.vertices))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParityAudit {
    pub f_original: u8,
    pub f_relocated: u8,
    /// Edges of the path's matching view lying outside the relocated family.
    pub wrong_parity_in_matching: usize,
    pub path_vertices: usize,
    pub within_size_target: bool,
    pub ends_in_family: bool,
    pub degree_condition: Option<bool>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParityFixResult {
    pub case: FixCase,
    pub path: SegPath,
    /// `V(P)` minus both end blocks: the vertices the path consumes.
    pub interior: VertexSet,
    pub residual: Residual,
    pub relocation: BadVertexReport,
    pub audit: ParityAudit,
}

/// Builds `[connector] + cover path` hanging off `prev`, whose far end has parity `choice`.
fn tail(judge: &mut Judge, ell: u32, v0: &VertexSet, used: &VertexSet, choice: u8, prev: &VertexSet) -> Result<Vec<VertexSet>> {
    let k = judge.spec.k as usize;
    let m = v0.difference(used);
    if m.is_empty() {
        let pool = judge.all().difference(used);
        let mut link = None;
        let end = first_set(&pool, k - ell as usize, |r| {
            if judge.spec.eta_of(r) != choice || !judge.good(r)? {
                return Ok(false);
            }
            link = connect(judge, ell as usize, prev, r, &used.union(r))?;
            Ok(link.is_some())
        })?;
        return match (link, end) {
            (Some(l), Some(r)) => Ok(vec![l, r]),
            _ => Err(construction("tail", "no good end block reachable from the repair edges")),
        };
    }
    let cover = cover_with(judge, ell, &m, used, choice)?;
    let first = cover.first().expect("non-empty cover").clone();
    let l = connect(judge, ell as usize, prev, &first, &used.union(&cover.vertices()))?
        .ok_or_else(|| construction("tail", "no connector between the repair edges and the cover path"))?;
    let mut blocks = vec![l];
    blocks.extend(cover.segments);
    Ok(blocks)
}

fn blocks_union(blocks: &[VertexSet]) -> VertexSet {
    blocks.iter().fold(VertexSet::new(), |acc, b| acc.union(b))
}

fn good_end(judge: &mut Judge, ell: usize, used: &VertexSet, r: &VertexSet) -> Result<VertexSet> {
    let pool = judge.all().difference(used);
    first_set(&pool, ell, |l| Ok(judge.in_family(&l.union(r)) && judge.good(l)?))?
        .ok_or_else(|| construction("end", format!("no good {ell}-set completes {r}")))
}

fn case_one(judge: &mut Judge, ell: u32, v0: &VertexSet) -> Result<Vec<VertexSet>> {
    let k = judge.spec.k as usize;
    let all = judge.all();
    if v0.is_empty() {
        let mut partner = None;
        let l = first_set(&all, ell as usize, |l| {
            if !judge.good(l)? {
                return Ok(false);
            }
            partner = first_set(&all.difference(l), k - ell as usize, |r| Ok(judge.in_family(&l.union(r)) && judge.good(r)?))?;
            Ok(partner.is_some())
        })?;
        return match (l, partner) {
            (Some(l), Some(r)) => Ok(vec![l, r]),
            _ => Err(construction("case1", "no edge of H inside the family has good ends")),
        };
    }
    let mut last_err = None;
    for choice in 0..2 {
        match cover_with(judge, ell, v0, &VertexSet::new(), choice) {
            Ok(cover) => {
                let first = cover.first().expect("non-empty cover").clone();
                match good_end(judge, ell as usize, &cover.vertices(), &first) {
                    Ok(l) => {
                        let mut blocks = vec![l];
                        blocks.extend(cover.segments);
                        return Ok(blocks);
                    }
                    Err(e) => last_err = Some(e),
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("two attempts"))
}

/// `L₁ R₁* L* R₂* L₂ R′ … R` with the single wrong-parity edge `L*R₂*`.
fn case_single(judge: &mut Judge, ell: u32, v0: &VertexSet, lstar: &VertexSet, r1: &VertexSet, r2: &VertexSet) -> Result<Vec<VertexSet>> {
    let choice = judge.spec.eta_of(r1);
    let used = lstar.union(r1).union(r2);
    let rest = tail(judge, ell, v0, &used, choice, r2)?;
    let l1 = good_end(judge, ell as usize, &used.union(&blocks_union(&rest)), r1)?;
    let mut blocks = vec![l1, r1.clone(), lstar.clone(), r2.clone()];
    blocks.extend(rest);
    Ok(blocks)
}

/// `L₄ R₁* L₁* R₃ L₂* R₂* L₃ R′ … R` with the single wrong-parity edge `L₂*R₂*`.
fn case_pair(judge: &mut Judge, ell: u32, v0: &VertexSet, e1: &VertexSet, e2: &VertexSet) -> Result<Vec<VertexSet>> {
    let r = judge.spec.k as usize - ell as usize;
    let used = e1.union(e2);
    let mut last_err = construction("case2.2", "the two wrong-parity edges admit no parity-matched split");
    for r1 in subsets_of(e1, r) {
        for r2 in subsets_of(e2, r).into_iter().filter(|s| judge.spec.eta_of(s) == judge.spec.eta_of(&r1)) {
            let (l1, l2) = (e1.difference(&r1), e2.difference(&r2));
            let attempt = (|| {
                let rest = tail(judge, ell, v0, &used, judge.spec.eta_of(&r1), &r2)?;
                let taken = used.union(&blocks_union(&rest));
                let pool = judge.all().difference(&taken);
                let r3 = first_set(&pool, r, |s| Ok(judge.in_family(&l1.union(s)) && judge.in_family(&s.union(&l2))))?
                    .ok_or_else(|| construction("case2.2", "no set joins the two wrong-parity edges"))?;
                let l4 = good_end(judge, ell as usize, &taken.union(&r3), &r1)?;
                let mut blocks = vec![l4, r1.clone(), l1.clone(), r3, l2.clone(), r2.clone()];
                blocks.extend(rest);
                Ok(blocks)
            })();
            match attempt {
                Ok(blocks) => return Ok(blocks),
                Err(e @ (Error::Construction { .. } | Error::NoGadget { .. })) => last_err = e,
                Err(e) => return Err(e),
            }
        }
    }
    Err(last_err)
}

/// Finds a short path whose removal leaves a family with `f = 0` and no bad vertices.
pub fn parity_fix(h: &Hypergraph, spec: &ExtremalSpec, ell: u32, cfg: &ParityConfig) -> Result<ParityFixResult> {
    let (n, k) = (h.n(), h.k());
    if spec.n != n || spec.k != k {
        return Err(Error::Size("hypergraph and spec disagree on n or k".into()));
    }
    if 2 * ell < k || ell >= k {
        return Err(Error::Precondition(format!("parity repair needs k/2 <= ell <= k-1, got ell = {ell}")));
    }
    let f_original = spec.f_parity()?;
    let degree_condition = if cfg.check_degree {
        let threshold = delta_threshold(n, k, ell, ThresholdMethod::Enumeration)?.value;
        Some(Rational::from_integer(h.min_ell_degree(ell, cfg.budget)? as i128) > threshold)
    } else {
        None
    };
    let relocation = relocate_with(h, spec, cfg.eps_prime, cfg.relocate, cfg.budget)?;
    let spec1 = relocation.spec1.clone();
    let f_relocated = spec1.f_parity()?;
    let v0 = relocation.v0.clone();
    let mut judge = Judge::new(h, &spec1, cfg.end_bound(k), cfg.budget);
    let mut notes = Vec::new();
    let (case, blocks) = if f_relocated == 0 {
        (FixCase::Case1, case_one(&mut judge, ell, &v0)?)
    } else {
        let mut chosen = None;
        for lstar in not_good_sets(h, &spec1, ell, cfg.split, cfg.budget)? {
            let pool = judge.all().difference(&lstar);
            let mut wrong = Vec::new();
            for r in subsets_of(&pool, (k - ell) as usize) {
                let e = lstar.union(&r);
                if h.contains_unchecked(&e) && !spec1.contains(&e) && judge.good(&r)? {
                    wrong.push(r);
                }
            }
            let pair = wrong.iter().enumerate().find_map(|(i, a)| wrong[i + 1..].iter().find(|b| a.is_disjoint(b)).map(|b| (a.clone(), b.clone())));
            if let Some((r1, r2)) = pair {
                notes.push(format!("{lstar} is not {}-good", cfg.split));
                chosen = Some((FixCase::Case21, case_single(&mut judge, ell, &v0, &lstar, &r1, &r2)?));
                break;
            }
        }
        match chosen {
            Some(c) => c,
            None => {
                let found = find_parity_pair(h, &spec1, ell, &SearchBudget::nodes(cfg.budget))?;
                match found.outcome {
                    Outcome::Found((e1, e2)) if e1.intersection_len(&e2) == ell as usize => {
                        notes.push(format!("wrong-parity edges {e1} and {e2} share {ell} vertices"));
                        let lstar = e1.intersection(&e2);
                        (FixCase::Case21, case_single(&mut judge, ell, &v0, &lstar, &e1.difference(&e2), &e2.difference(&e1))?)
                    }
                    Outcome::Found((e1, e2)) => {
                        notes.push(format!("disjoint wrong-parity edges {e1} and {e2}"));
                        (FixCase::Case22, case_pair(&mut judge, ell, &v0, &e1, &e2)?)
                    }
                    Outcome::None => {
                        return Err(Error::ParityObstruction(
                            "f = 1 and no two edges outside the family meet in 0 or ell vertices".into(),
                        ))
                    }
                    Outcome::Unknown => return Err(Error::BudgetExceeded { limit: cfg.budget }),
                }
            }
        }
    };
    let path = SegPath::new(ell, blocks);
    if let Err(v) = validate_path(h, &path) {
        return Err(construction("audit", format!("assembled path is invalid: {v}")));
    }
    let wrong = path.matching_view().iter().filter(|e| !spec1.contains(e)).count();
    let expected = usize::from(case != FixCase::Case1);
    if wrong != expected {
        return Err(construction("audit", format!("matching view has {wrong} wrong-parity edges, expected {expected}")));
    }
    let (first, last) = (path.first().expect("non-empty"), path.last().expect("non-empty"));
    let ends_in_family = spec1.contains(&first.union(last));
    let interior = path.vertices().difference(first).difference(last);
    let vertices = VertexSet::range(n).difference(&interior);
    if vertices.len() % k as usize != 0 {
        return Err(construction("audit", "residual size is not a multiple of k"));
    }
    let a = spec1.a.intersection(&vertices);
    let f = ((spec1.eta as usize * (vertices.len() / k as usize) + a.len()) % 2) as u8;
    if f != 0 || !ends_in_family {
        return Err(construction("audit", format!("residual f = {f}, ends in family: {ends_in_family}")));
    }
    let path_vertices = path.vertex_count();
    let audit = ParityAudit {
        f_original,
        f_relocated,
        wrong_parity_in_matching: wrong,
        path_vertices,
        within_size_target: Rational::from_integer(path_vertices as i128) <= cfg.size_fraction * n as i128,
        ends_in_family,
        degree_condition,
        notes,
    };
    Ok(ParityFixResult {
        case,
        path,
        interior,
        residual: Residual { vertices, a, eta: spec1.eta, f },
        relocation,
        audit,
    })
}

/// The extremal family of `spec` with a seeded fraction of the edges through `v` removed.
pub fn plant_bad_vertex(spec: &ExtremalSpec, v: u32, fraction: f64, seed: u64) -> Result<Hypergraph> {
    let b = Hypergraph::extremal(spec);
    let link = b.link(&VertexSet::singleton(v), DEFAULT_ENUM_BUDGET)?;
    let take = (fraction * link.len() as f64).floor() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let removed: Vec<VertexSet> = index::sample(&mut rng, link.len(), take)
        .into_iter()
        .map(|i| {
            let mut e = link[i].clone();
            e.insert(v);
            e
        })
        .collect();
    b.edited([], removed)
}

/// The extremal family of `spec` plus two seeded disjoint edges of the wrong
/// parity that split into ℓ- and (k−ℓ)-parts with matching parities.
pub fn plant_wrong_parity_pair(spec: &ExtremalSpec, ell: u32, seed: u64) -> Result<Hypergraph> {
    let (n, k) = (spec.n, spec.k);
    if 2 * k > n || ell == 0 || ell >= k {
        return Err(Error::Size(format!("need 2k <= n and 1 <= ell <= k-1, got n={n}, k={k}, ell={ell}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = (k - ell) as usize;
    for _ in 0..10_000 {
        let mut order: Vec<u32> = (0..n).collect();
        order.shuffle(&mut rng);
        let e1 = VertexSet::from_slice(&order[..k as usize]);
        let e2 = VertexSet::from_slice(&order[k as usize..2 * k as usize]);
        if spec.contains(&e1) || spec.contains(&e2) {
            continue;
        }
        let parities = |e: &VertexSet| subsets_of(e, r).iter().map(|s| spec.eta_of(s)).fold(0u8, |m, p| m | (1 << p));
        if parities(&e1) & parities(&e2) != 0 {
            return Hypergraph::extremal(spec).edited([e1, e2], []);
        }
    }
    Err(construction("plant", "no admissible wrong-parity pair after 10000 draws"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: u64 = DEFAULT_ENUM_BUDGET;

    fn vs(v: &[u32]) -> VertexSet {
        VertexSet::from_slice(v)
    }

    #[test]
    fn relocation_examples() {
        let spec = ExtremalSpec::with_prefix(12, 3, 6, 1).unwrap();
        let b = Hypergraph::extremal(&spec);
        let rep = relocate_bad(&b, &spec, Rational::new(1, 100), B).unwrap();
        assert!(rep.v0.is_empty() && rep.v0_prime.is_empty());
        assert_eq!(rep.spec1, spec);
        let h = plant_bad_vertex(&spec, 2, 1.0, 0).unwrap();
        let rep = relocate_bad(&h, &spec, Rational::new(1, 100), B).unwrap();
        assert_eq!(rep.v0_prime, vs(&[2]));
        assert!(!rep.a1.contains(2) && rep.a1.len() == 5);
        assert!(relocate_bad(&h, &spec, Rational::from_integer(1), B).unwrap().v0.is_empty());
    }

    #[test]
    fn relocation_matches_ratio() {
        // one vertex missing all of its family edges has ratio deg_B(v)/C(n-1,k-1)
        let spec = ExtremalSpec::with_prefix(30, 5, 15, 1).unwrap();
        let h = plant_bad_vertex(&spec, 7, 1.0, 0).unwrap();
        let g = goodness(&h, &spec, &VertexSet::singleton(7), B).unwrap();
        assert!(g.alpha_star > Rational::new(1, 4));
        assert_eq!(relocate_bad(&h, &spec, Rational::new(1, 20), B).unwrap().v0_prime, vs(&[7]));
    }

    #[test]
    fn cover_examples() {
        let cfg = ParityConfig::default();
        let spec = ExtremalSpec::with_prefix(30, 5, 15, 1).unwrap();
        let h = plant_bad_vertex(&spec, 4, 0.4, 11).unwrap();
        assert!(cover_bad_vertices(&h, &spec, 3, &VertexSet::new(), &VertexSet::new(), 0, &cfg).unwrap().is_empty());
        let mut ends = Vec::new();
        for choice in 0..2 {
            let p = cover_bad_vertices(&h, &spec, 3, &vs(&[4]), &vs(&[0, 1]), choice, &cfg).unwrap();
            assert_eq!(validate_path(&h, &p), Ok(()));
            assert_eq!(p.vertex_count(), 7);
            assert!(p.vertices().contains(4) && p.vertices().is_disjoint(&vs(&[0, 1])));
            assert!(p.edges().iter().all(|e| spec.contains(e)));
            let (a, b) = (p.first().unwrap(), p.last().unwrap());
            assert_eq!((spec.eta_of(a), spec.eta_of(b)), (choice, choice));
            ends.push(spec.eta_of(a));
        }
        assert_ne!(ends[0], ends[1]);
        let small = ExtremalSpec::with_prefix(12, 4, 6, 1).unwrap();
        let hs = Hypergraph::extremal(&small);
        assert!(matches!(
            cover_bad_vertices(&hs, &small, 2, &vs(&[0]), &VertexSet::new(), 0, &cfg),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn cover_several_vertices() {
        let spec = ExtremalSpec::with_prefix(30, 5, 15, 0).unwrap();
        let h = plant_bad_vertex(&spec, 3, 0.3, 1).unwrap();
        let m = vs(&[3, 9, 20]);
        let p = cover_bad_vertices(&h, &spec, 3, &m, &VertexSet::new(), 1, &ParityConfig::default()).unwrap();
        assert_eq!(validate_path(&h, &p), Ok(()));
        assert_eq!(p.vertex_count(), 2 * 5 * 3 - 3);
        assert!(m.is_subset(&p.vertices()));
    }

    #[test]
    fn strict_end_bound_filters_gadgets() {
        // pairs through the damaged vertex sit near 0.2, all other pairs near 0.02
        let spec = ExtremalSpec::with_prefix(30, 5, 15, 1).unwrap();
        let h = plant_bad_vertex(&spec, 4, 0.4, 11).unwrap();
        let tenth = Rational::new(1, 10);
        assert!(goodness(&h, &spec, &vs(&[0, 4]), B).unwrap().alpha_star > tenth);
        let cfg = ParityConfig { eps_double: Some(RootBound { square: tenth * tenth }), ..Default::default() };
        let p = cover_bad_vertices(&h, &spec, 3, &vs(&[4, 5]), &VertexSet::new(), 0, &cfg).unwrap();
        assert_eq!(validate_path(&h, &p), Ok(()));
        for b in [p.first().unwrap(), p.last().unwrap()] {
            assert!(goodness(&h, &spec, b, B).unwrap().alpha_star <= tenth);
        }
    }

    fn check(h: &Hypergraph, res: &ParityFixResult, n: u32) {
        assert_eq!(validate_path(h, &res.path), Ok(()));
        assert_eq!(res.residual.f, 0);
        assert!(res.audit.ends_in_family);
        assert_eq!(res.residual.vertices.len() + res.interior.len(), n as usize);
        let k = h.k();
        let fam = res.residual.spec(k).unwrap();
        assert_eq!(fam.f_parity().unwrap(), 0);
    }

    #[test]
    fn case_one_trivial() {
        let spec = ExtremalSpec::with_prefix(30, 5, 14, 1).unwrap();
        let b = Hypergraph::extremal(&spec);
        let res = parity_fix(&b, &spec, 3, &ParityConfig::default()).unwrap();
        assert_eq!(res.case, FixCase::Case1);
        assert_eq!(res.path.segments.len(), 2);
        assert!(res.interior.is_empty());
        assert_eq!(res.audit.wrong_parity_in_matching, 0);
        check(&b, &res, 30);
    }

    #[test]
    fn case_one_with_bad_vertex() {
        let spec = ExtremalSpec::with_prefix(30, 5, 14, 1).unwrap();
        let h = plant_bad_vertex(&spec, 6, 0.15, 2).unwrap();
        let res = parity_fix(&h, &spec, 3, &ParityConfig::default()).unwrap();
        assert_eq!(res.relocation.v0, vs(&[6]));
        assert!(res.relocation.v0_prime.is_empty());
        assert_eq!(res.case, FixCase::Case1);
        assert!(res.interior.contains(6));
        assert_eq!(res.audit.path_vertices, 10);
        check(&h, &res, 30);
    }

    #[test]
    fn case_two_planted_pair() {
        let spec = ExtremalSpec::with_prefix(30, 5, 15, 1).unwrap();
        assert_eq!(spec.f_parity().unwrap(), 1);
        let h = plant_wrong_parity_pair(&spec, 3, 4).unwrap();
        let res = parity_fix(&h, &spec, 3, &ParityConfig::default()).unwrap();
        assert_eq!(res.case, FixCase::Case22);
        assert_eq!(res.audit.wrong_parity_in_matching, 1);
        assert!(!res.audit.within_size_target);
        check(&h, &res, 30);
    }

    #[test]
    fn case_two_single_bad_set() {
        let spec = ExtremalSpec::with_prefix(30, 5, 15, 1).unwrap();
        let b = Hypergraph::extremal(&spec);
        let lstar = vs(&[0, 1, 20]);
        let link = b.link(&lstar, B).unwrap();
        let removed: Vec<VertexSet> = link.iter().map(|r| r.union(&lstar)).collect();
        let added: Vec<VertexSet> = [vs(&[21, 22]), vs(&[23, 24]), vs(&[25, 26])]
            .into_iter()
            .map(|r| r.union(&lstar))
            .filter(|e| !spec.contains(e))
            .collect();
        assert_eq!(added.len(), 3);
        let h = b.edited(added, removed).unwrap();
        let res = parity_fix(&h, &spec, 3, &ParityConfig::default()).unwrap();
        assert_eq!(res.case, FixCase::Case21);
        assert_eq!(res.path.segments[2], lstar);
        assert_eq!(res.audit.wrong_parity_in_matching, 1);
        check(&h, &res, 30);
    }

    #[test]
    fn case_two_with_bad_vertex_and_pair() {
        let spec = ExtremalSpec::with_prefix(30, 5, 15, 1).unwrap();
        let planted = plant_wrong_parity_pair(&spec, 3, 9).unwrap();
        let Some(crate::hypergraph::Structure::Edited { added, .. }) = planted.structure() else { panic!() };
        let bad = plant_bad_vertex(&spec, 29, 0.15, 3).unwrap();
        let Some(crate::hypergraph::Structure::Edited { removed, .. }) = bad.structure() else { panic!() };
        let h = Hypergraph::extremal(&spec)
            .edited(added.iter().cloned(), removed.iter().filter(|e| !added.contains(*e)).cloned())
            .unwrap();
        let res = parity_fix(&h, &spec, 3, &ParityConfig::default()).unwrap();
        assert_eq!(res.case, FixCase::Case22);
        assert!(res.interior.contains(29) || res.relocation.v0.is_empty());
        check(&h, &res, 30);
    }

    #[test]
    fn obstruction_without_wrong_edges() {
        let spec = ExtremalSpec::with_prefix(30, 5, 15, 1).unwrap();
        let b = Hypergraph::extremal(&spec);
        assert!(matches!(parity_fix(&b, &spec, 3, &ParityConfig::default()), Err(Error::ParityObstruction(_))));
        assert!(parity_fix(&b, &spec, 2, &ParityConfig::default()).is_err());
    }

    #[test]
    fn degree_condition_is_reported() {
        let spec = ExtremalSpec::with_prefix(20, 5, 10, 0).unwrap();
        let h = plant_wrong_parity_pair(&spec, 3, 1).unwrap();
        let cfg = ParityConfig { check_degree: true, ..Default::default() };
        // adding two edges does not lift the minimum 3-degree above the threshold
        let res = parity_fix(&h, &spec, 3, &cfg).unwrap();
        assert_eq!(res.audit.degree_condition, Some(false));
    }
}
