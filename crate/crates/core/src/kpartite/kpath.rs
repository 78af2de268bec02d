//! Hamilton (ℓ,k−ℓ)-paths with prescribed ends in dense k-partite graphs.
//!
//! Large boxes follow the inductive construction: absorbing gadgets for one
//! part, a recursive path on the remaining k−1 parts, and two bipartite
//! matchings that thread the last part through the spine. Boxes with parts
//! smaller than `n0` are searched exactly.

use std::ops::ControlFlow;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::matching::{left_perfect_matching, Bipartite};
use super::{Family, KPartiteRestriction};
use crate::cycle::{validate_path, SegPath};
use crate::error::{construction, Error, HallWitness, Result};
use crate::goodness::RootBound;
use crate::search::SearchBudget;
use crate::vset::VertexSet;
use crate::Rational;

#[derive(Clone, Debug)]
pub struct KPathConfig {
    /// Part sizes below this are handled by exact search.
    pub n0: usize,
    /// Missing-completion tolerance for the reduced family; `None` means `1/(128k)`.
    pub tau: Option<Rational>,
    pub alpha: Rational,
    /// Gadget sampling rounds.
    pub retries: usize,
    pub budget: SearchBudget,
}

impl Default for KPathConfig {
    fn default() -> Self {
        KPathConfig {
            n0: 12,
            tau: None,
            alpha: Rational::new(1, 50),
            retries: 64,
            budget: SearchBudget::nodes(5_000_000),
        }
    }
}

/// Builds a Hamilton (ℓ,k−ℓ)-path of `f` from `l` to `r`.
pub fn build_ham_path_kpartite(
    f: &KPartiteRestriction,
    ell: u32,
    l: &VertexSet,
    r: &VertexSet,
    seed: u64,
    cfg: &KPathConfig,
) -> Result<SegPath> {
    let k = f.k();
    if ell == 0 || ell as usize >= k || l.len() != ell as usize || r.len() != k - ell as usize {
        return Err(Error::Size(format!("ends of sizes {} and {} for ell={ell}, k={k}", l.len(), r.len())));
    }
    let parts: Vec<Vec<u32>> = f.parts.iter().map(VertexSet::to_vec).collect();
    let fam = |e: &VertexSet| f.contains(e);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = build_blocks(&fam, &parts, ell as usize, l, r, cfg, &mut rng)?;
    let path = SegPath::new(ell, blocks);
    validate_path(&f.graph, &path).map_err(|v| construction("validate", format!("{v:?}")))?;
    if path.vertex_count() != k * f.part_size() {
        return Err(construction("validate", "path does not cover the box"));
    }
    Ok(path)
}

/// Core recursion over an arbitrary membership oracle. Returns blocks from
/// `l` to `r`.
pub(crate) fn build_blocks(
    fam: &Family<'_>,
    parts: &[Vec<u32>],
    ell: usize,
    l: &VertexSet,
    r: &VertexSet,
    cfg: &KPathConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<VertexSet>> {
    let k = parts.len();
    let p = parts[0].len();
    let (lp, rp) = sides(parts, l, r)?;
    if k == 2 {
        let (u, w) = (l.first().unwrap(), r.first().unwrap());
        let has = |a: u32, b: u32| fam(&VertexSet::from_slice(&[a, b]));
        let seq = bipartite_path(&parts[lp[0]], &parts[rp[0]], &has, u, w, &cfg.budget, rng)?;
        return Ok(seq.into_iter().map(VertexSet::singleton).collect());
    }
    if 2 * ell > k {
        let mut b = build_blocks(fam, parts, k - ell, r, l, cfg, rng)?;
        b.reverse();
        return Ok(b);
    }
    if p < cfg.n0 {
        return small_box(fam, parts, &lp, &rp, l, r, &cfg.budget);
    }
    inductive(fam, parts, &lp, &rp, l, r, cfg, rng)
}

/// Indices of the parts met by `l` and by `r`; both must be transversal and
/// together use every part.
fn sides(parts: &[Vec<u32>], l: &VertexSet, r: &VertexSet) -> Result<(Vec<usize>, Vec<usize>)> {
    let owner = |v: u32| parts.iter().position(|p| p.binary_search(&v).is_ok());
    let mut lp = Vec::new();
    let mut rp = Vec::new();
    for (set, out) in [(l, &mut lp), (r, &mut rp)] {
        for v in set.iter() {
            let i = owner(v).ok_or_else(|| Error::Precondition(format!("vertex {v} is outside the box")))?;
            out.push(i);
        }
    }
    let mut all: Vec<usize> = lp.iter().chain(&rp).copied().collect();
    all.sort_unstable();
    all.dedup();
    if all.len() != parts.len() || lp.len() + rp.len() != parts.len() {
        return Err(Error::Precondition("ends must meet every part exactly once".into()));
    }
    lp.sort_unstable();
    rp.sort_unstable();
    Ok((lp, rp))
}

/// Visits transversals choosing one vertex from each pool, lexicographically.
pub(crate) fn for_each_transversal<B>(
    pools: &[Vec<u32>],
    mut visit: impl FnMut(&VertexSet) -> ControlFlow<B>,
) -> Option<B> {
    if pools.iter().any(Vec::is_empty) {
        return None;
    }
    let mut idx = vec![0usize; pools.len()];
    loop {
        let set = VertexSet::from_slice(&idx.iter().zip(pools).map(|(&i, p)| p[i]).collect::<Vec<_>>());
        if let ControlFlow::Break(b) = visit(&set) {
            return Some(b);
        }
        let mut j = pools.len();
        loop {
            if j == 0 {
                return None;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < pools[j].len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

fn free_pools(parts: &[Vec<u32>], which: &[usize], taken: &VertexSet) -> Vec<Vec<u32>> {
    which.iter().map(|&i| parts[i].iter().copied().filter(|&v| !taken.contains(v)).collect()).collect()
}

fn random_transversal(pools: &[Vec<u32>], rng: &mut ChaCha8Rng) -> Option<VertexSet> {
    let mut out = VertexSet::new();
    for p in pools {
        out.insert(*p.choose(rng)?);
    }
    Some(out)
}

/// A transversal of the free vertices satisfying `pred`: random probes first,
/// then an exhaustive lexicographic scan.
fn pick(
    pools: &[Vec<u32>],
    rng: &mut ChaCha8Rng,
    probes: usize,
    mut pred: impl FnMut(&VertexSet) -> bool,
) -> Option<VertexSet> {
    for _ in 0..probes {
        let c = random_transversal(pools, rng)?;
        if pred(&c) {
            return Some(c);
        }
    }
    for_each_transversal(pools, |c| if pred(c) { ControlFlow::Break(c.clone()) } else { ControlFlow::Continue(()) })
}

/// Fraction of completions of `j` (over the untouched full parts) missing from `fam`.
fn missing_fraction(fam: &Family<'_>, parts: &[Vec<u32>], touched: &[usize], j: &VertexSet) -> Rational {
    let others: Vec<Vec<u32>> =
        (0..parts.len()).filter(|i| !touched.contains(i)).map(|i| parts[i].clone()).collect();
    let mut total = 0i128;
    let mut missing = 0i128;
    for_each_transversal::<()>(&others, |c| {
        total += 1;
        if !fam(&c.union(j)) {
            missing += 1;
        }
        ControlFlow::Continue(())
    });
    if total == 0 {
        return Rational::from_integer(0);
    }
    Rational::new(missing, total)
}

struct Gadget {
    la: VertexSet,
    rm: VertexSet,
    lb: VertexSet,
}

impl Gadget {
    fn absorbs(&self, fam: &Family<'_>, x: u32) -> bool {
        let mid = {
            let mut s = self.rm.clone();
            s.insert(x);
            s
        };
        fam(&self.la.union(&mid)) && fam(&mid.union(&self.lb))
    }
}

#[allow(clippy::too_many_arguments)]
fn inductive(
    fam: &Family<'_>,
    parts: &[Vec<u32>],
    lp: &[usize],
    rp: &[usize],
    l: &VertexSet,
    r: &VertexSet,
    cfg: &KPathConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<VertexSet>> {
    let k = parts.len();
    let p = parts[0].len();
    let q = (p / (16 * k)).max(1);
    let xk = *rp.last().unwrap();
    let rm: Vec<usize> = rp[..rp.len() - 1].to_vec();
    let lrm: Vec<usize> = lp.iter().chain(&rm).copied().collect();
    let bound = RootBound::alpha_prime(cfg.alpha, k as u32);
    let good = |j: &VertexSet, touched: &[usize]| bound.admits(missing_fraction(fam, parts, touched, j));
    let ends = l.union(r);
    let xk_free = |taken: &VertexSet| -> Vec<u32> {
        parts[xk].iter().copied().filter(|&v| !taken.contains(v)).collect()
    };

    // absorbing gadgets for the last part
    let mut best: Option<(usize, Vec<Gadget>)> = None;
    for _ in 0..cfg.retries.max(1) {
        let mut taken = ends.clone();
        let mut gadgets = Vec::with_capacity(q);
        for _ in 0..q {
            let mut found = None;
            for _ in 0..200 {
                let Some(la) = random_transversal(&free_pools(parts, lp, &taken), rng) else { break };
                let Some(lb) = random_transversal(&free_pools(parts, lp, &taken.union(&la)), rng) else { break };
                let Some(rmb) = random_transversal(&free_pools(parts, &rm, &taken), rng) else { break };
                if good(&la, lp) && good(&lb, lp) && good(&la.union(&rmb), &lrm) && good(&rmb.union(&lb), &lrm) {
                    found = Some(Gadget { la, rm: rmb, lb });
                    break;
                }
            }
            let Some(g) = found else { break };
            taken.union_with(&g.la);
            taken.union_with(&g.lb);
            taken.union_with(&g.rm);
            gadgets.push(g);
        }
        if gadgets.len() < q {
            continue;
        }
        let score = xk_free(&ends)
            .into_iter()
            .map(|x| gadgets.iter().filter(|g| g.absorbs(fam, x)).count())
            .min()
            .unwrap_or(q);
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, gadgets));
        }
        if 2 * score >= q {
            break;
        }
    }
    let Some((_, gadgets)) = best else {
        return Err(construction("gadget", format!("no good gadget family after {} rounds", cfg.retries)));
    };
    let mut taken = ends.clone();
    for g in &gadgets {
        taken.union_with(&g.la);
        taken.union_with(&g.lb);
        taken.union_with(&g.rm);
    }

    // connectors R_{2i-1} between consecutive gadgets
    let mut connectors = vec![VertexSet::new(); q];
    for i in 1..q {
        let (prev, next) = (&gadgets[i - 1].lb, &gadgets[i].la);
        let c = pick(&free_pools(parts, rp, &taken), rng, 200, |c| fam(&prev.union(c)) && fam(&c.union(next)))
            .ok_or_else(|| construction("connector", format!("no connector before gadget {i}")))?;
        taken.union_with(&c);
        connectors[i] = c;
    }
    // L0 and R1 join R to the first gadget
    let la1 = &gadgets[0].la;
    let mut start = None;
    for _ in 0..200 {
        let Some(l0) = random_transversal(&free_pools(parts, lp, &taken), rng) else { break };
        if !fam(&r.union(&l0)) {
            continue;
        }
        let t = taken.union(&l0);
        if let Some(r1) = pick(&free_pools(parts, rp, &t), rng, 50, |c| fam(&l0.union(c)) && fam(&c.union(la1))) {
            start = Some((l0, r1));
            break;
        }
    }
    if start.is_none() {
        start = for_each_transversal(&free_pools(parts, lp, &taken), |l0| {
            if !fam(&r.union(l0)) {
                return ControlFlow::Continue(());
            }
            let t = taken.union(l0);
            let pools = free_pools(parts, rp, &t);
            match for_each_transversal(&pools, |c| {
                if fam(&l0.union(c)) && fam(&c.union(la1)) { ControlFlow::Break(c.clone()) } else { ControlFlow::Continue(()) }
            }) {
                Some(r1) => ControlFlow::Break((l0.clone(), r1)),
                None => ControlFlow::Continue(()),
            }
        });
    }
    let (l0, r1) = start.ok_or_else(|| construction("connector", "no L0, R1 joining R to the gadgets"))?;
    taken.union_with(&l0);
    taken.union_with(&r1);
    connectors[0] = r1;

    // far end of the spine: an R^- block that many free last-part vertices extend
    let lb_last = &gadgets[q - 1].lb;
    let xk_rest = xk_free(&taken);
    let rm_pools = free_pools(parts, &rm, &taken);
    let extend_count = |c: &VertexSet| {
        xk_rest
            .iter()
            .filter(|&&x| {
                let mut e = lb_last.union(c);
                e.insert(x);
                fam(&e)
            })
            .count()
    };
    let mut spine_end: Option<(usize, VertexSet)> = None;
    for _ in 0..64 {
        let Some(c) = random_transversal(&rm_pools, rng) else { break };
        let cnt = extend_count(&c);
        if spine_end.as_ref().is_none_or(|(b, _)| cnt > *b) {
            spine_end = Some((cnt, c.clone()));
        }
        if 2 * cnt >= xk_rest.len() && good(&c, &rm) {
            spine_end = Some((cnt, c));
            break;
        }
    }
    let (_, spine_end) = spine_end.ok_or_else(|| construction("spine", "no free R- block"))?;

    // reduced family on the remaining k-1 parts
    let tau = cfg.tau.unwrap_or(Rational::new(1, 128 * k as i128));
    let limit = (tau * Rational::from_integer(p as i128)).floor().to_integer() as usize;
    let xk_all = &parts[xk];
    let reduced = move |s: &VertexSet| -> bool {
        let mut miss = 0;
        for &x in xk_all {
            let mut e = s.clone();
            e.insert(x);
            if !fam(&e) {
                miss += 1;
                if miss > limit {
                    return false;
                }
            }
        }
        true
    };
    let sub_taken = taken.difference(l);
    let sub_parts: Vec<Vec<u32>> = (0..k)
        .filter(|&i| i != xk)
        .map(|i| parts[i].iter().copied().filter(|&v| !sub_taken.contains(v)).collect())
        .collect();
    let sub_ell = lp.len();
    let mut spine = build_blocks(&reduced, &sub_parts, sub_ell, l, &spine_end, cfg, rng)?;
    spine.reverse();

    // thread the free last-part vertices through gadgets and spine
    let spine_r: Vec<usize> = (0..spine.len()).step_by(2).collect();
    let prev_l = |j: usize| if j == 0 { lb_last } else { &spine[j - 1] };
    let x_free = xk_rest;
    let z_adj: Vec<Vec<usize>> = x_free
        .iter()
        .map(|&x| {
            spine_r
                .iter()
                .enumerate()
                .filter(|&(_, &j)| {
                    let mut mid = spine[j].clone();
                    mid.insert(x);
                    fam(&prev_l(j).union(&mid)) && fam(&mid.union(&spine[j + 1]))
                })
                .map(|(t, _)| t)
                .collect()
        })
        .collect();
    let g_adj: Vec<Vec<usize>> =
        x_free.iter().map(|&x| (0..q).filter(|&i| gadgets[i].absorbs(fam, x)).collect()).collect();
    let half = spine_r.len().div_ceil(2);
    let mut order: Vec<usize> = (0..x_free.len()).collect();
    order.sort_by_key(|&i| (z_adj[i].len() >= half, std::cmp::Reverse(g_adj[i].len()), z_adj[i].len(), x_free[i]));
    let (y_idx, z_idx) = order.split_at(q.min(order.len()));
    if z_idx.len() != spine_r.len() || y_idx.len() != q {
        return Err(construction("spine", "part sizes do not balance after gadget removal"));
    }

    let y_graph = Bipartite::new(q, y_idx.iter().map(|&i| g_adj[i].clone()).collect());
    let y_match = left_perfect_matching(&y_graph, "B(Y', R-)").map_err(|e| relabel(e, y_idx, &x_free))?;
    let z_graph = Bipartite::new(spine_r.len(), z_idx.iter().map(|&i| z_adj[i].clone()).collect());
    let z_match = left_perfect_matching(&z_graph, "B(Z', R1-)").map_err(|e| relabel(e, z_idx, &x_free))?;

    let mut gadget_x = vec![0u32; q];
    for (t, &g) in y_match.iter().enumerate() {
        gadget_x[g] = x_free[y_idx[t]];
    }
    let mut spine_x = vec![0u32; spine_r.len()];
    for (t, &j) in z_match.iter().enumerate() {
        spine_x[j] = x_free[z_idx[t]];
    }

    // R L0 R1 L1 (R2 x) L2 R3 ... L2q, then the threaded spine, reversed at the end
    let mut seq = vec![r.clone(), l0];
    for (i, g) in gadgets.iter().enumerate() {
        seq.push(connectors[i].clone());
        seq.push(g.la.clone());
        let mut mid = g.rm.clone();
        mid.insert(gadget_x[i]);
        seq.push(mid);
        seq.push(g.lb.clone());
    }
    for (j, b) in spine.into_iter().enumerate() {
        if j % 2 == 0 {
            let mut mid = b;
            mid.insert(spine_x[j / 2]);
            seq.push(mid);
        } else {
            seq.push(b);
        }
    }
    seq.reverse();
    if seq.len() != 2 * p {
        return Err(construction("splice", format!("{} blocks for part size {p}", seq.len())));
    }
    Ok(seq)
}

/// Rewrites a Hall witness so the deficient side lists vertex labels.
fn relabel(e: Error, idx: &[usize], labels: &[u32]) -> Error {
    match e {
        Error::HallFailure(w) => Error::HallFailure(HallWitness {
            graph: w.graph,
            deficient: w.deficient.iter().map(|&t| labels[idx[t]] as usize).collect(),
            neighbours: w.neighbours,
        }),
        other => other,
    }
}

/// Exact block-by-block search for small boxes.
fn small_box(
    fam: &Family<'_>,
    parts: &[Vec<u32>],
    lp: &[usize],
    rp: &[usize],
    l: &VertexSet,
    r: &VertexSet,
    budget: &SearchBudget,
) -> Result<Vec<VertexSet>> {
    let p = parts[0].len();
    let total = 2 * p;
    let mut taken = l.union(r);
    let mut seq = vec![l.clone()];
    let mut nodes = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        fam: &Family<'_>,
        parts: &[Vec<u32>],
        lp: &[usize],
        rp: &[usize],
        r: &VertexSet,
        total: usize,
        taken: &mut VertexSet,
        seq: &mut Vec<VertexSet>,
        nodes: &mut u64,
        limit: u64,
    ) -> Result<bool> {
        let pos = seq.len();
        if pos == total - 1 {
            return Ok(fam(&seq[pos - 1].union(r)));
        }
        let which = if pos % 2 == 1 { rp } else { lp };
        let pools = free_pools(parts, which, taken);
        let last = pos == total - 2;
        let mut cands = Vec::new();
        for_each_transversal::<()>(&pools, |c| {
            let prev = seq.last().unwrap();
            if fam(&prev.union(c)) && (!last || fam(&c.union(r))) {
                cands.push(c.clone());
            }
            ControlFlow::Continue(())
        });
        for c in cands {
            *nodes += 1;
            if *nodes > limit {
                return Err(Error::BudgetExceeded { limit });
            }
            taken.union_with(&c);
            seq.push(c);
            if dfs(fam, parts, lp, rp, r, total, taken, seq, nodes, limit)? {
                return Ok(true);
            }
            let c = seq.pop().unwrap();
            taken.difference_with(&c);
        }
        Ok(false)
    }

    if dfs(fam, parts, lp, rp, r, total, &mut taken, &mut seq, &mut nodes, budget.max_nodes)? {
        seq.push(r.clone());
        Ok(seq)
    } else {
        Err(construction("small-box", "no Hamilton path with the given ends"))
    }
}

/// Hamilton path in a balanced bipartite graph from `start` to `end`, which
/// must lie in opposite parts. Returns the vertex sequence.
pub fn ham_path_bipartite_base(
    left: &[u32],
    right: &[u32],
    has: impl Fn(u32, u32) -> bool,
    start: u32,
    end: u32,
    seed: u64,
    budget: &SearchBudget,
) -> Result<Vec<u32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (s_left, e_right) = (left.contains(&start), right.contains(&end));
    if s_left && e_right {
        bipartite_path(left, right, &has, start, end, budget, &mut rng)
    } else if right.contains(&start) && left.contains(&end) {
        let mut p = bipartite_path(left, right, &has, end, start, budget, &mut rng)?;
        p.reverse();
        Ok(p)
    } else {
        Err(Error::Precondition(format!("endpoints {start} and {end} must lie in opposite parts")))
    }
}

fn bipartite_path(
    left: &[u32],
    right: &[u32],
    has: &dyn Fn(u32, u32) -> bool,
    start: u32,
    end: u32,
    budget: &SearchBudget,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<u32>> {
    let p = left.len();
    if right.len() != p || p == 0 {
        return Err(Error::Size(format!("parts of sizes {} and {}", p, right.len())));
    }
    let labels: Vec<u32> = left.iter().chain(right).copied().collect();
    let n = 2 * p;
    let mut adj = vec![vec![false; n]; n];
    for i in 0..p {
        for j in 0..p {
            if has(left[i], right[j]) {
                adj[i][p + j] = true;
                adj[p + j][i] = true;
            }
        }
    }
    // the path pairs up as a perfect matching, so Hall's condition is necessary
    let g = Bipartite::new(p, (0..p).map(|i| (0..p).filter(|&j| adj[i][p + j]).collect()).collect());
    if let Err(Error::HallFailure(w)) = left_perfect_matching(&g, "bipartite base") {
        return Err(Error::HallFailure(HallWitness {
            graph: w.graph,
            deficient: w.deficient.iter().map(|&i| left[i] as usize).collect(),
            neighbours: w.neighbours.iter().map(|&j| right[j] as usize).collect(),
        }));
    }
    let s = left.iter().position(|&v| v == start).unwrap();
    let t = p + right.iter().position(|&v| v == end).unwrap();
    let out = rotate_extend(&adj, s, t, rng, 50 * n * n)
        .map(Ok)
        .unwrap_or_else(|| backtrack(&adj, s, t, budget.max_nodes))?;
    Ok(out.into_iter().map(|i| labels[i]).collect())
}

/// Pósa-style rotation–extension with the start fixed and `t` held back.
fn rotate_extend(adj: &[Vec<bool>], s: usize, t: usize, rng: &mut ChaCha8Rng, steps: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut path = vec![s];
    let mut on = vec![false; n];
    on[s] = true;
    let free_deg = |v: usize, on: &[bool]| (0..n).filter(|&u| adj[v][u] && !on[u] && u != t).count();
    for _ in 0..steps {
        let end = *path.last().unwrap();
        if path.len() == n - 1 {
            if adj[end][t] {
                path.push(t);
                return Some(path);
            }
        } else if let Some(v) =
            (0..n).filter(|&u| adj[end][u] && !on[u] && u != t).min_by_key(|&u| (free_deg(u, &on), u))
        {
            path.push(v);
            on[v] = true;
            continue;
        }
        // rotate: end ~ path[i] turns path[i+1] into the new end
        let pivots: Vec<usize> = (0..path.len().saturating_sub(2)).filter(|&i| adj[end][path[i]]).collect();
        let useful: Vec<usize> = pivots
            .iter()
            .copied()
            .filter(|&i| {
                let ne = path[i + 1];
                if path.len() == n - 1 { adj[ne][t] } else { free_deg(ne, &on) > 0 }
            })
            .collect();
        let i = *useful.choose(rng).or_else(|| pivots.choose(rng))?;
        path[i + 1..].reverse();
    }
    None
}

fn backtrack(adj: &[Vec<bool>], s: usize, t: usize, limit: u64) -> Result<Vec<usize>> {
    let n = adj.len();
    let mut path = vec![s];
    let mut on = vec![false; n];
    on[s] = true;
    let mut nodes = 0u64;
    fn go(
        adj: &[Vec<bool>],
        t: usize,
        path: &mut Vec<usize>,
        on: &mut [bool],
        nodes: &mut u64,
        limit: u64,
    ) -> Result<bool> {
        let n = adj.len();
        let end = *path.last().unwrap();
        if path.len() == n - 1 {
            return Ok(adj[end][t]);
        }
        let mut next: Vec<usize> = (0..n).filter(|&u| adj[end][u] && !on[u] && u != t).collect();
        next.sort_by_key(|&u| ((0..n).filter(|&w| adj[u][w] && !on[w]).count(), u));
        for v in next {
            *nodes += 1;
            if *nodes > limit {
                return Err(Error::BudgetExceeded { limit });
            }
            on[v] = true;
            path.push(v);
            if go(adj, t, path, on, nodes, limit)? {
                return Ok(true);
            }
            path.pop();
            on[v] = false;
        }
        Ok(false)
    }
    if go(adj, t, &mut path, &mut on, &mut nodes, limit)? {
        path.push(t);
        Ok(path)
    } else {
        Err(construction("bipartite base", "no Hamilton path with the given ends"))
    }
}
