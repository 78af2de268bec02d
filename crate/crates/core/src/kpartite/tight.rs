//! Greedy tight paths in dense k-partite graphs and the path cover built
//! from them.

use std::collections::HashMap;

use serde::Serialize;

use super::KPartiteRestriction;
use crate::cycle::SegPath;
use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// A tight path: every `k` consecutive vertices form an edge.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TightPath {
    pub vertices: Vec<u32>,
    /// `c · m`, the promised length.
    pub target: f64,
}

impl TightPath {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn meets_target(&self) -> bool {
        self.vertices.len() as f64 >= self.target
    }

    /// Checks every k-window against `f`.
    pub fn is_valid(&self, f: &KPartiteRestriction) -> bool {
        let k = f.k();
        let distinct = VertexSet::from_slice(&self.vertices).len() == self.vertices.len();
        distinct && self.vertices.windows(k).all(|w| f.contains(&VertexSet::from_slice(w)))
    }
}

/// Edges indexed by their (k−1)-subsets, with pruning of low-degree subsets.
struct Index {
    edges: Vec<Vec<u32>>,
    alive: Vec<bool>,
    by_key: HashMap<VertexSet, Vec<usize>>,
    deg: HashMap<VertexSet, usize>,
}

impl Index {
    fn new(edges: Vec<Vec<u32>>) -> Self {
        let mut by_key: HashMap<VertexSet, Vec<usize>> = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            for j in 0..e.len() {
                by_key.entry(key(e, j)).or_default().push(i);
            }
        }
        let deg = by_key.iter().map(|(k, v)| (k.clone(), v.len())).collect();
        let alive = vec![true; edges.len()];
        Index { edges, alive, by_key, deg }
    }

    /// Repeatedly deletes edges through a (k−1)-set of positive degree below `d0`.
    fn prune(&mut self, d0: usize) {
        let mut stack: Vec<VertexSet> =
            self.deg.iter().filter(|(_, &d)| d > 0 && d < d0).map(|(k, _)| k.clone()).collect();
        stack.sort();
        while let Some(kk) = stack.pop() {
            let d = self.deg[&kk];
            if d == 0 || d >= d0 {
                continue;
            }
            for &i in &self.by_key[&kk] {
                if !self.alive[i] {
                    continue;
                }
                self.alive[i] = false;
                for j in 0..self.edges[i].len() {
                    let other = key(&self.edges[i], j);
                    let dd = self.deg.get_mut(&other).unwrap();
                    *dd -= 1;
                    if *dd > 0 && *dd < d0 {
                        stack.push(other);
                    }
                }
            }
        }
    }

    /// Unused vertices `v` with `window ∪ {v}` an alive edge.
    fn extensions(&self, window: &[u32], used: &VertexSet) -> Vec<u32> {
        let kk = VertexSet::from_slice(window);
        let Some(list) = self.by_key.get(&kk) else { return vec![] };
        let mut out: Vec<u32> = list
            .iter()
            .filter(|&&i| self.alive[i])
            .filter_map(|&i| self.edges[i].iter().copied().find(|v| !kk.contains(*v)))
            .filter(|&v| !used.contains(v))
            .collect();
        out.sort_unstable();
        out
    }

    fn alive_degree(&self, window: &[u32]) -> usize {
        self.deg.get(&VertexSet::from_slice(window)).copied().unwrap_or(0)
    }
}

fn key(e: &[u32], skip: usize) -> VertexSet {
    VertexSet::from_slice(&e.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect::<Vec<_>>())
}

/// Prunes, then grows a tight path greedily from both ends of the first
/// surviving edge. Edge vertex lists are ordered by part.
fn grow(edges: Vec<Vec<u32>>, m: usize, c: f64) -> Vec<u32> {
    let Some(k) = edges.first().map(Vec::len) else { return vec![] };
    let mut idx = Index::new(edges);
    let d0 = ((c * m as f64 / k as f64).floor() as usize).max(1);
    idx.prune(d0);
    let Some(start) = (0..idx.edges.len()).find(|&i| idx.alive[i]) else { return vec![] };
    let mut path: std::collections::VecDeque<u32> = idx.edges[start].iter().copied().collect();
    let mut used = VertexSet::from_slice(&idx.edges[start]);

    // prefer the continuation whose next window has the most alive edges
    let choose = |idx: &Index, cands: Vec<u32>, window: &[u32], front: bool| -> Option<u32> {
        cands.into_iter().max_by_key(|&v| {
            let mut w: Vec<u32> = window.to_vec();
            if front {
                w.insert(0, v);
                w.pop();
            } else {
                w.push(v);
                w.remove(0);
            }
            (idx.alive_degree(&w), std::cmp::Reverse(v))
        })
    };
    loop {
        let n = path.len();
        let tail: Vec<u32> = path.iter().skip(n - (k - 1)).copied().collect();
        let Some(v) = choose(&idx, idx.extensions(&tail, &used), &tail, false) else { break };
        used.insert(v);
        path.push_back(v);
    }
    loop {
        let head: Vec<u32> = path.iter().take(k - 1).copied().collect();
        let Some(v) = choose(&idx, idx.extensions(&head, &used), &head, true) else { break };
        used.insert(v);
        path.push_front(v);
    }
    path.into_iter().collect()
}

fn part_ordered(f: &KPartiteRestriction, e: &VertexSet) -> Vec<u32> {
    let mut v = e.to_vec();
    v.sort_by_key(|&x| f.part_of(x));
    v
}

/// A tight path on at least `c · m` vertices in a k-partite graph with at
/// least `c · m^k` edges, where `m` is the part size.
pub fn greedy_tight_path(f: &KPartiteRestriction, c: f64) -> Result<TightPath> {
    let k = f.k() as i32;
    let m = f.part_size();
    let edges = f.edges();
    if !(c > 0.0) || (edges.len() as f64) < c * (m as f64).powi(k) {
        return Err(Error::Precondition(format!(
            "{} edges is below c * m^k = {}",
            edges.len(),
            c * (m as f64).powi(k)
        )));
    }
    let ordered = edges.iter().map(|e| part_ordered(f, e)).collect();
    Ok(TightPath { vertices: grow(ordered, m, c), target: c * m as f64 })
}

#[derive(Debug, Clone, Serialize)]
pub struct PathCover {
    pub paths: Vec<SegPath>,
    pub uncovered: usize,
    /// `k ε m`.
    pub uncovered_bound: f64,
    /// `k / ((d − 2ε) ε)`.
    pub path_bound: f64,
    /// True if the greedy ran out of edges before the uncovered parts shrank below `εm`.
    pub stalled: bool,
}

impl PathCover {
    pub fn within_bounds(&self) -> bool {
        self.uncovered as f64 <= self.uncovered_bound && self.paths.len() as f64 <= self.path_bound
    }
}

/// Covers a dense k-partite graph by disjoint (ℓ,k−ℓ)-paths cut from greedy
/// tight paths, stopping once every part has fewer than `εm` uncovered vertices.
pub fn path_cover_tuple(f: &KPartiteRestriction, ell: u32, eps: f64, d: f64) -> Result<PathCover> {
    let k = f.k();
    let m = f.part_size();
    if ell == 0 || ell as usize >= k {
        return Err(Error::Size(format!("ell={ell} for k={k}")));
    }
    if !(eps > 0.0 && d > 2.0 * eps) {
        return Err(Error::Precondition(format!("need d > 2 eps (d={d}, eps={eps})")));
    }
    let need = k as f64 / (eps * (d - eps));
    if (m as f64) <= need {
        return Err(Error::Precondition(format!("part size {m} must exceed k/(eps(d-eps)) = {need:.2}")));
    }
    let ell = ell as usize;
    let all: Vec<Vec<u32>> = f.edges().iter().map(|e| part_ordered(f, e)).collect();
    let mut covered = VertexSet::new();
    let mut paths = Vec::new();
    let mut stalled = false;
    loop {
        let free: Vec<usize> = f.parts.iter().map(|p| p.len() - p.intersection_len(&covered)).collect();
        let m_free = *free.iter().max().unwrap();
        if (m_free as f64) < eps * m as f64 {
            break;
        }
        let live: Vec<Vec<u32>> = all.iter().filter(|e| e.iter().all(|&v| !covered.contains(v))).cloned().collect();
        let c = live.len() as f64 / (m_free as f64).powi(k as i32);
        let tight = grow(live, m_free, c);
        // cut into alternating blocks of sizes ell, k - ell
        let mut blocks = Vec::new();
        let mut at = 0;
        loop {
            let size = if blocks.len() % 2 == 0 { ell } else { k - ell };
            if at + size > tight.len() {
                break;
            }
            blocks.push(VertexSet::from_slice(&tight[at..at + size]));
            at += size;
        }
        if blocks.len() < 2 {
            stalled = true;
            break;
        }
        for b in &blocks {
            covered.union_with(b);
        }
        paths.push(SegPath::new(ell as u32, blocks));
    }
    let uncovered = k * m - covered.len();
    Ok(PathCover {
        paths,
        uncovered,
        uncovered_bound: k as f64 * eps * m as f64,
        path_bound: k as f64 / ((d - 2.0 * eps) * eps),
        stalled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::validate_path;

    #[test]
    fn complete_graph_path_is_long() {
        let f = KPartiteRestriction::complete(3, 7).unwrap();
        let t = greedy_tight_path(&f, 1.0).unwrap();
        assert!(t.is_valid(&f));
        assert_eq!(t.len(), 21);
    }

    #[test]
    fn random_half_density_meets_target() {
        for seed in 0..50 {
            let f = KPartiteRestriction::thinned(3, 20, 0.5, seed).unwrap();
            let c = f.edges().len() as f64 / 8000.0;
            let t = greedy_tight_path(&f, c.min(0.5)).unwrap();
            assert!(t.is_valid(&f), "seed {seed}");
            assert!(t.len() >= 10, "seed {seed}: {} vertices", t.len());
        }
    }

    #[test]
    fn density_below_c_is_rejected() {
        let f = KPartiteRestriction::thinned(3, 10, 0.7, 1).unwrap();
        assert!(matches!(greedy_tight_path(&f, 0.5), Err(Error::Precondition(_))));
    }

    #[test]
    fn complete_tuple_cover() {
        let f = KPartiteRestriction::complete(3, 40).unwrap();
        let cover = path_cover_tuple(&f, 1, 0.1, 1.0).unwrap();
        assert!(cover.within_bounds());
        assert_eq!(cover.paths.len(), 1);
        for p in &cover.paths {
            validate_path(&f.graph, p).unwrap();
        }
    }

    #[test]
    fn random_tuple_cover_bounds() {
        for seed in 0..3 {
            let f = KPartiteRestriction::thinned(3, 80, 0.5, seed).unwrap();
            let cover = path_cover_tuple(&f, 1, 0.1, 0.5).unwrap();
            assert!(cover.within_bounds(), "seed {seed}: {cover:?}");
            let mut seen = VertexSet::new();
            for p in &cover.paths {
                validate_path(&f.graph, p).unwrap();
                assert!(p.vertices().is_disjoint(&seen));
                seen.union_with(&p.vertices());
            }
        }
    }

    #[test]
    fn small_parts_are_rejected() {
        let f = KPartiteRestriction::complete(3, 40).unwrap();
        assert!(matches!(path_cover_tuple(&f, 1, 0.1, 0.5), Err(Error::Precondition(_))));
    }
}
