//! Block-structured (ℓ,k−ℓ)-paths and cycles, matchings, and their validators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vset::VertexSet;

/// The first thing wrong with a claimed path, cycle or matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// Block `index` has a size that breaks the ℓ / k−ℓ alternation.
    BlockSize { index: usize, size: usize },
    /// Blocks `first` and `second` share a vertex.
    Overlap { first: usize, second: usize },
    /// The union at position `index` is not an edge.
    MissingEdge { index: usize, set: VertexSet },
    /// Hamilton mode: these vertices are not covered.
    Coverage { missing: VertexSet },
    /// A vertex outside `0..n`.
    OutOfRange { vertex: u32 },
    /// Cycles need at least two L-blocks.
    Degenerate,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BlockSize { index, size } => write!(f, "block {index} has bad size {size}"),
            Violation::Overlap { first, second } => write!(f, "blocks {first} and {second} overlap"),
            Violation::MissingEdge { index, set } => write!(f, "union {index} = {set} is not an edge"),
            Violation::Coverage { missing } => write!(f, "vertices {missing} are not covered"),
            Violation::OutOfRange { vertex } => write!(f, "vertex {vertex} is out of range"),
            Violation::Degenerate => write!(f, "cycle has fewer than two L-blocks"),
        }
    }
}

pub type Verdict = std::result::Result<(), Violation>;

/// A sequence of disjoint blocks whose consecutive unions are edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SegPath {
    pub ell: u32,
    #[serde(rename = "blocks")]
    pub segments: Vec<VertexSet>,
}

impl SegPath {
    pub fn new(ell: u32, segments: Vec<VertexSet>) -> Self {
        SegPath { ell, segments }
    }

    pub fn empty(ell: u32) -> Self {
        SegPath { ell, segments: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn first(&self) -> Option<&VertexSet> {
        self.segments.first()
    }

    pub fn last(&self) -> Option<&VertexSet> {
        self.segments.last()
    }

    pub fn vertices(&self) -> VertexSet {
        let mut all = VertexSet::new();
        for s in &self.segments {
            all.union_with(s);
        }
        all
    }

    pub fn vertex_count(&self) -> usize {
        self.segments.iter().map(|s| s.len()).sum()
    }

    /// Every consecutive union, in order.
    pub fn edges(&self) -> Vec<VertexSet> {
        self.segments.windows(2).map(|w| w[0].union(&w[1])).collect()
    }

    /// Unions of blocks `(0,1), (2,3), ...`: a perfect matching of the path
    /// when it has an even number of blocks.
    pub fn matching_view(&self) -> Vec<VertexSet> {
        self.segments.chunks_exact(2).map(|c| c[0].union(&c[1])).collect()
    }

    pub fn reversed(&self) -> SegPath {
        SegPath { ell: self.ell, segments: self.segments.iter().rev().cloned().collect() }
    }

    /// The same path with every vertex relabeled through `map`.
    pub fn relabeled(&self, map: &[u32]) -> SegPath {
        SegPath { ell: self.ell, segments: self.segments.iter().map(|s| s.map(map)).collect() }
    }

    /// Appends `other`; the caller is responsible for the junction being an edge.
    pub fn extend_with(&mut self, other: &SegPath) {
        self.segments.extend(other.segments.iter().cloned());
    }
}

/// A cyclic block sequence `L_0 R_0 L_1 R_1 … L_{t−1} R_{t−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SegCycle {
    pub ell: u32,
    pub blocks: Vec<VertexSet>,
}

/// Pairwise disjoint k-sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matching {
    pub edges: Vec<VertexSet>,
}

impl Matching {
    pub fn new(mut edges: Vec<VertexSet>) -> Self {
        edges.sort();
        Matching { edges }
    }

    pub fn vertices(&self) -> VertexSet {
        let mut all = VertexSet::new();
        for e in &self.edges {
            all.union_with(e);
        }
        all
    }
}

fn check_disjoint(blocks: &[VertexSet], n: u32) -> Verdict {
    let mut seen = VertexSet::new();
    for (i, b) in blocks.iter().enumerate() {
        if let Some(v) = b.last().filter(|&v| v >= n) {
            return Err(Violation::OutOfRange { vertex: v });
        }
        if !b.is_disjoint(&seen) {
            let j = blocks[..i].iter().position(|p| !p.is_disjoint(b)).unwrap_or(0);
            return Err(Violation::Overlap { first: j, second: i });
        }
        seen.union_with(b);
    }
    Ok(())
}

/// Checks the structure of `p` and that every consecutive union is an edge of `h`.
pub fn validate_path(h: &Hypergraph, p: &SegPath) -> Verdict {
    let k = h.k() as usize;
    let ell = p.ell as usize;
    for (i, s) in p.segments.iter().enumerate() {
        if s.len() != ell && s.len() != k - ell {
            return Err(Violation::BlockSize { index: i, size: s.len() });
        }
    }
    for (i, w) in p.segments.windows(2).enumerate() {
        if w[0].len() + w[1].len() != k {
            return Err(Violation::BlockSize { index: i + 1, size: w[1].len() });
        }
    }
    check_disjoint(&p.segments, h.n())?;
    for (i, e) in p.edges().into_iter().enumerate() {
        if !h.contains(&e) {
            return Err(Violation::MissingEdge { index: i, set: e });
        }
    }
    Ok(())
}

/// Checks a cycle; in Hamilton mode the blocks must also cover every vertex.
pub fn validate_cycle(h: &Hypergraph, c: &SegCycle, hamilton: bool) -> Verdict {
    let k = h.k() as usize;
    let ell = c.ell as usize;
    if c.blocks.len() < 4 || c.blocks.len() % 2 != 0 {
        return Err(Violation::Degenerate);
    }
    for (i, b) in c.blocks.iter().enumerate() {
        let want = if i % 2 == 0 { ell } else { k - ell };
        if b.len() != want {
            return Err(Violation::BlockSize { index: i, size: b.len() });
        }
    }
    check_disjoint(&c.blocks, h.n())?;
    let len = c.blocks.len();
    for i in 0..len {
        let e = c.blocks[i].union(&c.blocks[(i + 1) % len]);
        if !h.contains(&e) {
            return Err(Violation::MissingEdge { index: i, set: e });
        }
    }
    if hamilton {
        let covered: VertexSet = c.blocks.iter().flat_map(|b| b.iter()).collect();
        let missing = h.vertices().difference(&covered);
        if !missing.is_empty() {
            return Err(Violation::Coverage { missing });
        }
    }
    Ok(())
}

/// Checks that `m` is a matching of edges of `h`, perfect when requested.
pub fn validate_matching(h: &Hypergraph, m: &Matching, perfect: bool) -> Verdict {
    let k = h.k() as usize;
    for (i, e) in m.edges.iter().enumerate() {
        if e.len() != k {
            return Err(Violation::BlockSize { index: i, size: e.len() });
        }
    }
    check_disjoint(&m.edges, h.n())?;
    for (i, e) in m.edges.iter().enumerate() {
        if !h.contains(e) {
            return Err(Violation::MissingEdge { index: i, set: e.clone() });
        }
    }
    if perfect {
        let missing = h.vertices().difference(&m.vertices());
        if !missing.is_empty() {
            return Err(Violation::Coverage { missing });
        }
    }
    Ok(())
}

impl SegCycle {
    pub fn new(ell: u32, blocks: Vec<VertexSet>) -> Self {
        SegCycle { ell, blocks }
    }

    pub fn t(&self) -> usize {
        self.blocks.len() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        self.blocks.iter().flat_map(|b| b.iter()).collect()
    }

    /// The path obtained by cutting the cycle just before block `i`.
    pub fn cut(&self, i: usize) -> SegPath {
        let len = self.blocks.len();
        SegPath::new(self.ell, (0..len).map(|j| self.blocks[(i + j) % len].clone()).collect())
    }

    /// Rotation and reflection normal form.
    ///
    /// `L_0` holds the smallest vertex among the L-blocks and the orientation
    /// puts the lexicographically smaller neighbour of `L_0` in position `R_0`.
    /// When both block sizes agree the L-role goes to whichever alternate
    /// class holds the smallest vertex overall.
    pub fn canonical(&self) -> SegCycle {
        let len = self.blocks.len();
        if len < 2 {
            return self.clone();
        }
        let symmetric = self.blocks[0].len() == self.blocks[1].len();
        let candidates = if symmetric { 0..len } else { 0..len / 2 };
        let step = if symmetric { 1 } else { 2 };
        let start = candidates
            .map(|i| i * step % len)
            .min_by_key(|&i| self.blocks[i].first().unwrap_or(u32::MAX))
            .unwrap_or(0);
        let forward: Vec<VertexSet> = (0..len).map(|j| self.blocks[(start + j) % len].clone()).collect();
        // reads L_0, R_{t-1}, L_{t-1}, ... which still alternates L/R
        let backward: Vec<VertexSet> = (0..len).map(|j| self.blocks[(start + len - j) % len].clone()).collect();
        let blocks = if backward[1] < forward[1] { backward } else { forward };
        SegCycle { ell: self.ell, blocks }
    }
}

/// Splits a cycle into the matchings `{L_i ∪ R_i}` and `{R_i ∪ L_{i+1}}`.
pub fn cycle_to_matchings(c: &SegCycle) -> Result<(Matching, Matching)> {
    if c.blocks.len() < 4 || c.blocks.len() % 2 != 0 {
        return Err(Error::Precondition("cycles need t >= 2".into()));
    }
    let mut all = VertexSet::new();
    for b in &c.blocks {
        if !b.is_disjoint(&all) {
            return Err(Error::Precondition("cycle blocks overlap".into()));
        }
        all.union_with(b);
    }
    let len = c.blocks.len();
    let m1 = (0..len).step_by(2).map(|i| c.blocks[i].union(&c.blocks[i + 1])).collect();
    let m2 = (1..len).step_by(2).map(|i| c.blocks[i].union(&c.blocks[(i + 1) % len])).collect();
    Ok((Matching::new(m1), Matching::new(m2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::ExtremalSpec;

    fn vs(v: &[u32]) -> VertexSet {
        VertexSet::from_slice(v)
    }

    fn witness() -> SegCycle {
        SegCycle::new(2, vec![vs(&[0, 2]), vs(&[3]), vs(&[1, 4]), vs(&[5])])
    }

    #[test]
    fn zigzag_path_in_complete() {
        let h = Hypergraph::complete(9, 3).unwrap();
        let p = SegPath::new(2, vec![vs(&[0, 1]), vs(&[2]), vs(&[3, 4]), vs(&[5]), vs(&[6, 7]), vs(&[8])]);
        assert_eq!(validate_path(&h, &p), Ok(()));
        let empty = Hypergraph::empty(9, 3).unwrap();
        assert!(matches!(validate_path(&empty, &p), Err(Violation::MissingEdge { index: 0, .. })));
        let overlap = SegPath::new(2, vec![vs(&[0, 1]), vs(&[2]), vs(&[1, 4])]);
        assert!(matches!(validate_path(&h, &overlap), Err(Violation::Overlap { first: 0, second: 2 })));
        let bad = SegPath::new(2, vec![vs(&[0, 1]), vs(&[2, 3])]);
        assert!(matches!(validate_path(&h, &bad), Err(Violation::BlockSize { .. })));
    }

    #[test]
    fn extremal_witness_cycle() {
        let spec = ExtremalSpec::new(6, 3, vs(&[0, 1]), 1).unwrap();
        let h = Hypergraph::extremal(&spec);
        assert_eq!(validate_cycle(&h, &witness(), true), Ok(()));
        let empty = Hypergraph::empty(6, 3).unwrap();
        assert!(validate_cycle(&empty, &witness(), false).is_err());
    }

    #[test]
    fn hamilton_mode_checks_coverage() {
        let h = Hypergraph::complete(7, 3).unwrap();
        assert_eq!(validate_cycle(&h, &witness(), false), Ok(()));
        assert_eq!(validate_cycle(&h, &witness(), true), Err(Violation::Coverage { missing: vs(&[6]) }));
    }

    #[test]
    fn matchings_from_witness() {
        let (m1, m2) = cycle_to_matchings(&witness()).unwrap();
        assert_eq!(m1.edges, vec![vs(&[0, 2, 3]), vs(&[1, 4, 5])]);
        assert_eq!(m2.edges, vec![vs(&[0, 2, 5]), vs(&[1, 3, 4])]);
        let h = Hypergraph::complete(6, 3).unwrap();
        assert_eq!(validate_matching(&h, &m1, true), Ok(()));
        assert_eq!(validate_matching(&h, &m2, true), Ok(()));
        let degenerate = SegCycle::new(2, vec![vs(&[0, 1]), vs(&[2])]);
        assert!(cycle_to_matchings(&degenerate).is_err());
        assert_eq!(validate_cycle(&h, &degenerate, false), Err(Violation::Degenerate));
    }

    #[test]
    fn canonical_form_is_rotation_and_reflection_invariant() {
        let c = SegCycle::new(1, vec![vs(&[4]), vs(&[0, 5]), vs(&[2]), vs(&[1, 3]), vs(&[6]), vs(&[7, 8])]);
        let canon = c.canonical();
        assert_eq!(canon.blocks[0], vs(&[2]));
        assert!(canon.blocks[1] < canon.blocks[5]);
        let len = c.blocks.len();
        for shift in (0..len).step_by(2) {
            let rotated = SegCycle::new(1, (0..len).map(|j| c.blocks[(shift + j) % len].clone()).collect());
            assert_eq!(rotated.canonical(), canon);
            let mut rev: Vec<VertexSet> = rotated.blocks.clone();
            rev.reverse();
            // reversing gives R,L,R,... so rotate by one to restore L-first
            rev.rotate_left(len - 1);
            assert_eq!(SegCycle::new(1, rev).canonical(), canon);
        }
    }

    #[test]
    fn symmetric_blocks_pick_smallest_vertex() {
        let c = SegCycle::new(2, vec![vs(&[4, 5]), vs(&[0, 7]), vs(&[2, 3]), vs(&[1, 6])]);
        let canon = c.canonical();
        assert_eq!(canon.blocks[0], vs(&[0, 7]));
        assert_eq!(canon.blocks[1], vs(&[2, 3]));
    }

    #[test]
    fn every_cut_of_a_valid_cycle_is_a_valid_path() {
        let h = Hypergraph::complete(12, 4).unwrap();
        let c = SegCycle::new(1, vec![vs(&[0]), vs(&[1, 2, 3]), vs(&[4]), vs(&[5, 6, 7]), vs(&[8]), vs(&[9, 10, 11])]);
        assert_eq!(validate_cycle(&h, &c, true), Ok(()));
        for i in 0..6 {
            assert_eq!(validate_path(&h, &c.cut(i)), Ok(()));
        }
    }

    #[test]
    fn witness_json_shape() {
        let json = serde_json::to_string(&witness()).unwrap();
        assert_eq!(json, r#"{"ell":2,"blocks":[[0,2],[3],[1,4],[5]]}"#);
        let p = SegPath::new(1, vec![vs(&[0]), vs(&[1, 2])]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"ell":1,"blocks":[[0],[1,2]]}"#);
    }

    #[test]
    fn parity_identity_on_hamilton_cycles() {
        // every edge of an odd-type matching meets A oddly, so |A| ≡ t (mod 2)
        let spec = ExtremalSpec::new(6, 3, vs(&[0, 1]), 1).unwrap();
        let (m1, m2) = cycle_to_matchings(&witness()).unwrap();
        for m in [m1, m2] {
            let total: usize = m.edges.iter().map(|e| e.intersection_len(&spec.a)).sum();
            assert!(m.edges.iter().all(|e| spec.contains(e)));
            assert_eq!(total, spec.a.len());
            assert_eq!(total % 2, m.edges.len() % 2);
        }
    }
}
