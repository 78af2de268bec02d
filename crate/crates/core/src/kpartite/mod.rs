//! Constructions inside k-partite boxes: partition planning, the inductive
//! Hamilton path builder, greedy tight paths and the stability-case splice.

pub mod kpath;
pub mod matching;
pub mod plan;
pub mod stability;
pub mod tight;

pub use kpath::{build_ham_path_kpartite, ham_path_bipartite_base, KPathConfig};
pub use plan::{check_plan, plan_partition, plan_shape, PartitionPlan, PlanShape};
pub use stability::{stability_ham_path, StabilityReport};
pub use tight::{greedy_tight_path, path_cover_tuple, PathCover, TightPath};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vset::VertexSet;

/// Membership oracle for a family of sets.
pub(crate) type Family<'a> = dyn Fn(&VertexSet) -> bool + Sync + 'a;

/// Edges of a host hypergraph that meet each of `k` equal parts once.
#[derive(Clone, Debug)]
pub struct KPartiteRestriction {
    pub parts: Vec<VertexSet>,
    pub graph: Hypergraph,
}

impl KPartiteRestriction {
    pub fn new(host: &Hypergraph, parts: Vec<VertexSet>) -> Result<Self> {
        let m = parts.first().map_or(0, VertexSet::len);
        if m == 0 || parts.iter().any(|p| p.len() != m) {
            return Err(Error::Size("parts must be non-empty and of equal size".into()));
        }
        let graph = Hypergraph::kpartite_restricted(host, parts.clone())?;
        Ok(KPartiteRestriction { parts, graph })
    }

    /// Complete k-partite graph with parts `{0..m}, {m..2m}, …`.
    pub fn complete(k: u32, m: u32) -> Result<Self> {
        Self::new(&Hypergraph::complete(k * m, k)?, consecutive_parts(k, m))
    }

    /// Complete k-partite graph with each edge dropped at `rate` by seeded hash.
    pub fn thinned(k: u32, m: u32, rate: f64, seed: u64) -> Result<Self> {
        let host = Hypergraph::complete(k * m, k)?.thinned(rate, seed)?;
        Self::new(&host, consecutive_parts(k, m))
    }

    /// The same restriction with every edge through `v` removed.
    pub fn isolating(&self, v: u32) -> Result<Self> {
        let touching: Vec<VertexSet> = self.edges().into_iter().filter(|e| e.contains(v)).collect();
        let host = self.graph.edited(Vec::new(), touching)?;
        Self::new(&host, self.parts.clone())
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn part_size(&self) -> usize {
        self.parts[0].len()
    }

    pub fn part_of(&self, v: u32) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }

    pub fn contains(&self, e: &VertexSet) -> bool {
        self.graph.contains(e)
    }

    /// All edges, enumerated over transversals rather than all k-sets.
    pub fn edges(&self) -> Vec<VertexSet> {
        let pools: Vec<Vec<u32>> = self.parts.iter().map(VertexSet::to_vec).collect();
        let mut out = Vec::new();
        kpath::for_each_transversal::<()>(&pools, |e| {
            if self.graph.contains_unchecked(e) {
                out.push(e.clone());
            }
            std::ops::ControlFlow::Continue(())
        });
        out
    }
}

pub(crate) fn consecutive_parts(k: u32, m: u32) -> Vec<VertexSet> {
    (0..k).map(|i| VertexSet::from_slice(&(i * m..(i + 1) * m).collect::<Vec<_>>())).collect()
}
