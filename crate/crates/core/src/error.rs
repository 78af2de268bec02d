use thiserror::Error;

use crate::vset::VertexSet;

/// A certificate that Hall's condition fails: every vertex of `deficient`
/// has all its neighbours inside `neighbours`, and `neighbours` is smaller.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct HallWitness {
    /// Which bipartite graph the certificate refers to.
    pub graph: String,
    /// Left-side indices forming the deficient set `S`.
    pub deficient: Vec<usize>,
    /// Right-side indices of `N(S)`.
    pub neighbours: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    Size(String),
    #[error("enumeration budget of {limit} membership tests exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("formula case ill-defined: {0}")]
    CaseIllDefined(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parity obstruction: {0}")]
    ParityObstruction(String),
    #[error("parity infeasible: {0}")]
    ParityInfeasible(String),
    #[error("no integral partition: {0}")]
    NoIntegralSolution(String),
    #[error("Hall condition fails in {}: |S| = {} but |N(S)| = {}", .0.graph, .0.deficient.len(), .0.neighbours.len())]
    HallFailure(HallWitness),
    #[error("no admissible gadget for vertex {vertex}")]
    NoGadget { vertex: u32 },
    #[error("{stage}: {msg}")]
    Construction { stage: String, msg: String },
    #[error("edge {0} is not a valid k-set for this hypergraph")]
    BadEdge(VertexSet),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn construction(stage: &str, msg: impl Into<String>) -> Error {
    Error::Construction { stage: stage.to_string(), msg: msg.into() }
}
