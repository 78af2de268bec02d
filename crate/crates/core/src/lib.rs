//! Exact search and verification tools for Hamilton (ℓ,k−ℓ)-cycles in
//! k-uniform hypergraphs and the parity-type extremal families around them.

pub mod combin;
pub mod cycle;
pub mod error;
pub mod extremal;
pub mod goodness;
pub mod hypergraph;
pub mod kpartite;
pub mod mc;
pub mod parity;
pub mod search;
pub mod verify;
pub mod vset;

pub use error::{Error, Result};
pub use extremal::ExtremalSpec;
pub use hypergraph::{Hypergraph, DEFAULT_ENUM_BUDGET};
pub use vset::VertexSet;

/// Exact rational numbers used for degree ratios and thresholds.
pub type Rational = num_rational::Ratio<i128>;
