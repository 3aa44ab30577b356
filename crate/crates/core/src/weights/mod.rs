//! Reproducible random weight generators for the complete graph and the lattice.

pub mod mix;
mod passage;
mod tree;

pub use mix::{SeedContext, MIX_VERSION};
pub use passage::{passage_time, LatticeEdgeKey, PassageKind, PassageSampler, PassageTimeSpec};
pub use tree::{
    cdf_tree_weight, edge_uniform, edge_weight, envelope_check, weight_from_uniform,
    TreeWeightSpec,
};
pub(crate) use tree::edge_uniform_from;
