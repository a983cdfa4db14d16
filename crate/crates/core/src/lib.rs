//! Flows, Z3-connectivity and strongly connected mod-3 orientations of
//! graphs with spanning triangle-trees.
//!
//! The crate is `no_std` and needs only `alloc`. It provides a multigraph
//! model with contraction and lifting, triangle-tree machinery, exhaustive
//! oracles, structural deciders that emit replayable certificates, and the
//! partition-based construction of strongly connected mod-3 orientations
//! for graphs with two edge-disjoint spanning triangle-trees.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod canon;
pub mod certify;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod tritree;
pub mod twotrees;

pub use error::{Error, Result};
pub use graph::{EdgeId, Multigraph, VertexId};
