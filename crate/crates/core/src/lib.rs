//! Resolving partitions of trees and generalized trees.
//!
//! The crate computes partition and metric representations, exact partition
//! and metric dimensions by exhaustive search, the structural parameters of
//! trees and generalized trees, and constructive resolving partitions whose
//! class counts realize known upper bounds on the partition dimension.

pub mod anatomy;
pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod io;
pub mod lab;
pub mod resolver;

pub use error::{Error, Result};
pub use graph::{all_pairs_distances, block_decomposition, is_generalized_tree, DistanceMatrix, Graph, Vertex};
pub use resolver::{ExactOptions, VertexPartition};
