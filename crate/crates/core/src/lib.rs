//! Choosing edges to remove so that as few vertex pairs as possible remain
//! within `k` hops of each other.
//!
//! The crate provides the exact counting machinery (k-bounded reachability and
//! short-path enumeration), three edge-scoring baselines (global, local and
//! short betweenness) with a batch-greedy selector, a relaxed gradient
//! optimizer over edge variables, and a brute-force oracle for small graphs.

pub mod betweenness;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod greedy;
pub mod harness;
pub mod optimizer;
pub mod oracle;
pub mod paths;
pub mod reachability;

pub use error::{Error, Result};
pub use graph::{load_edge_list, Directedness, EdgeSubset, Graph, GraphView};
