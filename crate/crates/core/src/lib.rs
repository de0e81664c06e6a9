//! Exact small-graph extremal computations: Turán-type numbers, spectral
//! extremal values, decomposition families and the constructions around them.

pub mod canon;
pub mod constructions;
pub mod decomposition;
pub mod embedding;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use family::{parse_family, parse_graph, GraphFamily};
pub use graph::{Edge, EdgeList, Graph};
