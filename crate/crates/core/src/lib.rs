//! Probabilistic low-diameter decompositions of weighted directed graphs.
//!
//! [`decompose`] deletes a random set of edges so that every strongly
//! connected component of the remaining graph has weak diameter at most
//! `delta`, while each edge `e` is deleted with probability proportional to
//! `w(e) / delta` up to a `O(log n log log n)` factor. The [`verify`] module
//! holds exact checkers and the Monte Carlo cut-probability harness.

pub mod bench;
pub mod decompose;
pub mod error;
pub mod gen;
pub mod graph;
pub mod heavy;
pub mod io;
pub mod ldd;
pub mod rng;
pub mod sssp;
pub mod verify;

pub use decompose::{decompose, CaseTaken, DecomposeConfig, InstanceRecord, LddResult};
pub use error::{Error, Result};
pub use graph::{Direction, Graph, VertexSet};
pub use sssp::Radius;
