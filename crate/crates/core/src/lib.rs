//! Structural decompositions of right-angled Artin groups read off their
//! defining graphs.
//!
//! - [`graph`]: links, stars, components, join factors (direct-product
//!   factors), clique separators (abelian splittings) and hanging vertices.
//! - [`word`]: normal forms, support, cyclic reduction, roots and centralizer
//!   descriptors for elements of the group.
//! - [`jsj`]: graphs of groups over standard subgroups, the relative and
//!   abelian JSJ decompositions, reduction and validation.
//! - [`oracles`]: brute-force references used to certify the above.
//!
//! ```
//! use raag::graph::SimplicialGraph;
//! use raag::jsj::abelian_jsj;
//!
//! let p4 = SimplicialGraph::parse("graph { a -- b -- c -- d }").unwrap();
//! let jsj = abelian_jsj(&p4).unwrap();
//! assert_eq!(jsj.nodes.len(), 1);
//! assert_eq!(jsj.loops().count(), 2);
//! ```

pub mod cli;
mod dot;
pub mod error;
pub mod graph;
pub mod jsj;
pub mod oracles;
pub mod word;

pub use error::{Error, Result};
pub use graph::{SimplicialGraph, Vertex, VertexSet};
pub use jsj::{abelian_jsj, relative_jsj, GraphOfGroups, JsjReport};
pub use word::{CentralizerDescriptor, CentralizerMode, Letter, NormalForm, Word};
