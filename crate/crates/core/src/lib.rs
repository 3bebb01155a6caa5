//! Discrete gauge theory on finite graphs.
//!
//! Forms live on the clique complex of a graph with an acyclic orientation.
//! Real forms carry the Hodge theory; vector- and endomorphism-valued forms
//! carry a connection with values in U(1), O(n) or U(n), its curvature and the
//! Yang-Mills and Yang-Mills-Higgs functionals.

pub mod calculus;
pub mod check;
pub mod error;
pub mod gauge;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod yangmills;

pub use error::{Error, Result};
pub use graph::{CliqueComplex, Graph, Orientation, SpanningForest};
