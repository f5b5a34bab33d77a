#![allow(clippy::neg_cmp_op_on_partial_ord)]
//! Heat equations on weighted graphs: normalized Laplacians, Cartesian and
//! strip-type products, Dirichlet eigenvalues, exact heat propagation,
//! parabolic frequency, and numerical certificates for the inequalities
//! that govern ancient solutions.

pub mod certificate;
pub mod cli;
pub mod error;
pub mod frequency;
pub mod generators;
pub mod graph;
pub mod heat;
pub mod io;
pub mod liouville;
pub mod spectral;
pub mod suites;

pub use error::{Error, Result};
pub use graph::{VertexFunction, VertexSubset, WeightedGraph};
