//! Oriented matroid programming: sign vectors, cocircuit elimination,
//! single-element and lexicographic extensions, directed cocircuit graphs,
//! and machine checks of the direction and Euclideanness statements on
//! desk-scale instances.

pub mod error;
pub mod extension;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod ingest;
pub mod lemmas;
pub mod matroid;
pub mod program;
pub mod sign;

pub use error::{OmError, Result};
pub use extension::{extend, extend_lexicographic, ExtensionResult, LexSpec, Localization};
pub use matroid::{OrientedMatroid, ValidationReport, Violation};
pub use program::{
    euclid_all_pairs, find_directed_cycle, is_euclidean_om, CocircuitGraph, GraphEdge,
    PairResult, Program,
};
pub use sign::{ElemSet, Sign, SignVector};
