//! Isomorph-free enumeration of `K_{r+1}`-free graphs.

mod canon;
mod enumerate;

use thiserror::Error;

pub use canon::{
    canonical_form, canonical_graph, canonical_labeling, CanonicalForm, Labeling, CANON_MAX_N,
};
pub use enumerate::{enumerate_free, Enumerator, DEFAULT_MAX_N};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("n = {n} exceeds the guard of {limit}; raise the limit explicitly to continue")]
    GuardExceeded { n: usize, limit: usize },
    #[error("invalid enumeration request: {0}")]
    BadArgument(String),
}
