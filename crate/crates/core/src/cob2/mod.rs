//! Terms, parsing and normal forms for the 2d cobordism category.

pub mod normal;
pub mod parse;
pub mod random;
pub mod relations;
pub mod term;

pub use normal::{normalize, DisjointSets, SurfaceComponent, SurfaceNormalForm};
pub use parse::{parse_and_check, parse_term, MAX_ATOMS, MAX_IDENTITY_WIDTH, MAX_NESTING};
pub use random::{
    block_swap, canonical_term, connected_term, permutation_term, random_context, random_genus0_term, random_rewrite,
    random_term,
};
pub use relations::{RelationInstance, RELATION_INSTANCES};
pub use term::{CobordismTerm, Generator, Signature};

/// Errors from building, parsing or normalizing terms.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CobError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error(
        "arity mismatch{}: '{outer}' expects {outer_dom} circle(s) but '{inner}' produces {inner_cod}",
        offset.map(|o| format!(" at offset {o}")).unwrap_or_default()
    )]
    Arity {
        offset: Option<usize>,
        outer: String,
        inner: String,
        outer_dom: usize,
        inner_cod: usize,
    },
}

impl CobError {
    /// Byte offset into the source text, when known.
    pub fn offset(&self) -> Option<usize> {
        match self {
            CobError::Syntax { offset, .. } => Some(*offset),
            CobError::Arity { offset, .. } => *offset,
        }
    }
}
