//! Finite groupoids, abelian models and spans between their powers.

pub mod abelian;
pub mod finite;
pub mod model;
pub mod span;
pub mod zlattice;

pub use abelian::{AbelianSpan, SkeletalOrbit};
pub use finite::{
    abelian_groupoid, essential_equivalence_check, essential_equivalence_exhaustive, Arrow, AssociativityRoute,
    EquivalenceVerdict, FiniteGroupoid, FunctorRoute, GroupoidFunctor, Validation, DEFAULT_ARROW_BUDGET,
    DEFAULT_CHECK_BUDGET,
};
pub use model::AbelianModel;
pub use span::{
    comparison_functor, compose_spans, composite_size, find_span_equivalence, fingerprint, Comparison, CompositionMode,
    OrbitRecord, Span, SpanFingerprint, DEFAULT_ISOTROPY_BOUND,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroupoidError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("malformed model file: {0}")]
    Json(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("{what} has {size} elements, over the budget of {budget}")]
    TooLarge { what: String, size: u128, budget: usize },
    #[error("isotropy of order {order} exceeds the bound {bound}")]
    IsotropyTooLarge { order: u128, bound: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid groupoid data: {0}")]
    Invalid(String),
}
