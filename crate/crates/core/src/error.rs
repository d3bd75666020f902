use thiserror::Error;

use crate::system::Diagnostics;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("relation `{relation}` is not reflexive at element {element}")]
    NonReflexive { relation: &'static str, element: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid labels: {0}")]
    InvalidLabels(String),

    #[error("factorization system axioms violated: {0}")]
    InvalidSystem(Box<Diagnostics>),

    #[error("size limit exceeded while enumerating {what} (cap {limit})")]
    SizeLimitExceeded { what: &'static str, limit: usize },

    #[error("not a partial order: {reason} at ({a}, {b})")]
    NotAPartialOrder { reason: &'static str, a: usize, b: usize },

    #[error("not a lattice: elements {a} and {b} have no unique {bound}")]
    NotALattice { a: usize, b: usize, bound: &'static str },

    #[error("a lattice must have at least one element")]
    EmptyLattice,

    #[error("lattice is not semidistributive")]
    NotSemidistributive,

    #[error("isomorphism check failed: {0}")]
    IsomorphismFailure(String),

    #[error("element {element} is not in the given set")]
    ElementNotInSet { element: usize },

    #[error("set is not closed")]
    NotClosed,

    #[error("no arrow {from} -> {to}")]
    NoArrow { from: usize, to: usize },

    #[error("not a forcing upset: {forcer} directly forces {forced} but only {forced} is in the set")]
    NotAForcingUpset { forcer: usize, forced: usize },

    #[error("elements {lo} and {hi} are not comparable")]
    NotComparable { lo: usize, hi: usize },

    #[error("index {index} out of range (size {size})")]
    OutOfRange { index: usize, size: usize },

    #[error("kind mismatch: expected {expected}, found {found}")]
    KindMismatch { expected: &'static str, found: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code, used in structured CLI errors.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonReflexive { .. } => "non_reflexive_input",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InvalidLabels(_) => "invalid_labels",
            Error::InvalidSystem(_) => "diagnostics_failure",
            Error::SizeLimitExceeded { .. } => "size_limit_exceeded",
            Error::NotAPartialOrder { .. } => "not_a_partial_order",
            Error::NotALattice { .. } => "not_a_lattice",
            Error::EmptyLattice => "empty_lattice",
            Error::NotSemidistributive => "not_semidistributive",
            Error::IsomorphismFailure(_) => "isomorphism_failure",
            Error::ElementNotInSet { .. } => "element_not_in_set",
            Error::NotClosed => "not_closed",
            Error::NoArrow { .. } => "no_arrow",
            Error::NotAForcingUpset { .. } => "not_a_forcing_upset",
            Error::NotComparable { .. } => "not_comparable",
            Error::OutOfRange { .. } => "out_of_range",
            Error::KindMismatch { .. } => "kind_mismatch",
            Error::Parse(_) => "parse_error",
            Error::Internal(_) => "internal",
        }
    }
}
