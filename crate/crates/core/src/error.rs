use crate::semifield::SemifieldKind;

/// Errors raised by the algebra and the solvers.
///
/// Infeasible problem instances are not errors; they are reported through
/// [`crate::optimization::Outcome::Infeasible`].
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("semifield mismatch: {left} vs {right}")]
    KindMismatch {
        left: SemifieldKind,
        right: SemifieldKind,
    },

    #[error("{op}: dimension mismatch ({left_rows}x{left_cols} vs {right_rows}x{right_cols})")]
    Dimension {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("{op}: expected a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("{op}: expected a vector, got {rows}x{cols}")]
    NotVector {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("value {value} is not representable in {kind}")]
    InvalidValue { value: f64, kind: SemifieldKind },

    #[error("the semifield zero has no inverse")]
    ZeroInverse,

    #[error("the semifield zero cannot be raised to the non-positive power {exponent}")]
    ZeroPower { exponent: f64 },

    #[error("{op}: the zero vector has no conjugate")]
    ZeroVector { op: &'static str },

    #[error("{what} must be regular (no zero components)")]
    NotRegular { what: &'static str },

    #[error("{what} must be non-zero")]
    Zero { what: &'static str },

    #[error("{what} must be column-regular")]
    NotColumnRegular { what: &'static str },

    #[error("{what}: Tr = {value} exceeds the semifield one")]
    CycleTraceExceedsOne { what: &'static str, value: f64 },

    #[error("grid has {points} points, limit is {limit}; try a step of {suggested_step}")]
    GridTooLarge {
        points: u128,
        limit: u128,
        suggested_step: f64,
    },

    #[error("brute-force search supports dimension 1..=3, got {dim}")]
    GridDimension { dim: usize },

    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },

    #[error("numerical inconsistency: {0}")]
    Numerical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
