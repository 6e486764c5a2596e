//! Shared error type for the whole crate.

use thiserror::Error;

/// Everything that can go wrong while building or combining algebraic objects.
///
/// Search verdicts (no embedding found, budget exhausted) are *not* errors;
/// they are ordinary return values of the search functions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A composition-table entry does not name an element of the table.
    #[error("entry {value} at row {row}, column {col} is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    /// Associativity fails; carries the first violating triple found.
    #[error("not associative: ({x} {y}) {z} != {x} ({y} {z})")]
    NotAssociative { x: usize, y: usize, z: usize },

    /// A point image lies outside the transformation's domain.
    #[error("point image {value} is out of range for degree {degree}")]
    PointOutOfRange { value: usize, degree: usize },

    /// Two transformations of different degrees were combined.
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    /// A closure or product would grow past the configured cap.
    #[error("result size would exceed the cap of {cap}")]
    SizeExceeded { cap: usize },

    /// An element or letter index does not exist.
    #[error("index {index} is out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    /// A display label occurs twice.
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    /// Catch-all for argument validation (zero sizes, missing overrides, caps).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
