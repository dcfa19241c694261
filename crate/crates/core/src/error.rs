use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("monomial index ({i}, {j}) out of range for bidegree ({a}, {b})")]
    IndexOutOfRange {
        a: usize,
        b: usize,
        i: usize,
        j: usize,
    },

    #[error("bidegree mismatch: expected ({}, {}), found ({}, {})", expected.0, expected.1, found.0, found.1)]
    BidegreeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },

    #[error("invalid transvectant order: {0}")]
    InvalidOrder(String),

    #[error("group element must have determinant 1")]
    NotUnimodular,

    #[error("b = {0} is outside the supported range (odd b >= 5 required)")]
    BOutOfRange(i64),

    #[error("genus {0} is outside the supported range (g >= 5 and g divisible by 4 required)")]
    GenusOutOfRange(i64),

    #[error("empty witness list")]
    EmptyWitnessList,

    #[error("parse error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("inhomogeneous form: term at byte {pos} has bidegree ({}, {}), expected ({}, {})", found.0, found.1, expected.0, expected.1)]
    Inhomogeneous {
        pos: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
}
