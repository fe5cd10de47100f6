use thiserror::Error;

use crate::seq::Base;

/// Errors produced by sequence parsing, structure validation, and the
/// solvers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid character '{found}' at position {position} (expected A, C, G, U, or T)")]
    InvalidBase { position: usize, found: char },

    #[error("pair ({i}, {j}) out of bounds for sequence of length {n}")]
    PairOutOfBounds { i: usize, j: usize, n: usize },

    #[error("pair ({i}, {j}) too close: requires i + {min_sep} <= j")]
    PairTooClose { i: usize, j: usize, min_sep: usize },

    #[error("bases at ({i}, {j}) are {a}-{b}, not a Watson-Crick pair")]
    NotComplementary {
        i: usize,
        j: usize,
        a: Base,
        b: Base,
    },

    #[error("position {position} appears in more than one pair")]
    SharedBase { position: usize },

    #[error("stacking run (p={p}, q={q}, len={len}) is malformed")]
    MalformedRun { p: usize, q: usize, len: usize },

    #[error("greedy width must be at least 3, got {width}")]
    WidthTooSmall { width: usize },

    #[error("greedy width {width} exceeds the supported maximum of {max}")]
    WidthTooLarge { width: usize, max: usize },

    #[error("pattern index window length must be at least 2, got {len}")]
    WindowTooShort { len: usize },

    #[error("sequence length {n} exceeds the exact-search limit {limit}; pass a higher limit explicitly to override")]
    SequenceTooLong { n: usize, limit: usize },

    #[error("edge {index} is a duplicate of an earlier edge")]
    DuplicateEdge { index: usize },

    #[error("edge {edge} has component {value} outside 1..={n}")]
    NodeOutOfRange { edge: usize, value: usize, n: usize },

    #[error("instance must have n >= 1 and m >= 1 (got n={n}, m={m})")]
    EmptyInstance { n: usize, m: usize },

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("parse error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
