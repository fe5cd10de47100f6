//! Maximizing stacking pairs in RNA secondary structures, pseudoknots
//! allowed.
//!
//! A stacking pair is two adjacent base pairs `(i, j)`, `(i+1, j-1)` with
//! `i + 4 <= j`; it is the only loop type with stabilizing free energy, so
//! structures are scored purely by how many they contain. The crate
//! provides:
//!
//! - [`dp`]: exact cubic-time maximization over pseudoknot-free structures
//!   (which also 1/2-approximates the planar optimum);
//! - [`greedy`]: a linear-time fold guaranteeing at least 1/3 of the
//!   unrestricted optimum;
//! - [`oracle`]: exponential exact search at small scale, the ground truth
//!   for everything else;
//! - [`planarity`]: crossing graphs, interleaving-block detection, and
//!   two-page planarity testing;
//! - [`reduction`]: the encoder turning tripartite matching instances into
//!   sequences whose planar stacking optimum decides the matching, plus the
//!   witness builder for yes-instances.

pub mod dotbracket;
pub mod dp;
pub mod error;
pub mod greedy;
pub mod oracle;
pub mod planarity;
pub mod reduction;
pub mod seq;
pub mod structure;

pub use error::{Error, Result};
pub use seq::{census, conjugate, is_watson_crick, parse_sequence, Base, Census, RnaSequence};
pub use structure::{
    count_stacking_pairs, runs_to_structure, BasePair, SecondaryStructure, StackRun,
};
