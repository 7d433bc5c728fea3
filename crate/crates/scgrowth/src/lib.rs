//! Growth data for finitely presented small cancellation groups.
//!
//! The crate computes, with certified exact arithmetic wherever a verdict
//! depends on it:
//!
//! - metric small cancellation conditions C'(λ) over symmetrized relator sets,
//! - Dehn's algorithm as a word-problem oracle,
//! - exact Cayley ball enumeration with canonical shortlex representatives,
//! - geodesic word automata built from ball data and validated against it,
//! - Perron–Frobenius spectral enclosures with exact rational endpoints,
//! - growth of languages avoiding forbidden factors, and
//! - a two-parameter relator family used for growth-separation experiments.
//!
//! Floating point appears only in display output and heuristics; every
//! comparison between growth rates goes through exact rational enclosures.

pub mod words;
pub mod presentation;
pub mod dehn;
pub mod nilpotent;
pub mod cayley;
pub mod matrix;
pub mod poly;
pub mod spectra;
pub mod graph;
pub mod automaton;
pub mod blocks;
pub mod acmatch;
pub mod forbidden;
pub mod family;
pub mod report;
pub mod cli;

pub use matrix::Matrix;

/// Adjacency counts, matrix powers, path counts: exact integer matrices.
pub type IntMatrix = Matrix<num_bigint::BigInt>;
/// Certified enclosure arithmetic: exact rational matrices.
pub type RatMatrix = Matrix<num_rational::BigRational>;
/// Display-only estimates and heuristic starting points.
pub type FloatMatrix = Matrix<f64>;
