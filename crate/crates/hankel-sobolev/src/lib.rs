//! Computable Favard theory for Sobolev orthogonality.
//!
//! This crate detects and decomposes Hankel-Sobolev structure in moment
//! matrices, generates orthogonal polynomial sequences from lower Hessenberg
//! matrices, builds Sobolev moment matrices from measure vectors, and issues
//! Favard-type verdicts (classical / continuous / discrete /
//! discrete-continuous) on finite truncations — all in exact rational
//! arithmetic, with a floating-point path only where square roots are
//! unavoidable.
//!
//! Start with the runnable examples (`cargo run --example ...`) or the
//! `hankel-sobolev` command-line tool; the README lists both.

// Index loops here mirror the matrix formulas; iterator rewrites obscure them.
#![allow(clippy::needless_range_loop)]

// Compile the README's code sample as a doctest.
#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeDoctests;

pub mod cli;
pub mod decomposition;
pub mod error;
pub mod favard;
pub mod fixtures;
pub mod hessenberg;
pub mod io;
pub mod matrix;
pub mod measures;
pub mod operators;
pub mod poly;
pub mod scalar;

pub use decomposition::{
    compose, decompose, detect_index, Detected, HankelLayers, IndexReport,
};
pub use error::{Error, Result};
pub use favard::{FavardCase, FavardVerdict};
pub use hessenberg::{MomentMatrix, PolySequence};
pub use matrix::{d_matrix, HankelSeq, HessenbergTrunc, TruncatedMatrix};
pub use measures::{HankelClass, MeasureSpec, MeasureVector};
pub use operators::{euler_finite_difference, phi, psi, OperatorResult};
pub use scalar::{ExactScalar, Tolerance};
