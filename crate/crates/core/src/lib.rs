//! Exact counts of rational planar curves in projective 3-space.
//!
//! A curve in `P^3` is planar when it lies in some hyperplane; the planes are
//! parametrized by a dual projective 3-space, and the universal plane `E`
//! over it carries the whole enumerative problem. This crate computes the
//! family counts `N_d(r, s, theta)` of rational planar curves of degree `d`
//! meeting `r` general lines and `s` general points (with an optional twist
//! by the base hyperplane class) using only exact rational arithmetic:
//!
//! - [`ring`]: the cohomology ring of `E` with its pairing, dual basis, and
//!   diagonal class;
//! - [`gw`]: the memoized recursion filling the table of counts;
//! - [`oracle`]: the classical plane-curve recursion, kept independent as a
//!   cross-check;
//! - [`quantum`]: the small quantum product and its associativity checks;
//! - [`series`]: the truncated series form of the WDVV identity from which
//!   the recursion is read off;
//! - [`report`]: the verification suite behind the `verify` subcommand.

pub mod gw;
pub mod oracle;
pub mod quantum;
pub mod rational;
pub mod report;
pub mod ring;
pub mod series;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("curve degree must be positive, got {0}")]
    InvalidDegree(i64),

    #[error("point-insertion reduction requires at least one point condition")]
    NoPointInsertion,

    #[error("insertion exponent {0} is out of range (expected 0..=3)")]
    InvalidInsertion(u32),

    #[error("Poincare pairing is singular; the ring kernel is inconsistent")]
    SingularPairing,

    #[error("diagonal closed form disagrees with the inverse pairing at T_{i0}{j0} x T_{i1}{j1}")]
    DiagonalMismatch {
        i0: usize,
        j0: usize,
        i1: usize,
        j1: usize,
    },

    #[error("series identity requires a balanced key with r >= 3, got {0}")]
    UnbalancedKey(String),

    #[error("cache file {path}: {reason}")]
    CacheFormat { path: String, reason: String },

    #[error("cache integrity: conflicting values for {key}: {cached} vs {computed}")]
    CacheConflict {
        key: String,
        cached: String,
        computed: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
