//! Exact-arithmetic computer algebra for the differential ring of parallel-weight
//! Hilbert modular forms attached to Q(√5).
//!
//! The crate is organised around four layers:
//!
//! * [`numfield`] — arithmetic in Q and Q(√5), the ring of integers Z\[ε\], and the
//!   totally positive trace-dual indices that label Fourier coefficients;
//! * [`polyring`] — sparse isobaric polynomials in the generators φ₂, χ₅, χ₆ (and
//!   an optional symbol X for χ₁₅), with partial derivatives, fraction-free
//!   resultants and the binomial-shape factor analysis;
//! * [`freebrackets`] — a free differential-polynomial algebra used to prove the
//!   universal bracket identities with symbolic weights;
//! * [`hilbert_ring`], [`ideal_lab`], [`fourier_lab`] — the concrete ring
//!   T = T* ⊕ χ₁₅T* with its six derivations, Gröbner-based ideal stability,
//!   and exact Fourier q-expansions at the infinite cusp.
//!
//! Everything is exact: no floating point enters any computation.

pub mod cache;
pub mod cli;
pub mod freebrackets;
pub mod fourier_lab;
pub mod hilbert_ring;
pub mod ideal_lab;
pub mod numfield;
pub mod polyring;
pub mod report;

pub use cli::cli_main;

use thiserror::Error;

/// Errors surfaced by fallible public operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in K")]
    DivisionByZeroInK,
    #[error("derivation order exceeded")]
    DerivationOrderExceeded,
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("degree-zero input in resultant variable")]
    ResultantDegreeZero,
    #[error("unexpected factor shape: {0}")]
    UnexpectedFactorShape(String),
    #[error("constants not calibrated")]
    ConstantsNotCalibrated,
    #[error("not a perfect square at trace {0}")]
    NotaPerfectSquare(u32),
    #[error("series division by series with zero constant term")]
    SeriesDivisionByCusp,
    #[error("generator construction failed at index ({0}, {1}): {2}")]
    GeneratorConstruction(i64, i64, String),
    #[error("calibration failed: {0}")]
    Calibration(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
