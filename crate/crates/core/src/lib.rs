//! Symbolic differential algebra: differential polynomial rings, Ritt–Kolchin
//! reduction, Gröbner bases over fraction fields of non-leading derivatives,
//! and canonical characteristic sets of characterizable differential ideals.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`] — exact rationals and sparse multivariate polynomials,
//! * [`diff`] — derivations, derivative variables, rankings, differential polynomials,
//! * [`reduce`] — partial/full differential pseudo-remainders, autoreduction, coherence,
//! * [`groebner`] — Buchberger's algorithm over ℚ and over fraction coefficients,
//! * [`invert`] — invertibility of a polynomial modulo a characteristic set,
//! * [`canonical`] — the two canonicalization algorithms and the canonical-form predicate,
//! * [`decompose`] — characteristic decomposition, canonical sets from generators,
//!   and ideal equality tests,
//! * [`cli`] — text format parser, command dispatch, and deterministic printing.

pub mod arith;
pub mod canonical;
pub mod cli;
pub mod decompose;
pub mod diff;
pub mod error;
pub mod groebner;
pub mod invert;
pub mod reduce;

pub use error::Error;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
