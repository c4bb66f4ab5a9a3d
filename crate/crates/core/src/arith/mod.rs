//! Exact rational coefficients and sparse multivariate polynomial arithmetic.
//!
//! Polynomials are sparse maps from power products to nonzero rationals over a
//! universe of integer variable ids. The ids themselves carry no meaning here;
//! they are assigned by the ring registry in [`crate::diff`]. Everything in
//! this module is pure and exact.

mod monomial;
mod poly;

pub use monomial::{IdOrder, Monomial, MonomialOrder, PrecedenceOrder, VarId};
pub use poly::{content_primitive, gcd, lcm, prem, pseudo_divide, Poly, PseudoDiv};

use num::BigRational;

/// Exact rational coefficient. `num` keeps the invariants we need: the
/// fraction is always reduced and the denominator positive.
pub type Rat = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for the rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}
