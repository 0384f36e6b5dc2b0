//! Exact scalar arithmetic over a fixed ten-symbol alphabet.
//!
//! [`Poly`] is a sparse polynomial with [`Rational`] coefficients,
//! [`RatFunc`] a reduced quotient of two of them. `r` is the square root of
//! the residue field size, so `q` is always entered as `r^2`. Square
//! relations such as `sqrt_d^2 = d` are applied on request through
//! [`Relations`].

mod gcd;
mod linalg;
mod parse;
mod poly;
mod ratfunc;
mod series;
mod symbol;

pub use gcd::gcd;
pub use linalg::{apply_sparse, kernel, kernel_sparse, Field};
pub use parse::{parse_rational, parse_scalar};
pub use poly::{Monomial, Poly};
pub use ratfunc::{RatFunc, Relations};
pub use series::{series_expand, TruncatedSeries};
pub use symbol::{Symbol, NSYM};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Element of the fraction field used throughout the workspace.
pub type Scalar = RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator has no invertible constant term in the series variable")]
    NotExpandable,
    #[error("series variable must be X or Y, got {0}")]
    BadSeriesVariable(Symbol),
    #[error("series must have at least one coefficient")]
    EmptySeries,
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    Neg,
}

/// Polynomial arithmetic followed by the rewrite relations. `Neg` ignores `rhs`.
pub fn poly_arith(op: PolyOp, lhs: &Poly, rhs: &Poly, rel: &Relations) -> Poly {
    let raw = match op {
        PolyOp::Add => lhs + rhs,
        PolyOp::Mul => lhs * rhs,
        PolyOp::Neg => -lhs,
    };
    rel.reduce_poly(&raw)
}

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `q = r^2` as a scalar.
pub fn q() -> Scalar {
    RatFunc::var_pow(Symbol::R, 2)
}

/// Shorthand for a symbol as a scalar.
pub fn sym(s: Symbol) -> Scalar {
    RatFunc::var(s)
}

/// Shorthand for an integer scalar.
pub fn int(n: i64) -> Scalar {
    RatFunc::from_int(n)
}
