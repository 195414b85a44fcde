//! Exact arithmetic substrate.
//!
//! Everything here is generic over a scalar [`Ring`] or [`Field`]; the
//! concrete aliases below are what the rest of the toolkit uses.

pub mod factor;
pub mod fp_factor;
pub mod groebner;
pub mod hnf;
pub mod hull;
pub mod matrix;
pub mod multipoly;
pub mod padic;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod sturm;

use thiserror::Error;

pub use factor::{factor_over_q, Factorization};
pub use hull::lower_convex_hull;
pub use matrix::Matrix;
pub use multipoly::MultiPoly;
pub use padic::{factor_over_qp, PadicFactor};
pub use poly::{parse_poly, qpoly, zpoly, UniPoly};
pub use rational::{format_rational, padic_valuation, parse_rational};
pub use scalar::{rat, rat_int, Field, Fp, Ring};
pub use sturm::{sturm_count, Endpoint};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rational = BigRational;
/// Polynomial with rational coefficients.
pub type QPoly = UniPoly<Rational>;
/// Polynomial with integer coefficients.
pub type ZPoly = UniPoly<BigInt>;
/// Polynomial over a prime field.
pub type FpPoly = UniPoly<Fp>;
/// Matrix over the rationals.
pub type RatMatrix = Matrix<Rational>;
/// Matrix over a prime field.
pub type FpMatrix = Matrix<Fp>;
/// Floating-point matrix, used only for numerical cross-checks.
pub type F64Matrix = Matrix<f64>;
/// Multivariate polynomial over the rationals.
pub type QMultiPoly = MultiPoly<Rational>;
/// Multivariate polynomial over a prime field.
pub type FpMultiPoly = MultiPoly<Fp>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("input is zero")]
    ZeroInput,
    #[error("input is empty")]
    EmptyInput,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("p-adic precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("matrix is singular")]
    Singular,
    #[error("subspace is not invariant under the matrix")]
    NotInvariant,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a prime: {0}")]
    NotPrime(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("search bound exceeded: {0}")]
    SearchBoundExceeded(String),
}
