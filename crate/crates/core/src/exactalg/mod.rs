//! Exact scalars and linear algebra: rationals, multivariate polynomials,
//! rational functions, matrices over them, interpolation and integer roots.

pub mod gcd;
pub mod interp;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod ratfn;

pub use gcd::{gcd, lcm};
pub use interp::{integer_roots, integer_roots_with_multiplicity, interpolate_poly_values, lagrange_interpolate};
pub use matrix::{rank_drop_locus, rank_profile, PolyMatrix, RatMatrix};
pub use parse::parse_poly;
pub use poly::{falling_factorial, Monomial, MultiPoly, Var, T};
pub use rational::{fmt_rational, parse_rational, q, qi, Q};
pub use ratfn::RatFn;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("interpolation degree bound {bound} exceeded: sample at {point} disagrees")]
    DegreeExceeded { bound: usize, point: i64 },
    #[error("need {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("duplicate sample point {0}")]
    DuplicateSample(i64),
    #[error("zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("polynomial is not univariate: {0}")]
    NotUnivariate(String),
    #[error("generic rank {rank} is below requested {requested}")]
    GenericRankTooLow { requested: usize, rank: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}
