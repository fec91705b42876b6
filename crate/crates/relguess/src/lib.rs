//! Guessing linear recurrence relations of multidimensional tables.
//!
//! A table is an n-indexed sequence over an exact field. Polynomials in the
//! shift variables `x_1..x_n` encode relations with constant coefficients;
//! skew polynomials in `t_1..t_n, x_1..x_n` (with `t_p x_p = x_p (t_p + 1)`)
//! encode relations with polynomial coefficients. The guessers compute kernels
//! and rank profiles of multi-Hankel matrices built from table brackets, and
//! can restrict the monomial universe to a cone, split work across the cosets
//! of an integer lattice, or exploit a diagonal group action when changing the
//! ordering of a zero-dimensional Gröbner basis.

pub mod field;
pub mod fglm;
pub mod guess;
pub mod hankel;
pub mod io;
pub mod monomial;
mod par;
pub mod poly;
pub mod skew;
pub mod structures;
pub mod tables;

pub use field::{Field, PrimeField, Rationals};
pub use monomial::{Monomial, MonomialOrder, OrderKind};
pub use poly::Poly;

/// Errors surfaced by parsing, validation and the solvers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("table query {0:?} out of range")]
    OutOfRange(Vec<u32>),
    #[error("unbounded LEX enumeration: per-variable caps are required")]
    UnboundedLex,
    #[error("monomial set is not sorted for the given order")]
    NotSorted,
    #[error("monomial set is not a staircase: {0}")]
    NotStaircase(String),
    #[error("fundamental domain does not cover coset of {0:?}")]
    CosetNotCovered(Vec<i64>),
    #[error("lattice basis is rank deficient")]
    RankDeficient,
    #[error("staircase monomial times the multiplication variable is neither in the staircase nor a leading monomial: {0}")]
    PropertyM(String),
    #[error("polynomial is not homogeneous for the group degree: {0}")]
    NotGHomogeneous(String),
    #[error("no power of the multiplication variable matches the group degree of {0}")]
    NoDeltaExponent(String),
    #[error("singular linear system: {0}")]
    Singular(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
