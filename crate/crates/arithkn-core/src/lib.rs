//! Exact arithmetic for arithmetical structures on the complete graph `K_n`.
//!
//! An arithmetical structure on `K_n` is a list of positive integers
//! `r_1 >= r_2 >= ... >= r_n` with `gcd(r_1, ..., r_n) = 1` such that every
//! `r_i` divides the sum `S = r_1 + ... + r_n`. Dividing through by `S` shows
//! these are exactly the solutions of `1/x_1 + ... + 1/x_n = 1` in positive
//! integers (`x_i = S / r_i`), so everything here doubles as a unit-fraction
//! toolkit.
//!
//! The crate provides:
//!
//! * [`structure`]: validation of raw value lists and the two-way conversion
//!   between structures and unit-fraction solutions.
//! * [`constructions`]: closed-form families (flat, geometric, quadratic,
//!   geometric with a prime top value) built from power-of-two decompositions.
//! * [`bounds`]: lower bounds on the achievable largest value and
//!   smallest-prime-factor obstructions.
//! * [`search`]: complete feasibility search for a prescribed largest value,
//!   full enumeration and counting of structures, and per-`n` classification
//!   tables for prime largest values.
//! * [`cli`]: the `arithkn` command-line interface.
//!
//! All arithmetic is exact. Quantities live in [`Value`] (`u128`) and every
//! operation that could exceed 128 bits returns [`Error::Overflow`] instead of
//! wrapping.

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod search;
pub mod structure;

/// Integer type used for all structure values, sums, and denominators.
pub type Value = u128;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An operation received an empty list of values.
    #[error("value list is empty")]
    Empty,
    /// A value or denominator was zero.
    #[error("values must be positive")]
    NonPositive,
    /// `value` (at `index` in the nonincreasing ordering) does not divide `sum`.
    #[error("value {value} at index {index} does not divide the sum {sum}")]
    NotDivisor {
        index: usize,
        value: Value,
        sum: Value,
    },
    /// All values share the given factor, so the gcd-one requirement fails.
    #[error("values share the common factor {0}")]
    CommonFactor(Value),
    /// Reciprocals of the proposed denominators do not sum to exactly 1.
    #[error("unit fractions do not sum to 1")]
    NotUnitSum,
    /// A parameter lies outside the documented domain of the operation.
    #[error("{0}")]
    OutOfRange(String),
    /// An odd integer was required.
    #[error("{0} is not odd")]
    NotOdd(Value),
    /// A prime was required.
    #[error("{0} is not prime")]
    NotPrime(Value),
    /// No closed-form family realizes the requested largest value.
    #[error("no construction yields largest value {target} on {n} vertices")]
    NotFoundByConstruction { n: u32, target: Value },
    /// An intermediate quantity exceeded 128 bits.
    #[error("arithmetic overflow: intermediate value exceeds 128 bits")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
