//! Arithmetical structures on `K_n` and their unit-fraction counterparts.
//!
//! [`verify`] is the single entry point for turning untrusted value lists
//! into [`Structure`]s; every other module funnels its outputs through it.
//! The conversions [`to_unit_fractions`] and [`from_unit_fractions`] realize
//! the bijection between structures with sum `S` and solutions of
//! `1/x_1 + ... + 1/x_n = 1` with `lcm(x_1, ..., x_n) = S`.

use serde::Serialize;

use crate::arith::{checked_add, gcd, lcm};
use crate::{Error, Result, Value};

/// A verified arithmetical structure on the complete graph `K_n`.
///
/// Invariants (enforced by [`verify`], the only constructor):
/// * `values` is nonempty, positive, and sorted nonincreasing;
/// * every entry divides `sum`, the total of all entries;
/// * the gcd of all entries is 1;
/// * `b = sum / values[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Structure {
    n: u32,
    values: Vec<Value>,
    sum: Value,
    #[serde(rename = "b")]
    quotient_b: Value,
}

impl Structure {
    /// Number of vertices, equal to `values().len()`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// The values `r_1 >= r_2 >= ... >= r_n`.
    pub fn values(&self) -> &[Value] {
        &self.values
    }

    /// The sum `S` of all values.
    pub fn sum(&self) -> Value {
        self.sum
    }

    /// The largest value `r_1`.
    pub fn largest(&self) -> Value {
        self.values[0]
    }

    /// The quotient `b = S / r_1`, i.e. the smallest denominator of the
    /// associated unit-fraction solution.
    pub fn quotient_b(&self) -> Value {
        self.quotient_b
    }

    /// Single-line CSV form: `n,b,sum,<values separated by spaces>`.
    pub fn csv_row(&self) -> String {
        let vals: Vec<String> = self.values.iter().map(Value::to_string).collect();
        format!("{},{},{},{}", self.n, self.quotient_b, self.sum, vals.join(" "))
    }
}

/// A solution of `1/x_1 + ... + 1/x_n = 1` in positive integers.
///
/// Invariants (enforced by [`UnitFractionSolution::new`]):
/// * `denominators` is nonempty and sorted nondecreasing;
/// * the reciprocals sum to exactly 1;
/// * `lcm` is the least common multiple of the denominators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitFractionSolution {
    n: u32,
    denominators: Vec<Value>,
    lcm: Value,
}

impl UnitFractionSolution {
    /// Validates that the reciprocals of `denominators` sum to exactly 1.
    ///
    /// Order does not matter; the stored list is sorted nondecreasing.
    pub fn new(denominators: &[Value]) -> Result<Self> {
        if denominators.is_empty() {
            return Err(Error::Empty);
        }
        if denominators.contains(&0) {
            return Err(Error::NonPositive);
        }
        let mut dens = denominators.to_vec();
        dens.sort_unstable();
        let mut l: Value = 1;
        for &d in &dens {
            l = lcm(l, d)?;
        }
        // Sum of 1/x_i equals 1 iff the numerators over the common
        // denominator l add up to exactly l.
        let mut total: Value = 0;
        for &d in &dens {
            total = checked_add(total, l / d)?;
        }
        if total != l {
            return Err(Error::NotUnitSum);
        }
        Ok(UnitFractionSolution {
            n: dens.len() as u32,
            denominators: dens,
            lcm: l,
        })
    }

    /// Number of denominators.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// The denominators `x_1 <= x_2 <= ... <= x_n`.
    pub fn denominators(&self) -> &[Value] {
        &self.denominators
    }

    /// Least common multiple of the denominators.
    pub fn lcm(&self) -> Value {
        self.lcm
    }
}

/// Validates a candidate value list and returns the canonical [`Structure`].
///
/// The input may be in any order. Checks run in this order: nonempty,
/// positivity, divisibility of the sum by every value (reported at the first
/// failing index of the nonincreasing ordering), and gcd 1.
pub fn verify(values: &[Value]) -> Result<Structure> {
    if values.is_empty() {
        return Err(Error::Empty);
    }
    if values.contains(&0) {
        return Err(Error::NonPositive);
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut sum: Value = 0;
    for &v in &sorted {
        sum = checked_add(sum, v)?;
    }
    for (index, &value) in sorted.iter().enumerate() {
        if sum % value != 0 {
            return Err(Error::NotDivisor { index, value, sum });
        }
    }
    let g = sorted.iter().fold(0, |acc, &v| gcd(acc, v));
    if g > 1 {
        return Err(Error::CommonFactor(g));
    }
    let quotient_b = sum / sorted[0];
    Ok(Structure {
        n: sorted.len() as u32,
        values: sorted,
        sum,
        quotient_b,
    })
}

/// Converts a structure to its unit-fraction solution via `x_i = S / r_i`.
///
/// The resulting lcm always equals the structure's sum: each `x_i` divides
/// `S`, and if `lcm(x) = L` were a proper divisor of `S` then `S / L > 1`
/// would divide every `r_i = (S / L) * (L / x_i)`, contradicting gcd 1.
pub fn to_unit_fractions(s: &Structure) -> UnitFractionSolution {
    let sum = s.sum();
    // values nonincreasing, so the quotients come out nondecreasing.
    let denominators: Vec<Value> = s.values().iter().map(|&r| sum / r).collect();
    let mut l: Value = 1;
    for &d in &denominators {
        // Partial lcms divide the final lcm, which equals sum, so the fold
        // stays within range.
        l = lcm(l, d).expect("lcm of denominators divides the sum");
    }
    debug_assert_eq!(l, sum);
    UnitFractionSolution {
        n: s.n(),
        denominators,
        lcm: l,
    }
}

/// Converts a unit-fraction solution to a structure via `r_i = L / x_i`.
///
/// Total: the images `L / x_i` sum to `L`, each divides `L`, and any common
/// factor `g` of all of them would make `L / g` a common multiple of the
/// `x_i` smaller than their lcm.
pub fn from_unit_fractions(u: &UnitFractionSolution) -> Structure {
    let l = u.lcm();
    let values: Vec<Value> = u.denominators().iter().map(|&x| l / x).collect();
    verify(&values).expect("unit-fraction images always form a structure")
}
