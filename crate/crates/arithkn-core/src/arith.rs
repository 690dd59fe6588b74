//! Small exact-arithmetic helpers used throughout the crate.

use crate::{Error, Result, Value};

/// Greatest common divisor. `gcd(0, b) = b` and `gcd(a, 0) = a`.
pub fn gcd(mut a: Value, mut b: Value) -> Value {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple, erroring instead of wrapping past 128 bits.
pub fn lcm(a: Value, b: Value) -> Result<Value> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    checked_mul(a / gcd(a, b), b)
}

pub fn checked_add(a: Value, b: Value) -> Result<Value> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub fn checked_mul(a: Value, b: Value) -> Result<Value> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

/// `2^k` as a [`Value`], erroring for `k >= 128`.
pub fn pow2(k: u32) -> Result<Value> {
    (1 as Value).checked_shl(k).ok_or(Error::Overflow)
}

/// Ceiling of `a / b`. Requires `b > 0`.
pub fn ceil_div(a: Value, b: Value) -> Value {
    a / b + Value::from(a % b != 0)
}
