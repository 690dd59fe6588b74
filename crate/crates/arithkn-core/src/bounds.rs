//! Construction bounds, their optimal parameters, and infeasibility
//! obstructions.
//!
//! Two families of lower bounds on the largest achievable value `r_1` on
//! `K_n` are computed exactly: the general bound `max_k 2^k·n − (k+2^k−2)·2^k
//! − 1` and the prime bound `max_k 2^k·n − (k+2^k−3)·2^k − 3`. In the other
//! direction, [`obstructed_general`] and [`obstructed_prime`] decide the
//! smallest-prime-factor obstructions that rule values out. All comparisons
//! use cross-multiplied integers; the fractional thresholds like `3.25` exist
//! only as display strings.

use serde::Serialize;

use crate::arith::{checked_add, checked_mul, pow2};
use crate::{Error, Result, Value};

/// The two construction bounds for a given `n` with witnesses for the
/// maximizing `k`.
///
/// Invariants: `prime_bound >= general_bound >= n - 1` for n >= 2, and each
/// argmax `k` satisfies `k + 2^k - 1 <= n`. Ties report the smallest `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    n: u32,
    general_bound: Value,
    general_k: u32,
    prime_bound: Value,
    prime_k: u32,
}

impl BoundReport {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Largest `c` guaranteed achievable as `r_1` by some construction.
    pub fn general_bound(&self) -> Value {
        self.general_bound
    }

    /// A maximizing `k` for the general bound (smallest on ties).
    pub fn general_k(&self) -> u32 {
        self.general_k
    }

    /// Largest prime `p` guaranteed achievable as `r_1`.
    pub fn prime_bound(&self) -> Value {
        self.prime_bound
    }

    /// A maximizing `k` for the prime bound (smallest on ties).
    pub fn prime_k(&self) -> u32 {
        self.prime_k
    }
}

/// The general-bound term `2^k·n − (k+2^k−2)·2^k − 1`, which may be negative.
pub fn general_term(n: u32, k: u32) -> i128 {
    let p = 1i128 << k;
    p * i128::from(n) - (i128::from(k) + p - 2) * p - 1
}

/// The prime-bound term `2^k·n − (k+2^k−3)·2^k − 3`, which may be negative.
pub fn prime_term(n: u32, k: u32) -> i128 {
    let p = 1i128 << k;
    p * i128::from(n) - (i128::from(k) + p - 3) * p - 3
}

/// Maximizes both bound terms over `k = 1` up to the largest `k` with
/// `2^k <= n`; terms only decrease beyond that.
pub fn bound_report(n: u32) -> Result<BoundReport> {
    if n < 2 {
        return Err(Error::OutOfRange(format!(
            "bound report requires n >= 2; got n = {n}"
        )));
    }
    let mut general: (i128, u32) = (i128::MIN, 0);
    let mut prime: (i128, u32) = (i128::MIN, 0);
    let mut k = 1;
    while (1u64 << k) <= u64::from(n) {
        let g = general_term(n, k);
        if g > general.0 {
            general = (g, k);
        }
        let p = prime_term(n, k);
        if p > prime.0 {
            prime = (p, k);
        }
        k += 1;
    }
    // k = 1 gives 2n - 3 >= 1 and 2n - 5 >= -1; for n >= 2 the prime term at
    // the argmax is >= the general term >= n - 1 >= 1, so both maxima are
    // positive and fit in Value.
    debug_assert!(general.0 >= i128::from(n) - 1);
    debug_assert!(prime.0 >= general.0);
    Ok(BoundReport {
        n,
        general_bound: general.0 as Value,
        general_k: general.1,
        prime_bound: prime.0 as Value,
        prime_k: prime.1,
    })
}

/// The interval of `n` on which slope `2^k` is maximal for the general
/// bound: `(k + 3·2^{k−1} − 1, k + 3·2^k)`. Ties occur at the endpoints.
pub fn optimal_k_range(k: u32) -> Result<(Value, Value)> {
    if k < 1 {
        return Err(Error::OutOfRange("optimal_k_range requires k >= 1".into()));
    }
    let kv = Value::from(k);
    let lo = checked_add(kv, checked_mul(3, pow2(k - 1)?)?)? - 1;
    let hi = checked_add(kv, checked_mul(3, pow2(k)?)?)?;
    Ok((lo, hi))
}

/// Least prime factor of `c`, by trial division up to the square root.
pub fn smallest_prime_factor(c: Value) -> Result<Value> {
    if c < 2 {
        return Err(Error::OutOfRange(format!(
            "smallest prime factor requires c >= 2; got c = {c}"
        )));
    }
    if c % 2 == 0 {
        return Ok(2);
    }
    let mut d: Value = 3;
    while d <= c / d {
        if c % d == 0 {
            return Ok(d);
        }
        d += 2;
    }
    Ok(c)
}

/// Deterministic primality by trial division.
pub fn is_prime(x: Value) -> bool {
    x >= 2 && smallest_prime_factor(x) == Ok(x)
}

/// A prime factorization `value = Π pᵢ^{aᵢ}` with `p₁ < p₂ < …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: Value,
    primes: Vec<(Value, u32)>,
}

impl Factorization {
    pub fn value(&self) -> Value {
        self.value
    }

    /// `(prime, exponent)` pairs in increasing prime order.
    pub fn primes(&self) -> &[(Value, u32)] {
        &self.primes
    }

    /// The distinct prime factors in increasing order.
    pub fn distinct_primes(&self) -> Vec<Value> {
        self.primes.iter().map(|&(p, _)| p).collect()
    }

    /// All positive divisors of the factored value, ascending.
    pub fn divisors(&self) -> Vec<Value> {
        let mut divisors: Vec<Value> = vec![1];
        for &(p, a) in &self.primes {
            let base = divisors.clone();
            let mut power: Value = 1;
            for _ in 0..a {
                power *= p;
                divisors.extend(base.iter().map(|&d| d * power));
            }
        }
        divisors.sort_unstable();
        divisors
    }
}

/// Factors `value >= 2` by trial division.
pub fn factorize(value: Value) -> Result<Factorization> {
    if value < 2 {
        return Err(Error::OutOfRange(format!(
            "factorization requires value >= 2; got {value}"
        )));
    }
    let mut primes = Vec::new();
    let mut rest = value;
    let mut d: Value = 2;
    while d <= rest / d {
        if rest % d == 0 {
            let mut a = 0;
            while rest % d == 0 {
                rest /= d;
                a += 1;
            }
            primes.push((d, a));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        primes.push((rest, 1));
    }
    Ok(Factorization { value, primes })
}

/// True iff `4·spf(c) > (n+1)²`, which proves no structure on `K_n` has
/// largest value `c`.
pub fn obstructed_general(c: Value, n: u32) -> Result<bool> {
    if n < 1 {
        return Err(Error::OutOfRange("obstruction test requires n >= 1".into()));
    }
    let spf = smallest_prime_factor(c)?;
    let threshold = checked_mul(Value::from(n) + 1, Value::from(n) + 1)?;
    match spf.checked_mul(4) {
        Some(lhs) => Ok(lhs > threshold),
        // 4·spf beyond 128 bits certainly exceeds (n+1)².
        None => Ok(true),
    }
}

/// True iff `4(p−1) > n²`, which proves no structure on `K_n` has largest
/// value `p` (`p` must be prime).
pub fn obstructed_prime(p: Value, n: u32) -> Result<bool> {
    if n < 1 {
        return Err(Error::OutOfRange("obstruction test requires n >= 1".into()));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let threshold = checked_mul(Value::from(n), Value::from(n))?;
    match (p - 1).checked_mul(4) {
        Some(lhs) => Ok(lhs > threshold),
        None => Ok(true),
    }
}

/// Exact decimal rendering of `q/4`: always one of `x`, `x.25`, `x.5`,
/// `x.75`.
fn quarter_string(q: Value) -> String {
    match q % 4 {
        0 => format!("{}", q / 4),
        1 => format!("{}.25", q / 4),
        2 => format!("{}.5", q / 4),
        _ => format!("{}.75", q / 4),
    }
}

/// `(n+1)²/4` as an exact decimal string (the general obstruction threshold).
pub fn general_threshold_string(n: u32) -> String {
    let m = Value::from(n) + 1;
    quarter_string(m * m)
}

/// `n²/4 + 1` as an exact decimal string (the prime obstruction threshold).
pub fn prime_threshold_string(n: u32) -> String {
    let m = Value::from(n);
    quarter_string(m * m + 4)
}
