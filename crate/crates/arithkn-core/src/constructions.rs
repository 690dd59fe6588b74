//! Closed-form families of arithmetical structures on `K_n`.
//!
//! Four families realize a prescribed largest value `c`:
//!
//! * flat: `c` repeated `n−c` times plus `c` ones (needs `c <= n−1`);
//! * geometric: `2^k − 1` copies of `c` plus a decomposition of `c` into
//!   `n − 2^k + 1` powers of two with exponents at most `k`;
//! * geometric with prime `c`: same shape, wider range, odd decomposition;
//! * quadratic: `k−1` copies of `k(n−k)+1`, then `n−k` copies of `k`, then 1.
//!
//! The power-of-two decompositions come from [`decompose_powers`] (any `c` in
//! `[ℓ, (ℓ−k+1)2^k − 1]`) and [`decompose_powers_odd`] (odd `c` up to
//! `(ℓ−k+2)2^k − 3`). [`construct_any`] dispatches across all families.

use crate::arith::{checked_mul, pow2};
use crate::bounds::is_prime;
use crate::structure::{verify, Structure};
use crate::{Error, Result, Value};

/// A representation `c = Σⱼ 2^{k_j}` with `ℓ` terms and exponents in
/// `{0, …, k}`, at least one of them 0, sorted nonincreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerDecomposition {
    length_l: u32,
    max_exponent_k: u32,
    exponents: Vec<u32>,
    target_c: Value,
}

impl PowerDecomposition {
    /// Number of terms `ℓ`.
    pub fn length_l(&self) -> u32 {
        self.length_l
    }

    /// Upper limit `k` on the exponents.
    pub fn max_exponent_k(&self) -> u32 {
        self.max_exponent_k
    }

    /// The exponents `k_j`, nonincreasing, each in `{0, …, k}`.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// The decomposed integer `c`.
    pub fn target_c(&self) -> Value {
        self.target_c
    }

    /// The terms `2^{k_j}`, nonincreasing; they sum to `c`.
    pub fn terms(&self) -> Vec<Value> {
        self.exponents.iter().map(|&e| (1 as Value) << e).collect()
    }

    fn from_counts(counts: &[u64], k: u32, c: Value) -> Self {
        let mut exponents = Vec::new();
        for e in (0..counts.len()).rev() {
            exponents.extend(std::iter::repeat(e as u32).take(counts[e] as usize));
        }
        PowerDecomposition {
            length_l: exponents.len() as u32,
            max_exponent_k: k,
            exponents,
            target_c: c,
        }
    }
}

/// Upper end of the decomposable range: `(ℓ−k+1)·2^k − 1`, saturating.
fn plain_range_upper(l: u32, k: u32) -> Value {
    let factor = Value::from(l) - Value::from(k) + 1;
    match pow2(k).and_then(|p| checked_mul(factor, p)) {
        Ok(v) => v - 1,
        Err(_) => Value::MAX,
    }
}

/// Upper end of the odd-decomposable range: `(ℓ−k+2)·2^k − 3`, saturating.
fn odd_range_upper(l: u32, k: u32) -> Value {
    let factor = Value::from(l) - Value::from(k) + 2;
    match pow2(k).and_then(|p| checked_mul(factor, p)) {
        Ok(v) => v - 3,
        Err(_) => Value::MAX,
    }
}

fn check_decompose_domain(l: u32, k: u32) -> Result<()> {
    if l < 1 {
        return Err(Error::OutOfRange("decomposition length l must be >= 1".into()));
    }
    if k > l {
        return Err(Error::OutOfRange(format!(
            "decomposition requires k <= l; got k = {k}, l = {l}"
        )));
    }
    Ok(())
}

/// Writes `c` as a sum of `ℓ` powers of two with exponents at most `k`.
///
/// Follows the incremental scheme: start from all exponents 0 (sum `ℓ`) and,
/// while short of `c`, take the smallest exponent value `e < k` occurring at
/// least twice and replace one copy by `e+1` and the other by `0`, raising
/// the sum by exactly 1. Such a duplicate always exists below the range
/// maximum `(ℓ−k+1)2^k − 1`: a duplicate-free configuration with all other
/// mass at `k` already attains it.
pub fn decompose_powers(c: Value, l: u32, k: u32) -> Result<PowerDecomposition> {
    check_decompose_domain(l, k)?;
    let upper = plain_range_upper(l, k);
    if c < Value::from(l) || c > upper {
        return Err(Error::OutOfRange(format!(
            "decomposition of c = {c} needs l <= c <= (l-k+1)*2^k - 1 = {upper}; got l = {l}, k = {k}"
        )));
    }
    // Exponents never exceed 127: two copies of 2^127 would already overflow
    // the sum, so a duplicate at 127 cannot be consumed. Clamping keeps the
    // histogram small for absurdly large k.
    let top = k.min(127) as usize;
    let mut counts = vec![0u64; top + 1];
    counts[0] = u64::from(l);
    let mut sum = Value::from(l);
    while sum < c {
        let e = (0..top)
            .find(|&e| counts[e] >= 2)
            .expect("a duplicated exponent below k exists while the sum is below the range maximum");
        counts[e] -= 2;
        counts[e + 1] += 1;
        counts[0] += 1;
        sum += 1;
    }
    Ok(PowerDecomposition::from_counts(&counts, k, c))
}

/// Writes odd `c` as a sum of `ℓ` powers of two with exponents at most `k`,
/// valid on the wider range `ℓ <= c <= (ℓ−k+2)2^k − 3`.
///
/// Below `(ℓ−k+1)2^k − 1` this delegates to [`decompose_powers`]. Above it,
/// the excess `c′ = c − ((ℓ−k+1)2^k − 1)` is even with `2 <= c′ <= 2^k − 2`;
/// writing `c′ = Σ_{j=1}^{k−1} s_j 2^j` in binary digits gives the exponent
/// list `{0} ∪ {j−1+s_{j−1} : j = 2..k} ∪ {k × (ℓ−k)}`.
pub fn decompose_powers_odd(c: Value, l: u32, k: u32) -> Result<PowerDecomposition> {
    if c % 2 == 0 {
        return Err(Error::NotOdd(c));
    }
    check_decompose_domain(l, k)?;
    let upper = odd_range_upper(l, k);
    if c < Value::from(l) || upper < Value::from(l) || c > upper {
        return Err(Error::OutOfRange(format!(
            "odd decomposition of c = {c} needs l <= c <= (l-k+2)*2^k - 3 = {upper}; got l = {l}, k = {k}"
        )));
    }
    let plain_upper = plain_range_upper(l, k);
    if c <= plain_upper {
        return decompose_powers(c, l, k);
    }
    // Here c exceeds (l-k+1)*2^k - 1 >= 2^k - 1, so 2^k fits and k >= 2
    // (for k <= 1 the two ranges coincide).
    debug_assert!(k >= 2);
    let c_prime = c - plain_upper;
    debug_assert!(c_prime % 2 == 0 && c_prime >= 2 && c_prime <= pow2(k).unwrap() - 2);
    let mut digits = vec![0u32; k as usize];
    let mut rem = c_prime;
    for j in (1..k).rev() {
        let w = (1 as Value) << j;
        if rem >= w {
            digits[j as usize] = 1;
            rem -= w;
        }
    }
    debug_assert_eq!(rem, 0);
    let mut exponents = Vec::with_capacity(l as usize);
    exponents.extend(std::iter::repeat(k).take((l - k) as usize));
    for j in (2..=k).rev() {
        exponents.push(j - 1 + digits[(j - 1) as usize]);
    }
    exponents.push(0);
    exponents.sort_unstable_by(|a, b| b.cmp(a));
    let decomposition = PowerDecomposition {
        length_l: l,
        max_exponent_k: k,
        exponents,
        target_c: c,
    };
    debug_assert_eq!(decomposition.terms().iter().sum::<Value>(), c);
    Ok(decomposition)
}

/// The flat structure: `c` repeated `n−c` times, then `c` ones; sum
/// `c(n−c+1)`. For `c = 1` this is the all-ones structure.
pub fn construct_flat(n: u32, c: Value) -> Result<Structure> {
    if c < 1 || c + 1 > Value::from(n) {
        return Err(Error::OutOfRange(format!(
            "flat construction needs 1 <= c <= n - 1; got n = {n}, c = {c}"
        )));
    }
    let c_count = c as usize;
    let mut values = vec![c; n as usize - c_count];
    values.extend(std::iter::repeat(1).take(c_count));
    verify(&values)
}

fn check_geometric_domain(n: u32, k: u32) -> Result<Value> {
    if n < 2 || k < 1 {
        return Err(Error::OutOfRange(format!(
            "geometric construction needs n >= 2 and k >= 1; got n = {n}, k = {k}"
        )));
    }
    if k >= 32 || u64::from(k) + (1u64 << k) - 1 > u64::from(n) {
        return Err(Error::OutOfRange(format!(
            "geometric construction needs k + 2^k - 1 <= n; got n = {n}, k = {k}"
        )));
    }
    Ok((1 as Value) << k)
}

/// The geometric structure: `2^k − 1` copies of `c` followed by a
/// decomposition of `c` into `ℓ = n − 2^k + 1` powers of two; sum `2^k·c`.
pub fn construct_geometric(n: u32, k: u32, c: Value) -> Result<Structure> {
    let p = check_geometric_domain(n, k)?;
    let l = n - (p as u32) + 1;
    let upper = (Value::from(n) + 2 - Value::from(k) - p) * p - 1;
    if c < Value::from(l) || c > upper {
        return Err(Error::OutOfRange(format!(
            "geometric construction needs n - 2^k + 1 <= c <= (n-k-2^k+2)*2^k - 1 = {upper}; got n = {n}, k = {k}, c = {c}"
        )));
    }
    let decomposition = decompose_powers(c, l, k)?;
    let mut values = vec![c; p as usize - 1];
    values.extend(decomposition.terms());
    verify(&values)
}

/// The geometric structure for a prime largest value, valid on the wider
/// range `n − 2^k + 1 <= p <= (n−k−2^k+3)2^k − 3`. For `p = 2` the flat
/// structure already applies and is returned instead.
pub fn construct_geometric_prime(n: u32, k: u32, p: Value) -> Result<Structure> {
    let pw = check_geometric_domain(n, k)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let l = n - (pw as u32) + 1;
    let upper = (Value::from(n) + 3 - Value::from(k) - pw) * pw - 3;
    if p < Value::from(l) || p > upper {
        return Err(Error::OutOfRange(format!(
            "prime geometric construction needs n - 2^k + 1 <= p <= (n-k-2^k+3)*2^k - 3 = {upper}; got n = {n}, k = {k}, p = {p}"
        )));
    }
    if p == 2 {
        return construct_flat(n, 2);
    }
    let decomposition = decompose_powers_odd(p, l, k)?;
    let mut values = vec![p; pw as usize - 1];
    values.extend(decomposition.terms());
    verify(&values)
}

/// The quadratic structure: `k−1` copies of `k(n−k)+1`, then `n−k` copies of
/// `k`, then a single 1; sum `k(k(n−k)+1)`.
///
/// For `k >= 2` the largest value is `k(n−k)+1`. For `k = 1` the formula
/// value `n` appears zero times and the result is the all-ones structure, so
/// `k = 1` does not witness a largest value of `n`.
pub fn construct_quadratic(n: u32, k: u32) -> Result<Structure> {
    if k < 1 || k >= n {
        return Err(Error::OutOfRange(format!(
            "quadratic construction needs 1 <= k <= n - 1; got n = {n}, k = {k}"
        )));
    }
    let top = Value::from(k) * Value::from(n - k) + 1;
    let mut values = vec![top; k as usize - 1];
    values.extend(std::iter::repeat(Value::from(k)).take((n - k) as usize));
    values.push(1);
    verify(&values)
}

/// Which closed-form family produced a structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionFamily {
    Flat,
    Geometric,
    Quadratic,
    GeometricPrime,
}

impl ConstructionFamily {
    /// Stable lowercase name, used in serialized output.
    pub fn name(self) -> &'static str {
        match self {
            ConstructionFamily::Flat => "flat",
            ConstructionFamily::Geometric => "geometric",
            ConstructionFamily::Quadratic => "quadratic",
            ConstructionFamily::GeometricPrime => "geometric_prime",
        }
    }
}

/// A structure together with the family that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constructed {
    pub structure: Structure,
    pub family: ConstructionFamily,
}

/// Iterator over the `k` values admissible for the geometric families:
/// `k >= 1` with `k + 2^k − 1 <= n`.
fn admissible_ks(n: u32) -> impl Iterator<Item = u32> {
    (1..32).filter(move |&k| u64::from(k) + (1u64 << k) - 1 <= u64::from(n))
}

/// Finds some structure on `K_n` with largest value exactly `c`, trying the
/// families in a fixed cheap-first order: flat, geometric (k ascending),
/// quadratic, geometric-prime (k ascending). Succeeds for every `c` up to the
/// general bound, for every `c` in the quadratic family, and for every prime
/// up to the prime bound; a `NotFoundByConstruction` error signals only that
/// no family applies, not that `c` is infeasible.
pub fn construct_any(n: u32, c: Value) -> Result<Constructed> {
    if n < 1 || c < 1 {
        return Err(Error::OutOfRange(format!(
            "construction dispatch needs n >= 1 and c >= 1; got n = {n}, c = {c}"
        )));
    }
    let done = |structure: Structure, family: ConstructionFamily| {
        debug_assert_eq!(structure.largest(), c);
        Ok(Constructed { structure, family })
    };
    if c == 1 {
        return done(verify(&vec![1; n as usize])?, ConstructionFamily::Flat);
    }
    if c + 1 <= Value::from(n) {
        return done(construct_flat(n, c)?, ConstructionFamily::Flat);
    }
    for k in admissible_ks(n) {
        let p = (1 as Value) << k;
        let lower = Value::from(n) + 1 - p;
        let upper = (Value::from(n) + 2 - Value::from(k) - p) * p - 1;
        if lower <= c && c <= upper {
            return done(construct_geometric(n, k, c)?, ConstructionFamily::Geometric);
        }
    }
    for k in 2..n {
        if Value::from(k) * Value::from(n - k) + 1 == c {
            return done(construct_quadratic(n, k)?, ConstructionFamily::Quadratic);
        }
    }
    if is_prime(c) {
        for k in admissible_ks(n) {
            let p = (1 as Value) << k;
            let lower = Value::from(n) + 1 - p;
            let upper = (Value::from(n) + 3 - Value::from(k) - p) * p - 3;
            if lower <= c && c <= upper {
                return done(
                    construct_geometric_prime(n, k, c)?,
                    ConstructionFamily::GeometricPrime,
                );
            }
        }
    }
    Err(Error::NotFoundByConstruction { n, target: c })
}
