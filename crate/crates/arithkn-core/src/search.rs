//! Complete feasibility decision for a prescribed largest value, exhaustive
//! enumeration of all structures on `K_n`, and the per-`n` prime
//! classification table.
//!
//! Feasibility of largest value `c` on `K_n` reduces to finitely many cases:
//! the sum is `b·c` for some `b <= n`, the top value has multiplicity `m`,
//! and the remaining `n−m` values are divisors of `b·c` below `c` summing to
//! `(b−m)·c`, at least one of them coprime-breaking for each prime factor of
//! `c`. [`max_value_feasible`] searches these cases completely, so a negative
//! answer is a proof of infeasibility.
//!
//! Enumeration walks the unit-fraction tree: at each slot the denominator
//! ranges over an exact interval determined by the residual fraction, giving
//! every solution exactly once in lexicographic order. Counts match OEIS
//! A002966 (1, 1, 3, 14, 147, 3462, 294314, 159330691 for n = 1..8).

use std::collections::HashSet;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{ceil_div, checked_add, checked_mul, gcd};
use crate::bounds::{
    bound_report, factorize, is_prime, obstructed_general, obstructed_prime,
    prime_threshold_string,
};
use crate::constructions::{construct_any, construct_quadratic, ConstructionFamily};
use crate::structure::{from_unit_fractions, verify, Structure, UnitFractionSolution};
use crate::{Error, Result, Value};

/// Why a target is feasible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeasibleReason {
    /// A flat or geometric family witness (below the construction bound).
    Construction,
    /// A quadratic family witness `k(n−k)+1`.
    QuadraticFamily,
    /// Found only by the exhaustive case search.
    SearchWitness,
}

/// Why a target is infeasible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfeasibleReason {
    /// Smallest prime factor of `c` exceeds `(n+1)²/4`.
    GeneralObstruction,
    /// Prime `c` exceeds `n²/4 + 1`.
    PrimeObstruction,
    /// The complete case search found nothing.
    SearchExhausted,
}

/// Outcome of a feasibility decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Feasible {
        witness: Structure,
        reason: FeasibleReason,
    },
    Infeasible {
        reason: InfeasibleReason,
    },
}

/// The answer to "does `K_n` admit a structure with largest value `c`?",
/// with a verified witness when feasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityResult {
    n: u32,
    target_c: Value,
    verdict: Verdict,
}

impl FeasibilityResult {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn target_c(&self) -> Value {
        self.target_c
    }

    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self.verdict, Verdict::Feasible { .. })
    }

    pub fn witness(&self) -> Option<&Structure> {
        match &self.verdict {
            Verdict::Feasible { witness, .. } => Some(witness),
            Verdict::Infeasible { .. } => None,
        }
    }

    /// `"feasible"` or `"infeasible"`.
    pub fn status_name(&self) -> &'static str {
        if self.is_feasible() {
            "feasible"
        } else {
            "infeasible"
        }
    }

    /// Stable lowercase reason tag.
    pub fn reason_name(&self) -> &'static str {
        match &self.verdict {
            Verdict::Feasible { reason, .. } => match reason {
                FeasibleReason::Construction => "construction",
                FeasibleReason::QuadraticFamily => "quadratic_family",
                FeasibleReason::SearchWitness => "search_witness",
            },
            Verdict::Infeasible { reason } => match reason {
                InfeasibleReason::GeneralObstruction => "general_obstruction",
                InfeasibleReason::PrimeObstruction => "prime_obstruction",
                InfeasibleReason::SearchExhausted => "search_exhausted",
            },
        }
    }
}

impl Serialize for FeasibilityResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FeasibilityResult", 5)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("c", &self.target_c)?;
        s.serialize_field("status", self.status_name())?;
        s.serialize_field("reason", self.reason_name())?;
        s.serialize_field("witness", &self.witness())?;
        s.end()
    }
}

/// One `(b, m)` case of the feasibility analysis for largest value `c` on
/// `K_n`: the candidate sum is `b·c`, the top value has multiplicity `m`,
/// and the remaining `n − m` slots must be filled with divisors of `b·c`
/// below `c` summing to `(b − m)·c`. The coprime mask has one bit per
/// distinct prime factor of `c`; a bit is set once some chosen value is not
/// divisible by that prime, and a leaf is accepted only with all bits set
/// (the gcd of the whole structure is then 1).
#[derive(Debug, Clone)]
pub struct SearchFrame {
    /// Sum quotient: the candidate sum is `b·c`.
    pub b: Value,
    /// Multiplicity of the top value `c`.
    pub m: Value,
    /// Slots still to fill below the top value: `n − m`.
    pub remaining_count: u32,
    /// Sum those slots must reach: `(b − m)·c`.
    pub remaining_target: Value,
    /// Divisors of `b·c` strictly below `c`, descending.
    pub allowed_divisors: Vec<Value>,
    /// Bits over the distinct prime factors of `c`, set for primes that some
    /// currently chosen value is not divisible by.
    pub coprime_mask: u32,
    /// Per-divisor mask of prime factors of `c` it is *not* divisible by.
    break_masks: Vec<u32>,
    /// `suffix_masks[i]` = OR of `break_masks[i..]`.
    suffix_masks: Vec<u32>,
    full_mask: u32,
    /// Failed `(index, count, target, mask)` states.
    memo: HashSet<(u32, u32, Value, u32)>,
}

impl SearchFrame {
    /// Sets up the `(b, m)` case for largest value `c >= 2` on `K_n`.
    /// Requires `1 <= m <= min(b, n)` and `b <= n`.
    pub fn new(n: u32, c: Value, b: Value, m: Value) -> Result<Self> {
        if c < 2 {
            return Err(Error::OutOfRange("search cases need a target >= 2".into()));
        }
        if m < 1 || m > b || m > Value::from(n) || b > Value::from(n) {
            return Err(Error::OutOfRange(format!(
                "search case needs 1 <= m <= b <= n; got b = {b}, m = {m}, n = {n}"
            )));
        }
        let bc = checked_mul(b, c)?;
        let prime_factors = factorize(c)?.distinct_primes();
        let full_mask = (1u32 << prime_factors.len()) - 1;
        let mut allowed_divisors: Vec<Value> = factorize(bc)?
            .divisors()
            .into_iter()
            .filter(|&d| d < c)
            .collect();
        allowed_divisors.sort_unstable_by(|a, b| b.cmp(a));
        let break_masks: Vec<u32> = allowed_divisors
            .iter()
            .map(|&d| {
                prime_factors
                    .iter()
                    .enumerate()
                    .filter(|&(_, &p)| d % p != 0)
                    .fold(0, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        let mut suffix_masks = vec![0u32; allowed_divisors.len()];
        let mut acc = 0;
        for i in (0..allowed_divisors.len()).rev() {
            acc |= break_masks[i];
            suffix_masks[i] = acc;
        }
        Ok(SearchFrame {
            b,
            m,
            remaining_count: n - m as u32,
            // (b−m)·c <= b·c, which checked_mul already admitted.
            remaining_target: (b - m) * c,
            allowed_divisors,
            coprime_mask: 0,
            break_masks,
            suffix_masks,
            full_mask,
            memo: HashSet::new(),
        })
    }

    /// Depth-first multiset subset-sum over the divisor pool; returns the
    /// chosen values (nonincreasing) on success.
    pub fn solve(&mut self) -> Option<Vec<Value>> {
        let mut chosen = Vec::with_capacity(self.remaining_count as usize);
        self.coprime_mask = 0;
        if self.descend(0, self.remaining_count, self.remaining_target, 0, &mut chosen) {
            Some(chosen)
        } else {
            None
        }
    }

    fn descend(
        &mut self,
        start: usize,
        count: u32,
        target: Value,
        mask: u32,
        chosen: &mut Vec<Value>,
    ) -> bool {
        if count == 0 {
            return target == 0 && mask == self.full_mask;
        }
        // Every remaining value is at least 1.
        if target < Value::from(count) {
            return false;
        }
        if start >= self.allowed_divisors.len() {
            return false;
        }
        // Even taking every remaining divisor cannot complete the mask.
        if mask | self.suffix_masks[start] != self.full_mask {
            return false;
        }
        let key = (start as u32, count, target, mask);
        if self.memo.contains(&key) {
            return false;
        }
        for i in start..self.allowed_divisors.len() {
            let d = self.allowed_divisors[i];
            // The other count−1 values contribute at least 1 each.
            if d > target - Value::from(count - 1) {
                continue;
            }
            // Descending order: once count copies of d cannot reach the
            // target, no later divisor can either.
            if let Some(best) = Value::from(count).checked_mul(d) {
                if best < target {
                    break;
                }
            }
            chosen.push(d);
            self.coprime_mask = mask | self.break_masks[i];
            if self.descend(i, count - 1, target - d, mask | self.break_masks[i], chosen) {
                return true;
            }
            chosen.pop();
            self.coprime_mask = mask;
        }
        self.memo.insert(key);
        false
    }
}

/// Decides feasibility of largest value `c` on `K_n` with all fast paths
/// enabled. See [`max_value_feasible_with`].
pub fn max_value_feasible(n: u32, c: Value) -> Result<FeasibilityResult> {
    max_value_feasible_with(n, c, true)
}

/// Complete decision procedure for "some structure on `K_n` has largest
/// value exactly `c`".
///
/// With `fast_paths` enabled, obstruction predicates and the construction
/// dispatcher answer most instances immediately. With `fast_paths` disabled
/// (a testing hook), the exhaustive case search alone produces the answer;
/// results are identical either way.
pub fn max_value_feasible_with(n: u32, c: Value, fast_paths: bool) -> Result<FeasibilityResult> {
    if n < 1 {
        return Err(Error::OutOfRange("feasibility needs n >= 1".into()));
    }
    if c < 1 {
        return Err(Error::OutOfRange("feasibility needs a target >= 1".into()));
    }
    let result = |verdict| Ok(FeasibilityResult { n, target_c: c, verdict });
    if c == 1 {
        return result(Verdict::Feasible {
            witness: verify(&vec![1; n as usize])?,
            reason: FeasibleReason::Construction,
        });
    }
    if fast_paths {
        if obstructed_general(c, n)? {
            return result(Verdict::Infeasible {
                reason: InfeasibleReason::GeneralObstruction,
            });
        }
        if is_prime(c) && obstructed_prime(c, n)? {
            return result(Verdict::Infeasible {
                reason: InfeasibleReason::PrimeObstruction,
            });
        }
        if let Ok(found) = construct_any(n, c) {
            let reason = match found.family {
                ConstructionFamily::Quadratic => FeasibleReason::QuadraticFamily,
                _ => FeasibleReason::Construction,
            };
            return result(Verdict::Feasible {
                witness: found.structure,
                reason,
            });
        }
    }
    // Exhaustive case analysis. Sum = b·c with m copies of c and n−m smaller
    // values, each a divisor of b·c.
    let b_lo = ceil_div(checked_add(c, Value::from(n) - 1)?, c);
    let mut b = b_lo;
    while b <= Value::from(n) {
        let m_hi = b.min(Value::from(n) - 1);
        let mut m: Value = 1;
        while m <= m_hi {
            let mut frame = SearchFrame::new(n, c, b, m)?;
            if let Some(rest) = frame.solve() {
                let mut values = vec![c; m as usize];
                values.extend(rest);
                let witness = verify(&values)?;
                debug_assert_eq!(witness.largest(), c);
                debug_assert_eq!(witness.sum(), b * c);
                return result(Verdict::Feasible {
                    witness,
                    reason: FeasibleReason::SearchWitness,
                });
            }
            m += 1;
        }
        b += 1;
    }
    result(Verdict::Infeasible {
        reason: InfeasibleReason::SearchExhausted,
    })
}

/// Enumeration cap: beyond this the stream is a batch job (n = 8 already has
/// 159,330,691 solutions) and must be requested explicitly.
pub const ENUMERATION_SOFT_CAP: u32 = 8;

fn check_enumeration_domain(n: u32, force: bool) -> Result<()> {
    if n < 1 {
        return Err(Error::OutOfRange("enumeration needs n >= 1".into()));
    }
    if n > ENUMERATION_SOFT_CAP && !force {
        return Err(Error::OutOfRange(format!(
            "n = {n} exceeds the enumeration cap {ENUMERATION_SOFT_CAP}; pass force to run anyway"
        )));
    }
    Ok(())
}

struct DenominatorFrame {
    /// Residual fraction before this slot's choice, in lowest terms.
    num: Value,
    den: Value,
    /// Slots left including this one.
    slots: u32,
    /// Next candidate denominator and the last admissible one.
    next: Value,
    hi: Value,
}

/// Lazy lexicographic stream of all solutions of `1/x_1 + … + 1/x_n = 1`
/// with `x_1 <= … <= x_n`.
///
/// Items are `Err(Overflow)` for branches whose residual arithmetic exceeds
/// 128 bits; that never happens for n <= 8.
pub struct DenominatorTuples {
    frames: Vec<DenominatorFrame>,
    prefix: Vec<Value>,
}

/// All denominator tuples for `n` slots, lexicographically. Honors the soft
/// cap unless `force` is set.
pub fn unit_fraction_solutions(n: u32, force: bool) -> Result<DenominatorTuples> {
    check_enumeration_domain(n, force)?;
    Ok(DenominatorTuples {
        frames: vec![DenominatorFrame {
            num: 1,
            den: 1,
            slots: n,
            next: 1,
            hi: Value::from(n),
        }],
        prefix: Vec::new(),
    })
}

impl Iterator for DenominatorTuples {
    type Item = Result<Vec<Value>>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let frame = self.frames.last_mut()?;
            if frame.next > frame.hi {
                self.frames.pop();
                self.prefix.pop();
                continue;
            }
            let x = frame.next;
            frame.next += 1;
            let (num, den, slots) = (frame.num, frame.den, frame.slots);
            if slots == 1 {
                // The slot range forces x = den/num exactly.
                let mut solution = self.prefix.clone();
                solution.push(x);
                return Some(Ok(solution));
            }
            // Residual after taking 1/x: (num·x − den) / (den·x).
            let nx = match checked_mul(num, x) {
                Ok(v) => v,
                Err(e) => return Some(Err(e)),
            };
            let new_num = nx - den;
            if new_num == 0 {
                // Residual exhausted with slots still open.
                continue;
            }
            let new_den = match checked_mul(den, x) {
                Ok(v) => v,
                Err(e) => return Some(Err(e)),
            };
            let g = gcd(new_num, new_den);
            let (rn, rd) = (new_num / g, new_den / g);
            let lo = x.max(ceil_div(rd, rn));
            let hi = match checked_mul(Value::from(slots - 1), rd) {
                Ok(v) => v / rn,
                Err(e) => return Some(Err(e)),
            };
            if lo > hi {
                continue;
            }
            self.prefix.push(x);
            self.frames.push(DenominatorFrame {
                num: rn,
                den: rd,
                slots: slots - 1,
                next: lo,
                hi,
            });
        }
    }
}

/// Iterator adapter turning denominator tuples into verified structures.
pub struct StructureStream {
    inner: DenominatorTuples,
}

impl Iterator for StructureStream {
    type Item = Result<Structure>;

    fn next(&mut self) -> Option<Self::Item> {
        let denominators = match self.inner.next()? {
            Ok(d) => d,
            Err(e) => return Some(Err(e)),
        };
        Some(
            UnitFractionSolution::new(&denominators).map(|u| from_unit_fractions(&u)),
        )
    }
}

/// Every structure on `K_n` exactly once, ordered by the lexicographic order
/// of the corresponding nondecreasing denominator tuples. Each item passes
/// `verify`; items whose sum exceeds 128 bits (possible only for forced
/// n >= 8 tails) surface as `Err(Overflow)`.
pub fn enumerate_structures(n: u32) -> Result<StructureStream> {
    enumerate_structures_with(n, false)
}

/// As [`enumerate_structures`] with an explicit cap override.
pub fn enumerate_structures_with(n: u32, force: bool) -> Result<StructureStream> {
    Ok(StructureStream {
        inner: unit_fraction_solutions(n, force)?,
    })
}

/// Recursive solution counter over the same slot ranges as the enumerator.
fn count_completions(num: Value, den: Value, slots: u32, min_x: Value) -> Result<u64> {
    if slots == 1 {
        // Exactly one solution iff the residual is a unit fraction with a
        // large enough denominator.
        return Ok(u64::from(num == 1 && den >= min_x));
    }
    let lo = min_x.max(ceil_div(den, num));
    let hi = checked_mul(Value::from(slots), den)? / num;
    let mut total = 0u64;
    let mut x = lo;
    while x <= hi {
        let new_num = checked_mul(num, x)? - den;
        if new_num > 0 {
            let new_den = checked_mul(den, x)?;
            let g = gcd(new_num, new_den);
            total += count_completions(new_num / g, new_den / g, slots - 1, x)?;
        }
        x += 1;
    }
    Ok(total)
}

/// Number of structures on `K_n` (equivalently, of unit-fraction solutions),
/// without materializing them.
pub fn count_structures(n: u32) -> Result<u64> {
    count_structures_with(n, None, false)
}

/// As [`count_structures`], optionally on a dedicated thread pool with
/// `jobs` workers. The count is split over the first two denominators and
/// reduced by summation only, so the result does not depend on the worker
/// count.
pub fn count_structures_with(n: u32, jobs: Option<usize>, force: bool) -> Result<u64> {
    check_enumeration_domain(n, force)?;
    if n <= 2 {
        return Ok(1);
    }
    // Collect (x1, x2) subproblems sequentially; solutions always fill all n
    // slots, so no completion happens at depth < n for n >= 3.
    let mut tasks: Vec<(Value, Value, Value)> = Vec::new();
    for x1 in 2..=Value::from(n) {
        let (n1, d1) = {
            let g = gcd(x1 - 1, x1);
            ((x1 - 1) / g, x1 / g)
        };
        let lo = x1.max(ceil_div(d1, n1));
        let hi = checked_mul(Value::from(n - 1), d1)? / n1;
        for x2 in lo..=hi {
            let nn = checked_mul(n1, x2)? - d1;
            if nn == 0 {
                continue;
            }
            let nd = checked_mul(d1, x2)?;
            let g = gcd(nn, nd);
            tasks.push((nn / g, nd / g, x2));
        }
    }
    let count_task =
        |&(num, den, min_x): &(Value, Value, Value)| count_completions(num, den, n - 2, min_x);
    let counts: Vec<Result<u64>> = match jobs {
        Some(workers) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::OutOfRange(format!("cannot build thread pool: {e}")))?;
            pool.install(|| {
                use rayon::prelude::*;
                tasks.par_iter().map(count_task).collect()
            })
        }
        None => tasks.iter().map(count_task).collect(),
    };
    let mut total = 0u64;
    for c in counts {
        total += c?;
    }
    Ok(total)
}

/// Classification of one prime for the per-`n` table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeClass {
    /// Within the prime construction bound.
    YesBound,
    /// Excluded by the prime obstruction.
    NoObstruction,
    /// Beyond the bound but in the quadratic family `k(n−k)+1`.
    YesQuadratic,
    /// Feasible, found only by the exhaustive search.
    YesSearch,
    /// Infeasible, proven by the exhausted search.
    NoSearch,
}

/// Places a prime into exactly one of the five table classes, checked in the
/// order bound, obstruction, quadratic family, exhaustive search.
pub fn classify_prime(n: u32, p: Value) -> Result<PrimeClass> {
    if n < 3 {
        return Err(Error::OutOfRange(format!(
            "prime classification needs n >= 3; got n = {n}"
        )));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p <= bound_report(n)?.prime_bound() {
        return Ok(PrimeClass::YesBound);
    }
    if obstructed_prime(p, n)? {
        return Ok(PrimeClass::NoObstruction);
    }
    for k in 2..n {
        if Value::from(k) * Value::from(n - k) + 1 == p {
            let witness = construct_quadratic(n, k)?;
            debug_assert_eq!(witness.largest(), p);
            return Ok(PrimeClass::YesQuadratic);
        }
    }
    if max_value_feasible(n, p)?.is_feasible() {
        Ok(PrimeClass::YesSearch)
    } else {
        Ok(PrimeClass::NoSearch)
    }
}

/// One row of the prime classification table: which primes up to
/// `n²/4 + 1` are achievable as the largest value on `K_n`, and why.
///
/// The first two columns are threshold summaries (`p <= prime_bound` is
/// feasible by construction, `p > n²/4 + 1` is obstructed); the three list
/// columns hold the primes in between: quadratic-family witnesses, other
/// feasible primes, and proven-infeasible primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeTableRow {
    n: u32,
    prime_bound: Value,
    obstruction_threshold: String,
    yes_quadratic: Vec<Value>,
    yes_other: Vec<Value>,
    no_other: Vec<Value>,
}

impl PrimeTableRow {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn prime_bound(&self) -> Value {
        self.prime_bound
    }

    /// Exact decimal string of `n²/4 + 1`.
    pub fn obstruction_threshold(&self) -> &str {
        &self.obstruction_threshold
    }

    pub fn yes_quadratic(&self) -> &[Value] {
        &self.yes_quadratic
    }

    pub fn yes_other(&self) -> &[Value] {
        &self.yes_other
    }

    pub fn no_other(&self) -> &[Value] {
        &self.no_other
    }
}

/// Builds the classification table rows for `n_min..=n_max` (desk scale,
/// capped at 30). Every prime up to `n²/4 + 1` is classified; primes in the
/// next stretch beyond the threshold are verified to be obstructed.
pub fn prime_table(n_min: u32, n_max: u32) -> Result<Vec<PrimeTableRow>> {
    if n_min < 3 || n_min > n_max || n_max > 30 {
        return Err(Error::OutOfRange(format!(
            "prime table needs 3 <= n_min <= n_max <= 30; got {n_min}..{n_max}"
        )));
    }
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let bound = bound_report(n)?.prime_bound();
        let mut row = PrimeTableRow {
            n,
            prime_bound: bound,
            obstruction_threshold: prime_threshold_string(n),
            yes_quadratic: Vec::new(),
            yes_other: Vec::new(),
            no_other: Vec::new(),
        };
        let nsq = Value::from(n) * Value::from(n);
        let mut p: Value = 2;
        // p <= n²/4 + 1 in integers: 4(p−1) <= n².
        while 4 * (p - 1) <= nsq {
            if is_prime(p) {
                match classify_prime(n, p)? {
                    PrimeClass::YesBound => {}
                    PrimeClass::NoObstruction => unreachable!("below the obstruction threshold"),
                    PrimeClass::YesQuadratic => row.yes_quadratic.push(p),
                    PrimeClass::YesSearch => row.yes_other.push(p),
                    PrimeClass::NoSearch => row.no_other.push(p),
                }
            }
            p += 1;
        }
        // Emptiness beyond the threshold: the next stretch of primes must all
        // be obstructed.
        while 4 * (p - 1) <= 2 * nsq {
            if is_prime(p) && !obstructed_prime(p, n)? {
                return Err(Error::OutOfRange(format!(
                    "prime {p} beyond the threshold is not obstructed for n = {n}"
                )));
            }
            p += 1;
        }
        rows.push(row);
    }
    Ok(rows)
}

/// First `n` in `3..=n_max` exhibiting the no-cutoff phenomenon: some prime
/// is infeasible while a larger one is feasible. Returns `(n, infeasible,
/// feasible)` with the smallest such pair for that `n`.
pub fn no_cutoff_report(n_max: u32) -> Result<Option<(u32, Value, Value)>> {
    for row in prime_table(3, n_max)? {
        if let Some(&p_no) = row.no_other().first() {
            let p_yes = row
                .yes_quadratic()
                .iter()
                .chain(row.yes_other())
                .copied()
                .filter(|&p| p > p_no)
                .min();
            if let Some(p_yes) = p_yes {
                return Ok(Some((row.n(), p_no, p_yes)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::to_unit_fractions;

    #[test]
    fn feasible_examples() {
        let r = max_value_feasible(18, 79).unwrap();
        assert!(!r.is_feasible());
        assert_eq!(r.reason_name(), "search_exhausted");

        let r = max_value_feasible(27, 181).unwrap();
        assert!(r.is_feasible());

        let r = max_value_feasible(14, 47).unwrap();
        assert!(r.is_feasible());
        assert_eq!(r.reason_name(), "search_witness");
        let w = r.witness().unwrap();
        assert_eq!(w.largest(), 47);
        assert_eq!(w.n(), 14);

        let r = max_value_feasible(5, 105).unwrap();
        assert!(r.is_feasible());
        let w = r.witness().unwrap();
        assert_eq!(w.largest(), 105);
        assert_eq!(w.n(), 5);
    }

    #[test]
    fn feasible_trivial_cases() {
        let r = max_value_feasible(1, 1).unwrap();
        assert_eq!(r.witness().unwrap().values(), &[1]);
        let r = max_value_feasible(1, 2).unwrap();
        assert!(!r.is_feasible());
        let r = max_value_feasible(7, 1).unwrap();
        assert_eq!(r.witness().unwrap().values(), &[1; 7]);
        assert!(max_value_feasible(0, 1).is_err());
        assert!(max_value_feasible(3, 0).is_err());
    }

    #[test]
    fn feasible_reason_tags() {
        // Obstructions win before anything else for c >= 2.
        let r = max_value_feasible(3, 25).unwrap();
        assert_eq!(r.reason_name(), "general_obstruction");
        let r = max_value_feasible(18, 83).unwrap();
        assert_eq!(r.reason_name(), "prime_obstruction");
        // In-bound values come from constructions.
        let r = max_value_feasible(18, 71).unwrap();
        assert_eq!(r.reason_name(), "construction");
        // 31 = 5·(11−5)+1 is quadratic-only at n=11.
        let r = max_value_feasible(11, 31).unwrap();
        assert_eq!(r.reason_name(), "quadratic_family");
    }

    #[test]
    fn fast_paths_do_not_change_answers() {
        for n in 1..=8u32 {
            let cap = Value::from(n) * Value::from(n) / 4 + 2;
            for c in 1..=cap {
                let fast = max_value_feasible_with(n, c, true).unwrap();
                let slow = max_value_feasible_with(n, c, false).unwrap();
                assert_eq!(fast.is_feasible(), slow.is_feasible(), "n={n} c={c}");
                if let Some(w) = slow.witness() {
                    assert_eq!(w.largest(), c);
                }
            }
        }
    }

    #[test]
    fn search_json_shape() {
        let r = max_value_feasible(18, 79).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"n":18,"c":79,"status":"infeasible","reason":"search_exhausted","witness":null}"#
        );
        let r = max_value_feasible(3, 3).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"n":3,"c":3,"status":"feasible","reason":"construction","witness":{"n":3,"values":[3,2,1],"sum":6,"b":2}}"#
        );
    }

    #[test]
    fn enumerate_n3_exact_order() {
        let tuples: Vec<Vec<Value>> = unit_fraction_solutions(3, false)
            .unwrap()
            .map(|t| t.unwrap())
            .collect();
        assert_eq!(tuples, vec![vec![2, 3, 6], vec![2, 4, 4], vec![3, 3, 3]]);

        let structures: Vec<Structure> = enumerate_structures(3)
            .unwrap()
            .map(|s| s.unwrap())
            .collect();
        let values: Vec<&[Value]> = structures.iter().map(|s| s.values()).collect();
        assert_eq!(values, vec![&[3, 2, 1][..], &[2, 1, 1][..], &[1, 1, 1][..]]);
    }

    #[test]
    fn enumerate_n1_and_caps() {
        let ones: Vec<Structure> = enumerate_structures(1).unwrap().map(|s| s.unwrap()).collect();
        assert_eq!(ones.len(), 1);
        assert_eq!(ones[0].values(), &[1]);

        assert!(enumerate_structures(9).is_err());
        assert!(unit_fraction_solutions(9, true).is_ok());
        assert!(enumerate_structures(0).is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_duplicate_free() {
        for n in 1..=5u32 {
            let tuples: Vec<Vec<Value>> = unit_fraction_solutions(n, false)
                .unwrap()
                .map(|t| t.unwrap())
                .collect();
            for t in &tuples {
                assert!(t.windows(2).all(|w| w[0] <= w[1]));
                assert_eq!(t.len(), n as usize);
            }
            let mut sorted = tuples.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, tuples, "lexicographic and duplicate-free for n={n}");
        }
    }

    #[test]
    fn every_enumerated_structure_round_trips() {
        for n in 1..=5u32 {
            for s in enumerate_structures(n).unwrap() {
                let s = s.unwrap();
                let u = to_unit_fractions(&s);
                assert_eq!(u.lcm(), s.sum());
                assert_eq!(from_unit_fractions(&u), s);
                assert_eq!(verify(s.values()).unwrap(), s);
            }
        }
    }

    #[test]
    fn counts_match_reference_sequence() {
        // OEIS A002966.
        assert_eq!(count_structures(1).unwrap(), 1);
        assert_eq!(count_structures(2).unwrap(), 1);
        assert_eq!(count_structures(3).unwrap(), 3);
        assert_eq!(count_structures(4).unwrap(), 14);
        assert_eq!(count_structures(5).unwrap(), 147);
        assert_eq!(count_structures(6).unwrap(), 3462);
    }

    #[test]
    fn count_agrees_with_enumeration() {
        for n in 1..=6u32 {
            let streamed = enumerate_structures(n).unwrap().count() as u64;
            assert_eq!(count_structures(n).unwrap(), streamed, "n={n}");
        }
    }

    #[test]
    fn count_is_worker_invariant() {
        for jobs in [Some(1), Some(2), Some(4), None] {
            assert_eq!(count_structures_with(6, jobs, false).unwrap(), 3462);
        }
    }

    #[test]
    #[ignore = "long-running: full n = 7 count"]
    fn count_n7_slow() {
        assert_eq!(count_structures(7).unwrap(), 294_314);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_prime(18, 79).unwrap(), PrimeClass::NoSearch);
        assert_eq!(classify_prime(21, 103).unwrap(), PrimeClass::YesSearch);
        assert_eq!(classify_prime(21, 107).unwrap(), PrimeClass::YesSearch);
        assert_eq!(classify_prime(11, 31).unwrap(), PrimeClass::YesQuadratic);
        assert_eq!(classify_prime(18, 73).unwrap(), PrimeClass::YesBound);
        assert_eq!(classify_prime(18, 83).unwrap(), PrimeClass::NoObstruction);
        assert_eq!(classify_prime(18, 81), Err(Error::NotPrime(81)));
        assert!(classify_prime(2, 3).is_err());
    }

    #[test]
    fn prime_table_row_18() {
        let rows = prime_table(18, 18).unwrap();
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        assert_eq!(row.prime_bound(), 77);
        assert_eq!(row.obstruction_threshold(), "82");
        assert!(row.yes_quadratic().is_empty());
        assert!(row.yes_other().is_empty());
        assert_eq!(row.no_other(), &[79]);
    }

    #[test]
    fn no_cutoff_first_at_27() {
        assert_eq!(no_cutoff_report(26).unwrap(), None);
        assert_eq!(no_cutoff_report(27).unwrap(), Some((27, 179, 181)));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn feasible_witnesses_verify(n in 1..=10u32, c in 1..=40u128) {
            let r = max_value_feasible(n, c).unwrap();
            if let Some(w) = r.witness() {
                proptest::prop_assert_eq!(w.largest(), c);
                proptest::prop_assert_eq!(w.n(), n);
                proptest::prop_assert!(verify(w.values()).is_ok());
            }
        }
    }
}
