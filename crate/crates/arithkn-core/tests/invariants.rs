//! Cross-module invariants: properties that tie the bounds, constructions,
//! and search modules together and are not already covered by a numbered
//! acceptance criterion.

use arithkn_core::bounds::{bound_report, is_prime, obstructed_general, obstructed_prime};
use arithkn_core::search::{
    count_structures_with, enumerate_structures, max_value_feasible, max_value_feasible_with,
    prime_table,
};
use arithkn_core::structure::verify;
use arithkn_core::Value;

/// Everything up to the general bound is feasible with a construction
/// witness, i.e. the fast path answers before quadratic or search kick in.
#[test]
fn values_below_general_bound_are_feasible_by_construction() {
    for n in 2..=25u32 {
        let bound = bound_report(n).unwrap().general_bound();
        for c in 1..=bound {
            let r = max_value_feasible(n, c).unwrap();
            assert_eq!(r.reason_name(), "construction", "n = {n}, c = {c}");
            let w = r.witness().expect("feasible has a witness");
            assert_eq!(w.largest(), c);
        }
    }
}

/// The general obstruction never contradicts the exhaustive search, checked
/// beyond the acceptance scan's n range.
#[test]
fn general_obstruction_consistent_with_search() {
    for n in 1..=20u32 {
        for c in 2..=120u128 {
            if !obstructed_general(c, n).unwrap() {
                continue;
            }
            let r = max_value_feasible_with(n, c, false).unwrap();
            assert!(
                !r.is_feasible(),
                "n = {n}, c = {c}: obstructed yet feasible with {:?}",
                r.witness().map(|w| w.values().to_vec())
            );
        }
    }
}

/// An obstruction reason is only ever reported when the corresponding
/// predicate actually holds, and witnesses always verify with the right top.
#[test]
fn reasons_match_predicates() {
    for n in 1..=15u32 {
        for c in 1..=150u128 {
            let r = max_value_feasible(n, c).unwrap();
            match r.reason_name() {
                "general_obstruction" => {
                    assert!(obstructed_general(c, n).unwrap(), "n = {n}, c = {c}")
                }
                "prime_obstruction" => {
                    assert!(is_prime(c), "n = {n}, c = {c}");
                    assert!(obstructed_prime(c, n).unwrap(), "n = {n}, c = {c}");
                }
                _ => {}
            }
            if let Some(w) = r.witness() {
                assert_eq!(w.largest(), c);
                assert_eq!(w.n(), n);
                assert!(verify(w.values()).is_ok());
            }
        }
    }
}

/// Table-level consistency: the construction bound sits at or below the
/// obstruction threshold, and every classified prime lands strictly between
/// them in the list cells.
#[test]
fn prime_table_cells_sit_between_bound_and_threshold() {
    for row in prime_table(3, 27).unwrap() {
        let n = Value::from(row.n());
        let bound = row.prime_bound();
        // bound <= n^2/4 + 1, in integers: 4(bound - 1) <= n^2.
        assert!(4 * (bound - 1) <= n * n, "n = {n}");
        for p in row
            .yes_quadratic()
            .iter()
            .chain(row.yes_other())
            .chain(row.no_other())
        {
            assert!(*p > bound, "n = {n}, p = {p} not above the bound");
            assert!(4 * (p - 1) <= n * n, "n = {n}, p = {p} beyond the threshold");
            assert!(!obstructed_prime(*p, row.n()).unwrap());
        }
        for p in row.yes_quadratic().iter().chain(row.yes_other()) {
            assert!(
                max_value_feasible(row.n(), *p).unwrap().is_feasible(),
                "n = {n}, p = {p} classified feasible"
            );
        }
    }
}

/// Counting is pure fan-out: the result cannot depend on worker count, and
/// it matches a straight enumeration.
#[test]
fn count_is_independent_of_workers_and_matches_enumeration() {
    for n in 1..=6u32 {
        let enumerated = enumerate_structures(n).unwrap().count() as u64;
        for jobs in [None, Some(1), Some(2), Some(3), Some(8)] {
            assert_eq!(
                count_structures_with(n, jobs, false).unwrap(),
                enumerated,
                "n = {n}, jobs = {jobs:?}"
            );
        }
    }
}
