//! Python bindings for `arithkn-core`.
//!
//! Exposes the main types (structures, unit-fraction solutions, power
//! decompositions, bound reports, feasibility results, table rows) and the
//! operations over them. Domain errors raise `ValueError`; 128-bit overflow
//! raises `OverflowError`.

use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;

use arithkn_core::{bounds, constructions, search, structure, Error, Value};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Overflow => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// An arithmetical structure on `K_n`: positive values, nonincreasing,
/// gcd 1, each dividing the sum.
#[pyclass(name = "Structure", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyStructure {
    inner: structure::Structure,
}

#[pymethods]
impl PyStructure {
    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn values(&self) -> Vec<Value> {
        self.inner.values().to_vec()
    }

    #[getter]
    fn sum(&self) -> Value {
        self.inner.sum()
    }

    #[getter]
    fn largest(&self) -> Value {
        self.inner.largest()
    }

    /// The integer quotient sum / largest.
    #[getter]
    fn b(&self) -> Value {
        self.inner.quotient_b()
    }

    /// The corresponding solution of 1/x_1 + ... + 1/x_n = 1.
    fn to_unit_fractions(&self) -> PyUnitFractionSolution {
        PyUnitFractionSolution {
            inner: structure::to_unit_fractions(&self.inner),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Structure(values={:?}, sum={}, b={})",
            self.inner.values(),
            self.inner.sum(),
            self.inner.quotient_b()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __len__(&self) -> usize {
        self.inner.values().len()
    }
}

/// A solution of 1/x_1 + ... + 1/x_n = 1 with nondecreasing denominators.
#[pyclass(name = "UnitFractionSolution", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyUnitFractionSolution {
    inner: structure::UnitFractionSolution,
}

#[pymethods]
impl PyUnitFractionSolution {
    #[new]
    fn new(denominators: Vec<Value>) -> PyResult<Self> {
        Ok(PyUnitFractionSolution {
            inner: structure::UnitFractionSolution::new(&denominators).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn denominators(&self) -> Vec<Value> {
        self.inner.denominators().to_vec()
    }

    #[getter]
    fn lcm(&self) -> Value {
        self.inner.lcm()
    }

    /// The corresponding arithmetical structure (values lcm / x_i).
    fn to_structure(&self) -> PyStructure {
        PyStructure {
            inner: structure::from_unit_fractions(&self.inner),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "UnitFractionSolution(denominators={:?}, lcm={})",
            self.inner.denominators(),
            self.inner.lcm()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// A representation c = sum of l powers of two with exponents at most k.
#[pyclass(name = "PowerDecomposition", frozen)]
struct PyPowerDecomposition {
    inner: constructions::PowerDecomposition,
}

#[pymethods]
impl PyPowerDecomposition {
    #[getter]
    fn length_l(&self) -> u32 {
        self.inner.length_l()
    }

    #[getter]
    fn max_exponent_k(&self) -> u32 {
        self.inner.max_exponent_k()
    }

    #[getter]
    fn exponents(&self) -> Vec<u32> {
        self.inner.exponents().to_vec()
    }

    #[getter]
    fn target_c(&self) -> Value {
        self.inner.target_c()
    }

    /// The summands 2^{e_j}, nonincreasing.
    fn terms(&self) -> Vec<Value> {
        self.inner.terms()
    }

    fn __repr__(&self) -> String {
        format!(
            "PowerDecomposition(c={}, exponents={:?})",
            self.inner.target_c(),
            self.inner.exponents()
        )
    }
}

/// Largest values guaranteed constructible on `K_n`, with the exponent
/// choices attaining them.
#[pyclass(name = "BoundReport", frozen)]
struct PyBoundReport {
    inner: bounds::BoundReport,
}

#[pymethods]
impl PyBoundReport {
    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn general_bound(&self) -> Value {
        self.inner.general_bound()
    }

    #[getter]
    fn general_k(&self) -> u32 {
        self.inner.general_k()
    }

    #[getter]
    fn prime_bound(&self) -> Value {
        self.inner.prime_bound()
    }

    #[getter]
    fn prime_k(&self) -> u32 {
        self.inner.prime_k()
    }

    fn __repr__(&self) -> String {
        format!(
            "BoundReport(n={}, general_bound={}, prime_bound={})",
            self.inner.n(),
            self.inner.general_bound(),
            self.inner.prime_bound()
        )
    }
}

/// The decision for "does some structure on K_n have largest value c".
#[pyclass(name = "FeasibilityResult", frozen)]
struct PyFeasibilityResult {
    inner: search::FeasibilityResult,
}

#[pymethods]
impl PyFeasibilityResult {
    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn c(&self) -> Value {
        self.inner.target_c()
    }

    #[getter]
    fn feasible(&self) -> bool {
        self.inner.is_feasible()
    }

    /// "feasible" or "infeasible".
    #[getter]
    fn status(&self) -> &'static str {
        self.inner.status_name()
    }

    /// Why: construction, quadratic_family, search_witness,
    /// general_obstruction, prime_obstruction, or search_exhausted.
    #[getter]
    fn reason(&self) -> &'static str {
        self.inner.reason_name()
    }

    #[getter]
    fn witness(&self) -> Option<PyStructure> {
        self.inner
            .witness()
            .map(|w| PyStructure { inner: w.clone() })
    }

    fn __repr__(&self) -> String {
        format!(
            "FeasibilityResult(n={}, c={}, status={:?}, reason={:?})",
            self.inner.n(),
            self.inner.target_c(),
            self.inner.status_name(),
            self.inner.reason_name()
        )
    }
}

/// One row of the prime classification table for `K_n`.
#[pyclass(name = "PrimeTableRow", frozen)]
struct PyPrimeTableRow {
    inner: search::PrimeTableRow,
}

#[pymethods]
impl PyPrimeTableRow {
    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn prime_bound(&self) -> Value {
        self.inner.prime_bound()
    }

    /// Exact decimal string of n^2/4 + 1.
    #[getter]
    fn obstruction_threshold(&self) -> String {
        self.inner.obstruction_threshold().to_string()
    }

    #[getter]
    fn yes_quadratic(&self) -> Vec<Value> {
        self.inner.yes_quadratic().to_vec()
    }

    #[getter]
    fn yes_other(&self) -> Vec<Value> {
        self.inner.yes_other().to_vec()
    }

    #[getter]
    fn no_other(&self) -> Vec<Value> {
        self.inner.no_other().to_vec()
    }

    fn __repr__(&self) -> String {
        format!(
            "PrimeTableRow(n={}, prime_bound={}, yes_quadratic={:?}, yes_other={:?}, no_other={:?})",
            self.inner.n(),
            self.inner.prime_bound(),
            self.inner.yes_quadratic(),
            self.inner.yes_other(),
            self.inner.no_other()
        )
    }
}

/// Checks the values and returns the canonical (nonincreasing) structure.
#[pyfunction]
fn verify(values: Vec<Value>) -> PyResult<PyStructure> {
    Ok(PyStructure {
        inner: structure::verify(&values).map_err(to_py_err)?,
    })
}

/// c repeated n-c times plus c ones; needs 1 <= c <= n-1.
#[pyfunction]
fn construct_flat(n: u32, c: Value) -> PyResult<PyStructure> {
    Ok(PyStructure {
        inner: constructions::construct_flat(n, c).map_err(to_py_err)?,
    })
}

/// 2^k - 1 copies of c plus a power-of-two decomposition of c.
#[pyfunction]
fn construct_geometric(n: u32, k: u32, c: Value) -> PyResult<PyStructure> {
    Ok(PyStructure {
        inner: constructions::construct_geometric(n, k, c).map_err(to_py_err)?,
    })
}

/// Geometric family over the wider odd decomposition range; p must be prime.
#[pyfunction]
fn construct_geometric_prime(n: u32, k: u32, p: Value) -> PyResult<PyStructure> {
    Ok(PyStructure {
        inner: constructions::construct_geometric_prime(n, k, p).map_err(to_py_err)?,
    })
}

/// k-1 copies of k(n-k)+1, then n-k copies of k, then a single 1.
#[pyfunction]
fn construct_quadratic(n: u32, k: u32) -> PyResult<PyStructure> {
    Ok(PyStructure {
        inner: constructions::construct_quadratic(n, k).map_err(to_py_err)?,
    })
}

/// Tries every closed-form family; returns (structure, family_name) where
/// family_name is flat, geometric, quadratic, or geometric_prime.
#[pyfunction]
fn construct_any(n: u32, c: Value) -> PyResult<(PyStructure, &'static str)> {
    let found = constructions::construct_any(n, c).map_err(to_py_err)?;
    Ok((
        PyStructure {
            inner: found.structure,
        },
        found.family.name(),
    ))
}

/// Writes c as a sum of l powers of two with exponents at most k.
#[pyfunction]
fn decompose_powers(c: Value, l: u32, k: u32) -> PyResult<PyPowerDecomposition> {
    Ok(PyPowerDecomposition {
        inner: constructions::decompose_powers(c, l, k).map_err(to_py_err)?,
    })
}

/// As decompose_powers for odd c, valid on the wider range.
#[pyfunction]
fn decompose_powers_odd(c: Value, l: u32, k: u32) -> PyResult<PyPowerDecomposition> {
    Ok(PyPowerDecomposition {
        inner: constructions::decompose_powers_odd(c, l, k).map_err(to_py_err)?,
    })
}

/// Best construction bounds for K_n over all exponent choices.
#[pyfunction]
fn bound_report(n: u32) -> PyResult<PyBoundReport> {
    Ok(PyBoundReport {
        inner: bounds::bound_report(n).map_err(to_py_err)?,
    })
}

/// The half-open interval of n on which exponent k is the best choice.
#[pyfunction]
fn optimal_k_range(k: u32) -> PyResult<(Value, Value)> {
    bounds::optimal_k_range(k).map_err(to_py_err)
}

#[pyfunction]
fn smallest_prime_factor(c: Value) -> PyResult<Value> {
    bounds::smallest_prime_factor(c).map_err(to_py_err)
}

#[pyfunction]
fn is_prime(x: Value) -> bool {
    bounds::is_prime(x)
}

/// True iff 4 * spf(c) > (n+1)^2, proving c is not a largest value on K_n.
#[pyfunction]
fn obstructed_general(c: Value, n: u32) -> PyResult<bool> {
    bounds::obstructed_general(c, n).map_err(to_py_err)
}

/// True iff prime p > n^2/4 + 1, proving p is not a largest value on K_n.
#[pyfunction]
fn obstructed_prime(p: Value, n: u32) -> PyResult<bool> {
    bounds::obstructed_prime(p, n).map_err(to_py_err)
}

/// Complete decision for largest value c on K_n. With fast_paths=False the
/// exhaustive case search runs alone; the answer is identical.
#[pyfunction]
#[pyo3(signature = (n, c, fast_paths = true))]
fn max_value_feasible(n: u32, c: Value, fast_paths: bool) -> PyResult<PyFeasibilityResult> {
    Ok(PyFeasibilityResult {
        inner: search::max_value_feasible_with(n, c, fast_paths).map_err(to_py_err)?,
    })
}

/// All structures on K_n in lexicographic denominator order. The n <= 8 cap
/// needs force=True to override; limit truncates the list.
#[pyfunction]
#[pyo3(signature = (n, limit = None, force = false))]
fn enumerate_structures(n: u32, limit: Option<usize>, force: bool) -> PyResult<Vec<PyStructure>> {
    let stream = search::enumerate_structures_with(n, force).map_err(to_py_err)?;
    let mut out = Vec::new();
    for item in stream {
        if limit.is_some_and(|cap| out.len() >= cap) {
            break;
        }
        out.push(PyStructure {
            inner: item.map_err(to_py_err)?,
        });
    }
    Ok(out)
}

/// All solutions of 1/x_1 + ... + 1/x_n = 1 in lexicographic order.
#[pyfunction]
#[pyo3(signature = (n, limit = None, force = false))]
fn unit_fraction_solutions(
    n: u32,
    limit: Option<usize>,
    force: bool,
) -> PyResult<Vec<PyUnitFractionSolution>> {
    let stream = search::unit_fraction_solutions(n, force).map_err(to_py_err)?;
    let mut out = Vec::new();
    for item in stream {
        if limit.is_some_and(|cap| out.len() >= cap) {
            break;
        }
        let denominators = item.map_err(to_py_err)?;
        out.push(PyUnitFractionSolution {
            inner: structure::UnitFractionSolution::new(&denominators).map_err(to_py_err)?,
        });
    }
    Ok(out)
}

/// Number of structures on K_n; jobs > 0 counts on that many threads.
#[pyfunction]
#[pyo3(signature = (n, jobs = None, force = false))]
fn count_structures(n: u32, jobs: Option<usize>, force: bool) -> PyResult<u64> {
    search::count_structures_with(n, jobs, force).map_err(to_py_err)
}

/// Classifies prime p on K_n: yes_bound, no_obstruction, yes_quadratic,
/// yes_search, or no_search.
#[pyfunction]
fn classify_prime(n: u32, p: Value) -> PyResult<&'static str> {
    Ok(match search::classify_prime(n, p).map_err(to_py_err)? {
        search::PrimeClass::YesBound => "yes_bound",
        search::PrimeClass::NoObstruction => "no_obstruction",
        search::PrimeClass::YesQuadratic => "yes_quadratic",
        search::PrimeClass::YesSearch => "yes_search",
        search::PrimeClass::NoSearch => "no_search",
    })
}

/// Classification rows for n in n_min..=n_max (3 <= n_min <= n_max <= 30).
#[pyfunction]
fn prime_table(n_min: u32, n_max: u32) -> PyResult<Vec<PyPrimeTableRow>> {
    Ok(search::prime_table(n_min, n_max)
        .map_err(to_py_err)?
        .into_iter()
        .map(|inner| PyPrimeTableRow { inner })
        .collect())
}

/// First n <= n_max where some prime is infeasible while a larger one is
/// feasible, as (n, infeasible_prime, feasible_prime); None if there is none.
#[pyfunction]
fn no_cutoff_report(n_max: u32) -> PyResult<Option<(u32, Value, Value)>> {
    search::no_cutoff_report(n_max).map_err(to_py_err)
}

#[pymodule]
fn arithkn(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyStructure>()?;
    m.add_class::<PyUnitFractionSolution>()?;
    m.add_class::<PyPowerDecomposition>()?;
    m.add_class::<PyBoundReport>()?;
    m.add_class::<PyFeasibilityResult>()?;
    m.add_class::<PyPrimeTableRow>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(construct_flat, m)?)?;
    m.add_function(wrap_pyfunction!(construct_geometric, m)?)?;
    m.add_function(wrap_pyfunction!(construct_geometric_prime, m)?)?;
    m.add_function(wrap_pyfunction!(construct_quadratic, m)?)?;
    m.add_function(wrap_pyfunction!(construct_any, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_powers, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_powers_odd, m)?)?;
    m.add_function(wrap_pyfunction!(bound_report, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_k_range, m)?)?;
    m.add_function(wrap_pyfunction!(smallest_prime_factor, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(obstructed_general, m)?)?;
    m.add_function(wrap_pyfunction!(obstructed_prime, m)?)?;
    m.add_function(wrap_pyfunction!(max_value_feasible, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_structures, m)?)?;
    m.add_function(wrap_pyfunction!(unit_fraction_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(count_structures, m)?)?;
    m.add_function(wrap_pyfunction!(classify_prime, m)?)?;
    m.add_function(wrap_pyfunction!(prime_table, m)?)?;
    m.add_function(wrap_pyfunction!(no_cutoff_report, m)?)?;
    Ok(())
}
