//! Python bindings. Matrices are passed as catalog specs (`"R_fI"`,
//! `"R_a(k=1,p=2,q=3)"`) or as matrix JSON text; fields as `"Q"`, `"Fp"` or `"Fp2"`.

use ccwg_core::algebra::{self, FieldMode};
use ccwg_core::{braid, catalog, suites, tables, FieldTag, WordMatrix};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: ccwg_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field_mode(field: &str) -> PyResult<FieldMode> {
    field.parse().map_err(err)
}

fn load(spec: &str) -> PyResult<WordMatrix> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return WordMatrix::from_json(spec).map_err(err);
    }
    match catalog::resolve(spec, FieldTag::Rational) {
        Err(ccwg_core::Error::UnknownName(_)) if !spec.starts_with("R_") => {
            catalog::resolve(&format!("R_{spec}"), FieldTag::Rational).map_err(err)
        }
        other => other.map_err(err),
    }
}

/// Names of all catalog entries.
#[pyfunction]
fn catalog_names() -> Vec<String> {
    catalog::list().into_iter().map(String::from).collect()
}

/// The matrix as JSON text.
#[pyfunction]
fn matrix_json(spec: &str) -> PyResult<String> {
    Ok(load(spec)?.to_json())
}

#[pyfunction]
fn is_ybo(spec: &str) -> PyResult<bool> {
    Ok(braid::is_ybo(&load(spec)?))
}

#[pyfunction]
fn is_ccwg(spec: &str) -> PyResult<bool> {
    Ok(load(spec)?.is_ccwg())
}

/// Number of nonzero entries of the braid anomaly.
#[pyfunction]
fn anomaly_nnz(spec: &str) -> PyResult<usize> {
    Ok(braid::anomaly(&load(spec)?).map_err(err)?.nnz())
}

/// Factored minimal polynomial, e.g. `"(x - 1)^2 (x + 1)"`.
#[pyfunction]
fn minimal_polynomial(spec: &str) -> PyResult<String> {
    Ok(load(spec)?.minimal_polynomial().map_err(err)?.factored())
}

/// `(dim, dim_ss, [dim rad^1, dim rad^2, ...])` for the level-`n` tower.
#[pyfunction]
#[pyo3(signature = (spec, n, field = "Q", max_power = 1))]
fn tower_dims(spec: &str, n: usize, field: &str, max_power: usize) -> PyResult<(usize, usize, Vec<usize>)> {
    tables::tower_dims(&load(spec)?, n, field_mode(field)?, max_power).map_err(err)
}

/// `(dim, dim_rad)` of the commutant of the level-`n` tower.
#[pyfunction]
#[pyo3(signature = (spec, n, field = "Q"))]
fn commutant_dims(spec: &str, n: usize, field: &str) -> PyResult<(usize, usize)> {
    let r = load(spec)?;
    field_mode(field)?
        .run(|tag| {
            let e = algebra::commutant_tower(&r.to_field(tag)?, n)?;
            Ok((e.dim(), algebra::radical(&e)?.dim()))
        })
        .map_err(err)
}

/// `(count, summand_dims)`; either may be `None` when undetermined.
#[pyfunction]
#[pyo3(signature = (spec, n, seed = 0))]
fn summands(spec: &str, n: usize, seed: u64) -> PyResult<(Option<usize>, Option<Vec<usize>>)> {
    let rep = algebra::summand_count_tower(&load(spec)?, n, seed).map_err(err)?;
    Ok((rep.count, rep.summand_dims))
}

/// `"equivalent"`, `"inequivalent"` or `"probably_inequivalent"`.
#[pyfunction]
#[pyo3(signature = (r, s, k, field = "Q", seed = 0))]
fn k_equivalent(r: &str, s: &str, k: usize, field: &str, seed: u64) -> PyResult<String> {
    let (r, s) = (load(r)?, load(s)?);
    let rep = field_mode(field)?
        .run(|tag| algebra::k_equivalent(&r.to_field(tag)?, &s.to_field(tag)?, k, seed))
        .map_err(err)?;
    Ok(rep.verdict.to_string())
}

/// `(passed, trials)` for a parametric family.
#[pyfunction]
#[pyo3(signature = (name, trials = 20, seed = 0))]
fn verify_family(name: &str, trials: usize, seed: u64) -> PyResult<(usize, usize)> {
    let rep = catalog::verify_family(name, trials, seed).map_err(err)?;
    Ok((rep.passed, rep.trials))
}

/// The table report as JSON text.
#[pyfunction]
#[pyo3(signature = (table, n_max = None, field = None))]
fn run_table(table: &str, n_max: Option<usize>, field: Option<&str>) -> PyResult<String> {
    let id: tables::TableId = table.parse().map_err(err)?;
    let mode = field.map(field_mode).transpose()?;
    let rep = tables::run_table(id, mode, n_max, false).map_err(err)?;
    Ok(serde_json::to_string(&rep).expect("serializable"))
}

/// The suite report as JSON text.
#[pyfunction]
#[pyo3(signature = (suite, seed = 0, cases = None))]
fn run_suite(suite: &str, seed: u64, cases: Option<usize>) -> PyResult<String> {
    let id: suites::SuiteId = suite.parse().map_err(err)?;
    let rep = suites::run_suite(id, seed, cases.unwrap_or_else(|| suites::default_cases(id))).map_err(err)?;
    Ok(serde_json::to_string(&rep).expect("serializable"))
}

#[pymodule]
fn ccwg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_json, m)?)?;
    m.add_function(wrap_pyfunction!(is_ybo, m)?)?;
    m.add_function(wrap_pyfunction!(is_ccwg, m)?)?;
    m.add_function(wrap_pyfunction!(anomaly_nnz, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(tower_dims, m)?)?;
    m.add_function(wrap_pyfunction!(commutant_dims, m)?)?;
    m.add_function(wrap_pyfunction!(summands, m)?)?;
    m.add_function(wrap_pyfunction!(k_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(verify_family, m)?)?;
    m.add_function(wrap_pyfunction!(run_table, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
