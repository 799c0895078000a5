//! Python bindings. Structured results cross the boundary as JSON strings;
//! see python/smoke_test.py for usage.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use raolab::analyzer;
use raolab::configs::{self, Recipe};
use raolab::gf::{FieldMatrix, FieldSpec};
use raolab::ideal::{hilbert_function, GbBudget};
use raolab::poly::{parse_ideal_file, Polynomial, RingSpec};
use raolab::restriction;

fn err(e: raolab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Rank of a dense matrix over GF(p); entries row-major.
#[pyfunction]
fn matrix_rank(p: u64, rows: usize, cols: usize, entries: Vec<u64>) -> PyResult<usize> {
    let field = FieldSpec::new(p).map_err(err)?;
    let m = FieldMatrix::new(field, rows, cols, entries).map_err(err)?;
    Ok(m.rank())
}

/// Parse a polynomial and print its canonical form.
#[pyfunction]
fn canonical_form(n_vars: usize, p: u64, text: &str) -> PyResult<String> {
    let field = FieldSpec::new(p).map_err(err)?;
    let ring = RingSpec::new(n_vars, field, raolab::poly::MonomialOrder::GrevLex).map_err(err)?;
    let f = Polynomial::parse(text, ring).map_err(err)?;
    Ok(f.to_string())
}

/// Reduced Gröbner basis of the ideal described by an ideal file
/// (header `ring: n_vars=<k> p=<prime>`, one polynomial per line).
#[pyfunction]
fn groebner_basis(ideal_file: &str) -> PyResult<Vec<String>> {
    let (ring, gens) = parse_ideal_file(ideal_file).map_err(err)?;
    let ideal = raolab::ideal::Ideal::new(ring, gens).map_err(err)?;
    let gb = ideal.gb(GbBudget::default()).map_err(err)?;
    Ok(gb.iter().map(|g| g.to_string()).collect())
}

/// Hilbert data of R/I for the ideal in an ideal file, as JSON.
#[pyfunction]
fn hilbert_data(ideal_file: &str, t_max: i64) -> PyResult<String> {
    let (ring, gens) = parse_ideal_file(ideal_file).map_err(err)?;
    let ideal = raolab::ideal::Ideal::new(ring, gens).map_err(err)?;
    let data = hilbert_function(&ideal, t_max, GbBudget::default()).map_err(err)?;
    Ok(data.to_json().to_string())
}

fn build(recipe_json: &str, prime: u64) -> PyResult<restriction::Configuration> {
    let field = FieldSpec::new(prime).map_err(err)?;
    let recipe: Recipe =
        serde_json::from_str(recipe_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    recipe.build(field).map_err(err)
}

/// Per-degree dimensions of the Rao module of a recipe-built configuration,
/// as a JSON object { "t": dim }.
#[pyfunction]
fn rao_dimensions(recipe_json: &str, prime: u64) -> PyResult<String> {
    let cfg = build(recipe_json, prime)?;
    let profile = restriction::rao_profile(&cfg).map_err(err)?;
    let map: serde_json::Map<String, serde_json::Value> = profile
        .dims
        .iter()
        .map(|(t, d)| (t.to_string(), serde_json::json!(d)))
        .collect();
    Ok(serde_json::Value::Object(map).to_string())
}

/// Full Lefschetz report for multiplication by L^m, as JSON.
#[pyfunction]
#[pyo3(signature = (recipe_json, m = 1, trials = 5, prime = 32003))]
fn lefschetz_report(recipe_json: &str, m: u32, trials: usize, prime: u64) -> PyResult<String> {
    let cfg = build(recipe_json, prime)?;
    let rep = analyzer::slp_range_verdict(&cfg, m, trials).map_err(err)?;
    serde_json::to_string(&rep).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// h-vector of the degree-m hyperplane-section scheme of a configuration.
#[pyfunction]
#[pyo3(signature = (recipe_json, m = 1, prime = 32003, plane_seed = 0))]
fn section_h_vector(
    recipe_json: &str,
    m: u32,
    prime: u64,
    plane_seed: u64,
) -> PyResult<Vec<usize>> {
    let cfg = build(recipe_json, prime)?;
    let plane = analyzer::sample_plane(&cfg, plane_seed ^ 0xA0).map_err(err)?;
    let hv = analyzer::h_vector_of_section(&cfg, &plane, m).map_err(err)?;
    Ok(hv.0)
}

/// Genericity report for s flat fat points of multiplicity m in the plane.
#[pyfunction]
#[pyo3(signature = (s, m, trials = 5, seed = 17, prime = 32003))]
fn flat_fat_genericity(s: usize, m: u32, trials: usize, seed: u64, prime: u64) -> PyResult<String> {
    let field = FieldSpec::new(prime).map_err(err)?;
    let rep = analyzer::genericity_test_flatfat(s, m, trials, seed, field).map_err(err)?;
    serde_json::to_string(&rep).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Serialized configuration JSON for a recipe.
#[pyfunction]
#[pyo3(signature = (recipe_json, prime = 32003))]
fn build_configuration(recipe_json: &str, prime: u64) -> PyResult<String> {
    let cfg = build(recipe_json, prime)?;
    Ok(configs::configuration_to_json(&cfg).to_string())
}

#[pymodule]
fn raolab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(matrix_rank, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_form, m)?)?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_data, m)?)?;
    m.add_function(wrap_pyfunction!(rao_dimensions, m)?)?;
    m.add_function(wrap_pyfunction!(lefschetz_report, m)?)?;
    m.add_function(wrap_pyfunction!(section_h_vector, m)?)?;
    m.add_function(wrap_pyfunction!(flat_fat_genericity, m)?)?;
    m.add_function(wrap_pyfunction!(build_configuration, m)?)?;
    Ok(())
}
