//! Python module `pydsemion`. Each function runs one verification pipeline
//! and returns its report as a dict, the same document the command line
//! prints.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use dsemion::category::{check_category, AnyonData};
use dsemion::report::{resolve_convention, ConventionChoice, ConventionRecord, Geometry, Report};

fn py_err(e: dsemion::error::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn convention(name: &str) -> PyResult<ConventionRecord> {
    let choice = match name {
        "auto" => ConventionChoice::Auto,
        "region_components" => ConventionChoice::RegionComponents,
        "loop_count" => ConventionChoice::LoopCount,
        _ => return Err(PyValueError::new_err(format!("unknown convention {name:?}"))),
    };
    resolve_convention(choice).map_err(py_err)
}

fn to_py<T: Serialize>(py: Python<'_>, report: Report<T>) -> PyResult<Py<PyAny>> {
    let text = report.to_json().map_err(py_err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn envelope<T>(command: &str, conv: ConventionRecord, n: Option<u32>, seed: Option<u64>, passed: bool, result: T) -> PyResult<Report<T>> {
    Ok(Report {
        command: command.to_string(),
        passed,
        convention: conv,
        geometry: n.map(Geometry::standard).transpose().map_err(py_err)?,
        seed,
        result,
    })
}

#[pyfunction]
#[pyo3(signature = (n=2, convention="auto"))]
fn groundstate_verify(py: Python<'_>, n: u32, convention: &str) -> PyResult<Py<PyAny>> {
    let conv = self::convention(convention)?;
    let r = py.detach(|| dsemion::groundstate::verify_suite(n, conv.resolved)).map_err(py_err)?;
    to_py(py, envelope("groundstate verify", conv, Some(n), None, r.passed(), r)?)
}

#[pyfunction]
#[pyo3(signature = (n=3, convention="auto", clearance=1))]
fn anyons_smatrix(py: Python<'_>, n: u32, convention: &str, clearance: i64) -> PyResult<Py<PyAny>> {
    let conv = self::convention(convention)?;
    let (r, _) = py.detach(|| dsemion::anyons::s_matrix(n, conv.resolved, clearance)).map_err(py_err)?;
    to_py(py, envelope("anyons smatrix", conv, Some(n), None, r.passed(), r)?)
}

#[pyfunction]
#[pyo3(signature = (n=3))]
fn anyons_fsymbols(py: Python<'_>, n: u32) -> PyResult<Py<PyAny>> {
    let conv = convention("auto")?;
    let r = py.detach(|| dsemion::anyons::f_symbol_report(n)).map_err(py_err)?;
    to_py(py, envelope("anyons fsymbols", conv, Some(n), None, r.passed(), r)?)
}

#[pyfunction]
#[pyo3(signature = (n=3))]
fn anyons_rsymbols(py: Python<'_>, n: u32) -> PyResult<Py<PyAny>> {
    let conv = convention("auto")?;
    let r = py.detach(|| dsemion::anyons::r_symbol_report(n)).map_err(py_err)?;
    to_py(py, envelope("anyons rsymbols", conv, Some(n), None, r.passed(), r)?)
}

/// `data` is anyon data as a JSON string; the double semion reference data
/// when omitted.
#[pyfunction]
#[pyo3(signature = (data=None, seed=1))]
fn category_check(py: Python<'_>, data: Option<&str>, seed: u64) -> PyResult<Py<PyAny>> {
    let conv = convention("auto")?;
    let data = match data {
        Some(s) => serde_json::from_str::<AnyonData>(s).map_err(|e| PyValueError::new_err(e.to_string()))?,
        None => AnyonData::double_semion(),
    };
    let r = check_category(&data, 200, seed);
    to_py(py, envelope("category check", conv, None, Some(seed), r.passed(), r)?)
}

#[pyfunction]
#[pyo3(signature = (n=3))]
fn tqd_compare(py: Python<'_>, n: u32) -> PyResult<Py<PyAny>> {
    let conv = convention("auto")?;
    let r = py.detach(|| dsemion::tqd::compare(n)).map_err(py_err)?;
    to_py(py, envelope("tqd compare", conv, Some(n), None, r.passed(), r)?)
}

#[pyfunction]
#[pyo3(signature = (n=1, convention="auto", seed=1))]
fn purity_schmidt(py: Python<'_>, n: u32, convention: &str, seed: u64) -> PyResult<Py<PyAny>> {
    let conv = self::convention(convention)?;
    let r = py.detach(|| dsemion::purity::purity_suite(n, conv.resolved, seed)).map_err(py_err)?;
    to_py(py, envelope("purity schmidt", conv, Some(n), Some(seed), r.passed(), r)?)
}

#[pyfunction]
#[pyo3(signature = (n=2, seed=1))]
fn purity_parity(py: Python<'_>, n: u32, seed: u64) -> PyResult<Py<PyAny>> {
    let conv = convention("auto")?;
    let r = py.detach(|| dsemion::purity::parity_check(n, seed)).map_err(py_err)?;
    let seed = r.seed;
    to_py(py, envelope("purity parity", conv, Some(n), seed, r.tally.passed(), r)?)
}

#[pymodule]
fn pydsemion(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(groundstate_verify, m)?)?;
    m.add_function(wrap_pyfunction!(anyons_smatrix, m)?)?;
    m.add_function(wrap_pyfunction!(anyons_fsymbols, m)?)?;
    m.add_function(wrap_pyfunction!(anyons_rsymbols, m)?)?;
    m.add_function(wrap_pyfunction!(category_check, m)?)?;
    m.add_function(wrap_pyfunction!(tqd_compare, m)?)?;
    m.add_function(wrap_pyfunction!(purity_schmidt, m)?)?;
    m.add_function(wrap_pyfunction!(purity_parity, m)?)?;
    Ok(())
}
