//! Python bindings for the classification library.
//!
//! Big integers cross the boundary as native Python ints (built from
//! decimal strings, so no precision is lost); exact rationals arrive
//! as `fractions.Fraction`. Report dictionaries mirror the JSON report
//! schema, where big integers are decimal strings by design.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use rug::Integer;

use wphyper::families::{generate as family_generate, ExpectedBound, ProblemId};
use wphyper::geometry::{classify_hypersurface, Hypersurface};
use wphyper::report::JsonReport;
use wphyper::search::{enumerate_cy_surfaces, RecordKind, SearchConfig};
use wphyper::singularities::{classify as classify_sing, normalize, DEFAULT_REID_TAI_BUDGET};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Arbitrary-precision `Integer` -> Python `int`.
fn big_int<'py>(py: Python<'py>, n: &Integer) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((n.to_string(),))
}

fn fraction<'py>(py: Python<'py>, num: &Integer, den: &Integer) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((format!("{num}/{den}"),))
}

/// `serde_json::Value` -> Python object, recursively.
fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        serde_json::Value::Null => py.None().into_bound(py),
        serde_json::Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap().into_pyobject(py)?.into_any()
            }
        }
        serde_json::Value::String(s) => s.into_pyobject(py)?.into_any(),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

/// Sylvester's sequence member `s_m`.
#[pyfunction]
fn sylvester(py: Python<'_>, m: u32) -> PyResult<Bound<'_, PyAny>> {
    big_int(py, &wphyper::exactmath::sylvester(m))
}

/// Classifies a general hypersurface and returns the report dict
/// (big integers as decimal strings, per the JSON schema).
#[pyfunction]
#[pyo3(signature = (weights, degree, budget = DEFAULT_REID_TAI_BUDGET))]
fn analyze(py: Python<'_>, weights: Vec<u64>, degree: u64, budget: u64) -> PyResult<Bound<'_, PyAny>> {
    let h = Hypersurface::from_u64(&weights, degree).map_err(value_err)?;
    let report = classify_hypersurface(&h, budget).map_err(value_err)?;
    let json = serde_json::to_value(JsonReport::from(&report)).map_err(value_err)?;
    json_to_py(py, &json)
}

/// Generates a family member: dict with problem, n, branch, degree
/// and weights as Python ints, the expected class, and the expected
/// bound (volume as a Fraction, or M as an int) when available.
#[pyfunction]
fn generate<'py>(py: Python<'py>, problem: &str, n: u32) -> PyResult<Bound<'py, PyAny>> {
    let p: ProblemId = problem.parse().map_err(value_err)?;
    let m = family_generate(p, n).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("problem", p.to_string())?;
    dict.set_item("n", n)?;
    dict.set_item("branch", m.branch.as_str())?;
    dict.set_item("degree", big_int(py, &m.hypersurface.degree)?)?;
    let weights = PyList::empty(py);
    for w in m.hypersurface.space.weights() {
        weights.append(big_int(py, w)?)?;
    }
    dict.set_item("weights", weights)?;
    dict.set_item("expected_class", m.expected_class.as_str())?;
    match &m.expected_bound {
        Some(ExpectedBound::Volume(v)) => {
            dict.set_item("expected_volume", fraction(py, v.numer(), v.denom())?)?;
        }
        Some(ExpectedBound::FirstNonvanishing(b)) => {
            dict.set_item("expected_first_nonvanishing", big_int(py, b)?)?;
        }
        None => {}
    }
    Ok(dict.into_any())
}

/// Reid-Tai classification of a cyclic quotient `1/r(weights...)`.
/// Returns `(class, certificate)` strings.
#[pyfunction]
#[pyo3(signature = (r, weights, budget = DEFAULT_REID_TAI_BUDGET))]
fn classify_quotient(r: u64, weights: Vec<i64>, budget: u64) -> PyResult<(String, Option<String>)> {
    let raw: Vec<Integer> = weights.into_iter().map(Integer::from).collect();
    let sing = normalize(Integer::from(r), &raw);
    let verdict = classify_sing(&sing, None, budget).map_err(value_err)?;
    Ok((
        verdict.class.as_str().to_string(),
        verdict
            .certificate
            .as_ref()
            .map(wphyper::report::describe_certificate),
    ))
}

/// Runs the published-value verification table; returns
/// `(name, passed, detail)` rows.
#[pyfunction]
#[pyo3(signature = (max_dim = 10, budget = DEFAULT_REID_TAI_BUDGET))]
fn verify_paper(max_dim: u32, budget: u64) -> Vec<(String, bool, String)> {
    wphyper::harness::verify_paper(max_dim, budget)
        .rows
        .into_iter()
        .map(|r| (r.name, r.passed, r.detail))
        .collect()
}

/// Record search over Calabi-Yau surface candidates; `record` is
/// "minvol" or "maxbottom".
#[pyfunction]
#[pyo3(signature = (record, max_weight, workers = 1))]
fn search<'py>(
    py: Python<'py>,
    record: &str,
    max_weight: u64,
    workers: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let kind = match record {
        "minvol" => RecordKind::MinVolume,
        "maxbottom" => RecordKind::MaxBottomWeight,
        other => return Err(value_err(format!("record must be minvol or maxbottom, got {other:?}"))),
    };
    let result = enumerate_cy_surfaces(&SearchConfig {
        max_weight,
        kind,
        workers,
    })
    .map_err(value_err)?;
    let json = serde_json::to_value(wphyper::report::JsonRecordSet::from(&result))
        .map_err(value_err)?;
    json_to_py(py, &json)
}

#[pymodule]
fn wphyper_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(sylvester, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(classify_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paper, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    Ok(())
}
