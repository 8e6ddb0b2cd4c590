//! Python bindings. Structured results (bounds reports, obstruction reports) come
//! back as plain dicts with the same field names as the CLI's `--json` output.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use pretzel_core::bounds::{bounds_report, certified_upper, BoundsOptions};
use pretzel_core::diagram::OrientedDiagram;
use pretzel_core::invariants::{pretzel_signature, symmetrized_seifert};
use pretzel_core::jones::{jones_of, jones_of_statesum, omega_of, DEFAULT_ORACLE_CAP};
use pretzel_core::lattice::{donaldson_scan, DEFAULT_BUDGET};
use pretzel_core::{Error, PretzelParams};

create_exception!(pretzel_unknot, InconclusiveError, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::SearchBudgetExceeded { .. } => InconclusiveError::new_err(e.to_string()),
        Error::InvalidParams(_)
        | Error::EvenParameter { .. }
        | Error::BadFamily(_)
        | Error::NotAKnot(_)
        | Error::BadBand { .. }
        | Error::TooManyCrossings { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Serializes through JSON so Python sees ordinary dicts and lists.
fn to_object<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A pretzel diagram `P(a_1, ..., a_n)`.
#[pyclass(name = "Pretzel", frozen)]
#[derive(Clone)]
struct PyPretzel {
    inner: PretzelParams,
}

#[pymethods]
impl PyPretzel {
    /// Accepts a list of nonzero integers or notation such as "P(3,1^3,5)".
    #[new]
    fn new(notation: &Bound<'_, PyAny>) -> PyResult<Self> {
        let inner = if let Ok(text) = notation.extract::<String>() {
            pretzel_cli::parse_pretzel(&text).map_err(|e| PyValueError::new_err(format!("parse error {e}")))?
        } else {
            PretzelParams::new(notation.extract::<Vec<i64>>()?).map_err(to_py)?
        };
        Ok(PyPretzel { inner })
    }

    #[getter]
    fn params(&self) -> Vec<i64> {
        self.inner.as_slice().to_vec()
    }

    #[getter]
    fn is_knot(&self) -> bool {
        self.inner.is_knot()
    }

    fn canonical(&self) -> Self {
        PyPretzel {
            inner: self.inner.canonical_key(),
        }
    }

    fn mirror(&self) -> Self {
        PyPretzel {
            inner: self.inner.mirror(),
        }
    }

    fn crossing_count(&self) -> usize {
        self.inner.crossing_count()
    }

    fn signature(&self) -> PyResult<i64> {
        Ok(pretzel_signature(&self.inner).map_err(to_py)?.sigma)
    }

    fn determinant(&self) -> PyResult<u64> {
        pretzel_core::bounds::knot_determinant(&self.inner).map_err(to_py)
    }

    fn seifert_matrix(&self) -> PyResult<Vec<Vec<i64>>> {
        Ok(symmetrized_seifert(&self.inner).map_err(to_py)?.matrix)
    }

    /// Jones polynomial as `(components, [(exponent of q^{1/2}, coefficient), ...])`.
    #[pyo3(signature = (check = false))]
    fn jones(&self, check: bool) -> PyResult<(usize, Vec<(i64, i64)>)> {
        let od = OrientedDiagram::standard(&self.inner);
        let v = jones_of(&od).map_err(to_py)?;
        if check && jones_of_statesum(&od, DEFAULT_ORACLE_CAP).map_err(to_py)? != v {
            return Err(PyRuntimeError::new_err("state sum disagrees"));
        }
        Ok((v.components, v.terms))
    }

    fn jones_text(&self) -> PyResult<String> {
        Ok(jones_of(&OrientedDiagram::standard(&self.inner)).map_err(to_py)?.to_string())
    }

    /// `(r, s, d)` with `V(ω) = (-1)^s i^(r-1) (i√3)^d`.
    fn omega(&self) -> PyResult<(usize, u8, u32)> {
        let (_, c) = omega_of(&OrientedDiagram::standard(&self.inner)).map_err(to_py)?;
        Ok((c.r, c.s, c.d))
    }

    /// Full bounds report as a dict.
    #[pyo3(signature = (verify = true, deltas = vec![2, 4, 6], budget = DEFAULT_BUDGET))]
    fn bounds(&self, py: Python<'_>, verify: bool, deltas: Vec<usize>, budget: u64) -> PyResult<PyObject> {
        let opts = BoundsOptions { deltas, budget, verify };
        let r = py.allow_threads(|| bounds_report(&self.inner, &opts)).map_err(to_py)?;
        to_object(py, &r)
    }

    /// A certified unknotting sequence as a dict, or None.
    fn unknotting_sequence(&self, py: Python<'_>) -> PyResult<PyObject> {
        let s = certified_upper(&self.inner).map_err(to_py)?;
        to_object(py, &s)
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// Lattice obstruction scan for `P(a, 1^r, b)` as a dict.
#[pyfunction]
#[pyo3(signature = (a, r, b, deltas = vec![2, 4, 6], budget = DEFAULT_BUDGET))]
fn obstruct(py: Python<'_>, a: i64, r: i64, b: i64, deltas: Vec<usize>, budget: u64) -> PyResult<PyObject> {
    let rep = py
        .allow_threads(|| donaldson_scan(a, r, b, &deltas, budget))
        .map_err(to_py)?;
    to_object(py, &rep)
}

/// Parses pretzel notation into its parameter list.
#[pyfunction]
fn parse(text: &str) -> PyResult<Vec<i64>> {
    pretzel_cli::parse_pretzel(text)
        .map(|p| p.as_slice().to_vec())
        .map_err(|e| PyValueError::new_err(format!("parse error {e}")))
}

#[pymodule]
fn pretzel_unknot(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPretzel>()?;
    m.add_function(wrap_pyfunction!(obstruct, m)?)?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add("InconclusiveError", m.py().get_type::<InconclusiveError>())?;
    Ok(())
}
