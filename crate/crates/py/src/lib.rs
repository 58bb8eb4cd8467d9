//! Python bindings: quivers, posets and the named suites.
//!
//! Elements and functionals cross the boundary as strings in the CLI
//! expression syntax; reports come back as plain dicts.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use pathco::algebra::{bialgebra_check, multiply_in};
use pathco::coalgebra::{comultiply, counit};
use pathco::dual::convolve;
use pathco::finite_dual::theta_iso_check;
use pathco::incidence::{check_phi, incidence_comultiply, posets_up_to_iso, theta_incidence_iso_check};
use pathco::linalg::Field;
use pathco::parse::{
    parse_element, parse_functional, parse_incidence_element, parse_poset, parse_quiver, poset_to_text, quiver_to_text,
};
use pathco::quiver::{is_acyclic, FamilyKind, QuiverFamily};

fn err(e: pathco::Error) -> PyErr {
    match e {
        pathco::Error::Unsupported(m) if m.starts_with("unknown suite") => PyKeyError::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn field(name: &str) -> PyResult<Field> {
    name.parse().map_err(err)
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(x).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite quiver.
#[pyclass(name = "Quiver", module = "pathco", frozen)]
struct PyQuiver {
    inner: pathco::Quiver,
}

#[pymethods]
impl PyQuiver {
    /// Parses the `quiver` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyQuiver {
            inner: parse_quiver(text).map_err(err)?,
        })
    }

    /// A built-in family such as `loop`, `cycle:3` or `line1`, truncated at `length`.
    #[staticmethod]
    #[pyo3(signature = (kind, length = 6))]
    fn family(kind: &str, length: usize) -> PyResult<Self> {
        let kind: FamilyKind = kind.parse().map_err(err)?;
        Ok(PyQuiver {
            inner: QuiverFamily::new(kind).truncate(length),
        })
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    #[getter]
    fn num_arrows(&self) -> usize {
        self.inner.num_arrows()
    }

    fn is_acyclic(&self) -> bool {
        is_acyclic(&self.inner)
    }

    fn to_text(&self) -> String {
        quiver_to_text(&self.inner)
    }

    #[pyo3(signature = (max_len = 6))]
    fn paths(&self, max_len: usize) -> Vec<String> {
        let set = self.inner.enumerate_paths(max_len);
        set.paths.iter().map(|p| self.inner.path_name(p)).collect()
    }

    /// `Δ` as `(coefficient, left, right)` triples.
    #[pyo3(signature = (element, field_name = "q"))]
    fn delta(&self, element: &str, field_name: &str) -> PyResult<Vec<(String, String, String)>> {
        let c = parse_element(element, &self.inner, field(field_name)?).map_err(err)?;
        Ok(comultiply(&c)
            .iter()
            .map(|((a, b), x)| (x.to_string(), self.inner.path_name(a), self.inner.path_name(b)))
            .collect())
    }

    #[pyo3(signature = (element, field_name = "q"))]
    fn counit(&self, element: &str, field_name: &str) -> PyResult<String> {
        let c = parse_element(element, &self.inner, field(field_name)?).map_err(err)?;
        Ok(counit(&c).to_string())
    }

    #[pyo3(signature = (left, right, field_name = "q"))]
    fn mul(&self, left: &str, right: &str, field_name: &str) -> PyResult<String> {
        let k = field(field_name)?;
        let a = parse_element(left, &self.inner, k).map_err(err)?;
        let b = parse_element(right, &self.inner, k).map_err(err)?;
        let ab = multiply_in(&self.inner, &a, &b).map_err(err)?;
        Ok(self.inner.format_element(&ab))
    }

    /// Nonzero values of `f·g` on paths of length at most `max_len`.
    #[pyo3(signature = (f, g, max_len = 6, field_name = "q"))]
    fn convolve(&self, f: &str, g: &str, max_len: usize, field_name: &str) -> PyResult<Vec<(String, String)>> {
        let k = field(field_name)?;
        let f = parse_functional(f, &self.inner, k).map_err(err)?;
        let g = parse_functional(g, &self.inner, k).map_err(err)?;
        let fg = convolve(&f, &g, &self.inner, max_len);
        Ok(self
            .inner
            .enumerate_paths(max_len)
            .paths
            .iter()
            .filter_map(|p| {
                let v = fg.value(p);
                (!v.is_zero()).then(|| (self.inner.path_name(p), v.to_string()))
            })
            .collect())
    }

    #[pyo3(signature = (max_len = 6, codim_bound = 10))]
    fn theta_iso<'py>(&self, py: Python<'py>, max_len: usize, codim_bound: usize) -> PyResult<Bound<'py, PyAny>> {
        let r = theta_iso_check(&self.inner, max_len, codim_bound).map_err(err)?;
        to_dict(py, &r)
    }

    #[pyo3(signature = (max_len = 4))]
    fn bialgebra<'py>(&self, py: Python<'py>, max_len: usize) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &bialgebra_check(&self.inner, max_len))
    }

    fn __repr__(&self) -> String {
        format!("Quiver({} vertices, {} arrows)", self.inner.num_vertices(), self.inner.num_arrows())
    }
}

/// A finite poset.
#[pyclass(name = "Poset", module = "pathco", frozen)]
struct PyPoset {
    inner: pathco::incidence::Poset,
}

#[pymethods]
impl PyPoset {
    /// Parses the `poset` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyPoset {
            inner: parse_poset(text).map_err(err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn to_text(&self) -> String {
        poset_to_text(&self.inner)
    }

    fn intervals(&self) -> Vec<(String, String)> {
        self.inner
            .intervals()
            .into_iter()
            .map(|(x, y)| (self.inner.label(x).to_string(), self.inner.label(y).to_string()))
            .collect()
    }

    /// `Δ(e_{x,y})` as `(coefficient, (x, z), (z, y))` triples.
    #[pyo3(signature = (element, field_name = "q"))]
    #[allow(clippy::type_complexity)]
    fn delta(&self, element: &str, field_name: &str) -> PyResult<Vec<(String, (String, String), (String, String))>> {
        let c = parse_incidence_element(element, &self.inner, field(field_name)?).map_err(err)?;
        let name = |(a, b): (usize, usize)| (self.inner.label(a).to_string(), self.inner.label(b).to_string());
        Ok(incidence_comultiply(&self.inner, &c)
            .iter()
            .map(|(&(l, r), x)| (x.to_string(), name(l), name(r)))
            .collect())
    }

    fn phi<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &check_phi(&self.inner))
    }

    fn theta_iso<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &theta_incidence_iso_check(&self.inner).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Poset({} elements)", self.inner.len())
    }
}

/// Runs a named suite and returns its report.
#[pyfunction]
#[pyo3(signature = (name, seed = 0))]
fn run_suite<'py>(py: Python<'py>, name: &str, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &pathco::suites::run_suite(name, seed).map_err(err)?)
}

/// Number of posets on `n` elements up to isomorphism.
#[pyfunction]
fn count_posets(n: usize) -> usize {
    posets_up_to_iso(n).len()
}

#[pymodule]
#[pyo3(name = "pathco")]
fn pathco_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuiver>()?;
    m.add_class::<PyPoset>()?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(count_posets, m)?)?;
    m.add("SUITES", pathco::suites::SUITES.to_vec())?;
    Ok(())
}
