//! Python bindings for `finlocale`.
//!
//! Structures are built from the same text formats the CLI reads.
//! Certificates and reports come back as plain dicts and lists.
//!
//! ```python
//! import finlocale_py as fl
//! m2 = fl.Lattice.parse(open("m2.lat").read())
//! fl.patch(fl.Lattice.chain(3)).size()   # 4
//! ```

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use finlocale::frame::{frame_homs, is_regular, is_spectral, is_stone, is_zero_dimensional, points, Frame};
use finlocale::io::{emit_dot, parse_domain, parse_lattice};
use finlocale::lattice::{self, validate_lattice};
use finlocale::nuclei::{enumerate_nuclei, nucleus_join as join_nuclei, validate_nucleus, Nucleus};
use finlocale::{patch as fl_patch, scott, spectrum as fl_spectrum, suite, DEFAULT_CAP};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any().unbind(),
        Value::Number(n) => match n.as_u64() {
            Some(u) => u.into_pyobject(py)?.into_any().unbind(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(xs) => {
            let list = PyList::empty(py);
            for x in xs {
                list.append(to_py(py, x)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(m) => {
            let dict = PyDict::new(py);
            for (k, x) in m {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

fn ser<T: serde::Serialize>(py: Python<'_>, t: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(t).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// A finite distributive lattice, which is also a finite frame.
#[pyclass(name = "Lattice", frozen)]
struct PyLattice {
    inner: lattice::Lattice,
}

#[pymethods]
impl PyLattice {
    /// Parse the `elements:` / `le:` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_lattice(text).map(|inner| PyLattice { inner }).map_err(value_err)
    }

    #[staticmethod]
    fn chain(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("a chain needs at least one element"));
        }
        Ok(PyLattice { inner: lattice::Lattice::chain(n) })
    }

    #[staticmethod]
    fn boolean(k: usize) -> PyResult<Self> {
        if k > 6 {
            return Err(PyValueError::new_err("at most 6 atoms"));
        }
        Ok(PyLattice { inner: lattice::Lattice::boolean(k) })
    }

    fn size(&self) -> usize {
        self.inner.len()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.poset().labels().to_vec()
    }

    fn top(&self) -> usize {
        self.inner.top()
    }

    fn bot(&self) -> usize {
        self.inner.bot()
    }

    fn leq(&self, x: usize, y: usize) -> PyResult<bool> {
        self.check(&[x, y])?;
        Ok(self.inner.leq(x, y))
    }

    fn meet(&self, x: usize, y: usize) -> PyResult<usize> {
        self.check(&[x, y])?;
        Ok(self.inner.meet(x, y))
    }

    fn join(&self, x: usize, y: usize) -> PyResult<usize> {
        self.check(&[x, y])?;
        Ok(self.inner.join(x, y))
    }

    /// Heyting implication `u ⇒ v`.
    fn heyting(&self, u: usize, v: usize) -> PyResult<usize> {
        self.check(&[u, v])?;
        Ok(self.frame().heyting(u, v))
    }

    fn way_below(&self, u: usize, v: usize) -> PyResult<bool> {
        self.check(&[u, v])?;
        self.frame().way_below(u, v, DEFAULT_CAP).map_err(value_err)
    }

    /// Axiom violations; empty for a valid lattice.
    fn validate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        ser(py, &validate_lattice(&self.inner))
    }

    /// Completely prime filters, as sorted element lists.
    fn points(&self) -> PyResult<Vec<Vec<usize>>> {
        let pts = points(&self.frame(), DEFAULT_CAP).map_err(value_err)?;
        Ok(pts.iter().map(|p| p.filter.to_vec()).collect())
    }

    /// Spectral, zero-dimensional, regular and Stone reports with witnesses.
    fn classes(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let f = self.frame();
        let reports = vec![
            is_spectral(&f, DEFAULT_CAP).map_err(value_err)?,
            is_zero_dimensional(&f),
            is_regular(&f),
            is_stone(&f, DEFAULT_CAP).map_err(value_err)?,
        ];
        ser(py, &reports)
    }

    fn dot(&self) -> String {
        emit_dot(self.inner.poset())
    }

    fn isomorphic(&self, other: &PyLattice) -> PyResult<bool> {
        lattice::isomorphic(&self.inner, &other.inner, DEFAULT_CAP).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Lattice({})", self.inner.poset().labels().join(" "))
    }
}

impl PyLattice {
    fn frame(&self) -> Frame {
        Frame::new(self.inner.clone())
    }

    fn check(&self, xs: &[usize]) -> PyResult<()> {
        match xs.iter().find(|&&x| x >= self.inner.len()) {
            Some(x) => Err(PyValueError::new_err(format!("no element {x}"))),
            None => Ok(()),
        }
    }
}

/// A finite Scott domain: a bounded-complete poset with bottom.
#[pyclass(name = "Domain", frozen)]
struct PyDomain {
    inner: scott::ScottDomain,
}

#[pymethods]
impl PyDomain {
    /// Parse the poset format with a `bot:` line.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_domain(text).map(|inner| PyDomain { inner }).map_err(value_err)
    }

    #[staticmethod]
    fn flat(k: usize) -> Self {
        PyDomain { inner: scott::ScottDomain::flat(k) }
    }

    fn size(&self) -> usize {
        self.inner.len()
    }

    /// The frame of Scott opens.
    fn scott_frame(&self) -> PyResult<PyLattice> {
        let loc = scott::scott_frame(&self.inner, DEFAULT_CAP).map_err(value_err)?;
        Ok(PyLattice { inner: loc.frame.lattice().clone() })
    }

    fn spectral_certificate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        ser(py, &scott::is_spectral_scott(&self.inner, DEFAULT_CAP).map_err(value_err)?)
    }

    fn sharp(&self) -> PyResult<Vec<usize>> {
        Ok(scott::sharp_elements(&self.inner, DEFAULT_CAP).map_err(value_err)?.to_vec())
    }

    /// The three point bijections, or a ValueError naming the failure.
    fn points_certificate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        ser(py, &scott::points_equivalences(&self.inner, DEFAULT_CAP).map_err(value_err)?)
    }
}

/// The frame of nuclei, labelled by closed/open names where they apply.
#[pyclass(name = "Patch", frozen)]
struct PyPatch {
    inner: fl_patch::PatchFrame,
}

#[pymethods]
impl PyPatch {
    fn size(&self) -> usize {
        self.inner.frame.len()
    }

    fn frame(&self) -> PyLattice {
        PyLattice { inner: self.inner.frame.lattice().clone() }
    }

    fn labels(&self) -> Vec<String> {
        self.inner.frame.poset().labels().to_vec()
    }

    fn nuclei(&self) -> Vec<Vec<usize>> {
        self.inner.nuclei.iter().map(|j| j.table().to_vec()).collect()
    }

    /// Labels of the closed ∧ open base members.
    fn base_labels(&self) -> PyResult<Vec<String>> {
        let base = fl_patch::patch_base(&self.inner, DEFAULT_CAP).map_err(value_err)?;
        Ok(base.family.image().iter().map(|i| self.inner.frame.label(i).to_string()).collect())
    }
}

#[pyfunction]
fn spectrum(l: &PyLattice) -> PyResult<PyLattice> {
    let s = fl_spectrum::spectrum(&l.inner, DEFAULT_CAP).map_err(value_err)?;
    Ok(PyLattice { inner: s.frame.lattice().clone() })
}

/// Both duality round-trips for `l`; raises on failure.
#[pyfunction]
fn duality_check(py: Python<'_>, l: &PyLattice) -> PyResult<Py<PyAny>> {
    let object = fl_spectrum::duality_roundtrip_object(&l.inner, DEFAULT_CAP).map_err(value_err)?;
    let frame = fl_spectrum::duality_roundtrip_frame(&l.frame(), DEFAULT_CAP).map_err(value_err)?;
    ser(py, &serde_json::json!({ "object": object, "frame": frame }))
}

#[pyfunction]
fn nuclei(l: &PyLattice) -> PyResult<Vec<Vec<usize>>> {
    let ns = enumerate_nuclei(&l.frame(), DEFAULT_CAP).map_err(value_err)?;
    Ok(ns.iter().map(|j| j.table().to_vec()).collect())
}

/// Least nucleus above every table in `family`.
#[pyfunction]
fn nucleus_join(l: &PyLattice, family: Vec<Vec<usize>>) -> PyResult<Vec<usize>> {
    let f = l.frame();
    let family: Vec<Nucleus> = family
        .into_iter()
        .map(|t| validate_nucleus(&f, t).map_err(value_err))
        .collect::<PyResult<_>>()?;
    Ok(join_nuclei(&f, &family).table().to_vec())
}

#[pyfunction]
fn frame_hom_count(a: &PyLattice, b: &PyLattice) -> PyResult<usize> {
    Ok(frame_homs(&a.frame(), &b.frame(), DEFAULT_CAP).map_err(value_err)?.len())
}

#[pyfunction]
fn patch(l: &PyLattice) -> PyResult<PyPatch> {
    let inner = fl_patch::patch(&l.frame(), DEFAULT_CAP).map_err(value_err)?;
    Ok(PyPatch { inner })
}

#[pyfunction]
fn verify_patch_up(py: Python<'_>, a: &PyLattice, x: &PyLattice) -> PyResult<Py<PyAny>> {
    ser(py, &fl_patch::verify_patch_up(&a.frame(), &x.frame(), DEFAULT_CAP).map_err(value_err)?)
}

/// Run an acceptance group; returns one dict per criterion.
#[pyfunction]
#[pyo3(signature = (name="all", cap=DEFAULT_CAP))]
fn run_suite(py: Python<'_>, name: &str, cap: u64) -> PyResult<Py<PyAny>> {
    let results = py.detach(|| suite::run(name, cap));
    match results {
        Some(r) => ser(py, &r),
        None => Err(PyValueError::new_err(format!("unknown suite `{name}`"))),
    }
}

#[pymodule]
fn finlocale_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLattice>()?;
    m.add_class::<PyDomain>()?;
    m.add_class::<PyPatch>()?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(duality_check, m)?)?;
    m.add_function(wrap_pyfunction!(nuclei, m)?)?;
    m.add_function(wrap_pyfunction!(nucleus_join, m)?)?;
    m.add_function(wrap_pyfunction!(frame_hom_count, m)?)?;
    m.add_function(wrap_pyfunction!(patch, m)?)?;
    m.add_function(wrap_pyfunction!(verify_patch_up, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add("DEFAULT_CAP", DEFAULT_CAP)?;
    Ok(())
}
