//! Python bindings. Reports come back as plain dicts with the same field
//! order as the JSON the command-line tool writes.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use trinion_core::abelian;
use trinion_core::error::Error;
use trinion_core::fiber::classify;
use trinion_core::graph::{enumerate_trivalent_graphs, gamma0, TrivalentGraph};
use trinion_core::polytope::{lattice_asymptotics, polytope_of_graph, volume_mc};
use trinion_core::verlinde;
use trinion_core::weights::{self, WeightVector, DEFAULT_MAX_COUNT};

create_exception!(trinion, BudgetExceeded, PyException);

fn err(e: impl Into<Error>) -> PyErr {
    match e.into() {
        e @ (Error::Budget { .. } | Error::ContractionWidth { .. }) => {
            BudgetExceeded::new_err(e.to_string())
        }
        e => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A connected trivalent multigraph.
#[pyclass(name = "Graph", module = "trinion", frozen)]
pub struct PyGraph {
    inner: TrivalentGraph,
}

impl PyGraph {
    fn weight(&self, labels: Vec<u32>, level: u32) -> PyResult<WeightVector> {
        if labels.len() != self.inner.edge_count() {
            return Err(err(Error::LabelCount {
                expected: self.inner.edge_count(),
                found: labels.len(),
            }));
        }
        WeightVector::new(level, labels).map_err(err)
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(genus: u32, vertex_count: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = TrivalentGraph::new(genus, vertex_count, edges).map_err(err)?;
        Ok(PyGraph { inner })
    }

    #[staticmethod]
    fn theta() -> Self {
        PyGraph {
            inner: TrivalentGraph::theta(),
        }
    }

    #[staticmethod]
    fn dumbbell() -> Self {
        PyGraph {
            inner: TrivalentGraph::dumbbell(),
        }
    }

    #[staticmethod]
    fn gamma0(genus: u32) -> PyResult<Self> {
        Ok(PyGraph {
            inner: gamma0(genus).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: TrivalentGraph::from_text(text).map_err(err)?,
        })
    }

    /// One representative per isomorphism class, in certificate order.
    #[staticmethod]
    fn enumerate(genus: u32) -> PyResult<Vec<Self>> {
        Ok(enumerate_trivalent_graphs(genus)
            .map_err(err)?
            .into_iter()
            .map(|inner| PyGraph { inner })
            .collect())
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.inner.genus()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    #[getter]
    fn names(&self) -> std::collections::BTreeMap<usize, String> {
        self.inner.names().clone()
    }

    fn certificate(&self) -> String {
        self.inner.certificate().to_hex()
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn bridges(&self) -> Vec<usize> {
        self.inner.bridges().into_iter().collect()
    }

    fn is_admissible(&self, labels: Vec<u32>, level: u32) -> PyResult<bool> {
        let w = self.weight(labels, level)?;
        Ok(weights::is_admissible(&self.inner, &w)
            .map_err(err)?
            .is_ok())
    }

    #[pyo3(signature = (level, max_count = DEFAULT_MAX_COUNT))]
    fn weights(&self, level: u32, max_count: u128) -> PyResult<Vec<Vec<u32>>> {
        Ok(weights::enumerate_weights(&self.inner, level, max_count)
            .map_err(err)?
            .into_iter()
            .map(|w| w.labels().to_vec())
            .collect())
    }

    fn count(&self, level: u32) -> PyResult<u128> {
        verlinde::fusion_count_contraction(&self.inner, level).map_err(err)
    }

    fn count_report<'py>(&self, py: Python<'py>, level: u32) -> PyResult<Bound<'py, PyAny>> {
        to_py(
            py,
            &verlinde::count_report(&self.inner, level).map_err(err)?,
        )
    }

    #[pyo3(signature = (samples = 1_000_000, seed = 0))]
    fn volume<'py>(&self, py: Python<'py>, samples: u64, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let p = polytope_of_graph(&self.inner);
        let est = py.detach(|| volume_mc(&p, samples, seed)).map_err(err)?;
        to_py(py, &est)
    }

    fn asymptotics<'py>(&self, py: Python<'py>, levels: Vec<u32>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &lattice_asymptotics(&self.inner, &levels).map_err(err)?)
    }

    fn classify<'py>(
        &self,
        py: Python<'py>,
        labels: Vec<u32>,
        level: u32,
    ) -> PyResult<Bound<'py, PyAny>> {
        let w = self.weight(labels, level)?;
        if let Err(f) = weights::is_admissible(&self.inner, &w).map_err(err)? {
            return Err(PyValueError::new_err(format!(
                "weight is not admissible: {f:?}"
            )));
        }
        to_py(py, &classify(&self.inner, &w))
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(genus={}, edges={:?})",
            self.inner.genus(),
            self.inner.edges()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

/// `(value, radius)` of the trigonometric Verlinde sum.
#[pyfunction]
fn verlinde_rank(genus: u32, level: u32) -> PyResult<(u128, f64)> {
    let r = verlinde::verlinde_rank(genus, level).map_err(err)?;
    Ok((r.value, r.radius))
}

#[pyfunction]
fn verify<'py>(py: Python<'py>, genus: u32, level: u32) -> PyResult<Bound<'py, PyAny>> {
    let r = py
        .detach(|| verlinde::verify_rank_identity(genus, level))
        .map_err(err)?;
    to_py(py, &r)
}

#[pyfunction]
fn theta_rank(genus: u32, level: u32) -> u128 {
    abelian::theta_rank(genus, level)
}

#[pyfunction]
fn kummer_even_rank(genus: u32, level: u32) -> u128 {
    abelian::kummer_even_rank(genus, level)
}

#[pyfunction]
fn kummer_orbits(genus: u32, level: u32) -> PyResult<u128> {
    abelian::kummer_orbit_bruteforce(genus, level).map_err(err)
}

#[pyfunction]
fn decomposition_check(genus: u32, level: u32) -> PyResult<bool> {
    abelian::decomposition_check(genus, level).map_err(err)
}

/// Runs the command-line front-end in process: `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("trinion".to_owned()).chain(args).collect();
    let out = py.detach(|| trinion_core::cli::run(argv));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn trinion(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(verlinde_rank, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(theta_rank, m)?)?;
    m.add_function(wrap_pyfunction!(kummer_even_rank, m)?)?;
    m.add_function(wrap_pyfunction!(kummer_orbits, m)?)?;
    m.add_function(wrap_pyfunction!(decomposition_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
