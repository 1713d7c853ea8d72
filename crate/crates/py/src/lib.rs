//! Python bindings. Build with maturin or copy the cdylib to `dldd.so`.

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use dldd_core::gen::{self, GadgetKind};
use dldd_core::verify::{self, Diameter, StatsConfig};
use dldd_core::{io, DecomposeConfig, VertexSet};

fn to_py(e: dldd_core::Error) -> PyErr {
    match e {
        dldd_core::Error::Io(e) => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Weighted directed multigraph on vertices `0..n`.
#[pyclass(name = "Graph", module = "dldd", frozen)]
struct PyGraph {
    inner: dldd_core::Graph,
}

#[pymethods]
impl PyGraph {
    /// `edges` is a list of `(tail, head, weight)` with nonnegative weights.
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize, i64)>) -> PyResult<Self> {
        Ok(PyGraph { inner: dldd_core::Graph::new(n, &edges).map_err(to_py)? })
    }

    /// Parses the edge-list text format (`n m` header, then `tail head weight` lines).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: io::parse_edge_list(text).map_err(to_py)? })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: io::read_graph(path).map_err(to_py)? })
    }

    fn save(&self, path: &str) -> PyResult<()> {
        io::write_graph(&self.inner, path).map_err(to_py)
    }

    fn to_edge_list(&self) -> String {
        io::write_edge_list(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(u32, u32, u64)> {
        self.inner.edges().iter().map(|e| (e.tail, e.head, e.weight)).collect()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Output of `decompose`: deleted edge ids and the finished components.
#[pyclass(name = "LddResult", module = "dldd", frozen)]
struct PyLddResult {
    inner: dldd_core::LddResult,
}

#[pymethods]
impl PyLddResult {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyLddResult { inner: dldd_core::LddResult::from_json(text).map_err(to_py)? })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(to_py)
    }

    #[getter]
    fn delta(&self) -> u64 {
        self.inner.delta
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    #[getter]
    fn deleted(&self) -> Vec<usize> {
        self.inner.deleted.clone()
    }

    #[getter]
    fn components(&self) -> Vec<Vec<usize>> {
        self.inner.components.clone()
    }

    /// Indices into `components` of the sets finished by the close-pair case.
    #[getter]
    fn case1_components(&self) -> Vec<usize> {
        self.inner.case1_components.clone()
    }

    #[getter]
    fn max_depth(&self) -> usize {
        self.inner.max_depth
    }

    /// Per-instance records as a JSON array (empty unless requested).
    fn diagnostics_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.diagnostics).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "LddResult(delta={}, deleted={}, components={})",
            self.inner.delta,
            self.inner.deleted.len(),
            self.inner.components.len()
        )
    }
}

#[pyclass(name = "ValidationReport", module = "dldd", frozen, get_all)]
struct PyValidationReport {
    ok: bool,
    failures: Vec<String>,
    scc_count: usize,
    largest_scc: usize,
}

#[pyclass(name = "CutStats", module = "dldd", frozen)]
struct PyCutStats {
    inner: verify::CutStats,
}

#[pymethods]
impl PyCutStats {
    #[getter]
    fn l_hat(&self) -> f64 {
        self.inner.summary.l_hat
    }

    #[getter]
    fn kappa_bound(&self) -> f64 {
        self.inner.summary.kappa_bound
    }

    #[getter]
    fn trials(&self) -> usize {
        self.inner.summary.trials
    }

    /// Empirical cut probability per edge id.
    #[getter]
    fn p_hat(&self) -> Vec<f64> {
        self.inner.edges.iter().map(|e| e.p_hat).collect()
    }

    #[getter]
    fn rho(&self) -> Vec<f64> {
        self.inner.edges.iter().map(|e| e.rho).collect()
    }

    fn summary_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.summary).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_csv(&self) -> String {
        self.inner.to_csv()
    }
}

#[pyfunction]
#[pyo3(signature = (graph, delta, seed = 0, speedup = true, diagnostics = false, monitor = false))]
fn decompose(
    py: Python<'_>,
    graph: &PyGraph,
    delta: u64,
    seed: u64,
    speedup: bool,
    diagnostics: bool,
    monitor: bool,
) -> PyResult<PyLddResult> {
    let cfg = DecomposeConfig { speedup, diagnostics, monitor, ..DecomposeConfig::quiet() };
    let inner = py.detach(|| dldd_core::decompose(&graph.inner, delta, seed, &cfg)).map_err(to_py)?;
    Ok(PyLddResult { inner })
}

#[pyfunction]
fn validate(py: Python<'_>, graph: &PyGraph, result: &PyLddResult) -> PyValidationReport {
    let report = py.detach(|| verify::validate(&graph.inner, &result.inner));
    PyValidationReport {
        ok: report.ok(),
        failures: report.failures.iter().map(|f| f.to_string()).collect(),
        scc_count: report.scc_count,
        largest_scc: report.largest_scc,
    }
}

/// Strongly connected components after removing the `deleted` edge ids.
#[pyfunction]
#[pyo3(signature = (graph, deleted = Vec::new()))]
fn scc(graph: &PyGraph, deleted: Vec<usize>) -> PyResult<Vec<Vec<usize>>> {
    if let Some(&bad) = deleted.iter().find(|&&e| e >= graph.inner.m()) {
        return Err(PyValueError::new_err(format!("edge id {bad} out of range")));
    }
    Ok(verify::scc(&graph.inner, &deleted))
}

/// Largest distance in the whole graph between two of `vertices`, or None if
/// some pair is disconnected.
#[pyfunction]
fn weak_diameter(graph: &PyGraph, vertices: Vec<usize>) -> PyResult<Option<u64>> {
    let n = graph.inner.n();
    if let Some(&bad) = vertices.iter().find(|&&v| v >= n) {
        return Err(PyValueError::new_err(format!("vertex {bad} out of range")));
    }
    Ok(match verify::weak_diameter(&graph.inner, &VertexSet::from_iter(n, vertices)) {
        Diameter::Finite(d) => Some(d),
        Diameter::Infinite => None,
    })
}

#[pyfunction]
#[pyo3(signature = (graph, delta, trials = 1000, seed = 0, jobs = 0, kappa = 1.0))]
fn estimate_cut_probs(
    py: Python<'_>,
    graph: &PyGraph,
    delta: u64,
    trials: usize,
    seed: u64,
    jobs: usize,
    kappa: f64,
) -> PyResult<PyCutStats> {
    let cfg = StatsConfig { trials, base_seed: seed, jobs, kappa, ..Default::default() };
    let inner = py.detach(|| verify::estimate_cut_probs(&graph.inner, delta, &cfg)).map_err(to_py)?;
    Ok(PyCutStats { inner })
}

fn positive(name: &str, v: usize) -> PyResult<()> {
    if v == 0 {
        return Err(PyValueError::new_err(format!("{name} must be at least 1")));
    }
    Ok(())
}

#[pyfunction]
#[pyo3(signature = (n, weight = 1))]
fn cycle(n: usize, weight: u64) -> PyResult<PyGraph> {
    positive("n", n)?;
    Ok(PyGraph { inner: gen::cycle(n, weight) })
}

#[pyfunction]
#[pyo3(signature = (n, weight = 1))]
fn path(n: usize, weight: u64) -> PyResult<PyGraph> {
    positive("n", n)?;
    Ok(PyGraph { inner: gen::path(n, weight) })
}

#[pyfunction]
#[pyo3(signature = (n, m, w_max, seed = 0))]
fn random_digraph(n: usize, m: usize, w_max: u64, seed: u64) -> PyResult<PyGraph> {
    positive("n", n)?;
    Ok(PyGraph { inner: gen::random_digraph(n, m, w_max, seed) })
}

#[pyfunction]
#[pyo3(signature = (rows, cols, w_max, seed = 0))]
fn bidirected_grid(rows: usize, cols: usize, w_max: u64, seed: u64) -> PyResult<PyGraph> {
    positive("rows", rows)?;
    positive("cols", cols)?;
    Ok(PyGraph { inner: gen::bidirected_grid(rows, cols, w_max, seed) })
}

/// `kind` is `"close-pair"` or `"far-pair"`.
#[pyfunction]
fn heavy_gadget(kind: &str, size: usize, delta: u64) -> PyResult<PyGraph> {
    let kind = match kind {
        "close-pair" => GadgetKind::ClosePair,
        "far-pair" => GadgetKind::FarPair,
        other => return Err(PyValueError::new_err(format!("unknown gadget kind {other:?}"))),
    };
    if size < 4 {
        return Err(PyValueError::new_err("gadget size must be at least 4"));
    }
    Ok(PyGraph { inner: gen::heavy_gadget(kind, size, delta) })
}

#[pymodule]
fn dldd(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyLddResult>()?;
    m.add_class::<PyValidationReport>()?;
    m.add_class::<PyCutStats>()?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(scc, m)?)?;
    m.add_function(wrap_pyfunction!(weak_diameter, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_cut_probs, m)?)?;
    m.add_function(wrap_pyfunction!(cycle, m)?)?;
    m.add_function(wrap_pyfunction!(path, m)?)?;
    m.add_function(wrap_pyfunction!(random_digraph, m)?)?;
    m.add_function(wrap_pyfunction!(bidirected_grid, m)?)?;
    m.add_function(wrap_pyfunction!(heavy_gadget, m)?)?;
    Ok(())
}
