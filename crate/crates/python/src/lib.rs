//! Python bindings. Matrices cross the boundary as nested lists of Python
//! complex numbers; reports cross as dicts mirroring the CLI's JSON.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use ymgraph_core::calculus;
use ymgraph_core::check;
use ymgraph_core::gauge::{self, GroupKind};
use ymgraph_core::graph::{self as core_graph, Orientation};
use ymgraph_core::io;
use ymgraph_core::linalg::{self, CMat, CVec};
use ymgraph_core::yangmills::{self, Direction, OptimizeOptions, Potential};
use ymgraph_core::Error;

fn py_err(e: Error) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_pyobject(py)?.into_any(),
            (None, Some(u)) => u.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn matrix_to_rows(m: &CMat) -> Vec<Vec<Complex64>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| m[(r, c)]).collect()).collect()
}

fn rows_to_matrix(rows: &[Vec<Complex64>]) -> PyResult<CMat> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("matrix must be square"));
    }
    Ok(CMat::from_fn(n, n, |r, c| rows[r][c]))
}

fn orientation(order: &str) -> PyResult<Orientation> {
    match order {
        "file" => Ok(Orientation::FileOrder),
        "natural" => Ok(Orientation::Natural),
        other => Err(PyValueError::new_err(format!("order must be 'file' or 'natural', not {other:?}"))),
    }
}

fn group(kind: &str, n: Option<usize>) -> PyResult<gauge::Group> {
    let kind: GroupKind = kind.parse().map_err(py_err)?;
    let n = n.unwrap_or(if kind == GroupKind::U1 { 1 } else { 2 });
    gauge::Group::new(kind, n).map_err(py_err)
}

/// Finite simple graph with an acyclic orientation.
#[pyclass(module = "ymgraph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Graph {
    inner: core_graph::Graph,
}

#[pymethods]
impl Graph {
    /// `edges` are `(u, v)` pairs; `order="file"` keeps `u -> v`,
    /// `order="natural"` points every edge to the larger id.
    #[new]
    #[pyo3(signature = (num_vertices, edges, order = "file"))]
    fn new(num_vertices: usize, edges: Vec<(usize, usize)>, order: &str) -> PyResult<Self> {
        let inner = core_graph::Graph::with_orientation(num_vertices, edges, orientation(order)?).map_err(py_err)?;
        Ok(Graph { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (text, order = "file"))]
    fn from_text(text: &str, order: &str) -> PyResult<Self> {
        let inner = io::parse_graph(text, orientation(order)?).map_err(py_err)?;
        Ok(Graph { inner })
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        Graph { inner: core_graph::Graph::complete(n) }
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        Graph { inner: core_graph::Graph::path(n) }
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        Graph { inner: core_graph::Graph::cycle(n) }
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn to_text(&self) -> String {
        io::graph_to_text(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph(num_vertices={}, num_edges={})", self.inner.num_vertices(), self.inner.num_edges())
    }
}

/// Clique complex of a graph. `k`-simplices are `(k+1)`-cliques listed as
/// vertex tuples sorted along the orientation.
#[pyclass(module = "ymgraph", frozen)]
struct CliqueComplex {
    inner: core_graph::CliqueComplex,
}

#[pymethods]
impl CliqueComplex {
    #[new]
    #[pyo3(signature = (graph, max_k = None))]
    fn new(graph: &Graph, max_k: Option<usize>) -> Self {
        CliqueComplex {
            inner: core_graph::CliqueComplex::build(graph.inner.clone(), max_k),
        }
    }

    fn counts(&self) -> Vec<usize> {
        self.inner.counts()
    }

    #[getter]
    fn clique_number(&self) -> usize {
        self.inner.clique_number()
    }

    fn simplices(&self, k: usize) -> Vec<Vec<usize>> {
        self.inner.simplices(k).to_vec()
    }

    fn clique_degree(&self, simplex: Vec<usize>) -> PyResult<usize> {
        self.inner.clique_degree(&simplex).map_err(py_err)
    }

    /// `[(simplex, sign), ...]` for the simplex given in any vertex order.
    fn parallel_neighbors(&self, simplex: Vec<usize>) -> PyResult<Vec<(Vec<usize>, f64)>> {
        self.inner.parallel_neighbors_of(&simplex).map_err(py_err)
    }

    fn hodge_laplacian(&self, k: usize) -> PyResult<Vec<Vec<f64>>> {
        let m = calculus::hodge_laplacian_matrix(&self.inner, k).map_err(py_err)?;
        Ok((0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect())
    }

    /// Eigenvalues of the Hodge Laplacian in degree `k`, ascending.
    fn spectrum(&self, k: usize) -> PyResult<Vec<f64>> {
        let m = calculus::hodge_laplacian_matrix(&self.inner, k).map_err(py_err)?;
        Ok(linalg::symmetric_eigenvalues(&m))
    }

    fn betti_numbers(&self) -> PyResult<Vec<usize>> {
        calculus::betti_numbers(&self.inner).map_err(py_err)
    }

    fn forman_ricci(&self, k: usize) -> Vec<f64> {
        (0..self.inner.count(k)).map(|i| calculus::forman_ricci(&self.inner, k, i)).collect()
    }

    fn __repr__(&self) -> String {
        format!("CliqueComplex(counts={:?})", self.inner.counts())
    }
}

/// Connection with one group element per edge, stored on the edge's own
/// direction.
#[pyclass(module = "ymgraph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Connection {
    inner: gauge::Connection,
}

#[pymethods]
impl Connection {
    #[staticmethod]
    #[pyo3(signature = (cx, group_kind = "U1", n = None))]
    fn trivial(cx: &CliqueComplex, group_kind: &str, n: Option<usize>) -> PyResult<Self> {
        Ok(Connection {
            inner: gauge::Connection::trivial(&cx.inner, group(group_kind, n)?),
        })
    }

    #[staticmethod]
    #[pyo3(signature = (cx, group_kind = "U1", n = None, seed = 0))]
    fn random(cx: &CliqueComplex, group_kind: &str, n: Option<usize>, seed: u64) -> PyResult<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(Connection {
            inner: gauge::Connection::random(&cx.inner, group(group_kind, n)?, &mut rng),
        })
    }

    /// U(1) connection from one angle per edge, in simplex order.
    #[staticmethod]
    fn from_angles(cx: &CliqueComplex, angles: Vec<f64>) -> PyResult<Self> {
        Ok(Connection {
            inner: gauge::Connection::from_angles(&cx.inner, &angles).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn from_matrices(cx: &CliqueComplex, group_kind: &str, matrices: Vec<Vec<Vec<Complex64>>>) -> PyResult<Self> {
        let values = matrices.iter().map(|m| rows_to_matrix(m)).collect::<PyResult<Vec<_>>>()?;
        let n = values.first().map_or(1, |m| m.nrows());
        let inner = gauge::Connection::from_values(&cx.inner, group(group_kind, Some(n))?, values).map_err(py_err)?;
        Ok(Connection { inner })
    }

    #[staticmethod]
    fn from_json(cx: &CliqueComplex, text: &str) -> PyResult<Self> {
        Ok(Connection {
            inner: io::connection_from_json(&cx.inner, text).map_err(py_err)?,
        })
    }

    fn to_json(&self, cx: &CliqueComplex) -> String {
        io::to_json_string(&io::connection_to_json(&cx.inner, &self.inner))
    }

    #[getter]
    fn group(&self) -> &'static str {
        self.inner.group().kind().name()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.dim()
    }

    fn matrices(&self) -> Vec<Vec<Vec<Complex64>>> {
        self.inner.values().iter().map(matrix_to_rows).collect()
    }

    fn angles(&self) -> Vec<f64> {
        self.inner.angles()
    }

    fn __repr__(&self) -> String {
        format!("Connection(group={}, n={}, edges={})", self.group(), self.n(), self.inner.values().len())
    }
}

#[pyfunction]
fn ym_value(cx: &CliqueComplex, a: &Connection) -> PyResult<f64> {
    yangmills::ym_value(&cx.inner, &a.inner).map_err(py_err)
}

/// Operator norms of the Yang-Mills residual on each edge.
#[pyfunction]
fn ym_residual_norms(cx: &CliqueComplex, a: &Connection) -> PyResult<Vec<f64>> {
    Ok(yangmills::ym_residual(&cx.inner, &a.inner).map_err(py_err)?.norms)
}

/// Multi-start optimization; returns the report of the best run plus the
/// clustered endpoints.
#[pyfunction]
#[pyo3(signature = (cx, group_kind = "U1", n = None, maximize = false, starts = 16, seed = 0, tol = 1e-8, max_iter = 10000))]
#[allow(clippy::too_many_arguments)]
fn ym_optimize<'py>(
    py: Python<'py>,
    cx: &CliqueComplex,
    group_kind: &str,
    n: Option<usize>,
    maximize: bool,
    starts: usize,
    seed: u64,
    tol: f64,
    max_iter: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = OptimizeOptions {
        tol,
        max_iter,
        starts: starts.max(1),
        seed,
        ..Default::default()
    };
    let direction = if maximize { Direction::Maximize } else { Direction::Minimize };
    let rep = yangmills::ym_optimize(&cx.inner, group(group_kind, n)?, direction, &opts).map_err(py_err)?;
    let mut out = io::ym_report_json(&cx.inner, &rep.runs[rep.best]).map_err(py_err)?;
    let endpoints: Vec<Value> = rep
        .endpoints
        .iter()
        .map(|ep| serde_json::json!({"value": ep.value, "runs": ep.runs, "trivial": ep.trivial}))
        .collect();
    out["endpoints"] = Value::Array(endpoints);
    json_to_py(py, &out)
}

/// Tree-gauge-fixed connection and the gauge transformation used.
#[pyfunction]
fn gauge_fix(cx: &CliqueComplex, a: &Connection) -> PyResult<(Connection, Vec<Vec<Vec<Complex64>>>)> {
    let (fixed, g) = yangmills::spanning_tree_gauge_fix(&cx.inner, &a.inner).map_err(py_err)?;
    Ok((Connection { inner: fixed }, g.values().iter().map(matrix_to_rows).collect()))
}

#[pyfunction]
#[pyo3(signature = (cx, resolution = 60, tol = None))]
fn grid_oracle<'py>(py: Python<'py>, cx: &CliqueComplex, resolution: usize, tol: Option<f64>) -> PyResult<Bound<'py, PyAny>> {
    let rep = yangmills::u1_grid_oracle(&cx.inner, resolution, tol).map_err(py_err)?;
    let passes: Vec<Value> = rep
        .passes
        .iter()
        .map(|p| serde_json::json!({"indices": p.indices, "angles": p.angles, "residual": p.residual}))
        .collect();
    let out = serde_json::json!({
        "resolution": rep.resolution,
        "tolerance": rep.tolerance,
        "free_edges": rep.free_edges,
        "passes": passes,
    });
    json_to_py(py, &out)
}

#[pyfunction]
#[pyo3(signature = (cx, a, seed = 0))]
fn identity_suite<'py>(py: Python<'py>, cx: &CliqueComplex, a: &Connection, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let rep = check::identity_suite(&cx.inner, &a.inner, seed).map_err(py_err)?;
    let value = serde_json::to_value(&rep).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    json_to_py(py, &value)
}

fn higgs_field(cx: &CliqueComplex, a: &Connection, phi: Vec<Vec<Complex64>>) -> PyResult<gauge::VectorForm> {
    let n = a.inner.dim();
    let values = phi.into_iter().map(CVec::from_vec).collect();
    gauge::VectorForm::from_values(&cx.inner, 0, n, values).map_err(py_err)
}

/// Yang-Mills-Higgs functional with zero potential; `phi` has one
/// length-`n` complex vector per vertex.
#[pyfunction]
fn ymh_value(cx: &CliqueComplex, a: &Connection, phi: Vec<Vec<Complex64>>) -> PyResult<f64> {
    let phi = higgs_field(cx, a, phi)?;
    yangmills::ymh_value(&cx.inner, &a.inner, &phi, Potential::Zero).map_err(py_err)
}

/// `(edge_norms, vertex_norms)` of the Yang-Mills-Higgs residuals.
#[pyfunction]
fn ymh_residual_norms(cx: &CliqueComplex, a: &Connection, phi: Vec<Vec<Complex64>>) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let phi = higgs_field(cx, a, phi)?;
    let r = yangmills::ymh_residuals(&cx.inner, &a.inner, &phi, Potential::Zero).map_err(py_err)?;
    Ok((r.edge_norms(), r.vertex_norms()))
}

#[pymodule]
fn ymgraph(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<CliqueComplex>()?;
    m.add_class::<Connection>()?;
    m.add_function(wrap_pyfunction!(ym_value, m)?)?;
    m.add_function(wrap_pyfunction!(ym_residual_norms, m)?)?;
    m.add_function(wrap_pyfunction!(ym_optimize, m)?)?;
    m.add_function(wrap_pyfunction!(gauge_fix, m)?)?;
    m.add_function(wrap_pyfunction!(grid_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(identity_suite, m)?)?;
    m.add_function(wrap_pyfunction!(ymh_value, m)?)?;
    m.add_function(wrap_pyfunction!(ymh_residual_norms, m)?)?;
    Ok(())
}
