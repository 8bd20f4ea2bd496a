//! Python bindings exposing the graph builders, hitting times, spectra and
//! walk experiments. Built as the `lackawalk_py` extension module; see
//! `python/smoke_test.py` at the workspace root for usage.

use lackawalk_core::classical::{
    hitting_time_exact, hitting_time_monte_carlo, interpolated_matrix, lazy_interpolated_matrix,
    walk_matrix, Distribution,
};
use lackawalk_core::coined::CoinConfig;
use lackawalk_core::error::WalkError;
use lackawalk_core::graph::{
    build_graph, is_locally_arc_transitive, parse_edge_list, GraphFamily, MarkedInstance,
    RegularGraph, BRUTE_FORCE_LIMIT,
};
use lackawalk_core::spectral::{
    cotangent_qht_from_spectrum, discriminant, eigendecompose, interpolated_hitting_time,
};
use lackawalk_core::szegedy::{theorem2_distances, WalkParams};
use lackawalk_core::verify::{
    check_arc_invariance, check_facts, check_lemma1, check_lemma2, check_lemma3, check_theorem1,
    default_t_max, search_experiment,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: WalkError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A connected regular graph with ordered arcs.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Graph {
    inner: RegularGraph,
    label: String,
}

impl Graph {
    fn build(spec: GraphFamily) -> PyResult<Self> {
        let label = spec.label();
        Ok(Graph { inner: build_graph(&spec).map_err(err)?, label })
    }

    fn instance(&self, mark: usize) -> PyResult<MarkedInstance> {
        MarkedInstance::new(self.inner.clone(), mark).map_err(err)
    }
}

#[pymethods]
impl Graph {
    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        Self::build(GraphFamily::Cycle { n })
    }

    #[staticmethod]
    fn torus(rows: usize, cols: usize) -> PyResult<Self> {
        Self::build(GraphFamily::Torus { rows, cols })
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        Self::build(GraphFamily::Complete { n })
    }

    #[staticmethod]
    fn complete_bipartite(half: usize) -> PyResult<Self> {
        Self::build(GraphFamily::CompleteBipartite { half })
    }

    #[staticmethod]
    fn hypercube(dim: usize) -> PyResult<Self> {
        Self::build(GraphFamily::Hypercube { dim })
    }

    #[staticmethod]
    fn johnson(n: usize, k: usize) -> PyResult<Self> {
        Self::build(GraphFamily::Johnson { n, k })
    }

    #[staticmethod]
    fn paley(q: usize) -> PyResult<Self> {
        Self::build(GraphFamily::Paley { q })
    }

    #[staticmethod]
    fn moebius_ladder(n: usize) -> PyResult<Self> {
        Self::build(GraphFamily::MoebiusLadder { n })
    }

    /// Parse the explicit edge-list format ("N d" header, "u v" lines).
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Self::build(parse_edge_list(text).map_err(err)?)
    }

    #[getter]
    fn n_vertices(&self) -> usize {
        self.inner.n_vertices()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn neighbors(&self, x: usize) -> PyResult<Vec<usize>> {
        if x >= self.inner.n_vertices() {
            return Err(PyValueError::new_err(format!("vertex {x} out of range")));
        }
        Ok(self.inner.neighbors_of(x).to_vec())
    }

    /// Brute-force (or certificate-backed) local arc-transitivity check.
    #[pyo3(signature = (at=None, limit=BRUTE_FORCE_LIMIT))]
    fn is_locally_arc_transitive(&self, at: Option<usize>, limit: usize) -> PyResult<bool> {
        is_locally_arc_transitive(&self.inner, at, limit).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({}, N={}, d={})",
            self.label,
            self.inner.n_vertices(),
            self.inner.degree()
        )
    }
}

/// Classical hitting time of `mark` from the uniform-over-unmarked start.
#[pyfunction]
fn hitting_time(graph: &Graph, mark: usize) -> PyResult<f64> {
    let inst = graph.instance(mark)?;
    hitting_time_exact(&walk_matrix(inst.graph()), mark, None).map_err(err)
}

/// Monte Carlo hitting time: returns (mean, std_error, truncated_count).
#[pyfunction]
#[pyo3(signature = (graph, mark, trials=100_000, seed=0))]
fn hitting_time_mc(graph: &Graph, mark: usize, trials: usize, seed: u64) -> PyResult<(f64, f64, usize)> {
    let inst = graph.instance(mark)?;
    let mc = hitting_time_monte_carlo(&walk_matrix(inst.graph()), mark, None, trials, seed)
        .map_err(err)?;
    Ok((mc.mean, mc.std_error, mc.truncated))
}

/// Success probabilities of the lackadaisical walk for t = 0..=t_max.
/// Defaults: ell = d/N, t_max = ceil(2 sqrt(HT)).
#[pyfunction]
#[pyo3(signature = (graph, mark, ell=None, t_max=None))]
fn search_curve(graph: &Graph, mark: usize, ell: Option<f64>, t_max: Option<u64>) -> PyResult<Vec<f64>> {
    let inst = graph.instance(mark)?;
    let ell = ell.unwrap_or(inst.graph().degree() as f64 / inst.graph().n_vertices() as f64);
    let cfg = CoinConfig::new(inst.graph(), ell).map_err(err)?;
    let t_max = match t_max {
        Some(t) => t,
        None => default_t_max(&inst).map_err(err)?,
    };
    Ok(search_experiment(&inst, &cfg, t_max).success)
}

/// Residual of the quantum-hitting-time identity between the coined and
/// interpolated walks at ell = d/N, s = 1 - 1/N.
#[pyfunction]
fn theorem1_residual(graph: &Graph, mark: usize) -> PyResult<f64> {
    let inst = graph.instance(mark)?;
    let params = WalkParams::standard(inst.graph());
    Ok(check_theorem1(&inst, params).map_err(err)?.residual)
}

/// Residuals of the trajectory equality, conjugation, eigenvalue-map and
/// partial-sum checks as a dict of claim name -> (residual, tolerance, pass).
#[pyfunction]
fn claim_residuals<'py>(py: Python<'py>, graph: &Graph, mark: usize) -> PyResult<Bound<'py, PyDict>> {
    let inst = graph.instance(mark)?;
    let params = WalkParams::standard(inst.graph());
    let t_max = default_t_max(&inst).map_err(err)?;
    let reports = [
        check_theorem1(&inst, params).map_err(err)?,
        check_lemma1(&inst, params, t_max).map_err(err)?,
        check_lemma2(&inst, params, 20, 0).map_err(err)?,
        check_lemma3(&inst, params).map_err(err)?,
        check_facts(&inst, params).map_err(err)?,
        check_arc_invariance(&inst, params, t_max).map_err(err)?,
    ];
    let dict = PyDict::new(py);
    for report in reports {
        dict.set_item(report.claim.clone(), (report.residual, report.tolerance, report.pass))?;
    }
    Ok(dict)
}

/// Spectral summary of both interpolated walks:
/// {"eigenvalues", "thetas", "ht_s", "cot_qht", "lazy_eigenvalues",
///  "lazy_ht_s", "lazy_cot_qht", "classical_ht"}.
#[pyfunction]
fn spectrum_summary<'py>(py: Python<'py>, graph: &Graph, mark: usize) -> PyResult<Bound<'py, PyDict>> {
    let inst = graph.instance(mark)?;
    let g = inst.graph();
    let params = WalkParams::standard(g);
    let pibar = Distribution::pibar(g.n_vertices(), mark);
    let plain = interpolated_matrix(&walk_matrix(g), mark, params.s).map_err(err)?;
    let lazy = lazy_interpolated_matrix(g, mark, params.ell, params.s).map_err(err)?;
    let spec = eigendecompose(&discriminant(&plain)).map_err(err)?;
    let spec_hat = eigendecompose(&discriminant(&lazy)).map_err(err)?;
    let dict = PyDict::new(py);
    dict.set_item("eigenvalues", spec.eigenvalues().to_vec())?;
    dict.set_item("thetas", (0..spec.n()).map(|k| spec.angle(k)).collect::<Vec<_>>())?;
    dict.set_item("ht_s", interpolated_hitting_time(&spec, &pibar).map_err(err)?)?;
    dict.set_item("cot_qht", cotangent_qht_from_spectrum(&spec, &pibar).map_err(err)?)?;
    dict.set_item("lazy_eigenvalues", spec_hat.eigenvalues().to_vec())?;
    dict.set_item("lazy_ht_s", interpolated_hitting_time(&spec_hat, &pibar).map_err(err)?)?;
    dict.set_item("lazy_cot_qht", cotangent_qht_from_spectrum(&spec_hat, &pibar).map_err(err)?)?;
    dict.set_item(
        "classical_ht",
        hitting_time_exact(&walk_matrix(g), mark, None).map_err(err)?,
    )?;
    Ok(dict)
}

/// Max trajectory distances up to t = floor(c sqrt(HT)):
/// returns (max_total, max_exact_part, max_embed_part).
#[pyfunction]
#[pyo3(signature = (graph, mark, c=1.0))]
fn theorem2_max_distance(graph: &Graph, mark: usize, c: f64) -> PyResult<(f64, f64, f64)> {
    let inst = graph.instance(mark)?;
    let params = WalkParams::standard(inst.graph());
    let ht = hitting_time_exact(&walk_matrix(inst.graph()), mark, None).map_err(err)?;
    let t_max = (c * ht.sqrt()).floor() as u64;
    let rows = theorem2_distances(&inst, params, t_max).map_err(err)?;
    let fold = |f: fn(&lackawalk_core::szegedy::Theorem2Row) -> f64| {
        rows.iter().map(f).fold(0.0f64, f64::max)
    };
    Ok((fold(|r| r.total), fold(|r| r.exact_part), fold(|r| r.embed_part)))
}

#[pymodule]
fn lackawalk_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(hitting_time, m)?)?;
    m.add_function(wrap_pyfunction!(hitting_time_mc, m)?)?;
    m.add_function(wrap_pyfunction!(search_curve, m)?)?;
    m.add_function(wrap_pyfunction!(theorem1_residual, m)?)?;
    m.add_function(wrap_pyfunction!(claim_residuals, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum_summary, m)?)?;
    m.add_function(wrap_pyfunction!(theorem2_max_distance, m)?)?;
    Ok(())
}
