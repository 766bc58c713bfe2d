//! Python bindings for the reliability-network classifier.
//!
//! Reports and records cross the boundary as plain dicts; the network,
//! dataset and model stay opaque objects.

use std::path::PathBuf;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use relnet::dataset::{self, DataFormat, LabelPosition};
use relnet::reliability::{self, DecisionMode, SimParams};
use relnet::seed::{self, DEFAULT_SEED};
use relnet::trainer::{self, TrainConfig};
use relnet::{ubcn, Error, ReliabilityAssignment};
use serde::Serialize;

fn err(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyIOError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn parse_format(format: Option<&str>, path: &std::path::Path) -> PyResult<DataFormat> {
    match format {
        Some("csv") => Ok(DataFormat::Csv),
        Some("libsvm") => Ok(DataFormat::Libsvm),
        Some(other) => Err(PyValueError::new_err(format!("unknown format {other:?}"))),
        None if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) => Ok(DataFormat::Csv),
        None => Ok(DataFormat::Libsvm),
    }
}

fn parse_position(position: Option<&str>, format: DataFormat) -> PyResult<LabelPosition> {
    match position {
        None => Ok(format.default_label_position()),
        Some("last-column") => Ok(LabelPosition::LastColumn),
        Some("leading") => Ok(LabelPosition::Leading),
        Some(other) => Err(PyValueError::new_err(format!("unknown label position {other:?}"))),
    }
}

fn parse_mode(mode: &str) -> PyResult<DecisionMode> {
    match mode {
        "imcs" => Ok(DecisionMode::Imcs),
        "full-mcs" | "full_mcs" => Ok(DecisionMode::FullMcs),
        other => Err(PyValueError::new_err(format!("unknown decision mode {other:?}"))),
    }
}

/// A labelled two-class dataset.
#[pyclass(frozen, name = "Dataset")]
struct PyDataset {
    inner: dataset::RawDataset,
}

#[pymethods]
impl PyDataset {
    #[new]
    fn new(instances: Vec<Vec<f64>>, labels: Vec<String>) -> PyResult<Self> {
        Ok(Self { inner: dataset::RawDataset::new(instances, labels).map_err(err)? })
    }

    /// Loads a CSV or LIBSVM file; the format defaults from the extension.
    #[staticmethod]
    #[pyo3(signature = (path, format=None, label_position=None))]
    fn load(path: PathBuf, format: Option<&str>, label_position: Option<&str>) -> PyResult<Self> {
        let format = parse_format(format, &path)?;
        let position = parse_position(label_position, format)?;
        Ok(Self { inner: dataset::load_dataset(&path, format, position).map_err(err)? })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn n_attributes(&self) -> usize {
        self.inner.n_attributes()
    }

    #[getter]
    fn instances(&self) -> Vec<Vec<f64>> {
        self.inner.instances().to_vec()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    /// Class mapping and per-attribute scaling fitted on this dataset.
    fn transform<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let cmap = dataset::map_classes(&self.inner).map_err(err)?;
        let (spec, _) = dataset::fit_transform(&self.inner, &cmap).map_err(err)?;
        to_py(py, &spec)
    }

    fn __repr__(&self) -> String {
        format!("Dataset({} instances, {} attributes)", self.inner.len(), self.inner.n_attributes())
    }
}

/// Fully connected network between a source, `n` attribute nodes and a sink.
#[pyclass(frozen, name = "Topology")]
struct PyTopology {
    inner: ubcn::Topology,
}

impl PyTopology {
    fn assign(&self, arc_rel: Vec<f64>, node_rel: Vec<f64>) -> PyResult<ReliabilityAssignment> {
        ReliabilityAssignment::new(&self.inner, arc_rel, node_rel).map_err(err)
    }
}

#[pymethods]
impl PyTopology {
    #[new]
    fn new(n: usize) -> PyResult<Self> {
        Ok(Self { inner: ubcn::Topology::new(n).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn n_var(&self) -> usize {
        self.inner.n_var()
    }

    #[getter]
    fn source(&self) -> usize {
        self.inner.source()
    }

    #[getter]
    fn sink(&self) -> usize {
        self.inner.sink()
    }

    #[getter]
    fn arcs(&self) -> Vec<(usize, usize)> {
        self.inner.arcs().to_vec()
    }

    fn arc_index(&self, a: usize, b: usize) -> Option<usize> {
        self.inner.arc_index(a, b)
    }

    /// Exact source-to-sink reliability by enumeration (small networks only).
    fn exact_reliability(&self, arc_rel: Vec<f64>, node_rel: Vec<f64>) -> PyResult<f64> {
        let assign = self.assign(arc_rel, node_rel)?;
        ubcn::exact_reliability(&self.inner, &assign).map_err(err)
    }

    /// Crude Monte Carlo estimate from `n_sim` sampled states.
    #[pyo3(signature = (arc_rel, node_rel, n_sim=2000, seed=DEFAULT_SEED))]
    fn mcs_estimate(&self, arc_rel: Vec<f64>, node_rel: Vec<f64>, n_sim: usize, seed: u64) -> PyResult<f64> {
        let assign = self.assign(arc_rel, node_rel)?;
        reliability::mcs_estimate(&self.inner, &assign, n_sim, &mut seed::stream(seed, &[])).map_err(err)
    }

    /// Classifies one instance against `theta` by sequential simulation.
    #[pyo3(signature = (arc_rel, node_rel, theta, seed=DEFAULT_SEED, n_sim=2000, delta_n_sim=100, mode="imcs"))]
    #[allow(clippy::too_many_arguments)]
    fn classify<'py>(
        &self,
        py: Python<'py>,
        arc_rel: Vec<f64>,
        node_rel: Vec<f64>,
        theta: f64,
        seed: u64,
        n_sim: usize,
        delta_n_sim: usize,
        mode: &str,
    ) -> PyResult<Bound<'py, PyAny>> {
        let assign = self.assign(arc_rel, node_rel)?;
        let params = SimParams { n_sim, delta_n_sim, ..Default::default() };
        let bounds = reliability::build_bounds(theta, &params).map_err(err)?;
        let outcome = reliability::classify(
            parse_mode(mode)?,
            &self.inner,
            &assign.arc_rel,
            &assign.node_rel,
            &bounds,
            &mut seed::stream(seed, &[]),
        );
        to_py(py, &outcome)
    }

    fn __repr__(&self) -> String {
        format!("Topology(n={}, n_var={})", self.inner.n(), self.inner.n_var())
    }
}

/// Interval bounds for a majority rate `theta`.
#[pyfunction]
#[pyo3(signature = (theta, n_sim=2000, delta_n_sim=100, p_eps=0.9, z_half_alpha=reliability::Z_99))]
fn build_bounds<'py>(py: Python<'py>, theta: f64, n_sim: usize, delta_n_sim: usize, p_eps: f64, z_half_alpha: f64) -> PyResult<Bound<'py, PyAny>> {
    let params = SimParams { n_sim, delta_n_sim, p_eps, z_half_alpha, ..Default::default() };
    to_py(py, &reliability::build_bounds(theta, &params).map_err(err)?)
}

fn config_from(config: Option<&Bound<'_, PyDict>>) -> PyResult<TrainConfig> {
    let cfg = match config {
        None => TrainConfig::default(),
        Some(d) => {
            let text: String = d.py().import("json")?.call_method1("dumps", (d,))?.extract()?;
            serde_json::from_str(&text).map_err(|e| PyValueError::new_err(format!("config: {e}")))?
        }
    };
    cfg.validate().map_err(err)?;
    Ok(cfg)
}

/// A trained classifier.
#[pyclass(frozen, name = "Model")]
struct PyModel {
    inner: relnet::Model,
}

#[pymethods]
impl PyModel {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: relnet::Model::from_json(text).map_err(err)? })
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(Self { inner: relnet::Model::load(&path).map_err(err)? })
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(err)
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        self.inner.save(&path).map_err(err)
    }

    #[getter]
    fn n_attributes(&self) -> usize {
        self.inner.n_attributes()
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.inner.theta()
    }

    #[getter]
    fn fitness(&self) -> f64 {
        self.inner.fitness
    }

    #[getter]
    fn arc_rel(&self) -> Vec<f64> {
        self.inner.arc_rel.clone()
    }

    /// Predicted labels; instance `i` uses its own stream under `seed`.
    #[pyo3(signature = (instances, seed=0, mode=None))]
    fn predict(&self, py: Python<'_>, instances: Vec<Vec<f64>>, seed: u64, mode: Option<&str>) -> PyResult<Vec<String>> {
        let mode = mode.map(parse_mode).transpose()?.unwrap_or(self.inner.decision);
        let preds = py.detach(|| trainer::predict_batch(&self.inner, &instances, mode, seed, 0)).map_err(err)?;
        Ok(preds.into_iter().map(|p| p.label).collect())
    }

    fn __repr__(&self) -> String {
        format!("Model({} attributes, fitness={})", self.inner.n_attributes(), self.inner.fitness)
    }
}

/// Trains on the whole dataset; returns the best model and per-run records.
#[pyfunction]
#[pyo3(signature = (data, config=None))]
fn fit<'py>(py: Python<'py>, data: &PyDataset, config: Option<&Bound<'py, PyDict>>) -> PyResult<(PyModel, Bound<'py, PyAny>)> {
    let cfg = config_from(config)?;
    let (model, runs) = py.detach(|| trainer::fit(&data.inner, &cfg)).map_err(err)?;
    Ok((PyModel { inner: model }, to_py(py, &runs)?))
}

/// Stratified k-fold evaluation; timing is omitted so reports are reproducible.
#[pyfunction]
#[pyo3(signature = (data, config=None))]
fn cross_validate<'py>(py: Python<'py>, data: &PyDataset, config: Option<&Bound<'py, PyDict>>) -> PyResult<Bound<'py, PyAny>> {
    let cfg = config_from(config)?;
    let mut report = py.detach(|| trainer::cross_validate(&data.inner, &cfg)).map_err(err)?;
    report.strip_timing();
    to_py(py, &report)
}

/// Default training configuration as a dict.
#[pyfunction]
fn default_config(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &TrainConfig::default())
}

#[pymodule]
fn relnet_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDataset>()?;
    m.add_class::<PyTopology>()?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(build_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(fit, m)?)?;
    m.add_function(wrap_pyfunction!(cross_validate, m)?)?;
    m.add_function(wrap_pyfunction!(default_config, m)?)?;
    m.add("ARC_ORDERING", ubcn::ARC_ORDERING)?;
    m.add("DEFAULT_SEED", DEFAULT_SEED)?;
    Ok(())
}
