//! Python bindings: the main types and operations exposed as thin wrappers.
//! Structured results cross the boundary as JSON-compatible dicts.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use mck_core::defaults;
use mck_core::diagnosis::{self, DiagnoseParams};
use mck_core::geometry::{self, ConvexCone, GridRegion, Point};
use mck_core::lgp::{self, DiscreteSpace, LgpParams};
use mck_core::local_model::{LocalModel, ModelSample, SampleConstraint};
use mck_core::scenes;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    let json = py.import("json")?;
    json.call_method1("loads", (text,))
}

fn to_json_dict<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(err)?;
    json_to_py(py, &text)
}

/// Polyhedral cone: vertex + linear part + nonnegative generators.
#[pyclass(name = "ConvexCone", skip_from_py_object)]
#[derive(Clone)]
struct PyConvexCone {
    inner: ConvexCone,
}

#[pymethods]
impl PyConvexCone {
    #[new]
    #[pyo3(signature = (vertex, subspace=vec![], generators=vec![]))]
    fn new(vertex: Vec<f64>, subspace: Vec<Vec<f64>>, generators: Vec<Vec<f64>>) -> PyResult<Self> {
        let inner = ConvexCone::new(Point(vertex), subspace, generators)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyConvexCone { inner })
    }

    /// Membership with tolerance; `exact=True` runs rational arithmetic.
    #[pyo3(signature = (p, tol=1e-9, exact=false))]
    fn contains(&self, p: Vec<f64>, tol: f64, exact: bool) -> PyResult<bool> {
        let point = Point(p);
        if exact {
            self.inner.contains_exact(&point).map_err(err)
        } else {
            self.inner.contains(&point, tol).map_err(err)
        }
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner: ConvexCone = serde_json::from_str(text).map_err(err)?;
        inner.validate().map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyConvexCone { inner })
    }
}

/// Rasterized region of the target space.
#[pyclass(name = "GridRegion", skip_from_py_object)]
#[derive(Clone)]
struct PyGridRegion {
    inner: GridRegion,
}

#[pymethods]
impl PyGridRegion {
    #[new]
    #[pyo3(signature = (origin, h, cells, closed=true))]
    fn new(origin: Vec<f64>, h: f64, cells: Vec<Vec<i64>>, closed: bool) -> PyResult<Self> {
        let mut inner = GridRegion::new(origin, h, closed).map_err(err)?;
        for c in cells {
            inner.insert(c);
        }
        Ok(PyGridRegion { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner: GridRegion = serde_json::from_str(text).map_err(err)?;
        Ok(PyGridRegion { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn segment_in_region(&self, x: Vec<f64>, y: Vec<f64>) -> PyResult<bool> {
        self.inner.segment_in_region(&x, &y).map_err(err)
    }

    #[pyo3(signature = (radius=None))]
    fn locally_convex_violations(&self, radius: Option<f64>) -> PyResult<Vec<Vec<i64>>> {
        let r = radius.unwrap_or(defaults::LOCAL_CONVEXITY_RADIUS_CELLS * self.inner.h);
        self.inner.is_locally_convex(r).map_err(err)
    }

    fn component_count(&self) -> usize {
        self.inner.region_components().len()
    }

    #[pyo3(signature = (radius=None))]
    fn klee_certify<'py>(&self, py: Python<'py>, radius: Option<f64>) -> PyResult<Bound<'py, PyAny>> {
        let r = radius.unwrap_or(defaults::LOCAL_CONVEXITY_RADIUS_CELLS * self.inner.h);
        let cert = geometry::klee_certify(&self.inner, r).map_err(err)?;
        to_json_dict(py, &cert)
    }
}

/// Torus-action local normal form.
#[pyclass(name = "LocalModel", skip_from_py_object)]
#[derive(Clone)]
struct PyLocalModel {
    inner: LocalModel,
}

#[pymethods]
impl PyLocalModel {
    #[new]
    #[pyo3(signature = (base, dim_t1, t0_perp, weights=vec![]))]
    fn new(
        base: Vec<f64>,
        dim_t1: usize,
        t0_perp: Vec<Vec<f64>>,
        weights: Vec<Vec<f64>>,
    ) -> PyResult<Self> {
        let inner = LocalModel::new(Point(base), dim_t1, t0_perp, weights)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyLocalModel { inner })
    }

    fn momentum(&self, beta: Vec<f64>, norms_sq: Vec<f64>) -> PyResult<Vec<f64>> {
        self.inner
            .momentum(&ModelSample { beta, norms_sq })
            .map(|p| p.0)
            .map_err(err)
    }

    fn local_cone(&self) -> PyConvexCone {
        PyConvexCone {
            inner: self.inner.local_cone(),
        }
    }

    #[pyo3(signature = (radius, n_samples=100_000, seed=1))]
    fn check_vertex_neighborhood(&self, radius: f64, n_samples: usize, seed: u64) -> PyResult<bool> {
        self.inner
            .check_vertex_neighborhood(radius, n_samples, seed, SampleConstraint::None)
            .map(|r| r.covered)
            .map_err(err)
    }

    #[pyo3(signature = (value, n_samples=2000, seed=1))]
    fn local_fiber_components(&self, value: Vec<f64>, n_samples: usize, seed: u64) -> PyResult<usize> {
        self.inner
            .local_fiber_components(&Point(value), n_samples, seed)
            .map_err(err)
    }
}

/// Convex hull vertices (dimension 1..=4), lexicographically ordered.
#[pyfunction]
fn convex_hull(points: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
    let pts: Vec<Point> = points.into_iter().map(Point).collect();
    geometry::convex_hull(&pts)
        .map(|h| h.into_iter().map(|p| p.0).collect())
        .map_err(err)
}

/// Openness diagnosis of a built-in scene.
#[pyfunction]
#[pyo3(signature = (scene, h=1.0/64.0, samples=200_000, seed=1))]
fn diagnose<'py>(
    py: Python<'py>,
    scene: &str,
    h: f64,
    samples: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let sc = scenes::builtin_scene(scene).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let verdict = diagnosis::diagnose(
        &sc,
        &DiagnoseParams {
            h,
            n_samples: samples,
            seed,
            max_probes: 600,
            ccf_probes: 200,
        },
    )
    .map_err(err)?;
    to_json_dict(py, &verdict)
}

/// Local-to-global verdict on a discrete space given as JSON.
#[pyfunction]
#[pyo3(signature = (space_json, hop_radius=1))]
fn lgp_verdict<'py>(py: Python<'py>, space_json: &str, hop_radius: usize) -> PyResult<Bound<'py, PyAny>> {
    let space = DiscreteSpace::from_json(space_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let params = LgpParams {
        hop_radius,
        ..LgpParams::default()
    };
    let v = lgp::lgp_verdict(&space, &params).map_err(err)?;
    to_json_dict(py, &v)
}

/// The canonical counterexample space as JSON.
#[pyfunction]
#[pyo3(signature = (name="circle_height_space"))]
fn builtin_space_json(name: &str) -> PyResult<String> {
    let space = scenes::builtin_space(name).map_err(|e| PyValueError::new_err(e.to_string()))?;
    space.to_json().map_err(err)
}

/// Isospectral-diagonal experiment against the permutation hull.
#[pyfunction]
#[pyo3(signature = (lambda_, trials=10_000, tol=1e-9, seed=1))]
fn schur_horn<'py>(
    py: Python<'py>,
    lambda_: Vec<f64>,
    trials: usize,
    tol: f64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let rep = scenes::schur_horn_experiment(&lambda_, trials, tol, seed).map_err(err)?;
    to_json_dict(py, &rep)
}

/// The 2x2 spectral-sum interval experiment.
#[pyfunction]
#[pyo3(signature = (a, b, trials=10_000, tol_fill=0.02, seed=1))]
fn horn_interval<'py>(
    py: Python<'py>,
    a: [f64; 2],
    b: [f64; 2],
    trials: usize,
    tol_fill: f64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let rep = scenes::horn_interval_experiment(&a, &b, trials, tol_fill, seed).map_err(err)?;
    to_json_dict(py, &rep)
}

/// Sampled toric image against the fixed-point hull.
#[pyfunction]
#[pyo3(signature = (scene="cp2_toric", samples=100_000, h=1.0/128.0, seed=1))]
fn toric_polytope<'py>(
    py: Python<'py>,
    scene: &str,
    samples: usize,
    h: f64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let sc = scenes::builtin_scene(scene).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let (rep, hull) = scenes::toric_polytope_experiment(&sc, samples, h, seed).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("report", to_json_dict(py, &rep)?)?;
    out.set_item(
        "hull",
        hull.into_iter().map(|p| p.0).collect::<Vec<Vec<f64>>>(),
    )?;
    Ok(out.into_any())
}

#[pyfunction]
fn builtin_scenes() -> Vec<String> {
    scenes::BUILTIN_SCENES.iter().map(|s| s.to_string()).collect()
}

#[pymodule]
fn mck_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyConvexCone>()?;
    m.add_class::<PyGridRegion>()?;
    m.add_class::<PyLocalModel>()?;
    m.add_function(wrap_pyfunction!(convex_hull, m)?)?;
    m.add_function(wrap_pyfunction!(diagnose, m)?)?;
    m.add_function(wrap_pyfunction!(lgp_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_space_json, m)?)?;
    m.add_function(wrap_pyfunction!(schur_horn, m)?)?;
    m.add_function(wrap_pyfunction!(horn_interval, m)?)?;
    m.add_function(wrap_pyfunction!(toric_polytope, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_scenes, m)?)?;
    Ok(())
}
