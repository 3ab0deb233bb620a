//! Python bindings for the trilink invariants engine.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use trilink::gauss;
use trilink::geometry::{self, Quaternion, Vec3};
use trilink::link::{self, Link3};
use trilink::spectral::{self, MuMethod};
use trilink::Mat3;

fn to_py_err(err: trilink::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn vec3(t: (f64, f64, f64)) -> Vec3 {
    Vec3::new(t.0, t.1, t.2)
}

fn tuple(v: Vec3) -> (f64, f64, f64) {
    (v.x, v.y, v.z)
}

fn quat(q: (f64, (f64, f64, f64))) -> Quaternion {
    Quaternion::new(q.0, vec3(q.1))
}

fn quat_tuple(q: Quaternion) -> (f64, (f64, f64, f64)) {
    (q.re, tuple(q.im))
}

/// Ordered, oriented three-component link.
#[pyclass(name = "Link3", frozen)]
struct PyLink3 {
    inner: Link3,
}

#[pymethods]
impl PyLink3 {
    /// Built-in links: borromean, split-unlink, borromean-reversed.
    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        Ok(PyLink3 {
            inner: link::preset(name).map_err(to_py_err)?,
        })
    }

    /// Parse a link config (JSON with components x, y, z).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyLink3 {
            inner: Link3::from_json(text).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(PyLink3 {
            inner: Link3::load(std::path::Path::new(path)).map_err(to_py_err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Evaluate component "x", "y" or "z" at the angle theta.
    fn eval(&self, component: &str, theta: f64) -> PyResult<(f64, f64, f64)> {
        Ok(tuple(self.curve(component)?.eval(theta)))
    }

    fn derivative(&self, component: &str, theta: f64) -> PyResult<(f64, f64, f64)> {
        Ok(tuple(self.curve(component)?.derivative(theta)))
    }

    /// Smallest pairwise separation seen on a probe grid.
    #[pyo3(signature = (probe = 512))]
    fn min_separation(&self, probe: usize) -> f64 {
        self.inner.min_separation(probe)
    }

    /// Apply p ↦ scale·R·p + translation with R a rotation matrix (rows).
    fn transformed(
        &self,
        rotation: [[f64; 3]; 3],
        translation: (f64, f64, f64),
        scale: f64,
    ) -> PyResult<Self> {
        let rotated =
            link::transform_link(&self.inner, &Mat3(rotation), vec3(translation), scale)
                .map_err(to_py_err)?;
        Ok(PyLink3 { inner: rotated })
    }

    fn __repr__(&self) -> String {
        format!(
            "Link3(max_harmonics=[{}, {}, {}])",
            self.inner.cx().max_harmonic(),
            self.inner.cy().max_harmonic(),
            self.inner.cz().max_harmonic()
        )
    }
}

impl PyLink3 {
    fn curve(&self, component: &str) -> PyResult<&link::TrigCurve> {
        match component {
            "x" => Ok(self.inner.cx()),
            "y" => Ok(self.inner.cy()),
            "z" => Ok(self.inner.cz()),
            other => Err(PyValueError::new_err(format!(
                "unknown component `{other}` (expected x, y or z)"
            ))),
        }
    }
}

/// Key map F(x,y,z) of three distinct points.
#[pyfunction]
fn key_map_e(x: (f64, f64, f64), y: (f64, f64, f64), z: (f64, f64, f64)) -> PyResult<(f64, f64, f64)> {
    geometry::key_map_e(vec3(x), vec3(y), vec3(z))
        .map(tuple)
        .map_err(to_py_err)
}

/// Unit-normalized key map f = F/|F|.
#[pyfunction]
fn normalized_key_map_e(
    x: (f64, f64, f64),
    y: (f64, f64, f64),
    z: (f64, f64, f64),
) -> PyResult<(f64, f64, f64)> {
    geometry::normalized_key_map_e(vec3(x), vec3(y), vec3(z))
        .map(tuple)
        .map_err(to_py_err)
}

/// Inverse stereographic projection from −1, as (re, (i, j, k)).
#[pyfunction]
fn inverse_stereographic(q: (f64, f64, f64)) -> (f64, (f64, f64, f64)) {
    quat_tuple(geometry::inverse_stereographic(vec3(q)))
}

/// Spherical key map Im((v−w)·conj(u−w)) on unit quaternions (re, (i, j, k)).
#[pyfunction]
fn key_map_s(
    u: (f64, (f64, f64, f64)),
    v: (f64, (f64, f64, f64)),
    w: (f64, (f64, f64, f64)),
) -> PyResult<(f64, f64, f64)> {
    geometry::key_map_s(quat(u), quat(v), quat(w))
        .map(tuple)
        .map_err(to_py_err)
}

/// Based stereographic lift (h(x−z), h(y−z), 1).
#[pyfunction]
fn based_lift(
    x: (f64, f64, f64),
    y: (f64, f64, f64),
    z: (f64, f64, f64),
) -> PyResult<(
    (f64, (f64, f64, f64)),
    (f64, (f64, f64, f64)),
    (f64, (f64, f64, f64)),
)> {
    let (u, v, w) = geometry::based_lift(vec3(x), vec3(y), vec3(z)).map_err(to_py_err)?;
    Ok((quat_tuple(u), quat_tuple(v), quat_tuple(w)))
}

/// |a|²b + a|b|² + a×b with (a, b) = (z−y, x−z).
#[pyfunction]
fn reduced_bridge_map(
    x: (f64, f64, f64),
    y: (f64, f64, f64),
    z: (f64, f64, f64),
) -> PyResult<(f64, f64, f64)> {
    geometry::reduced_bridge_map(vec3(x), vec3(y), vec3(z))
        .map(tuple)
        .map_err(to_py_err)
}

/// Scale factor C with key_map_s∘based_lift = C·reduced_bridge_map.
#[pyfunction]
fn bridge_scale(x: (f64, f64, f64), y: (f64, f64, f64), z: (f64, f64, f64)) -> f64 {
    geometry::bridge_scale(vec3(x), vec3(y), vec3(z))
}

/// Cosine of the angle between the Euclidean and lifted spherical key maps.
#[pyfunction]
fn bridge_gap(x: (f64, f64, f64), y: (f64, f64, f64), z: (f64, f64, f64)) -> PyResult<f64> {
    geometry::bridge_gap(vec3(x), vec3(y), vec3(z)).map_err(to_py_err)
}

/// Sample bridge_gap and the C-scaling identity over seeded random triples.
#[pyfunction]
#[pyo3(signature = (trials = 100_000, seed = 0))]
fn bridge_check(py: Python<'_>, trials: u64, seed: u64) -> PyResult<Bound<'_, PyDict>> {
    let summary = geometry::bridge_check(trials, seed);
    let dict = PyDict::new(py);
    dict.set_item("trials", summary.trials)?;
    dict.set_item("seed", summary.seed)?;
    dict.set_item("min_gap", summary.min_gap)?;
    dict.set_item("mean_gap", summary.mean_gap)?;
    dict.set_item("max_scale_rel_err", summary.max_scale_rel_err)?;
    Ok(dict)
}

/// Gauss-integral pairwise linking numbers (p, q, r) of the link.
#[pyfunction]
#[pyo3(signature = (link, samples = 512))]
fn pairwise_linking<'py>(
    py: Python<'py>,
    link: &PyLink3,
    samples: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let report = gauss::pairwise_report(&link.inner, samples).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    dict.set_item("raw", report.raw().to_vec())?;
    dict.set_item("rounded", report.rounded.to_vec())?;
    dict.set_item("residual", report.residual)?;
    Ok(dict)
}

/// Degree of the generalized Gauss map on the subtorus with `axis` ∈
/// {"s","t","u"} frozen at `fixed_value`.
#[pyfunction]
#[pyo3(signature = (link, axis, fixed_value = 0.0, grid = 128))]
fn subtorus_degree(link: &PyLink3, axis: &str, fixed_value: f64, grid: usize) -> PyResult<f64> {
    let axis: gauss::Axis = axis.parse().map_err(to_py_err)?;
    gauss::subtorus_degree(&link.inner, axis, fixed_value, grid).map_err(to_py_err)
}

/// Combined pairwise/degree report; raises if the two computations disagree.
#[pyfunction]
#[pyo3(signature = (link, samples = 512, grid = 128))]
fn invariant_report<'py>(
    py: Python<'py>,
    link: &PyLink3,
    samples: usize,
    grid: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let report = gauss::invariant_report(&link.inner, samples, grid).map_err(to_py_err)?;
    let dict = PyDict::new(py);
    dict.set_item("pairwise_raw", report.pairwise.raw().to_vec())?;
    dict.set_item("pairwise_rounded", report.pairwise.rounded.to_vec())?;
    dict.set_item("pairwise_residual", report.pairwise.residual)?;
    dict.set_item("degrees", report.degrees.to_vec())?;
    dict.set_item("degrees_rounded", report.degrees_rounded.to_vec())?;
    dict.set_item("degree_residual", report.degree_residual)?;
    dict.set_item("max_gap", report.max_gap)?;
    Ok(dict)
}

/// Triple linking number by the chosen method ("fourier", "whitehead",
/// "helicity" or "spherical"); requires p = q = r = 0.
#[pyfunction]
#[pyo3(signature = (link, method = "fourier", grid = 128, cutoff = None))]
fn mu(link: &PyLink3, method: &str, grid: usize, cutoff: Option<usize>) -> PyResult<f64> {
    let method: MuMethod = method.parse().map_err(to_py_err)?;
    spectral::compute_mu(&link.inner, method, grid, cutoff).map_err(to_py_err)
}

/// Fundamental solution of the torus Laplacian, truncated at |n|∞ ≤ cutoff.
#[pyfunction]
#[pyo3(signature = (x, cutoff = 15))]
fn phi(x: (f64, f64, f64), cutoff: usize) -> f64 {
    spectral::phi(vec3(x), cutoff)
}

/// Termwise gradient of the truncated fundamental solution.
#[pyfunction]
#[pyo3(signature = (x, cutoff = 15))]
fn grad_phi(x: (f64, f64, f64), cutoff: usize) -> (f64, f64, f64) {
    tuple(spectral::grad_phi(vec3(x), cutoff))
}

#[pymodule]
fn trilink_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLink3>()?;
    m.add_function(wrap_pyfunction!(key_map_e, m)?)?;
    m.add_function(wrap_pyfunction!(normalized_key_map_e, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_stereographic, m)?)?;
    m.add_function(wrap_pyfunction!(key_map_s, m)?)?;
    m.add_function(wrap_pyfunction!(based_lift, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_bridge_map, m)?)?;
    m.add_function(wrap_pyfunction!(bridge_scale, m)?)?;
    m.add_function(wrap_pyfunction!(bridge_gap, m)?)?;
    m.add_function(wrap_pyfunction!(bridge_check, m)?)?;
    m.add_function(wrap_pyfunction!(pairwise_linking, m)?)?;
    m.add_function(wrap_pyfunction!(subtorus_degree, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_report, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(grad_phi, m)?)?;
    Ok(())
}
