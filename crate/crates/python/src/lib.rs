//! Python bindings for the `macwt` bounds: Gaussian regions, optimal power
//! control, discrete information quantities and searches, and the exact
//! rational check of the hybrid region.

use macwt::channels::{info_quantities as core_info_quantities, GaussianMacWt, InputFactorization, MacWiretapKernel};
use macwt::discrete::{search_inner, search_outer, BoundKind, SearchConfig};
use macwt::fm::{verify_hybrid_region as core_verify, Rational, RateConstants};
use macwt::info::FiniteDist;
use macwt::power::{NoiseVariances, PowerControlResult};
use macwt::regions::RateRegion2D;
use macwt::{gaussian, info, power, Error};
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Consistency(_) => PyRuntimeError::new_err(e.to_string()),
        Error::Io(_) => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn dist(mass: Vec<f64>) -> PyResult<FiniteDist> {
    FiniteDist::new(mass).map_err(py_err)
}

fn rows(mass: Vec<Vec<f64>>) -> PyResult<Vec<FiniteDist>> {
    mass.into_iter().map(dist).collect()
}

fn gaussian_channel(p1: f64, p2: f64, sigma1_sq: f64, sigma2_sq: f64) -> PyResult<GaussianMacWt> {
    GaussianMacWt::new(p1, p2, sigma1_sq, sigma2_sq).map_err(py_err)
}

fn noise(sigma1_sq: f64, sigma2_sq: f64) -> PyResult<NoiseVariances> {
    NoiseVariances::new(sigma1_sq, sigma2_sq).map_err(py_err)
}

fn power_dict<'py>(py: Python<'py>, r: &PowerControlResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("p1_star", r.p1_star)?;
    d.set_item("p2_star", r.p2_star)?;
    d.set_item("r_sum_star", r.r_sum_star)?;
    d.set_item("regime", r.regime.as_str())?;
    d.set_item("threshold", r.threshold)?;
    Ok(d)
}

fn parse_rational(text: &str) -> PyResult<Rational> {
    text.trim().parse::<Rational>().map_err(|e| PyValueError::new_err(format!("{text:?} is not a rational: {e}")))
}

/// Two-dimensional rate region in bits per channel use.
#[pyclass(name = "RateRegion", module = "macwt_py", frozen)]
struct PyRateRegion {
    inner: RateRegion2D,
}

#[pymethods]
impl PyRateRegion {
    /// Corner points in counterclockwise order, starting at the origin.
    #[getter]
    fn vertices(&self) -> Vec<(f64, f64)> {
        self.inner.vertices().iter().map(|v| (v[0] + 0.0, v[1] + 0.0)).collect()
    }

    /// Constraints `a R1 + b R2 <= c` as `(a, b, c)` triples.
    #[getter]
    fn halfspaces(&self) -> Vec<(f64, f64, f64)> {
        self.inner.halfspaces().iter().map(|h| (h.coeff_r1, h.coeff_r2, h.bound)).collect()
    }

    #[getter]
    fn max_sum_rate(&self) -> f64 {
        self.inner.max_sum_rate()
    }

    #[getter]
    fn is_degenerate(&self) -> bool {
        self.inner.is_degenerate()
    }

    fn contains(&self, r1: f64, r2: f64) -> bool {
        self.inner.contains(&[r1, r2])
    }

    fn is_subset_of(&self, other: &PyRateRegion) -> bool {
        self.inner.is_subset_of(&other.inner)
    }

    /// `count` points spaced by arc length along the dominant face.
    #[pyo3(signature = (count = 101))]
    fn boundary_samples(&self, count: usize) -> Vec<(f64, f64)> {
        self.inner.boundary_samples(count).into_iter().map(|p| (p[0] + 0.0, p[1] + 0.0)).collect()
    }

    fn __repr__(&self) -> String {
        format!("RateRegion(vertices={:?})", self.vertices())
    }
}

fn wrap(inner: RateRegion2D) -> PyRateRegion {
    PyRateRegion { inner }
}

/// Shannon entropy in bits of a probability vector.
#[pyfunction]
fn entropy(mass: Vec<f64>) -> PyResult<f64> {
    Ok(info::entropy(&dist(mass)?))
}

#[pyfunction]
fn binary_entropy(p: f64) -> f64 {
    info::binary_entropy(p)
}

#[pyfunction]
fn gaussian_df_region(p1: f64, p2: f64, sigma1_sq: f64, sigma2_sq: f64) -> PyResult<PyRateRegion> {
    gaussian::gaussian_df_region(&gaussian_channel(p1, p2, sigma1_sq, sigma2_sq)?).map(wrap).map_err(py_err)
}

/// Returns `(region, key_term, negative_key_term)`.
#[pyfunction]
fn gaussian_hybrid_region(p1: f64, p2: f64, sigma1_sq: f64, sigma2_sq: f64) -> PyResult<(PyRateRegion, f64, bool)> {
    let h = gaussian::gaussian_hybrid_region(&gaussian_channel(p1, p2, sigma1_sq, sigma2_sq)?).map_err(py_err)?;
    Ok((wrap(h.region), h.key_term, h.negative_key_term))
}

#[pyfunction]
fn gaussian_outer_region(p1: f64, p2: f64, sigma1_sq: f64, sigma2_sq: f64) -> PyResult<PyRateRegion> {
    gaussian::gaussian_outer_region(&gaussian_channel(p1, p2, sigma1_sq, sigma2_sq)?).map(wrap).map_err(py_err)
}

#[pyfunction]
fn gaussian_outer_sum(p1: f64, p2: f64, sigma1_sq: f64, sigma2_sq: f64) -> PyResult<f64> {
    gaussian::gaussian_outer_sum(&gaussian_channel(p1, p2, sigma1_sq, sigma2_sq)?).map_err(py_err)
}

#[pyfunction]
fn tekin_yener_region(p1: f64, p2: f64, sigma1_sq: f64, sigma2_sq: f64) -> PyResult<PyRateRegion> {
    gaussian::tekin_yener_region(&gaussian_channel(p1, p2, sigma1_sq, sigma2_sq)?).map(wrap).map_err(py_err)
}

/// Hybrid sum rate at powers `(p1, p2)`.
#[pyfunction]
fn sum_rate(p1: f64, p2: f64, sigma1_sq: f64, sigma2_sq: f64) -> PyResult<f64> {
    power::sum_rate(p1, p2, &noise(sigma1_sq, sigma2_sq)?).map_err(py_err)
}

#[pyfunction]
fn optimal_power<'py>(py: Python<'py>, cap: f64, sigma1_sq: f64, sigma2_sq: f64) -> PyResult<Bound<'py, PyDict>> {
    let r = power::optimal_power(cap, &noise(sigma1_sq, sigma2_sq)?).map_err(py_err)?;
    power_dict(py, &r)
}

/// One dictionary per cap, with the cap under key `P`.
#[pyfunction]
fn power_sweep<'py>(
    py: Python<'py>,
    p_max: f64,
    steps: usize,
    sigma1_sq: f64,
    sigma2_sq: f64,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let rows = power::sweep(p_max, steps, &noise(sigma1_sq, sigma2_sq)?).map_err(py_err)?;
    rows.iter()
        .map(|row| {
            let d = power_dict(py, &row.result)?;
            d.set_item("P", row.cap)?;
            Ok(d)
        })
        .collect()
}

/// Discrete MAC wiretap kernel `P(y, z | x1, x2)`.
#[pyclass(name = "Kernel", module = "macwt_py", frozen)]
struct PyKernel {
    inner: MacWiretapKernel,
}

#[pymethods]
impl PyKernel {
    /// `sizes = [|X1|, |X2|, |Y|, |Z|]`; `transition` is row-major over
    /// `(x1, x2, y, z)`.
    #[new]
    fn new(sizes: [usize; 4], transition: Vec<f64>) -> PyResult<Self> {
        MacWiretapKernel::new(sizes, transition).map(|inner| Self { inner }).map_err(py_err)
    }

    /// Parses the JSON channel-file format used by the command line tool.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        MacWiretapKernel::from_json_str(text).map(|inner| Self { inner }).map_err(py_err)
    }

    #[getter]
    fn sizes(&self) -> [usize; 4] {
        self.inner.sizes()
    }

    /// Returns the dictionary `{a, b, c, d, e, h_y_given_z}` for the input
    /// law `P(u) P(x1|u) P(x2|u)`.
    fn info_quantities<'py>(
        &self,
        py: Python<'py>,
        p_u: Vec<f64>,
        p_x1_given_u: Vec<Vec<f64>>,
        p_x2_given_u: Vec<Vec<f64>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let input = InputFactorization::new(dist(p_u)?, rows(p_x1_given_u)?, rows(p_x2_given_u)?).map_err(py_err)?;
        let q = core_info_quantities(&self.inner, &input).map_err(py_err)?;
        let d = PyDict::new(py);
        for (k, v) in [("a", q.a), ("b", q.b), ("c", q.c), ("d", q.d), ("e", q.e), ("h_y_given_z", q.h_y_given_z)] {
            d.set_item(k, v)?;
        }
        Ok(d)
    }

    /// Seeded search for the `df`, `hybrid` or `mac` inner region, or the
    /// `outer` sum-rate bound.
    #[allow(clippy::too_many_arguments)]
    #[pyo3(signature = (bound, seed = 0, restarts = 64, u_max = 4, iterations = 200, hull = true))]
    fn region(
        &self,
        py: Python<'_>,
        bound: &str,
        seed: u64,
        restarts: usize,
        u_max: usize,
        iterations: usize,
        hull: bool,
    ) -> PyResult<PyRateRegion> {
        let config = SearchConfig {
            u_cardinality_max: u_max,
            restarts,
            refinement_iterations: iterations,
            seed,
            hull,
            ..SearchConfig::default()
        };
        let kind = match bound {
            "df" => Some(BoundKind::Df),
            "hybrid" => Some(BoundKind::Hybrid),
            "mac" => Some(BoundKind::Mac),
            "outer" => None,
            other => return Err(PyValueError::new_err(format!("unknown bound {other:?} for a discrete channel"))),
        };
        let kernel = &self.inner;
        let region = py.detach(|| match kind {
            Some(k) => search_inner(kernel, k, &config).map(|s| s.best_region()),
            None => search_outer(kernel, &config).map(|s| s.region()),
        });
        region.map(wrap).map_err(py_err)
    }
}

/// Exact check that eliminating the rate-splitting variables reproduces the
/// closed-form hybrid region. Constants are rational strings such as `"3/4"`.
/// Returns `(agree, projected_vertices, closed_form_vertices)` with vertex
/// coordinates as rational strings.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn verify_hybrid_region(
    a: &str,
    b: &str,
    c: &str,
    d: &str,
    e: &str,
) -> PyResult<(bool, Vec<(String, String)>, Vec<(String, String)>)> {
    let k = RateConstants::new(parse_rational(a)?, parse_rational(b)?, parse_rational(c)?, parse_rational(d)?, parse_rational(e)?)
        .map_err(py_err)?;
    let check = core_verify(&k);
    let strings = |vs: &[[Rational; 2]]| vs.iter().map(|v| (v[0].to_string(), v[1].to_string())).collect();
    Ok((check.verdict, strings(check.projected.vertices()), strings(check.closed_form.vertices())))
}

#[pymodule]
fn macwt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRateRegion>()?;
    m.add_class::<PyKernel>()?;
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    m.add_function(wrap_pyfunction!(binary_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_df_region, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_hybrid_region, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_outer_region, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_outer_sum, m)?)?;
    m.add_function(wrap_pyfunction!(tekin_yener_region, m)?)?;
    m.add_function(wrap_pyfunction!(sum_rate, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_power, m)?)?;
    m.add_function(wrap_pyfunction!(power_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hybrid_region, m)?)?;
    Ok(())
}
