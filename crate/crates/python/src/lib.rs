use curvehull::curve::{parse_curve_spec, to_projective, CurveSpec, ProjectiveCurve};
use curvehull::degrees::{report, CurveInvariants};
use curvehull::edgesurface::{self, EdgeOptions, Route};
use curvehull::tritangent::{self, ChowResult};
use curvehull::Error;
use pyo3::exceptions::{PyRuntimeError, PyTimeoutError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::ResourceLimit(_) => PyTimeoutError::new_err(e.to_string()),
        Error::Parse { .. }
        | Error::Invalid(_)
        | Error::InvalidProfile(_)
        | Error::DegreeMismatch { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// A rational space curve given by four binary forms.
#[pyclass(frozen)]
struct Curve {
    inner: ProjectiveCurve,
}

#[pymethods]
impl Curve {
    /// Binary forms in `x0, x1`, e.g. `["x0^4 + x1^4", ...]`.
    #[new]
    fn new(forms: [String; 4]) -> PyResult<Self> {
        let texts = [&*forms[0], &*forms[1], &*forms[2], &*forms[3]];
        let inner = ProjectiveCurve::parse(texts).map_err(py_err)?;
        Ok(Curve { inner })
    }

    /// Parse a JSON curve specification (trigonometric or binary forms).
    #[staticmethod]
    fn from_spec(json: &str) -> PyResult<Self> {
        let inner = match parse_curve_spec(json).map_err(py_err)? {
            CurveSpec::Trigonometric(t) => to_projective(&t).map_err(py_err)?,
            CurveSpec::BinaryForms(c) => c,
            CurveSpec::QuadricPencil(_) => {
                return Err(PyValueError::new_err(
                    "a quadric pencil is not a rational curve; use pencil_edge_surface",
                ))
            }
        };
        Ok(Curve { inner })
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn forms(&self) -> Vec<String> {
        self.inner.forms().iter().map(|f| f.to_string()).collect()
    }

    /// Secant coordinates `u01, u02, u03, u12, u13, u23` in `a, b, c`.
    fn secant_coordinates(&self) -> PyResult<Vec<String>> {
        let s = edgesurface::secant_coordinates(&self.inner).map_err(py_err)?;
        Ok(s.u.iter().map(|u| u.to_string()).collect())
    }

    fn stationary_form(&self) -> PyResult<String> {
        Ok(edgesurface::stationary_form(&self.inner)
            .map_err(py_err)?
            .to_string())
    }

    /// One dict per factor of the stationary form, plus failures.
    #[pyo3(signature = (route = "grassmannian", max_pairs = 2_000_000, time_limit = None))]
    fn edge_surface<'py>(
        &self,
        py: Python<'py>,
        route: &str,
        max_pairs: usize,
        time_limit: Option<f64>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let route: Route = route.parse().map_err(py_err)?;
        let mut opts = EdgeOptions {
            route,
            ..Default::default()
        };
        opts.gb.max_pairs = max_pairs;
        opts.gb.time_limit = time_limit.map(std::time::Duration::from_secs_f64);
        let es = py
            .detach(|| edgesurface::edge_components(&self.inner, &opts))
            .map_err(py_err)?;
        let out = PyDict::new(py);
        out.set_item("phi", es.phi.to_string())?;
        let mut comps = Vec::new();
        for c in &es.components {
            let d = PyDict::new(py);
            d.set_item("phi_factor", c.phi_factor.to_string())?;
            d.set_item("surface", c.surface.to_string())?;
            d.set_item("degree", c.degree)?;
            d.set_item("reduced", c.reduced)?;
            comps.push(d);
        }
        out.set_item("components", comps)?;
        let failures: Vec<(String, String)> = es
            .failures
            .iter()
            .map(|(f, e)| (f.to_string(), e.to_string()))
            .collect();
        out.set_item("failures", failures)?;
        Ok(out)
    }

    /// Chow form of the tritangent planes of a sextic, or the generators of
    /// the plane family when it is positive-dimensional.
    fn tritangent_chow<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = self.inner.degree();
        let r = py
            .detach(|| {
                let p = tritangent::squares_ideal(d)?;
                tritangent::chow_form(&tritangent::tritangent_ideal(&self.inner, &p)?)
            })
            .map_err(py_err)?;
        let out = PyDict::new(py);
        match r {
            ChowResult::Form(f) => {
                out.set_item("positive_dimensional", false)?;
                out.set_item("form", f.to_string())?;
            }
            ChowResult::PositiveDimensional(i) => {
                out.set_item("positive_dimensional", true)?;
                let gens: Vec<String> = i.generators().iter().map(|g| g.to_string()).collect();
                out.set_item("generators", gens)?;
            }
        }
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!("Curve(degree={})", self.inner.degree())
    }
}

/// Generators of the ideal of squares among binary forms of degree `d`.
#[pyfunction]
fn squares_ideal(py: Python<'_>, d: u32) -> PyResult<Vec<String>> {
    let p = py.detach(|| tritangent::squares_ideal(d)).map_err(py_err)?;
    Ok(p.generators().iter().map(|g| g.to_string()).collect())
}

/// Degree formulas for a curve of degree `d`, genus `g`, with `n` nodes and
/// `k` cusps.
#[pyfunction]
#[pyo3(signature = (d, g = 0, n = 0, k = 0))]
fn degrees<'py>(py: Python<'py>, d: i64, g: i64, n: i64, k: i64) -> PyResult<Bound<'py, PyDict>> {
    let r = report(&CurveInvariants::new(d, g, n, k).map_err(py_err)?).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("edge_degree", r.edge_degree)?;
    out.set_item("tritangent_count", r.tritangent_count)?;
    out.set_item("dual_degree", r.dual_degree)?;
    out.set_item("stalls", r.stalls)?;
    out.set_item("multiplicity_along_curve", r.multiplicity_along_curve)?;
    out.set_item("cuspidal_edge_degree", r.cuspidal_edge_degree)?;
    out.set_item("double_curve_degree", r.double_curve_degree)?;
    out.set_item("bisecant_curve_genus", r.bisecant_curve_genus)?;
    out.set_item("cusp_cone_degree", r.cusp_cone_degree)?;
    Ok(out)
}

/// Edge surface of the intersection curve of a pencil of quadrics, from a
/// JSON pencil specification.
#[pyfunction]
fn pencil_edge_surface(json: &str) -> PyResult<String> {
    match parse_curve_spec(json).map_err(py_err)? {
        CurveSpec::QuadricPencil(p) => Ok(edgesurface::pencil_edge_surface(&p)
            .map_err(py_err)?
            .to_string()),
        _ => Err(PyValueError::new_err(
            "expected a quadric pencil specification",
        )),
    }
}

#[pymodule]
fn curvehull_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Curve>()?;
    m.add_function(wrap_pyfunction!(squares_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(degrees, m)?)?;
    m.add_function(wrap_pyfunction!(pencil_edge_surface, m)?)?;
    Ok(())
}
