//! Python bindings. Field elements cross the boundary as strings ("2",
//! "t+1"), vectors as lists of strings, and certificates as plain dicts
//! mirroring the CLI JSON schema.

use lightcone::json as cert;
use lightcone::linalg::{Mat, Vect};
use lightcone::minkowski::{
    explicit_map, theorem_glavni_verdict, verify_rule, LorentzKind, MinkowskiSpace, RuleMode,
    DEFAULT_PAIR_BUDGET,
};
use lightcone::ovoid::{
    construction, generator_audit, ovoid_to_affine_indep, search_partial_ovoid,
    verify_partial_ovoid, OvoidCheck,
};
use lightcone::polar::{AffineGraph, CertKind, QuadricGraph};
use lightcone::spectrum::{
    canonical_form, core_verdict, hoffman_alpha_bound, spectrum_character,
    spectrum_character_analytic, spectrum_closed_form, spectrum_numeric_oracle,
};
use lightcone::{named_form, Elt, Field, FormKind, SymForm};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

fn err(e: lightcone::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn value_to_py(py: Python<'_>, v: &Value) -> PyObject {
    match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py(py),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py(py)
            } else if let Some(u) = n.as_u64() {
                u.into_py(py)
            } else {
                n.as_f64().unwrap().into_py(py)
            }
        }
        Value::String(s) => s.into_py(py),
        Value::Array(a) => {
            let items: Vec<PyObject> = a.iter().map(|x| value_to_py(py, x)).collect();
            PyList::new_bound(py, items).into_py(py)
        }
        Value::Object(o) => {
            let dict = PyDict::new_bound(py);
            for (k, val) in o {
                dict.set_item(k, value_to_py(py, val)).unwrap();
            }
            dict.into_py(py)
        }
    }
}

fn parse_kind(s: &str) -> PyResult<FormKind> {
    match s {
        "parabolic" => Ok(FormKind::Parabolic),
        "hyperbolic" => Ok(FormKind::Hyperbolic),
        "elliptic" => Ok(FormKind::Elliptic),
        other => Err(PyValueError::new_err(format!("unknown kind: {other}"))),
    }
}

#[pyclass(name = "Field")]
#[derive(Clone)]
struct PyField {
    inner: Field,
}

impl PyField {
    fn elt(&self, s: &str) -> PyResult<Elt> {
        self.inner.parse_elt(s).map_err(err)
    }

    fn vect(&self, v: Vec<String>) -> PyResult<Vect> {
        v.iter().map(|s| self.elt(s)).collect()
    }

    fn vect_out(&self, v: &[Elt]) -> Vec<String> {
        v.iter().map(|e| self.inner.format_elt(e)).collect()
    }
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, k = 1, modulus = None))]
    fn new(p: u64, k: usize, modulus: Option<Vec<u64>>) -> PyResult<Self> {
        Ok(PyField { inner: Field::new(p, k, modulus).map_err(err)? })
    }

    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    #[getter]
    fn spec(&self) -> String {
        self.inner.spec_string()
    }

    fn add(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.inner.format_elt(&self.inner.add(&self.elt(a)?, &self.elt(b)?)))
    }

    fn sub(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.inner.format_elt(&self.inner.sub(&self.elt(a)?, &self.elt(b)?)))
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.inner.format_elt(&self.inner.mul(&self.elt(a)?, &self.elt(b)?)))
    }

    fn inv(&self, a: &str) -> PyResult<String> {
        Ok(self.inner.format_elt(&self.inner.inv(&self.elt(a)?).map_err(err)?))
    }

    fn eta(&self, a: &str) -> PyResult<i32> {
        Ok(self.inner.eta(&self.elt(a)?))
    }

    fn trace(&self, a: &str) -> PyResult<u64> {
        Ok(self.inner.trace(&self.elt(a)?))
    }

    fn frobenius(&self, a: &str, j: usize) -> PyResult<String> {
        Ok(self.inner.format_elt(&self.inner.frobenius(&self.elt(a)?, j)))
    }

    fn nonsquare(&self) -> String {
        self.inner.format_elt(&self.inner.find_nonsquare())
    }

    fn two_square_decompose(&self, c: &str) -> PyResult<(String, String)> {
        let (a, b) = self.inner.two_square_decompose(&self.elt(c)?);
        Ok((self.inner.format_elt(&a), self.inner.format_elt(&b)))
    }

    fn elements(&self) -> Vec<String> {
        self.inner.elements().map(|e| self.inner.format_elt(&e)).collect()
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.inner.spec_string())
    }
}

#[pyclass(name = "Form")]
#[derive(Clone)]
struct PyForm {
    inner: SymForm,
}

#[pymethods]
impl PyForm {
    /// Named canonical form ("minkowski", "antidiag", "paper-5x5", ...).
    #[staticmethod]
    #[pyo3(signature = (field, name, n = None))]
    fn named(field: &PyField, name: &str, n: Option<usize>) -> PyResult<Self> {
        Ok(PyForm { inner: named_form(name, &field.inner, n).map_err(err)? })
    }

    /// Canonical form of a kind: "parabolic", "hyperbolic", "elliptic".
    #[staticmethod]
    fn canonical(field: &PyField, kind: &str, n: usize) -> PyResult<Self> {
        let kind = parse_kind(kind)?;
        Ok(PyForm { inner: canonical_form(kind, n, &field.inner).map_err(err)? })
    }

    #[staticmethod]
    fn from_matrix(field: &PyField, rows: Vec<Vec<String>>) -> PyResult<Self> {
        let f = &field.inner;
        let n = rows.len();
        let mut m = Mat::zero(f, n, n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(PyValueError::new_err("matrix must be square"));
            }
            for (c, s) in row.iter().enumerate() {
                m.set(r, c, f.parse_elt(s).map_err(err)?);
            }
        }
        Ok(PyForm { inner: SymForm::new(m).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn kind(&self) -> String {
        self.inner.classify().kind.to_string()
    }

    #[getter]
    fn witt_index(&self) -> usize {
        self.inner.classify().witt_index
    }

    #[getter]
    fn generator_size(&self) -> u64 {
        self.inner.classify().generator_size
    }

    #[getter]
    fn matrix(&self) -> Vec<Vec<String>> {
        let f = &self.inner.field;
        (0..self.inner.n)
            .map(|r| (0..self.inner.n).map(|c| f.format_elt(self.inner.a.get(r, c))).collect())
            .collect()
    }

    fn evaluate(&self, x: Vec<String>) -> PyResult<String> {
        let f = &self.inner.field;
        let v: Vect = x.iter().map(|s| f.parse_elt(s)).collect::<Result<_, _>>().map_err(err)?;
        Ok(f.format_elt(&self.inner.evaluate(&v).map_err(err)?))
    }

    fn is_isotropic(&self, x: Vec<String>) -> PyResult<bool> {
        let f = &self.inner.field;
        let v: Vect = x.iter().map(|s| f.parse_elt(s)).collect::<Result<_, _>>().map_err(err)?;
        Ok(self.inner.is_isotropic(&v))
    }

    fn isotropic_count(&self, b: &str) -> PyResult<u128> {
        let f = &self.inner.field;
        Ok(self.inner.isotropic_count(&f.parse_elt(b).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "Form(n={}, kind={}, field={})",
            self.inner.n,
            self.inner.classify().kind,
            self.inner.field.spec_string()
        )
    }
}

#[pyclass(name = "AffineGraph")]
struct PyAffineGraph {
    inner: AffineGraph,
    field: Field,
}

#[pymethods]
impl PyAffineGraph {
    #[new]
    fn new(form: &PyForm) -> Self {
        let field = form.inner.field.clone();
        PyAffineGraph { inner: AffineGraph::new(form.inner.clone()), field }
    }

    #[getter]
    fn graph_id(&self) -> String {
        self.inner.graph_id()
    }

    #[getter]
    fn vertex_count(&self) -> u64 {
        self.inner.vertex_count()
    }

    #[getter]
    fn valency(&self) -> u64 {
        self.inner.valency()
    }

    fn adjacent(&self, x: Vec<String>, y: Vec<String>) -> PyResult<bool> {
        let fx = PyField { inner: self.field.clone() };
        Ok(self.inner.adjacent(&fx.vect(x)?, &fx.vect(y)?))
    }

    fn max_clique(&self, py: Python<'_>) -> PyResult<PyObject> {
        let c = self.inner.max_clique().map_err(err)?;
        Ok(value_to_py(py, &cert::vertex_cert_json(&self.field, &c)))
    }

    #[pyo3(signature = (vertex_budget = 10_000, node_budget = 200_000_000))]
    fn exact_mis(&self, py: Python<'_>, vertex_budget: u64, node_budget: u64) -> PyResult<PyObject> {
        let c = self.inner.exact_mis(vertex_budget, node_budget).map_err(err)?;
        Ok(value_to_py(py, &cert::vertex_cert_json(&self.field, &c)))
    }

    fn is_independent_set(&self, pts: Vec<Vec<String>>) -> PyResult<bool> {
        let fx = PyField { inner: self.field.clone() };
        let pts: Vec<Vect> = pts.into_iter().map(|p| fx.vect(p)).collect::<PyResult<_>>()?;
        Ok(self.inner.verify_set(CertKind::Independent, &pts))
    }

    /// Exact spectrum: source is "closed", "character", "analytic" or "numeric".
    #[pyo3(signature = (source = "closed"))]
    fn spectrum(&self, py: Python<'_>, source: &str) -> PyResult<PyObject> {
        let form = &self.inner.form;
        let report = match source {
            "closed" => spectrum_closed_form(form.classify().kind, form.n, self.field.q()),
            "character" => spectrum_character(form, 100_000_000),
            "analytic" => spectrum_character_analytic(form),
            "numeric" => spectrum_numeric_oracle(form, 10_000),
            other => return Err(PyValueError::new_err(format!("unknown source: {other}"))),
        }
        .map_err(err)?;
        let mut v = cert::spectrum_json(&report);
        v["hoffman"] = match hoffman_alpha_bound(&report) {
            Ok((ratio, floor)) => serde_json::json!({
                "bound": ratio.to_string(),
                "floor": floor.to_string(),
            }),
            Err(_) => Value::Null,
        };
        Ok(value_to_py(py, &v))
    }

    #[pyo3(signature = (vertex_budget = 10_000, node_budget = 200_000_000))]
    fn core_verdict(&self, py: Python<'_>, vertex_budget: u64, node_budget: u64) -> PyResult<PyObject> {
        let report = core_verdict(&self.inner.form, vertex_budget, node_budget).map_err(err)?;
        Ok(value_to_py(py, &cert::core_report_json(&self.field, &report)))
    }
}

#[pyclass(name = "QuadricGraph")]
struct PyQuadricGraph {
    inner: QuadricGraph,
    field: Field,
}

#[pymethods]
impl PyQuadricGraph {
    #[new]
    fn new(form: &PyForm) -> Self {
        let field = form.inner.field.clone();
        PyQuadricGraph { inner: QuadricGraph::new(form.inner.clone()), field }
    }

    #[getter]
    fn graph_id(&self) -> String {
        self.inner.graph_id()
    }

    #[getter]
    fn point_count(&self) -> usize {
        self.inner.point_count()
    }

    fn points(&self) -> Vec<Vec<String>> {
        let fx = PyField { inner: self.field.clone() };
        self.inner.points.iter().map(|p| fx.vect_out(p)).collect()
    }

    #[pyo3(signature = (node_budget = 200_000_000))]
    fn search_ovoid(&self, py: Python<'_>, node_budget: u64) -> PyResult<PyObject> {
        let check = search_partial_ovoid(&self.inner, node_budget).map_err(err)?;
        self.check_to_py(py, check)
    }

    fn verify_ovoid(&self, py: Python<'_>, pts: Vec<Vec<String>>) -> PyResult<PyObject> {
        let fx = PyField { inner: self.field.clone() };
        let pts: Vec<Vect> = pts.into_iter().map(|p| fx.vect(p)).collect::<PyResult<_>>()?;
        let check = verify_partial_ovoid(&self.inner, &pts).map_err(err)?;
        self.check_to_py(py, check)
    }

    fn generator_audit(&self, pts: Vec<Vec<String>>) -> PyResult<Vec<usize>> {
        let fx = PyField { inner: self.field.clone() };
        let pts: Vec<Vect> = pts.into_iter().map(|p| fx.vect(p)).collect::<PyResult<_>>()?;
        generator_audit(&self.inner, &pts).map_err(err)
    }
}

impl PyQuadricGraph {
    fn check_to_py(&self, py: Python<'_>, check: OvoidCheck) -> PyResult<PyObject> {
        let v = match check {
            OvoidCheck::Ovoid(c) => {
                let mut v = cert::ovoid_cert_json(&self.field, &c);
                v["status"] = Value::String("ovoid".into());
                v
            }
            OvoidCheck::Partial(p) => serde_json::json!({
                "status": "partial",
                "quadric": p.quadric,
                "size": p.size,
                "points": cert::points_json(&self.field, &p.points),
            }),
        };
        Ok(value_to_py(py, &v))
    }
}

#[pyclass(name = "Minkowski")]
struct PyMinkowski {
    inner: MinkowskiSpace,
}

#[pymethods]
impl PyMinkowski {
    #[new]
    fn new(field: &PyField, n: usize) -> PyResult<Self> {
        Ok(PyMinkowski { inner: MinkowskiSpace::new(&field.inner, n).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn graph_kind(&self) -> String {
        self.inner.graph_kind.to_string()
    }

    fn inner_product(&self, x: Vec<String>, y: Vec<String>) -> PyResult<String> {
        let fx = PyField { inner: self.inner.field.clone() };
        let v = self.inner.inner(&fx.vect(x)?, &fx.vect(y)?).map_err(err)?;
        Ok(self.inner.field.format_elt(&v))
    }

    fn is_lightlike(&self, x: Vec<String>, y: Vec<String>) -> PyResult<bool> {
        let fx = PyField { inner: self.inner.field.clone() };
        Ok(self.inner.is_lightlike(&fx.vect(x)?, &fx.vect(y)?))
    }

    fn make_anti_lorentz(&self) -> PyResult<Vec<Vec<String>>> {
        let k = self.inner.make_anti_lorentz().map_err(err)?;
        let f = &self.inner.field;
        Ok((0..k.rows)
            .map(|r| (0..k.cols).map(|c| f.format_elt(k.get(r, c))).collect())
            .collect())
    }

    fn lorentz_check(&self, rows: Vec<Vec<String>>) -> PyResult<String> {
        let f = &self.inner.field;
        let n = rows.len();
        let mut m = Mat::zero(f, n, n);
        for (r, row) in rows.iter().enumerate() {
            for (c, s) in row.iter().enumerate() {
                m.set(r, c, f.parse_elt(s).map_err(err)?);
            }
        }
        Ok(match self.inner.lorentz_check(&m) {
            LorentzKind::Lorentz => "lorentz".into(),
            LorentzKind::AntiLorentz => "anti_lorentz".into(),
            LorentzKind::Neither => "neither".into(),
        })
    }

    fn theorem_verdict(&self, py: Python<'_>) -> PyResult<PyObject> {
        let v = theorem_glavni_verdict(&self.inner).map_err(err)?;
        Ok(value_to_py(py, &cert::glavni_json(&v)))
    }
}

#[pyclass(name = "LightMap")]
struct PyLightMap {
    inner: lightcone::minkowski::LightMap,
}

#[pymethods]
impl PyLightMap {
    /// Named example map: dim2 | dim3 | exa5 | dim6_thas | dim6_kantor.
    #[staticmethod]
    fn example(field: &PyField, name: &str) -> PyResult<Self> {
        Ok(PyLightMap { inner: explicit_map(name, &field.inner).map_err(err)? })
    }

    fn apply(&self, x: Vec<String>) -> PyResult<Vec<String>> {
        let fx = PyField { inner: self.inner.space.field.clone() };
        Ok(fx.vect_out(&self.inner.apply(&fx.vect(x)?)))
    }

    /// Verify the light-cone rule; mode is "exhaustive" or "sampled".
    #[pyo3(signature = (mode = "exhaustive", count = 100_000, seed = 0))]
    fn verify(&self, py: Python<'_>, mode: &str, count: u64, seed: u64) -> PyResult<PyObject> {
        let rule_mode = match mode {
            "exhaustive" => RuleMode::Exhaustive,
            "sampled" => RuleMode::Sampled { count, seed },
            other => return Err(PyValueError::new_err(format!("unknown mode: {other}"))),
        };
        let report = verify_rule(
            &self.inner.space,
            &|v| self.inner.apply(v),
            rule_mode,
            DEFAULT_PAIR_BUDGET,
        )
        .map_err(err)?;
        Ok(value_to_py(py, &cert::rule_report_json(&self.inner.space.field, &report)))
    }
}

/// Build a named ovoid construction; returns (Form, points).
#[pyfunction]
fn construct_ovoid(py: Python<'_>, field: &PyField, name: &str) -> PyResult<(PyForm, PyObject)> {
    let (form, pts) = construction(name, &field.inner).map_err(err)?;
    let pts_py = value_to_py(py, &cert::points_json(&field.inner, &pts));
    Ok((PyForm { inner: form }, pts_py))
}

/// Transfer an ovoid of an antidiagonal quadric into affine independent sets.
#[pyfunction]
fn transfer_ovoid(py: Python<'_>, form: &PyForm, pts: Vec<Vec<String>>) -> PyResult<PyObject> {
    let f = &form.inner.field;
    let fx = PyField { inner: f.clone() };
    let pts: Vec<Vect> = pts.into_iter().map(|p| fx.vect(p)).collect::<PyResult<_>>()?;
    let t = ovoid_to_affine_indep(&form.inner, &pts).map_err(err)?;
    Ok(value_to_py(py, &cert::transfer_json(f, &t)))
}

#[pymodule]
fn lightcone_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyForm>()?;
    m.add_class::<PyAffineGraph>()?;
    m.add_class::<PyQuadricGraph>()?;
    m.add_class::<PyMinkowski>()?;
    m.add_class::<PyLightMap>()?;
    m.add_function(wrap_pyfunction!(construct_ovoid, m)?)?;
    m.add_function(wrap_pyfunction!(transfer_ovoid, m)?)?;
    Ok(())
}
