//! Python bindings: rings, polynomials, ideals, rational divisors and the
//! claim verifiers. Reports cross the boundary as JSON strings.

use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use fregcheck::algebra::{parse_polynomial, CoefficientField, MonomialOrder, Polynomial, Ring, RingSignature};
use fregcheck::cli::{status_of, verify_claim, Params, EXIT_INVALID_INSTANCE, EXIT_USAGE};
use fregcheck::family::report::CLAIMS;
use fregcheck::fsing::DEFAULT_E_MAX;
use fregcheck::groebner::{default_order, Engine, Ideal, DEFAULT_BUDGET};
use fregcheck::family::verify::DEFAULT_Q_WINDOW;
use fregcheck::qdiv::{self, QDivisor};
use fregcheck::Error;

create_exception!(pyfregcheck, FregcheckError, PyRuntimeError);

fn py_err(e: Error) -> PyErr {
    match status_of(&e) {
        EXIT_USAGE | EXIT_INVALID_INSTANCE => PyValueError::new_err(e.to_string()),
        _ => FregcheckError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for fregcheck::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// A weighted polynomial ring over F_p (or Q when `p` is omitted).
#[pyclass(name = "Ring", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyRing(Ring);

#[pymethods]
impl PyRing {
    #[new]
    #[pyo3(signature = (variables, weights=None, p=None))]
    fn new(variables: Vec<String>, weights: Option<Vec<u32>>, p: Option<u64>) -> PyResult<Self> {
        let field = match p {
            Some(p) => CoefficientField::prime(p).py()?,
            None => CoefficientField::Rationals,
        };
        let weights = weights.unwrap_or_else(|| vec![1; variables.len()]);
        Ok(PyRing(RingSignature::new(&variables, &weights, field).py()?))
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.0.names().to_vec()
    }

    #[getter]
    fn weights(&self) -> Vec<u32> {
        self.0.weights().to_vec()
    }

    /// The characteristic; 0 for the rationals.
    #[getter]
    fn characteristic(&self) -> u32 {
        self.0.field().characteristic()
    }

    fn parse(&self, text: &str) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial(parse_polynomial(text, &self.0).py()?))
    }

    fn ideal(&self, generators: Vec<String>) -> PyResult<PyIdeal> {
        Ok(PyIdeal(Ideal::parse(&self.0, &generators).py()?))
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?}, weights={:?}, p={})", self.0.names(), self.0.weights(), self.0.field().characteristic())
    }
}

#[pyclass(name = "Polynomial", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyPolynomial(Polynomial);

#[pymethods]
impl PyPolynomial {
    #[getter]
    fn ring(&self) -> PyRing {
        PyRing(self.0.ring().clone())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_homogeneous(&self) -> bool {
        self.0.is_homogeneous()
    }

    /// Weighted degree of the leading form; raises on the zero polynomial.
    fn degree(&self) -> PyResult<u64> {
        Ok(self.0.weighted_degree().py()?.0)
    }

    fn __add__(&self, other: &PyPolynomial) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial(self.0.try_add(&other.0).py()?))
    }

    fn __sub__(&self, other: &PyPolynomial) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial(self.0.try_sub(&other.0).py()?))
    }

    fn __mul__(&self, other: &PyPolynomial) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial(self.0.try_mul(&other.0).py()?))
    }

    fn __pow__(&self, k: u64, modulo: Option<Py<PyAny>>) -> PyResult<PyPolynomial> {
        if modulo.is_some() {
            return Err(PyValueError::new_err("modular powers are not supported"));
        }
        Ok(PyPolynomial(self.0.pow(k).py()?))
    }

    fn __eq__(&self, other: &PyPolynomial) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?})", self.0.to_string())
    }
}

/// Either a polynomial object or its text, parsed in the ideal's ring.
#[derive(FromPyObject)]
enum PolyArg {
    Poly(PyPolynomial),
    Text(String),
}

impl PolyArg {
    fn resolve(self, ring: &Ring) -> PyResult<Polynomial> {
        match self {
            PolyArg::Poly(p) => Ok(p.0),
            PolyArg::Text(s) => parse_polynomial(&s, ring).py(),
        }
    }
}

fn order_named(name: &str, ring: &Ring) -> PyResult<MonomialOrder> {
    match name {
        "lex" => Ok(MonomialOrder::Lex),
        "grevlex" => Ok(MonomialOrder::GrevLex),
        "wgrevlex" => Ok(default_order(ring)),
        o => Err(PyValueError::new_err(format!("unknown order `{o}`"))),
    }
}

#[pyclass(name = "Ideal", frozen)]
pub struct PyIdeal(Ideal);

#[pymethods]
impl PyIdeal {
    #[getter]
    fn ring(&self) -> PyRing {
        PyRing(self.0.ring().clone())
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.0.generator_strings()
    }

    /// Reduced Groebner basis as strings.
    #[pyo3(signature = (order="wgrevlex", budget=DEFAULT_BUDGET))]
    fn groebner_basis(&self, py: Python<'_>, order: &str, budget: u64) -> PyResult<Vec<String>> {
        let order = order_named(order, self.0.ring())?;
        let gb = py.detach(|| Engine::new(budget).groebner(&self.0, &order)).py()?;
        Ok(gb.basis().iter().map(ToString::to_string).collect())
    }

    #[pyo3(signature = (f, budget=DEFAULT_BUDGET))]
    fn contains(&self, py: Python<'_>, f: PolyArg, budget: u64) -> PyResult<bool> {
        let f = f.resolve(self.0.ring())?;
        py.detach(|| Engine::new(budget).ideal_member(&f, &self.0)).py()
    }

    #[pyo3(signature = (f, budget=DEFAULT_BUDGET))]
    fn normal_form(&self, py: Python<'_>, f: PolyArg, budget: u64) -> PyResult<String> {
        let f = f.resolve(self.0.ring())?;
        let engine = Engine::new(budget);
        let nf = py
            .detach(|| {
                let gb = engine.groebner(&self.0, &default_order(self.0.ring()))?;
                engine.normal_form(&f, &gb)
            })
            .py()?;
        Ok(nf.to_string())
    }

    #[pyo3(signature = (budget=DEFAULT_BUDGET))]
    fn dimension(&self, py: Python<'_>, budget: u64) -> PyResult<usize> {
        py.detach(|| Engine::new(budget).krull_dimension(&self.0)).py()
    }

    #[pyo3(signature = (up_to, budget=DEFAULT_BUDGET))]
    fn hilbert_function(&self, py: Python<'_>, up_to: u64, budget: u64) -> PyResult<Vec<u64>> {
        py.detach(|| Engine::new(budget).hilbert_function(&self.0, up_to)).py()
    }

    fn __repr__(&self) -> String {
        format!("Ideal({:?})", self.0.generator_strings())
    }
}

/// A Q-divisor on the projective line, written like "1/2@VX, 1/2@VY, 1/4@VXY".
#[pyclass(name = "QDivisor", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyQDivisor(QDivisor);

#[pymethods]
impl PyQDivisor {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyQDivisor(text.parse::<QDivisor>().py()?))
    }

    /// The divisor attached to the quotient with parameter `n`.
    #[staticmethod]
    fn standard(n: u32) -> Self {
        PyQDivisor(QDivisor::standard(n))
    }

    /// Degree as an exact fraction string such as "1/4".
    #[getter]
    fn degree(&self) -> String {
        self.0.degree().to_string()
    }

    fn coefficient(&self, label: &str) -> String {
        self.0.coefficient(label).to_string()
    }

    fn floor(&self) -> Self {
        PyQDivisor(self.0.floor())
    }

    fn floor_degree(&self) -> PyResult<i64> {
        self.0.floor_degree().py()
    }

    fn h0(&self) -> PyResult<u64> {
        self.0.h0().py()
    }

    fn h1(&self) -> PyResult<u64> {
        self.0.h1().py()
    }

    /// `h0(iE)` for `i = 0..=up_to`; the divisor must have positive degree.
    fn section_dims(&self, up_to: u64) -> PyResult<Vec<u64>> {
        qdiv::section_dims(&self.0, up_to).py()
    }

    fn __add__(&self, other: &PyQDivisor) -> Self {
        PyQDivisor(self.0.add(&other.0))
    }

    fn __neg__(&self) -> Self {
        PyQDivisor(self.0.neg())
    }

    fn __mul__(&self, k: i64) -> Self {
        PyQDivisor(self.0.scale(&BigRational::from_integer(k.into())))
    }

    fn __eq__(&self, other: &PyQDivisor) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QDivisor({:?})", self.0.to_string())
    }
}

/// Verifies one claim and returns the list of reports as JSON.
#[pyfunction]
#[pyo3(signature = (claim, p=None, m=None, n=None, k=None, e_max=DEFAULT_E_MAX, q_window=DEFAULT_Q_WINDOW, up_to=20, primes=Vec::new(), budget=DEFAULT_BUDGET))]
#[allow(clippy::too_many_arguments)]
fn verify(
    py: Python<'_>,
    claim: &str,
    p: Option<u64>,
    m: Option<u32>,
    n: Option<u32>,
    k: Option<u32>,
    e_max: u32,
    q_window: u64,
    up_to: u64,
    primes: Vec<u64>,
    budget: u64,
) -> PyResult<String> {
    let params = Params {
        p,
        m,
        n,
        k,
        e_max,
        q_window,
        up_to,
        primes,
    };
    let reports = py.detach(|| verify_claim(&Engine::new(budget), claim, &params)).py()?;
    Ok(serde_json::to_string_pretty(&reports).expect("reports serialize"))
}

/// Prime sweep over `primes` for the family with parameters `m`, `n`.
#[pyfunction]
#[pyo3(signature = (m, n, primes, e_max=DEFAULT_E_MAX, q_window=DEFAULT_Q_WINDOW, budget=DEFAULT_BUDGET))]
fn sweep(py: Python<'_>, m: u32, n: u32, primes: Vec<u64>, e_max: u32, q_window: u64, budget: u64) -> PyResult<String> {
    verify(py, fregcheck::family::report::SWEEP, None, Some(m), Some(n), None, e_max, q_window, 20, primes, budget)
}

/// The claim catalog as JSON.
#[pyfunction]
fn list_claims() -> String {
    serde_json::to_string_pretty(&CLAIMS).expect("catalog serializes")
}

#[pymodule]
fn pyfregcheck(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}

/// Adds every class and function to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyIdeal>()?;
    m.add_class::<PyQDivisor>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(list_claims, m)?)?;
    m.add("FregcheckError", m.py().get_type::<FregcheckError>())?;
    Ok(())
}
