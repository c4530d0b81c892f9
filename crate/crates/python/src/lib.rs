//! Python bindings: states, layers, canonical forms and the equivalence check.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use luq_core::random::{fixture, Fixture, FixtureKind};
use luq_core::{Mat2, Unitary2, C64};

create_exception!(luq, LuqError, PyValueError);

fn err(e: luq_core::LuError) -> PyErr {
    LuqError::new_err(e.to_string())
}

fn mat_rows(m: &Mat2) -> [[C64; 2]; 2] {
    [[m.get(0, 0), m.get(0, 1)], [m.get(1, 0), m.get(1, 1)]]
}

/// Normalized n-qubit pure state; qubit 0 is the most significant bit.
#[pyclass(module = "luq", name = "PureState", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPureState(luq_core::PureState);

#[pymethods]
impl PyPureState {
    /// Amplitudes must have length 2^n; they are normalized on construction
    /// when `normalize` is true.
    #[new]
    #[pyo3(signature = (n, amplitudes, normalize = false))]
    fn new(n: usize, amplitudes: Vec<C64>, normalize: bool) -> PyResult<Self> {
        let state = if normalize {
            luq_core::PureState::from_unnormalized(n, amplitudes).map_err(err)?.0
        } else {
            luq_core::PureState::new(n, amplitudes).map_err(err)?
        };
        Ok(Self(state))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn amplitudes(&self) -> Vec<C64> {
        self.0.amplitudes().to_vec()
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// Reduced density matrix on `keep`, as a list of rows.
    fn partial_trace(&self, keep: Vec<usize>) -> PyResult<Vec<Vec<C64>>> {
        let rho = self.0.partial_trace(&keep).map_err(err)?;
        let d = rho.dim();
        Ok((0..d).map(|r| (0..d).map(|c| rho.get(r, c)).collect()).collect())
    }

    fn max_abs_diff(&self, other: &PyPureState) -> f64 {
        self.0.max_abs_diff(&other.0)
    }

    fn __len__(&self) -> usize {
        self.0.dim()
    }

    fn __repr__(&self) -> String {
        format!("PureState(n={})", self.0.n())
    }
}

/// Global phase times one 2x2 unitary per qubit.
#[pyclass(module = "luq", name = "Layer", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyLayer(luq_core::LocalUnitaryLayer);

#[pymethods]
impl PyLayer {
    #[new]
    #[pyo3(signature = (unitaries, global_phase = 0.0))]
    fn new(unitaries: Vec<[[C64; 2]; 2]>, global_phase: f64) -> PyResult<Self> {
        let factors = unitaries
            .into_iter()
            .map(|m| Unitary2::new(Mat2(m), 1e-9))
            .collect::<luq_core::Result<Vec<_>>>()
            .map_err(err)?;
        Ok(Self(luq_core::LocalUnitaryLayer::new(global_phase, factors)))
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self(luq_core::LocalUnitaryLayer::identity(n))
    }

    #[getter]
    fn global_phase(&self) -> f64 {
        self.0.global_phase()
    }

    #[getter]
    fn unitaries(&self) -> Vec<[[C64; 2]; 2]> {
        self.0.factors().iter().map(|u| mat_rows(u.matrix())).collect()
    }

    fn apply(&self, state: &PyPureState) -> PyResult<PyPureState> {
        luq_core::apply_layer(&self.0, &state.0).map(PyPureState).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Layer(n={}, global_phase={:.6})", self.0.n(), self.0.global_phase())
    }
}

/// Outcome of an equivalence check.
#[pyclass(module = "luq", name = "Verdict", frozen, get_all)]
struct PyVerdict {
    /// "equivalent", "not_equivalent" or "undetermined".
    label: String,
    residual: Option<f64>,
    certificate: Option<PyLayer>,
    witness: Option<String>,
    margin: Option<f64>,
    reason: Option<String>,
}

#[pymethods]
impl PyVerdict {
    fn __bool__(&self) -> bool {
        self.label == "equivalent"
    }

    fn __repr__(&self) -> String {
        format!("Verdict({})", self.label)
    }
}

impl From<luq_core::Verdict> for PyVerdict {
    fn from(v: luq_core::Verdict) -> Self {
        let label = v.label().to_string();
        match v {
            luq_core::Verdict::Equivalent { certificate, residual } => Self {
                label,
                residual: Some(residual),
                certificate: Some(PyLayer(certificate)),
                witness: None,
                margin: None,
                reason: None,
            },
            luq_core::Verdict::NotEquivalent { witness } => Self {
                label,
                residual: None,
                certificate: None,
                witness: Some(witness.description),
                margin: Some(witness.margin),
                reason: None,
            },
            luq_core::Verdict::Undetermined { diagnostics } => Self {
                label,
                residual: diagnostics.best_residual,
                certificate: None,
                witness: None,
                margin: None,
                reason: Some(diagnostics.reason),
            },
        }
    }
}

/// Returns `(canonical, layer, generic)` with `layer.apply(state) == canonical`.
#[pyfunction]
fn standard_form(state: &PyPureState) -> PyResult<(PyPureState, PyLayer, bool)> {
    let sf = luq_core::standard_form(&state.0).map_err(err)?;
    Ok((PyPureState(sf.canonical), PyLayer(sf.layer), sf.generic))
}

/// Decides whether `phi` can be mapped onto `psi` by local unitaries.
#[pyfunction]
#[pyo3(signature = (psi, phi, restarts = 64, seed = 0))]
fn check(py: Python<'_>, psi: &PyPureState, phi: &PyPureState, restarts: usize, seed: u64) -> PyResult<PyVerdict> {
    let config = luq_core::SolverConfig {
        restarts,
        seed,
        ..luq_core::SolverConfig::default()
    };
    let (psi, phi) = (psi.0.clone(), phi.0.clone());
    py.detach(|| luq_core::decide_lu_equivalence(&psi, &phi, &config))
        .map(PyVerdict::from)
        .map_err(err)
}

/// `1 - |<psi| layer |phi>|`.
#[pyfunction]
fn verify_certificate(psi: &PyPureState, phi: &PyPureState, layer: &PyLayer) -> PyResult<f64> {
    luq_core::verify_certificate(&psi.0, &phi.0, &layer.0).map_err(err)
}

/// Eigenvalues (descending) and diagonalizer `W` with `W H W^dagger` diagonal.
#[pyfunction]
fn eig_hermitian2(h: [[C64; 2]; 2]) -> PyResult<(f64, f64, [[C64; 2]; 2])> {
    let s = luq_core::eig_mat2(&Mat2(h), &luq_core::ToleranceContext::default()).map_err(err)?;
    Ok((s.lambda1, s.lambda2, mat_rows(s.diagonalizer.matrix())))
}

/// Seeded fixture: `haar_state`, `ghz`, `w`, `cluster` and `product` give a
/// `PureState`, `layer` gives a `Layer`.
#[pyfunction]
#[pyo3(signature = (kind, n, seed = 0))]
fn random(py: Python<'_>, kind: &str, n: usize, seed: u64) -> PyResult<Py<PyAny>> {
    let kind: FixtureKind = kind.parse().map_err(|_| LuqError::new_err(format!("unknown fixture kind '{kind}'")))?;
    Ok(match fixture(kind, n, seed).map_err(err)? {
        Fixture::State(s) => Py::new(py, PyPureState(s))?.into_any(),
        Fixture::Layer(l) => Py::new(py, PyLayer(l))?.into_any(),
    })
}

#[pymodule]
fn luq(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPureState>()?;
    m.add_class::<PyLayer>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(standard_form, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(eig_hermitian2, m)?)?;
    m.add_function(wrap_pyfunction!(random, m)?)?;
    m.add("LuqError", m.py().get_type::<LuqError>())?;
    Ok(())
}
