//! Python bindings for the `equicohom` core crate.

use equicohom::brauer::{brute_force as brute, build_system, solve};
use equicohom::burnside::{compare_inc as cmp_inc, inc_class as inc, nfca as nf};
use equicohom::cli::generate_dj;
use equicohom::config::{self, ActionConfig};
use equicohom::groupcoh::{self, FiniteGroupSpec};
use equicohom::report::compute_report;
use equicohom::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(
    equicohom,
    ConfigError,
    PyValueError,
    "Malformed input or an unsupported request."
);
create_exception!(
    equicohom,
    InconsistentError,
    PyException,
    "The configuration contradicts the exact sequence."
);

fn err(e: Error) -> PyErr {
    match e {
        Error::Inconsistent(_) => InconsistentError::new_err(e.to_string()),
        _ => ConfigError::new_err(e.to_string()),
    }
}

/// Round-trips a serializable value through Python's `json` module.
fn to_py<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| ConfigError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A finite abelian group in invariant-factor form.
#[pyclass(name = "FinAbGroup", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyFinAbGroup(equicohom::FinAbGroup);

#[pymethods]
impl PyFinAbGroup {
    /// Builds the group `Z/m_1 + ... + Z/m_k` from arbitrary positive moduli.
    #[new]
    #[pyo3(signature = (factors=Vec::new()))]
    fn new(factors: Vec<u64>) -> PyResult<Self> {
        equicohom::FinAbGroup::from_cyclic_factors(&factors)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn invariant_factors(&self) -> Vec<u64> {
        self.0.invariant_factors().to_vec()
    }

    #[getter]
    fn order(&self) -> u128 {
        self.0.order()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn is_trivial(&self) -> bool {
        self.0.is_trivial()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FinAbGroup({:?})", self.0.invariant_factors())
    }
}

/// A validated configuration of an action on a rational surface.
#[pyclass(name = "ActionConfig", skip_from_py_object)]
#[derive(Clone)]
pub struct PyActionConfig(ActionConfig);

#[pymethods]
impl PyActionConfig {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        config::parse(text).map(Self).map_err(err)
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| ConfigError::new_err(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn to_json(&self) -> String {
        config::serialize(&self.0)
    }

    /// Advisory messages about the standard-form encoding.
    fn warnings(&self) -> Vec<String> {
        config::validate_standard_form(&self.0)
            .into_iter()
            .map(|w| w.message)
            .collect()
    }

    #[getter]
    fn group(&self) -> String {
        self.0.group.to_string()
    }

    #[getter]
    fn has_fixed_point(&self) -> bool {
        self.0.has_fixed_point
    }

    #[getter]
    fn metadata(&self) -> String {
        self.0.metadata.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "ActionConfig(group={}, curves={})",
            self.0.group,
            self.0.curves.len()
        )
    }
}

/// A list of moduli or the name of a nonabelian group such as `"D8"`.
#[derive(FromPyObject)]
enum GroupArg {
    Factors(Vec<u64>),
    Name(String),
}

impl GroupArg {
    fn spec(self) -> PyResult<FiniteGroupSpec> {
        let g = match self {
            GroupArg::Factors(f) => FiniteGroupSpec::Abelian(f),
            GroupArg::Name(n) => FiniteGroupSpec::named(&n).map_err(err)?,
        };
        g.validate().map_err(err)?;
        Ok(g)
    }
}

/// `(H^1, H^2, H^3)` of `G` with coefficients in `Q/Z`.
#[pyfunction]
fn cohomology(group: GroupArg) -> PyResult<(PyFinAbGroup, PyFinAbGroup, PyFinAbGroup)> {
    let t = groupcoh::cohomology(&group.spec()?).map_err(err)?;
    Ok((PyFinAbGroup(t.h1), PyFinAbGroup(t.h2), PyFinAbGroup(t.h3)))
}

#[pyfunction]
fn bar_oracle(group: GroupArg, degree: u32) -> PyResult<PyFinAbGroup> {
    groupcoh::bar_oracle(&group.spec()?, degree)
        .map(PyFinAbGroup)
        .map_err(err)
}

/// The group of admissible residue tuples.
#[pyfunction]
fn brauer(config: &PyActionConfig) -> PyResult<PyFinAbGroup> {
    solve(&build_system(&config.0))
        .map(|r| PyFinAbGroup(r.group))
        .map_err(err)
}

/// Enumerates every residue assignment; only for small systems.
#[pyfunction]
fn brute_force(config: &PyActionConfig) -> PyResult<PyFinAbGroup> {
    brute(&build_system(&config.0))
        .map(PyFinAbGroup)
        .map_err(err)
}

/// The full invariant report as a dict.
#[pyfunction]
#[pyo3(signature = (config, known_h1=None))]
fn report<'py>(
    py: Python<'py>,
    config: &PyActionConfig,
    known_h1: Option<PyRef<'py, PyFinAbGroup>>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = compute_report(&config.0, known_h1.as_ref().map(|g| &g.0)).map_err(err)?;
    to_py(py, &r)
}

#[pyfunction]
fn inc_class<'py>(py: Python<'py>, config: &PyActionConfig) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &inc(&config.0).map_err(err)?.symbols)
}

#[pyfunction]
fn compare_inc(a: &PyActionConfig, b: &PyActionConfig) -> PyResult<bool> {
    Ok(cmp_inc(&inc(&a.0).map_err(err)?, &inc(&b.0).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (config, generator=1))]
fn nfca<'py>(
    py: Python<'py>,
    config: &PyActionConfig,
    generator: u64,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &nf(&config.0, generator).map_err(err)?)
}

/// The de Jonquières family member with parameters `n`, `r` and `fixed`.
#[pyfunction]
fn de_jonquieres(n: u32, r: u32, fixed: u32) -> PyResult<PyActionConfig> {
    generate_dj(n, r, fixed).map(PyActionConfig).map_err(err)
}

#[pymodule]
#[pyo3(name = "equicohom")]
fn equicohom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("ConfigError", py.get_type::<ConfigError>())?;
    m.add("InconsistentError", py.get_type::<InconsistentError>())?;
    m.add_class::<PyFinAbGroup>()?;
    m.add_class::<PyActionConfig>()?;
    m.add_function(wrap_pyfunction!(cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(bar_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(brauer, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add_function(wrap_pyfunction!(inc_class, m)?)?;
    m.add_function(wrap_pyfunction!(compare_inc, m)?)?;
    m.add_function(wrap_pyfunction!(nfca, m)?)?;
    m.add_function(wrap_pyfunction!(de_jonquieres, m)?)?;
    Ok(())
}
