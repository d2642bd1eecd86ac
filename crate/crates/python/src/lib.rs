//! Python bindings. Reports cross the boundary as plain dicts and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use ybl_core::chain::{self, DEFAULT_BUDGET};
use ybl_core::corpus::{parse_brace, parse_solution};
use ybl_core::qalgebra::{self, RepKind, RepSpec, DEFAULT_MAX_LEVEL};
use ybl_core::rmatrix::RBundle;
use ybl_core::solution::{self, retract_to_lyubashenko};
use ybl_core::symmetry;

fn err(e: ybl_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// An involutive set-theoretic solution `ř(x, y) = (σ_x(y), τ_y(x))`.
#[pyclass(name = "SetSolution", module = "ybl", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySolution {
    inner: solution::SetSolution,
}

#[pymethods]
impl PySolution {
    #[new]
    #[pyo3(signature = (sigma, tau, name = "solution".to_string()))]
    fn new(sigma: Vec<Vec<usize>>, tau: Vec<Vec<usize>>, name: String) -> PyResult<Self> {
        Ok(PySolution { inner: solution::SetSolution::new(name, sigma, tau).map_err(err)? })
    }

    #[staticmethod]
    fn trivial(n: usize) -> PyResult<Self> {
        if n == 0 {
            return Err(PyValueError::new_err("n must be positive"));
        }
        Ok(PySolution { inner: solution::SetSolution::trivial(n) })
    }

    #[staticmethod]
    fn lyubashenko(m: usize) -> PyResult<Self> {
        if m == 0 {
            return Err(PyValueError::new_err("m must be positive"));
        }
        Ok(PySolution { inner: solution::SetSolution::lyubashenko(m) })
    }

    /// `trivial:N`, `lyubashenko:M`, `brace:<brace>` or a JSON path.
    #[staticmethod]
    fn parse(spec: &str) -> PyResult<Self> {
        Ok(PySolution { inner: parse_solution(spec).map_err(err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (brace, elements = None))]
    fn from_brace(brace: &str, elements: Option<Vec<usize>>) -> PyResult<Self> {
        let b = parse_brace(brace).map_err(err)?;
        let elements = elements.unwrap_or_else(|| (0..b.size).collect());
        let inner = solution::SetSolution::from_brace(&b, &elements, format!("brace:{brace}")).map_err(err)?;
        Ok(PySolution { inner })
    }

    #[getter]
    fn name(&self) -> &str {
        &self.inner.name
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size
    }

    #[getter]
    fn sigma(&self) -> Vec<Vec<usize>> {
        self.inner.sigma.clone()
    }

    #[getter]
    fn tau(&self) -> Vec<Vec<usize>> {
        self.inner.tau.clone()
    }

    fn apply(&self, x: usize, y: usize) -> PyResult<(usize, usize)> {
        if x >= self.inner.size || y >= self.inner.size {
            return Err(PyValueError::new_err("point out of range"));
        }
        Ok(self.inner.apply(x, y))
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.validate().checks())
    }

    fn is_valid(&self) -> bool {
        self.inner.is_valid()
    }

    fn orbits(&self) -> Vec<Vec<usize>> {
        self.inner.orbits()
    }

    /// `(retraction, map)`.
    fn retract(&self) -> PyResult<(PySolution, Vec<usize>)> {
        let (r, hom) = self.inner.retract().map_err(err)?;
        Ok((PySolution { inner: r }, hom.map))
    }

    fn multipermutation_level(&self) -> PyResult<Option<usize>> {
        self.inner.multipermutation_level().map_err(err)
    }

    fn retract_to_lyubashenko<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &retract_to_lyubashenko(&self.inner).map_err(err)?)
    }

    fn isomorphisms(&self, other: &PySolution) -> PyResult<Vec<Vec<usize>>> {
        solution::isomorphisms(&self.inner, &other.inner).map_err(err)
    }

    fn is_hom(&self, target: &PySolution, map: Vec<usize>) -> bool {
        solution::check_hom(&map, &self.inner, &target.inner).is_ok()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!("SetSolution({:?}, size={})", self.inner.name, self.inner.size)
    }

    fn __eq__(&self, other: &PySolution) -> bool {
        self.inner.sigma == other.inner.sigma && self.inner.tau == other.inner.tau
    }
}

/// Matrix checks on `ř`, `r`, `Ř(λ)` and `R(λ)`.
#[pyfunction]
#[pyo3(signature = (sol, hecke_sites = 3))]
fn rmatrix_checks<'py>(py: Python<'py>, sol: &PySolution, hecke_sites: usize) -> PyResult<Bound<'py, PyAny>> {
    let b = RBundle::build(&sol.inner).map_err(err)?;
    let mut checks = vec![b.dual_forms()];
    checks.extend(b.structure_checks());
    checks.extend(b.verify_spectral().map_err(err)?.checks());
    checks.extend(b.verify_hecke(hecke_sites).map_err(err)?);
    to_py(py, &checks)
}

/// The periodic chain of `sites` sites with its conserved charges.
#[pyclass(name = "Chain", module = "ybl", frozen)]
struct PyChain {
    inner: chain::ChainSystem,
    budget: usize,
}

#[pymethods]
impl PyChain {
    #[new]
    #[pyo3(signature = (sol, sites, budget = DEFAULT_BUDGET))]
    fn new(sol: &PySolution, sites: usize, budget: usize) -> PyResult<Self> {
        Ok(PyChain { inner: chain::ChainSystem::build(&sol.inner, sites, budget).map_err(err)?, budget })
    }

    #[getter]
    fn sites(&self) -> usize {
        self.inner.sites
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn verify_commuting<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.verify_commuting())
    }

    fn closed_forms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.verify_closed_forms().map_err(err)?)
    }

    fn verify_rtt<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &chain::verify_rtt(&self.inner.bundle, self.inner.sites, self.budget).map_err(err)?)
    }

    /// Symmetry reports: `orbit`, `fixed_gl`, `square_free` or `character`.
    fn symmetries<'py>(&self, py: Python<'py>, family: &str) -> PyResult<Bound<'py, PyAny>> {
        let reports = match family {
            "orbit" => symmetry::orbit_projector_symmetry(&self.inner),
            "fixed_gl" => symmetry::fixed_element_gl(&self.inner),
            "square_free" => symmetry::square_free_symmetry(&self.inner),
            "character" => symmetry::character_symmetries(self.inner.sol())
                .map_err(err)?
                .iter()
                .map(|s| symmetry::verify_m_symmetry(&self.inner, s))
                .collect::<ybl_core::Result<Vec<_>>>()
                .map_err(err)?,
            other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
        };
        to_py(py, &reports)
    }

    fn __repr__(&self) -> String {
        format!("Chain({:?}, sites={})", self.inner.sol().name, self.inner.sites)
    }
}

/// Diagonal solutions `α` of the cocycle condition twisted by the automorphism `f`.
#[pyfunction]
#[pyo3(signature = (sol, f = None))]
fn solve_cocycle<'py>(py: Python<'py>, sol: &PySolution, f: Option<Vec<usize>>) -> PyResult<Bound<'py, PyAny>> {
    let f = f.unwrap_or_else(|| (0..sol.inner.size).collect());
    to_py(py, &symmetry::solve_cocycle(&sol.inner, &f).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (sol, max_level = DEFAULT_MAX_LEVEL))]
fn relations<'py>(py: Python<'py>, sol: &PySolution, max_level: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &qalgebra::relations_json(&qalgebra::generate_relations(&sol.inner, max_level)))
}

/// Compares the relations of `trivial:n` with the Yangian relations.
#[pyfunction]
#[pyo3(signature = (n, max_level = DEFAULT_MAX_LEVEL))]
fn yangian_match<'py>(py: Python<'py>, n: usize, max_level: usize) -> PyResult<Bound<'py, PyAny>> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be positive"));
    }
    to_py(py, &qalgebra::yangian_form(n, max_level).1)
}

/// `kind` is `constant`, `tensor`, `graded` or `linearPoly`.
#[pyfunction]
#[pyo3(signature = (sol, kind, max_level = DEFAULT_MAX_LEVEL, disable_nf = false))]
fn check_representation<'py>(
    py: Python<'py>,
    sol: &PySolution,
    kind: &str,
    max_level: usize,
    disable_nf: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let kind = RepKind::ALL
        .into_iter()
        .find(|k| k.name() == kind)
        .ok_or_else(|| PyValueError::new_err(format!("unknown representation {kind:?}")))?;
    let rels = qalgebra::generate_relations(&sol.inner, max_level);
    to_py(py, &qalgebra::check_representation(&sol.inner, &rels, RepSpec { kind, disable_nf }))
}

#[pyfunction]
#[pyo3(signature = (sol, target, map, max_level = DEFAULT_MAX_LEVEL))]
fn induce_hom<'py>(
    py: Python<'py>,
    sol: &PySolution,
    target: &PySolution,
    map: Vec<usize>,
    max_level: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let hom = solution::check_hom(&map, &sol.inner, &target.inner).map_err(err)?;
    to_py(py, &qalgebra::induce_hom(&hom, max_level).map_err(err)?)
}

#[pymodule]
fn ybl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySolution>()?;
    m.add_class::<PyChain>()?;
    m.add_function(wrap_pyfunction!(rmatrix_checks, m)?)?;
    m.add_function(wrap_pyfunction!(solve_cocycle, m)?)?;
    m.add_function(wrap_pyfunction!(relations, m)?)?;
    m.add_function(wrap_pyfunction!(yangian_match, m)?)?;
    m.add_function(wrap_pyfunction!(check_representation, m)?)?;
    m.add_function(wrap_pyfunction!(induce_hom, m)?)?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    m.add("DEFAULT_MAX_LEVEL", DEFAULT_MAX_LEVEL)?;
    Ok(())
}
