//! Python bindings: the `tshdual` extension module.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use tsh_core::algebra::{find_algebra_isomorphism, validate_algebra, FiniteTshAlgebra};
use tsh_core::frame::{self, validate_frame, TshFrame};
use tsh_core::report::{LawCode, Report};
use tsh_core::{duality, fixtures, io, logic, semantics};

fn to_py(e: tsh_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Violated laws as `(code, witness)` pairs.
type Violations = Vec<(String, Vec<usize>)>;

fn violations<C: LawCode>(report: &Report<C>) -> Violations {
    report
        .violations()
        .iter()
        .map(|v| (v.law.code().to_string(), v.witness.clone()))
        .collect()
}

fn check_index(x: usize, size: usize) -> PyResult<usize> {
    if x < size {
        Ok(x)
    } else {
        Err(PyValueError::new_err(format!(
            "index {x} outside carrier of size {size}"
        )))
    }
}

/// A finite algebra given by its order and operation tables.
#[pyclass(name = "Algebra", eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyAlgebra(FiniteTshAlgebra);

#[pymethods]
impl PyAlgebra {
    /// Reads the `key: value` algebra format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        io::parse_algebra(text).map(PyAlgebra).map_err(to_py)
    }

    /// One of the bundled algebras: `a3`, `boolean2`, `diamond-boolean`,
    /// `diamond-kleene`, `diamond-boolean-swap`, or a corpus name.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let w = match name {
            "a3" => fixtures::a3(),
            "boolean2" => fixtures::boolean2(),
            _ => fixtures::algebra_corpus()
                .into_iter()
                .find(|(n, _)| n == name)
                .map(|(_, w)| w)
                .ok_or_else(|| PyKeyError::new_err(name.to_string()))?,
        };
        Ok(PyAlgebra(w))
    }

    #[staticmethod]
    fn fixture_names() -> Vec<String> {
        let mut names = vec!["a3".to_string(), "boolean2".to_string()];
        names.extend(fixtures::algebra_corpus().into_iter().map(|(n, _)| n));
        names
    }

    fn to_text(&self) -> String {
        io::format_algebra(&self.0)
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn top(&self) -> usize {
        self.0.top()
    }

    #[getter]
    fn bot(&self) -> usize {
        self.0.bot()
    }

    fn le(&self, x: usize, y: usize) -> PyResult<bool> {
        let n = self.0.size();
        Ok(self.0.le(check_index(x, n)?, check_index(y, n)?))
    }

    fn neg(&self, x: usize) -> PyResult<usize> {
        Ok(self.0.neg(check_index(x, self.0.size())?))
    }

    fn g(&self, x: usize) -> PyResult<usize> {
        Ok(self.0.g(check_index(x, self.0.size())?))
    }

    fn h(&self, x: usize) -> PyResult<usize> {
        Ok(self.0.h(check_index(x, self.0.size())?))
    }

    fn imp(&self, x: usize, y: usize) -> PyResult<usize> {
        let n = self.0.size();
        Ok(self.0.imp(check_index(x, n)?, check_index(y, n)?))
    }

    fn meet(&self, x: usize, y: usize) -> PyResult<usize> {
        let n = self.0.size();
        let (x, y) = (check_index(x, n)?, check_index(y, n)?);
        self.0
            .lattice()
            .map(|_| self.0.meet(x, y))
            .ok_or_else(|| PyValueError::new_err("order is not a lattice"))
    }

    fn join(&self, x: usize, y: usize) -> PyResult<usize> {
        let n = self.0.size();
        let (x, y) = (check_index(x, n)?, check_index(y, n)?);
        self.0
            .lattice()
            .map(|_| self.0.join(x, y))
            .ok_or_else(|| PyValueError::new_err("order is not a lattice"))
    }

    /// Violated laws as `(code, witness)` pairs; empty for a TSH-algebra.
    fn validate(&self) -> Violations {
        violations(&validate_algebra(&self.0))
    }

    fn is_isomorphic(&self, other: &PyAlgebra) -> bool {
        find_algebra_isomorphism(&self.0, &other.0).is_some()
    }

    fn __repr__(&self) -> String {
        format!("Algebra(size={})", self.0.size())
    }
}

/// A finite frame `(X, <=, g, R, Q)`.
#[pyclass(name = "Frame", eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyFrame(TshFrame);

#[pymethods]
impl PyFrame {
    #[new]
    fn new(
        size: usize,
        leq: Vec<(usize, usize)>,
        g: Vec<usize>,
        r: Vec<(usize, usize)>,
        q: Vec<(usize, usize)>,
    ) -> PyResult<Self> {
        use tsh_core::order::Relation;
        let rel = |pairs: Vec<(usize, usize)>| Relation::from_pairs(size, pairs).map_err(to_py);
        TshFrame::new(rel(leq)?, g, rel(r)?, rel(q)?)
            .map(PyFrame)
            .map_err(to_py)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        io::parse_frame(text).map(PyFrame).map_err(to_py)
    }

    /// `x2`, `singleton`, or `singleton-reflexive`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        match name {
            "x2" => Ok(PyFrame(fixtures::x2())),
            "singleton" => Ok(PyFrame(fixtures::singleton_frame(false))),
            "singleton-reflexive" => Ok(PyFrame(fixtures::singleton_frame(true))),
            _ => Err(PyKeyError::new_err(name.to_string())),
        }
    }

    fn to_text(&self) -> String {
        io::format_frame(&self.0)
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn leq(&self) -> Vec<(usize, usize)> {
        self.0.leq().pairs().collect()
    }

    #[getter]
    fn g(&self) -> Vec<usize> {
        self.0.g_map().to_vec()
    }

    #[getter]
    fn r(&self) -> Vec<(usize, usize)> {
        self.0.r().pairs().collect()
    }

    #[getter]
    fn q(&self) -> Vec<(usize, usize)> {
        self.0.q().pairs().collect()
    }

    fn validate(&self) -> Violations {
        violations(&validate_frame(&self.0))
    }

    /// A map `self -> other` that is an isomorphism, if one exists.
    fn find_isomorphism(&self, other: &PyFrame) -> Option<Vec<usize>> {
        frame::find_isomorphism(&self.0, &other.0)
    }

    fn __repr__(&self) -> String {
        format!("Frame(size={})", self.0.size())
    }
}

/// A formula of the tense language, parsed from text.
#[pyclass(name = "Formula", eq, hash, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyFormula(logic::Formula);

#[pymethods]
impl PyFormula {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        logic::parse(text).map(PyFormula).map_err(to_py)
    }

    #[staticmethod]
    #[pyo3(signature = (seed, depth = 3, variables = vec!["p".to_string(), "q".to_string(), "r".to_string()]))]
    fn random(seed: u64, depth: usize, variables: Vec<String>) -> PyResult<Self> {
        use rand::SeedableRng;
        if variables.is_empty() {
            return Err(PyValueError::new_err("need at least one variable"));
        }
        let names: Vec<&str> = variables.iter().map(String::as_str).collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        Ok(PyFormula(logic::random_formula(&mut rng, depth, &names)))
    }

    fn variables(&self) -> Vec<String> {
        self.0.variables().iter().map(|v| v.to_string()).collect()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.0.depth()
    }

    fn __len__(&self) -> usize {
        self.0.size()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Formula({:?})", self.0.to_string())
    }
}

/// The canonical frame of `algebra`, with state `i` labeled by the members
/// of its prime filter.
#[pyfunction]
fn canonical_frame(algebra: &PyAlgebra) -> PyResult<(PyFrame, Vec<Vec<usize>>)> {
    let cf = duality::canonical_frame(&algebra.0).map_err(to_py)?;
    let labels = cf
        .filter_index
        .iter()
        .map(|f| f.members().members().collect())
        .collect();
    Ok((PyFrame(cf.frame), labels))
}

/// The complex algebra of `frame`, with element `i` labeled by its up-set.
#[pyfunction]
fn complex_algebra(frame: &PyFrame) -> PyResult<(PyAlgebra, Vec<Vec<usize>>)> {
    let ca = duality::complex_algebra(&frame.0).map_err(to_py)?;
    let labels = ca.set_index.iter().map(|s| s.members().collect()).collect();
    Ok((PyAlgebra(ca.algebra), labels))
}

/// `(map, violations)` for the embedding of an algebra into the complex
/// algebra of its canonical frame.
#[pyfunction]
fn embedding_h(algebra: &PyAlgebra) -> PyResult<(Vec<usize>, Violations)> {
    let e = duality::embedding_h(&algebra.0).map_err(to_py)?;
    Ok((e.map, violations(&e.report)))
}

/// `(map, violations, collisions)` for the embedding of a frame into the
/// canonical frame of its complex algebra.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn embedding_k(frame: &PyFrame) -> PyResult<(Vec<usize>, Violations, Vec<(usize, usize)>)> {
    let e = duality::embedding_k(&frame.0).map_err(to_py)?;
    Ok((e.map, violations(&e.report), e.collisions))
}

/// `(accepted, step, reason)`; `step` and `reason` are `None` when accepted.
#[pyfunction]
fn check_proof(text: &str) -> PyResult<(bool, Option<usize>, Option<String>)> {
    let steps = logic::parse_proof(text).map_err(to_py)?;
    Ok(match logic::check_proof(&steps) {
        logic::Verdict::Accepted => (true, None, None),
        logic::Verdict::Rejected(r) => (false, Some(r.step), Some(r.reason)),
    })
}

#[pyfunction]
fn frame_valid(frame: &PyFrame, formula: &PyFormula) -> PyResult<bool> {
    let report = validate_frame(&frame.0);
    if !report.is_empty() {
        return Err(PyValueError::new_err(format!(
            "not a TSH-frame: {}",
            report.records().trim_end()
        )));
    }
    Ok(semantics::frame_valid(&frame.0, &formula.0))
}

/// `(frame, meaning, state)` for the first refutation up to `max_size`
/// states, or `None`.
#[pyfunction]
fn find_countermodel(
    formula: &PyFormula,
    max_size: usize,
) -> Option<(PyFrame, BTreeMap<String, Vec<usize>>, usize)> {
    semantics::find_countermodel(&formula.0, max_size).map(|cm| {
        let meaning = cm
            .model
            .meaning()
            .iter()
            .map(|(v, s)| (v.clone(), s.members().collect()))
            .collect();
        (PyFrame(cm.model.frame().clone()), meaning, cm.state)
    })
}

#[pyfunction]
#[pyo3(signature = (max_size, labeled = false))]
fn enumerate_frames(max_size: usize, labeled: bool) -> Vec<PyFrame> {
    frame::enumerate_frames(max_size, !labeled)
        .into_iter()
        .map(PyFrame)
        .collect()
}

#[pyfunction]
fn algebra_eval(
    algebra: &PyAlgebra,
    valuation: BTreeMap<String, usize>,
    formula: &PyFormula,
) -> PyResult<usize> {
    semantics::algebra_eval(&algebra.0, &valuation, &formula.0).map_err(to_py)
}

#[pyfunction]
fn algebra_valid(algebra: &PyAlgebra, formula: &PyFormula) -> bool {
    semantics::algebra_valid(&algebra.0, &formula.0)
}

#[pymodule]
fn tshdual(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyFrame>()?;
    m.add_class::<PyFormula>()?;
    m.add_function(wrap_pyfunction!(canonical_frame, m)?)?;
    m.add_function(wrap_pyfunction!(complex_algebra, m)?)?;
    m.add_function(wrap_pyfunction!(embedding_h, m)?)?;
    m.add_function(wrap_pyfunction!(embedding_k, m)?)?;
    m.add_function(wrap_pyfunction!(check_proof, m)?)?;
    m.add_function(wrap_pyfunction!(frame_valid, m)?)?;
    m.add_function(wrap_pyfunction!(find_countermodel, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_frames, m)?)?;
    m.add_function(wrap_pyfunction!(algebra_eval, m)?)?;
    m.add_function(wrap_pyfunction!(algebra_valid, m)?)?;
    Ok(())
}
