use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use gtperm::atlas::{construct, load_group_file, Group};
use gtperm::classes::ConjugacyClassTable;
use gtperm::dessins::{analyze_dessin, cyclic_structures, parse_dessin};
use gtperm::error::Error;
use gtperm::gbar::{self, GbarContext};
use gtperm::report::{pairs_section, sg_section, Report};
use gtperm::sg::SgComputation;
use gtperm::table::{ElementTable, DEFAULT_CAP};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse(_)
        | Error::UnsupportedSpec(_)
        | Error::DegreeMismatch { .. }
        | Error::EmptyGenerators
        | Error::NonGenerating
        | Error::Incompatible(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, report: &Report) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (report.to_json(),))
}

/// A permutation group given by generators.
#[pyclass(name = "Group", module = "gtperm_py", frozen)]
struct PyGroup {
    spec: String,
    inner: Group,
}

#[pymethods]
impl PyGroup {
    /// Builds a group from a spec such as `psl2:7` or `dihedral:9`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let parsed = spec.parse().map_err(to_py)?;
        Ok(PyGroup {
            spec: spec.to_string(),
            inner: construct(&parsed).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn from_file(path: std::path::PathBuf) -> PyResult<Self> {
        Ok(PyGroup {
            spec: format!("file:{}", path.display()),
            inner: load_group_file(&path).map_err(to_py)?,
        })
    }

    #[getter]
    fn spec(&self) -> &str {
        &self.spec
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn order(&self) -> BigUint {
        self.inner.order().clone()
    }

    /// Generators in 1-based cycle notation.
    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generators.iter().map(|g| g.to_string()).collect()
    }

    /// Pair classes, blocks and induced permutations, as a dict.
    #[pyo3(signature = (cap = DEFAULT_CAP))]
    fn pairs<'py>(&self, py: Python<'py>, cap: usize) -> PyResult<Bound<'py, PyAny>> {
        let c = py.detach(|| SgComputation::run(&self.inner, cap)).map_err(to_py)?;
        let mut rep = Report::new("pc", &self.spec);
        rep.group_order = Some(self.inner.order().to_string());
        rep.pairs = Some(pairs_section(&c));
        json_to_py(py, &rep)
    }

    /// Full report on the commuting permutations of pair classes, as a dict.
    #[pyo3(signature = (cap = DEFAULT_CAP))]
    fn sg_report<'py>(&self, py: Python<'py>, cap: usize) -> PyResult<Bound<'py, PyAny>> {
        let (c, r) = py
            .detach(|| {
                let c = SgComputation::run(&self.inner, cap)?;
                let r = c.report()?;
                Ok::<_, Error>((c, r))
            })
            .map_err(to_py)?;
        let mut rep = Report::new("sg", &self.spec);
        rep.group_order = Some(self.inner.order().to_string());
        rep.pairs = Some(pairs_section(&c));
        rep.sg = Some(sg_section(&r, false));
        json_to_py(py, &rep)
    }

    #[pyo3(signature = (cap = DEFAULT_CAP))]
    fn gt1_order(&self, py: Python<'_>, cap: usize) -> PyResult<usize> {
        py.detach(|| gbar::gt1_order(&self.inner, cap).map(|r| r.order()))
            .map_err(to_py)
    }

    /// Experimental beyond cyclic groups.
    #[pyo3(signature = (cap = DEFAULT_CAP))]
    fn gt_full_order(&self, py: Python<'_>, cap: usize) -> PyResult<usize> {
        py.detach(|| gbar::gt_full_order(&self.inner, cap).map(|r| r.order()))
            .map_err(to_py)
    }

    /// Order of the model group inside `G^r`, and `r`.
    #[pyo3(signature = (cap = DEFAULT_CAP))]
    fn model_group(&self, py: Python<'_>, cap: usize) -> PyResult<(usize, usize)> {
        py.detach(|| {
            let ctx = GbarContext::new(&self.inner, cap)?;
            let g = ctx.gbar(cap)?;
            Ok((g.len(), g.r()))
        })
        .map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", self.spec, self.inner.order())
    }
}

#[pyfunction]
fn dihedral_closed_form(n: u64) -> PyResult<u64> {
    if n < 3 {
        return Err(PyValueError::new_err("n must be at least 3"));
    }
    Ok(gbar::dihedral_closed_form(n))
}

/// Monodromy order, transitivity and regularity of a dessin given as text.
#[pyfunction]
fn analyze_dessin_text<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyDict>> {
    let d = parse_dessin(text).map_err(to_py)?;
    let a = analyze_dessin(&d).map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("darts", a.darts)?;
    out.set_item("monodromy_order", a.monodromy_order)?;
    out.set_item("transitive", a.transitive)?;
    out.set_item("regular", a.regular)?;
    Ok(out)
}

/// Images of the cyclic generator, one per isomorphism class of cyclic
/// structures of order dividing `n` on a regular dessin.
#[pyfunction]
fn cyclic_structure_classes(text: &str, n: u64) -> PyResult<Vec<String>> {
    let d = parse_dessin(text).map_err(to_py)?;
    let t = ElementTable::from_generators(d.darts(), &[d.x.clone(), d.y.clone()], DEFAULT_CAP).map_err(to_py)?;
    if t.len() != d.darts() {
        return Err(PyValueError::new_err("dessin is not regular"));
    }
    let classes = ConjugacyClassTable::new(&t);
    let pair = (t.index_of(&d.x).unwrap(), t.index_of(&d.y).unwrap());
    let reps = cyclic_structures(&t, &classes, pair, n).map_err(to_py)?;
    Ok(reps.iter().map(|s| t.perm(s.images[0]).to_string()).collect())
}

#[pymodule]
fn gtperm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(dihedral_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(analyze_dessin_text, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_structure_classes, m)?)?;
    Ok(())
}
