//! Python bindings for `branchkit-core`.
//!
//! Weights are lists of ints, characters are `{exponent tuple: coefficient}`
//! dicts, and spectra and reports cross the boundary as JSON strings.

use std::collections::BTreeMap;

use branchkit_core::character::{self as chars, TorusEmbedding};
use branchkit_core::spectrum::{parse_rational, Spectrum};
use branchkit_core::theorems::{self, BranchRequest, Subgroup, DEFAULT_INDEX_BOUND};
use branchkit_core::verify::{self, Grid, RunOptions, Suite};
use branchkit_core::{Error, GroupLabel, HarmonicLabel, LaurentChar, Weight};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

fn err(e: Error) -> PyErr {
    match e {
        Error::ResourceLimit { .. } | Error::NoKTypeOracle(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn group(label: &str) -> PyResult<GroupLabel> {
    label.parse().map_err(err)
}

/// `{tuple(weight): value}`; lists are unhashable, so keys become tuples.
fn weight_dict<'py, V: for<'a> IntoPyObject<'py>>(
    py: Python<'py>,
    entries: impl IntoIterator<Item = (Vec<i64>, V)>,
) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    for (w, v) in entries {
        dict.set_item(PyTuple::new(py, w)?, v)?;
    }
    Ok(dict)
}

fn to_dict<'py>(py: Python<'py>, chi: &LaurentChar) -> PyResult<Bound<'py, PyDict>> {
    let terms = chi
        .terms()
        .map(|(e, c)| {
            let c: i128 = c.to_string().parse().map_err(|_| {
                PyRuntimeError::new_err(format!("coefficient {c} exceeds 128 bits"))
            })?;
            Ok((e.clone(), c))
        })
        .collect::<PyResult<Vec<_>>>()?;
    weight_dict(py, terms)
}

fn decomposition_dict<'py>(
    py: Python<'py>,
    d: &chars::IrrepDecomposition,
) -> PyResult<Bound<'py, PyDict>> {
    weight_dict(py, d.iter().map(|(w, m)| (w.coords().to_vec(), *m)))
}

/// Dimension of the irreducible of `group` (e.g. "U(3)") with highest weight `weight`.
#[pyfunction]
fn weyl_dim(group_label: &str, weight: Vec<i64>) -> PyResult<u128> {
    branchkit_core::weyl_dim(&group(group_label)?, &Weight::new(weight)).map_err(err)
}

/// Dimension of a harmonic space: "R:N:j", "C:n:a:b", "H:m:a:b" or "SU2:j".
#[pyfunction]
fn harmonic_dim(spec: &str) -> PyResult<u128> {
    let label: HarmonicLabel = spec.parse().map_err(err)?;
    branchkit_core::harmonic_dim(label).map_err(err)
}

/// Weyl character as `{exponent: coefficient}`.
#[pyfunction]
fn character<'py>(
    py: Python<'py>,
    group_label: &str,
    weight: Vec<i64>,
) -> PyResult<Bound<'py, PyDict>> {
    let chi = branchkit_core::irreducible_character(&group(group_label)?, &Weight::new(weight))
        .map_err(err)?;
    to_dict(py, &chi)
}

/// Splits a Weyl-invariant character into `{highest weight: multiplicity}`.
#[pyfunction]
fn decompose<'py>(
    py: Python<'py>,
    group_label: &str,
    terms: BTreeMap<Vec<i64>, i128>,
) -> PyResult<Bound<'py, PyDict>> {
    let g = group(group_label)?;
    let chi = LaurentChar::from_terms(g.rank(), terms);
    let chi = chi.with_vars(chars::torus_vars(&g)).map_err(err)?;
    decomposition_dict(py, &branchkit_core::decompose(&chi, &g).map_err(err)?)
}

fn embedding(name: &str, size: usize) -> PyResult<TorusEmbedding> {
    let r = match name {
        "sp_in_u" => TorusEmbedding::sp_in_u(size),
        "sp_in_so" => TorusEmbedding::sp_in_so(size),
        "u_in_so" => TorusEmbedding::u_in_so(size),
        "u_in_o" => TorusEmbedding::u_in_o(size),
        "o_in_u" => TorusEmbedding::o_in_u(size),
        "so_in_u" => TorusEmbedding::so_in_u(size),
        "u1_un1" => TorusEmbedding::u1_un1(size),
        "sp1_sp" => TorusEmbedding::sp1_sp(size),
        "u1_sp" => TorusEmbedding::u1_sp(size),
        "so2_so" => TorusEmbedding::so2_so(size),
        _ => return Err(PyValueError::new_err(format!("unknown embedding '{name}'"))),
    };
    r.map_err(err)
}

/// Restriction of the ambient irreducible `weight` along a named embedding
/// (e.g. `restrict("sp_in_u", 2, [1, 0, 0, -1])`), as `{highest weight: multiplicity}`.
#[pyfunction]
fn restrict<'py>(
    py: Python<'py>,
    embedding_name: &str,
    size: usize,
    weight: Vec<i64>,
) -> PyResult<Bound<'py, PyDict>> {
    let emb = embedding(embedding_name, size)?;
    let d =
        chars::restricted_decomposition(&emb.ambient, &Weight::new(weight), &emb).map_err(err)?;
    decomposition_dict(py, &d)
}

/// A restriction problem `π_{iλ,k}|_H` of `GL(n,ℂ)`.
#[pyclass(name = "BranchRequest", frozen)]
struct PyBranchRequest {
    inner: BranchRequest,
}

#[pymethods]
impl PyBranchRequest {
    #[new]
    #[pyo3(signature = (n, subgroup, k, lam="0", p=None, q=None, m=None))]
    fn new(
        n: usize,
        subgroup: &str,
        k: i64,
        lam: &str,
        p: Option<usize>,
        q: Option<usize>,
        m: Option<usize>,
    ) -> PyResult<Self> {
        let sub = Subgroup::from_parts(subgroup, p, q, m).map_err(err)?;
        let inner = BranchRequest::new(n, sub, k, parse_rational(lam).map_err(err)?);
        inner.validate().map_err(err)?;
        Ok(PyBranchRequest { inner })
    }

    /// The spectrum; countable continuous sums list indices up to `index_bound`.
    #[pyo3(signature = (index_bound=None))]
    fn branch(&self, index_bound: Option<i64>) -> PyResult<PySpectrum> {
        let inner = theorems::branch_with(&self.inner, index_bound.unwrap_or(DEFAULT_INDEX_BOUND))
            .map_err(err)?;
        Ok(PySpectrum { inner })
    }

    fn __repr__(&self) -> String {
        let r = &self.inner;
        format!(
            "BranchRequest(n={}, subgroup={}, k={}, lambda={})",
            r.n, r.subgroup, r.k, r.lambda
        )
    }
}

#[pyclass(name = "Spectrum", frozen)]
struct PySpectrum {
    inner: Spectrum,
}

#[pymethods]
impl PySpectrum {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PySpectrum {
            inner: Spectrum::from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Countable families listed up to `bound`.
    fn truncated(&self, bound: i64) -> Self {
        PySpectrum {
            inner: self.inner.truncated(bound),
        }
    }

    fn series(&self) -> Vec<String> {
        self.inner
            .components
            .iter()
            .map(|c| c.series.to_string())
            .collect()
    }

    fn discrete_count(&self) -> usize {
        self.inner.discrete().count()
    }

    fn continuous_count(&self) -> usize {
        self.inner.continuous().count()
    }

    /// K-types of degree `≤ dmax` of component `index`.
    fn ktypes(&self, index: usize, dmax: usize) -> PyResult<(String, Vec<Vec<i64>>)> {
        let c = self
            .inner
            .components
            .get(index)
            .ok_or_else(|| PyValueError::new_err(format!("no component {index}")))?;
        let set = theorems::ktype_support(c, dmax).map_err(err)?;
        Ok((
            set.group.to_string(),
            set.types.iter().map(|w| w.coords().to_vec()).collect(),
        ))
    }

    fn __len__(&self) -> usize {
        self.inner.components.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// Runs a verification suite and returns the report list as JSON.
#[pyfunction]
#[pyo3(signature = (suite, jobs=1, max_degree=None))]
fn run_suite(suite: &str, jobs: usize, max_degree: Option<u32>) -> PyResult<String> {
    let suite: Suite = suite.parse().map_err(err)?;
    let grid = Grid {
        max_degree,
        ..Grid::default()
    };
    let reports = verify::run_suite(
        suite,
        &grid,
        &RunOptions {
            jobs,
            timing: false,
        },
    )
    .map_err(err)?;
    serde_json::to_string(&reports).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
fn branchkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(weyl_dim, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic_dim, m)?)?;
    m.add_function(wrap_pyfunction!(character, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(restrict, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_class::<PyBranchRequest>()?;
    m.add_class::<PySpectrum>()?;
    Ok(())
}
