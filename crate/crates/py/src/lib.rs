//! Python bindings exposing the diagram algebra, weight combinatorics, the
//! tensor action, and the verified decomposition.
//!
//! Diagrams travel as canonical edge strings (`"0-1,2-3"`), weights as lists
//! of integers, scalars as exact decimal/rational strings, and reports as
//! JSON strings.

use std::str::FromStr;

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use brauer::decomposition::{full_decomposition, CheckMode, Context};
use brauer::diagrams::{self, BrauerDiagram};
use brauer::scalars::{delta_parameter, FieldSpec, FormKind};
use brauer::tensor_action::{
    phi_row, representation_property, FormSpec, TensorIndex,
};
use brauer::weights::{self, Composition, OrthWeight};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_diagram(edges: &str) -> PyResult<BrauerDiagram> {
    BrauerDiagram::from_str(edges).map_err(value_err)
}

fn parse_kind(form: &str) -> PyResult<FormKind> {
    FormKind::from_str(form).map_err(value_err)
}

fn make_form(form: &str, n: usize, characteristic: u64) -> PyResult<FormSpec> {
    let kind = parse_kind(form)?;
    let field = FieldSpec::new(characteristic).map_err(value_err)?;
    FormSpec::new(kind, n, field).map_err(value_err)
}

/// A two-row perfect matching; the basis element of the diagram algebra.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Diagram {
    inner: BrauerDiagram,
}

#[pymethods]
impl Diagram {
    #[new]
    fn new(edges: &str) -> PyResult<Self> {
        Ok(Diagram {
            inner: parse_diagram(edges)?,
        })
    }

    #[staticmethod]
    fn identity(r: usize) -> PyResult<Self> {
        if r == 0 {
            return Err(PyValueError::new_err("rank must be at least 1"));
        }
        Ok(Diagram {
            inner: BrauerDiagram::identity(r),
        })
    }

    #[staticmethod]
    fn contraction(r: usize) -> PyResult<Self> {
        Ok(Diagram {
            inner: BrauerDiagram::contraction(r).map_err(value_err)?,
        })
    }

    fn r(&self) -> usize {
        self.inner.r()
    }

    fn edges(&self) -> String {
        self.inner.to_string()
    }

    fn crossing_number(&self) -> usize {
        self.inner.crossing_number()
    }

    fn horizontal_pairs(&self) -> usize {
        self.inner.horizontal_pairs()
    }

    fn is_permutation(&self) -> bool {
        self.inner.is_permutation()
    }

    /// Stacks `self` above `other`; returns `(cycles, product)`.
    fn mul(&self, other: &Diagram) -> PyResult<(usize, Diagram)> {
        let prod = diagrams::diagram_multiply(&self.inner, &other.inner).map_err(value_err)?;
        Ok((prod.cycles, Diagram { inner: prod.diagram }))
    }

    fn __mul__(&self, other: &Diagram) -> PyResult<(usize, Diagram)> {
        self.mul(other)
    }

    fn __richcmp__(&self, other: &Diagram, op: pyo3::basic::CompareOp) -> PyResult<bool> {
        match op {
            pyo3::basic::CompareOp::Eq => Ok(self.inner == other.inner),
            pyo3::basic::CompareOp::Ne => Ok(self.inner != other.inner),
            _ => Err(PyValueError::new_err("diagrams are not ordered")),
        }
    }

    fn __repr__(&self) -> String {
        format!("Diagram(\"{}\")", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// All diagrams on `r` strands as canonical edge strings.
#[pyfunction]
fn enumerate_diagrams(r: usize) -> PyResult<Vec<String>> {
    Ok(diagrams::enumerate_diagrams(r)
        .map_err(value_err)?
        .iter()
        .map(|d| d.to_string())
        .collect())
}

/// The generating diagrams `[s_1, …, s_{r-1}, c_0]` as edge strings.
#[pyfunction]
fn generator_diagrams(r: usize) -> PyResult<Vec<String>> {
    Ok(diagrams::generator_diagrams(r)
        .map_err(value_err)?
        .iter()
        .map(|d| d.to_string())
        .collect())
}

/// Multiplies two edge-string diagrams; returns `(cycles, product_edges)`.
#[pyfunction]
fn multiply(d1: &str, d2: &str) -> PyResult<(usize, String)> {
    let prod = diagrams::diagram_multiply(&parse_diagram(d1)?, &parse_diagram(d2)?)
        .map_err(value_err)?;
    Ok((prod.cycles, prod.diagram.to_string()))
}

/// The loop parameter `±n·1_k` as an exact scalar string.
#[pyfunction]
fn delta(form: &str, n: usize, characteristic: u64) -> PyResult<String> {
    let kind = parse_kind(form)?;
    let field = FieldSpec::new(characteristic).map_err(value_err)?;
    Ok(delta_parameter(kind, n, field)
        .map_err(value_err)?
        .to_string())
}

/// All compositions of `r` into `n` parts, lexicographically.
#[pyfunction]
fn compositions(n: usize, r: usize) -> Vec<Vec<usize>> {
    weights::enumerate_compositions(n, r)
        .iter()
        .map(|c| c.parts().to_vec())
        .collect()
}

/// Occurrence counts of a multi-index with entries in `1..=n`.
#[pyfunction]
fn weight_of(indices: Vec<usize>, n: usize) -> PyResult<Vec<usize>> {
    Ok(weights::weight_of(&indices, n)
        .map_err(value_err)?
        .parts()
        .to_vec())
}

/// Folds a composition: returns `(entries, parity)` with `parity` None for
/// an even number of parts.
#[pyfunction]
fn pi_map(parts: Vec<usize>) -> (Vec<i64>, Option<u8>) {
    let folded = weights::pi_map(&Composition::new(parts));
    (folded.entries().to_vec(), folded.parity())
}

/// The image weights for `(n, r)` as `(entries, parity)` pairs.
#[pyfunction]
fn image_weights(n: usize, r: usize) -> Vec<(Vec<i64>, Option<u8>)> {
    weights::image_weights(n, r)
        .iter()
        .map(|w| (w.entries().to_vec(), w.parity()))
        .collect()
}

/// The compositions lying over the weight `xi`.
#[pyfunction]
fn fiber(xi: Vec<i64>, n: usize, r: usize) -> PyResult<Vec<Vec<usize>>> {
    Ok(weights::fiber(&OrthWeight::new(xi), n, r)
        .map_err(value_err)?
        .iter()
        .map(|c| c.parts().to_vec())
        .collect())
}

/// The dominant representative of the signed-permutation orbit of `xi`.
#[pyfunction]
fn dominant(xi: Vec<i64>) -> Vec<i64> {
    weights::dominant_representative(&OrthWeight::new(xi))
        .entries()
        .to_vec()
}

/// The multinomial dimension of the weight module for `parts`.
#[pyfunction]
fn dim_m(parts: Vec<usize>) -> BigUint {
    weights::dim_m(&Composition::new(parts))
}

/// The dimension of the summand for `xi`.
#[pyfunction]
fn dim_n(xi: Vec<i64>, n: usize, r: usize) -> PyResult<BigUint> {
    weights::dim_n(&OrthWeight::new(xi), n, r).map_err(value_err)
}

/// Applies one diagram to a basis tensor on the right; returns the sparse
/// image as `(indices, coefficient_string)` terms.
#[pyfunction]
fn apply_diagram(
    indices: Vec<usize>,
    edges: &str,
    form: &str,
    n: usize,
    characteristic: u64,
) -> PyResult<Vec<(Vec<usize>, String)>> {
    let form = make_form(form, n, characteristic)?;
    let d = parse_diagram(edges)?;
    let t = TensorIndex::new(indices, n).map_err(value_err)?;
    Ok(phi_row(&d, &form, &t)
        .map_err(value_err)?
        .into_iter()
        .map(|(u, c)| (u.indices().to_vec(), c.to_string()))
        .collect())
}

/// Runs the verified decomposition and returns the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (n, r, form, characteristic, exhaustive=false))]
fn decompose(
    n: usize,
    r: usize,
    form: &str,
    characteristic: u64,
    exhaustive: bool,
) -> PyResult<String> {
    let kind = parse_kind(form)?;
    let field = FieldSpec::new(characteristic).map_err(value_err)?;
    let mode = if exhaustive {
        CheckMode::AllDiagrams
    } else {
        CheckMode::Generators
    };
    let report =
        full_decomposition(Context::new(n, r, kind), field, mode).map_err(value_err)?;
    serde_json::to_string(&report).map_err(value_err)
}

/// Exhaustively checks the multiplication law of the action at rank `r`.
#[pyfunction]
fn verify_representation(
    n: usize,
    r: usize,
    form: &str,
    characteristic: u64,
) -> PyResult<bool> {
    let form = make_form(form, n, characteristic)?;
    Ok(representation_property(r, &form)
        .map_err(value_err)?
        .is_none())
}

#[pymodule]
fn brauer_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Diagram>()?;
    m.add_function(wrap_pyfunction!(enumerate_diagrams, m)?)?;
    m.add_function(wrap_pyfunction!(generator_diagrams, m)?)?;
    m.add_function(wrap_pyfunction!(multiply, m)?)?;
    m.add_function(wrap_pyfunction!(delta, m)?)?;
    m.add_function(wrap_pyfunction!(compositions, m)?)?;
    m.add_function(wrap_pyfunction!(weight_of, m)?)?;
    m.add_function(wrap_pyfunction!(pi_map, m)?)?;
    m.add_function(wrap_pyfunction!(image_weights, m)?)?;
    m.add_function(wrap_pyfunction!(fiber, m)?)?;
    m.add_function(wrap_pyfunction!(dominant, m)?)?;
    m.add_function(wrap_pyfunction!(dim_m, m)?)?;
    m.add_function(wrap_pyfunction!(dim_n, m)?)?;
    m.add_function(wrap_pyfunction!(apply_diagram, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(verify_representation, m)?)?;
    Ok(())
}
