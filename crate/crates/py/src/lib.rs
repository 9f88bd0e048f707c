//! Python bindings: every function takes and returns plain strings, integers,
//! lists and dicts; polynomials use the canonical text rendering.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ::hallvertex::algebra::{parse_poly, render_poly, VarNames, ZSeries};
use ::hallvertex::coha::{assoc_check, shuffle_product};
use ::hallvertex::lattice::{character, vertex_apply, FockBasis, FockState, LatticeSpec};
use ::hallvertex::localization::{
    grassmann_pushforward_oracle, localized_pushforward, parse_fixed_data, Pushforward,
};
use ::hallvertex::quiver::{CohClass, DimVector, Quiver};
use ::hallvertex::verify::{check_bialgebra, sample_classes};
use ::hallvertex::vertex::{s_matrix as s_series, y_covertex as y_series, ybe_check, Orientation};
use ::hallvertex::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::NonPolynomial(_)
        | Error::ReductionFailure(_)
        | Error::PoleAtZero
        | Error::Series(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for Result<T, Error> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// A built-in name (`a1`, `jordan`, `kronecker`) or quiver JSON text.
fn quiver(spec: &str) -> PyResult<Quiver> {
    match spec {
        "a1" => Ok(Quiver::a1()),
        "jordan" => Ok(Quiver::jordan()),
        "kronecker" => Ok(Quiver::kronecker()),
        json => Quiver::from_json(json).py(),
    }
}

fn dim(q: &Quiver, v: Vec<u32>) -> PyResult<DimVector> {
    q.dim(v).py()
}

fn series_dict(s: &ZSeries, names: &VarNames) -> BTreeMap<i64, String> {
    s.coeffs()
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(&k, c)| (k, render_poly(c, names)))
        .collect()
}

/// Shuffle product of two class literals `poly@[γ]`.
#[pyfunction]
fn coha_mul(quiver_spec: &str, left: &str, right: &str) -> PyResult<String> {
    let q = quiver(quiver_spec)?;
    let a = CohClass::parse(&q, left).py()?;
    let b = CohClass::parse(&q, right).py()?;
    Ok(shuffle_product(&q, &a, &b).py()?.render(&q))
}

/// Whether `(a·b)·c == a·(b·c)`.
#[pyfunction]
fn coha_assoc(quiver_spec: &str, a: &str, b: &str, c: &str) -> PyResult<bool> {
    let q = quiver(quiver_spec)?;
    let p = |s: &str| CohClass::parse(&q, s).py();
    Ok(assoc_check(&q, &p(a)?, &p(b)?, &p(c)?).py()?.holds)
}

/// Coefficients of `Y^∨(α)` at the split `(first, second)` on `[lo, hi]`.
#[pyfunction]
#[pyo3(signature = (quiver_spec, class_literal, first, second, lo, hi, orientation = "euler"))]
fn y_covertex(
    quiver_spec: &str,
    class_literal: &str,
    first: Vec<u32>,
    second: Vec<u32>,
    lo: i64,
    hi: i64,
    orientation: &str,
) -> PyResult<BTreeMap<i64, String>> {
    let q = quiver(quiver_spec)?;
    let a = CohClass::parse(&q, class_literal).py()?;
    let o = Orientation::parse(orientation).py()?;
    let s = y_series(&q, &a, &dim(&q, first)?, &dim(&q, second)?, (lo, hi), &o).py()?;
    Ok(series_dict(&s, &q.var_names()))
}

/// Coefficients of `S(first, second)` on `[lo, hi]`.
#[pyfunction]
#[pyo3(signature = (quiver_spec, first, second, lo, hi, orientation = "euler"))]
fn s_matrix(
    quiver_spec: &str,
    first: Vec<u32>,
    second: Vec<u32>,
    lo: i64,
    hi: i64,
    orientation: &str,
) -> PyResult<BTreeMap<i64, String>> {
    let q = quiver(quiver_spec)?;
    let o = Orientation::parse(orientation).py()?;
    let s = s_series(&q, &dim(&q, first)?, &dim(&q, second)?, (lo, hi), &o).py()?;
    Ok(series_dict(&s, &q.var_names()))
}

/// The Yang–Baxter equation for three dimension vectors.
#[pyfunction]
#[pyo3(signature = (quiver_spec, g1, g2, g3, depth = 3, orientation = "euler"))]
fn ybe(
    quiver_spec: &str,
    g1: Vec<u32>,
    g2: Vec<u32>,
    g3: Vec<u32>,
    depth: u32,
    orientation: &str,
) -> PyResult<bool> {
    let q = quiver(quiver_spec)?;
    let o = Orientation::parse(orientation).py()?;
    Ok(
        ybe_check(&q, &dim(&q, g1)?, &dim(&q, g2)?, &dim(&q, g3)?, depth, &o)
            .py()?
            .holds,
    )
}

/// Number of bialgebra instances checked; raises if any fails.
#[pyfunction]
#[pyo3(signature = (quiver_spec, maxdim = 2, degree = 2, depth = 3, orientation = "euler"))]
fn verify_bialgebra(
    quiver_spec: &str,
    maxdim: u32,
    degree: u32,
    depth: u32,
    orientation: &str,
) -> PyResult<usize> {
    let q = quiver(quiver_spec)?;
    let o = Orientation::parse(orientation).py()?;
    let classes = sample_classes(&q, maxdim, degree);
    let mut n = 0;
    for a in &classes {
        for b in &classes {
            let tot = a.gamma.add(&b.gamma);
            for g in tot.sub_vectors() {
                let h = tot.checked_sub(&g).expect("sub-vector");
                n += 1;
                if !check_bialgebra(&q, a, b, (&g, &h), depth, &o).py()?.holds {
                    return Err(PyRuntimeError::new_err(format!(
                        "bialgebra identity fails for {} * {} at {g}|{h}",
                        a.render(&q),
                        b.render(&q)
                    )));
                }
            }
        }
    }
    Ok(n)
}

/// `{power: count}` of the lattice character up to `q^order`.
#[pyfunction]
#[pyo3(signature = (gram, order, bounds = None))]
fn lattice_character(
    gram: Vec<Vec<i64>>,
    order: i64,
    bounds: Option<Vec<(i64, i64)>>,
) -> PyResult<BTreeMap<i64, u64>> {
    let spec = LatticeSpec::new(gram).py()?;
    character(&spec, order, bounds.as_deref()).py()
}

/// `{power: state}` for `Y(u, z) v` with all powers in `[lo, hi]`.
#[pyfunction]
fn lattice_yop(
    gram: Vec<Vec<i64>>,
    state: &str,
    target: &str,
    lo: i64,
    hi: i64,
) -> PyResult<BTreeMap<i64, String>> {
    let spec = LatticeSpec::new(gram).py()?;
    let u = FockState::basis(FockBasis::parse(state, spec.rank).py()?);
    let v = FockState::basis(FockBasis::parse(target, spec.rank).py()?);
    let f = vertex_apply(&spec, &u, &v, hi);
    if let Some(lead) = f.leading_power().filter(|&l| l < lo) {
        return Err(py_err(Error::WindowInsufficient { lo, hi, lead }));
    }
    Ok(f.coeffs
        .iter()
        .filter(|(_, s)| !s.is_zero())
        .map(|(&k, s)| (k, s.render(spec.rank)))
        .collect())
}

/// Flag-bundle pushforward of a polynomial in `x1..xn, y1..ym`, rendered in `u`.
#[pyfunction]
fn grassmann_oracle(class_poly: &str, n: usize, m: usize) -> PyResult<String> {
    let h = parse_poly(class_poly, &VarNames::default()).map_err(|e| py_err(e.into()))?;
    let out = grassmann_pushforward_oracle(&h, n, m).py()?;
    Ok(render_poly(&out, &VarNames::default().with_letters(&["u"])))
}

/// Localized pushforward of fixed-point JSON data.
#[pyfunction]
#[pyo3(signature = (fixed_json, t0 = false))]
fn pushforward(fixed_json: &str, t0: bool) -> PyResult<String> {
    let names = VarNames::default();
    let data = parse_fixed_data(fixed_json, &names).py()?;
    Ok(match localized_pushforward(&data, t0).py()? {
        Pushforward::Class(p) => render_poly(&p, &names),
        Pushforward::Localized(f) if f.den().is_one() => render_poly(f.num(), &names),
        Pushforward::Localized(f) => format!(
            "({}) / ({})",
            render_poly(f.num(), &names),
            render_poly(f.den(), &names)
        ),
    })
}

#[pymodule]
fn hallvertex(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(coha_mul, m)?)?;
    m.add_function(wrap_pyfunction!(coha_assoc, m)?)?;
    m.add_function(wrap_pyfunction!(y_covertex, m)?)?;
    m.add_function(wrap_pyfunction!(s_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(ybe, m)?)?;
    m.add_function(wrap_pyfunction!(verify_bialgebra, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_character, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_yop, m)?)?;
    m.add_function(wrap_pyfunction!(grassmann_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(pushforward, m)?)?;
    Ok(())
}
