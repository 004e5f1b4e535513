//! Python bindings. Exact rationals cross the boundary as
//! `fractions.Fraction`, big integers as Python `int`.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use qident::fqlinalg::rcf_class_data;
use qident::rational::Rational;
use qident::{ffpoly, glnq, hall_littlewood, partitions, qseries};

fn py_err(e: qident::Error) -> PyErr {
    match e {
        qident::Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, x: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((x.to_string(),))
}

fn big_int<'py>(py: Python<'py>, digits: String) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((digits,))
}

/// Accepts `int`, `Fraction` or a `"p/q"` string.
fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = obj.str()?.to_string();
    text.trim()
        .parse::<Rational>()
        .map_err(|_| PyValueError::new_err(format!("not a rational: {text}")))
}

#[pyclass(name = "Partition", eq, frozen, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPartition(partitions::Partition);

#[pymethods]
impl PyPartition {
    #[new]
    fn new(parts: Vec<u32>) -> PyResult<Self> {
        partitions::Partition::from_parts(parts).map(PyPartition).map_err(py_err)
    }

    #[getter]
    fn parts(&self) -> Vec<u32> {
        self.0.parts().to_vec()
    }

    #[getter]
    fn size(&self) -> u64 {
        self.0.size()
    }

    fn conjugate(&self) -> Self {
        PyPartition(self.0.conjugate())
    }

    fn n_lambda(&self) -> u64 {
        self.0.n_lambda()
    }

    fn sum_conj_sq(&self) -> u64 {
        self.0.sum_conj_sq()
    }

    fn multiplicities(&self) -> BTreeMap<u32, u32> {
        self.0.multiplicities()
    }

    fn kung_d(&self, i: u32) -> u64 {
        self.0.kung_d(i)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.0.parts())
    }
}

#[pyfunction]
#[pyo3(signature = (size_max, max_part_exclusive=None))]
fn enumerate_partitions(size_max: u32, max_part_exclusive: Option<u32>) -> Vec<PyPartition> {
    partitions::enumerate_partitions(size_max, max_part_exclusive).into_iter().map(PyPartition).collect()
}

#[pyclass(name = "TruncatedSeries", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySeries(qseries::TruncatedSeries);

#[pymethods]
impl PySeries {
    #[getter]
    fn trunc(&self) -> usize {
        self.0.trunc()
    }

    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.0.coeffs().iter().map(|c| fraction(py, c)).collect()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("series serializes")
    }

    fn __repr__(&self) -> String {
        format!("TruncatedSeries(trunc={}, coeffs={:?})", self.0.trunc(), self.0.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

#[pyfunction]
fn gordon_sum_side(k: u32, i: u32, trunc: usize) -> PyResult<PySeries> {
    qseries::gordon_sum_side(k, i, trunc).map(PySeries).map_err(py_err)
}

#[pyfunction]
fn gordon_product_side(k: u32, i: u32, trunc: usize) -> PyResult<PySeries> {
    qseries::gordon_product_side(k, i, trunc).map(PySeries).map_err(py_err)
}

#[pyfunction]
fn partition_sum_side(k: u32, trunc: usize) -> PyResult<PySeries> {
    qseries::partition_sum_side(k, trunc).map(PySeries).map_err(py_err)
}

#[pyfunction]
fn pochhammer(n: usize, trunc: usize) -> PySeries {
    PySeries(qseries::pochhammer(n, trunc))
}

#[pyfunction]
fn count_irreducibles(py: Python<'_>, q: u64, d: u64) -> PyResult<Bound<'_, PyAny>> {
    big_int(py, ffpoly::count_irreducibles(q, d).to_string())
}

/// Degree → list of coefficient lists (constant term first).
#[pyfunction]
fn enumerate_monic_irreducibles(q: u64, d_max: usize) -> PyResult<BTreeMap<usize, Vec<Vec<u64>>>> {
    let table = ffpoly::enumerate_monic_irreducibles(q, d_max).map_err(py_err)?;
    Ok(table.into_iter().map(|(d, polys)| (d, polys.iter().map(|p| p.coeffs().to_vec()).collect())).collect())
}

#[pyclass(name = "MatFq", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMatFq(qident::MatFq);

#[pymethods]
impl PyMatFq {
    #[new]
    fn new(q: u64, rows: Vec<Vec<u64>>) -> PyResult<Self> {
        let slices: Vec<&[u64]> = rows.iter().map(Vec::as_slice).collect();
        qident::MatFq::from_rows(q, &slices).map(PyMatFq).map_err(py_err)
    }

    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn is_invertible(&self) -> bool {
        self.0.is_invertible()
    }

    /// Characteristic polynomial coefficients, constant term first.
    fn char_poly(&self) -> PyResult<Vec<u64>> {
        self.0.char_poly().map(|f| f.coeffs().to_vec()).map_err(py_err)
    }

    /// Rational canonical form data as `(phi coefficients, partition parts)` pairs.
    fn class_data(&self) -> PyResult<Vec<(Vec<u64>, Vec<u32>)>> {
        let data = rcf_class_data(&self.0).map_err(py_err)?;
        Ok(data.iter().map(|(phi, lambda)| (phi.coeffs().to_vec(), lambda.parts().to_vec())).collect())
    }

    fn is_semisimple(&self) -> PyResult<bool> {
        rcf_class_data(&self.0).map(|d| d.is_semisimple()).map_err(py_err)
    }
}

#[pyfunction]
fn gl_order(py: Python<'_>, n: u32, q: u64) -> PyResult<Bound<'_, PyAny>> {
    big_int(py, glnq::gl_order(n, q).to_string())
}

/// `(by_classes, by_cycle_index)`.
#[pyfunction]
fn exact_probability<'py>(
    py: Python<'py>,
    n: u32,
    q: u64,
    k: u32,
    m: usize,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let p = glnq::exact_probability_max_part_lt(n, q, k, m).map_err(py_err)?;
    Ok((fraction(py, &p.by_classes)?, fraction(py, &p.by_cycle_index)?))
}

/// `(lo, hi)` bracketing the limiting probability.
#[pyfunction]
fn limit_probability<'py>(
    py: Python<'py>,
    q: u64,
    k: u32,
    m: usize,
    tol: &Bound<'py, PyAny>,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let iv = glnq::limit_probability(q, k, m, &to_rational(tol)?).map_err(py_err)?;
    Ok((fraction(py, &iv.lo)?, fraction(py, &iv.hi)?))
}

type CensusRow = (Vec<(Vec<u64>, Vec<u32>)>, u64, String);

/// Census of `GL(n, q)` as `(class data, count, formula size)` triples.
#[pyfunction]
fn census(n: usize, q: u64) -> PyResult<Vec<CensusRow>> {
    let tally = glnq::census(n, q).map_err(py_err)?;
    let report = glnq::census_report(n, q, tally).map_err(py_err)?;
    Ok(report
        .rows
        .iter()
        .map(|row| {
            let data = row.class.iter().map(|(phi, l)| (phi.coeffs().to_vec(), l.parts().to_vec())).collect();
            (data, row.count, row.formula_size.to_string())
        })
        .collect())
}

#[pyfunction]
fn semisimple_census<'py>(py: Python<'py>, n: usize, q: u64, tol: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyDict>> {
    let c = glnq::semisimple_census(n, q, &to_rational(tol)?).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("total", c.total)?;
    out.set_item("by_partitions", c.by_partitions)?;
    out.set_item("by_radical", c.by_radical)?;
    out.set_item("proportion", fraction(py, &c.proportion)?)?;
    out.set_item("product_exponent_r_minus_1", (fraction(py, &c.exponent_r_minus_1.lo)?, fraction(py, &c.exponent_r_minus_1.hi)?))?;
    out.set_item("product_exponent_r", (fraction(py, &c.exponent_r.lo)?, fraction(py, &c.exponent_r.hi)?))?;
    Ok(out)
}

#[pyclass(name = "HLPolynomial", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyHLPolynomial(qident::HLPolynomial);

#[pymethods]
impl PyHLPolynomial {
    #[getter]
    fn n_vars(&self) -> usize {
        self.0.n_vars()
    }

    /// Exponent tuple → integer coefficients of the `t` polynomial.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for (exponents, t_coeffs) in self.0.terms() {
            out.set_item(PyTuple::new(py, exponents)?, t_coeffs)?;
        }
        Ok(out)
    }

    fn eval<'py>(&self, py: Python<'py>, point: Vec<Bound<'py, PyAny>>, t: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let point: Vec<Rational> = point.iter().map(to_rational).collect::<PyResult<_>>()?;
        let value = self.0.eval(&point, &to_rational(t)?).map_err(py_err)?;
        fraction(py, &value)
    }

    fn is_symmetric(&self) -> bool {
        self.0.is_symmetric()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("polynomial serializes")
    }
}

#[pyfunction]
fn hl_poly_cosets(lambda: Vec<u32>, n_vars: usize) -> PyResult<PyHLPolynomial> {
    let lambda = partitions::Partition::from_parts(lambda).map_err(py_err)?;
    hall_littlewood::hl_poly_cosets(&lambda, n_vars).map(PyHLPolynomial).map_err(py_err)
}

#[pyfunction]
fn hl_poly_full_sum(lambda: Vec<u32>, n_vars: usize) -> PyResult<PyHLPolynomial> {
    let lambda = partitions::Partition::from_parts(lambda).map_err(py_err)?;
    hall_littlewood::hl_poly_full_sum(&lambda, n_vars).map(PyHLPolynomial).map_err(py_err)
}

#[pyfunction]
fn principal_specialization(py: Python<'_>, lambda: Vec<u32>, q: u64, n_vars: usize) -> PyResult<Bound<'_, PyAny>> {
    let lambda = partitions::Partition::from_parts(lambda).map_err(py_err)?;
    let value = hall_littlewood::principal_specialization(&lambda, q, n_vars).map_err(py_err)?;
    fraction(py, &value)
}

#[pyfunction]
fn closed_form_specialization(py: Python<'_>, lambda: Vec<u32>, q: u64) -> PyResult<Bound<'_, PyAny>> {
    let lambda = partitions::Partition::from_parts(lambda).map_err(py_err)?;
    let value = hall_littlewood::closed_form_specialization(&lambda, q).map_err(py_err)?;
    fraction(py, &value)
}

#[pyfunction]
fn theorem4_check<'py>(py: Python<'py>, q: u64, k: u32, tol: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyDict>> {
    let check = hall_littlewood::theorem4_check(q, k, &to_rational(tol)?).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("lhs_interval", (fraction(py, &check.lhs_interval.lo)?, fraction(py, &check.lhs_interval.hi)?))?;
    out.set_item("rhs_interval", (fraction(py, &check.rhs_interval.lo)?, fraction(py, &check.rhs_interval.hi)?))?;
    out.set_item("consistent", check.consistent)?;
    Ok(out)
}

#[pymodule]
fn qident_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PySeries>()?;
    m.add_class::<PyMatFq>()?;
    m.add_class::<PyHLPolynomial>()?;
    m.add_function(wrap_pyfunction!(enumerate_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(gordon_sum_side, m)?)?;
    m.add_function(wrap_pyfunction!(gordon_product_side, m)?)?;
    m.add_function(wrap_pyfunction!(partition_sum_side, m)?)?;
    m.add_function(wrap_pyfunction!(pochhammer, m)?)?;
    m.add_function(wrap_pyfunction!(count_irreducibles, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_monic_irreducibles, m)?)?;
    m.add_function(wrap_pyfunction!(gl_order, m)?)?;
    m.add_function(wrap_pyfunction!(exact_probability, m)?)?;
    m.add_function(wrap_pyfunction!(limit_probability, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(semisimple_census, m)?)?;
    m.add_function(wrap_pyfunction!(hl_poly_cosets, m)?)?;
    m.add_function(wrap_pyfunction!(hl_poly_full_sum, m)?)?;
    m.add_function(wrap_pyfunction!(principal_specialization, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_specialization, m)?)?;
    m.add_function(wrap_pyfunction!(theorem4_check, m)?)?;
    Ok(())
}
