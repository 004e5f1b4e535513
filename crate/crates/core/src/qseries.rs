//! Truncated formal power series with exact rational coefficients, and both
//! sides of Gordon's identity
//!
//! ```text
//!   Σ_{n_1..n_{k-1} ≥ 0} x^{N_1²+…+N_{k-1}² + N_i+…+N_{k-1}} / ((x)_{n_1}…(x)_{n_{k-1}})
//!     = Π_{r ≢ 0, ±i (mod 2k+1)} 1/(1-x^r)
//! ```
//!
//! with `N_j = n_j + n_{j+1} + … + n_{k-1}` and `(x)_n = (1-x)(1-x²)…(1-x^n)`.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};
use crate::rational::{self, Rational};

/// A power series known through `x^trunc`. Coefficients of higher degree
/// are unknown, not zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries")]
pub struct TruncatedSeries {
    trunc: usize,
    #[serde(with = "rational::serde_vec_str")]
    coeffs: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawSeries {
    trunc: usize,
    #[serde(with = "rational::serde_vec_str")]
    coeffs: Vec<Rational>,
}

impl TryFrom<RawSeries> for TruncatedSeries {
    type Error = Error;

    fn try_from(raw: RawSeries) -> Result<Self> {
        if raw.coeffs.len() != raw.trunc + 1 {
            return Err(Error::InvalidParameter(format!(
                "series with trunc {} needs {} coefficients, got {}",
                raw.trunc,
                raw.trunc + 1,
                raw.coeffs.len()
            )));
        }
        Ok(TruncatedSeries { trunc: raw.trunc, coeffs: raw.coeffs })
    }
}

impl TruncatedSeries {
    pub fn zero(trunc: usize) -> Self {
        TruncatedSeries { trunc, coeffs: vec![Rational::zero(); trunc + 1] }
    }

    pub fn one(trunc: usize) -> Self {
        Self::constant(Rational::one(), trunc)
    }

    pub fn constant(c: Rational, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = c;
        s
    }

    /// `c · x^deg`; zero if `deg > trunc`.
    pub fn monomial(c: Rational, deg: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if deg <= trunc {
            s.coeffs[deg] = c;
        }
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// extra ones beyond `trunc` are discarded.
    pub fn from_coeffs(coeffs: Vec<Rational>, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn from_integers(coeffs: &[i64], trunc: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rational::int(c)).collect(), trunc)
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^j`; `None` when `j` lies beyond the truncation order.
    pub fn coeff(&self, j: usize) -> Option<&Rational> {
        self.coeffs.get(j)
    }

    /// Re-truncates at a lower (or equal) order.
    pub fn truncate(&self, trunc: usize) -> Self {
        let t = trunc.min(self.trunc);
        TruncatedSeries { trunc: t, coeffs: self.coeffs[..=t].to_vec() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { trunc: self.trunc, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonUnitSeries);
        }
        let inv0 = c0.recip();
        let mut out = Self::zero(self.trunc);
        out.coeffs[0] = inv0.clone();
        for j in 1..=self.trunc {
            let mut acc = Rational::zero();
            for i in 1..=j {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out.coeffs[j - i];
                }
            }
            out.coeffs[j] = -acc * &inv0;
        }
        Ok(out)
    }

    /// Multiplies in place by `1/(1 - c·x^r)`, `r ≥ 1`.
    pub fn div_one_minus_monomial(&mut self, c: &Rational, r: usize) {
        assert!(r >= 1, "monomial degree must be positive");
        for j in r..=self.trunc {
            let add = &self.coeffs[j - r] * c;
            self.coeffs[j] += add;
        }
    }

    /// Multiplies in place by `(1 - c·x^r)`, `r ≥ 1`.
    pub fn mul_one_minus_monomial(&mut self, c: &Rational, r: usize) {
        assert!(r >= 1, "monomial degree must be positive");
        for j in (r..=self.trunc).rev() {
            let sub = &self.coeffs[j - r] * c;
            self.coeffs[j] -= sub;
        }
    }

    /// Evaluates the truncated polynomial `Σ_{j ≤ trunc} c_j x^j` at a point.
    pub fn eval_truncated(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> Rational {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let coeffs = (0..=trunc).map(|j| f(&self.coeffs[j], &other.coeffs[j])).collect();
        TruncatedSeries { trunc, coeffs }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&-Rational::one())
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = TruncatedSeries::zero(trunc);
        for (i, a) in self.coeffs.iter().enumerate().take(trunc + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(trunc + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

/// `(x)_n = (1-x)(1-x²)…(1-x^n)` through `x^trunc`; `(x)_0 = 1`.
pub fn pochhammer(n: usize, trunc: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(trunc);
    let one = Rational::one();
    for r in 1..=n.min(trunc) {
        s.mul_one_minus_monomial(&one, r);
    }
    s
}

/// `1/(x)_n` through `x^trunc`, i.e. the generating function of partitions
/// with parts at most `n`.
pub fn reciprocal_pochhammer(n: usize, trunc: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(trunc);
    let one = Rational::one();
    for r in 1..=n.min(trunc) {
        s.div_one_minus_monomial(&one, r);
    }
    s
}

fn check_gordon_params(k: u32, i: u32) -> Result<()> {
    if k < 2 || i < 1 || i > k {
        return Err(Error::InvalidParameter(format!(
            "Gordon parameters require k >= 2 and 1 <= i <= k, got k={k}, i={i}"
        )));
    }
    Ok(())
}

/// Per-`n` cache of `1/(x)_n` at a fixed truncation order.
struct ReciprocalCache {
    trunc: usize,
    table: HashMap<usize, TruncatedSeries>,
}

impl ReciprocalCache {
    fn new(trunc: usize) -> Self {
        ReciprocalCache { trunc, table: HashMap::new() }
    }

    fn get(&mut self, n: usize) -> &TruncatedSeries {
        let trunc = self.trunc;
        self.table.entry(n).or_insert_with(|| reciprocal_pochhammer(n, trunc))
    }
}

/// Sum side of Gordon's identity through `x^trunc`.
///
/// Iterates over `N_1 ≥ N_2 ≥ … ≥ N_{k-1} ≥ 0` with the exponent bounded by
/// `trunc` and recovers `n_j = N_j - N_{j+1}`.
pub fn gordon_sum_side(k: u32, i: u32, trunc: usize) -> Result<TruncatedSeries> {
    check_gordon_params(k, i)?;
    let len = (k - 1) as usize;
    let linear_from = (i - 1) as usize;
    let mut cache = ReciprocalCache::new(trunc);
    let mut total = TruncatedSeries::zero(trunc);
    let mut big_n = vec![0usize; len];
    gordon_tuples(0, usize::MAX, 0, len, linear_from, trunc, &mut big_n, &mut |ns, exponent| {
        let mut term = TruncatedSeries::monomial(Rational::one(), exponent, trunc);
        for j in 0..len {
            let next = if j + 1 < len { ns[j + 1] } else { 0 };
            let n_j = ns[j] - next;
            if n_j > 0 {
                term = &term * cache.get(n_j);
            }
        }
        total = &total + &term;
    });
    Ok(total)
}

/// Enumerates decreasing tuples `N` position by position, pruning on the
/// partial exponent (every term is nonnegative).
#[allow(clippy::too_many_arguments)]
fn gordon_tuples(
    pos: usize,
    upper: usize,
    partial: usize,
    len: usize,
    linear_from: usize,
    trunc: usize,
    ns: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize], usize),
) {
    if pos == len {
        visit(ns, partial);
        return;
    }
    let mut value = 0usize;
    loop {
        if value > upper {
            break;
        }
        let mut cost = value * value;
        if pos >= linear_from {
            cost += value;
        }
        if partial + cost > trunc {
            break;
        }
        ns[pos] = value;
        gordon_tuples(pos + 1, value, partial + cost, len, linear_from, trunc, ns, visit);
        value += 1;
    }
}

/// Residues `r mod (2k+1)` excluded from the product side: `0, ±i`.
fn excluded_residue(r: u32, modulus: u32, i: u32) -> bool {
    let res = r % modulus;
    res == 0 || res == i || res == modulus - i
}

/// Product side of Gordon's identity through `x^trunc`.
pub fn gordon_product_side(k: u32, i: u32, trunc: usize) -> Result<TruncatedSeries> {
    check_gordon_params(k, i)?;
    let modulus = 2 * k + 1;
    let one = Rational::one();
    let mut s = TruncatedSeries::one(trunc);
    for r in 1..=trunc as u32 {
        if !excluded_residue(r, modulus, i) {
            s.div_one_minus_monomial(&one, r as usize);
        }
    }
    Ok(s)
}

/// `Σ_{λ: λ_1 < k} x^{Σ(λ'_i)²} / Π_i (x)_{m_i(λ)}` through `x^trunc`.
///
/// This is the `i = k` sum side re-indexed by partitions via `n_j = m_j(λ)`.
pub fn partition_sum_side(k: u32, trunc: usize) -> Result<TruncatedSeries> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be >= 2, got {k}")));
    }
    let mut cache = ReciprocalCache::new(trunc);
    let mut total = TruncatedSeries::zero(trunc);
    // Σ(λ'_i)² ≥ |λ|, so sizes beyond trunc never contribute.
    for lambda in enumerate_partitions(trunc as u32, Some(k)) {
        let exponent = lambda.sum_conj_sq() as usize;
        if exponent > trunc {
            continue;
        }
        total = &total + &partition_term(&lambda, trunc, &mut cache);
    }
    Ok(total)
}

fn partition_term(lambda: &Partition, trunc: usize, cache: &mut ReciprocalCache) -> TruncatedSeries {
    let mut term = TruncatedSeries::monomial(Rational::one(), lambda.sum_conj_sq() as usize, trunc);
    for &mult in lambda.multiplicities().values() {
        term = &term * cache.get(mult as usize);
    }
    term
}

/// Expansion of `Π_{r ≥ 1} (1 - v·t^r)` in `v`:
/// `c_j = (-1)^j t^{j(j+1)/2} / Π_{s=1}^{j} (1 - t^s)`.
pub fn euler_product_expansion(t: &Rational, trunc: usize) -> Result<TruncatedSeries> {
    if t.abs() >= Rational::one() {
        return Err(Error::InvalidParameter(format!("|t| must be < 1, got {t}")));
    }
    let mut coeffs = Vec::with_capacity(trunc + 1);
    let mut c = Rational::one();
    coeffs.push(c.clone());
    let mut t_pow = Rational::one();
    for _ in 1..=trunc {
        // c_j = c_{j-1} · (-t^j) / (1 - t^j)
        t_pow *= t;
        c = -c * &t_pow / (Rational::one() - &t_pow);
        coeffs.push(c.clone());
    }
    Ok(TruncatedSeries::from_coeffs(coeffs, trunc))
}
