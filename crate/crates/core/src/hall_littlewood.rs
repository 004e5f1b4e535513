//! Hall-Littlewood polynomials `P_λ(x_1, …, x_n; t)` from both classical
//! definitions, their `t = 0` / `t = 1` degenerations, and the principal
//! specialization
//!
//! ```text
//!   P_λ(1/q, 1/q², …; 1/q) / q^{n(λ)} = 1 / (q^{|λ| + 2n(λ)} Π_i (1/q)_{m_i(λ)})
//! ```
//!
//! Summing the right-hand side over `λ_1 < k` recovers the `i = k` Gordon
//! sum at `x = 1/q`, which [`theorem4_check`] brackets against the product
//! `Π_{r ≢ 0, ±k (mod 2k+1)} 1/(1 - q^{-r})`.
//!
//! Symbolic computations are carried out on polynomials in `x_1..x_n, t`
//! with integer coefficients. Rational factors `(x_i - t x_j)/(x_i - x_j)` are
//! brought over the Vandermonde denominator, summed, and the denominator is
//! removed by exact division; a nonzero remainder is an error.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::glnq::Interval;
use crate::partitions::{enumerate_partitions, Partition};
use crate::qseries::pochhammer;
use crate::rational::{self, Rational};

/// Largest variable count accepted by [`hl_poly_full_sum`].
pub const FULL_SUM_GUARD: usize = 6;

/// Integer polynomial in `x_1..x_n, t`; exponent vectors have length `n + 1`
/// with the `t` exponent last.
type MPoly = HashMap<Vec<u32>, BigInt>;

fn mpoly_add_term(p: &mut MPoly, exps: Vec<u32>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    *p.entry(exps).or_insert_with(BigInt::zero) += c;
}

fn mpoly_prune(p: &mut MPoly) {
    p.retain(|_, c| !c.is_zero());
}

fn mpoly_mul(a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = MPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            mpoly_add_term(&mut out, e, ca * cb);
        }
    }
    mpoly_prune(&mut out);
    out
}

fn monomial(width: usize, assignments: &[(usize, u32)]) -> Vec<u32> {
    let mut e = vec![0; width];
    for &(i, p) in assignments {
        e[i] += p;
    }
    e
}

/// `x_a - t^s x_b` over `n` variables (`s ∈ {0, 1}`).
fn linear_factor(n: usize, a: usize, b: usize, t_power: u32) -> MPoly {
    let mut p = MPoly::new();
    p.insert(monomial(n + 1, &[(a, 1)]), BigInt::one());
    p.insert(monomial(n + 1, &[(b, 1), (n, t_power)]), -BigInt::one());
    p
}

/// Exact division by `x_a - x_b`; errors on a nonzero remainder.
fn mpoly_div_linear(p: &MPoly, a: usize, b: usize) -> Result<MPoly> {
    let mut rem: BTreeMap<Vec<u32>, BigInt> = p.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
    let mut quot = MPoly::new();
    loop {
        rem.retain(|_, c| !c.is_zero());
        let Some(top) = rem.keys().map(|e| e[a]).max() else { break };
        if top == 0 {
            return Err(Error::Internal(format!(
                "denominator x_{} - x_{} does not cancel",
                a + 1,
                b + 1
            )));
        }
        let leading: Vec<(Vec<u32>, BigInt)> =
            rem.iter().filter(|(e, _)| e[a] == top).map(|(e, c)| (e.clone(), c.clone())).collect();
        for (e, c) in leading {
            rem.remove(&e);
            let mut qe = e.clone();
            qe[a] -= 1;
            // c·x_a^top·rest = (x_a - x_b)·c·x_a^{top-1}·rest + c·x_a^{top-1}·x_b·rest
            let mut carry = qe.clone();
            carry[b] += 1;
            *rem.entry(carry).or_insert_with(BigInt::zero) += &c;
            mpoly_add_term(&mut quot, qe, c);
        }
    }
    mpoly_prune(&mut quot);
    Ok(quot)
}

fn divide_by_vandermonde(mut p: MPoly, n: usize) -> Result<MPoly> {
    for a in 0..n {
        for b in a + 1..n {
            p = mpoly_div_linear(&p, a, b)?;
        }
    }
    Ok(p)
}

/// A symmetric polynomial in `x_1..x_n` whose coefficients are integer
/// polynomials in `t` (ascending, no trailing zeros).
///
/// JSON form: a list of `{"exponents": [...], "t_coeffs": [...]}` sorted by
/// exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HLPolynomial {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct HLTerm {
    exponents: Vec<u32>,
    t_coeffs: Vec<i64>,
}

impl Serialize for HLPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<HLTerm> = self
            .terms
            .iter()
            .map(|(e, c)| HLTerm { exponents: e.clone(), t_coeffs: c.clone() })
            .collect();
        list.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HLPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let list = Vec::<HLTerm>::deserialize(d)?;
        let n_vars = list.first().map(|t| t.exponents.len()).unwrap_or(0);
        let mut terms = BTreeMap::new();
        for mut term in list {
            if term.exponents.len() != n_vars {
                return Err(serde::de::Error::custom("exponent vectors differ in length"));
            }
            while term.t_coeffs.last() == Some(&0) {
                term.t_coeffs.pop();
            }
            if !term.t_coeffs.is_empty() {
                terms.insert(term.exponents, term.t_coeffs);
            }
        }
        Ok(HLPolynomial { n_vars, terms })
    }
}

impl HLPolynomial {
    fn from_mpoly(p: &MPoly, n: usize) -> Result<Self> {
        let mut terms: BTreeMap<Vec<u32>, Vec<i64>> = BTreeMap::new();
        for (e, c) in p {
            if c.is_zero() {
                continue;
            }
            let t_exp = e[n] as usize;
            let c = c
                .to_i64()
                .ok_or_else(|| Error::Internal("coefficient exceeds i64".into()))?;
            let slot = terms.entry(e[..n].to_vec()).or_default();
            if slot.len() <= t_exp {
                slot.resize(t_exp + 1, 0);
            }
            slot[t_exp] += c;
        }
        for c in terms.values_mut() {
            while c.last() == Some(&0) {
                c.pop();
            }
        }
        terms.retain(|_, c| !c.is_empty());
        Ok(HLPolynomial { n_vars: n, terms })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Vec<i64>> {
        &self.terms
    }

    /// Coefficient polynomial in `t` of `x^exponents`.
    pub fn coeff(&self, exponents: &[u32]) -> &[i64] {
        self.terms.get(exponents).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Specializes `t`, leaving a polynomial in `x` with rational coefficients.
    pub fn at_t(&self, t: &Rational) -> BTreeMap<Vec<u32>, Rational> {
        let mut out = BTreeMap::new();
        for (e, cs) in &self.terms {
            let mut acc = Rational::zero();
            for c in cs.iter().rev() {
                acc = acc * t + rational::int(*c);
            }
            if !acc.is_zero() {
                out.insert(e.clone(), acc);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational], t: &Rational) -> Result<Rational> {
        if point.len() != self.n_vars {
            return Err(Error::InvalidParameter(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.n_vars
            )));
        }
        let mut total = Rational::zero();
        for (e, c) in self.at_t(t) {
            let mut term = c;
            for (x, &p) in point.iter().zip(&e) {
                term *= rational::pow(x, p as i64);
            }
            total += term;
        }
        Ok(total)
    }

    /// Exchanges `x_a` and `x_b`.
    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.swap(a, b);
                (e, c.clone())
            })
            .collect();
        HLPolynomial { n_vars: self.n_vars, terms }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n_vars).all(|a| (a + 1..self.n_vars).all(|b| &self.swap_vars(a, b) == self))
    }

    /// `Some(d)` if every monomial has total `x`-degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

fn padded(lambda: &Partition, n: usize) -> Result<Vec<u32>> {
    if lambda.len() > n {
        return Err(Error::InvalidParameter(format!(
            "partition {lambda} has more than {n} parts"
        )));
    }
    let mut v = lambda.parts().to_vec();
    v.resize(n, 0);
    Ok(v)
}

/// Distinct rearrangements of `v` in lexicographic order.
fn distinct_rearrangements(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next_permutation
    loop {
        let n = cur.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Coset representative sending the padded partition `lam` to the
/// rearrangement `mu`: equal parts keep their relative order, so `w` has
/// minimal length in its coset. Returns `w` as `w[i] = w(i)`.
fn coset_representative(lam: &[u32], mu: &[u32]) -> Vec<usize> {
    let mut used = vec![false; mu.len()];
    lam.iter()
        .map(|&part| {
            let pos = (0..mu.len()).find(|&p| !used[p] && mu[p] == part).expect("mu rearranges lam");
            used[pos] = true;
            pos
        })
        .collect()
}

/// `Σ_{w ∈ S_n / S_n^λ} w(x^λ Π_{λ_i > λ_j} (x_i - t x_j)/(x_i - x_j))`.
pub fn hl_poly_cosets(lambda: &Partition, n_vars: usize) -> Result<HLPolynomial> {
    let lam = padded(lambda, n_vars)?;
    let n = n_vars;
    let mut total = MPoly::new();
    for mu in distinct_rearrangements(&lam) {
        let w = coset_representative(&lam, &mu);
        let assignments: Vec<(usize, u32)> = (0..n).map(|i| (w[i], lam[i])).collect();
        let mut term = MPoly::new();
        term.insert(monomial(n + 1, &assignments), BigInt::one());
        let mut in_denominator = vec![vec![false; n]; n];
        let mut sign_negative = false;
        for i in 0..n {
            for j in 0..n {
                if lam[i] > lam[j] {
                    term = mpoly_mul(&term, &linear_factor(n, w[i], w[j], 1));
                    let (a, b) = (w[i].min(w[j]), w[i].max(w[j]));
                    in_denominator[a][b] = true;
                    if w[i] > w[j] {
                        sign_negative = !sign_negative;
                    }
                }
            }
        }
        // bring over the full Vandermonde denominator
        for a in 0..n {
            for b in a + 1..n {
                if !in_denominator[a][b] {
                    term = mpoly_mul(&term, &linear_factor(n, a, b, 0));
                }
            }
        }
        for (e, c) in term {
            mpoly_add_term(&mut total, e, if sign_negative { -c } else { c });
        }
    }
    mpoly_prune(&mut total);
    let quotient = divide_by_vandermonde(total, n)?;
    HLPolynomial::from_mpoly(&quotient, n)
}

/// `v_λ(t) = Π_{i ≥ 0} Π_{r=1}^{m_i} (1 - t^r)/(1 - t)`, with `m_0` the number
/// of zero parts after padding to `n_vars`. Ascending integer coefficients.
pub fn normalizer(lambda: &Partition, n_vars: usize) -> Vec<BigInt> {
    let mut mults: Vec<u32> = lambda.multiplicities().values().copied().collect();
    mults.push((n_vars - lambda.len()) as u32);
    let mut acc = vec![BigInt::one()];
    for m in mults {
        for r in 1..=m as usize {
            // multiply by 1 + t + … + t^{r-1}
            let mut next = vec![BigInt::zero(); acc.len() + r - 1];
            for (i, c) in acc.iter().enumerate() {
                for slot in next.iter_mut().skip(i).take(r) {
                    *slot += c;
                }
            }
            acc = next;
        }
    }
    acc
}

/// Exact division of ascending integer polynomials.
fn t_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Result<Vec<BigInt>> {
    let lead = den.last().expect("nonzero divisor");
    let mut rem = num.to_vec();
    if rem.len() < den.len() {
        return if rem.iter().all(|c| c.is_zero()) {
            Ok(Vec::new())
        } else {
            Err(Error::Internal("normalizer does not divide".into()))
        };
    }
    let mut quot = vec![BigInt::zero(); rem.len() - den.len() + 1];
    for shift in (0..quot.len()).rev() {
        let top = &rem[shift + den.len() - 1];
        if top.is_zero() {
            continue;
        }
        if !(top % lead).is_zero() {
            return Err(Error::Internal("normalizer does not divide".into()));
        }
        let c = top / lead;
        for (j, d) in den.iter().enumerate() {
            rem[shift + j] -= &c * d;
        }
        quot[shift] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::Internal("normalizer does not divide".into()));
    }
    Ok(quot)
}

/// All permutations of `0..n` with their signs, by Heap's algorithm.
fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut negative = false;
    let mut out = vec![(perm.clone(), negative)];
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            negative = !negative;
            out.push((perm.clone(), negative));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `(1/v_λ(t)) Σ_{w ∈ S_n} w(x^λ Π_{i<j} (x_i - t x_j)/(x_i - x_j))`.
pub fn hl_poly_full_sum(lambda: &Partition, n_vars: usize) -> Result<HLPolynomial> {
    if n_vars > FULL_SUM_GUARD {
        return Err(Error::GuardExceeded(format!(
            "full symmetrization supports at most {FULL_SUM_GUARD} variables"
        )));
    }
    let lam = padded(lambda, n_vars)?;
    let n = n_vars;
    let assignments: Vec<(usize, u32)> = (0..n).map(|i| (i, lam[i])).collect();
    let mut base = MPoly::new();
    base.insert(monomial(n + 1, &assignments), BigInt::one());
    for i in 0..n {
        for j in i + 1..n {
            base = mpoly_mul(&base, &linear_factor(n, i, j, 1));
        }
    }
    // w(Δ) = sgn(w) Δ, so the symmetrized sum is Σ sgn(w) w(F) / Δ.
    let mut total = MPoly::new();
    for (w, negative) in permutations_with_sign(n) {
        for (e, c) in &base {
            let mut moved = vec![0u32; n + 1];
            for i in 0..n {
                moved[w[i]] = e[i];
            }
            moved[n] = e[n];
            mpoly_add_term(&mut total, moved, if negative { -c.clone() } else { c.clone() });
        }
    }
    mpoly_prune(&mut total);
    let symmetrized = divide_by_vandermonde(total, n)?;

    let v = normalizer(lambda, n);
    let mut grouped: BTreeMap<Vec<u32>, Vec<BigInt>> = BTreeMap::new();
    for (e, c) in symmetrized {
        let t_exp = e[n] as usize;
        let slot = grouped.entry(e[..n].to_vec()).or_default();
        if slot.len() <= t_exp {
            slot.resize(t_exp + 1, BigInt::zero());
        }
        slot[t_exp] += c;
    }
    let mut out = MPoly::new();
    for (x_exp, t_poly) in grouped {
        for (t_exp, c) in t_poly_div_exact(&t_poly, &v)?.into_iter().enumerate() {
            let mut e = x_exp.clone();
            e.push(t_exp as u32);
            mpoly_add_term(&mut out, e, c);
        }
    }
    mpoly_prune(&mut out);
    HLPolynomial::from_mpoly(&out, n)
}

/// Evaluates the coset sum directly at a point with distinct coordinates,
/// without expanding symbolically.
pub fn eval_cosets_at(lambda: &Partition, point: &[Rational], t: &Rational) -> Result<Rational> {
    check_distinct(point)?;
    let lam = padded(lambda, point.len())?;
    let n = point.len();
    let mut total = Rational::zero();
    for mu in distinct_rearrangements(&lam) {
        let w = coset_representative(&lam, &mu);
        let mut term = Rational::one();
        for i in 0..n {
            term *= rational::pow(&point[w[i]], lam[i] as i64);
        }
        for i in 0..n {
            for j in 0..n {
                if lam[i] > lam[j] {
                    let (xi, xj) = (&point[w[i]], &point[w[j]]);
                    term *= (xi - t * xj) / (xi - xj);
                }
            }
        }
        total += term;
    }
    Ok(total)
}

fn check_distinct(point: &[Rational]) -> Result<()> {
    for a in 0..point.len() {
        for b in a + 1..point.len() {
            if point[a] == point[b] {
                return Err(Error::RepeatedCoordinates);
            }
        }
    }
    Ok(())
}

/// `P_λ(1/q, …, 1/q^N; 1/q) / q^{n(λ)}`.
pub fn principal_specialization(lambda: &Partition, q: u64, n_vars: usize) -> Result<Rational> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q must be >= 2, got {q}")));
    }
    let point: Vec<Rational> = (1..=n_vars as u64).map(|i| rational::inv_power(q, i)).collect();
    let t = rational::inv_power(q, 1);
    let value = eval_cosets_at(lambda, &point, &t)?;
    Ok(value * rational::inv_power(q, lambda.n_lambda()))
}

/// `1 / (q^{|λ| + 2n(λ)} Π_i (1/q)_{m_i(λ)})`.
pub fn closed_form_by_n_lambda(lambda: &Partition, q: u64) -> Rational {
    let t = rational::inv_power(q, 1);
    let mut value = rational::inv_power(q, lambda.size() + 2 * lambda.n_lambda());
    for &m in lambda.multiplicities().values() {
        value /= rational::pochhammer_at(&t, m as usize);
    }
    value
}

/// `1 / (q^{Σ (λ'_i)²} Π_i (1/q)_{m_i(λ)})`.
pub fn closed_form_by_conjugate(lambda: &Partition, q: u64) -> Rational {
    let t = rational::inv_power(q, 1);
    let mut denom = rational::pow(&rational::int(q as i64), lambda.sum_conj_sq() as i64);
    for &m in lambda.multiplicities().values() {
        denom *= rational::pochhammer_at(&t, m as usize);
    }
    denom.recip()
}

/// Limit of [`principal_specialization`] as the number of variables grows;
/// both closed forms are computed and must agree.
pub fn closed_form_specialization(lambda: &Partition, q: u64) -> Result<Rational> {
    let a = closed_form_by_n_lambda(lambda, q);
    let b = closed_form_by_conjugate(lambda, q);
    if a != b {
        return Err(Error::Internal(format!("closed forms disagree for {lambda}: {a} vs {b}")));
    }
    Ok(a)
}

/// The Gordon sum-side term `x^{Σ(λ'_i)²} / Π_i (x)_{m_i(λ)}` at `x = 1/q`,
/// evaluated from the polynomial `(x)_m`.
pub fn gordon_term_at(lambda: &Partition, q: u64) -> Rational {
    let x = rational::inv_power(q, 1);
    let mut value = rational::pow(&x, lambda.sum_conj_sq() as i64);
    for &m in lambda.multiplicities().values() {
        let m = m as usize;
        value /= pochhammer(m, m * (m + 1) / 2).eval_truncated(&x);
    }
    value
}

/// Schur polynomial value `det(x_i^{λ_j + n - j}) / det(x_i^{n - j})`.
pub fn schur_via_alternants(lambda: &Partition, point: &[Rational]) -> Result<Rational> {
    check_distinct(point)?;
    let n = point.len();
    let lam = padded(lambda, n)?;
    let alternant = |shift: &dyn Fn(usize) -> u32| {
        let m: Vec<Vec<Rational>> = point
            .iter()
            .map(|x| (0..n).map(|j| rational::pow(x, shift(j) as i64)).collect())
            .collect();
        determinant(m)
    };
    let num = alternant(&|j| lam[j] + (n - 1 - j) as u32);
    let den = alternant(&|j| (n - 1 - j) as u32);
    Ok(num / den)
}

fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Monomial symmetric polynomial `m_λ(x_1..x_n)` as exponent vectors.
pub fn monomial_symmetric(lambda: &Partition, n_vars: usize) -> Result<Vec<Vec<u32>>> {
    Ok(distinct_rearrangements(&padded(lambda, n_vars)?))
}

/// Brackets for both sides of the specialization identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializationCheck {
    pub lhs_interval: Interval,
    pub rhs_interval: Interval,
    pub consistent: bool,
    /// Number of partitions summed on the left.
    pub lhs_terms: usize,
    /// Bound on `Σ (λ'_i)²` for the summed partitions.
    pub lhs_cutoff: u64,
}

/// Upper bound for `P(y) = Π_{r≥1} 1/(1 - y^r)` with `0 < y < 1`, via
/// `Π_{r>R}(1 - y^r) ≥ 1 - y^{R+1}/(1-y)`.
fn partition_gf_upper_bound(y: &Rational) -> Rational {
    let one = Rational::one();
    let half = rational::ratio(1, 2);
    let mut partial = one.clone();
    let mut y_pow = one.clone();
    loop {
        y_pow *= y;
        partial /= &one - &y_pow;
        let tail = &y_pow * y / (&one - y);
        if tail <= half {
            return partial / (&one - tail);
        }
    }
}

/// Brackets `Σ_{λ_1 < k} P_λ(1/q, 1/q², …; 1/q)/q^{n(λ)}` and
/// `Π_{r ≢ 0, ±k (mod 2k+1)} 1/(1 - q^{-r})`, each to width at most `tol`.
///
/// Left side: partial sums of closed-form terms over `Σ(λ'_i)² ≤ B`. Every
/// omitted term expands into `x`-powers above `B` with nonnegative
/// coefficients dominated by the partition numbers, so the tail is at most
/// `Σ_{s>B} p(s) x^s ≤ P(y) (x/y)^{B+1} / (1 - x/y)` for `y = (1+x)/2`.
///
/// Right side: the partial product over `r ≤ R` is a lower bound, and
/// `Π_{r>R} 1/(1 - x^r) ≤ 1/(1 - x^{R+1}/(1-x))` gives the upper bound.
pub fn theorem4_check(q: u64, k: u32, tol: &Rational) -> Result<SpecializationCheck> {
    if q < 2 || k < 2 {
        return Err(Error::InvalidParameter(format!("need q >= 2 and k >= 2, got q={q}, k={k}")));
    }
    if tol <= &Rational::zero() {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let one = Rational::one();
    let x = rational::inv_power(q, 1);

    let y = (&one + &x) / rational::int(2);
    let ratio = &x / &y;
    let gf_bound = partition_gf_upper_bound(&y);
    let mut cutoff = 0u64;
    let mut tail = &gf_bound * &ratio / (&one - &ratio);
    while tail > *tol {
        cutoff += 1;
        tail *= &ratio;
    }
    let mut lhs_sum = Rational::zero();
    let mut lhs_terms = 0;
    for lambda in enumerate_partitions(cutoff as u32, Some(k)) {
        if lambda.sum_conj_sq() <= cutoff {
            lhs_sum += closed_form_specialization(&lambda, q)?;
            lhs_terms += 1;
        }
    }
    let lhs_interval = Interval { lo: lhs_sum.clone(), hi: lhs_sum + tail };

    let modulus = 2 * k as u64 + 1;
    let excluded = |r: u64| {
        let res = r % modulus;
        res == 0 || res == k as u64 || res == k as u64 + 1
    };
    let mut partial = one.clone();
    let mut x_pow = one.clone();
    let mut r = 0u64;
    let rhs_interval = loop {
        x_pow *= &x;
        r += 1;
        if !excluded(r) {
            partial /= &one - &x_pow;
        }
        let tail = &x_pow * &x / (&one - &x);
        if tail < one {
            let hi = &partial / (&one - &tail);
            if &hi - &partial <= *tol {
                break Interval { lo: partial.clone(), hi };
            }
        }
    };

    let consistent =
        lhs_interval.overlaps(&rhs_interval) && lhs_interval.width() <= *tol && rhs_interval.width() <= *tol;
    Ok(SpecializationCheck { lhs_interval, rhs_interval, consistent, lhs_terms, lhs_cutoff: cutoff })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use num_traits::Signed;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts.to_vec()).unwrap()
    }

    fn hl(terms: &[(&[u32], &[i64])], n: usize) -> HLPolynomial {
        HLPolynomial {
            n_vars: n,
            terms: terms.iter().map(|(e, c)| (e.to_vec(), c.to_vec())).collect(),
        }
    }

    #[test]
    fn coset_examples() {
        assert_eq!(hl_poly_cosets(&p(&[1]), 2).unwrap(), hl(&[(&[1, 0], &[1]), (&[0, 1], &[1])], 2));
        assert_eq!(hl_poly_cosets(&p(&[1, 1]), 2).unwrap(), hl(&[(&[1, 1], &[1])], 2));
        assert_eq!(
            hl_poly_cosets(&p(&[2]), 2).unwrap(),
            hl(&[(&[2, 0], &[1]), (&[1, 1], &[1, -1]), (&[0, 2], &[1])], 2)
        );
    }

    #[test]
    fn full_sum_examples() {
        assert_eq!(hl_poly_full_sum(&p(&[1]), 2).unwrap(), hl_poly_cosets(&p(&[1]), 2).unwrap());
        assert_eq!(hl_poly_full_sum(&p(&[2]), 2).unwrap(), hl_poly_cosets(&p(&[2]), 2).unwrap());
        assert_eq!(hl_poly_full_sum(&p(&[2, 1]), 3).unwrap(), hl_poly_cosets(&p(&[2, 1]), 3).unwrap());
        assert!(matches!(hl_poly_full_sum(&p(&[1]), 7), Err(Error::GuardExceeded(_))));
        assert!(hl_poly_cosets(&p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn normalizer_counts_zero_parts() {
        // λ = (1), n = 3: m_1 = 1, m_0 = 2 → [1]_t [1]_t [2]_t = 1 + t
        assert_eq!(normalizer(&p(&[1]), 3), vec![BigInt::one(), BigInt::one()]);
        // λ = ∅, n = 3: [3]_t! = (1)(1+t)(1+t+t²)
        let v: Vec<i64> = normalizer(&Partition::empty(), 3).iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(v, vec![1, 2, 2, 1]);
    }

    #[test]
    fn empty_partition_is_one() {
        let one = hl_poly_cosets(&Partition::empty(), 3).unwrap();
        assert_eq!(one, hl(&[(&[0, 0, 0], &[1])], 3));
        assert_eq!(hl_poly_full_sum(&Partition::empty(), 3).unwrap(), one);
    }

    #[test]
    fn symmetric_and_homogeneous() {
        for lambda in enumerate_partitions(4, None) {
            for n in lambda.len().max(1)..=4 {
                let poly = hl_poly_cosets(&lambda, n).unwrap();
                assert!(poly.is_symmetric(), "{lambda} n={n}");
                assert_eq!(poly.homogeneous_degree(), Some(lambda.size() as u32));
            }
        }
    }

    #[test]
    fn schur_examples() {
        let pt = [int(1), int(2)];
        assert_eq!(schur_via_alternants(&p(&[1]), &pt).unwrap(), int(3));
        assert_eq!(schur_via_alternants(&p(&[2]), &pt).unwrap(), int(7));
        assert_eq!(schur_via_alternants(&p(&[1, 1]), &pt).unwrap(), int(2));
        assert_eq!(schur_via_alternants(&p(&[1]), &[int(2), int(2)]), Err(Error::RepeatedCoordinates));
    }

    #[test]
    fn t_zero_is_schur() {
        let mut rng = StdRng::seed_from_u64(99);
        for lambda in enumerate_partitions(3, None) {
            let n = lambda.len().max(2);
            let poly = hl_poly_cosets(&lambda, n).unwrap();
            for _ in 0..5 {
                let pt: Vec<Rational> = (0..n).map(|i| ratio(rng.gen_range(1..20) * (i as i64 + 1) + 100 * i as i64, rng.gen_range(1..7))).collect();
                if check_distinct(&pt).is_err() {
                    continue;
                }
                assert_eq!(poly.eval(&pt, &int(0)).unwrap(), schur_via_alternants(&lambda, &pt).unwrap());
            }
        }
    }

    #[test]
    fn t_one_is_monomial() {
        let lambda = p(&[2, 1]);
        let poly = hl_poly_cosets(&lambda, 3).unwrap();
        let expected: BTreeMap<Vec<u32>, Rational> =
            monomial_symmetric(&lambda, 3).unwrap().into_iter().map(|e| (e, int(1))).collect();
        assert_eq!(poly.at_t(&int(1)), expected);
    }

    #[test]
    fn pointwise_matches_symbolic() {
        let t = ratio(1, 3);
        let pt = [ratio(1, 2), ratio(1, 5), ratio(2, 7)];
        for lambda in enumerate_partitions(3, None) {
            let symbolic = hl_poly_cosets(&lambda, 3).unwrap().eval(&pt, &t).unwrap();
            assert_eq!(eval_cosets_at(&lambda, &pt, &t).unwrap(), symbolic, "{lambda}");
        }
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(closed_form_specialization(&Partition::empty(), 5).unwrap(), int(1));
        assert_eq!(closed_form_specialization(&p(&[1]), 3).unwrap(), ratio(1, 2));
        assert_eq!(closed_form_specialization(&p(&[2, 1]), 2).unwrap(), ratio(1, 8));
        assert_eq!(closed_form_specialization(&p(&[1]), 2).unwrap(), int(1));
        assert_eq!(principal_specialization(&p(&[1]), 2, 4).unwrap(), ratio(15, 16));
        let two = principal_specialization(&p(&[2]), 2, 6).unwrap();
        let limit = closed_form_specialization(&p(&[2]), 2).unwrap();
        assert!((limit - two).abs() <= ratio(1, 16));
    }

    #[test]
    fn cosets_equal_full_sum() {
        for lambda in enumerate_partitions(4, None) {
            for n in lambda.len().max(1)..=4 {
                assert_eq!(
                    hl_poly_cosets(&lambda, n).unwrap(),
                    hl_poly_full_sum(&lambda, n).unwrap(),
                    "{lambda} n={n}"
                );
            }
        }
    }

    #[test]
    fn specialization_converges() {
        for q in [2u64, 3] {
            for lambda in enumerate_partitions(3, None).into_iter().filter(|l| !l.is_empty()) {
                let limit = closed_form_specialization(&lambda, q).unwrap();
                let errors: Vec<Rational> = (lambda.len()..=lambda.len() + 5)
                    .map(|n| (principal_specialization(&lambda, q, n).unwrap() - &limit).abs())
                    .collect();
                assert!(errors.windows(2).all(|w| w[1] < w[0]), "{lambda} q={q}");
            }
            assert_eq!(principal_specialization(&Partition::empty(), q, 3).unwrap(), int(1));
        }
    }

    #[test]
    fn gordon_terms_match_closed_form() {
        for q in [2u64, 3, 5] {
            for lambda in enumerate_partitions(7, None) {
                assert_eq!(gordon_term_at(&lambda, q), closed_form_specialization(&lambda, q).unwrap());
            }
        }
    }

    #[test]
    fn specialization_identity_examples() {
        let tol = ratio(1, 1_000_000);
        assert!(theorem4_check(2, 2, &tol).unwrap().consistent);
        assert!(theorem4_check(3, 3, &tol).unwrap().consistent);
        let big = theorem4_check(1000, 2, &tol).unwrap();
        assert!(big.consistent);
        assert!(big.rhs_interval.max_distance(&int(1)) < ratio(1, 100));
        assert!(theorem4_check(2, 1, &tol).is_err());
    }

    #[test]
    fn heap_permutations() {
        let perms = permutations_with_sign(4);
        assert_eq!(perms.len(), 24);
        let odd = perms.iter().filter(|(_, s)| *s).count();
        assert_eq!(odd, 12);
        for (w, negative) in &perms {
            let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count();
            assert_eq!(inversions % 2 == 1, *negative);
        }
    }

    #[test]
    fn json_roundtrip() {
        let poly = hl_poly_cosets(&p(&[2]), 2).unwrap();
        let s = serde_json::to_string(&poly).unwrap();
        assert_eq!(
            s,
            r#"[{"exponents":[0,2],"t_coeffs":[1]},{"exponents":[1,1],"t_coeffs":[1,-1]},{"exponents":[2,0],"t_coeffs":[1]}]"#
        );
        assert_eq!(serde_json::from_str::<HLPolynomial>(&s).unwrap(), poly);
    }
}
