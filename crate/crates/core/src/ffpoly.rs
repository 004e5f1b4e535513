//! Polynomials over prime fields `F_q`, monic irreducible enumeration and
//! counting, and exact finite certificates for the product identity
//!
//! ```text
//!   Π_{φ ≠ z} Π_{r ≥ 1} (1 - u^{deg φ} / q^{r·deg φ}) = 1 - u
//! ```
//!
//! The identity is checked through its two finite ingredients: for each
//! fixed `t`, `Π_φ (1 - u^{m_φ}/q^{m_φ t}) = 1 - u/q^{t-1}` (the product runs
//! over all monic irreducibles, `z` included), and the telescoped product over
//! `t = 1..t_max`. Truncating the inner `r`-product is never exact, so it is
//! not used.
//!
//! Polynomial operations need `q` prime. Counting and generating-function
//! operations accept any integer `q ≥ 2`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::TruncatedSeries;
use crate::rational::{self, Rational};

/// Largest `q^d_max` the irreducible sieve will enumerate.
pub const SIEVE_GUARD: u64 = 1_000_000;

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(q: u64) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::NotPrime(q))
    }
}

pub(crate) fn inv_mod(a: u64, q: u64) -> u64 {
    // q is prime: a^(q-2)
    let mut result = 1u64;
    let mut base = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    result
}

/// A polynomial over `F_q` with ascending coefficients and no trailing zeros.
///
/// Ordered by degree, then by coefficients from the leading one downwards,
/// which matches the order produced by [`enumerate_monic_irreducibles`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FqPoly {
    q: u64,
    coeffs: Vec<u64>,
}

#[derive(Deserialize)]
struct RawPoly {
    q: u64,
    coeffs: Vec<u64>,
}

impl<'de> Deserialize<'de> for FqPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPoly::deserialize(d)?;
        if raw.coeffs.iter().any(|&c| c >= raw.q) {
            return Err(serde::de::Error::custom("coefficient not reduced mod q"));
        }
        FqPoly::new(raw.q, raw.coeffs).map_err(serde::de::Error::custom)
    }
}

impl FqPoly {
    /// Reduces coefficients mod `q` and strips trailing zeros.
    pub fn new(q: u64, coeffs: Vec<u64>) -> Result<Self> {
        check_prime(q)?;
        Ok(Self::from_reduced(q, coeffs.into_iter().map(|c| c % q).collect()))
    }

    fn from_reduced(q: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPoly { q, coeffs }
    }

    pub fn zero(q: u64) -> Self {
        FqPoly { q, coeffs: Vec::new() }
    }

    pub fn one(q: u64) -> Self {
        FqPoly { q, coeffs: vec![1] }
    }

    /// The polynomial `z`.
    pub fn z(q: u64) -> Self {
        FqPoly { q, coeffs: vec![0, 1] }
    }

    /// `z - a`.
    pub fn linear(q: u64, a: u64) -> Self {
        FqPoly { q, coeffs: vec![(q - a % q) % q, 1] }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            Err(Error::ModulusMismatch(self.q, other.q))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let q = self.q;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % q
            })
            .collect();
        Ok(Self::from_reduced(q, coeffs))
    }

    pub fn neg(&self) -> Self {
        let q = self.q;
        Self::from_reduced(q, self.coeffs.iter().map(|&c| (q - c) % q).collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Self {
        let q = self.q;
        Self::from_reduced(q, self.coeffs.iter().map(|&a| a * (c % q) % q).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let q = self.q;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(q));
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % q;
            }
        }
        Ok(Self::from_reduced(q, out))
    }

    /// Quotient and remainder of long division by a nonzero divisor.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_same(divisor)?;
        let q = self.q;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = inv_mod(divisor.leading(), q);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(q), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let c = rem[shift + dd] * lead_inv % q;
            quot[shift] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = (rem[shift + j] + q - c * b % q) % q;
            }
        }
        rem.truncate(dd);
        Ok((Self::from_reduced(q, quot), Self::from_reduced(q, rem)))
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.leading(), self.q))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn derivative(&self) -> Self {
        let q = self.q;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % q) * c % q)
            .collect();
        Self::from_reduced(q, coeffs)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.q);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % self.q)
    }

    /// `true` when `divisor` divides `self`.
    pub fn divisible_by(&self, divisor: &Self) -> Result<bool> {
        Ok(self.divmod(divisor)?.1.is_zero())
    }
}

impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q
            .cmp(&other.q)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "z")?,
                (1, c) => write!(f, "{c}z")?,
                (i, 1) => write!(f, "z^{i}")?,
                (i, c) => write!(f, "{c}z^{i}")?,
            }
        }
        Ok(())
    }
}

/// All monic irreducibles of degree `1..=d_max` over `F_q`, by a sieve: a
/// monic polynomial of degree `d` is irreducible iff no irreducible of degree
/// at most `d/2` divides it.
pub fn enumerate_monic_irreducibles(q: u64, d_max: usize) -> Result<BTreeMap<usize, Vec<FqPoly>>> {
    check_prime(q)?;
    let within_guard = q.checked_pow(d_max as u32).map(|n| n <= SIEVE_GUARD).unwrap_or(false);
    if !within_guard {
        return Err(Error::GuardExceeded(format!(
            "q^d_max = {q}^{d_max} exceeds {SIEVE_GUARD}; use count_irreducibles instead"
        )));
    }
    let mut out: BTreeMap<usize, Vec<FqPoly>> = BTreeMap::new();
    for d in 1..=d_max {
        let mut found = Vec::new();
        for idx in 0..q.pow(d as u32) {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                coeffs.push(rest % q);
                rest /= q;
            }
            coeffs.push(1);
            let f = FqPoly { q, coeffs };
            let mut reducible = false;
            'outer: for (_, polys) in out.range(1..=d / 2) {
                for g in polys {
                    if f.divisible_by(g)? {
                        reducible = true;
                        break 'outer;
                    }
                }
            }
            if !reducible {
                found.push(f);
            }
        }
        out.insert(d, found);
    }
    Ok(out)
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducibles of degree `d` over a field with `q`
/// elements: `(1/d) Σ_{e | d} μ(e) q^{d/e}`.
pub fn count_irreducibles(q: u64, d: u64) -> BigUint {
    assert!(q >= 2 && d >= 1, "count_irreducibles needs q >= 2 and d >= 1");
    let qb = BigInt::from(q);
    let mut total = BigInt::zero();
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let mu = mobius(e);
        if mu != 0 {
            total += BigInt::from(mu) * num_traits::pow(qb.clone(), (d / e) as usize);
        }
    }
    let quotient = total / BigInt::from(d);
    quotient.to_biguint().expect("irreducible count is nonnegative")
}

/// Exact binomial coefficient with a big upper index.
fn binomial(n: &BigUint, j: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..j {
        acc *= n - BigUint::from(i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// `Π_φ (1 - u^{m_φ}/q^{m_φ t})` over all monic irreducibles (including `z`),
/// through `u^trunc`. Irreducibles of degree `d` enter through
/// `(1 - u^d/q^{dt})^{N_d(q)}`; degrees above `trunc` cannot contribute.
pub fn verify_fixed_t_product(q: u64, t: u64, trunc: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(trunc);
    for d in 1..=trunc {
        let count = count_irreducibles(q, d as u64);
        if count.is_zero() {
            continue;
        }
        let step = rational::inv_power(q, d as u64 * t);
        let mut factor = TruncatedSeries::zero(trunc);
        let mut j = 0usize;
        let mut step_pow = Rational::one();
        while d * j <= trunc {
            if BigUint::from(j) > count {
                break;
            }
            let c = rational::from_biguint(&binomial(&count, j as u64)) * &step_pow;
            factor = &factor + &TruncatedSeries::monomial(if j.is_multiple_of(2) { c } else { -c }, d * j, trunc);
            step_pow *= &step;
            j += 1;
        }
        acc = &acc * &factor;
    }
    acc
}

/// `Π_{t=1}^{t_max} [Π_φ(1 - u^{m_φ}/q^{m_φ t}) / Π_φ(1 - u^{m_φ}/q^{m_φ(t+1)})]`
/// through `u^trunc`, each inner product taken from [`verify_fixed_t_product`].
/// Equals `(1-u)/(1-u/q^{t_max})` and tends to `1 - u` as `t_max` grows.
pub fn verify_telescoped_product(q: u64, t_max: u64, trunc: usize) -> Result<TruncatedSeries> {
    let mut acc = TruncatedSeries::one(trunc);
    for t in 1..=t_max {
        let num = verify_fixed_t_product(q, t, trunc);
        let den = verify_fixed_t_product(q, t + 1, trunc).reciprocal()?;
        acc = &(&acc * &num) * &den;
    }
    Ok(acc)
}

/// Expected value `1 - u·q^{1-t}` for [`verify_fixed_t_product`].
pub fn fixed_t_target(q: u64, t: u64, trunc: usize) -> TruncatedSeries {
    let c = rational::inv_power(q, t - 1);
    TruncatedSeries::from_coeffs(vec![Rational::one(), -c], trunc)
}

/// Expected value `(1-u)/(1-u/q^{t_max})` for [`verify_telescoped_product`].
pub fn telescoped_target(q: u64, t_max: u64, trunc: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::from_coeffs(vec![Rational::one(), -Rational::one()], trunc);
    if trunc >= 1 {
        s.div_one_minus_monomial(&rational::inv_power(q, t_max), 1);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn poly(q: u64, c: &[u64]) -> FqPoly {
        FqPoly::new(q, c.to_vec()).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let zp1 = poly(2, &[1, 1]);
        assert_eq!(zp1.mul(&zp1).unwrap(), poly(2, &[1, 0, 1]));
        assert_eq!(poly(2, &[1, 0, 1]).gcd(&zp1).unwrap(), zp1);
        let (quo, rem) = poly(3, &[1, 0, 1]).divmod(&poly(3, &[2, 1])).unwrap();
        assert_eq!(quo, poly(3, &[1, 1]));
        assert_eq!(rem, poly(3, &[2]));
    }

    #[test]
    fn arithmetic_errors() {
        assert_eq!(poly(2, &[1]).add(&poly(3, &[1])), Err(Error::ModulusMismatch(2, 3)));
        assert_eq!(poly(3, &[1, 1]).divmod(&FqPoly::zero(3)), Err(Error::DivisionByZero));
        assert_eq!(FqPoly::new(4, vec![1]), Err(Error::NotPrime(4)));
    }

    #[test]
    fn derivative_and_monic() {
        // d/dz (z^2 + 1) = 2z = 0 over F_2
        assert!(poly(2, &[1, 0, 1]).derivative().is_zero());
        assert_eq!(poly(3, &[1, 2, 2]).derivative(), poly(3, &[2, 1]));
        assert_eq!(poly(5, &[1, 2]).monic(), poly(5, &[3, 1]));
    }

    #[test]
    fn divmod_reconstructs() {
        let f = poly(5, &[3, 1, 4, 1, 2]);
        let g = poly(5, &[2, 0, 3]);
        let (quo, rem) = f.divmod(&g).unwrap();
        assert_eq!(quo.mul(&g).unwrap().add(&rem).unwrap(), f);
        assert!(rem.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn enumeration_examples() {
        let two = enumerate_monic_irreducibles(2, 2).unwrap();
        assert_eq!(two[&1], vec![FqPoly::z(2), poly(2, &[1, 1])]);
        assert_eq!(two[&2], vec![poly(2, &[1, 1, 1])]);
        let three = enumerate_monic_irreducibles(3, 1).unwrap();
        assert_eq!(three[&1], vec![poly(3, &[0, 1]), poly(3, &[1, 1]), poly(3, &[2, 1])]);
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(enumerate_monic_irreducibles(2, 20), Err(Error::GuardExceeded(_))));
        assert!(matches!(enumerate_monic_irreducibles(6, 2), Err(Error::NotPrime(6))));
    }

    #[test]
    fn counts_match_examples_and_enumeration() {
        assert_eq!(count_irreducibles(2, 2), BigUint::from(1u32));
        assert_eq!(count_irreducibles(2, 4), BigUint::from(3u32));
        assert_eq!(count_irreducibles(3, 2), BigUint::from(3u32));
        for q in [2u64, 3] {
            let table = enumerate_monic_irreducibles(q, 6).unwrap();
            for d in 1..=6 {
                assert_eq!(BigUint::from(table[&d].len()), count_irreducibles(q, d as u64), "q={q} d={d}");
            }
        }
    }

    #[test]
    fn every_field_element_has_a_minimal_polynomial() {
        for q in [2u64, 3, 5] {
            for big_d in 1..=8u64 {
                let total: BigUint = (1..=big_d)
                    .filter(|d| big_d % d == 0)
                    .map(|d| BigUint::from(d) * count_irreducibles(q, d))
                    .sum();
                assert_eq!(total, num_traits::pow(BigUint::from(q), big_d as usize));
            }
        }
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(&BigUint::from(5u32), 2), BigUint::from(10u32));
        assert_eq!(binomial(&BigUint::from(3u32), 0), BigUint::one());
    }

    #[test]
    fn fixed_t_examples() {
        let s = verify_fixed_t_product(2, 1, 10);
        assert_eq!(s, fixed_t_target(2, 1, 10));
        assert_eq!(s, TruncatedSeries::from_integers(&[1, -1], 10));
        assert_eq!(verify_fixed_t_product(3, 2, 10), fixed_t_target(3, 2, 10));
        assert_eq!(fixed_t_target(3, 2, 10).coeff(1), Some(&ratio(-1, 3)));
    }

    #[test]
    fn fixed_t_degree_two_decomposition() {
        // (1 - u/2)^2 from z and z+1, and (1 - u^2/4) from z^2+z+1.
        let linear = verify_fixed_t_product(2, 1, 1);
        assert_eq!(linear.coeff(1), Some(&int(-1)));
        let deg_one_part = TruncatedSeries::from_coeffs(vec![int(1), int(-1), ratio(1, 4)], 2);
        let deg_two_part = TruncatedSeries::from_coeffs(vec![int(1), int(0), ratio(-1, 4)], 2);
        let both = &deg_one_part * &deg_two_part;
        assert_eq!(both.coeff(2), Some(&int(0)));
        assert_eq!(both, verify_fixed_t_product(2, 1, 2));
    }

    #[test]
    fn telescoped_examples() {
        let one = verify_telescoped_product(2, 1, 5).unwrap();
        assert_eq!(one, telescoped_target(2, 1, 5));
        assert_eq!(one.coeff(2), Some(&ratio(-1, 4)));
        assert_eq!(verify_telescoped_product(2, 4, 8).unwrap(), telescoped_target(2, 4, 8));
        assert_eq!(verify_telescoped_product(5, 2, 4).unwrap().coeff(0), Some(&int(1)));
    }

    #[test]
    fn telescoped_residual_bounded() {
        let one_minus_u = TruncatedSeries::from_integers(&[1, -1], 10);
        for q in [2u64, 3] {
            for t_max in 1..=4 {
                let s = verify_telescoped_product(q, t_max, 10).unwrap();
                let residual = (&s - &one_minus_u).max_abs_coeff();
                assert!(residual <= rational::inv_power(q, t_max));
            }
        }
    }

    #[test]
    fn ordering_and_display() {
        let a = poly(2, &[1, 1]);
        let b = poly(2, &[0, 1]);
        let c = poly(2, &[1, 1, 1]);
        assert!(b < a && a < c);
        assert_eq!(c.to_string(), "z^2+z+1");
    }

    #[test]
    fn json_schema() {
        let f = poly(3, &[2, 0, 1]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"q":3,"coeffs":[2,0,1]}"#);
        assert_eq!(serde_json::from_str::<FqPoly>(&s).unwrap(), f);
        assert!(serde_json::from_str::<FqPoly>(r#"{"q":3,"coeffs":[5]}"#).is_err());
    }
}
