//! Conjugacy classes of `GL(n, q)` and the statistics of the partition
//! `λ_φ` attached to a fixed irreducible `φ`.
//!
//! Centralizer orders follow Kung's formula
//!
//! ```text
//!   |C(α)| = Π_φ Π_i Π_{k=1}^{m_i(λ_φ)} (Q^{d_i} - Q^{d_i - k}),   Q = q^{deg φ},
//! ```
//!
//! which simplifies to `Π_φ Q^{Σ (λ'_i)²} Π_i (1/Q)_{m_i(λ_φ)}`. Both forms
//! are implemented and cross-checked.
//!
//! The cycle index reduces the probability that `λ_φ` has largest part `< k`
//! in `GL(n, q)` to `[u^n] E(u) S(u) / (1 - u)`, where
//! `E(u) = Π_{r≥1} (1 - u^m / Q^r)` and
//! `S(u) = Σ_{λ_1 < k} u^{m|λ|} / (Q^{Σ(λ'_i)²} Π_i (1/Q)_{m_i(λ)})`.
//! As `n → ∞` this tends to `Π_{r ≡ 0, ±k (mod 2k+1)} (1 - 1/Q^r)`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::{count_irreducibles, enumerate_monic_irreducibles, FqPoly};
use crate::fqlinalg::{radical_annihilates, rcf_class_data_with, ClassData, MatFq};
use crate::partitions::{enumerate_partitions, partitions_of_size, Partition};
use crate::qseries::{euler_product_expansion, TruncatedSeries};
use crate::rational::{self, Rational};

/// Largest `n` accepted by [`enumerate_classes`].
pub const CLASS_ENUMERATION_GUARD: usize = 6;
/// Largest matrix space `q^{n²}` a census will iterate.
pub const CENSUS_GUARD: u64 = 100_000_000;

/// `|GL(n, q)| = Π_{i=0}^{n-1} (q^n - q^i)`.
pub fn gl_order(n: u32, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let qn = num_traits::pow(qb.clone(), n as usize);
    (0..n).map(|i| &qn - num_traits::pow(qb.clone(), i as usize)).product()
}

/// `q^{n²} · Π_{i=1}^{n} (1 - q^{-i})`.
pub fn gl_order_product_form(n: u32, q: u64) -> Rational {
    let qr = rational::int(q as i64);
    let lead = rational::pow(&qr, (n as i64) * (n as i64));
    lead * rational::pochhammer_at(&qr.recip(), n as usize)
}

/// One `(φ, λ_φ)` entry with `φ` identified only by degree and a tag.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AbstractEntry {
    pub degree: usize,
    pub tag: u64,
    pub lambda: Partition,
}

/// Conjugacy-class data with irreducibles identified by `(degree, tag)`.
///
/// Degree-1 tags `0..q-1` stand for the `q - 1` irreducibles `z - a`, `a ≠ 0`;
/// `z` itself has no tag. Degree-`d` tags range over `0..N_d(q)`. Entries are
/// kept sorted by `(degree, tag)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbstractClassData {
    entries: Vec<AbstractEntry>,
}

impl AbstractClassData {
    /// Builds class data from entries in any order; empty partitions are dropped.
    pub fn new(mut entries: Vec<AbstractEntry>) -> Self {
        entries.retain(|e| !e.lambda.is_empty());
        entries.sort();
        AbstractClassData { entries }
    }

    pub fn entries(&self) -> &[AbstractEntry] {
        &self.entries
    }

    pub fn dimension(&self) -> u64 {
        self.entries.iter().map(|e| e.lambda.size() * e.degree as u64).sum()
    }

    /// Partition at `(degree, tag)`, empty if absent.
    pub fn partition_at(&self, degree: usize, tag: u64) -> Partition {
        self.entries
            .iter()
            .find(|e| e.degree == degree && e.tag == tag)
            .map(|e| e.lambda.clone())
            .unwrap_or_default()
    }

    pub fn degree_partitions(&self) -> impl Iterator<Item = (usize, &Partition)> {
        self.entries.iter().map(|e| (e.degree, &e.lambda))
    }

    pub fn centralizer_order(&self, q: u64) -> BigUint {
        centralizer_order(self.degree_partitions(), q)
    }

    pub fn class_size(&self, n: u32, q: u64) -> BigUint {
        class_size(self.degree_partitions(), n, q)
    }
}

impl ClassData {
    pub fn centralizer_order(&self, q: u64) -> BigUint {
        centralizer_order(self.degree_partitions(), q)
    }

    /// Maps concrete class data to its abstract form: degree-1 tags index the
    /// nonzero roots in enumeration order (`z` is dropped), higher degrees
    /// index [`enumerate_monic_irreducibles`].
    pub fn to_abstract(&self, table: &BTreeMap<usize, Vec<FqPoly>>) -> Result<AbstractClassData> {
        let mut entries = Vec::new();
        for (phi, lambda) in self.iter() {
            let degree = phi.degree().unwrap_or(0);
            let pos = table
                .get(&degree)
                .and_then(|polys| polys.iter().position(|p| p == phi))
                .ok_or_else(|| Error::Internal(format!("{phi} missing from irreducible table")))?;
            let tag = if degree == 1 {
                if pos == 0 {
                    return Err(Error::InvalidParameter("class data involves z; not an invertible class".into()));
                }
                pos as u64 - 1
            } else {
                pos as u64
            };
            entries.push(AbstractEntry { degree, tag, lambda: lambda.clone() });
        }
        Ok(AbstractClassData::new(entries))
    }
}

/// Kung's product `Π_φ Π_i Π_{k=1}^{m_i} (Q^{d_i} - Q^{d_i-k})`.
pub fn centralizer_order<'a>(data: impl IntoIterator<Item = (usize, &'a Partition)>, q: u64) -> BigUint {
    let mut acc = BigUint::one();
    for (degree, lambda) in data {
        let big_q = BigUint::from(q).pow(degree as u32);
        for (&i, &mult) in lambda.multiplicities().iter() {
            let d = lambda.kung_d(i) as u32;
            let top = big_q.pow(d);
            for k in 1..=mult {
                acc *= &top - big_q.pow(d - k);
            }
        }
    }
    acc
}

/// The simplified form `Π_φ Q^{Σ(λ'_i)²} Π_i (1/Q)_{m_i}` as an exact rational.
pub fn centralizer_order_simplified<'a>(
    data: impl IntoIterator<Item = (usize, &'a Partition)>,
    q: u64,
) -> Rational {
    let mut acc = Rational::one();
    for (degree, lambda) in data {
        let big_q = rational::int(q as i64).pow(degree as i32);
        acc *= rational::pow(&big_q, lambda.sum_conj_sq() as i64);
        let inv = big_q.recip();
        for &mult in lambda.multiplicities().values() {
            acc *= rational::pochhammer_at(&inv, mult as usize);
        }
    }
    acc
}

/// `|GL(n,q)| / |C(α)|`; panics if the centralizer order does not divide
/// the group order (it always does for valid class data).
pub fn class_size<'a>(data: impl IntoIterator<Item = (usize, &'a Partition)>, n: u32, q: u64) -> BigUint {
    let order = gl_order(n, q);
    let cent = centralizer_order(data, q);
    let (size, rem) = order.div_rem(&cent);
    assert!(rem.is_zero(), "centralizer order {cent} does not divide |GL({n},{q})| = {order}");
    size
}

/// Number of `(degree, tag)` slots for irreducibles other than `z`.
fn tag_count(degree: usize, q: u64) -> u64 {
    let count = count_irreducibles(q, degree as u64);
    let count = if degree == 1 { count - BigUint::one() } else { count };
    count.to_u64().expect("irreducible count fits in u64 at guarded sizes")
}

/// Every conjugacy class of `GL(n, q)` exactly once, as abstract data.
pub fn enumerate_classes(n: usize, q: u64) -> Result<Vec<AbstractClassData>> {
    if n > CLASS_ENUMERATION_GUARD {
        return Err(Error::GuardExceeded(format!(
            "class enumeration supports n <= {CLASS_ENUMERATION_GUARD}, got {n}"
        )));
    }
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q must be >= 2, got {q}")));
    }
    let mut slots = Vec::new();
    for degree in 1..=n {
        for tag in 0..tag_count(degree, q) {
            slots.push((degree, tag));
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    assign_slots(&slots, 0, n, &mut current, &mut out);
    Ok(out)
}

fn assign_slots(
    slots: &[(usize, u64)],
    pos: usize,
    remaining: usize,
    current: &mut Vec<AbstractEntry>,
    out: &mut Vec<AbstractClassData>,
) {
    if remaining == 0 {
        out.push(AbstractClassData::new(current.clone()));
        return;
    }
    // slots are sorted by degree, so a too-large degree ends the search
    let Some(&(degree, tag)) = slots.get(pos) else { return };
    if degree > remaining {
        return;
    }
    assign_slots(slots, pos + 1, remaining, current, out);
    for size in 1..=remaining / degree {
        for lambda in partitions_of_size(size as u32, None) {
            current.push(AbstractEntry { degree, tag, lambda });
            assign_slots(slots, pos + 1, remaining - size * degree, current, out);
            current.pop();
        }
    }
}

/// Probability that `λ_φ` has largest part `< k` for a fixed `φ` of degree
/// `m`, by summing class sizes over [`enumerate_classes`]. The distinguished
/// `φ` is tag 0 of degree `m`.
pub fn probability_by_classes(n: u32, q: u64, k: u32, m: usize) -> Result<Rational> {
    check_probability_params(q, k, m)?;
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut favourable = BigUint::zero();
    for class in enumerate_classes(n as usize, q)? {
        if class.partition_at(m, 0).largest_part() < k {
            favourable += class.class_size(n, q);
        }
    }
    Ok(Rational::new(BigInt::from(favourable), BigInt::from(gl_order(n, q))))
}

/// The same probability as `[u^n] E(u) S(u) / (1 - u)` with exact rationals.
pub fn probability_by_cycle_index(n: u32, q: u64, k: u32, m: usize) -> Result<Rational> {
    check_probability_params(q, k, m)?;
    let n = n as usize;
    let big_q = rational::int(q as i64).pow(m as i32);
    let inv_q = big_q.recip();

    let euler = euler_product_expansion(&inv_q, n / m)?;
    let mut e = TruncatedSeries::zero(n);
    for j in 0..=n / m {
        e = &e + &TruncatedSeries::monomial(euler.coeff(j).cloned().expect("j within truncation"), j * m, n);
    }

    let mut s = TruncatedSeries::zero(n);
    for lambda in enumerate_partitions((n / m) as u32, Some(k)) {
        s = &s + &TruncatedSeries::monomial(
            cycle_index_weight(&lambda, &big_q),
            lambda.size() as usize * m,
            n,
        );
    }

    let product = &e * &s;
    Ok(product.coeffs().iter().sum())
}

/// `1 / (Q^{Σ(λ'_i)²} Π_i (1/Q)_{m_i(λ)})`.
pub fn cycle_index_weight(lambda: &Partition, big_q: &Rational) -> Rational {
    let mut denom = rational::pow(big_q, lambda.sum_conj_sq() as i64);
    let inv = big_q.recip();
    for &mult in lambda.multiplicities().values() {
        denom *= rational::pochhammer_at(&inv, mult as usize);
    }
    denom.recip()
}

fn check_probability_params(q: u64, k: u32, m: usize) -> Result<()> {
    if q < 2 || k < 2 || m < 1 {
        return Err(Error::InvalidParameter(format!(
            "need q >= 2, k >= 2, m >= 1; got q={q}, k={k}, m={m}"
        )));
    }
    Ok(())
}

/// Both evaluations of the finite-`n` probability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactProbability {
    #[serde(with = "rational::serde_str")]
    pub by_classes: Rational,
    #[serde(with = "rational::serde_str")]
    pub by_cycle_index: Rational,
}

impl ExactProbability {
    pub fn agree(&self) -> bool {
        self.by_classes == self.by_cycle_index
    }
}

pub fn exact_probability_max_part_lt(n: u32, q: u64, k: u32, m: usize) -> Result<ExactProbability> {
    Ok(ExactProbability {
        by_classes: probability_by_classes(n, q, k, m)?,
        by_cycle_index: probability_by_cycle_index(n, q, k, m)?,
    })
}

/// A closed rational interval `[lo, hi]`. Serializes as `{"lo": "...", "hi": "..."}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rational::serde_str")]
    pub lo: Rational,
    #[serde(with = "rational::serde_str")]
    pub hi: Rational,
}

impl Interval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    /// Distance from `x` to the farthest point of the interval.
    pub fn max_distance(&self, x: &Rational) -> Rational {
        let a = (x - &self.lo).abs();
        let b = (x - &self.hi).abs();
        a.max(b)
    }
}


/// Brackets `Π_{r ≥ 1, admissible(r)} (1 - Q^{-(r - shift)})` to width `tol`.
///
/// The partial product over `r ≤ R` is an upper bound. Since
/// `Π_{r>R}(1 - a_r) ≥ 1 - Σ_{r>R} a_r` and
/// `Σ_{r>R} Q^{-(r-shift)} = Q^{-(R-shift)}/(Q-1)`, multiplying by that
/// factor gives the lower bound. Every admissible `r` must exceed `shift`.
pub fn bracket_product(big_q: &Rational, admissible: impl Fn(u64) -> bool, shift: u64, tol: &Rational) -> Result<Interval> {
    if tol <= &Rational::zero() {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    if big_q <= &Rational::one() {
        return Err(Error::InvalidParameter("product base must exceed 1".into()));
    }
    let inv = big_q.recip();
    let q_minus_one = big_q - Rational::one();
    let mut partial = Rational::one();
    let mut r = 0u64;
    loop {
        r += 1;
        if admissible(r) {
            if r <= shift {
                return Err(Error::InvalidParameter(format!("admissible r = {r} does not exceed shift {shift}")));
            }
            partial *= Rational::one() - rational::pow(&inv, (r - shift) as i64);
        }
        if r <= shift {
            continue;
        }
        let tail = rational::pow(&inv, (r - shift) as i64) / &q_minus_one;
        if tail < Rational::one() {
            let lo = &partial * (Rational::one() - &tail);
            if &partial - &lo <= *tol {
                return Ok(Interval { lo, hi: partial });
            }
        }
    }
}

/// `r ≡ 0, ±k (mod 2k+1)`.
pub fn excluded_residue(r: u64, k: u32) -> bool {
    let modulus = 2 * k as u64 + 1;
    let res = r % modulus;
    res == 0 || res == k as u64 || res == k as u64 + 1
}

/// Interval around `Π_{r ≡ 0, ±k (mod 2k+1)} (1 - q^{-m r})`, the `n → ∞`
/// limit of the probability that `λ_φ` has largest part `< k`.
pub fn limit_probability(q: u64, k: u32, m: usize, tol: &Rational) -> Result<Interval> {
    check_probability_params(q, k, m)?;
    let big_q = rational::int(q as i64).pow(m as i32);
    bracket_product(&big_q, |r| excluded_residue(r, k), 0, tol)
}

fn check_census_guard(n: usize, q: u64) -> Result<u64> {
    if !crate::ffpoly::is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("census needs n >= 1".into()));
    }
    match q.checked_pow((n * n) as u32) {
        Some(size) if size <= CENSUS_GUARD => Ok(size),
        _ => Err(Error::GuardExceeded(format!("q^(n^2) = {q}^{} exceeds {CENSUS_GUARD}", n * n))),
    }
}

/// Number of census shards (one per leading row).
pub fn shard_count(n: usize, q: u64) -> Result<u64> {
    check_census_guard(n, q)?;
    Ok(q.pow(n as u32))
}

/// Tally of class data over the invertible matrices whose first row has
/// base-`q` index `lead_row`.
pub fn census_shard(n: usize, q: u64, lead_row: u64) -> Result<BTreeMap<ClassData, u64>> {
    let size = check_census_guard(n, q)?;
    let table = enumerate_monic_irreducibles(q, n)?;
    let per_shard = size / q.pow(n as u32);
    let mut tally = BTreeMap::new();
    for rest in 0..per_shard {
        let a = MatFq::from_index(q, n, lead_row * per_shard + rest);
        if !a.is_invertible() {
            continue;
        }
        let data = rcf_class_data_with(&a, &table)?;
        *tally.entry(data).or_insert(0) += 1;
    }
    Ok(tally)
}

/// Associative merge of census tallies.
pub fn merge_tallies<K: Ord>(mut a: BTreeMap<K, u64>, b: BTreeMap<K, u64>) -> BTreeMap<K, u64> {
    for (key, count) in b {
        *a.entry(key).or_insert(0) += count;
    }
    a
}

/// Exhaustive class census of `GL(n, q)`.
pub fn census(n: usize, q: u64) -> Result<BTreeMap<ClassData, u64>> {
    let mut tally = BTreeMap::new();
    for lead in 0..shard_count(n, q)? {
        tally = merge_tallies(tally, census_shard(n, q, lead)?);
    }
    Ok(tally)
}

/// One census class compared against Kung's formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub class: ClassData,
    pub count: u64,
    #[serde(serialize_with = "rational::ser_biguint_str")]
    pub formula_size: BigUint,
}

/// Census tally joined with formula class sizes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub q: u64,
    pub rows: Vec<CensusRow>,
    pub total: u64,
    #[serde(serialize_with = "rational::ser_biguint_str")]
    pub group_order: BigUint,
    /// Number of classes produced by [`enumerate_classes`].
    pub enumerated_classes: usize,
}

impl CensusReport {
    /// Every census count equals the formula size, the total is the group
    /// order, and the census hits exactly the enumerated classes.
    pub fn consistent(&self) -> bool {
        self.rows.iter().all(|r| BigUint::from(r.count) == r.formula_size)
            && BigUint::from(self.total) == self.group_order
            && self.rows.len() == self.enumerated_classes
    }
}

/// Joins a census tally with Kung's class sizes and the abstract enumeration.
pub fn census_report(n: usize, q: u64, tally: BTreeMap<ClassData, u64>) -> Result<CensusReport> {
    let table = enumerate_monic_irreducibles(q, n)?;
    let enumerated = enumerate_classes(n, q)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut rows = Vec::new();
    let mut total = 0;
    for (class, count) in tally {
        let abs = class.to_abstract(&table)?;
        if !enumerated.contains(&abs) || !seen.insert(abs) {
            return Err(Error::Internal(format!("census class {:?} not in the enumeration", class)));
        }
        let formula_size = class_size(class.degree_partitions(), n as u32, q);
        total += count;
        rows.push(CensusRow { class, count, formula_size });
    }
    Ok(CensusReport { n, q, rows, total, group_order: gl_order(n as u32, q), enumerated_classes: enumerated.len() })
}

/// Semisimple proportion of all of `Mat(n, q)` by two criteria, with the
/// two candidate limiting products for comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemisimpleCensus {
    pub n: usize,
    pub q: u64,
    pub total: u64,
    /// Matrices whose every `λ_φ` has largest part at most one.
    pub by_partitions: u64,
    /// Matrices annihilated by the radical of their characteristic polynomial.
    pub by_radical: u64,
    #[serde(with = "rational::serde_str")]
    pub proportion: Rational,
    /// `Π_{r ≡ 0, ±2 (mod 5)} (1 - q^{-(r-1)})`.
    pub exponent_r_minus_1: Interval,
    /// `Π_{r ≡ 0, ±2 (mod 5)} (1 - q^{-r})`.
    pub exponent_r: Interval,
}

impl SemisimpleCensus {
    pub fn criteria_agree(&self) -> bool {
        self.by_partitions == self.by_radical
    }
}

/// `(total, by_partitions, by_radical)` over matrices with leading row `lead_row`.
pub fn semisimple_shard(n: usize, q: u64, lead_row: u64) -> Result<(u64, u64, u64)> {
    let size = check_census_guard(n, q)?;
    let table = enumerate_monic_irreducibles(q, n)?;
    let per_shard = size / q.pow(n as u32);
    let (mut total, mut by_parts, mut by_rad) = (0, 0, 0);
    for rest in 0..per_shard {
        let a = MatFq::from_index(q, n, lead_row * per_shard + rest);
        total += 1;
        let partition_test = rcf_class_data_with(&a, &table)?.is_semisimple();
        let radical_test = radical_annihilates(&a, &table)?;
        by_parts += partition_test as u64;
        by_rad += radical_test as u64;
    }
    Ok((total, by_parts, by_rad))
}

pub fn semisimple_from_counts(n: usize, q: u64, counts: (u64, u64, u64), tol: &Rational) -> Result<SemisimpleCensus> {
    let (total, by_partitions, by_radical) = counts;
    let big_q = rational::int(q as i64);
    Ok(SemisimpleCensus {
        n,
        q,
        total,
        by_partitions,
        by_radical,
        proportion: Rational::new(BigInt::from(by_partitions), BigInt::from(total)),
        exponent_r_minus_1: bracket_product(&big_q, |r| excluded_residue(r, 2), 1, tol)?,
        exponent_r: bracket_product(&big_q, |r| excluded_residue(r, 2), 0, tol)?,
    })
}

/// Exhaustive semisimple census of `Mat(n, q)`, singular matrices included.
pub fn semisimple_census(n: usize, q: u64, tol: &Rational) -> Result<SemisimpleCensus> {
    let mut counts = (0, 0, 0);
    for lead in 0..shard_count(n, q)? {
        let (a, b, c) = semisimple_shard(n, q, lead)?;
        counts = (counts.0 + a, counts.1 + b, counts.2 + c);
    }
    semisimple_from_counts(n, q, counts, tol)
}
