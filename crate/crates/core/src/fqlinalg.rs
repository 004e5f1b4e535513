//! Dense square matrices over prime fields and the partition data of their
//! rational canonical form.
//!
//! For a monic irreducible `φ` of degree `m`, the partition `λ_φ(A)` is read
//! off kernel-dimension jumps: with `c_j = dim ker φ(A)^j / m`, the conjugate
//! partition is `(c_1, c_2 - c_1, c_3 - c_2, …)`. No canonical basis is
//! constructed.

use std::collections::BTreeMap;

use serde::{ser::SerializeSeq, Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffpoly::{enumerate_monic_irreducibles, inv_mod, FqPoly};
use crate::partitions::Partition;

/// Largest dimension accepted by cofactor-expansion operations.
pub const CHAR_POLY_GUARD: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatFq {
    q: u64,
    n: usize,
    entries: Vec<u64>,
}

impl MatFq {
    /// Builds a matrix from row-major entries, reduced mod `q`.
    pub fn new(q: u64, n: usize, entries: Vec<u64>) -> Result<Self> {
        if !crate::ffpoly::is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if entries.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(MatFq { q, n, entries: entries.into_iter().map(|e| e % q).collect() })
    }

    pub fn from_rows(q: u64, rows: &[&[u64]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("matrix rows must form a square".into()));
        }
        Self::new(q, n, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    pub fn zero(q: u64, n: usize) -> Self {
        MatFq { q, n, entries: vec![0; n * n] }
    }

    pub fn identity(q: u64, n: usize) -> Self {
        let mut m = Self::zero(q, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// The `index`-th matrix in base-`q` enumeration of all `q^{n²}` matrices,
    /// entry `(0,0)` most significant.
    pub fn from_index(q: u64, n: usize, mut index: u64) -> Self {
        let mut entries = vec![0; n * n];
        for slot in entries.iter_mut().rev() {
            *slot = index % q;
            index /= q;
        }
        MatFq { q, n, entries }
    }

    /// Companion matrix of a monic polynomial of positive degree.
    pub fn companion(f: &FqPoly) -> Result<Self> {
        let n = match f.degree() {
            Some(d) if d >= 1 && f.is_monic() => d,
            _ => return Err(Error::InvalidParameter("companion needs a monic polynomial of positive degree".into())),
        };
        let q = f.modulus();
        let mut m = Self::zero(q, n);
        for i in 1..n {
            m.entries[i * n + (i - 1)] = 1;
        }
        for i in 0..n {
            m.entries[i * n + (n - 1)] = (q - f.coeffs()[i]) % q;
        }
        Ok(m)
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::ModulusMismatch(self.q, other.q));
        }
        if self.n != other.n {
            return Err(Error::ShapeMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let q = self.q;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| (a + b) % q).collect();
        Ok(MatFq { q, n: self.n, entries })
    }

    pub fn scale(&self, c: u64) -> Self {
        let q = self.q;
        MatFq { q, n: self.n, entries: self.entries.iter().map(|a| a * (c % q) % q).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let (q, n) = (self.q, self.n);
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + a * other.entries[k * n + j]) % q;
                }
            }
        }
        Ok(MatFq { q, n, entries: out })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.q, self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            base = base.mul(&base).expect("same shape");
            e >>= 1;
        }
        acc
    }

    /// Rank by Gaussian elimination over `F_q`.
    pub fn rank(&self) -> usize {
        let (q, n) = (self.q, self.n);
        let mut m = self.entries.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| m[r * n + col] != 0) else {
                continue;
            };
            for j in 0..n {
                m.swap(rank * n + j, pivot * n + j);
            }
            let inv = inv_mod(m[rank * n + col], q);
            for j in 0..n {
                m[rank * n + j] = m[rank * n + j] * inv % q;
            }
            for r in 0..n {
                if r != rank && m[r * n + col] != 0 {
                    let f = m[r * n + col];
                    for j in 0..n {
                        m[r * n + j] = (m[r * n + j] + q * q - f * m[rank * n + j]) % q;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.n - self.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Inverse via Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let (q, n) = (self.q, self.n);
        let w = 2 * n;
        let mut m = vec![0u64; n * w];
        for i in 0..n {
            for j in 0..n {
                m[i * w + j] = self.entries[i * n + j];
            }
            m[i * w + n + i] = 1;
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| m[r * w + col] != 0)?;
            for j in 0..w {
                m.swap(col * w + j, pivot * w + j);
            }
            let inv = inv_mod(m[col * w + col], q);
            for j in 0..w {
                m[col * w + j] = m[col * w + j] * inv % q;
            }
            for r in 0..n {
                if r != col && m[r * w + col] != 0 {
                    let f = m[r * w + col];
                    for j in 0..w {
                        m[r * w + j] = (m[r * w + j] + q * q - f * m[col * w + j]) % q;
                    }
                }
            }
        }
        let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| m[i * w + n + j]).collect();
        Some(MatFq { q, n, entries })
    }

    /// `f(A)` by Horner's rule.
    pub fn eval_poly(&self, f: &FqPoly) -> Result<Self> {
        if f.modulus() != self.q {
            return Err(Error::ModulusMismatch(self.q, f.modulus()));
        }
        let mut acc = Self::zero(self.q, self.n);
        let id = Self::identity(self.q, self.n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self)?.add(&id.scale(c))?;
        }
        Ok(acc)
    }

    /// `det(zI - A)` by cofactor expansion with polynomial entries.
    pub fn char_poly(&self) -> Result<FqPoly> {
        if self.n > CHAR_POLY_GUARD {
            return Err(Error::GuardExceeded(format!(
                "char_poly by cofactor expansion supports n <= {CHAR_POLY_GUARD}, got {}",
                self.n
            )));
        }
        let q = self.q;
        let n = self.n;
        let mut cells = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let a = (q - self.get(i, j)) % q;
                let cell = if i == j { FqPoly::new(q, vec![a, 1])? } else { FqPoly::new(q, vec![a])? };
                cells.push(cell);
            }
        }
        let cols: Vec<usize> = (0..n).collect();
        cofactor_det(&cells, n, 0, &cols)
    }
}

/// Laplace expansion along `row` over the remaining columns.
fn cofactor_det(cells: &[FqPoly], n: usize, row: usize, cols: &[usize]) -> Result<FqPoly> {
    let q = cells[0].modulus();
    if cols.is_empty() {
        return Ok(FqPoly::one(q));
    }
    let mut acc = FqPoly::zero(q);
    for (pos, &c) in cols.iter().enumerate() {
        let entry = &cells[row * n + c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor_det(cells, n, row + 1, &rest)?;
        let term = entry.mul(&minor)?;
        acc = if pos % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
    }
    Ok(acc)
}

/// `λ_φ(A)`: the partition attached to `φ` in the rational canonical form of
/// `A`. Empty when `φ` does not divide the characteristic polynomial.
pub fn invariant_partition(a: &MatFq, phi: &FqPoly) -> Result<Partition> {
    let m = match phi.degree() {
        Some(d) if d >= 1 && phi.is_monic() => d,
        _ => return Err(Error::InvalidParameter("φ must be monic of positive degree".into())),
    };
    let phi_a = a.eval_poly(phi)?;
    let mut power = MatFq::identity(a.q, a.n);
    let mut prev = 0usize;
    let mut conj = Vec::new();
    loop {
        power = power.mul(&phi_a)?;
        let k = power.kernel_dim();
        if !k.is_multiple_of(m) {
            return Err(Error::Internal(format!(
                "kernel dimension {k} of φ(A)^j is not a multiple of deg φ = {m}"
            )));
        }
        let c = k / m;
        if c == prev {
            break;
        }
        conj.push((c - prev) as u32);
        prev = c;
    }
    Ok(Partition::new(conj).conjugate())
}

/// Rational-canonical-form data: each monic irreducible `φ` dividing the
/// characteristic polynomial, mapped to its nonempty partition `λ_φ`.
///
/// JSON form: a list of `{"phi": FqPoly, "lambda": [parts]}` sorted by
/// degree and then coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassData {
    entries: BTreeMap<FqPoly, Partition>,
}

#[derive(Serialize, Deserialize)]
struct ClassEntry {
    phi: FqPoly,
    lambda: Partition,
}

impl Serialize for ClassData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (phi, lambda) in &self.entries {
            seq.serialize_element(&ClassEntry { phi: phi.clone(), lambda: lambda.clone() })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ClassData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let list = Vec::<ClassEntry>::deserialize(d)?;
        let mut entries = BTreeMap::new();
        for e in list {
            if e.lambda.is_empty() {
                return Err(serde::de::Error::custom("class data partitions must be nonempty"));
            }
            entries.insert(e.phi, e.lambda);
        }
        Ok(ClassData { entries })
    }
}

impl ClassData {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `φ ↦ λ`; empty partitions are skipped.
    pub fn insert(&mut self, phi: FqPoly, lambda: Partition) {
        if !lambda.is_empty() {
            self.entries.insert(phi, lambda);
        }
    }

    pub fn get(&self, phi: &FqPoly) -> Option<&Partition> {
        self.entries.get(phi)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FqPoly, &Partition)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `Σ_φ |λ_φ| · deg φ`.
    pub fn dimension(&self) -> u64 {
        self.entries
            .iter()
            .map(|(phi, lambda)| lambda.size() * phi.degree().unwrap_or(0) as u64)
            .sum()
    }

    /// Degree/partition pairs, the only data centralizer orders depend on.
    pub fn degree_partitions(&self) -> impl Iterator<Item = (usize, &Partition)> {
        self.entries.iter().map(|(phi, l)| (phi.degree().unwrap_or(0), l))
    }

    /// Every partition has largest part at most one.
    pub fn is_semisimple(&self) -> bool {
        self.entries.values().all(|l| l.largest_part() <= 1)
    }
}

/// Irreducible factors of `f` (each listed once) by trial division against
/// a sieve of irreducibles up to `deg f`.
pub fn distinct_irreducible_factors(f: &FqPoly, table: &BTreeMap<usize, Vec<FqPoly>>) -> Result<Vec<FqPoly>> {
    let mut rest = f.clone();
    let mut found = Vec::new();
    for polys in table.values() {
        for phi in polys {
            if rest.degree().unwrap_or(0) == 0 {
                return Ok(found);
            }
            let mut divides = false;
            loop {
                let (quo, rem) = rest.divmod(phi)?;
                if !rem.is_zero() {
                    break;
                }
                divides = true;
                rest = quo;
            }
            if divides {
                found.push(phi.clone());
            }
        }
    }
    if rest.degree().unwrap_or(0) != 0 {
        return Err(Error::Internal(format!("{f} did not factor over the sieve")));
    }
    Ok(found)
}

/// Class data of `A`, using a caller-supplied irreducible table covering
/// degrees up to `A`'s dimension.
pub fn rcf_class_data_with(a: &MatFq, table: &BTreeMap<usize, Vec<FqPoly>>) -> Result<ClassData> {
    let chi = a.char_poly()?;
    let mut data = ClassData::new();
    for phi in distinct_irreducible_factors(&chi, table)? {
        let lambda = invariant_partition(a, &phi)?;
        data.insert(phi, lambda);
    }
    if data.dimension() != a.n as u64 {
        return Err(Error::Internal(format!(
            "class data dimension {} differs from n = {}",
            data.dimension(),
            a.n
        )));
    }
    Ok(data)
}

/// Rational-canonical-form class data of `A` (`n ≤ 5`).
pub fn rcf_class_data(a: &MatFq) -> Result<ClassData> {
    if a.n > CHAR_POLY_GUARD {
        return Err(Error::GuardExceeded(format!("rcf_class_data supports n <= {CHAR_POLY_GUARD}")));
    }
    let table = enumerate_monic_irreducibles(a.q, a.n.max(1))?;
    rcf_class_data_with(a, &table)
}

/// Independent semisimplicity test: the product of the distinct irreducible
/// factors of the characteristic polynomial annihilates `A`.
pub fn radical_annihilates(a: &MatFq, table: &BTreeMap<usize, Vec<FqPoly>>) -> Result<bool> {
    let chi = a.char_poly()?;
    let mut radical = FqPoly::one(a.q);
    for phi in distinct_irreducible_factors(&chi, table)? {
        radical = radical.mul(&phi)?;
    }
    Ok(a.eval_poly(&radical)?.entries.iter().all(|&e| e == 0))
}
