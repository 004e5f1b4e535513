//! Integer partitions and the statistics used throughout the crate.
//!
//! A partition is stored as its weakly decreasing list of positive parts.
//! Multiplicities `m_i`, the conjugate `λ'`, `n(λ) = Σ (i-1) λ_i`,
//! `Σ (λ'_i)^2` and Kung's `d_i` are all computed on demand.
//!
//! With `n` applied to the same partition whose conjugate is squared, the
//! identity `Σ (λ'_i)^2 = |λ| + 2 n(λ)` holds for every partition, because
//! `n(λ) = Σ_i C(λ'_i, 2)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. Serializes as a bare
/// JSON array, e.g. `[2,1]`; the empty partition is `[]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

/// Multiplicities together with the two quadratic statistics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    /// `m[i]` = number of parts equal to `i`; only nonzero entries present.
    pub m: BTreeMap<u32, u32>,
    pub n_lambda: u64,
    pub sum_conj_sq: u64,
}

impl Partition {
    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Checks that `parts` is already weakly decreasing and positive.
    pub fn from_parts(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidParameter("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter("partition parts must be weakly decreasing".into()));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(1, 1, ..., 1)` with `n` ones.
    pub fn column(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// Largest part, 0 for the empty partition.
    pub fn largest_part(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// `m_i(λ)`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.0.iter().filter(|&&p| p == i).count() as u32
    }

    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Transpose of the Young diagram: `λ'_i = #{j : λ_j ≥ i}`.
    pub fn conjugate(&self) -> Partition {
        let cols = (1..=self.largest_part())
            .map(|i| self.0.iter().take_while(|&&p| p >= i).count() as u32)
            .collect();
        Partition(cols)
    }

    /// `n(λ) = Σ_i (i-1) λ_i`.
    pub fn n_lambda(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// `Σ_i (λ'_i)^2`.
    pub fn sum_conj_sq(&self) -> u64 {
        self.conjugate().0.iter().map(|&c| (c as u64).pow(2)).sum()
    }

    pub fn statistics(&self) -> PartitionStats {
        PartitionStats {
            m: self.multiplicities(),
            n_lambda: self.n_lambda(),
            sum_conj_sq: self.sum_conj_sq(),
        }
    }

    /// Kung's `d_i(λ) = Σ_{h<i} h·m_h + i·Σ_{h≥i} m_h`, taken from the
    /// multiplicities. For `i` beyond the largest part this is `|λ|`.
    pub fn kung_d(&self, i: u32) -> u64 {
        let m = self.multiplicities();
        let below: u64 = m.range(..i).map(|(&h, &c)| h as u64 * c as u64).sum();
        let at_or_above: u64 = m.range(i..).map(|(_, &c)| c as u64).sum();
        below + i as u64 * at_or_above
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, p) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::from_parts(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of each size `0..=size` with every part strictly below
/// `max_part_exclusive` (`None` = unbounded), ordered by size and then
/// lexicographically descending within a size.
pub fn enumerate_partitions(size_max: u32, max_part_exclusive: Option<u32>) -> Vec<Partition> {
    let mut out = Vec::new();
    for n in 0..=size_max {
        let cap = match max_part_exclusive {
            Some(0) => continue,
            Some(k) => (k - 1).min(n),
            None => n,
        };
        let mut current = Vec::new();
        partitions_of(n, cap, &mut current, &mut out);
    }
    out
}

/// Partitions of exactly `n` with parts `< max_part_exclusive`, same order.
pub fn partitions_of_size(n: u32, max_part_exclusive: Option<u32>) -> Vec<Partition> {
    let cap = match max_part_exclusive {
        Some(0) => return Vec::new(),
        Some(k) => (k - 1).min(n),
        None => n,
    };
    let mut out = Vec::new();
    partitions_of(n, cap, &mut Vec::new(), &mut out);
    out
}

fn partitions_of(remaining: u32, cap: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for p in (1..=cap.min(remaining)).rev() {
        current.push(p);
        partitions_of(remaining - p, p, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_partitions(0, None), vec![Partition::empty()]);
        assert_eq!(
            enumerate_partitions(3, Some(2)),
            vec![Partition::empty(), p(&[1]), p(&[1, 1]), p(&[1, 1, 1])]
        );
        assert_eq!(enumerate_partitions(4, None).len(), 12);
    }

    #[test]
    fn enumeration_order_within_size() {
        let four = partitions_of_size(4, None);
        assert_eq!(four, vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn statistics_examples() {
        let s = p(&[2, 1]).statistics();
        assert_eq!(s.m, BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(s.sum_conj_sq, 5);
        assert_eq!(p(&[1, 1, 1]).n_lambda(), 3);
        assert_eq!(p(&[3, 1]).sum_conj_sq(), 6);
    }

    #[test]
    fn kung_d_examples() {
        assert_eq!(p(&[2, 1]).kung_d(1), 2);
        assert_eq!(p(&[2, 1]).kung_d(2), 3);
        assert_eq!(p(&[3, 3]).kung_d(2), 4);
        assert_eq!(p(&[3, 3]).kung_d(7), 6);
    }

    #[test]
    fn rejects_malformed_parts() {
        assert!(Partition::from_parts(vec![1, 2]).is_err());
        assert!(Partition::from_parts(vec![2, 0]).is_err());
        assert_eq!(Partition::new(vec![1, 0, 3]), p(&[3, 1]));
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&p(&[2, 1])).unwrap();
        assert_eq!(s, "[2,1]");
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    /// p(0..=n) by the standard coin-change recurrence.
    fn partition_counts(n: usize) -> Vec<u64> {
        let mut ways = vec![0u64; n + 1];
        ways[0] = 1;
        for part in 1..=n {
            for j in part..=n {
                ways[j] += ways[j - part];
            }
        }
        ways
    }

    #[test]
    fn enumeration_count_matches_oracle() {
        let p = partition_counts(18);
        for n in 0..=18u32 {
            let expected: u64 = p[..=n as usize].iter().sum();
            assert_eq!(enumerate_partitions(n, None).len() as u64, expected);
        }
    }

    #[test]
    fn bounded_enumeration_respects_cap() {
        for lambda in enumerate_partitions(12, Some(3)) {
            assert!(lambda.largest_part() < 3);
        }
        let all = enumerate_partitions(12, None);
        let capped = all.iter().filter(|l| l.largest_part() < 3).count();
        assert_eq!(enumerate_partitions(12, Some(3)).len(), capped);
    }

    #[test]
    fn conjugate_is_involution() {
        for lambda in enumerate_partitions(18, None) {
            assert_eq!(lambda.conjugate().conjugate(), lambda);
            assert_eq!(lambda.conjugate().size(), lambda.size());
        }
    }

    #[test]
    fn sum_conj_sq_orientation() {
        let all = enumerate_partitions(18, None);
        for lambda in &all {
            assert_eq!(lambda.sum_conj_sq(), lambda.size() + 2 * lambda.n_lambda(), "{lambda}");
        }
        // n taken on the conjugate instead does not give the same identity
        let lambda = p(&[3, 1]);
        assert_eq!(lambda.conjugate().n_lambda(), 3);
        assert_ne!(lambda.sum_conj_sq(), lambda.size() + 2 * lambda.conjugate().n_lambda());
        let mismatches = all
            .iter()
            .filter(|l| l.sum_conj_sq() != l.size() + 2 * l.conjugate().n_lambda())
            .count();
        assert!(mismatches > 0);
    }

    #[test]
    fn kung_d_is_conjugate_prefix_sum() {
        for lambda in enumerate_partitions(12, None) {
            let conj = lambda.conjugate();
            let mut prefix = 0u64;
            for i in 1..=lambda.largest_part() + 2 {
                prefix += conj.parts().get(i as usize - 1).copied().unwrap_or(0) as u64;
                assert_eq!(lambda.kung_d(i), prefix, "{lambda} i={i}");
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn json_roundtrip(parts in proptest::collection::vec(1u32..9, 0..8)) {
            let lambda = Partition::new(parts);
            let s = serde_json::to_string(&lambda).unwrap();
            proptest::prop_assert_eq!(serde_json::from_str::<Partition>(&s).unwrap(), lambda);
        }
    }
}
