//! Integer partitions (2D Young diagrams).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing, got {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("cannot parse partition {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// A weakly decreasing sequence of positive integers.
///
/// Ordering is by weight first, then lexicographically *descending* on the
/// parts, so iteration over a sorted collection visits `(), (1), (2), (1,1),
/// (3), (2,1), (1,1,1), ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates a weakly decreasing list; trailing zeros are stripped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Self { parts })
    }

    /// Sorts the given parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `λ_i` with 0-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Multiplicity `m_j` of each part size `j`.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn multiplicity(&self, j: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == j).count() as u32
    }

    /// Centralizer order `z_λ = ∏ j^{m_j} m_j!`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for (j, m) in self.multiplicities() {
            for k in 1..=m {
                z *= BigInt::from(j) * BigInt::from(k);
            }
        }
        z
    }

    /// Adds one part of size `j`.
    pub fn with_part(&self, j: u32) -> Self {
        let mut parts = self.parts.clone();
        parts.push(j);
        Self::from_unsorted(parts)
    }

    /// Removes one part equal to `j`, if present.
    pub fn without_part(&self, j: u32) -> Option<Self> {
        let pos = self.parts.iter().position(|&p| p == j)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Self { parts })
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Self) -> Self {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Self::from_unsorted(parts)
    }

    pub fn conjugate(&self) -> Self {
        let cols = self.part(0) as usize;
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        Self { parts }
    }

    /// Hook length of cell `(i, j)` (0-based).
    pub fn hook(&self, i: usize, j: usize) -> u32 {
        let arm = self.part(i) - j as u32 - 1;
        let leg = self.parts[i + 1..].iter().filter(|&&p| p as usize > j).count() as u32;
        arm + leg + 1
    }

    /// All partitions of `n`, lexicographically descending.
    pub fn all_of(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill(n, n, &mut cur, &mut out);
        out
    }

    /// All partitions of weight `0..=max_weight`, in [`Ord`] order.
    pub fn all_up_to(max_weight: u32) -> Vec<Partition> {
        (0..=max_weight).flat_map(Self::all_of).collect()
    }
}

fn fill(remaining: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        cur.push(p);
        fill(remaining - p, p, cur, out);
        cur.pop();
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Accepts `(2,1)`, `2,1`, `()` and `∅`.
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PartitionError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = text.trim();
        if trimmed == "∅" {
            return Ok(Self::empty());
        }
        let inner = match (trimmed.strip_prefix('('), trimmed.strip_suffix(')')) {
            (Some(_), Some(_)) => &trimmed[1..trimmed.len() - 1],
            (None, None) => trimmed,
            _ => return Err(err("unbalanced parentheses")),
        };
        if inner.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|s| s.trim().parse::<u32>().map_err(|_| err("parts must be non-negative integers")))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts).map_err(|_| err("parts must be positive and weakly decreasing"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn counts_match_partition_numbers() {
        let counts: Vec<usize> = (0..=10).map(|n| Partition::all_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn ordering_is_graded_then_descending() {
        let all = Partition::all_up_to(3);
        let shown: Vec<String> = all.iter().map(|l| l.to_string()).collect();
        assert_eq!(shown, ["()", "(1)", "(2)", "(1,1)", "(3)", "(2,1)", "(1,1,1)"]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn z_values() {
        assert_eq!(p(&[2]).z(), BigInt::from(2));
        assert_eq!(p(&[1, 1]).z(), BigInt::from(2));
        assert_eq!(p(&[2, 2, 1]).z(), BigInt::from(8));
        assert_eq!(Partition::empty().z(), BigInt::from(1));
    }

    #[test]
    fn parsing() {
        assert_eq!("(2,1)".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!(" 3, 1 ".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("(1,2)".parse::<Partition>().is_err());
        assert!("(2,1".parse::<Partition>().is_err());
        assert!("(a)".parse::<Partition>().is_err());
    }

    #[test]
    fn hooks_and_conjugate() {
        let l = p(&[2, 1]);
        assert_eq!((l.hook(0, 0), l.hook(0, 1), l.hook(1, 0)), (3, 1, 1));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }
}
