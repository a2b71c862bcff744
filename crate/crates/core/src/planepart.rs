//! Plane partitions (3D Young diagrams): enumeration by volume, diagonal
//! slicing and its inverse.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::fock::interlaces;
use crate::partition::Partition;

/// Largest volume the exhaustive enumeration is meant for.
pub const DESK_SCALE_VOLUME: u32 = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanePartitionError {
    #[error("entry ({row}, {col}) breaks the weakly decreasing rule")]
    NotDecreasing { row: usize, col: usize },
    #[error("slices do not interlace at index {index}")]
    ChainViolation { index: i64 },
}

/// A finite array `π_ij ≥ 0`, weakly decreasing along rows and columns.
/// Zero entries and empty rows are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanePartition {
    rows: Vec<Vec<u32>>,
}

impl PlanePartition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(mut rows: Vec<Vec<u32>>) -> Result<Self, PlanePartitionError> {
        for row in rows.iter_mut() {
            while row.last() == Some(&0) {
                row.pop();
            }
        }
        while rows.last().is_some_and(Vec::is_empty) {
            rows.pop();
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let right_ok = row.get(j + 1).is_none_or(|&r| r <= v);
                let down_ok = rows.get(i + 1).and_then(|r| r.get(j)).is_none_or(|&d| d <= v);
                if v == 0 || !right_ok || !down_ok {
                    return Err(PlanePartitionError::NotDecreasing { row: i + 1, col: j + 1 });
                }
            }
            if i > 0 && row.len() > rows[i - 1].len() {
                return Err(PlanePartitionError::NotDecreasing { row: i + 1, col: rows[i - 1].len() + 1 });
            }
            if row.is_empty() && rows[i..].iter().any(|r| !r.is_empty()) {
                return Err(PlanePartitionError::NotDecreasing { row: i + 1, col: 1 });
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// `π_ij` with 0-based indices, zero outside the support.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.rows.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    pub fn volume(&self) -> u32 {
        self.rows.iter().flatten().sum()
    }

    /// Sum of the main-diagonal entries.
    pub fn trace(&self) -> u32 {
        (0..self.rows.len()).map(|i| self.entry(i, i)).sum()
    }

    /// `π(m) = (π_{i,i+m})_i` for `m ≥ 0` and `(π_{j-m,j})_j` for `m < 0`,
    /// for every `m` where the slice is nonempty.
    pub fn diagonal_slices(&self) -> BTreeMap<i64, Partition> {
        let mut out = BTreeMap::new();
        let height = self.rows.len() as i64;
        let width = self.rows.first().map_or(0, Vec::len) as i64;
        for m in (1 - height)..width {
            let (di, dj) = if m >= 0 { (0, m as usize) } else { ((-m) as usize, 0) };
            let parts: Vec<u32> = (0..)
                .map(|k| self.entry(k + di, k + dj))
                .take_while(|&v| v > 0)
                .collect();
            out.insert(m, Partition::new(parts).expect("diagonals of a plane partition decrease"));
        }
        out
    }

    /// Whether the slices satisfy `⋯ ≺ π(-1) ≺ π(0) ≻ π(1) ≻ ⋯`.
    pub fn check_slice_chain(&self) -> bool {
        chain_violation(&self.diagonal_slices()).is_none()
    }

    /// Rebuilds the plane partition from its diagonal slices.
    pub fn from_slices(family: &BTreeMap<i64, Partition>) -> Result<Self, PlanePartitionError> {
        if let Some(index) = chain_violation(family) {
            return Err(PlanePartitionError::ChainViolation { index });
        }
        let mut cells: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for (&m, slice) in family {
            for (k, &v) in slice.parts().iter().enumerate() {
                let pos = if m >= 0 { (k, k + m as usize) } else { (k + (-m) as usize, k) };
                cells.insert(pos, v);
            }
        }
        let height = cells.keys().map(|&(i, _)| i + 1).max().unwrap_or(0);
        let mut rows = vec![Vec::new(); height];
        for ((i, j), v) in cells {
            let row = &mut rows[i];
            if row.len() < j {
                row.resize(j, 0);
            }
            row.push(v);
        }
        Self::new(rows).map_err(|_| PlanePartitionError::ChainViolation { index: 0 })
    }
}

/// First index `m` at which the chain breaks: `π(m-1) ≻ π(m)` fails for `m > 0`,
/// `π(m+1) ≻ π(m)` fails for `m < 0`.
fn chain_violation(family: &BTreeMap<i64, Partition>) -> Option<i64> {
    let lo = family.keys().next().copied().unwrap_or(0).min(0);
    let hi = family.keys().next_back().copied().unwrap_or(0).max(0);
    let empty = Partition::empty();
    let get = |m: i64| family.get(&m).unwrap_or(&empty);
    for m in 1..=hi + 1 {
        if !interlaces(get(m - 1), get(m)) {
            return Some(m);
        }
    }
    (lo - 1..=-1).rev().find(|&m| !interlaces(get(m + 1), get(m)))
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows.iter().map(|r| format!("[{}]", r.iter().join(","))).join(",");
        write!(f, "[{rows}]")
    }
}

/// Every plane partition of the given volume, each once, in descending
/// lexicographic order of the row sequence (`[[2]], [[1,1]], [[1],[1]]`).
pub fn enumerate_plane_partitions(volume: u32) -> Vec<PlanePartition> {
    if volume == 0 {
        return vec![PlanePartition::empty()];
    }
    let first_rows: Vec<Vec<u32>> = (1..=volume)
        .flat_map(Partition::all_of)
        .map(|p| p.parts().to_vec())
        .collect();
    let mut out: Vec<PlanePartition> = first_rows
        .into_par_iter()
        .flat_map_iter(|first| {
            let rest = volume - first.iter().sum::<u32>();
            let mut found = Vec::new();
            let mut rows = vec![first.clone()];
            extend_rows(&first, rest, &mut rows, &mut found);
            found
        })
        .collect();
    out.sort_unstable_by(|a, b| b.rows.cmp(&a.rows));
    out
}

fn extend_rows(above: &[u32], remaining: u32, rows: &mut Vec<Vec<u32>>, out: &mut Vec<PlanePartition>) {
    if remaining == 0 {
        out.push(PlanePartition { rows: rows.clone() });
        return;
    }
    let mut row = Vec::new();
    bounded_rows(above, 0, remaining, &mut row, &mut |row, used| {
        rows.push(row.to_vec());
        extend_rows(row, remaining - used, rows, out);
        rows.pop();
    });
}

/// Calls `emit` with each nonempty weakly decreasing row dominated by `above`
/// (entrywise) whose sum is at most `budget`.
fn bounded_rows(above: &[u32], j: usize, budget: u32, row: &mut Vec<u32>, emit: &mut dyn FnMut(&[u32], u32)) {
    let sum: u32 = row.iter().sum();
    if !row.is_empty() {
        emit(row, sum);
    }
    if j >= above.len() {
        return;
    }
    let cap = above[j].min(row.last().copied().unwrap_or(u32::MAX)).min(budget - sum);
    for v in 1..=cap {
        row.push(v);
        bounded_rows(above, j + 1, budget, row, emit);
        row.pop();
    }
}

/// Number of plane partitions of each volume `0..=max_volume`.
pub fn plane_partition_counts(max_volume: u32) -> Vec<u64> {
    (0..=max_volume).map(|n| enumerate_plane_partitions(n).len() as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(rows: &[&[u32]]) -> PlanePartition {
        PlanePartition::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_plane_partitions(0), vec![PlanePartition::empty()]);
        assert_eq!(enumerate_plane_partitions(1), vec![pp(&[&[1]])]);
        assert_eq!(
            enumerate_plane_partitions(2),
            vec![pp(&[&[2]]), pp(&[&[1, 1]]), pp(&[&[1], &[1]])]
        );
    }

    #[test]
    fn counts_match_known_sequence() {
        // OEIS A000219
        assert_eq!(plane_partition_counts(8), vec![1, 1, 3, 6, 13, 24, 48, 86, 160]);
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let all = enumerate_plane_partitions(7);
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(all.len(), dedup.len());
        assert!(all.iter().all(|p| p.volume() == 7));
        assert!(all.iter().all(|p| PlanePartition::new(p.rows().to_vec()).as_ref() == Ok(p)));
    }

    #[test]
    fn slices_example() {
        let p = pp(&[&[2, 1], &[1]]);
        let slices = p.diagonal_slices();
        let expected: BTreeMap<i64, Partition> = [(-1, part(&[1])), (0, part(&[2])), (1, part(&[1]))].into();
        assert_eq!(slices, expected);
        assert!(p.check_slice_chain());
        assert_eq!(PlanePartition::from_slices(&expected).unwrap(), p);

        assert_eq!(pp(&[&[1]]).diagonal_slices(), [(0, part(&[1]))].into());
        assert!(PlanePartition::empty().diagonal_slices().is_empty());
    }

    #[test]
    fn from_slices_rejects_broken_chain() {
        let bad: BTreeMap<i64, Partition> = [(0, part(&[1])), (1, part(&[2]))].into();
        assert_eq!(PlanePartition::from_slices(&bad), Err(PlanePartitionError::ChainViolation { index: 1 }));
        let gap: BTreeMap<i64, Partition> = [(0, part(&[1])), (2, part(&[1]))].into();
        assert_eq!(PlanePartition::from_slices(&gap), Err(PlanePartitionError::ChainViolation { index: 2 }));
        let single: BTreeMap<i64, Partition> = [(0, part(&[1]))].into();
        assert_eq!(PlanePartition::from_slices(&single).unwrap(), pp(&[&[1]]));
    }

    #[test]
    fn constructor_rejects_non_plane_partitions() {
        assert!(PlanePartition::new(vec![vec![1, 2]]).is_err());
        assert!(PlanePartition::new(vec![vec![1], vec![2]]).is_err());
        assert!(PlanePartition::new(vec![vec![1], vec![1, 1]]).is_err());
        assert_eq!(PlanePartition::new(vec![vec![2, 0], vec![]]).unwrap(), pp(&[&[2]]));
    }

    #[test]
    fn trace_examples() {
        assert_eq!(pp(&[&[2]]).trace(), 2);
        assert_eq!(pp(&[&[1, 1]]).trace(), 1);
        assert_eq!(pp(&[&[2, 1], &[1]]).trace(), 2);
        assert_eq!(pp(&[&[2, 1], &[1, 1]]).trace(), 3);
    }
}
