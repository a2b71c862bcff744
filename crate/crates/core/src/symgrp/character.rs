//! Irreducible characters by the Murnaghan–Nakayama rule, computed on
//! beta-sets: removing a rim hook of length `r` moves one bead from `b` to
//! `b - r`, with sign `(-1)` to the number of beads jumped over.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use super::SymGrpError;
use crate::partition::Partition;

/// `dim V_λ = n! / ∏ hooks`.
pub fn irrep_dimension(lambda: &Partition) -> u64 {
    let n = lambda.weight() as u64;
    let mut num: u128 = (1..=n as u128).product();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            num /= lambda.hook(i, j) as u128;
        }
    }
    num as u64
}

fn beta_set(lambda: &Partition) -> BTreeSet<u32> {
    let len = lambda.len() as u32;
    lambda.parts().iter().enumerate().map(|(i, &p)| p + len - 1 - i as u32).collect()
}

fn from_beta_set(beta: &BTreeSet<u32>) -> Partition {
    let parts = beta.iter().rev().enumerate().map(|(i, &b)| b - (beta.len() - 1 - i) as u32).collect();
    Partition::from_unsorted(parts)
}

/// Memoized Murnaghan–Nakayama evaluator.
#[derive(Default)]
pub struct CharacterTable {
    memo: HashMap<(Partition, Partition), i64>,
}

impl CharacterTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `χ^λ(μ)`.
    pub fn value(&mut self, lambda: &Partition, mu: &Partition) -> Result<i64, SymGrpError> {
        if lambda.weight() != mu.weight() {
            return Err(SymGrpError::SizeMismatch { lambda: lambda.weight(), mu: mu.weight() });
        }
        Ok(self.mn(lambda, mu))
    }

    fn mn(&mut self, lambda: &Partition, mu: &Partition) -> i64 {
        let Some(&r) = mu.parts().first() else {
            return 1;
        };
        if let Some(&v) = self.memo.get(&(lambda.clone(), mu.clone())) {
            return v;
        }
        let rest = mu.without_part(r).expect("first part present");
        let beta = beta_set(lambda);
        let mut total = 0;
        for &b in &beta {
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let jumped = beta.range(b - r + 1..b).count();
            let mut moved = beta.clone();
            moved.remove(&b);
            moved.insert(b - r);
            let sign = if jumped.is_multiple_of(2) { 1 } else { -1 };
            total += sign * self.mn(&from_beta_set(&moved), &rest);
        }
        self.memo.insert((lambda.clone(), mu.clone()), total);
        total
    }
}

/// `χ^λ(μ)` for a single pair.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64, SymGrpError> {
    CharacterTable::new().value(lambda, mu)
}

/// Full table for `S_n`: rows `λ`, columns `μ`, both in [`Partition::all_of`] order.
pub fn character_table(n: u32) -> Vec<Vec<i64>> {
    let parts = Partition::all_of(n);
    parts
        .par_iter()
        .map(|lambda| {
            let mut table = CharacterTable::new();
            parts.iter().map(|mu| table.mn(lambda, mu)).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(irrep_dimension(&part(&[4])), 1);
        assert_eq!(irrep_dimension(&part(&[1, 1, 1, 1])), 1);
        assert_eq!(irrep_dimension(&part(&[2, 1])), 2);
        assert_eq!(irrep_dimension(&part(&[3, 2])), 5);
        assert_eq!(irrep_dimension(&Partition::empty()), 1);
    }

    #[test]
    fn character_examples() {
        for mu in Partition::all_of(5) {
            assert_eq!(character(&part(&[5]), &mu).unwrap(), 1);
            let sign = if (5 - mu.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(character(&part(&[1, 1, 1, 1, 1]), &mu).unwrap(), sign);
        }
        assert_eq!(character(&part(&[2, 1]), &part(&[3])).unwrap(), -1);
        assert_eq!(character(&part(&[2, 1]), &part(&[2, 1])).unwrap(), 0);
        assert!(matches!(
            character(&part(&[2, 1]), &part(&[2])),
            Err(SymGrpError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn s4_table() {
        // classes (4),(3,1),(2,2),(2,1,1),(1^4)
        let expected = vec![
            vec![1, 1, 1, 1, 1],
            vec![-1, 0, -1, 1, 3],
            vec![0, -1, 2, 0, 2],
            vec![1, 0, -1, -1, 3],
            vec![-1, 1, 1, -1, 1],
        ];
        assert_eq!(character_table(4), expected);
    }

    #[test]
    fn beta_roundtrip() {
        for l in Partition::all_up_to(6) {
            assert_eq!(from_beta_set(&beta_set(&l)), l);
        }
    }
}
