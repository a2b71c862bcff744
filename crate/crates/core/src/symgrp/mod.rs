//! Symmetric groups: permutations, the rational group algebra, Young
//! tableaux and symmetrizers.

mod character;
mod class_fn;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use itertools::Itertools;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::partition::Partition;
use crate::series::{rat, Rational};

pub use character::{character, character_table, irrep_dimension, CharacterTable};
pub use class_fn::{ch, induce_product, pairing, ClassFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymGrpError {
    #[error("not a permutation of 1..{n}: {images:?}")]
    NotAPermutation { n: usize, images: Vec<usize> },
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("size mismatch: |λ| = {lambda}, |μ| = {mu}")]
    SizeMismatch { lambda: u32, mu: u32 },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(u32, u32),
}

/// A permutation of `{1, ..., n}` in one-line notation (stored 0-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self, SymGrpError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(SymGrpError::NotAPermutation { n, images: images.to_vec() });
            }
            seen[i - 1] = true;
        }
        Ok(Self(images.iter().map(|i| i - 1).collect()))
    }

    /// Swaps `i` and `i + 1` (1-based `i`).
    pub fn simple_transposition(n: usize, i: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i - 1, i);
        Self(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            lengths.push(len);
        }
        Partition::from_unsorted(lengths)
    }

    pub fn sign(&self) -> i64 {
        let ct = self.cycle_type();
        if (self.0.len() - ct.len()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        (0..n).permutations(n).map(Perm).collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().map(|i| i + 1).join(","))
    }
}

/// Element of the group algebra `Q[S_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgElem {
    n: usize,
    terms: BTreeMap<Perm, Rational>,
}

impl GroupAlgElem {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_perm(Perm::identity(n), Rational::one())
    }

    pub fn from_perm(g: Perm, c: Rational) -> Self {
        let mut out = Self::zero(g.rank());
        out.add_term(g, c);
        out
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, g: Perm, c: Rational) {
        assert_eq!(g.rank(), self.n, "permutation rank must match the algebra");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(g.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn coeff(&self, g: &Perm) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Perm, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (g, v) in &self.terms {
            out.add_term(g.clone(), v * c);
        }
        out
    }
}

impl fmt::Display for GroupAlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let body = self.terms.iter().map(|(g, c)| format!("({c})*{g}")).join(" + ");
        f.write_str(&body)
    }
}

impl Add<&GroupAlgElem> for &GroupAlgElem {
    type Output = GroupAlgElem;
    fn add(self, rhs: &GroupAlgElem) -> GroupAlgElem {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }
}

impl Sub<&GroupAlgElem> for &GroupAlgElem {
    type Output = GroupAlgElem;
    fn sub(self, rhs: &GroupAlgElem) -> GroupAlgElem {
        self + &rhs.scale(&rat(-1))
    }
}

impl Mul<&GroupAlgElem> for &GroupAlgElem {
    type Output = GroupAlgElem;
    fn mul(self, rhs: &GroupAlgElem) -> GroupAlgElem {
        let mut out = GroupAlgElem::zero(self.n);
        for (g, a) in &self.terms {
            for (h, b) in &rhs.terms {
                out.add_term(g.compose(h), a * b);
            }
        }
        out
    }
}

/// A filling of a Young diagram with `1..=n`, each used once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YoungTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl YoungTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, SymGrpError> {
        let lengths: Vec<u32> = rows.iter().map(|r| r.len() as u32).collect();
        let shape = Partition::new(lengths.clone())
            .map_err(|_| SymGrpError::InvalidTableau(format!("row lengths {lengths:?} are not a partition")))?;
        let n = shape.weight() as usize;
        let mut entries: Vec<usize> = rows.iter().flatten().copied().collect();
        entries.sort_unstable();
        if entries != (1..=n).collect::<Vec<_>>() {
            return Err(SymGrpError::InvalidTableau(format!("entries must be 1..={n} exactly once")));
        }
        Ok(Self { shape, rows })
    }

    /// Fills the shape row by row with `1, 2, ...`.
    pub fn row_reading(shape: &Partition) -> Self {
        let mut next = 1;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let row: Vec<usize> = (next..next + len as usize).collect();
                next += len as usize;
                row
            })
            .collect();
        Self { shape: shape.clone(), rows }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.shape.part(0) as usize;
        (0..width)
            .map(|j| self.rows.iter().filter_map(|r| r.get(j).copied()).collect())
            .collect()
    }

    pub fn is_standard(&self) -> bool {
        self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
            && self.columns().iter().all(|c| c.windows(2).all(|w| w[0] < w[1]))
    }

    /// Every standard tableau of the given shape.
    pub fn standard(shape: &Partition) -> Vec<YoungTableau> {
        let n = shape.weight() as usize;
        let mut out = Vec::new();
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.len()];
        place(shape, 1, n, &mut rows, &mut out);
        out
    }
}

fn place(shape: &Partition, next: usize, n: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<YoungTableau>) {
    if next > n {
        out.push(YoungTableau { shape: shape.clone(), rows: rows.clone() });
        return;
    }
    for i in 0..rows.len() {
        let len = rows[i].len();
        let fits_row = len < shape.part(i) as usize;
        let fits_col = i == 0 || rows[i - 1].len() > len;
        if fits_row && fits_col {
            rows[i].push(next);
            place(shape, next + 1, n, rows, out);
            rows[i].pop();
        }
    }
}

impl fmt::Display for YoungTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows.iter().map(|r| format!("[{}]", r.iter().join(","))).join(",");
        write!(f, "[{rows}]")
    }
}

/// Permutations preserving each block of `blocks` (1-based entries), as a product of symmetric groups.
fn block_stabilizer(n: usize, blocks: &[Vec<usize>]) -> Vec<Perm> {
    let mut perms = vec![Perm::identity(n)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let mut next = Vec::new();
        for arrangement in block.iter().permutations(block.len()) {
            let mut local: Vec<usize> = (0..n).collect();
            for (src, dst) in block.iter().zip(arrangement) {
                local[src - 1] = dst - 1;
            }
            let local = Perm(local);
            for p in &perms {
                next.push(local.compose(p));
            }
        }
        perms = next;
    }
    perms
}

/// `e_T = (1/n_λ) a_T b_T` with `a_T` the row symmetrizer, `b_T` the signed
/// column antisymmetrizer and `n_λ = n! / dim V_λ`; idempotent.
pub fn young_symmetrizer(tableau: &YoungTableau) -> GroupAlgElem {
    let n = tableau.shape.weight() as usize;
    let mut a = GroupAlgElem::zero(n);
    for g in block_stabilizer(n, &tableau.rows) {
        a.add_term(g, Rational::one());
    }
    let mut b = GroupAlgElem::zero(n);
    for g in block_stabilizer(n, &tableau.columns()) {
        let s = g.sign();
        b.add_term(g, rat(s));
    }
    let factorial: u64 = (1..=n as u64).product();
    let scale = Rational::new(irrep_dimension(&tableau.shape).into(), factorial.into());
    (&a * &b).scale(&scale)
}
