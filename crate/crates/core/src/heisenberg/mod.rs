//! The deformed Heisenberg algebra over `Z[t, t^-1]` as a normal-ordering
//! rewrite system on words in the generators `p_n`, `q_n`.
//!
//! Rewrite rules on adjacent letters:
//!
//! * `q_n p_m -> sum_{k>=0} [k+1] p_{m-k} q_{n-k}` (with `p_0 = q_0 = 1` and
//!   negative indices annihilating the term),
//! * `p_a p_b -> p_b p_a` and `q_a q_b -> q_b q_a` when `a < b`.
//!
//! A word is in normal form when every `p` precedes every `q` and both blocks
//! are sorted with indices weakly decreasing.

pub mod boson;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use thiserror::Error;

use num_traits::Signed;

use crate::series::{quantum_int, LaurentPoly};

pub use boson::{a_act, halves_expansion, pq_in_a, verify_pq_relation, AExpr, BosonExpr, PartitionPoly, RelationCheck, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeisenbergError {
    #[error("Fock states may only contain p generators; found {0}")]
    NotAFockState(String),
    #[error("a_0 is not a generator")]
    ZeroMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    P,
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: GenKind,
    pub index: u32,
}

impl Generator {
    pub fn p(index: u32) -> Self {
        Self { kind: GenKind::P, index }
    }

    pub fn q(index: u32) -> Self {
        Self { kind: GenKind::Q, index }
    }

    /// `deg p_n = n`, `deg q_n = -n`.
    pub fn degree(&self) -> i64 {
        match self.kind {
            GenKind::P => self.index as i64,
            GenKind::Q => -(self.index as i64),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::P => write!(f, "p{}", self.index),
            GenKind::Q => write!(f, "q{}", self.index),
        }
    }
}

/// A word in the generators. Index-0 letters are units and never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new<I: IntoIterator<Item = Generator>>(letters: I) -> Self {
        Self(letters.into_iter().filter(|g| g.index != 0).collect())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(Generator::degree).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn has_q(&self) -> bool {
        self.0.iter().any(|g| g.kind == GenKind::Q)
    }

    pub fn is_normal(&self) -> bool {
        redexes(self).is_empty()
    }

    /// Termination measure `(index sum, q-before-p inversions, unsorted pairs)`;
    /// every rewrite step strictly decreases it lexicographically.
    pub fn measure(&self) -> (u64, usize, usize) {
        let sum = self.0.iter().map(|g| g.index as u64).sum();
        let mut qp = 0;
        let mut unsorted = 0;
        for (i, a) in self.0.iter().enumerate() {
            for b in &self.0[i + 1..] {
                match (a.kind, b.kind) {
                    (GenKind::Q, GenKind::P) => qp += 1,
                    (x, y) if x == y && a.index < b.index => unsorted += 1,
                    _ => {}
                }
            }
        }
        (sum, qp, unsorted)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Positions `i` where letters `i, i+1` form a redex.
pub fn redexes(word: &Word) -> Vec<usize> {
    word.0
        .windows(2)
        .enumerate()
        .filter(|(_, w)| match (w[0].kind, w[1].kind) {
            (GenKind::Q, GenKind::P) => true,
            (a, b) => a == b && w[0].index < w[1].index,
        })
        .map(|(i, _)| i)
        .collect()
}

/// Applies the rewrite rule at `pos` (which must be a redex), returning the resulting words.
pub fn rewrite_at(word: &Word, pos: usize) -> Vec<(Word, LaurentPoly)> {
    let (a, b) = (word.0[pos], word.0[pos + 1]);
    let splice = |middle: &[Generator]| {
        let mut v = word.0[..pos].to_vec();
        v.extend(middle.iter().copied().filter(|g| g.index != 0));
        v.extend_from_slice(&word.0[pos + 2..]);
        Word(v)
    };
    match (a.kind, b.kind) {
        (GenKind::Q, GenKind::P) => {
            let (n, m) = (a.index, b.index);
            (0..=n.min(m))
                .map(|k| {
                    let coeff = quantum_int(k as i64 + 1).expect("k + 1 >= 1");
                    (splice(&[Generator::p(m - k), Generator::q(n - k)]), coeff)
                })
                .collect()
        }
        _ => vec![(splice(&[b, a]), LaurentPoly::one())],
    }
}

/// Element of the algebra: a finite combination of words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HExpr {
    terms: BTreeMap<Word, LaurentPoly>,
}

impl HExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(LaurentPoly::one())
    }

    pub fn scalar(c: LaurentPoly) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn term(word: Word, c: LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(word, &c);
        out
    }

    pub fn word<I: IntoIterator<Item = Generator>>(letters: I) -> Self {
        Self::term(Word::new(letters), LaurentPoly::one())
    }

    pub fn generator(g: Generator) -> Self {
        Self::word([g])
    }

    pub fn add_term(&mut self, word: Word, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(word.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &Word) -> LaurentPoly {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(Word::is_normal)
    }

    pub fn has_q(&self) -> bool {
        self.terms.keys().any(Word::has_q)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(LaurentPoly::is_integral)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &(v * c));
        }
        out
    }

    pub fn map_coeffs<F: FnMut(&LaurentPoly) -> LaurentPoly>(&self, mut f: F) -> Self {
        let mut out = Self::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &f(v));
        }
        out
    }

    /// Canonical text accepted back by the expression parser.
    pub fn to_expr_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let single_negative = c.len() == 1 && c.terms().next().is_some_and(|(_, v)| v.is_negative());
            let shown = if single_negative { -c } else { c.clone() };
            if i == 0 {
                if single_negative {
                    out.push('-');
                }
            } else {
                out.push_str(if single_negative { " - " } else { " + " });
            }
            let coeff = if shown.len() == 1 || (i == 0 && w.is_empty()) {
                shown.to_expr_string()
            } else {
                format!("({})", shown.to_expr_string())
            };
            match (w.is_empty(), shown.is_one()) {
                (true, _) => out.push_str(&coeff),
                (false, true) => out.push_str(&w.to_string()),
                (false, false) => out.push_str(&format!("{coeff}*{w}")),
            }
        }
        out
    }
}

impl fmt::Display for HExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr_string())
    }
}

impl From<Generator> for HExpr {
    fn from(g: Generator) -> Self {
        Self::generator(g)
    }
}

impl Add<&HExpr> for &HExpr {
    type Output = HExpr;
    fn add(self, rhs: &HExpr) -> HExpr {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Add for HExpr {
    type Output = HExpr;
    fn add(self, rhs: HExpr) -> HExpr {
        &self + &rhs
    }
}

impl Neg for &HExpr {
    type Output = HExpr;
    fn neg(self) -> HExpr {
        self.map_coeffs(|c| -c)
    }
}

impl Sub<&HExpr> for &HExpr {
    type Output = HExpr;
    fn sub(self, rhs: &HExpr) -> HExpr {
        self + &(-rhs)
    }
}

impl Sub for HExpr {
    type Output = HExpr;
    fn sub(self, rhs: HExpr) -> HExpr {
        &self - &rhs
    }
}

/// Free (concatenation) product; not normal-ordered.
impl Mul<&HExpr> for &HExpr {
    type Output = HExpr;
    fn mul(self, rhs: &HExpr) -> HExpr {
        let mut out = HExpr::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for HExpr {
    type Output = HExpr;
    fn mul(self, rhs: HExpr) -> HExpr {
        &self * &rhs
    }
}

/// Normal form of `expr` using the leftmost-redex strategy, memoized per word.
pub fn normal_order(expr: &HExpr) -> HExpr {
    let mut memo = HashMap::new();
    let mut out = HExpr::zero();
    for (w, c) in expr.terms() {
        let nf = normal_word(w, &mut memo);
        for (w2, c2) in nf.terms() {
            out.add_term(w2.clone(), &(c * c2));
        }
    }
    out
}

fn normal_word(word: &Word, memo: &mut HashMap<Word, HExpr>) -> HExpr {
    if let Some(done) = memo.get(word) {
        return done.clone();
    }
    let result = match redexes(word).first() {
        None => HExpr::term(word.clone(), LaurentPoly::one()),
        Some(&pos) => {
            let mut acc = HExpr::zero();
            for (w, c) in rewrite_at(word, pos) {
                let nf = normal_word(&w, memo);
                for (w2, c2) in nf.terms() {
                    acc.add_term(w2.clone(), &(&c * c2));
                }
            }
            acc
        }
    };
    memo.insert(word.clone(), result.clone());
    result
}

/// Statistics from a randomized normalization run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RewriteStats {
    pub steps: usize,
    /// Steps whose output failed to decrease [`Word::measure`]; zero on a terminating system.
    pub non_decreasing_steps: usize,
}

/// Normal form by rewriting at uniformly random redex positions, without memoization.
pub fn normal_order_random<R: Rng + ?Sized>(expr: &HExpr, rng: &mut R) -> (HExpr, RewriteStats) {
    let mut stats = RewriteStats::default();
    let mut out = HExpr::zero();
    let mut work: Vec<(Word, LaurentPoly)> = expr.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    while !work.is_empty() {
        let pick = rng.gen_range(0..work.len());
        let (word, coeff) = work.swap_remove(pick);
        let positions = redexes(&word);
        if positions.is_empty() {
            out.add_term(word, &coeff);
            continue;
        }
        let pos = positions[rng.gen_range(0..positions.len())];
        let before = word.measure();
        stats.steps += 1;
        for (w, c) in rewrite_at(&word, pos) {
            if w.measure() >= before {
                stats.non_decreasing_steps += 1;
            }
            work.push((w, &coeff * &c));
        }
    }
    (out, stats)
}

/// A uniformly random word of length `1..=max_len` over `p_1..p_max_index, q_1..q_max_index`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, max_len: usize, max_index: u32) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word::new((0..len).map(|_| {
        let index = rng.gen_range(1..=max_index);
        if rng.gen_bool(0.5) {
            Generator::p(index)
        } else {
            Generator::q(index)
        }
    }))
}

/// Scalar part of the normal form: `<0| expr |0>`.
pub fn vacuum_expectation(expr: &HExpr) -> LaurentPoly {
    normal_order(expr).coeff(&Word::empty())
}

/// `q_n` acting on a Fock state written as a combination of pure-`p` words.
pub fn fock_q_action(n: u32, state: &HExpr) -> Result<HExpr, HeisenbergError> {
    if let Some((w, _)) = state.terms().find(|(w, _)| w.has_q()) {
        return Err(HeisenbergError::NotAFockState(w.to_string()));
    }
    let nf = normal_order(&(&HExpr::generator(Generator::q(n)) * state));
    let mut out = HExpr::zero();
    for (w, c) in nf.terms() {
        if !w.has_q() {
            out.add_term(w.clone(), c);
        }
    }
    Ok(out)
}

/// The right side of the defining relation, `sum_{k>=0} [k+1] p_{m-k} q_{n-k}`, built directly.
pub fn relation_rhs(n: u32, m: u32) -> HExpr {
    let mut out = HExpr::zero();
    for k in 0..=n.min(m) {
        let c = quantum_int(k as i64 + 1).expect("k + 1 >= 1");
        out.add_term(Word::new([Generator::p(m - k), Generator::q(n - k)]), &c);
    }
    out
}
