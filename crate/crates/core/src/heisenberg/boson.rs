//! The boson presentation `[a_n, a_m] = n(1 + t^n) δ_{n+m,0}` and its
//! change of basis to the `p`/`q` generators through
//! `sum p_m z^m = exp(sum a_{-m} z^m / m)` and the mirror formula for `q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::Signed;

use super::{relation_rhs, GenKind, Generator, HExpr, HeisenbergError, Word};
use crate::partition::Partition;
use crate::series::{rat, LaurentPoly, Rational};

/// Commuting monomials indexed by partitions: `λ ↦ x_{λ_1} x_{λ_2} ⋯`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartitionPoly {
    terms: BTreeMap<Partition, LaurentPoly>,
}

impl PartitionPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Partition::empty(), LaurentPoly::one())
    }

    pub fn monomial(lambda: Partition, c: LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(lambda, &c);
        out
    }

    pub fn add_term(&mut self, lambda: Partition, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(lambda.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> LaurentPoly {
        self.terms.get(lambda).cloned().unwrap_or_default()
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

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        for (l, v) in &self.terms {
            out.add_term(l.clone(), &(v * c));
        }
        out
    }

    fn render(&self, var: impl Fn(u32) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (lambda, c)) in self.terms.iter().enumerate() {
            let neg = c.len() == 1 && c.terms().next().is_some_and(|(_, v)| v.is_negative());
            let shown = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff = if shown.len() == 1 {
                shown.to_expr_string()
            } else {
                format!("({})", shown.to_expr_string())
            };
            let mono: Vec<String> = render_monomial(lambda, &var);
            match (mono.is_empty(), shown.is_one()) {
                (true, _) => out.push_str(&coeff),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => out.push_str(&format!("{coeff}*{}", mono.join("*"))),
            }
        }
        out
    }
}

fn render_monomial(lambda: &Partition, var: &impl Fn(u32) -> String) -> Vec<String> {
    lambda
        .multiplicities()
        .into_iter()
        .rev()
        .map(|(j, m)| if m == 1 { var(j) } else { format!("{}^{m}", var(j)) })
        .collect()
}

impl Add<&PartitionPoly> for &PartitionPoly {
    type Output = PartitionPoly;
    fn add(self, rhs: &PartitionPoly) -> PartitionPoly {
        let mut out = self.clone();
        for (l, c) in &rhs.terms {
            out.add_term(l.clone(), c);
        }
        out
    }
}

impl Sub<&PartitionPoly> for &PartitionPoly {
    type Output = PartitionPoly;
    fn sub(self, rhs: &PartitionPoly) -> PartitionPoly {
        self + &rhs.scale(&LaurentPoly::from_int(-1))
    }
}

impl Mul<&PartitionPoly> for &PartitionPoly {
    type Output = PartitionPoly;
    fn mul(self, rhs: &PartitionPoly) -> PartitionPoly {
        let mut out = PartitionPoly::zero();
        for (l1, c1) in &self.terms {
            for (l2, c2) in &rhs.terms {
                out.add_term(l1.union(l2), &(c1 * c2));
            }
        }
        out
    }
}

/// Which half of the boson algebra a monomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `a_{-n}`, `n > 0`: creation, multiplication on the Fock space.
    Lowering,
    /// `a_{n}`, `n > 0`: annihilation.
    Raising,
}

/// A polynomial in the mutually commuting modes of one side; the key `λ`
/// stands for `a_{∓λ_1} a_{∓λ_2} ⋯`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AExpr {
    pub side: Side,
    pub poly: PartitionPoly,
}

impl AExpr {
    pub fn new(side: Side, poly: PartitionPoly) -> Self {
        Self { side, poly }
    }

    pub fn zero(side: Side) -> Self {
        Self::new(side, PartitionPoly::zero())
    }

    /// `a_{-λ}` (or `a_{λ}` on the raising side) with coefficient 1.
    pub fn monomial(side: Side, lambda: Partition) -> Self {
        Self::new(side, PartitionPoly::monomial(lambda, LaurentPoly::one()))
    }

    pub fn coeff(&self, lambda: &Partition) -> LaurentPoly {
        self.poly.coeff(lambda)
    }

    pub fn constant_term(&self) -> LaurentPoly {
        self.poly.coeff(&Partition::empty())
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::new(self.side, self.poly.scale(c))
    }

    /// Product of two same-side elements; `None` if the sides differ.
    pub fn mul_same_side(&self, other: &AExpr) -> Option<AExpr> {
        (self.side == other.side).then(|| Self::new(self.side, &self.poly * &other.poly))
    }
}

impl fmt::Display for AExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = self.side;
        f.write_str(&self.poly.render(|j| match side {
            Side::Lowering => format!("a[-{j}]"),
            Side::Raising => format!("a[{j}]"),
        }))
    }
}

/// `n (1 + t^n)`, the value of `[a_n, a_{-n}]`.
pub fn commutator_scalar(n: u32) -> LaurentPoly {
    (&LaurentPoly::one() + &LaurentPoly::t_pow(n as i64)).scale(&rat(n as i64))
}

fn derivation(n: u32, poly: &PartitionPoly) -> PartitionPoly {
    let c = commutator_scalar(n);
    let mut out = PartitionPoly::zero();
    for (lambda, v) in poly.terms() {
        let mult = lambda.multiplicity(n);
        if mult == 0 {
            continue;
        }
        let rest = lambda.without_part(n).expect("part present");
        out.add_term(rest, &(&c * v).scale(&rat(mult as i64)));
    }
    out
}

/// Action of the mode `a_n` on the Fock space of lowering polynomials.
///
/// For `n < 0` this multiplies by `a_n`; for `n > 0` it is the derivation
/// `a_{-n} ↦ n(1+t^n)`.
pub fn a_act(n: i64, expr: &AExpr) -> Result<AExpr, HeisenbergError> {
    if n == 0 {
        return Err(HeisenbergError::ZeroMode);
    }
    if expr.side != Side::Lowering {
        return Err(HeisenbergError::NotAFockState(expr.to_string()));
    }
    let k = n.unsigned_abs() as u32;
    let poly = if n < 0 {
        &expr.poly * &PartitionPoly::monomial(Partition::new(vec![k]).expect("single part"), LaurentPoly::one())
    } else {
        derivation(k, &expr.poly)
    };
    Ok(AExpr::new(Side::Lowering, poly))
}

/// Homogeneous components `0..=order` of `exp(sum_{j>=1} x_j z^j / j)`,
/// with `x_j = a_{-j}` (lowering, giving `p_m`) or `x_j = a_j` (raising, giving `q_m`).
///
/// Uses `m c_m = sum_{j=1}^m x_j c_{m-j}`, obtained by differentiating the exponential.
pub fn halves_expansion(side: Side, order: u32) -> Vec<AExpr> {
    let mut comps: Vec<PartitionPoly> = vec![PartitionPoly::one()];
    for m in 1..=order {
        let mut acc = PartitionPoly::zero();
        for j in 1..=m {
            let x = PartitionPoly::monomial(Partition::new(vec![j]).expect("single part"), LaurentPoly::one());
            acc = &acc + &(&x * &comps[(m - j) as usize]);
        }
        comps.push(acc.scale(&LaurentPoly::constant(Rational::new(1.into(), m.into()))));
    }
    comps.into_iter().map(|p| AExpr::new(side, p)).collect()
}

/// `p_m` or `q_m` written in the boson modes.
pub fn pq_in_a(gen: Generator) -> AExpr {
    let side = match gen.kind {
        GenKind::P => Side::Lowering,
        GenKind::Q => Side::Raising,
    };
    halves_expansion(side, gen.index).pop().expect("component 0 always present")
}

/// `a_{∓j}` for `j = 1..=order` expressed as polynomials in `p` (resp. `q`), by
/// inverting the exponential: `a_{-j} = j p_j - sum_{i<j} a_{-i} p_{j-i}`.
fn modes_in_pq(order: u32) -> Vec<PartitionPoly> {
    let single = |j: u32| PartitionPoly::monomial(Partition::new(vec![j]).expect("single part"), LaurentPoly::one());
    let mut modes = vec![PartitionPoly::zero()];
    for j in 1..=order {
        let mut acc = single(j).scale(&LaurentPoly::from_int(j as i64));
        for i in 1..j {
            acc = &acc - &(&modes[i as usize] * &single(j - i));
        }
        modes.push(acc);
    }
    modes
}

/// Normal-ordered element of the full boson algebra: the key `(β, α)` stands
/// for `a_{-β} a_{α}` (all lowering modes to the left).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BosonExpr {
    terms: BTreeMap<(Partition, Partition), LaurentPoly>,
}

impl BosonExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, lowering: Partition, raising: Partition, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let key = (lowering, raising);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Partition, Partition), &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `L · R` for lowering `L` and raising `R`: already normal-ordered.
    pub fn from_normal(lowering: &AExpr, raising: &AExpr) -> Self {
        let mut out = Self::zero();
        for (b, c1) in lowering.poly.terms() {
            for (a, c2) in raising.poly.terms() {
                out.add_term(b.clone(), a.clone(), &(c1 * c2));
            }
        }
        out
    }

    /// `R · L` for raising `R` and lowering `L`, normal-ordered with the commutator.
    pub fn from_product(raising: &AExpr, lowering: &AExpr) -> Self {
        let mut out = Self::zero();
        for (alpha, c1) in raising.poly.terms() {
            let moved = move_raising_right(alpha.parts(), &lowering.poly);
            for ((b, a), c2) in moved.terms() {
                out.add_term(b.clone(), a.clone(), &(c1 * c2));
            }
        }
        out
    }

    /// Rewrites into the `p`/`q` generators, producing normal-form words.
    pub fn to_pq(&self) -> HExpr {
        let max_mode = self
            .terms
            .keys()
            .flat_map(|(b, a)| b.parts().iter().chain(a.parts()).copied())
            .max()
            .unwrap_or(0);
        let modes = modes_in_pq(max_mode);
        let expand = |lambda: &Partition| {
            lambda
                .parts()
                .iter()
                .fold(PartitionPoly::one(), |acc, &j| &acc * &modes[j as usize])
        };
        let mut out = HExpr::zero();
        for ((b, a), c) in &self.terms {
            let ps = expand(b);
            let qs = expand(a);
            for (pl, pc) in ps.terms() {
                for (ql, qc) in qs.terms() {
                    let word = Word::new(
                        pl.parts()
                            .iter()
                            .map(|&j| Generator::p(j))
                            .chain(ql.parts().iter().map(|&j| Generator::q(j))),
                    );
                    out.add_term(word, &(&(c * pc) * qc));
                }
            }
        }
        out
    }
}

impl fmt::Display for BosonExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((b, a), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut mono = render_monomial(b, &|j| format!("a[-{j}]"));
            mono.extend(render_monomial(a, &|j| format!("a[{j}]")));
            if mono.is_empty() {
                write!(f, "({})", c.to_expr_string())?;
            } else {
                write!(f, "({})*{}", c.to_expr_string(), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Normal-orders `a_{α_1} ⋯ a_{α_k} · L`.
///
/// Peels the last raising mode: `a_r L = L a_r + D_r(L)` where `D_r` is the derivation.
fn move_raising_right(alpha: &[u32], lowering: &PartitionPoly) -> BosonExpr {
    let Some((&r, rest)) = alpha.split_last() else {
        let mut out = BosonExpr::zero();
        for (b, c) in lowering.terms() {
            out.add_term(b.clone(), Partition::empty(), c);
        }
        return out;
    };
    let mut out = BosonExpr::zero();
    // a_{rest} L a_r: raising modes commute, so a_r joins each normal-ordered term on the right.
    for ((b, a), c) in move_raising_right(rest, lowering).terms() {
        out.add_term(b.clone(), a.with_part(r), c);
    }
    let derived = derivation(r, lowering);
    if !derived.is_zero() {
        for ((b, a), c) in move_raising_right(rest, &derived).terms() {
            out.add_term(b.clone(), a.clone(), c);
        }
    }
    out
}

/// Outcome of checking `q_n p_m` through the boson presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub n: u32,
    pub m: u32,
    pub holds: bool,
    /// `q_n p_m` computed in the boson algebra and rewritten in `p`/`q`.
    pub computed: HExpr,
    /// `computed - sum_k [k+1] p_{m-k} q_{n-k}`; zero when the check holds.
    pub difference: HExpr,
}

/// Computes `q_n p_m` with the boson commutator alone and compares it to the
/// deformed defining relation. Independent of the word rewrite engine.
pub fn verify_pq_relation(n: u32, m: u32) -> RelationCheck {
    let qn = pq_in_a(Generator::q(n));
    let pm = pq_in_a(Generator::p(m));
    let computed = BosonExpr::from_product(&qn, &pm).to_pq();
    let difference = &computed - &relation_rhs(n, m);
    RelationCheck {
        n,
        m,
        holds: difference.is_zero(),
        computed,
        difference,
    }
}
