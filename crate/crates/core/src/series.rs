//! Exact coefficient arithmetic.
//!
//! [`LaurentPoly`] is a Laurent polynomial in `s = t^(1/2)` with rational
//! coefficients; integral powers of `t` are stored at even `s`-exponents.
//! [`QSeries`] is a power series in `u = q^(1/2)` with `LaurentPoly`
//! coefficients, truncated at an explicit `u`-order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("quantum integer [{0}] is undefined for negative arguments")]
    NegativeQuantumInt(i64),
    #[error("geometric expansion needs a positive exponent, got {0}")]
    NonPositiveExponent(i64),
    #[error("truncation order must be positive, got {0}")]
    NonPositiveOrder(i64),
    #[error("pole: term t^{} cannot be evaluated at t = 0", render_half(*.s_exp))]
    Pole { s_exp: i64 },
    #[error("t^{} at t = {value} is not rational", render_half(*.s_exp))]
    Irrational { s_exp: i64, value: Rational },
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders an exponent stored in half units: `4 -> "2"`, `-1 -> "-1/2"`.
pub fn render_half(half_units: i64) -> String {
    if half_units % 2 == 0 {
        format!("{}", half_units / 2)
    } else {
        format!("{half_units}/2")
    }
}

fn render_power(var: &str, half_units: i64) -> String {
    match half_units {
        2 => var.to_string(),
        e if e % 2 == 0 => format!("{var}^{}", e / 2),
        e => format!("{var}^({e}/2)"),
    }
}

/// Laurent polynomial in `s = t^(1/2)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    /// `c * s^s_exp`.
    pub fn monomial(s_exp: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(s_exp, c);
        }
        Self { terms }
    }

    /// `t^k`.
    pub fn t_pow(k: i64) -> Self {
        Self::monomial(2 * k, Rational::one())
    }

    /// `s^e = t^(e/2)`.
    pub fn s_pow(e: i64) -> Self {
        Self::monomial(e, Rational::one())
    }

    /// Builds from `(s_exp, coeff)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, s_exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(s_exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&s_exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// `(s_exp, coeff)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_s(&self, s_exp: i64) -> Rational {
        self.terms.get(&s_exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff_t(&self, t_exp: i64) -> Rational {
        self.coeff_s(2 * t_exp)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff_s(0)
    }

    pub fn min_s_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_s_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every exponent of `s` is even, i.e. this is a Laurent polynomial in `t`.
    pub fn is_in_t(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// A polynomial (no negative powers) with nonnegative integer coefficients.
    pub fn is_nonneg_integral_poly(&self) -> bool {
        self.is_integral()
            && self.terms.values().all(|c| !c.is_negative())
            && self.min_s_exp().is_none_or(|e| e >= 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Multiplies by `s^shift`.
    pub fn shift_s(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e + shift, v.clone())).collect(),
        }
    }

    /// The bar involution `t -> t^-1` (equivalently `s -> s^-1`).
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, v)| (-e, v.clone())).collect(),
        }
    }

    /// Substitutes `s -> s^factor`; with `factor = 2` this maps `t -> s^2`.
    pub fn stretch(&self, factor: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, v)| (e * factor, v.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at `t = value`. Odd `s`-exponents need an exact rational square root of `value`.
    pub fn eval_t(&self, value: &Rational) -> Result<Rational, SeriesError> {
        let mut root: Option<Rational> = None;
        let mut sum = Rational::zero();
        for (&e, c) in &self.terms {
            if e == 0 {
                sum += c;
                continue;
            }
            if value.is_zero() {
                if e < 0 {
                    return Err(SeriesError::Pole { s_exp: e });
                }
                continue;
            }
            let base = if e % 2 == 0 {
                value.clone()
            } else {
                if root.is_none() {
                    root = Some(rational_sqrt(value).ok_or_else(|| SeriesError::Irrational {
                        s_exp: e,
                        value: value.clone(),
                    })?);
                }
                root.clone().unwrap()
            };
            let k = if e % 2 == 0 { e / 2 } else { e };
            let p = pow_signed(&base, k);
            sum += c * p;
        }
        Ok(sum)
    }

    /// Text form with `*` between coefficient and power, accepted by the expression parser.
    pub fn to_expr_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = render_power("t", e);
            match (e, abs.is_one()) {
                (0, _) => out.push_str(&abs.to_string()),
                (_, true) => out.push_str(&power),
                (_, false) => out.push_str(&format!("{abs}*{power}")),
            }
        }
        out
    }

    fn render(&self, sep_plus: &str, sep_minus: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { sep_minus } else { sep_plus });
            }
            out.push_str(&render_coeff_with(&abs, e == 0));
            if e != 0 {
                out.push_str(&render_power("t", e));
            }
        }
        out
    }

    /// Compact rendering without spaces, used inside series coefficients: `3+3t+t^2`.
    pub fn to_compact_string(&self) -> String {
        self.render("+", "-")
    }

    /// `{t-exponent: "num/den"}`.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (&e, c) in &self.terms {
            map.insert(render_half(e), Value::String(c.to_string()));
        }
        Value::Object(map)
    }
}

fn render_coeff_with(abs: &Rational, bare: bool) -> String {
    if bare {
        abs.to_string()
    } else if abs.is_one() {
        String::new()
    } else if abs.is_integer() {
        abs.to_string()
    } else {
        format!("({abs})")
    }
}

fn pow_signed(base: &Rational, k: i64) -> Rational {
    let mut p = Rational::one();
    for _ in 0..k.unsigned_abs() {
        p *= base;
    }
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

fn rational_sqrt(v: &Rational) -> Option<Rational> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().sqrt();
    let d = v.denom().sqrt();
    if &(&n * &n) == v.numer() && &(&d * &d) == v.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(" + ", " - "))
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// The quantum integer `[k] = 1 + t + ... + t^(k-1)`.
pub fn quantum_int(k: i64) -> Result<LaurentPoly, SeriesError> {
    if k < 0 {
        return Err(SeriesError::NegativeQuantumInt(k));
    }
    Ok(LaurentPoly::from_terms((0..k).map(|j| (2 * j, Rational::one()))))
}

/// Power series in `u = q^(1/2)`, exact below `u^order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    order: u32,
    coeffs: BTreeMap<u32, LaurentPoly>,
}

impl QSeries {
    pub fn zero(order: u32) -> Self {
        Self {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::monomial(0, LaurentPoly::one(), order)
    }

    /// `coeff * u^u_exp`, or zero if `u_exp >= order`.
    pub fn monomial(u_exp: u32, coeff: LaurentPoly, order: u32) -> Self {
        let mut out = Self::zero(order);
        out.add_term(u_exp, &coeff);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, LaurentPoly)>>(iter: I, order: u32) -> Self {
        let mut out = Self::zero(order);
        for (e, c) in iter {
            out.add_term(e, &c);
        }
        out
    }

    /// Adds `coeff * u^u_exp`, discarding it at or beyond the truncation order.
    pub fn add_term(&mut self, u_exp: u32, coeff: &LaurentPoly) {
        if u_exp >= self.order || coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(u_exp).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&u_exp);
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `u^u_exp`.
    pub fn coeff(&self, u_exp: u32) -> LaurentPoly {
        self.coeffs.get(&u_exp).cloned().unwrap_or_default()
    }

    /// Coefficient of `q^n = u^(2n)`.
    pub fn q_coeff(&self, n: u32) -> LaurentPoly {
        self.coeff(2 * n)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &LaurentPoly)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// True when only integral powers of `q` occur.
    pub fn has_integer_q_powers(&self) -> bool {
        self.coeffs.keys().all(|e| e % 2 == 0)
    }

    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        Self {
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&e, _)| e < order)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&e, v)| (e, v * c)), self.order)
    }

    /// Multiplies by `u^shift`.
    pub fn shift(&self, shift: u32) -> Self {
        Self::from_terms(
            self.coeffs.iter().map(|(&e, v)| (e + shift, v.clone())),
            self.order,
        )
    }

    pub fn map_coeffs<F: FnMut(&LaurentPoly) -> LaurentPoly>(&self, mut f: F) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&e, v)| (e, f(v))), self.order)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `1 / (1 - scalar * u^exponent) = sum_j scalar^j u^(j*exponent)`, truncated at `order`.
    pub fn geom_inverse(exponent: i64, scalar: &LaurentPoly, order: i64) -> Result<Self, SeriesError> {
        if exponent <= 0 {
            return Err(SeriesError::NonPositiveExponent(exponent));
        }
        if order <= 0 {
            return Err(SeriesError::NonPositiveOrder(order));
        }
        let order = u32::try_from(order).map_err(|_| SeriesError::NonPositiveOrder(order))?;
        let step = exponent as u64;
        let mut out = Self::zero(order);
        let mut power = LaurentPoly::one();
        let mut e = 0u64;
        while e < order as u64 {
            out.add_term(e as u32, &power);
            power = &power * scalar;
            e += step;
        }
        Ok(out)
    }

    /// Evaluates every coefficient at `t = value`.
    pub fn specialize_t(&self, value: &Rational) -> Result<Self, SeriesError> {
        let mut out = Self::zero(self.order);
        for (&e, c) in &self.coeffs {
            out.add_term(e, &LaurentPoly::constant(c.eval_t(value)?));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let mut coeffs = Map::new();
        for (&e, c) in &self.coeffs {
            coeffs.insert(render_half(e as i64), c.to_json());
        }
        let mut map = Map::new();
        map.insert("order".into(), Value::String(render_half(self.order as i64)));
        map.insert("coeffs".into(), Value::Object(coeffs));
        Value::Object(map)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&e, c) in &self.coeffs {
            let single = c.len() == 1;
            let neg = single && c.terms().next().is_some_and(|(_, v)| v.is_negative());
            let shown = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let body = if single {
                if e == 0 || !shown.is_one() {
                    shown.to_compact_string()
                } else {
                    String::new()
                }
            } else {
                format!("({})", shown.to_compact_string())
            };
            f.write_str(&body)?;
            if e != 0 {
                f.write_str(&render_power("q", e as i64))?;
            }
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O({})", render_power("q", self.order as i64))
    }
}

impl Add<&QSeries> for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let order = self.order.min(rhs.order);
        let mut out = self.truncate(order);
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c);
        }
        out
    }
}

impl Add for QSeries {
    type Output = QSeries;
    fn add(self, rhs: QSeries) -> QSeries {
        &self + &rhs
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.map_coeffs(|c| -c)
    }
}

impl Sub<&QSeries> for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &(-rhs)
    }
}

impl Sub for QSeries {
    type Output = QSeries;
    fn sub(self, rhs: QSeries) -> QSeries {
        &self - &rhs
    }
}

impl Mul<&QSeries> for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let order = self.order.min(rhs.order);
        let mut out = QSeries::zero(order);
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in rhs.coeffs.range(..order.saturating_sub(e1)) {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for QSeries {
    type Output = QSeries;
    fn mul(self, rhs: QSeries) -> QSeries {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> LaurentPoly {
        LaurentPoly::t_pow(1)
    }

    #[test]
    fn quantum_integers() {
        assert!(quantum_int(0).unwrap().is_zero());
        assert_eq!(quantum_int(1).unwrap(), LaurentPoly::one());
        let expected = &(&LaurentPoly::one() + &t()) + &LaurentPoly::t_pow(2);
        assert_eq!(quantum_int(3).unwrap(), expected);
        assert_eq!(quantum_int(-1), Err(SeriesError::NegativeQuantumInt(-1)));
    }

    #[test]
    fn geometric_examples() {
        let g = QSeries::geom_inverse(2, &LaurentPoly::one(), 7).unwrap();
        assert_eq!(g.to_string(), "1 + q + q^2 + q^3 + O(q^(7/2))");

        let g = QSeries::geom_inverse(2, &t(), 5).unwrap();
        assert_eq!(g.to_string(), "1 + tq + t^2q^2 + O(q^(5/2))");
        // multiply back by (1 - tq)
        let back = &g * &QSeries::from_terms([(0, LaurentPoly::one()), (2, -t())], 5);
        assert_eq!(back, QSeries::one(5));

        let g = QSeries::geom_inverse(1, &LaurentPoly::one(), 3).unwrap();
        assert_eq!(g.to_string(), "1 + q^(1/2) + q + O(q^(3/2))");

        assert_eq!(
            QSeries::geom_inverse(0, &LaurentPoly::one(), 3),
            Err(SeriesError::NonPositiveExponent(0))
        );
        assert_eq!(
            QSeries::geom_inverse(1, &LaurentPoly::one(), 0),
            Err(SeriesError::NonPositiveOrder(0))
        );
    }

    #[test]
    fn specialization_examples() {
        let s = QSeries::from_terms([(0, LaurentPoly::one()), (2, &LaurentPoly::one() + &t())], 4);
        let at0 = s.specialize_t(&rat(0)).unwrap();
        assert_eq!(at0, QSeries::from_terms([(0, 1.into()), (2, 1.into())], 4));
        let at1 = s.specialize_t(&rat(1)).unwrap();
        assert_eq!(at1, QSeries::from_terms([(0, 1.into()), (2, 2.into())], 4));

        let pole = QSeries::monomial(2, LaurentPoly::t_pow(-1), 4);
        assert_eq!(pole.specialize_t(&rat(0)), Err(SeriesError::Pole { s_exp: -2 }));
    }

    #[test]
    fn half_powers_of_t() {
        let half = LaurentPoly::s_pow(1);
        assert_eq!(half.eval_t(&rat(4)).unwrap(), rat(2));
        assert_eq!(half.eval_t(&Rational::new(9.into(), 4.into())).unwrap(), Rational::new(3.into(), 2.into()));
        assert!(matches!(half.eval_t(&rat(2)), Err(SeriesError::Irrational { .. })));
        assert_eq!(LaurentPoly::s_pow(-3).eval_t(&rat(4)).unwrap(), Rational::new(1.into(), 8.into()));
        assert_eq!(half.eval_t(&rat(0)).unwrap(), rat(0));
    }

    #[test]
    fn rendering() {
        let p = LaurentPoly::from_terms([(0, rat(1)), (2, rat(1)), (4, rat(1))]);
        assert_eq!(p.to_string(), "1 + t + t^2");
        assert_eq!(LaurentPoly::t_pow(-1).to_string(), "t^-1");
        assert_eq!(LaurentPoly::s_pow(1).to_string(), "t^(1/2)");
        assert_eq!(LaurentPoly::s_pow(-1).to_string(), "t^(-1/2)");
        assert_eq!((-&p).to_string(), "-1 - t - t^2");
        assert_eq!(LaurentPoly::monomial(2, Rational::new(1.into(), 2.into())).to_string(), "(1/2)t");
        assert_eq!(LaurentPoly::zero().to_string(), "0");

        let s = QSeries::from_terms(
            [
                (0, LaurentPoly::one()),
                (2, &LaurentPoly::one() + &t()),
                (4, LaurentPoly::from_terms([(0, rat(3)), (2, rat(3)), (4, rat(1))])),
            ],
            6,
        );
        assert_eq!(s.to_string(), "1 + (1+t)q + (3+3t+t^2)q^2 + O(q^3)");
        assert_eq!(QSeries::monomial(2, (-3).into(), 4).to_string(), "-3q + O(q^2)");
        assert_eq!(QSeries::zero(2).to_string(), "O(q)");
    }

    #[test]
    fn expr_string_form() {
        let p = LaurentPoly::from_terms([(-2, rat(1)), (0, rat(-2)), (4, rat(3))]);
        assert_eq!(p.to_expr_string(), "t^-1 - 2 + 3*t^2");
    }

    #[test]
    fn json_rendering() {
        let p = LaurentPoly::from_terms([(-1, rat(2)), (4, Rational::new(1.into(), 3.into()))]);
        assert_eq!(p.to_json().to_string(), r#"{"-1/2":"2","2":"1/3"}"#);
        let s = QSeries::from_terms([(0, LaurentPoly::one()), (3, LaurentPoly::t_pow(1))], 4);
        assert_eq!(
            s.to_json().to_string(),
            r#"{"order":"2","coeffs":{"0":{"0":"1"},"3/2":{"1":"1"}}}"#
        );
    }

    #[test]
    fn truncation_takes_minimum_order() {
        let a = QSeries::geom_inverse(1, &LaurentPoly::one(), 5).unwrap();
        let b = QSeries::geom_inverse(1, &LaurentPoly::one(), 3).unwrap();
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
        assert!((&a * &b).terms().all(|(e, _)| e < 3));
    }

    #[test]
    fn bar_and_stretch() {
        let p = LaurentPoly::from_terms([(1, rat(1)), (2, rat(5))]);
        assert_eq!(p.bar(), LaurentPoly::from_terms([(-1, rat(1)), (-2, rat(5))]));
        assert_eq!(p.stretch(2), LaurentPoly::from_terms([(2, rat(1)), (4, rat(5))]));
    }
}
