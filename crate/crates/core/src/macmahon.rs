//! MacMahon's function `Z(q) = ∏ (1 - q^n)^{-n}` and its deformation
//! `Z(q,t) = ∏ (1 - q^n)^{-n} (1 - t q^n)^{-n}`, each computed by several
//! independent routes:
//!
//! * product formulas, expanded factor by factor;
//! * transfer matrices: `⟨∅| ⋯ Γ₊(q^{3/2}) Γ₊(q^{1/2}) Γ₋(q^{1/2}) Γ₋(q^{3/2}) ⋯ |∅⟩`
//!   on the truncated partition Fock space (classical only);
//! * commutation: every `Γ₊(q^{k/2})` is swapped past every `Γ₋(q^{l/2})`,
//!   one adjacent swap at a time, collecting the swap factor read off from
//!   the algebra's vacuum expectations `⟨q_j p_j⟩`;
//! * enumeration of plane partitions (and of pairs weighted by trace for the
//!   deformed function).
//!
//! All series are returned with `u`-order `2N + 2`, i.e. exact through `q^N`.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};
use thiserror::Error;

use crate::fock::{gamma_minus, gamma_plus, FockVector};
use crate::heisenberg::{vacuum_expectation, Generator, HExpr};
use crate::planepart::{enumerate_plane_partitions, DESK_SCALE_VOLUME};
use crate::series::{rat, LaurentPoly, QSeries};

/// Largest `N` accepted by the pairs oracle.
pub const PAIRS_ORACLE_MAX: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MacMahonError {
    #[error("{method} is limited to N <= {limit}, got {requested}")]
    BeyondDeskScale { method: Method, limit: u32, requested: u32 },
    #[error("method {method} is not available for the {flavor} partition function")]
    Unsupported { method: Method, flavor: Flavor },
    #[error("transfer result changed between {factors} and {} factor pairs", .factors + 1)]
    Unstable { factors: u32 },
}

/// `u`-order that keeps `q^0 ..= q^max_q`.
pub fn series_order(max_q: u32) -> u32 {
    2 * max_q + 2
}

fn geom(u_exp: u32, scalar: &LaurentPoly, order: u32) -> QSeries {
    QSeries::geom_inverse(u_exp as i64, scalar, order as i64).expect("positive exponent and order")
}

fn product_formula(max_q: u32, scalars: &[LaurentPoly]) -> QSeries {
    let order = series_order(max_q);
    let mut acc = QSeries::one(order);
    for n in 1..=max_q {
        for s in scalars {
            acc = &acc * &geom(2 * n, s, order).pow(n);
        }
    }
    acc
}

/// `∏_{n=1}^{N} (1 - q^n)^{-n}`.
pub fn z_product(max_q: u32) -> QSeries {
    product_formula(max_q, &[LaurentPoly::one()])
}

/// `∏ (1 - q^n)^{-n} (1 - t q^n)^{-n}`.
pub fn z_deformed_product(max_q: u32) -> QSeries {
    product_formula(max_q, &[LaurentPoly::one(), LaurentPoly::t_pow(1)])
}

/// `∏ (1 - t^{-1/2} q^n)^{-n} (1 - t^{1/2} q^n)^{-n}`.
pub fn z_refined_variant(max_q: u32) -> QSeries {
    product_formula(max_q, &[LaurentPoly::s_pow(-1), LaurentPoly::s_pow(1)])
}

/// Vacuum expectation with `factors` transfer operators on each side.
pub fn z_transfer_with(max_q: u32, factors: u32) -> QSeries {
    let order = series_order(max_q);
    let mut state = FockVector::vacuum(max_q, order);
    for k in (1..=factors).rev() {
        state = gamma_minus(&state, 2 * k - 1);
    }
    for k in 1..=factors {
        state = gamma_plus(&state, 2 * k - 1);
    }
    state.coeff(&crate::partition::Partition::empty())
}

/// Transfer-matrix route with `N + 1` factor pairs, checked against `N + 2`.
pub fn z_transfer(max_q: u32) -> Result<QSeries, MacMahonError> {
    let factors = max_q + 1;
    let z = z_transfer_with(max_q, factors);
    if z != z_transfer_with(max_q, factors + 1) {
        return Err(MacMahonError::Unstable { factors });
    }
    Ok(z)
}

/// `⟨q_j p_j⟩` for `j = 0..=max`: the coefficients of the swap factor
/// `Γ₊(z)Γ₋(w) = (sum_j ⟨q_j p_j⟩ (zw)^j) Γ₋(w)Γ₊(z)`.
pub fn swap_coefficients(max: u32) -> Vec<LaurentPoly> {
    (0..=max)
        .map(|j| vacuum_expectation(&(&HExpr::generator(Generator::q(j)) * &HExpr::generator(Generator::p(j)))))
        .collect()
}

/// Swap factor as a series in `u`, for `zw = u^u_exp`.
pub fn swap_factor(coeffs: &[LaurentPoly], u_exp: u32, order: u32) -> QSeries {
    QSeries::from_terms(
        coeffs.iter().enumerate().map(|(j, c)| (j as u32 * u_exp, c.clone())),
        order,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gamma {
    Plus(u32),
    Minus(u32),
}

/// Sorts `Γ₊(q^{(2M-1)/2}) ⋯ Γ₊(q^{1/2}) Γ₋(q^{1/2}) ⋯ Γ₋(q^{(2M-1)/2})` into
/// `Γ₋ ⋯ Γ₋ Γ₊ ⋯ Γ₊` by adjacent swaps, multiplying in the swap factor each
/// time. The sorted word has vacuum expectation 1.
fn commutation_route(max_q: u32, coeffs: &[LaurentPoly]) -> QSeries {
    let order = series_order(max_q);
    let m = max_q + 1;
    let mut word: Vec<Gamma> = (1..=m).rev().map(|k| Gamma::Plus(2 * k - 1)).collect();
    word.extend((1..=m).map(|l| Gamma::Minus(2 * l - 1)));
    let mut acc = QSeries::one(order);
    while let Some(i) = word
        .windows(2)
        .position(|w| matches!((w[0], w[1]), (Gamma::Plus(_), Gamma::Minus(_))))
    {
        let (Gamma::Plus(k), Gamma::Minus(l)) = (word[i], word[i + 1]) else {
            unreachable!("position matched a plus/minus pair")
        };
        acc = &acc * &swap_factor(coeffs, k + l, order);
        word.swap(i, i + 1);
    }
    acc
}

/// `Z(q,t)` by literal swap iteration using `⟨q_j p_j⟩` from the rewrite system.
pub fn z_deformed_commutation(max_q: u32) -> QSeries {
    commutation_route(max_q, &swap_coefficients(max_q))
}

/// Classical `Z(q)` by swap iteration; the swap coefficients are the deformed ones at `t = 0`.
pub fn z_classical_commutation(max_q: u32) -> QSeries {
    let coeffs: Vec<LaurentPoly> = swap_coefficients(max_q)
        .iter()
        .map(|c| LaurentPoly::constant(c.eval_t(&rat(0)).expect("polynomial in t")))
        .collect();
    commutation_route(max_q, &coeffs)
}

/// Refined function by swap iteration, with swap coefficients `t^{-j/2} ⟨q_j p_j⟩`.
pub fn z_refined_commutation(max_q: u32) -> QSeries {
    let coeffs: Vec<LaurentPoly> = swap_coefficients(max_q)
        .iter()
        .enumerate()
        .map(|(j, c)| c.stretch(1).shift_s(-(j as i64)))
        .collect();
    commutation_route(max_q, &coeffs)
}

/// Plane-partition counts as a series.
pub fn z_enumeration(max_q: u32) -> Result<QSeries, MacMahonError> {
    if max_q > DESK_SCALE_VOLUME {
        return Err(MacMahonError::BeyondDeskScale {
            method: Method::Enumeration,
            limit: DESK_SCALE_VOLUME,
            requested: max_q,
        });
    }
    let order = series_order(max_q);
    Ok(QSeries::from_terms(
        (0..=max_q).map(|n| (2 * n, LaurentPoly::from_int(enumerate_plane_partitions(n).len() as i64))),
        order,
    ))
}

/// `sum_{(π, σ)} q^{|π|+|σ|} t^{tr σ}` over ordered pairs of plane partitions with `|π|+|σ| ≤ N`.
pub fn z_pairs_oracle(max_q: u32) -> Result<QSeries, MacMahonError> {
    if max_q > PAIRS_ORACLE_MAX {
        return Err(MacMahonError::BeyondDeskScale {
            method: Method::Pairs,
            limit: PAIRS_ORACLE_MAX,
            requested: max_q,
        });
    }
    let by_volume: Vec<Vec<u32>> = (0..=max_q)
        .map(|n| enumerate_plane_partitions(n).iter().map(|p| p.trace()).collect())
        .collect();
    let mut out = QSeries::zero(series_order(max_q));
    for (a, firsts) in by_volume.iter().enumerate() {
        for (b, traces) in by_volume.iter().enumerate().take(max_q as usize + 1 - a) {
            let mut weight = LaurentPoly::zero();
            for &tr in traces {
                weight.add_term(2 * tr as i64, rat(1));
            }
            out.add_term(2 * (a + b) as u32, &weight.scale(&rat(firsts.len() as i64)));
        }
    }
    Ok(out)
}

/// Outcome of comparing refined and deformed coefficients through `c_ref(s) = s^{-d} c_def(s^2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedShift {
    pub n: u32,
    /// `d`, fixed by matching lowest `s`-degrees.
    pub shift: i64,
    pub holds: bool,
}

/// For each `q^n` coefficient, determines the shift `d(n)` aligning the lowest
/// `s`-degrees of the refined and deformed functions and reports whether the
/// shifted coefficients coincide.
pub fn refined_shift_relation(max_q: u32) -> Vec<RefinedShift> {
    let refined = z_refined_variant(max_q);
    let deformed = z_deformed_product(max_q);
    (0..=max_q)
        .map(|n| {
            let r = refined.q_coeff(n);
            let d = deformed.q_coeff(n).stretch(1);
            let shift = d.min_s_exp().unwrap_or(0) - r.min_s_exp().unwrap_or(0);
            RefinedShift { n, shift, holds: d.shift_s(-shift) == r }
        })
        .collect()
}

/// Every coefficient has nonnegative integer coefficients and only integral powers of `q` occur.
pub fn has_integral_coefficients(series: &QSeries, allow_negative_powers: bool) -> bool {
    series.has_integer_q_powers()
        && series.terms().all(|(_, c)| {
            if allow_negative_powers {
                c.is_integral() && c.terms().all(|(_, v)| v >= &rat(0))
            } else {
                c.is_nonneg_integral_poly()
            }
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Classical,
    Deformed,
    Refined,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Classical => "classical",
            Flavor::Deformed => "deformed",
            Flavor::Refined => "refined",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Product,
    Transfer,
    Commutation,
    Enumeration,
    Pairs,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Product, Method::Transfer, Method::Commutation, Method::Enumeration, Method::Pairs];

    pub fn supports(self, flavor: Flavor) -> bool {
        matches!(
            (self, flavor),
            (Method::Product | Method::Commutation, _)
                | (Method::Transfer | Method::Enumeration, Flavor::Classical)
                | (Method::Pairs, Flavor::Deformed)
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Product => "product",
            Method::Transfer => "transfer",
            Method::Commutation => "commutation",
            Method::Enumeration => "enumeration",
            Method::Pairs => "pairs",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.to_string() == s)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

/// Computes one flavor of partition function by one method.
pub fn compute(flavor: Flavor, method: Method, max_q: u32) -> Result<QSeries, MacMahonError> {
    if !method.supports(flavor) {
        return Err(MacMahonError::Unsupported { method, flavor });
    }
    match (flavor, method) {
        (Flavor::Classical, Method::Product) => Ok(z_product(max_q)),
        (Flavor::Classical, Method::Transfer) => z_transfer(max_q),
        (Flavor::Classical, Method::Commutation) => Ok(z_classical_commutation(max_q)),
        (Flavor::Classical, Method::Enumeration) => z_enumeration(max_q),
        (Flavor::Deformed, Method::Product) => Ok(z_deformed_product(max_q)),
        (Flavor::Deformed, Method::Commutation) => Ok(z_deformed_commutation(max_q)),
        (Flavor::Deformed, Method::Pairs) => z_pairs_oracle(max_q),
        (Flavor::Refined, Method::Product) => Ok(z_refined_variant(max_q)),
        (Flavor::Refined, Method::Commutation) => Ok(z_refined_commutation(max_q)),
        _ => unreachable!("filtered by Method::supports"),
    }
}

/// Agreement of one method with the reference (first) method.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub reference: Method,
    pub method: Method,
    pub agrees: bool,
    /// Lowest `q`-power (in half units of `u`) where the two differ.
    pub first_mismatch_u: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionFunctionReport {
    pub flavor: Flavor,
    pub max_q: u32,
    pub results: Vec<(Method, QSeries)>,
    pub verdicts: Vec<Verdict>,
    /// Whether each result has integral, nonnegative coefficients and integral `q`-powers.
    pub integral: Vec<(Method, bool)>,
}

impl PartitionFunctionReport {
    pub fn all_agree(&self) -> bool {
        self.verdicts.iter().all(|v| v.agrees) && self.integral.iter().all(|(_, ok)| *ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "flavor": self.flavor.to_string(),
            "max_q": self.max_q,
            "results": self.results.iter().map(|(m, s)| json!({
                "method": m.to_string(),
                "series": s.to_json(),
                "text": s.to_string(),
            })).collect::<Vec<_>>(),
            "verdicts": self.verdicts.iter().map(|v| json!({
                "reference": v.reference.to_string(),
                "method": v.method.to_string(),
                "agrees": v.agrees,
                "first_mismatch": v.first_mismatch_u.map(|u| crate::series::render_half(u as i64)),
            })).collect::<Vec<_>>(),
            "integral": self.integral.iter().map(|(m, ok)| json!({"method": m.to_string(), "ok": ok})).collect::<Vec<_>>(),
            "agree": self.all_agree(),
        })
    }
}

/// Runs every requested method and compares each against the first.
pub fn report(flavor: Flavor, methods: &[Method], max_q: u32) -> Result<PartitionFunctionReport, MacMahonError> {
    let results = methods
        .iter()
        .map(|&m| compute(flavor, m, max_q).map(|s| (m, s)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut verdicts = Vec::new();
    if let Some((reference, base)) = results.first() {
        for (m, s) in &results[1..] {
            let diff = s - base;
            verdicts.push(Verdict {
                reference: *reference,
                method: *m,
                agrees: diff.is_zero(),
                first_mismatch_u: diff.terms().next().map(|(e, _)| e),
            });
        }
    }
    let integral = results
        .iter()
        .map(|(m, s)| (*m, has_integral_coefficients(s, flavor == Flavor::Refined)))
        .collect();
    Ok(PartitionFunctionReport { flavor, max_q, results, verdicts, integral })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::quantum_int;

    fn poly(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (2 * i as i64, rat(c))))
    }

    #[test]
    fn product_examples() {
        assert_eq!(z_product(0), QSeries::one(2));
        assert_eq!(z_product(2).to_string(), "1 + q + 3q^2 + O(q^3)");
        assert_eq!(z_product(6).q_coeff(6), LaurentPoly::from_int(48));
    }

    #[test]
    fn transfer_examples() {
        assert_eq!(z_transfer(0).unwrap(), QSeries::one(2));
        assert_eq!(z_transfer(4).unwrap(), z_product(4));
        assert_eq!(z_transfer(6).unwrap().q_coeff(6), LaurentPoly::from_int(48));
    }

    #[test]
    fn transfer_needs_enough_factors() {
        // one factor pair only sees the n = 1 factor
        assert_ne!(z_transfer_with(3, 1), z_product(3));
        assert_eq!(z_transfer_with(3, 1), QSeries::geom_inverse(2, &LaurentPoly::one(), 8).unwrap());
    }

    #[test]
    fn deformed_product_examples() {
        assert_eq!(z_deformed_product(1).to_string(), "1 + (1+t)q + O(q^2)");
        assert_eq!(z_deformed_product(2).q_coeff(2), poly(&[3, 3, 1]));
        assert_eq!(z_deformed_product(5).specialize_t(&rat(0)).unwrap(), z_product(5));
    }

    #[test]
    fn commutation_examples() {
        assert_eq!(z_deformed_commutation(0), QSeries::one(2));
        assert_eq!(z_deformed_commutation(3), z_deformed_product(3));
        assert_eq!(z_deformed_commutation(2).q_coeff(1), poly(&[1, 1]));
        assert_eq!(z_classical_commutation(5), z_product(5));
    }

    #[test]
    fn swap_factor_is_the_double_geometric_series() {
        let coeffs = swap_coefficients(6);
        for (j, c) in coeffs.iter().enumerate() {
            assert_eq!(c, &quantum_int(j as i64 + 1).unwrap());
        }
        let order = 14;
        let closed = &geom(2, &LaurentPoly::one(), order) * &geom(2, &LaurentPoly::t_pow(1), order);
        assert_eq!(swap_factor(&coeffs, 2, order), closed);
    }

    #[test]
    fn refined_examples() {
        let r = z_refined_variant(1);
        assert_eq!(r.q_coeff(1), &LaurentPoly::s_pow(-1) + &LaurentPoly::s_pow(1));
        let r = z_refined_variant(6);
        for n in 0..=6 {
            assert_eq!(r.q_coeff(n), r.q_coeff(n).bar(), "q^{n} coefficient not bar-invariant");
        }
        assert_eq!(r.specialize_t(&rat(1)).unwrap(), z_deformed_product(6).specialize_t(&rat(1)).unwrap());
        assert_eq!(z_refined_commutation(6), r);
    }

    #[test]
    fn refined_shift_only_aligns_low_orders() {
        let found = refined_shift_relation(6);
        assert!(found.iter().all(|r| r.shift == r.n as i64));
        let holds: Vec<bool> = found.iter().map(|r| r.holds).collect();
        assert_eq!(holds, vec![true, true, false, false, false, false, false]);
    }

    #[test]
    fn pairs_examples() {
        let z = z_pairs_oracle(2).unwrap();
        assert_eq!(z.q_coeff(0), LaurentPoly::one());
        assert_eq!(z.q_coeff(1), poly(&[1, 1]));
        assert_eq!(z.q_coeff(2), poly(&[3, 3, 1]));
        assert!(matches!(z_pairs_oracle(11), Err(MacMahonError::BeyondDeskScale { .. })));
    }

    #[test]
    fn report_flags_unsupported_and_agreement() {
        assert!(matches!(
            compute(Flavor::Deformed, Method::Transfer, 2),
            Err(MacMahonError::Unsupported { .. })
        ));
        let r = report(Flavor::Classical, &[Method::Product, Method::Transfer, Method::Enumeration], 5).unwrap();
        assert!(r.all_agree());
        assert_eq!(r.verdicts.len(), 2);
    }
}
