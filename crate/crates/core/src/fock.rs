//! The partition-basis Fock space truncated at a maximum weight, and the
//! transfer operators `Γ±(z)` acting by interlacing sums.
//!
//! The argument `z` is always a power of `u = q^(1/2)`, passed as its
//! exponent. States with weight above the cutoff are dropped when created,
//! so a computation is exact only up to the `u`-order its cutoff implies;
//! each operation below says how far that is.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

pub use crate::partition::Partition;
use crate::series::{LaurentPoly, QSeries};

/// `λ ≻ μ`: `λ_1 ≥ μ_1 ≥ λ_2 ≥ μ_2 ≥ ⋯` (λ/μ is a horizontal strip).
pub fn interlaces(lambda: &Partition, mu: &Partition) -> bool {
    if mu.len() > lambda.len() {
        return false;
    }
    (0..lambda.len()).all(|i| lambda.part(i) >= mu.part(i) && mu.part(i) >= lambda.part(i + 1))
}

/// All `μ ≻ λ` with `|μ| ≤ max_weight`, in [`Partition`] order.
pub fn partitions_above(lambda: &Partition, max_weight: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    if lambda.weight() > max_weight {
        return out;
    }
    let mut cur = Vec::with_capacity(lambda.len() + 1);
    grow(lambda, 0, max_weight - lambda.weight(), &mut cur, &mut out);
    out.sort();
    out
}

// Part i of μ ranges over [λ_i, λ_{i-1}] (unbounded for i = 0); budget is the weight still allowed.
fn grow(lambda: &Partition, i: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if i > lambda.len() {
        out.push(Partition::from_unsorted(cur.clone()));
        return;
    }
    let low = lambda.part(i);
    let high = if i == 0 { low + budget } else { lambda.part(i - 1).min(low + budget) };
    for v in low..=high {
        cur.push(v);
        grow(lambda, i + 1, budget - (v - low), cur, out);
        cur.pop();
    }
}

/// All `μ ≺ λ`, in [`Partition`] order.
pub fn partitions_below(lambda: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(lambda.len());
    shrink(lambda, 0, &mut cur, &mut out);
    out.sort();
    out
}

fn shrink(lambda: &Partition, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if i == lambda.len() {
        out.push(Partition::from_unsorted(cur.clone()));
        return;
    }
    for v in lambda.part(i + 1)..=lambda.part(i) {
        cur.push(v);
        shrink(lambda, i + 1, cur, out);
        cur.pop();
    }
}

/// Pieri expansion: every `μ ≻ λ` with `|μ| = |λ| + n`.
pub fn pieri_expand(n: u32, lambda: &Partition) -> Vec<Partition> {
    let target = lambda.weight() + n;
    partitions_above(lambda, target)
        .into_iter()
        .filter(|mu| mu.weight() == target)
        .collect()
}

/// A state `sum_λ c_λ(u) |λ⟩` with `|λ| ≤ cutoff` and coefficients exact below `u^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector {
    cutoff: u32,
    order: u32,
    coeffs: BTreeMap<Partition, QSeries>,
}

impl FockVector {
    pub fn zero(cutoff: u32, order: u32) -> Self {
        Self { cutoff, order, coeffs: BTreeMap::new() }
    }

    /// `|λ⟩`, or the zero vector if `λ` lies above the cutoff.
    pub fn basis(lambda: Partition, cutoff: u32, order: u32) -> Self {
        let mut out = Self::zero(cutoff, order);
        out.add(lambda, &QSeries::one(order));
        out
    }

    pub fn vacuum(cutoff: u32, order: u32) -> Self {
        Self::basis(Partition::empty(), cutoff, order)
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn add(&mut self, lambda: Partition, c: &QSeries) {
        if lambda.weight() > self.cutoff {
            return;
        }
        let slot = self.coeffs.entry(lambda.clone()).or_insert_with(|| QSeries::zero(self.order));
        *slot = &*slot + c;
        if slot.is_zero() {
            self.coeffs.remove(&lambda);
        }
    }

    pub fn coeff(&self, lambda: &Partition) -> QSeries {
        self.coeffs.get(lambda).cloned().unwrap_or_else(|| QSeries::zero(self.order))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &QSeries)> + '_ {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &QSeries) -> Self {
        let mut out = Self::zero(self.cutoff, self.order.min(c.order()));
        for (l, v) in &self.coeffs {
            out.add(l.clone(), &(v * c));
        }
        out
    }

    fn transfer<F>(&self, z_unit: u32, targets: F) -> Self
    where
        F: Fn(&Partition) -> Vec<Partition> + Sync,
    {
        let pieces: Vec<Vec<(Partition, QSeries)>> = self
            .coeffs
            .par_iter()
            .map(|(lambda, c)| {
                targets(lambda)
                    .into_iter()
                    .map(|mu| {
                        let diff = mu.weight().abs_diff(lambda.weight());
                        (mu, c.shift(z_unit * diff))
                    })
                    .collect()
            })
            .collect();
        let mut out = Self::zero(self.cutoff, self.order);
        for (mu, c) in pieces.into_iter().flatten() {
            out.add(mu, &c);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (l, c) in &self.coeffs {
            map.insert(l.to_string(), c.to_json());
        }
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (l, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{l}: {c}")?;
        }
        Ok(())
    }
}

/// `Γ₋(z)|λ⟩ = sum_{μ ≻ λ} z^{|μ|-|λ|} |μ⟩` with `z = u^z_unit`; states above the cutoff are dropped.
pub fn gamma_minus(state: &FockVector, z_unit: u32) -> FockVector {
    let cutoff = state.cutoff;
    state.transfer(z_unit, |lambda| partitions_above(lambda, cutoff))
}

/// `Γ₊(z)|λ⟩ = sum_{μ ≺ λ} z^{|λ|-|μ|} |μ⟩` with `z = u^z_unit`. Never leaves the truncated space.
pub fn gamma_plus(state: &FockVector, z_unit: u32) -> FockVector {
    state.transfer(z_unit, partitions_below)
}

/// A failed comparison in [`verify_gamma_commutation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationMismatch {
    pub input: Partition,
    pub output: Partition,
    pub lhs: QSeries,
    pub rhs: QSeries,
}

/// Checks `Γ₊(z)Γ₋(w) = (1 - zw)^{-1} Γ₋(w)Γ₊(z)` on every `|λ⟩` with `|λ| ≤ cutoff`.
///
/// The left side loses intermediate states above the cutoff; for the
/// matrix entry `⟨ν|⋯|λ⟩` those only contribute from `u`-order
/// `w(cutoff+1-|λ|) + z(cutoff+1-|ν|)` on, so each entry is compared below
/// that order.
pub fn verify_gamma_commutation(cutoff: u32, z_unit: u32, w_unit: u32) -> Result<(), CommutationMismatch> {
    assert!(z_unit + w_unit >= 1, "zw must be a positive power of u");
    let order = (z_unit + w_unit) * (cutoff + 1);
    let factor = QSeries::geom_inverse((z_unit + w_unit) as i64, &LaurentPoly::one(), order as i64)
        .expect("positive exponent and order");
    for lambda in Partition::all_up_to(cutoff) {
        let start = FockVector::basis(lambda.clone(), cutoff, order);
        let lhs = gamma_plus(&gamma_minus(&start, w_unit), z_unit);
        let rhs = gamma_minus(&gamma_plus(&start, z_unit), w_unit).scale(&factor);
        for nu in Partition::all_up_to(cutoff) {
            let exact = w_unit * (cutoff + 1 - lambda.weight()) + z_unit * (cutoff + 1 - nu.weight());
            let l = lhs.coeff(&nu).truncate(exact);
            let r = rhs.coeff(&nu).truncate(exact);
            if l != r {
                return Err(CommutationMismatch { input: lambda, output: nu, lhs: l, rhs: r });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn u(e: u32, order: u32) -> QSeries {
        QSeries::monomial(e, LaurentPoly::one(), order)
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&part(&[2, 1]), &part(&[1])));
        assert!(interlaces(&part(&[1]), &part(&[1])));
        assert!(!interlaces(&part(&[1, 1, 1]), &part(&[1])));
        assert!(interlaces(&part(&[3]), &Partition::empty()));
        assert!(!interlaces(&Partition::empty(), &part(&[1])));
    }

    #[test]
    fn enumeration_agrees_with_predicate() {
        let all = Partition::all_up_to(7);
        for l in &all {
            let above: Vec<_> = all.iter().filter(|m| interlaces(m, l)).cloned().collect();
            assert_eq!(partitions_above(l, 7), above, "above {l}");
            let below: Vec<_> = all.iter().filter(|m| interlaces(l, m)).cloned().collect();
            assert_eq!(partitions_below(l), below, "below {l}");
        }
    }

    #[test]
    fn gamma_minus_examples() {
        let v = gamma_minus(&FockVector::vacuum(3, 10), 1);
        let mut expected = FockVector::zero(3, 10);
        for k in 0..=3u32 {
            let l = if k == 0 { Partition::empty() } else { part(&[k]) };
            expected.add(l, &u(k, 10));
        }
        assert_eq!(v, expected);

        let v = gamma_minus(&FockVector::basis(part(&[1]), 2, 10), 1);
        let mut expected = FockVector::basis(part(&[1]), 2, 10);
        expected.add(part(&[2]), &u(1, 10));
        expected.add(part(&[1, 1]), &u(1, 10));
        assert_eq!(v, expected);

        assert_eq!(gamma_minus(&FockVector::vacuum(0, 4), 1), FockVector::vacuum(0, 4));
    }

    #[test]
    fn gamma_plus_examples() {
        assert_eq!(gamma_plus(&FockVector::vacuum(3, 6), 1), FockVector::vacuum(3, 6));

        let v = gamma_plus(&FockVector::basis(part(&[1]), 3, 6), 1);
        let mut expected = FockVector::basis(part(&[1]), 3, 6);
        expected.add(Partition::empty(), &u(1, 6));
        assert_eq!(v, expected);

        let v = gamma_plus(&FockVector::basis(part(&[2, 1]), 3, 6), 1);
        let mut expected = FockVector::basis(part(&[2, 1]), 3, 6);
        expected.add(part(&[2]), &u(1, 6));
        expected.add(part(&[1, 1]), &u(1, 6));
        expected.add(part(&[1]), &u(2, 6));
        assert_eq!(v, expected);
    }

    #[test]
    fn commutation_examples() {
        assert_eq!(verify_gamma_commutation(4, 1, 1), Ok(()));
        assert_eq!(verify_gamma_commutation(0, 1, 1), Ok(()));
        assert_eq!(verify_gamma_commutation(6, 1, 3), Ok(()));
    }

    #[test]
    fn commutation_needs_the_factor() {
        // Without the (1 - zw)^{-1} factor the relation must fail: ⟨∅|Γ₊Γ₋|∅⟩ = 1/(1-zw).
        let start = FockVector::vacuum(3, 8);
        let lhs = gamma_plus(&gamma_minus(&start, 1), 1);
        assert_eq!(lhs.coeff(&Partition::empty()).truncate(8), QSeries::geom_inverse(2, &LaurentPoly::one(), 8).unwrap());
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_expand(1, &part(&[1])), vec![part(&[2]), part(&[1, 1])]);
        assert_eq!(pieri_expand(2, &Partition::empty()), vec![part(&[2])]);
        assert_eq!(pieri_expand(2, &part(&[1])), vec![part(&[3]), part(&[2, 1])]);
    }

    #[test]
    fn pieri_is_gamma_minus_coefficient() {
        for l in Partition::all_up_to(4) {
            let v = gamma_minus(&FockVector::basis(l.clone(), 7, 20), 1);
            for n in 0..=3u32 {
                let from_gamma: Vec<Partition> = v
                    .terms()
                    .filter(|(_, c)| !c.coeff(n).is_zero())
                    .map(|(m, _)| m.clone())
                    .collect();
                assert_eq!(pieri_expand(n, &l), from_gamma, "λ = {l}, n = {n}");
            }
        }
    }
}
