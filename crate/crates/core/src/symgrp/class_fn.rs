//! Class functions on `S_n` with Laurent-polynomial values, the induction
//! product and the characteristic map into the boson Fock space.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use itertools::Itertools;

use super::{CharacterTable, SymGrpError};
use crate::heisenberg::{a_act, AExpr, HeisenbergError, PartitionPoly, Side};
use crate::partition::Partition;
use crate::series::{LaurentPoly, Rational};

/// Values on every cycle type of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    n: u32,
    values: BTreeMap<Partition, LaurentPoly>,
}

impl ClassFunction {
    pub fn from_fn<F: FnMut(&Partition) -> LaurentPoly>(n: u32, mut f: F) -> Self {
        let values = Partition::all_of(n).into_iter().map(|mu| {
            let v = f(&mu);
            (mu, v)
        });
        Self { n, values: values.collect() }
    }

    pub fn zero(n: u32) -> Self {
        Self::from_fn(n, |_| LaurentPoly::zero())
    }

    pub fn irreducible(lambda: &Partition) -> Self {
        let mut table = CharacterTable::new();
        Self::from_fn(lambda.weight(), |mu| {
            LaurentPoly::from_int(table.value(lambda, mu).expect("same weight"))
        })
    }

    pub fn trivial(n: u32) -> Self {
        Self::from_fn(n, |_| LaurentPoly::one())
    }

    pub fn sign(n: u32) -> Self {
        Self::from_fn(n, |mu| LaurentPoly::from_int(if (n as usize - mu.len()).is_multiple_of(2) { 1 } else { -1 }))
    }

    pub fn rank(&self) -> u32 {
        self.n
    }

    pub fn value(&self, mu: &Partition) -> LaurentPoly {
        self.values.get(mu).cloned().unwrap_or_default()
    }

    pub fn values(&self) -> impl Iterator<Item = (&Partition, &LaurentPoly)> + '_ {
        self.values.iter()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_fn(self.n, |mu| &self.value(mu) * c)
    }

    /// `<f, g> = sum_μ f(μ) g(μ) / z_μ` (bilinear, no bar on either side).
    pub fn inner(&self, other: &ClassFunction) -> Result<LaurentPoly, SymGrpError> {
        if self.n != other.n {
            return Err(SymGrpError::RankMismatch(self.n, other.n));
        }
        let mut acc = LaurentPoly::zero();
        for (mu, v) in &self.values {
            let w = other.value(mu);
            acc += &(v * &w).scale(&Rational::new(1.into(), mu.z()));
        }
        Ok(acc)
    }

    /// Multiplicity of each irreducible `χ^λ` in this class function; zero entries omitted.
    pub fn decompose(&self) -> BTreeMap<Partition, LaurentPoly> {
        Partition::all_of(self.n)
            .into_iter()
            .filter_map(|lambda| {
                let m = self.inner(&ClassFunction::irreducible(&lambda)).expect("same rank");
                (!m.is_zero()).then_some((lambda, m))
            })
            .collect()
    }
}

impl fmt::Display for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.values.iter().map(|(mu, v)| format!("{mu}: {v}")).join(", ");
        write!(f, "{{{body}}}")
    }
}

impl Add<&ClassFunction> for &ClassFunction {
    type Output = ClassFunction;
    fn add(self, rhs: &ClassFunction) -> ClassFunction {
        assert_eq!(self.n, rhs.n, "class functions on different groups");
        ClassFunction::from_fn(self.n, |mu| &self.value(mu) + &rhs.value(mu))
    }
}

impl Sub<&ClassFunction> for &ClassFunction {
    type Output = ClassFunction;
    fn sub(self, rhs: &ClassFunction) -> ClassFunction {
        assert_eq!(self.n, rhs.n, "class functions on different groups");
        ClassFunction::from_fn(self.n, |mu| &self.value(mu) - &rhs.value(mu))
    }
}

/// Character of `Ind_{S_m × S_n}^{S_{m+n}} (f ⊠ g)`:
/// `(f ∘ g)(ν) = sum_{α ∪ β = ν} z_ν / (z_α z_β) f(α) g(β)`.
pub fn induce_product(f: &ClassFunction, g: &ClassFunction) -> ClassFunction {
    let total = f.n + g.n;
    let mut values: BTreeMap<Partition, LaurentPoly> =
        Partition::all_of(total).into_iter().map(|nu| (nu, LaurentPoly::zero())).collect();
    for (alpha, fa) in &f.values {
        for (beta, gb) in &g.values {
            let nu = alpha.union(beta);
            let weight = Rational::new(nu.z(), alpha.z() * beta.z());
            let slot = values.get_mut(&nu).expect("all cycle types present");
            *slot += &(fa * gb).scale(&weight);
        }
    }
    ClassFunction { n: total, values }
}

/// `ch(f) = sum_μ z_μ^{-1} S(f(μ)) a_{-μ}` with `S` the bar involution `t -> t^-1`.
pub fn ch(f: &ClassFunction) -> AExpr {
    let mut poly = PartitionPoly::zero();
    for (mu, v) in &f.values {
        poly.add_term(mu.clone(), &v.bar().scale(&Rational::new(1.into(), mu.z())));
    }
    AExpr::new(Side::Lowering, poly)
}

/// Vacuum pairing `<0| a_{λ_1} a_{λ_2} ⋯ a_{-μ} |0>`, computed by applying the
/// annihilation modes one at a time as derivations.
pub fn pairing(lambda: &Partition, mu: &Partition) -> LaurentPoly {
    let mut state = AExpr::monomial(Side::Lowering, mu.clone());
    for &part in lambda.parts() {
        state = a_act(part as i64, &state).unwrap_or_else(|e: HeisenbergError| unreachable!("{e}"));
        if state.is_zero() {
            break;
        }
    }
    state.constant_term()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::pq_in_a;
    use crate::heisenberg::Generator;
    use crate::series::rat;

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn half() -> LaurentPoly {
        LaurentPoly::constant(Rational::new(1.into(), 2.into()))
    }

    #[test]
    fn induce_trivial_pair() {
        let prod = induce_product(&ClassFunction::trivial(1), &ClassFunction::trivial(1));
        let expected = &ClassFunction::irreducible(&part(&[2])) + &ClassFunction::irreducible(&part(&[1, 1]));
        assert_eq!(prod, expected);
    }

    #[test]
    fn induce_is_symmetric() {
        let f = ClassFunction::irreducible(&part(&[2, 1]));
        let g = ClassFunction::irreducible(&part(&[1, 1]));
        assert_eq!(induce_product(&f, &g), induce_product(&g, &f));
    }

    #[test]
    fn induce_trivials_is_pieri() {
        // triv_2 ∘ triv_2 = χ(4) + χ(3,1) + χ(2,2)
        let d = induce_product(&ClassFunction::trivial(2), &ClassFunction::trivial(2)).decompose();
        let keys: Vec<String> = d.keys().map(|l| l.to_string()).collect();
        assert_eq!(keys, ["(4)", "(3,1)", "(2,2)"]);
        assert!(d.values().all(LaurentPoly::is_one));
    }

    #[test]
    fn ch_examples() {
        assert_eq!(ch(&ClassFunction::trivial(1)), AExpr::monomial(Side::Lowering, part(&[1])));

        let mut triv2 = PartitionPoly::zero();
        triv2.add_term(part(&[2]), &half());
        triv2.add_term(part(&[1, 1]), &half());
        assert_eq!(ch(&ClassFunction::trivial(2)), AExpr::new(Side::Lowering, triv2));
        assert_eq!(ch(&ClassFunction::trivial(2)), pq_in_a(Generator::p(2)));

        let mut sign2 = PartitionPoly::zero();
        sign2.add_term(part(&[2]), &-half());
        sign2.add_term(part(&[1, 1]), &half());
        assert_eq!(ch(&ClassFunction::sign(2)), AExpr::new(Side::Lowering, sign2));
    }

    #[test]
    fn ch_applies_bar() {
        let f = ClassFunction::trivial(1).scale(&LaurentPoly::t_pow(2));
        assert_eq!(ch(&f).coeff(&part(&[1])), LaurentPoly::t_pow(-2));
    }

    #[test]
    fn pairing_examples() {
        let one_plus_t = &LaurentPoly::one() + &LaurentPoly::t_pow(1);
        assert_eq!(pairing(&part(&[1]), &part(&[1])), one_plus_t);
        assert!(pairing(&part(&[2]), &part(&[1, 1])).is_zero());
        assert_eq!(pairing(&part(&[1, 1]), &part(&[1, 1])), (&one_plus_t * &one_plus_t).scale(&rat(2)));
    }

    #[test]
    fn irreducibles_are_orthonormal() {
        for n in 1..=5 {
            for l in Partition::all_of(n) {
                for m in Partition::all_of(n) {
                    let v = ClassFunction::irreducible(&l).inner(&ClassFunction::irreducible(&m)).unwrap();
                    let expected = if l == m { LaurentPoly::one() } else { LaurentPoly::zero() };
                    assert_eq!(v, expected);
                }
            }
        }
    }
}
