//! Named invariant suites with machine-readable verdicts.
//!
//! Every check reports `passed` and a JSON `detail`: a small summary when it
//! passes, the first counterexample when it fails.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::fock::{pieri_expand, verify_gamma_commutation};
use crate::heisenberg::{
    normal_order, normal_order_random, pq_in_a, random_word, relation_rhs, vacuum_expectation, verify_pq_relation,
    Generator, HExpr,
};
use crate::macmahon::{self, Flavor, Method};
use crate::partition::Partition;
use crate::planepart::{enumerate_plane_partitions, PlanePartition};
use crate::series::{quantum_int, rat, LaurentPoly, QSeries, Rational};
use crate::symgrp::{
    ch, character_table, induce_product, irrep_dimension, pairing, young_symmetrizer, ClassFunction, YoungTableau,
};

pub const SUITES: [&str; 6] = ["series", "heisenberg", "symgrp", "fock", "planepart", "macmahon"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown suite {name:?}; available: {}, all", SUITES.join(", "))]
    UnknownSuite { name: String },
}

/// Size bounds for the suites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Relation checks run over `1 <= n, m <= max_n`.
    pub max_n: u32,
    pub random_words: usize,
    pub max_word_len: usize,
    pub max_word_index: u32,
    pub symmetrizer_rank: u32,
    pub character_rank: u32,
    /// Bound on total rank for `ch` and Pieri checks.
    pub ch_rank: u32,
    pub fock_cutoff: u32,
    pub max_volume: u32,
    pub max_q: u32,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_n: 6,
            random_words: 1000,
            max_word_len: 6,
            max_word_index: 4,
            symmetrizer_rank: 5,
            character_rank: 7,
            ch_rank: 6,
            fock_cutoff: 4,
            max_volume: 10,
            max_q: 8,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> + '_ {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "suite": c.suite,
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Runs one suite, or every suite for `"all"`.
pub fn run_verify(suite: &str, budget: &Budget) -> Result<VerifyReport, VerifyError> {
    let names: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        other => return Err(VerifyError::UnknownSuite { name: other.to_string() }),
    };
    let mut checks = Vec::new();
    for name in names {
        checks.extend(match name {
            "series" => series_suite(budget),
            "heisenberg" => heisenberg_suite(budget),
            "symgrp" => symgrp_suite(budget),
            "fock" => fock_suite(budget),
            "planepart" => planepart_suite(budget),
            "macmahon" => macmahon_suite(budget),
            _ => unreachable!("names come from SUITES"),
        });
    }
    Ok(VerifyReport { checks })
}

fn check(suite: &'static str, name: &'static str, outcome: Result<Value, Value>) -> Check {
    match outcome {
        Ok(detail) => Check { suite, name, passed: true, detail },
        Err(detail) => Check { suite, name, passed: false, detail },
    }
}

fn random_poly<R: Rng>(rng: &mut R, allow_negative: bool) -> LaurentPoly {
    let lo = if allow_negative { -3 } else { 0 };
    let mut p = LaurentPoly::zero();
    for _ in 0..rng.gen_range(0..4) {
        p.add_term(2 * rng.gen_range(lo..=3), rat(rng.gen_range(-4..=4)));
    }
    p
}

fn random_series<R: Rng>(rng: &mut R, order: u32, allow_negative: bool) -> QSeries {
    QSeries::from_terms((0..order).map(|u| (u, random_poly(rng, allow_negative))), order)
}

fn series_suite(budget: &Budget) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let cases = 200;
    let ring = (0..cases)
        .find_map(|_| {
            let (a, b, c) = (random_poly(&mut rng, true), random_poly(&mut rng, true), random_poly(&mut rng, true));
            let ok = &(&a * &b) * &c == &a * &(&b * &c)
                && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
                && &a * &b == &b * &a
                && &(&a - &b) + &b == a;
            (!ok).then(|| json!({"a": a.to_string(), "b": b.to_string(), "c": c.to_string()}))
        })
        .map_or(Ok(json!({"cases": cases})), Err);

    let order = 2 * budget.max_q + 2;
    let scalars = [LaurentPoly::one(), LaurentPoly::t_pow(1), LaurentPoly::t_pow(-1), LaurentPoly::s_pow(1)];
    let geom = (1..=4i64)
        .flat_map(|e| scalars.iter().map(move |s| (e, s)))
        .find_map(|(e, s)| {
            let inv = QSeries::geom_inverse(e, s, order as i64).expect("positive exponent and order");
            let base = &QSeries::one(order) - &QSeries::monomial(e as u32, s.clone(), order);
            (!(&base * &inv == QSeries::one(order))).then(|| json!({"exponent": e, "scalar": s.to_string()}))
        })
        .map_or(Ok(json!({"order": order})), Err);

    let qint = (1..=10i64)
        .find(|&k| {
            let q = quantum_int(k).expect("k >= 1");
            q.eval_t(&rat(1)).ok() != Some(rat(k)) || q.len() != k as usize
        })
        .map_or(Ok(json!({"k_max": 10})), |k| Err(json!({"k": k})));

    let values = [rat(0), rat(1), rat(-1), rat(2), Rational::new(1.into(), 2.into())];
    let special = (0..50)
        .find_map(|_| {
            let a = random_series(&mut rng, 6, false);
            let b = random_series(&mut rng, 6, false);
            values.iter().find_map(|v| {
                let lhs = (&a * &b).specialize_t(v).expect("polynomial coefficients");
                let rhs = &a.specialize_t(v).expect("polynomial") * &b.specialize_t(v).expect("polynomial");
                (lhs != rhs).then(|| json!({"a": a.to_string(), "b": b.to_string(), "t": v.to_string()}))
            })
        })
        .map_or(Ok(json!({"cases": 50, "values": values.len()})), Err);

    vec![
        check("series", "ring_axioms", ring),
        check("series", "geometric_inverse", geom),
        check("series", "quantum_integers", qint),
        check("series", "specialization_multiplicative", special),
    ]
}

fn heisenberg_suite(budget: &Budget) -> Vec<Check> {
    let n_max = budget.max_n;
    let pairs = || (1..=n_max).flat_map(|n| (1..=n_max).map(move |m| (n, m)));
    let rewrite = pairs()
        .find_map(|(n, m)| {
            let lhs = normal_order(&HExpr::word([Generator::q(n), Generator::p(m)]));
            let rhs = relation_rhs(n, m);
            (lhs != rhs || !lhs.is_integral()).then(|| {
                json!({"n": n, "m": m, "normal_form": lhs.to_string(), "expected": rhs.to_string()})
            })
        })
        .map_or(Ok(json!({"pairs": n_max * n_max})), Err);

    let boson = pairs()
        .map(|(n, m)| verify_pq_relation(n, m))
        .find(|r| !r.holds)
        .map_or(Ok(json!({"pairs": n_max * n_max})), |r| {
            Err(json!({"n": r.n, "m": r.m, "computed": r.computed.to_string(), "difference": r.difference.to_string()}))
        });

    let vacuum = (0..=n_max)
        .find(|&n| {
            let e = HExpr::word([Generator::q(n), Generator::p(n)]);
            vacuum_expectation(&e) != quantum_int(n as i64 + 1).expect("positive")
        })
        .map_or(Ok(json!({"n_max": n_max})), |n| Err(json!({"n": n})));

    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut steps = 0usize;
    let mut confluence = Ok(());
    let mut termination = Ok(());
    for _ in 0..budget.random_words {
        let word = HExpr::term(random_word(&mut rng, budget.max_word_len, budget.max_word_index), LaurentPoly::one());
        let canonical = normal_order(&word);
        let (first, s1) = normal_order_random(&word, &mut rng);
        let (second, s2) = normal_order_random(&word, &mut rng);
        steps += s1.steps + s2.steps;
        if termination.is_ok() && s1.non_decreasing_steps + s2.non_decreasing_steps > 0 {
            termination = Err(json!({"word": word.to_string()}));
        }
        if confluence.is_ok() && !(first == canonical && second == canonical && canonical.is_normal()) {
            confluence = Err(json!({
                "word": word.to_string(),
                "leftmost": canonical.to_string(),
                "random_a": first.to_string(),
                "random_b": second.to_string(),
            }));
        }
    }
    let summary = json!({"words": budget.random_words, "seed": budget.seed, "steps": steps});

    vec![
        check("heisenberg", "relation_normal_order", rewrite),
        check("heisenberg", "relation_boson_presentation", boson),
        check("heisenberg", "vacuum_expectation", vacuum),
        check("heisenberg", "termination", termination.map(|_| summary.clone())),
        check("heisenberg", "confluence", confluence.map(|_| summary)),
    ]
}

fn symgrp_suite(budget: &Budget) -> Vec<Check> {
    let mut tableaux = 0;
    let idempotent = (1..=budget.symmetrizer_rank)
        .flat_map(Partition::all_of)
        .flat_map(|shape| YoungTableau::standard(&shape))
        .find_map(|t| {
            tableaux += 1;
            let e = young_symmetrizer(&t);
            (&e * &e != e).then(|| json!({"tableau": t.to_string()}))
        })
        .map_or_else(|| Ok(json!({"tableaux": tableaux})), Err);

    let orthogonality = (1..=budget.character_rank)
        .find_map(|n| character_orthogonality_failure(n).map(|d| json!({"n": n, "entry": d})))
        .map_or(Ok(json!({"n_max": budget.character_rank})), Err);

    let dimension = (1..=budget.character_rank)
        .find_map(|n| {
            let parts = Partition::all_of(n);
            let identity_col = parts.len() - 1;
            let table = character_table(n);
            parts.iter().zip(&table).find_map(|(l, row)| {
                (row[identity_col] != irrep_dimension(l) as i64)
                    .then(|| json!({"lambda": l.to_string(), "character": row[identity_col], "hooks": irrep_dimension(l)}))
            })
        })
        .map_or(Ok(json!({"n_max": budget.character_rank})), Err);

    let multiplicative = ch_multiplicativity_failure(budget.ch_rank)
        .map_or(Ok(json!({"total_rank": budget.ch_rank})), Err);

    let trivial = (1..=budget.ch_rank)
        .find(|&n| ch(&ClassFunction::trivial(n)) != pq_in_a(Generator::p(n)))
        .map_or(Ok(json!({"n_max": budget.ch_rank})), |n| Err(json!({"n": n})));

    let pair = (1..=budget.symmetrizer_rank)
        .flat_map(|n| {
            let parts = Partition::all_of(n);
            parts.iter().flat_map(|l| parts.iter().map(move |m| (l.clone(), m.clone()))).collect::<Vec<_>>()
        })
        .find_map(|(l, m)| {
            let expected = if l == m {
                let mut prod = LaurentPoly::constant(Rational::from_integer(l.z()));
                for &part in l.parts() {
                    prod = &prod * &(&LaurentPoly::one() + &LaurentPoly::t_pow(part as i64));
                }
                prod
            } else {
                LaurentPoly::zero()
            };
            let got = pairing(&l, &m);
            (got != expected).then(|| json!({"lambda": l.to_string(), "mu": m.to_string(), "value": got.to_string()}))
        })
        .map_or(Ok(json!({"n_max": budget.symmetrizer_rank})), Err);

    vec![
        check("symgrp", "symmetrizer_idempotent", idempotent),
        check("symgrp", "character_orthogonality", orthogonality),
        check("symgrp", "dimension_is_character_at_identity", dimension),
        check("symgrp", "ch_multiplicative", multiplicative),
        check("symgrp", "ch_trivial_is_p", trivial),
        check("symgrp", "pairing_closed_form", pair),
    ]
}

/// Row and column orthogonality of the character table of `S_n`; first bad entry.
pub fn character_orthogonality_failure(n: u32) -> Option<Value> {
    let parts = Partition::all_of(n);
    let table = character_table(n);
    let z: Vec<Rational> = parts.iter().map(|mu| Rational::from_integer(mu.z())).collect();
    for i in 0..parts.len() {
        for j in 0..parts.len() {
            let row: Rational = (0..parts.len())
                .map(|k| Rational::from_integer((table[i][k] * table[j][k]).into()) / &z[k])
                .sum();
            let col: i64 = (0..parts.len()).map(|k| table[k][i] * table[k][j]).sum();
            let row_ok = row == rat((i == j) as i64);
            let col_ok = Rational::from_integer(col.into()) == if i == j { z[i].clone() } else { rat(0) };
            if !row_ok || !col_ok {
                return Some(json!({"a": parts[i].to_string(), "b": parts[j].to_string()}));
            }
        }
    }
    None
}

/// `ch(f ∘ g) = ch(f) ch(g)` over irreducible pairs with `1 <= |f|, |g|` and `|f| + |g| <= total`.
pub fn ch_multiplicativity_failure(total: u32) -> Option<Value> {
    for m in 1..total {
        for n in 1..=(total - m) {
            for a in Partition::all_of(m) {
                for b in Partition::all_of(n) {
                    let f = ClassFunction::irreducible(&a);
                    let g = ClassFunction::irreducible(&b);
                    let lhs = ch(&induce_product(&f, &g));
                    let rhs = ch(&f).mul_same_side(&ch(&g)).expect("both lowering");
                    if lhs != rhs {
                        return Some(json!({"f": a.to_string(), "g": b.to_string(), "lhs": lhs.to_string(), "rhs": rhs.to_string()}));
                    }
                }
            }
        }
    }
    None
}

/// Pieri expansion against the constituents of `χ^λ ∘ triv_n` for `|λ| + n <= total`.
pub fn pieri_failure(total: u32) -> Option<Value> {
    for n in 1..=total {
        for lambda in Partition::all_up_to(total - n) {
            let pieri: BTreeSet<Partition> = pieri_expand(n, &lambda).into_iter().collect();
            let product = induce_product(&ClassFunction::irreducible(&lambda), &ClassFunction::trivial(n)).decompose();
            let multiplicity_free = product.values().all(LaurentPoly::is_one);
            let induced: BTreeSet<Partition> = product.into_keys().collect();
            if pieri != induced || !multiplicity_free {
                return Some(json!({
                    "lambda": lambda.to_string(),
                    "n": n,
                    "pieri": pieri.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "induced": induced.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }));
            }
        }
    }
    None
}

fn fock_suite(budget: &Budget) -> Vec<Check> {
    let units = [(1, 1), (1, 3), (3, 1), (3, 5)];
    let gamma = units
        .iter()
        .find_map(|&(z, w)| {
            verify_gamma_commutation(budget.fock_cutoff, z, w).err().map(|e| {
                json!({
                    "z": crate::series::render_half(z as i64),
                    "w": crate::series::render_half(w as i64),
                    "input": e.input.to_string(),
                    "output": e.output.to_string(),
                    "lhs": e.lhs.to_string(),
                    "rhs": e.rhs.to_string(),
                })
            })
        })
        .map_or(Ok(json!({"cutoff": budget.fock_cutoff, "unit_pairs": units.len()})), Err);

    let pieri = pieri_failure(budget.ch_rank).map_or(Ok(json!({"total_rank": budget.ch_rank})), Err);

    vec![check("fock", "gamma_commutation", gamma), check("fock", "pieri_matches_induction", pieri)]
}

/// Slicing is invertible and the slices interlace for every plane partition of volume `<= max_volume`.
pub fn slice_failure(max_volume: u32) -> Option<Value> {
    for v in 0..=max_volume {
        for pp in enumerate_plane_partitions(v) {
            let slices = pp.diagonal_slices();
            let back = PlanePartition::from_slices(&slices);
            if !pp.check_slice_chain() || back.as_ref() != Ok(&pp) {
                return Some(json!({"plane_partition": pp.to_string()}));
            }
        }
    }
    None
}

fn planepart_suite(budget: &Budget) -> Vec<Check> {
    let product = macmahon::z_product(budget.max_volume);
    let counts = (0..=budget.max_volume)
        .find_map(|n| {
            let count = enumerate_plane_partitions(n).len() as i64;
            let coeff = product.q_coeff(n);
            (coeff != LaurentPoly::from_int(count))
                .then(|| json!({"volume": n, "enumerated": count, "product": coeff.to_string()}))
        })
        .map_or(Ok(json!({"max_volume": budget.max_volume})), Err);
    let slices = slice_failure(budget.max_volume).map_or(Ok(json!({"max_volume": budget.max_volume})), Err);
    vec![check("planepart", "counts_match_product", counts), check("planepart", "slice_bijection", slices)]
}

fn report_check(flavor: Flavor, methods: &[Method], max_q: u32) -> Result<Value, Value> {
    match macmahon::report(flavor, methods, max_q) {
        Ok(r) if r.all_agree() => Ok(json!({"max_q": max_q, "methods": methods.iter().map(ToString::to_string).collect::<Vec<_>>()})),
        Ok(r) => Err(r.to_json()),
        Err(e) => Err(json!({"error": e.to_string()})),
    }
}

/// First coefficient where two series differ, as a JSON payload.
pub fn first_difference(lhs: &QSeries, rhs: &QSeries) -> Option<Value> {
    let diff = lhs - rhs;
    let first = diff.terms().next().map(|(u, _)| u);
    first.map(|u| {
        json!({
            "q_power": crate::series::render_half(u as i64),
            "lhs": lhs.coeff(u).to_string(),
            "rhs": rhs.coeff(u).to_string(),
        })
    })
}

fn macmahon_suite(budget: &Budget) -> Vec<Check> {
    let n = budget.max_q;
    let classical = report_check(
        Flavor::Classical,
        &[Method::Product, Method::Transfer, Method::Commutation, Method::Enumeration],
        n,
    );
    let deformed = report_check(Flavor::Deformed, &[Method::Product, Method::Commutation, Method::Pairs], n.min(macmahon::PAIRS_ORACLE_MAX));
    let t_zero = first_difference(
        &macmahon::z_deformed_product(n).specialize_t(&rat(0)).expect("polynomial coefficients"),
        &macmahon::z_product(n),
    )
    .map_or(Ok(json!({"max_q": n})), Err);

    let refined = macmahon::z_refined_variant(n);
    let refined_routes = report_check(Flavor::Refined, &[Method::Product, Method::Commutation], n);
    let refined_sym = (0..=n)
        .find(|&k| refined.q_coeff(k) != refined.q_coeff(k).bar())
        .map_or(Ok(json!({"max_q": n})), |k| Err(json!({"q_power": k})));
    let refined_t1 = first_difference(
        &refined.specialize_t(&rat(1)).expect("Laurent coefficients"),
        &macmahon::z_deformed_product(n).specialize_t(&rat(1)).expect("polynomial coefficients"),
    )
    .map_or(Ok(json!({"max_q": n})), Err);
    let shifts = macmahon::refined_shift_relation(n);
    let scope_ok = shifts.iter().all(|r| r.holds == (r.n <= 1));
    let shift_detail = json!(shifts
        .iter()
        .map(|r| json!({"n": r.n, "shift": r.shift, "holds": r.holds}))
        .collect::<Vec<_>>());

    vec![
        check("macmahon", "classical_methods_agree", classical),
        check("macmahon", "deformed_methods_agree", deformed),
        check("macmahon", "t_zero_is_classical", t_zero),
        check("macmahon", "refined_methods_agree", refined_routes),
        check("macmahon", "refined_bar_symmetric", refined_sym),
        check("macmahon", "refined_t_one_is_deformed_t_one", refined_t1),
        check("macmahon", "refined_shift_scope", if scope_ok { Ok(shift_detail) } else { Err(shift_detail) }),
    ]
}
