//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! verdict lines are always printed; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use fockcat_core::fock::pieri_expand;
use fockcat_core::heisenberg::{
    normal_order, normal_order_random, pq_in_a, random_word, verify_pq_relation, Generator, HExpr, Word,
};
use fockcat_core::macmahon::{
    swap_coefficients, swap_factor, z_deformed_commutation, z_deformed_product, z_pairs_oracle, z_product, z_transfer,
};
use fockcat_core::partition::Partition;
use fockcat_core::planepart::{enumerate_plane_partitions, PlanePartition};
use fockcat_core::series::{quantum_int, rat, LaurentPoly, QSeries, Rational};
use fockcat_core::symgrp::{
    ch, character_table, induce_product, irrep_dimension, young_symmetrizer, ClassFunction, YoungTableau,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, failure: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(failure())
    }
}

fn first_difference(a: &QSeries, b: &QSeries) -> Option<(u32, LaurentPoly, LaurentPoly)> {
    let diff = a - b;
    let u = diff.terms().next().map(|(u, _)| u)?;
    Some((u, a.coeff(u), b.coeff(u)))
}

fn macmahon_three_way() -> Verdict {
    let product = z_product(10);
    let transfer = z_transfer(10).map_err(|e| e.to_string())?;
    for n in 0..=10u32 {
        let count = enumerate_plane_partitions(n).len() as i64;
        let (p, t) = (product.q_coeff(n), transfer.q_coeff(n));
        ensure(p == LaurentPoly::from_int(count) && t == p, || {
            format!("q^{n}: product {p}, transfer {t}, enumeration {count}")
        })?;
    }
    Ok(format!("N = 0..10, q^10 coefficient {}", product.q_coeff(10)))
}

fn deformed_commutation() -> Verdict {
    let order = 18;
    let x = |s: &LaurentPoly| QSeries::geom_inverse(2, s, order).unwrap();
    let closed = &x(&LaurentPoly::one()) * &x(&LaurentPoly::t_pow(1));
    ensure(swap_factor(&swap_coefficients(8), 2, order as u32) == closed, || {
        "swap factor from the rewrite system is not 1/((1-zw)(1-tzw))".into()
    })?;
    for n in 0..=8 {
        let (c, p) = (z_deformed_commutation(n), z_deformed_product(n));
        if let Some((u, a, b)) = first_difference(&c, &p) {
            return Err(format!("N = {n}, u^{u}: commutation {a}, product {b}"));
        }
    }
    Ok("N = 0..8".into())
}

fn t_zero_specialization() -> Verdict {
    for n in 0..=10 {
        let at_zero = z_deformed_product(n).specialize_t(&rat(0)).map_err(|e| e.to_string())?;
        if let Some((u, a, b)) = first_difference(&at_zero, &z_product(n)) {
            return Err(format!("N = {n}, u^{u}: Z(q,0) {a}, Z(q) {b}"));
        }
    }
    Ok("N = 0..10".into())
}

fn relation_and_presentations() -> Verdict {
    for n in 1..=6u32 {
        for m in 1..=6u32 {
            let mut expected = HExpr::zero();
            for k in 0..=n.min(m) {
                let word = Word::new([Generator::p(m - k), Generator::q(n - k)]);
                expected = &expected + &HExpr::term(word, quantum_int(k as i64 + 1).unwrap());
            }
            let nf = normal_order(&HExpr::word([Generator::q(n), Generator::p(m)]));
            ensure(nf == expected, || format!("q{n}*p{m}: normal form {nf}, expected {expected}"))?;
            let check = verify_pq_relation(n, m);
            ensure(check.holds, || format!("q{n}*p{m} via bosons differs by {}", check.difference))?;
        }
    }
    Ok("1 <= n, m <= 6, both presentations".into())
}

fn rewrite_health() -> Verdict {
    let seed = 20_240_601;
    let words = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut steps = 0;
    for _ in 0..words {
        let word = HExpr::term(random_word(&mut rng, 7, 4), LaurentPoly::one());
        let reference = normal_order(&word);
        ensure(reference.is_normal() && reference.is_integral(), || format!("{word}: bad normal form {reference}"))?;
        for _ in 0..2 {
            let (nf, stats) = normal_order_random(&word, &mut rng);
            steps += stats.steps;
            ensure(stats.non_decreasing_steps == 0, || format!("{word}: a rewrite step did not decrease the measure"))?;
            ensure(nf == reference, || format!("{word}: random strategy gave {nf}, leftmost gave {reference}"))?;
        }
    }
    Ok(format!("{words} words, seed {seed}, {steps} random rewrite steps"))
}

fn symmetric_group_suite() -> Verdict {
    let mut tableaux = 0;
    for n in 1..=5 {
        for shape in Partition::all_of(n) {
            for t in YoungTableau::standard(&shape) {
                let e = young_symmetrizer(&t);
                ensure(&e * &e == e, || format!("symmetrizer of {t} is not idempotent"))?;
                tableaux += 1;
            }
        }
    }
    for n in 1..=7 {
        let classes = Partition::all_of(n);
        let table = character_table(n);
        let k = classes.len();
        for i in 0..k {
            let dim = irrep_dimension(&classes[i]) as i64;
            ensure(table[i][k - 1] == dim, || format!("dim {} = {dim} but chi(1) = {}", classes[i], table[i][k - 1]))?;
            for j in 0..k {
                let row: Rational = (0..k)
                    .map(|c| Rational::new((table[i][c] * table[j][c]).into(), classes[c].z()))
                    .sum();
                ensure(row == rat((i == j) as i64), || {
                    format!("rows {} and {} of S_{n} are not orthonormal", classes[i], classes[j])
                })?;
            }
        }
    }
    Ok(format!("{tableaux} idempotents up to n = 5, orthogonality and dimensions up to n = 7"))
}

fn characteristic_map() -> Verdict {
    let mut pairs = 0;
    for m in 1..6 {
        for n in 1..=(6 - m) {
            for a in Partition::all_of(m) {
                for b in Partition::all_of(n) {
                    let (f, g) = (ClassFunction::irreducible(&a), ClassFunction::irreducible(&b));
                    let lhs = ch(&induce_product(&f, &g));
                    let rhs = ch(&f).mul_same_side(&ch(&g)).unwrap();
                    ensure(lhs == rhs, || format!("ch(chi{a} o chi{b}) = {lhs}, ch(chi{a}) ch(chi{b}) = {rhs}"))?;
                    pairs += 1;
                }
            }
        }
    }
    for n in 1..=6 {
        let lhs = ch(&ClassFunction::trivial(n));
        let rhs = pq_in_a(Generator::p(n));
        ensure(lhs == rhs, || format!("ch(triv_{n}) = {lhs}, p{n} = {rhs}"))?;
    }
    Ok(format!("{pairs} irreducible pairs, trivial characters up to n = 6"))
}

fn interlacing_bijection() -> Verdict {
    let mut total = 0;
    for v in 0..=10 {
        for pp in enumerate_plane_partitions(v) {
            ensure(pp.check_slice_chain(), || format!("{pp}: slices do not interlace"))?;
            let back = PlanePartition::from_slices(&pp.diagonal_slices());
            ensure(back.as_ref() == Ok(&pp), || format!("{pp}: unslicing gave {back:?}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} plane partitions of volume <= 10"))
}

fn pieri_consistency() -> Verdict {
    let mut cases = 0;
    for n in 1..=6 {
        for lambda in Partition::all_up_to(6 - n) {
            let pieri: BTreeSet<Partition> = pieri_expand(n, &lambda).into_iter().collect();
            let product = induce_product(&ClassFunction::irreducible(&lambda), &ClassFunction::trivial(n)).decompose();
            ensure(product.values().all(LaurentPoly::is_one), || format!("chi{lambda} o triv_{n} has multiplicities"))?;
            let induced: BTreeSet<Partition> = product.into_keys().collect();
            ensure(pieri == induced, || format!("lambda = {lambda}, n = {n}: pieri {pieri:?}, induced {induced:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases with |lambda| + n <= 6"))
}

fn pairs_oracle() -> Verdict {
    let oracle = z_pairs_oracle(8).map_err(|e| e.to_string())?;
    let product = z_deformed_product(8);
    match first_difference(&oracle, &product) {
        None => Ok(format!("N <= 8, q^8 coefficient {}", product.q_coeff(8))),
        Some((u, a, b)) => Err(format!("counterexample at u^{u}: pairs {a}, product {b}")),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 MacMahon three-way agreement", macmahon_three_way),
        ("2 deformed commutation equals product", deformed_commutation),
        ("3 t = 0 specialization", t_zero_specialization),
        ("4 defining relation and boson presentation", relation_and_presentations),
        ("5 rewrite termination and confluence", rewrite_health),
        ("6 symmetric group suite", symmetric_group_suite),
        ("7 characteristic map multiplicative", characteristic_map),
        ("8 interlacing bijection", interlacing_bijection),
        ("9 Pieri consistency", pieri_consistency),
        ("10 pairs oracle equals deformed product", pairs_oracle),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS [{name}] {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{name}] {detail} ({secs:.2}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
