//! End-to-end acceptance checks. Runs without the libtest harness so every
//! criterion prints exactly one PASS/FAIL line.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use matchforge_core::antiforcing::{
    antiforcing_number, antiforcing_number_compat, antiforcing_number_oracle,
    antiforcing_number_structural, antiforcing_polynomial_enum, antiforcing_spectrum, classify,
};
use matchforge_core::forcing::{
    clar_number, forcing_number, forcing_number_cycles, forcing_number_resonant,
    forcing_polynomial_enum, forcing_spectrum, polynomial_from_values, ForcingOracle,
};
use matchforge_core::formulas::*;
use matchforge_core::matching::{
    alternating_cycles, alternating_squares, count_perfect_matchings, enumerate_perfect_matchings,
    interior_faces,
};
use matchforge_core::{build_g, build_h, IntPolynomial, Limits, PolyominoGraph, SurdNumber};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

type Outcome = Result<String, String>;

fn poly(terms: &[(usize, i64)]) -> IntPolynomial {
    IntPolynomial::from_terms(terms.iter().copied())
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn matching_counts() -> Outcome {
    let expected: [u64; 9] = [1, 6, 32, 168, 880, 4608, 24128, 126336, 661504];
    for (n, &v) in expected.iter().enumerate() {
        let enumerated = enumerate_perfect_matchings(&build_g(n)).count() as u64;
        check(enumerated == v, || format!("G_{n}: enumerated {enumerated}, expected {v}"))?;
        check(phi_g(n) == BigUint::from(v), || format!("G_{n}: recurrence {}", phi_g(n)))?;
    }
    for n in 0..=50 {
        check(phi_closed(n) == phi_g(n), || format!("closed form differs at n = {n}"))?;
    }
    Ok("G_0..G_8 enumerated, closed form to n = 50".into())
}

fn forcing_polynomials() -> Outcome {
    let limits = Limits::default();
    let published = [(1, poly(&[(2, 4), (1, 2)])), (2, poly(&[(4, 16), (3, 12), (2, 4)]))];
    for (n, p) in published {
        let got = forcing_polynomial_enum(&build_g(n), &limits).map_err(|e| e.to_string())?;
        check(got == p, || format!("F(G_{n}) = {got}, expected {p}"))?;
    }
    for n in 0..=6 {
        let enumerated = forcing_polynomial_enum(&build_g(n), &limits).map_err(|e| e.to_string())?;
        let rec = forcing_poly_g_rec(n);
        let explicit = forcing_poly_g_explicit(n);
        check(enumerated == rec && rec == explicit, || {
            format!("n = {n}: enum {enumerated}, recurrence {rec}, explicit {explicit}")
        })?;
    }
    Ok("enumeration = recurrence = explicit for n <= 6".into())
}

fn antiforcing_polynomials() -> Outcome {
    let limits = Limits::default();
    let published = [
        (1, poly(&[(3, 2), (2, 3), (1, 1)])),
        (2, poly(&[(6, 4), (5, 9), (4, 15), (3, 3), (2, 1)])),
    ];
    for (n, p) in published {
        let got = antiforcing_polynomial_enum(&build_g(n), &limits).map_err(|e| e.to_string())?;
        check(got == p, || format!("Af(G_{n}) = {got}, expected {p}"))?;
    }
    for n in 0..=5 {
        let enumerated = antiforcing_polynomial_enum(&build_g(n), &limits).map_err(|e| e.to_string())?;
        let rec = af_poly_g_rec(n);
        check(enumerated == rec, || format!("n = {n}: enum {enumerated}, recurrence {rec}"))?;
    }
    for n in 0..=6 {
        let (rec, explicit) = (af_poly_g_rec(n), af_poly_g_explicit(n));
        check(rec == explicit, || format!("n = {n}: recurrence {rec}, explicit {explicit}"))?;
    }
    Ok("enumeration = recurrence for n <= 5, recurrence = explicit for n <= 6".into())
}

fn oracle_agreement() -> Outcome {
    let limits = Limits::default();
    let mut total = 0;
    for (name, g) in [("G_1", build_g(1)), ("G_2", build_g(2)), ("H_1", build_h(1)), ("H_2", build_h(2))] {
        let oracle = ForcingOracle::new(&g, &limits);
        for m in oracle.matchings() {
            let err = |e: matchforge_core::Error| format!("{name}: {e}");
            let f = [
                oracle.forcing_number(m).map_err(err)?,
                forcing_number_resonant(&g, m).map_err(err)?,
                forcing_number_cycles(&g, m, &limits).map_err(err)?,
            ];
            let af = [
                antiforcing_number_oracle(&g, m, &limits).map_err(err)?,
                antiforcing_number_compat(&g, m, &limits).map_err(err)?,
                antiforcing_number_structural(&g, m).map_err(err)?,
            ];
            check(f.iter().all(|&v| v == f[0]), || format!("{name}: forcing routes {f:?}"))?;
            check(af.iter().all(|&v| v == af[0]), || format!("{name}: anti-forcing routes {af:?}"))?;
            total += 1;
        }
    }
    check(total == 69, || format!("{total} matchings instead of 69"))?;
    Ok("69 matchings, three routes each for f and af".into())
}

fn idf_anchors() -> Outcome {
    let published = [(4, 5948u64), (5, 38908), (6, 244348), (7, 1492092), (8, 8926204)];
    for (n, v) in published {
        check(idf_closed(n) == BigInt::from(v), || format!("IDF_{n} = {}", idf_closed(n)))?;
    }
    let table = forcing_poly_g_table(50);
    for (n, p) in table.iter().enumerate() {
        let (closed, rec, from_poly) = (idf_closed(n), idf_rec(n), p.derivative_at_one());
        check(closed == rec && rec == from_poly, || format!("n = {n}: {closed} / {rec} / {from_poly}"))?;
        check(from_poly == idf_from_poly(n), || format!("n = {n}: derivative route"))?;
    }
    Ok("closed = recurrence = derivative for n <= 50".into())
}

fn afsum_anchors() -> Outcome {
    let published = [(4, 7721u64), (5, 50541), (6, 317565), (7, 1939901), (8, 11608381)];
    for (n, v) in published {
        check(afsum_closed(n) == BigInt::from(v), || format!("A_{n} = {}", afsum_closed(n)))?;
    }
    let table = af_poly_g_table(50);
    for (n, p) in table.iter().enumerate() {
        let (closed, rec, from_poly) = (afsum_closed(n), afsum_rec(n), p.derivative_at_one());
        check(closed == rec && rec == from_poly, || format!("n = {n}: {closed} / {rec} / {from_poly}"))?;
    }
    check(afsum_from_poly(8) == BigInt::from(11608381u64), || "derivative route at n = 8".into())?;
    Ok("closed = recurrence = derivative for n <= 50".into())
}

fn spectra() -> Outcome {
    let limits = Limits::default();
    for n in 1..=6 {
        let f = forcing_spectrum(&forcing_poly_g_rec(n));
        check(f.min == Some(n) && f.max == Some(2 * n) && f.contiguous, || format!("forcing spectrum at n = {n}: {f:?}"))?;
        let af = antiforcing_spectrum(&af_poly_g_rec(n));
        check(af.min == Some(n) && af.max == Some(3 * n) && af.contiguous, || format!("anti-forcing spectrum at n = {n}: {af:?}"))?;
    }
    // the enumerated polynomials have the same support
    for n in 1..=4 {
        let f = forcing_spectrum(&forcing_polynomial_enum(&build_g(n), &limits).map_err(|e| e.to_string())?);
        let af = antiforcing_spectrum(&antiforcing_polynomial_enum(&build_g(n), &limits).map_err(|e| e.to_string())?);
        check(f.support().eq(n..=2 * n) && af.support().eq(n..=3 * n), || format!("enumerated support at n = {n}"))?;
    }
    Ok("[n, 2n] and [n, 3n] without gaps for n <= 6".into())
}

fn clar() -> Outcome {
    let limits = Limits::default();
    for n in 1..=4 {
        let g = build_g(n);
        let cl = clar_number(&g).map_err(|e| e.to_string())?;
        let max_f = enumerate_perfect_matchings(&g)
            .map(|m| forcing_number(&g, &m, &limits))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?
            .into_iter()
            .max();
        check(cl == 2 * n && max_f == Some(2 * n), || format!("n = {n}: clar {cl}, max forcing {max_f:?}"))?;
    }
    Ok("clar = max forcing = 2n for n <= 4".into())
}

fn asymptotics() -> Outcome {
    let bound = BigRational::new(1.into(), 1000.into());
    let shrinks = |before: &SurdNumber, after: &SurdNumber| {
        let gap = before - after;
        !gap.is_negative() && gap != SurdNumber::zero()
    };
    let reports: Vec<_> = [10, 20, 30, 40, 50].into_iter().map(|n| (n, ratio_idf(n), ratio_afsum(n))).collect();
    for pair in reports.windows(2) {
        let ((_, i0, a0), (n, i1, a1)) = (&pair[0], &pair[1]);
        check(shrinks(&i0.distance_exact, &i1.distance_exact), || format!("IDF ratio moved away at n = {n}"))?;
        check(shrinks(&a0.distance_exact, &a1.distance_exact), || format!("A ratio moved away at n = {n}"))?;
    }
    let (_, i, a) = &reports[4];
    check(within(i, &bound) && within(a, &bound), || {
        format!("IDF ratio {} (distance {}), A ratio {} (distance {})", i.value_decimal, i.distance, a.value_decimal, a.distance)
    })?;
    check(i.limit.to_decimal_rounded(7) == "1.6832816", || i.limit_decimal.clone())?;
    check(a.limit.to_decimal_rounded(7) == "2.1933629", || a.limit_decimal.clone())?;
    Ok(format!(
        "n = 50: IDF ratio {} (limit {}), A ratio {} (limit {})",
        i.value_decimal, i.limit_decimal, a.value_decimal, a.limit_decimal
    ))
}

fn lemma_interior_face(g: &PolyominoGraph, limits: &Limits) -> Result<usize, String> {
    let mut cycles = 0;
    for m in enumerate_perfect_matchings(g) {
        let squares = alternating_squares(g, &m);
        for c in alternating_cycles(g, &m, limits.cycle_edges).map_err(|e| e.to_string())? {
            check(interior_faces(g, &c).iter().any(|f| squares.contains(f)), || {
                format!("cycle {:?} has no alternating interior face", c.vertices())
            })?;
            cycles += 1;
        }
        let f = forcing_number(g, &m, limits).map_err(|e| e.to_string())?;
        let af = antiforcing_number(g, &m, limits).map_err(|e| e.to_string())?;
        check(f <= af, || format!("f = {f} > af = {af}"))?;
    }
    Ok(cycles)
}

fn properties() -> Outcome {
    let limits = Limits::default();
    let mut cycles = 0;
    for n in 1..=3 {
        cycles += lemma_interior_face(&build_g(n), &limits).map_err(|e| format!("G_{n}: {e}"))?;
    }
    for n in 1..=4 {
        let g = build_g(n);
        let mut groups: Vec<(matchforge_core::antiforcing::AfClass, Vec<usize>)> = Vec::new();
        for m in enumerate_perfect_matchings(&g) {
            let class = classify(&g, &m).map_err(|e| e.to_string())?;
            let af = antiforcing_number(&g, &m, &limits).map_err(|e| e.to_string())?;
            match groups.iter_mut().find(|(c, _)| *c == class) {
                Some((_, v)) => v.push(af),
                None => groups.push((class, vec![af])),
            }
        }
        let terms = af_decomposition_terms(n);
        check(groups.iter().all(|(c, _)| terms.iter().any(|(t, _)| t == c)), || format!("n = {n}: unexpected class"))?;
        for (class, term) in terms {
            let values = groups.iter().find(|(c, _)| *c == class).map(|(_, v)| v.clone()).unwrap_or_default();
            let enumerated = polynomial_from_values(values);
            check(enumerated == term, || format!("n = {n}, {class:?}: enumerated {enumerated}, formula {term}"))?;
        }
    }
    check(count_perfect_matchings(&build_h(3)) == phi_h(3), || "H_3 count".into())?;
    Ok(format!("{cycles} alternating cycles on G_1..G_3, f <= af, classes for n <= 4"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("matching counts", matching_counts, 60),
        ("forcing polynomials", forcing_polynomials, 120),
        ("anti-forcing polynomials", antiforcing_polynomials, 300),
        ("oracle agreement", oracle_agreement, 120),
        ("IDF anchors", idf_anchors, 120),
        ("anti-forcing sum anchors", afsum_anchors, 120),
        ("spectra", spectra, 120),
        ("Clar number and maximum forcing", clar, 120),
        ("asymptotic ratios", asymptotics, 1),
        ("property suites", properties, 300),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; took {elapsed:.1?}, limit {limit} s"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
