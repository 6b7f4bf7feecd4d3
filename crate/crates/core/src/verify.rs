//! Cross-route verification harness.
//!
//! Each row compares two independently computed values. Anchor rows compare
//! a computed value with a published one, route rows compare two
//! computations, and property rows check a structural statement.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::antiforcing::{
    antiforcing_number_compat, antiforcing_number_oracle, antiforcing_number_structural,
    antiforcing_polynomial_enum, antiforcing_spectrum, classify,
};
use crate::forcing::{
    forcing_number_cycles, forcing_number_resonant, forcing_polynomial_enum, forcing_spectrum,
    ForcingOracle, SpectrumReport,
};
use crate::formulas::*;
use crate::lattice::{build_g, build_h, PolyominoGraph};
use crate::matching::enumerate_perfect_matchings;
use crate::poly::IntPolynomial;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    /// Computed value against a published one.
    Anchor,
    /// Two computations of the same quantity.
    Route,
    /// A structural statement about one computation.
    Property,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Anchor => "anchor",
            CheckKind::Route => "route",
            CheckKind::Property => "property",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRow {
    pub name: String,
    pub n: usize,
    pub instance: String,
    pub kind: CheckKind,
    pub route_a: String,
    pub route_b: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub rows: Vec<CheckRow>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.pass)
    }

    pub fn rows_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a CheckRow> {
        self.rows.iter().filter(move |r| r.name == name)
    }
}

/// What to check and how far.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Largest `n` for polynomial route comparisons.
    pub n_max: usize,
    /// Largest `n` whose every matching goes through the definitional
    /// oracles.
    pub oracle_n_max: usize,
    /// Largest `n` for the cheap integer identities (counts, sums, closed
    /// forms).
    pub formula_n_max: usize,
    /// Route used for `Φ(G_n)`; replaceable to test that faults surface.
    pub phi_recurrence: fn(usize) -> BigUint,
    pub limits: Limits,
}

/// Enumeration caps; beyond these the exhaustive routes get slow.
pub const COUNT_ENUM_MAX: usize = 8;
pub const FORCING_ENUM_MAX: usize = 6;
pub const ANTIFORCING_ENUM_MAX: usize = 5;
pub const CLASS_ENUM_MAX: usize = 4;

impl VerifyConfig {
    pub fn new(n_max: usize, oracle_n_max: usize) -> Self {
        VerifyConfig {
            n_max,
            oracle_n_max,
            formula_n_max: if n_max == 0 { 0 } else { n_max.max(50) },
            phi_recurrence: phi_g,
            limits: Limits::default(),
        }
    }
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self::new(8, 2)
    }
}

struct Rows {
    rows: Vec<CheckRow>,
}

impl Rows {
    fn push(&mut self, name: &str, n: usize, instance: String, kind: CheckKind, a: String, b: String, pass: bool) {
        self.rows.push(CheckRow {
            name: name.to_string(),
            n,
            instance,
            kind,
            route_a: a,
            route_b: b,
            pass,
        });
    }

    fn eq<T: PartialEq + ToString>(&mut self, name: &str, n: usize, instance: String, kind: CheckKind, a: T, b: T) {
        let pass = a == b;
        self.push(name, n, instance, kind, a.to_string(), b.to_string(), pass);
    }

    fn error(&mut self, name: &str, n: usize, instance: String, kind: CheckKind, err: crate::Error) {
        self.push(name, n, instance, kind, format!("error: {err}"), String::new(), false);
    }
}

fn g_name(n: usize) -> String {
    format!("G_{n}")
}

fn h_name(n: usize) -> String {
    format!("H_{n}")
}

const PHI_ANCHORS: [(usize, u64); 3] = [(0, 1), (1, 6), (3, 168)];
const IDF_ANCHORS: [(usize, u64); 5] = [(4, 5948), (5, 38908), (6, 244348), (7, 1492092), (8, 8926204)];
const AFSUM_ANCHORS: [(usize, u64); 5] = [(4, 7721), (5, 50541), (6, 317565), (7, 1939901), (8, 11608381)];

/// `[min, max]`, marked when the support has a gap.
fn span(s: &SpectrumReport) -> String {
    match (s.min, s.max) {
        (Some(lo), Some(hi)) if s.contiguous => format!("[{lo}, {hi}]"),
        (Some(lo), Some(hi)) => format!("[{lo}, {hi}] with gaps"),
        _ => "empty".to_string(),
    }
}

fn poly(terms: &[(usize, i64)]) -> IntPolynomial {
    IntPolynomial::from_terms(terms.iter().copied())
}

fn anchors(out: &mut Rows, config: &VerifyConfig) {
    use CheckKind::Anchor;
    let top = config.formula_n_max;
    for (n, v) in PHI_ANCHORS.into_iter().filter(|&(n, _)| n <= top) {
        out.eq("phi anchor", n, g_name(n), Anchor, phi_closed(n), BigUint::from(v));
    }
    let f = [
        (0, IntPolynomial::one()),
        (1, poly(&[(2, 4), (1, 2)])),
        (2, poly(&[(4, 16), (3, 12), (2, 4)])),
    ];
    let af = [
        (0, IntPolynomial::one()),
        (1, poly(&[(3, 2), (2, 3), (1, 1)])),
        (2, poly(&[(6, 4), (5, 9), (4, 15), (3, 3), (2, 1)])),
    ];
    for (n, expected) in f.into_iter().filter(|(n, _)| *n <= top) {
        out.eq("forcing poly anchor", n, g_name(n), Anchor, forcing_poly_g_rec(n), expected);
    }
    for (n, expected) in af.into_iter().filter(|(n, _)| *n <= top) {
        out.eq("antiforcing poly anchor", n, g_name(n), Anchor, af_poly_g_rec(n), expected);
    }
    for (n, v) in IDF_ANCHORS.into_iter().filter(|&(n, _)| n <= top) {
        out.eq("idf anchor", n, g_name(n), Anchor, idf_closed(n), BigInt::from(v));
    }
    for (n, v) in AFSUM_ANCHORS.into_iter().filter(|&(n, _)| n <= top) {
        out.eq("afsum anchor", n, g_name(n), Anchor, afsum_closed(n), BigInt::from(v));
    }
}

fn integer_identities(out: &mut Rows, config: &VerifyConfig) {
    use CheckKind::{Property, Route};
    let f_table = forcing_poly_g_table(config.formula_n_max);
    let af_table = af_poly_g_table(config.formula_n_max);
    for n in 0..=config.formula_n_max {
        let phi = (config.phi_recurrence)(n);
        out.eq("phi recurrence vs closed form", n, g_name(n), Route, phi.clone(), phi_closed(n));
        let phi = BigInt::from(phi_closed(n));
        out.eq("forcing poly at one vs phi", n, g_name(n), Route, f_table[n].eval_at_one(), phi.clone());
        out.eq("antiforcing poly at one vs phi", n, g_name(n), Route, af_table[n].eval_at_one(), phi);
        let idf = idf_closed(n);
        out.eq("idf closed vs recurrence", n, g_name(n), Route, idf.clone(), idf_rec(n));
        out.eq("idf closed vs polynomial", n, g_name(n), Route, idf, f_table[n].derivative_at_one());
        let a = afsum_closed(n);
        out.eq("afsum closed vs recurrence", n, g_name(n), Route, a.clone(), afsum_rec(n));
        out.eq("afsum closed vs polynomial", n, g_name(n), Route, a, af_table[n].derivative_at_one());
        if n >= 1 {
            let fs = forcing_spectrum(&f_table[n]);
            out.eq(
                "forcing spectrum is [n, 2n]",
                n,
                g_name(n),
                Property,
                span(&fs),
                format!("[{n}, {}]", 2 * n),
            );
            let afs = antiforcing_spectrum(&af_table[n]);
            out.eq(
                "antiforcing spectrum is [n, 3n]",
                n,
                g_name(n),
                Property,
                span(&afs),
                format!("[{n}, {}]", 3 * n),
            );
            out.eq(
                "phi H recurrence vs G difference",
                n,
                h_name(n),
                Route,
                phi_h(n),
                phi_closed(n) - phi_closed(n - 1),
            );
        }
    }
    if config.formula_n_max >= 50 {
        let bound = BigRational::new(1.into(), 1000.into());
        for (name, report) in [("idf ratio near limit", ratio_idf(50)), ("afsum ratio near limit", ratio_afsum(50))] {
            let pass = within(&report, &bound);
            out.push(
                name,
                50,
                g_name(50),
                Property,
                format!("{} (distance {})", report.value_decimal, report.distance),
                format!("{} within 0.001", report.limit_decimal),
                pass,
            );
        }
    }
}

fn polynomial_routes(out: &mut Rows, config: &VerifyConfig) {
    use CheckKind::Route;
    let limits = &config.limits;
    for n in 0..=config.n_max {
        out.eq("forcing poly recurrence vs explicit", n, g_name(n), Route, forcing_poly_g_rec(n), forcing_poly_g_explicit(n));
        out.eq("antiforcing poly recurrence vs explicit", n, g_name(n), Route, af_poly_g_rec(n), af_poly_g_explicit(n));
        if n >= 1 {
            let terms: IntPolynomial = af_decomposition_terms(n).into_iter().map(|(_, t)| t).sum();
            out.eq("antiforcing decomposition vs recurrence", n, g_name(n), Route, terms, af_poly_g_rec(n));
        }
        if n <= COUNT_ENUM_MAX {
            for (g, name, expected) in [(build_g(n), g_name(n), phi_g(n)), (build_h(n), h_name(n), phi_h(n))] {
                let count = BigUint::from(enumerate_perfect_matchings(&g).count());
                out.eq("phi enumeration vs recurrence", n, name, Route, count, expected);
            }
        }
        if n <= FORCING_ENUM_MAX {
            let pairs = [
                (build_g(n), g_name(n), forcing_poly_g_rec(n)),
                (build_h(n), h_name(n), forcing_poly_h_rec(n)),
            ];
            for (g, name, expected) in pairs {
                match forcing_polynomial_enum(&g, limits) {
                    Ok(p) => out.eq("forcing poly enumeration vs recurrence", n, name, Route, p, expected),
                    Err(e) => out.error("forcing poly enumeration vs recurrence", n, name, Route, e),
                }
            }
        }
        if n <= ANTIFORCING_ENUM_MAX {
            let pairs = [
                (build_g(n), g_name(n), af_poly_g_rec(n)),
                (build_h(n), h_name(n), af_poly_h_rec(n)),
            ];
            for (g, name, expected) in pairs {
                match antiforcing_polynomial_enum(&g, limits) {
                    Ok(p) => out.eq("antiforcing poly enumeration vs recurrence", n, name, Route, p, expected),
                    Err(e) => out.error("antiforcing poly enumeration vs recurrence", n, name, Route, e),
                }
            }
        }
        if (1..=CLASS_ENUM_MAX).contains(&n) {
            class_rows(out, n, limits);
        }
    }
}

/// Each decomposition class polynomial against the enumeration restricted
/// to that class.
fn class_rows(out: &mut Rows, n: usize, limits: &Limits) {
    let g = build_g(n);
    let mut by_class: Vec<(crate::antiforcing::AfClass, Vec<usize>)> = Vec::new();
    for m in enumerate_perfect_matchings(&g) {
        let (class, value) = match (classify(&g, &m), crate::antiforcing::antiforcing_number(&g, &m, limits)) {
            (Ok(c), Ok(v)) => (c, v),
            (Err(e), _) | (_, Err(e)) => {
                out.error("antiforcing class vs enumeration", n, g_name(n), CheckKind::Route, e);
                return;
            }
        };
        match by_class.iter_mut().find(|(c, _)| *c == class) {
            Some((_, values)) => values.push(value),
            None => by_class.push((class, alloc::vec![value])),
        }
    }
    for (class, term) in af_decomposition_terms(n) {
        let values = by_class
            .iter()
            .position(|(c, _)| *c == class)
            .map(|i| by_class.swap_remove(i).1)
            .unwrap_or_default();
        let enumerated = crate::forcing::polynomial_from_values(values);
        out.eq(
            "antiforcing class vs enumeration",
            n,
            format!("{} {:?}", g_name(n), class),
            CheckKind::Route,
            enumerated,
            term,
        );
    }
    for (class, values) in by_class {
        out.push(
            "antiforcing class vs enumeration",
            n,
            format!("{} {:?}", g_name(n), class),
            CheckKind::Route,
            crate::forcing::polynomial_from_values(values).to_string(),
            "no such class".to_string(),
            false,
        );
    }
}

/// Per-matching route agreement on every matching of one graph.
fn oracle_rows(out: &mut Rows, g: &PolyominoGraph, n: usize, name: String, limits: &Limits) {
    use CheckKind::Route;
    let oracle = ForcingOracle::new(g, limits);
    let total = oracle.matchings().len();
    let mut agree = [0usize; 4];
    let mut first_error = None;
    for m in oracle.matchings() {
        let f = oracle.forcing_number(m);
        let results = [
            (f.clone(), forcing_number_resonant(g, m)),
            (f, forcing_number_cycles(g, m, limits)),
            (antiforcing_number_oracle(g, m, limits), antiforcing_number_compat(g, m, limits)),
            (antiforcing_number_oracle(g, m, limits), antiforcing_number_structural(g, m)),
        ];
        for (slot, (a, b)) in results.into_iter().enumerate() {
            match (a, b) {
                (Ok(a), Ok(b)) if a == b => agree[slot] += 1,
                (Err(e), _) | (_, Err(e)) => {
                    first_error.get_or_insert(e);
                }
                _ => {}
            }
        }
    }
    let names = [
        "forcing oracle vs resonant",
        "forcing oracle vs cycles",
        "antiforcing oracle vs compat",
        "antiforcing oracle vs structural",
    ];
    for (check, count) in names.into_iter().zip(agree) {
        match &first_error {
            Some(e) if count < total => out.error(check, n, name.clone(), Route, e.clone()),
            _ => out.eq(check, n, name.clone(), Route, format!("{count}/{total}"), format!("{total}/{total}")),
        }
    }
}

pub fn verify_all(config: &VerifyConfig) -> VerificationReport {
    let mut out = Rows { rows: Vec::new() };
    anchors(&mut out, config);
    integer_identities(&mut out, config);
    polynomial_routes(&mut out, config);
    for n in 1..=config.oracle_n_max {
        oracle_rows(&mut out, &build_g(n), n, g_name(n), &config.limits);
        oracle_rows(&mut out, &build_h(n), n, h_name(n), &config.limits);
    }
    let mut rows = out.rows;
    rows.sort_by(|a, b| (&a.name, a.n, &a.instance).cmp(&(&b.name, b.n, &b.instance)));
    VerificationReport { rows }
}
