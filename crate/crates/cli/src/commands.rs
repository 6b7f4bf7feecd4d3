use matchforge_core::antiforcing::{
    antiforcing_number_compat, antiforcing_number_oracle, antiforcing_number_structural,
    antiforcing_spectrum, structural_from_catalog, SegmentCycleCatalog,
};
use matchforge_core::forcing::{
    clar_number, forcing_number, forcing_number_cycles, forcing_number_oracle,
    forcing_number_resonant, forcing_spectrum, polynomial_from_values,
};
use matchforge_core::formulas::*;
use matchforge_core::matching::{count_perfect_matchings, enumerate_perfect_matchings};
use matchforge_core::verify::{verify_all, CheckKind, CheckRow, VerificationReport, VerifyConfig};
use matchforge_core::{
    antiforcing::antiforcing_number, build_g, build_h, from_cells, validate, Error, GraphKind,
    IntPolynomial, Limits, Matching, PolyominoGraph,
};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::args::{Family, Method, OutFormat};
use crate::cache::{Cache, CacheRecord, TargetSpec};
use crate::render::{polynomial_json, polynomial_output, spectrum_json, spectrum_rows, Output};
use crate::CliError;

/// Family members with more perfect matchings than this are refused by the
/// enumeration routes.
pub const ENUM_MATCHING_MAX: u64 = 2_000_000;

/// Shared settings for one invocation.
pub struct Context {
    pub limits: Limits,
    pub pool: Option<rayon::ThreadPool>,
}

impl Context {
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }
}

/// Commands whose output depends only on (target, method) and can be
/// cached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JobKind {
    Family,
    Poly,
    Count,
    ForcingPoly,
    AntiforcingPoly,
    Spectrum,
}

const JOB_KINDS: [JobKind; 6] = [
    JobKind::Family,
    JobKind::Poly,
    JobKind::Count,
    JobKind::ForcingPoly,
    JobKind::AntiforcingPoly,
    JobKind::Spectrum,
];

impl JobKind {
    pub fn name(self) -> &'static str {
        match self {
            JobKind::Family => "family",
            JobKind::Poly => "poly",
            JobKind::Count => "count",
            JobKind::ForcingPoly => "forcing-poly",
            JobKind::AntiforcingPoly => "antiforcing-poly",
            JobKind::Spectrum => "spectrum",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        JOB_KINDS.into_iter().find(|k| k.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Job {
    pub kind: JobKind,
    pub target: TargetSpec,
    pub method: Option<Method>,
}

impl Job {
    /// Fill in the default method and reject combinations that have no
    /// route.
    pub fn new(kind: JobKind, target: TargetSpec, method: Option<Method>) -> Result<Self, CliError> {
        let family = match &target {
            TargetSpec::Family { family, .. } => Some(*family),
            TargetSpec::Cells { .. } => None,
        };
        let method = match kind {
            JobKind::Family | JobKind::Poly => {
                if method.is_some() {
                    return Err(usage(format!("{} takes no --method", kind.name())));
                }
                None
            }
            _ => Some(resolve_method(kind, family, method)?),
        };
        Ok(Job { kind, target, method })
    }

    pub fn run(&self, ctx: &Context) -> Result<Output, CliError> {
        let g = graph(&self.target)?;
        let method = self.method.unwrap_or(Method::Enum);
        match self.kind {
            JobKind::Family => Ok(family_output(&g)),
            JobKind::Poly => poly_output(&g, ctx),
            JobKind::Count => {
                let phi = count(&self.target, &g, method)?;
                Ok(Output::new(
                    json!({ "phi": phi.to_string() }),
                    vec!["phi"],
                    vec![vec![phi.to_string()]],
                ))
            }
            JobKind::ForcingPoly => Ok(polynomial_output(&forcing_poly(&self.target, &g, method, ctx)?)),
            JobKind::AntiforcingPoly => Ok(polynomial_output(&antiforcing_poly(&self.target, &g, method, ctx)?)),
            JobKind::Spectrum => {
                let f = forcing_spectrum(&forcing_poly(&self.target, &g, method, ctx)?);
                let af = antiforcing_spectrum(&antiforcing_poly(&self.target, &g, method, ctx)?);
                let mut rows = spectrum_rows("forcing", &f);
                rows.extend(spectrum_rows("antiforcing", &af));
                Ok(Output::new(
                    json!({ "forcing": spectrum_json(&f), "antiforcing": spectrum_json(&af) }),
                    vec!["kind", "exponent", "count"],
                    rows,
                ))
            }
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn resolve_method(kind: JobKind, family: Option<Family>, method: Option<Method>) -> Result<Method, CliError> {
    let Some(family) = family else {
        return match method {
            None | Some(Method::Enum) => Ok(Method::Enum),
            Some(m) => Err(usage(format!(
                "--method {} needs --family; cell files only support enum",
                method_name(m)
            ))),
        };
    };
    let method = method.unwrap_or(Method::Recurrence);
    match (method, family) {
        (Method::Explicit, Family::H) => Err(usage("no explicit form for the h family; use enum or recurrence")),
        (Method::Structural, _) if kind != JobKind::AntiforcingPoly => Err(usage(format!(
            "--method structural only applies to antiforcing-poly, not {}",
            kind.name()
        ))),
        _ => Ok(method),
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Enum => "enum",
        Method::Structural => "structural",
        Method::Recurrence => "recurrence",
        Method::Explicit => "explicit",
    }
}

pub fn graph(target: &TargetSpec) -> Result<PolyominoGraph, CliError> {
    Ok(match target {
        TargetSpec::Family { family: Family::G, n } => build_g(*n),
        TargetSpec::Family { family: Family::H, n } => build_h(*n),
        TargetSpec::Cells { cells } => from_cells(cells)?,
    })
}

/// Refuse family enumerations that would run for hours.
fn check_enum_size(target: &TargetSpec) -> Result<(), CliError> {
    let TargetSpec::Family { family, n } = target else {
        return Ok(());
    };
    let phi = match family {
        Family::G => phi_g(*n),
        Family::H => phi_h(*n),
    };
    if phi > BigUint::from(ENUM_MATCHING_MAX) {
        return Err(Error::SizeLimitExceeded {
            what: "perfect matching count",
            size: usize::try_from(&phi).unwrap_or(usize::MAX),
            limit: ENUM_MATCHING_MAX as usize,
        }
        .into());
    }
    Ok(())
}

fn count(target: &TargetSpec, g: &PolyominoGraph, method: Method) -> Result<BigUint, CliError> {
    Ok(match (method, target) {
        (Method::Enum, _) => {
            check_enum_size(target)?;
            count_perfect_matchings(g)
        }
        (Method::Explicit, TargetSpec::Family { n, .. }) => phi_closed(*n),
        (_, TargetSpec::Family { family: Family::G, n }) => phi_g(*n),
        (_, TargetSpec::Family { family: Family::H, n }) => phi_h(*n),
        (_, TargetSpec::Cells { .. }) => unreachable!("methods are resolved before running"),
    })
}

/// Run `f` over every perfect matching in parallel; results keep
/// enumeration order.
fn per_matching<T: Send>(
    g: &PolyominoGraph,
    ctx: &Context,
    f: impl Fn(&Matching) -> Result<T, Error> + Sync + Send,
) -> Result<Vec<T>, CliError> {
    let matchings: Vec<Matching> = enumerate_perfect_matchings(g).collect();
    Ok(ctx.install(|| matchings.par_iter().map(&f).collect::<Result<Vec<T>, Error>>())?)
}

fn forcing_poly(target: &TargetSpec, g: &PolyominoGraph, method: Method, ctx: &Context) -> Result<IntPolynomial, CliError> {
    match (method, target) {
        (Method::Recurrence, TargetSpec::Family { family: Family::G, n }) => Ok(forcing_poly_g_rec(*n)),
        (Method::Recurrence, TargetSpec::Family { family: Family::H, n }) => Ok(forcing_poly_h_rec(*n)),
        (Method::Explicit, TargetSpec::Family { n, .. }) => Ok(forcing_poly_g_explicit(*n)),
        _ => {
            check_enum_size(target)?;
            let limits = ctx.limits;
            let values = per_matching(g, ctx, |m| forcing_number(g, m, &limits))?;
            Ok(polynomial_from_values(values))
        }
    }
}

fn antiforcing_poly(target: &TargetSpec, g: &PolyominoGraph, method: Method, ctx: &Context) -> Result<IntPolynomial, CliError> {
    match (method, target) {
        (Method::Recurrence, TargetSpec::Family { family: Family::G, n }) => Ok(af_poly_g_rec(*n)),
        (Method::Recurrence, TargetSpec::Family { family: Family::H, n }) => Ok(af_poly_h_rec(*n)),
        (Method::Explicit, TargetSpec::Family { n, .. }) => Ok(af_poly_g_explicit(*n)),
        _ => {
            check_enum_size(target)?;
            let limits = ctx.limits;
            let values = if g.kind().is_family() {
                let catalog = SegmentCycleCatalog::all(g)?;
                per_matching(g, ctx, |m| Ok(structural_from_catalog(&catalog, g, m).len()))?
            } else {
                per_matching(g, ctx, |m| antiforcing_number_compat(g, m, &limits))?
            };
            Ok(polynomial_from_values(values))
        }
    }
}

fn kind_json(kind: GraphKind) -> (Value, Value) {
    match kind {
        GraphKind::G(n) => (json!("g"), json!(n)),
        GraphKind::H(n) => (json!("h"), json!(n)),
        GraphKind::Generic => (json!("generic"), Value::Null),
    }
}

fn family_output(g: &PolyominoGraph) -> Output {
    let (kind, n) = kind_json(g.kind());
    let label = |v: usize| g.vertices()[v].label.map(|l| l.to_string());
    let vertices: Vec<Value> = g
        .vertices()
        .iter()
        .map(|v| json!({ "id": v.id, "row": v.row, "col": v.col, "label": label(v.id) }))
        .collect();
    let faces: Vec<Value> = g
        .faces()
        .iter()
        .map(|f| {
            json!({
                "cell": [f.cell.0, f.cell.1],
                "vertices": f.vertices,
                "name": f.name.map(|n| n.to_string()),
            })
        })
        .collect();
    let rows = g
        .vertices()
        .iter()
        .map(|v| {
            vec![
                v.id.to_string(),
                v.row.to_string(),
                v.col.to_string(),
                label(v.id).unwrap_or_default(),
            ]
        })
        .collect();
    Output::new(
        json!({
            "kind": kind,
            "n": n,
            "vertices": vertices,
            "edges": g.edges(),
            "faces": faces,
        }),
        vec!["id", "row", "col", "label"],
        rows,
    )
}

fn value_or_error<T: Into<Value>>(r: Result<T, CliError>) -> Value {
    match r {
        Ok(v) => v.into(),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn poly_output(g: &PolyominoGraph, ctx: &Context) -> Result<Output, CliError> {
    let target = TargetSpec::Cells { cells: g.cells() };
    let violations: Vec<String> = validate(g).iter().map(ToString::to_string).collect();
    let phi = count_perfect_matchings(g);
    let clar = clar_number(g).ok();
    let forcing = forcing_poly(&target, g, Method::Enum, ctx);
    let antiforcing = antiforcing_poly(&target, g, Method::Enum, ctx);
    let show = |p: &Result<IntPolynomial, CliError>| match p {
        Ok(p) => p.to_string(),
        Err(e) => format!("error: {e}"),
    };
    let rows = vec![
        vec!["cells".to_string(), g.faces().len().to_string()],
        vec!["vertices".to_string(), g.vertex_count().to_string()],
        vec!["edges".to_string(), g.edge_count().to_string()],
        vec!["violations".to_string(), violations.join("; ")],
        vec!["phi".to_string(), phi.to_string()],
        vec!["clar".to_string(), clar.map(|c| c.to_string()).unwrap_or_default()],
        vec!["forcing".to_string(), show(&forcing)],
        vec!["antiforcing".to_string(), show(&antiforcing)],
    ];
    let json = json!({
        "cells": g.faces().len(),
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "violations": violations,
        "phi": phi.to_string(),
        "clar": clar,
        "forcing": value_or_error(forcing.map(|p| polynomial_json(&p))),
        "antiforcing": value_or_error(antiforcing.map(|p| polynomial_json(&p))),
    });
    Ok(Output::new(json, vec!["quantity", "value"], rows))
}

/// The three routes to one per-n sum, and whether they agree.
pub fn three_routes(n: usize, routes: [(&'static str, String); 3]) -> (Output, bool) {
    let agree = routes.iter().all(|(_, v)| *v == routes[0].1);
    let mut json = json!({ "n": n, "agree": agree });
    for (name, v) in &routes {
        json[*name] = json!(v);
    }
    let rows = routes.iter().map(|(name, v)| vec![name.to_string(), v.clone()]).collect();
    (Output::new(json, vec!["route", "value"], rows), agree)
}

pub fn idf(n: usize) -> (Output, bool) {
    three_routes(
        n,
        [
            ("closed", idf_closed(n).to_string()),
            ("recurrence", idf_rec(n).to_string()),
            ("polynomial", idf_from_poly(n).to_string()),
        ],
    )
}

pub fn afsum(n: usize) -> (Output, bool) {
    three_routes(
        n,
        [
            ("closed", afsum_closed(n).to_string()),
            ("recurrence", afsum_rec(n).to_string()),
            ("polynomial", afsum_from_poly(n).to_string()),
        ],
    )
}

pub fn limits(n: usize) -> Result<Output, CliError> {
    if n == 0 {
        return Err(usage("the ratios are undefined at n = 0; use --n 1 or more"));
    }
    let reports = [("idf", ratio_idf(n)), ("afsum", ratio_afsum(n))];
    let mut json = json!({ "n": n });
    let mut rows = Vec::new();
    for (name, r) in &reports {
        json[*name] = json!({
            "value": r.value_decimal,
            "limit": r.limit_decimal,
            "distance": r.distance,
        });
        rows.push(vec![
            name.to_string(),
            r.value_decimal.clone(),
            r.limit_decimal.clone(),
            r.distance.clone(),
        ]);
    }
    Ok(Output::new(json, vec!["quantity", "value", "limit", "distance"], rows))
}

fn short_digest(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Recompute every cached entry and compare bytes.
pub fn cache_rows(cache: &Cache, ctx: &Context) -> Vec<CheckRow> {
    cache
        .records()
        .map(|record| {
            let n = match record.target {
                TargetSpec::Family { n, .. } => n,
                TargetSpec::Cells { .. } => 0,
            };
            let recomputed = recompute(record, ctx);
            let route_b = match &recomputed {
                Ok(text) => short_digest(text),
                Err(e) => format!("error: {e}"),
            };
            CheckRow {
                name: "cache entry vs recomputation".to_string(),
                n,
                instance: record.key(),
                kind: CheckKind::Route,
                route_a: short_digest(&record.output),
                pass: recomputed.is_ok_and(|text| text == record.output),
                route_b,
            }
        })
        .collect()
}

fn recompute(record: &CacheRecord, ctx: &Context) -> Result<String, CliError> {
    let kind = JobKind::parse(&record.command)
        .ok_or_else(|| CliError::Cache(format!("unknown command {:?}", record.command)))?;
    let format = match record.format.as_str() {
        "json" => OutFormat::Json,
        "csv" => OutFormat::Csv,
        other => return Err(CliError::Cache(format!("unknown format {other:?}"))),
    };
    Job::new(kind, record.target.clone(), record.method)?.run(ctx)?.render(format)
}

pub fn verify(n: usize, oracle_max: usize, cache: Option<&Cache>, ctx: &Context) -> (Output, bool) {
    let mut config = VerifyConfig::new(n, oracle_max);
    config.limits = ctx.limits;
    let mut report: VerificationReport = ctx.install(|| verify_all(&config));
    if let Some(cache) = cache {
        report.rows.extend(cache_rows(cache, ctx));
        report
            .rows
            .sort_by(|a, b| (&a.name, a.n, &a.instance).cmp(&(&b.name, b.n, &b.instance)));
    }
    let pass = report.passed();
    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                r.n.to_string(),
                r.instance.clone(),
                r.kind.to_string(),
                r.route_a.clone(),
                r.route_b.clone(),
                r.pass.to_string(),
            ]
        })
        .collect();
    let json_rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "n": r.n,
                "instance": r.instance,
                "kind": r.kind.to_string(),
                "route_a": r.route_a,
                "route_b": r.route_b,
                "pass": r.pass,
            })
        })
        .collect();
    let json = json!({
        "pass": pass,
        "n_max": config.n_max,
        "oracle_n_max": config.oracle_n_max,
        "formula_n_max": config.formula_n_max,
        "failures": report.failures().count(),
        "rows": json_rows,
    });
    let header = vec!["name", "n", "instance", "kind", "route_a", "route_b", "pass"];
    (Output::new(json, header, rows), pass)
}

/// Every route to `f` and `af` for one matching. Routes that refuse the
/// input report their error instead of a value.
pub fn af(target: &TargetSpec, pairs: &[(usize, usize)], ctx: &Context) -> Result<(Output, bool), CliError> {
    let g = graph(target)?;
    let m = Matching::from_endpoints(&g, pairs)?;
    if !m.is_perfect(&g) {
        return Err(Error::NotPerfectMatching.into());
    }
    let limits = &ctx.limits;
    let family = g.kind().is_family();
    let mut forcing = vec![
        ("oracle", forcing_number_oracle(&g, &m, limits)),
        ("cycles", forcing_number_cycles(&g, &m, limits)),
    ];
    let mut antiforcing = vec![
        ("oracle", antiforcing_number_oracle(&g, &m, limits)),
        ("compat", antiforcing_number_compat(&g, &m, limits)),
    ];
    if family {
        forcing.push(("resonant", forcing_number_resonant(&g, &m)));
        antiforcing.push(("structural", antiforcing_number_structural(&g, &m)));
    }
    let chosen_f = forcing_number(&g, &m, limits);
    let chosen_af = antiforcing_number(&g, &m, limits);

    let agree = |routes: &[(&str, Result<usize, Error>)]| {
        let values: Vec<usize> = routes.iter().filter_map(|(_, r)| r.as_ref().ok().copied()).collect();
        !values.is_empty() && values.iter().all(|&v| v == values[0])
    };
    let pass = agree(&forcing) && agree(&antiforcing);

    let mut json = json!({
        "matching": m.endpoint_pairs(&g),
        "f": value_or_error(chosen_f.map_err(CliError::from)),
        "af": value_or_error(chosen_af.map_err(CliError::from)),
        "agree": pass,
        "forcing": {},
        "antiforcing": {},
    });
    let mut rows = Vec::new();
    for (quantity, routes) in [("forcing", &forcing), ("antiforcing", &antiforcing)] {
        for (route, r) in routes.iter() {
            let r = r.clone().map_err(CliError::from);
            rows.push(vec![
                quantity.to_string(),
                route.to_string(),
                match &r {
                    Ok(v) => v.to_string(),
                    Err(e) => format!("error: {e}"),
                },
            ]);
            json[quantity][*route] = value_or_error(r);
        }
    }
    Ok((Output::new(json, vec!["quantity", "route", "value"], rows), pass))
}
