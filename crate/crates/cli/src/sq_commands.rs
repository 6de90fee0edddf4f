//! SQ subcommands. Each emits rows `trial, value, bound, pass`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use halfgap_core::io::{to_json, AssignmentJson, QueryJson, SupportJson};
use halfgap_core::rng::{self, PolarNormal};
use halfgap_core::sq::packing::{max_abs_inner, random_unit};
use halfgap_core::sq::{
    adversary_run, angle_law_report, build_f0, correlation, f0_for, orthogonal_family, sample_packing,
    HalfspaceProbe, SqAlgorithm, TableQueries, ZeroQuery,
};
use halfgap_core::{Error, GaussianSupport, QuerySpec};
use serde::Serialize;

use crate::args::{AlgorithmKind, Format, Global};
use crate::{format_or, read_json};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub trial: String,
    pub value: String,
    pub bound: String,
    pub pass: bool,
}

impl Row {
    fn new(trial: impl ToString, value: impl ToString, bound: impl ToString, pass: bool) -> Self {
        Row { trial: trial.to_string(), value: value.to_string(), bound: bound.to_string(), pass }
    }
}

fn render(g: &Global, rows: &[Row]) -> Result<String> {
    match format_or(g, Format::Csv) {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Json => Ok(serde_json::to_string_pretty(rows)? + "\n"),
    }
}

pub fn pack(g: &Global, d: usize, m: usize, threshold: f64, retries: usize, trials: usize) -> Result<String> {
    let mut rows = Vec::with_capacity(trials);
    for t in 0..trials {
        let seed = rng::derive_seed(g.seed, t as u64);
        let row = match sample_packing::<f64>(d, m, threshold, retries, seed) {
            Ok(set) => Row::new(t, max_abs_inner(&set), threshold, true),
            Err(Error::PackingFailed { best, .. }) => Row::new(t, best, threshold, false),
            Err(e) => return Err(e.into()),
        };
        rows.push(row);
    }
    let ok = rows.iter().filter(|r| r.pass).count();
    eprintln!("{ok}/{trials} seeds succeeded within {retries} retries");
    render(g, &rows)
}

pub struct F0Args<'a> {
    pub d: usize,
    pub m: usize,
    pub tau: f64,
    pub queries: Option<&'a Path>,
    pub num_queries: usize,
    pub references: Option<&'a Path>,
    pub assignment: Option<&'a Path>,
}

fn load_queries(path: &Path) -> Result<Vec<QuerySpec>> {
    read_json::<Vec<QueryJson>>(path)?
        .iter()
        .map(|q| q.to_query().map_err(Into::into))
        .collect()
}

fn random_halfspaces(d: usize, count: usize, seed: u64) -> Vec<QuerySpec> {
    let mut r = rng::seeded(seed);
    let mut normal = PolarNormal::new();
    (0..count)
        .map(|_| {
            let u = random_unit::<f64>(d, &mut r, &mut normal);
            QuerySpec::HalfspaceSign { w: u.coords, theta: normal.sample(&mut r) }
        })
        .collect()
}

pub fn f0(g: &Global, a: F0Args<'_>) -> Result<String> {
    let support_spec = SupportJson { d: a.d, m: a.m, seed: g.seed.to_string() };
    let support: GaussianSupport = support_spec.build()?;
    let queries = match a.queries {
        Some(p) => load_queries(p)?,
        None => random_halfspaces(a.d, a.num_queries, rng::derive_seed(g.seed, 1)),
    };
    let references = match a.references {
        Some(p) => load_queries(p)?,
        None => random_halfspaces(a.d, 3, rng::derive_seed(g.seed, 2)),
    };
    let f0 = build_f0(&support, &queries, &references, a.tau)?;
    if let Some(p) = a.assignment {
        let text = to_json(&AssignmentJson::new(support_spec, &f0))?;
        std::fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display()))?;
    }
    let mut rows = Vec::new();
    for (i, r) in references.iter().enumerate() {
        let c = correlation(&support, &f0, r)?;
        rows.push(Row::new(format!("reference:{i}"), c, 0, c == 0.0));
    }
    for (i, q) in queries.iter().enumerate() {
        let c = correlation(&support, &f0, &q.rounded(&support, a.tau / 2.0)?)?;
        rows.push(Row::new(format!("rounded:{i}"), c, 0, c == 0.0));
    }
    for (i, q) in queries.iter().enumerate() {
        let c = correlation(&support, &f0, q)?.abs();
        rows.push(Row::new(format!("raw:{i}"), c, a.tau / 2.0, c <= a.tau / 2.0));
    }
    render(g, &rows)
}

#[allow(clippy::too_many_arguments)]
pub fn adversary(
    g: &Global,
    s: usize,
    d: usize,
    m: usize,
    kind: AlgorithmKind,
    queries: usize,
    eps: f64,
    trials: usize,
) -> Result<String> {
    if s < 2 {
        bail!("family size must be at least 2");
    }
    let base = m.max(s).next_power_of_two();
    let tau = (s as f64).powf(-1.0 / 3.0);
    let st2 = s as f64 * tau * tau;
    let per_query = if st2 > 1.0 { 2 * (s as f64 / (st2 - 1.0)).floor() as usize } else { s };
    let issued = if kind == AlgorithmKind::Zero { 0 } else { queries };
    let guaranteed = s as i64 - (issued * per_query) as i64;
    let mut rows = Vec::with_capacity(trials);
    for t in 0..trials {
        let seed = rng::derive_seed(g.seed, t as u64);
        let support = GaussianSupport::sample(d, base, seed)?;
        let family = orthogonal_family(s, &support)?;
        let mut alg: Box<dyn SqAlgorithm<f64>> = match kind {
            AlgorithmKind::Zero => Box::new(ZeroQuery { estimate: 0.5 }),
            AlgorithmKind::Probe => Box::new(HalfspaceProbe { count: queries, seed }),
            AlgorithmKind::Table => Box::new(TableQueries {
                queries: family
                    .iter()
                    .take(queries)
                    .map(|f| QuerySpec::Table { values: f.values.iter().map(|&v| v as f64).collect() })
                    .collect(),
            }),
        };
        let references = (0..d)
            .map(|i| QuerySpec::HalfspaceSign { w: (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect(), theta: 0.0 })
            .collect::<Vec<_>>();
        let f0 = f0_for(alg.as_mut(), &support, &references, tau)?;
        let tr = adversary_run(alg.as_mut(), &family, &f0, tau, &support, eps)?;
        let pass = tr.f0_survives && tr.survivors.len() as i64 >= guaranteed.max(0);
        rows.push(Row::new(t, tr.survivors.len(), guaranteed, pass));
    }
    render(g, &rows)
}

pub fn angles(g: &Global, d: usize, n: usize, trials: usize) -> Result<String> {
    let rep = angle_law_report(d, n, trials, g.seed)?;
    let mut rows = Vec::with_capacity(2 * trials + 4);
    for (t, x) in rep.scaled_min.iter().enumerate() {
        rows.push(Row::new(format!("min:{t}"), x, "", true));
    }
    for (t, x) in rep.scaled_max.iter().enumerate() {
        rows.push(Row::new(format!("max:{t}"), x, "", true));
    }
    rows.push(Row::new("fit_k:min", rep.min_fit.k, "", rep.min_fit.k > 0.0));
    rows.push(Row::new("fit_k:max", rep.max_fit.k, "", rep.max_fit.k > 0.0));
    rows.push(Row::new("ks:min", rep.min_fit.ks, 0.1, rep.min_fit.ks <= 0.1));
    rows.push(Row::new("ks:max", rep.max_fit.ks, 0.1, rep.max_fit.ks <= 0.1));
    eprintln!(
        "fitted K: {:.4} (min), {:.4} (max); max deviation {:.4}",
        rep.min_fit.k,
        rep.max_fit.k,
        rep.max_deviation()
    );
    render(g, &rows)
}
