use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use halfgap_core::estimator::{approx_distance, DatasetAccess};
use halfgap_core::exact::{
    exact_distance, exact_distance_1d, exact_distance_2d, exact_distance_cand, exact_distance_sep,
};
use halfgap_core::io::{to_json, DatasetJson, KSumJson, ReducedJson, ReportJson};
use halfgap_core::ksum::{gen_instance, solve_brute, solve_mitm};
use halfgap_core::reduction::{self, build_reduction, decide_via_distance, exact_solver};
use halfgap_core::{Int, KSumInstance, LabeledDataset, Rat, ReducedInstance};
use serde_json::json;

use crate::args::{BenchTask, DistMethod, Format, Global, InstanceSource, KSumMethod, Solver};
use crate::bench;
use crate::{format_or, read_json};

/// `a/b`, an integer, or a finite decimal such as `0.125`.
pub(crate) fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 30 {
            bail!("{s:?} is not a decimal fraction");
        }
        let negative = int.starts_with('-');
        let whole: Int = if int.is_empty() || int == "-" { 0 } else { int.parse()? };
        let den: Int = 10i128.pow(frac.len() as u32);
        let f: Int = frac.parse()?;
        let num = whole.abs() * den + f;
        return Ok(Rat::new(if negative { -num } else { num }, den));
    }
    let r: Rat = s.parse().map_err(|_| anyhow!("{s:?} is not a rational number"))?;
    Ok(r)
}

fn rat_pair(r: &Rat) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

fn load_ksum(path: &Path) -> Result<KSumInstance> {
    Ok(read_json::<KSumJson>(path)?.to_instance()?)
}

fn load_dataset(path: &Path) -> Result<LabeledDataset> {
    Ok(read_json::<DatasetJson>(path)?.to_dataset()?)
}

fn load_reduced(source: &InstanceSource) -> Result<ReducedInstance> {
    match (&source.ksum, &source.reduced) {
        (Some(k), _) => Ok(build_reduction(&load_ksum(k)?)?),
        (_, Some(r)) => Ok(read_json::<ReducedJson>(r)?.to_instance()?),
        _ => bail!("one of --ksum or --reduced is required"),
    }
}

fn csv_text(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for row in rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

pub fn gen_ksum(g: &Global, n: usize, k: usize, planted: bool) -> Result<String> {
    let inst = gen_instance::<Int>(n, k, planted, g.seed)?;
    match format_or(g, Format::Json) {
        Format::Json => Ok(with_newline(to_json(&KSumJson::from_instance(&inst))?)),
        Format::Csv => {
            let mut rows = vec![vec!["list".into(), "index".into(), "value".into()]];
            for (l, list) in inst.lists.iter().enumerate() {
                for (i, v) in list.iter().enumerate() {
                    rows.push(vec![l.to_string(), i.to_string(), v.to_string()]);
                }
            }
            csv_text(rows)
        }
    }
}

pub fn solve_ksum(g: &Global, path: &Path, method: KSumMethod) -> Result<String> {
    let inst = load_ksum(path)?;
    let witness = match method {
        KSumMethod::Brute => solve_brute(&inst)?,
        KSumMethod::Mitm => solve_mitm(&inst)?,
    };
    let answer = if witness.is_some() { "YES" } else { "NO" };
    let choices: Vec<(usize, Int)> = witness.map(|w| w.choices).unwrap_or_default();
    match format_or(g, Format::Json) {
        Format::Json => {
            let w: Vec<_> = choices
                .iter()
                .enumerate()
                .map(|(l, (i, v))| json!({"list": l, "index": i, "value": v.to_string()}))
                .collect();
            Ok(with_newline(serde_json::to_string_pretty(&json!({"answer": answer, "witness": w}))?))
        }
        Format::Csv => {
            let mut rows = vec![vec!["answer".into(), "list".into(), "index".into(), "value".into()]];
            if choices.is_empty() {
                rows.push(vec![answer.into(), String::new(), String::new(), String::new()]);
            }
            for (l, (i, v)) in choices.iter().enumerate() {
                rows.push(vec![answer.into(), l.to_string(), i.to_string(), v.to_string()]);
            }
            csv_text(rows)
        }
    }
}

fn dataset_rows(ds: &LabeledDataset) -> Vec<Vec<String>> {
    let mut header: Vec<String> = (1..=ds.dim()).map(|i| format!("x{i}")).collect();
    header.extend(["label".into(), "weight".into()]);
    let mut rows = vec![header];
    for ((p, l), w) in ds.points().iter().zip(ds.labels()).zip(ds.weights()) {
        let mut row: Vec<String> = p.coords().iter().map(ToString::to_string).collect();
        row.push((*l as u8).to_string());
        row.push(w.to_string());
        rows.push(row);
    }
    rows
}

pub fn reduce(g: &Global, path: &Path) -> Result<String> {
    let red = build_reduction(&load_ksum(path)?)?;
    match format_or(g, Format::Json) {
        Format::Json => Ok(with_newline(to_json(&ReducedJson::from_instance(&red))?)),
        Format::Csv => csv_text(dataset_rows(&red.dataset)),
    }
}

pub fn verify_gap(g: &Global, source: &InstanceSource, cap: usize) -> Result<String> {
    let red = load_reduced(source)?;
    let gap = reduction::verify_gap(&red, cap)?;
    match g.format {
        None => Ok(format!(
            "distance {}\nyes_bound {}\nno_bound {}\n{} side\n",
            gap.exact, red.yes_bound, red.no_bound, gap.side
        )),
        Some(Format::Json) => Ok(with_newline(serde_json::to_string_pretty(&json!({
            "distance": rat_pair(&gap.exact),
            "yes_bound": rat_pair(&red.yes_bound),
            "no_bound": rat_pair(&red.no_bound),
            "side": gap.side,
            "report": ReportJson::from_report(&gap.report),
        }))?)),
        Some(Format::Csv) => csv_text(vec![
            vec!["distance".into(), "yes_bound".into(), "no_bound".into(), "side".into()],
            vec![gap.exact.to_string(), red.yes_bound.to_string(), red.no_bound.to_string(), gap.side.to_string()],
        ]),
    }
}

pub fn decide(g: &Global, source: &InstanceSource, solver: Solver, eps: Option<&str>, delta: &str) -> Result<String> {
    let red = load_reduced(source)?;
    let side = match solver {
        Solver::Exact => decide_via_distance(&red, exact_solver)?,
        Solver::Estimate => {
            let eps = match eps {
                Some(e) => parse_rat(e)?,
                None => red.eps,
            };
            let delta = parse_rat(delta)?;
            decide_via_distance(&red, |r| Ok(approx_distance(r, &eps, &delta, g.seed)?.report.distance))?
        }
    };
    match g.format {
        None => Ok(format!("{side}\n")),
        Some(Format::Json) => Ok(with_newline(serde_json::to_string_pretty(&json!({
            "answer": side,
            "threshold": rat_pair(&red.threshold),
        }))?)),
        Some(Format::Csv) => csv_text(vec![vec!["answer".into()], vec![side.to_string()]]),
    }
}

pub fn dist_exact(g: &Global, path: &Path, method: DistMethod, cap: usize) -> Result<String> {
    let ds = load_dataset(path)?;
    let report = match method {
        DistMethod::Auto => exact_distance(&ds)?,
        DistMethod::Sep => exact_distance_sep(&ds, cap)?,
        DistMethod::Cand => exact_distance_cand(&ds)?,
        DistMethod::Sweep1d => exact_distance_1d(&ds)?,
        DistMethod::Sweep2d => exact_distance_2d(&ds)?,
    };
    match format_or(g, Format::Json) {
        Format::Json => Ok(with_newline(to_json(&ReportJson::from_report(&report))?)),
        Format::Csv => {
            let mut header = vec!["distance".to_string(), "method".into(), "agreements".into()];
            header.extend((1..=ds.dim()).map(|i| format!("w{i}")));
            header.push("theta".into());
            let mut row = vec![report.distance.to_string(), report.method.to_string(), report.agreements.to_string()];
            row.extend(report.witness.w.iter().map(ToString::to_string));
            row.push(report.witness.theta.to_string());
            csv_text(vec![header, row])
        }
    }
}

pub fn dist_est(g: &Global, path: &Path, eps: &str, delta: &str) -> Result<String> {
    let ds = load_dataset(path)?;
    let (eps, delta) = (parse_rat(eps)?, parse_rat(delta)?);
    let acc = DatasetAccess::new(&ds)?;
    let est = approx_distance(&acc, &eps, &delta, g.seed)?;
    match format_or(g, Format::Json) {
        Format::Json => Ok(with_newline(serde_json::to_string_pretty(&json!({
            "estimate": rat_pair(&est.report.distance),
            "samples": est.samples.to_string(),
            "distinct": est.distinct.to_string(),
            "eps": rat_pair(&eps),
            "delta": rat_pair(&delta),
            "seed": g.seed.to_string(),
            "witness": ReportJson::from_report(&est.report).witness,
        }))?)),
        Format::Csv => csv_text(vec![
            vec!["estimate".into(), "samples".into(), "distinct".into(), "eps".into(), "delta".into(), "seed".into()],
            vec![
                est.report.distance.to_string(),
                est.samples.to_string(),
                est.distinct.to_string(),
                eps.to_string(),
                delta.to_string(),
                g.seed.to_string(),
            ],
        ]),
    }
}

pub fn bench(
    g: &Global,
    task: BenchTask,
    sizes: &[usize],
    k: usize,
    d: usize,
    reps: usize,
    svg: Option<&Path>,
) -> Result<String> {
    let outcome = bench::run_bench(task, sizes, k, d, reps, g.seed)?;
    if let Some(p) = svg {
        std::fs::write(p, bench::to_svg(&outcome)).with_context(|| format!("writing {}", p.display()))?;
    }
    match format_or(g, Format::Csv) {
        Format::Json => Ok(with_newline(serde_json::to_string_pretty(&outcome)?)),
        Format::Csv => {
            for fit in &outcome.fits {
                eprintln!("{}", fit.describe());
            }
            bench::to_csv(&outcome.records)
        }
    }
}
