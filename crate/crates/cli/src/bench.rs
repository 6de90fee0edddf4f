//! Wall-clock scaling runs and log-log slope fits.

use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{bail, Result};
use halfgap_core::exact::{exact_distance_2d, exact_distance_cand};
use halfgap_core::geometry::{LabeledDataset, Point};
use halfgap_core::ksum::{gen_instance, solve_mitm};
use halfgap_core::reduction::{build_reduction, verify_gap, DEFAULT_GAP_CAP};
use halfgap_core::rng;
use halfgap_core::Int;
use rand::Rng as _;
use serde::Serialize;

use crate::args::BenchTask;

/// Largest grid value accepted per task.
pub const MITM_MAX_N: usize = 1 << 14;
pub const EXACT_MAX_N: usize = 400;
pub const E2E_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub command: String,
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub eps: Option<String>,
    pub seed: u64,
    pub wall_time_ns: u128,
    pub queries_or_samples: u64,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeFit {
    pub series: String,
    /// `None` when fewer than two distinct sizes have positive times.
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    /// `log t - fitted`, per fitted point.
    pub residuals: Vec<f64>,
}

impl SlopeFit {
    pub fn describe(&self) -> String {
        match self.slope {
            Some(s) => {
                let worst = self.residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
                format!("{}: slope {s:.3}, max |residual| {worst:.3}", self.series)
            }
            None => format!("{}: slope undefined", self.series),
        }
    }
}

/// Least squares of `ln t` on `ln n`.
pub fn fit_loglog(series: &str, points: &[(f64, f64)]) -> SlopeFit {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(n, t)| *n > 0.0 && *t > 0.0)
        .map(|(n, t)| (n.ln(), t.ln()))
        .collect();
    let undefined = SlopeFit { series: series.into(), slope: None, intercept: None, residuals: vec![] };
    if pts.len() < 2 {
        return undefined;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return undefined;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = pts.iter().map(|p| p.1 - (intercept + slope * p.0)).collect();
    SlopeFit { series: series.into(), slope: Some(slope), intercept: Some(intercept), residuals }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchOutcome {
    pub records: Vec<BenchRecord>,
    pub fits: Vec<SlopeFit>,
}

fn median(mut xs: Vec<u128>) -> u128 {
    xs.sort_unstable();
    xs[xs.len() / 2]
}

fn timed<R>(reps: usize, mut run: impl FnMut() -> Result<R>) -> Result<(u128, R)> {
    let mut times = Vec::with_capacity(reps);
    let mut last = None;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        let r = run()?;
        times.push(start.elapsed().as_nanos());
        last = Some(r);
    }
    Ok((median(times), last.expect("at least one repetition")))
}

fn random_dataset(d: usize, n: usize, seed: u64) -> Result<LabeledDataset<Int>> {
    let mut r = rng::seeded(seed);
    let points = (0..n).map(|_| Point::new((0..d).map(|_| r.random_range(-1000..=1000)).collect())).collect();
    let labels = (0..n).map(|_| r.random_bool(0.5)).collect();
    // Duplicate points with opposite labels are vanishingly rare; retry with
    // the next seed if one occurs.
    match LabeledDataset::uniform(points, labels) {
        Ok(ds) => Ok(ds),
        Err(_) => random_dataset(d, n, rng::derive_seed(seed, 1)),
    }
}

pub fn run_bench(
    task: BenchTask,
    sizes: &[usize],
    k: usize,
    d: usize,
    reps: usize,
    seed: u64,
) -> Result<BenchOutcome> {
    if sizes.is_empty() {
        bail!("empty size grid");
    }
    let cap = match task {
        BenchTask::Mitm => MITM_MAX_N,
        BenchTask::ExactCand => EXACT_MAX_N,
        BenchTask::ReductionE2e => E2E_MAX_N,
    };
    if let Some(&n) = sizes.iter().find(|&&n| n == 0 || n > cap) {
        return Err(halfgap_core::Error::CapExceeded { points: n, cap }.into());
    }
    let mut records = Vec::new();
    let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    let mut push = |records: &mut Vec<BenchRecord>, name: &str, rec: BenchRecord| {
        match series.iter_mut().find(|(s, _)| s == name) {
            Some((_, pts)) => pts.push((rec.n as f64, rec.wall_time_ns as f64)),
            None => series.push((name.into(), vec![(rec.n as f64, rec.wall_time_ns as f64)])),
        }
        records.push(rec);
    };
    for &n in sizes {
        let point_seed = rng::derive_seed(seed, n as u64);
        match task {
            BenchTask::Mitm => {
                let inst = gen_instance::<Int>(n, k, false, point_seed)?;
                let (ns, found) = timed(reps, || Ok(solve_mitm(&inst)?.is_some()))?;
                let rec = BenchRecord {
                    command: "mitm".into(),
                    d: k - 1,
                    n,
                    k,
                    eps: None,
                    seed: point_seed,
                    wall_time_ns: ns,
                    queries_or_samples: (k * n) as u64,
                    result: if found { "YES" } else { "NO" }.into(),
                };
                push(&mut records, "mitm", rec);
            }
            BenchTask::ExactCand => {
                let ds = random_dataset(d, n, point_seed)?;
                let (ns, rep) = timed(reps, || Ok(exact_distance_cand(&ds)?))?;
                let base = BenchRecord {
                    command: "exact_cand".into(),
                    d,
                    n,
                    k: d + 1,
                    eps: None,
                    seed: point_seed,
                    wall_time_ns: ns,
                    queries_or_samples: n as u64,
                    result: rep.distance.to_string(),
                };
                push(&mut records, "exact_cand", base.clone());
                if d == 2 {
                    let (ns, sweep) = timed(reps, || Ok(exact_distance_2d(&ds)?))?;
                    if sweep.distance != rep.distance {
                        return Err(halfgap_core::Error::Invariant(format!(
                            "sweep and candidate distances differ: {} vs {}",
                            sweep.distance, rep.distance
                        ))
                        .into());
                    }
                    let rec = BenchRecord { command: "exact_cand/sweep_2d".into(), wall_time_ns: ns, ..base };
                    push(&mut records, "exact_cand/sweep_2d", rec);
                }
            }
            BenchTask::ReductionE2e => {
                let inst = gen_instance::<Int>(n, d + 1, n % 2 == 1, point_seed)?;
                let (ns, (side, size, eps)) = timed(reps, || {
                    let red = build_reduction(&inst)?;
                    let gap = verify_gap(&red, DEFAULT_GAP_CAP)?;
                    Ok((gap.side, red.size(), red.eps))
                })?;
                let rec = BenchRecord {
                    command: "reduction_e2e".into(),
                    d,
                    n,
                    k: d + 1,
                    eps: Some(eps.to_string()),
                    seed: point_seed,
                    wall_time_ns: ns,
                    queries_or_samples: size as u64,
                    result: side.to_string(),
                };
                push(&mut records, "reduction_e2e", rec);
            }
        }
    }
    let fits = series.iter().map(|(name, pts)| fit_loglog(name, pts)).collect();
    Ok(BenchOutcome { records, fits })
}

pub fn to_csv(records: &[BenchRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["command", "d", "n", "k", "eps", "seed", "wall_time_ns", "queries_or_samples", "result"])?;
    for r in records {
        w.write_record([
            r.command.clone(),
            r.d.to_string(),
            r.n.to_string(),
            r.k.to_string(),
            r.eps.clone().unwrap_or_default(),
            r.seed.to_string(),
            r.wall_time_ns.to_string(),
            r.queries_or_samples.to_string(),
            r.result.clone(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// A log-log line chart, one polyline per series.
pub fn to_svg(outcome: &BenchOutcome) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 50.0;
    let pts: Vec<(&str, f64, f64)> = outcome
        .records
        .iter()
        .filter(|r| r.wall_time_ns > 0)
        .map(|r| (r.command.as_str(), (r.n as f64).log10(), (r.wall_time_ns as f64).log10()))
        .collect();
    let (x0, x1) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.1), b.max(p.1)));
    let (y0, y1) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.2), b.max(p.2)));
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0).max(1e-9) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0).max(1e-9) * (H - 2.0 * PAD);
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <line x1=\"{PAD}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{PAD}\" y1=\"{PAD}\" x2=\"{PAD}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <text x=\"{cx}\" y=\"{lx}\" text-anchor=\"middle\">log10 n</text>\n\
         <text x=\"14\" y=\"{cy}\" transform=\"rotate(-90 14 {cy})\" text-anchor=\"middle\">log10 wall time (ns)</text>\n",
        b = H - PAD,
        r = W - PAD,
        cx = W / 2.0,
        lx = H - 12.0,
        cy = H / 2.0,
    );
    for (i, fit) in outcome.fits.iter().enumerate() {
        let color = colors[i % colors.len()];
        let line: Vec<String> = pts
            .iter()
            .filter(|p| p.0 == fit.series)
            .map(|p| format!("{:.1},{:.1}", sx(p.1), sy(p.2)))
            .collect();
        let _ = writeln!(svg, "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" points=\"{}\"/>", line.join(" "));
        let _ = writeln!(
            svg,
            "<text x=\"{}\" y=\"{}\" fill=\"{color}\">{}</text>",
            PAD + 10.0,
            PAD + 16.0 * i as f64,
            fit.describe()
        );
    }
    svg.push_str("</svg>\n");
    svg
}
