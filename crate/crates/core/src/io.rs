//! JSON file formats. Every magnitude is a decimal string so that wide
//! integers and floats survive any JSON reader; small structural fields
//! (`d`, `k`, `n`, labels, signs) are plain JSON integers.

use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{DistanceReport, Method};
use crate::geometry::{Halfspace, LabeledDataset, Point};
use crate::ksum::KSumInstance;
use crate::num::{rat, ExactInt, Real};
use crate::reduction::ReducedInstance;
use crate::sq::{GaussianSupport, QuerySpec, SignFunction, UnitVector};

fn parse<V: FromStr>(s: &str, what: &str) -> Result<V> {
    s.trim().parse().map_err(|_| Error::Parse(format!("{what}: {s:?} is not a decimal number")))
}

fn parse_all<V: FromStr>(xs: &[String], what: &str) -> Result<Vec<V>> {
    xs.iter().map(|s| parse(s, what)).collect()
}

fn strings<V: ToString>(xs: &[V]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn rat_wire<T: ExactInt>(r: &Ratio<T>) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

fn rat_parse<T: ExactInt>(r: &[String; 2], what: &str) -> Result<Ratio<T>> {
    Ok(rat(parse(&r[0], what)?, parse(&r[1], what)?)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetJson {
    pub d: usize,
    pub points: Vec<Vec<String>>,
    pub labels: Vec<u8>,
    /// Uniform when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<[String; 2]>>,
}

impl DatasetJson {
    pub fn from_dataset<T: ExactInt>(ds: &LabeledDataset<T>) -> Self {
        DatasetJson {
            d: ds.dim(),
            points: ds.points().iter().map(|p| strings(p.coords())).collect(),
            labels: ds.labels().iter().map(|&l| l as u8).collect(),
            weights: Some(ds.weights().iter().map(rat_wire).collect()),
        }
    }

    pub fn to_dataset<T: ExactInt>(&self) -> Result<LabeledDataset<T>> {
        let points = self
            .points
            .iter()
            .map(|p| {
                if p.len() != self.d {
                    return Err(Error::DimensionMismatch { expected: self.d, got: p.len() });
                }
                Ok(Point::new(parse_all(p, "coordinate")?))
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = self
            .labels
            .iter()
            .map(|&l| match l {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::Parse(format!("label {other} is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        match &self.weights {
            Some(w) => {
                let weights = w.iter().map(|r| rat_parse(r, "weight")).collect::<Result<_>>()?;
                LabeledDataset::new(points, labels, weights)
            }
            None => LabeledDataset::uniform(points, labels),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub w: Vec<String>,
    pub theta: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub distance: [String; 2],
    pub witness: WitnessJson,
    pub method: Method,
    pub agreements: usize,
}

impl ReportJson {
    pub fn from_report<T: ExactInt>(r: &DistanceReport<T>) -> Self {
        ReportJson {
            distance: rat_wire(&r.distance),
            witness: WitnessJson { w: strings(&r.witness.w), theta: r.witness.theta.to_string() },
            method: r.method,
            agreements: r.agreements,
        }
    }

    pub fn to_report<T: ExactInt>(&self) -> Result<DistanceReport<T>> {
        Ok(DistanceReport {
            distance: rat_parse(&self.distance, "distance")?,
            witness: Halfspace::new(parse_all(&self.witness.w, "w")?, parse(&self.witness.theta, "theta")?),
            agreements: self.agreements,
            method: self.method,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KSumJson {
    pub k: usize,
    pub n: usize,
    pub lists: Vec<Vec<String>>,
}

impl KSumJson {
    pub fn from_instance<T: ExactInt>(inst: &KSumInstance<T>) -> Self {
        KSumJson { k: inst.k, n: inst.n, lists: inst.lists.iter().map(|l| strings(l)).collect() }
    }

    pub fn to_instance<T: ExactInt>(&self) -> Result<KSumInstance<T>> {
        let lists = self.lists.iter().map(|l| parse_all(l, "list value")).collect::<Result<Vec<_>>>()?;
        let inst = KSumInstance::new(self.k, lists)?;
        if inst.n != self.n {
            return Err(Error::InvalidInstance(format!("declared n = {} but lists have {}", self.n, inst.n)));
        }
        Ok(inst)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedMeta {
    pub n: usize,
    pub d: usize,
    pub eps: [String; 2],
    pub threshold: [String; 2],
    pub yes_bound: [String; 2],
    pub no_bound: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedJson {
    #[serde(flatten)]
    pub dataset: DatasetJson,
    pub meta: ReducedMeta,
}

impl ReducedJson {
    pub fn from_instance<T: ExactInt>(red: &ReducedInstance<T>) -> Self {
        ReducedJson {
            dataset: DatasetJson::from_dataset(&red.dataset),
            meta: ReducedMeta {
                n: red.n,
                d: red.d,
                eps: rat_wire(&red.eps),
                threshold: rat_wire(&red.threshold),
                yes_bound: rat_wire(&red.yes_bound),
                no_bound: rat_wire(&red.no_bound),
            },
        }
    }

    /// Rebuilds the instance from its points and rejects any meta field
    /// that disagrees with the rebuilt one.
    pub fn to_instance<T: ExactInt>(&self) -> Result<ReducedInstance<T>> {
        let red = ReducedInstance::from_dataset(self.meta.d, self.meta.n, self.dataset.to_dataset()?)?;
        let checks = [
            ("eps", &self.meta.eps, &red.eps),
            ("threshold", &self.meta.threshold, &red.threshold),
            ("yes_bound", &self.meta.yes_bound, &red.yes_bound),
            ("no_bound", &self.meta.no_bound, &red.no_bound),
        ];
        for (name, got, want) in checks {
            if rat_parse::<T>(got, name)? != *want {
                return Err(Error::InvalidInstance(format!("meta {name} does not match the points")));
            }
        }
        Ok(red)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QueryJson {
    HalfspaceSign { w: Vec<String>, theta: String },
    ProjectionProfile { u: Vec<String>, breakpoints: Vec<String>, signs: Vec<i8> },
    Table { values: Vec<String> },
}

impl QueryJson {
    pub fn from_query<F: Real>(q: &QuerySpec<F>) -> Self {
        match q {
            QuerySpec::HalfspaceSign { w, theta } => {
                QueryJson::HalfspaceSign { w: strings(w), theta: theta.to_string() }
            }
            QuerySpec::ProjectionProfile { u, breakpoints, signs } => QueryJson::ProjectionProfile {
                u: strings(&u.coords),
                breakpoints: strings(breakpoints),
                signs: signs.clone(),
            },
            QuerySpec::Table { values } => QueryJson::Table { values: strings(values) },
        }
    }

    pub fn to_query<F: Real + FromStr>(&self) -> Result<QuerySpec<F>> {
        let q = match self {
            QueryJson::HalfspaceSign { w, theta } => {
                QuerySpec::HalfspaceSign { w: parse_all(w, "w")?, theta: parse(theta, "theta")? }
            }
            QueryJson::ProjectionProfile { u, breakpoints, signs } => QuerySpec::ProjectionProfile {
                u: UnitVector::new(parse_all(u, "u")?)?,
                breakpoints: parse_all(breakpoints, "breakpoint")?,
                signs: signs.clone(),
            },
            QueryJson::Table { values } => QuerySpec::Table { values: parse_all(values, "value")? },
        };
        q.validate()?;
        Ok(q)
    }
}

/// A support regenerated from `(d, m, seed)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportJson {
    pub d: usize,
    pub m: usize,
    pub seed: String,
}

impl SupportJson {
    pub fn build<F: Real>(&self) -> Result<GaussianSupport<F>> {
        GaussianSupport::sample(self.d, self.m, parse(&self.seed, "seed")?)
    }
}

/// A sign function together with the support it lives on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentJson {
    pub support: SupportJson,
    pub values: Vec<i8>,
}

impl AssignmentJson {
    pub fn new(support: SupportJson, f: &SignFunction) -> Self {
        AssignmentJson { support, values: f.values.clone() }
    }

    pub fn to_function(&self) -> Result<SignFunction> {
        if self.values.len() != 2 * self.support.m {
            return Err(Error::DimensionMismatch { expected: 2 * self.support.m, got: self.values.len() });
        }
        SignFunction::new(self.values.clone())
    }
}

pub fn to_json<S: Serialize>(value: &S) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn from_json<'de, S: Deserialize<'de>>(text: &'de str) -> Result<S> {
    Ok(serde_json::from_str(text)?)
}
