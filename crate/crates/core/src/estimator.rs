//! Distance approximation from labeled samples: draw `O(d/eps^2)` samples and
//! return the exact distance of the empirical distribution.

use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{exact_distance, DistanceReport};
use crate::geometry::{Label, LabeledDataset, Point};
use crate::num::{self, ExactInt};
use crate::reduction::ReducedInstance;
use crate::rng::{self, Rng};

/// Constant in front of the uniform-convergence sample bound.
pub const SAMPLE_CONSTANT: f64 = 64.0;

/// Access to an unknown labeled distribution: i.i.d. labeled samples and
/// membership queries.
pub trait SampleAccess<T: ExactInt>: Sync {
    fn dim(&self) -> usize;
    fn draw(&self, rng: &mut Rng) -> (Point<T>, Label);
    fn query(&self, x: &Point<T>) -> Result<Label>;
}

/// Samples a weighted dataset by inverse CDF over its weights; queries
/// return the label of the first matching point, 0 off the support.
pub struct DatasetAccess<'a, T: ExactInt> {
    ds: &'a LabeledDataset<T>,
    cumulative: Vec<f64>,
    lookup: HashMap<&'a Point<T>, Label>,
}

impl<'a, T: ExactInt> DatasetAccess<'a, T> {
    pub fn new(ds: &'a LabeledDataset<T>) -> Result<Self> {
        ds.ensure_function()?;
        let mut acc = 0.0;
        let cumulative = ds
            .weights()
            .iter()
            .map(|w| {
                acc += num::rat_to_f64(w);
                acc
            })
            .collect();
        let mut lookup = HashMap::new();
        for (p, &l) in ds.points().iter().zip(ds.labels()) {
            lookup.entry(p).or_insert(l);
        }
        Ok(DatasetAccess { ds, cumulative, lookup })
    }
}

impl<T: ExactInt> SampleAccess<T> for DatasetAccess<'_, T> {
    fn dim(&self) -> usize {
        self.ds.dim()
    }

    fn draw(&self, rng: &mut Rng) -> (Point<T>, Label) {
        let u = rng::unit_f64(rng) * self.cumulative.last().copied().unwrap_or(1.0);
        let i = self.cumulative.partition_point(|&c| c <= u).min(self.ds.len() - 1);
        (self.ds.points()[i].clone(), self.ds.labels()[i])
    }

    fn query(&self, x: &Point<T>) -> Result<Label> {
        Ok(self.lookup.get(x).copied().unwrap_or(false))
    }
}

impl<T: ExactInt> SampleAccess<T> for ReducedInstance<T> {
    fn dim(&self) -> usize {
        self.d
    }

    fn draw(&self, rng: &mut Rng) -> (Point<T>, Label) {
        self.draw_sample(rng)
    }

    fn query(&self, x: &Point<T>) -> Result<Label> {
        self.f_query(x)
    }
}

/// `ceil(C (d + 1 + ln(2/delta)) / eps^2)` with `C = 64`.
pub fn sample_size<T: ExactInt>(d: usize, eps: &Ratio<T>, delta: &Ratio<T>) -> Result<usize> {
    let open_unit = |r: &Ratio<T>| *r > Ratio::from_integer(T::zero()) && *r < Ratio::from_integer(T::one());
    if d < 1 || !open_unit(eps) || !open_unit(delta) {
        return Err(Error::InvalidParameter(format!(
            "need d >= 1 and eps, delta in (0, 1); got d={d}, eps={eps}, delta={delta}"
        )));
    }
    let eps = num::rat_to_f64(eps);
    let delta = num::rat_to_f64(delta);
    let s = (SAMPLE_CONSTANT * ((d + 1) as f64 + (2.0 / delta).ln()) / (eps * eps)).ceil();
    s.to_usize()
        .filter(|&s| s < (1usize << 40))
        .ok_or_else(|| Error::InvalidParameter(format!("sample size {s} is too large")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Estimate<T: ExactInt> {
    pub report: DistanceReport<T>,
    pub samples: usize,
    pub distinct: usize,
}

/// Draws `sample_size(d, eps, delta)` samples and returns the exact distance
/// of their empirical distribution (duplicates merged into multiplicities).
pub fn approx_distance<T: ExactInt, A: SampleAccess<T> + ?Sized>(
    acc: &A,
    eps: &Ratio<T>,
    delta: &Ratio<T>,
    seed: u64,
) -> Result<Estimate<T>> {
    let s = sample_size(acc.dim(), eps, delta)?;
    let mut rng = rng::seeded(seed);
    let mut index: HashMap<Point<T>, usize> = HashMap::new();
    let mut points = Vec::new();
    let mut labels = Vec::new();
    let mut counts: Vec<u64> = Vec::new();
    for _ in 0..s {
        let (p, l) = acc.draw(&mut rng);
        match index.get(&p) {
            Some(&i) => {
                if labels[i] != l {
                    return Err(Error::ConflictingLabels { index: i });
                }
                counts[i] += 1;
            }
            None => {
                index.insert(p.clone(), points.len());
                points.push(p);
                labels.push(l);
                counts.push(1);
            }
        }
    }
    let total: T = num::from_usize(s)?;
    let weights = counts
        .iter()
        .map(|&c| num::rat(num::from_usize(c as usize)?, total.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let distinct = points.len();
    let ds = LabeledDataset::new(points, labels, weights)?;
    let report = exact_distance(&ds)?;
    Ok(Estimate { report, samples: s, distinct })
}

/// Independent estimates, one per trial, seeded by `derive_seed(seed, t)`.
pub fn run_trials<T: ExactInt, A: SampleAccess<T> + ?Sized>(
    acc: &A,
    eps: &Ratio<T>,
    delta: &Ratio<T>,
    seed: u64,
    trials: usize,
) -> Result<Vec<Ratio<T>>> {
    (0..trials)
        .into_par_iter()
        .map(|t| {
            approx_distance(acc, eps, delta, rng::derive_seed(seed, t as u64))
                .map(|e| e.report.distance)
        })
        .collect()
}
