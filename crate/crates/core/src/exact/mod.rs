//! Exact minimum-disagreement distance from a labeled dataset to the class
//! of halfspaces.
//!
//! Two independent oracles are provided:
//!
//! * [`exact_distance_sep`] enumerates relabelings in order of flip weight
//!   and tests each for linear separability with an exact simplex. It is
//!   complete by construction and exponential in the number of points.
//! * [`exact_distance_cand`] enumerates hyperplanes spanned by data points
//!   and resolves the points lying on each hyperplane by a recursive
//!   lower-dimensional solve (an infinitesimal tilt of the hyperplane).
//!
//! [`exact_distance_1d`] and [`exact_distance_2d`] are the sorted prefix-sum
//! and rotational-sweep specializations. Every report carries a witness
//! whose disagreement equals the reported distance.

mod candidates;
mod lp;
mod separability;
mod sweep;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{disagreement, Halfspace, LabeledDataset, Point};
use crate::num::{self, ExactInt};

pub use candidates::exact_distance_cand;
pub use separability::{exact_distance_sep, is_separable, DEFAULT_POINT_CAP};
pub use sweep::{exact_distance_1d, exact_distance_2d};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Separability,
    Candidates,
    #[serde(rename = "SWEEP_1D")]
    Sweep1d,
    #[serde(rename = "SWEEP_2D")]
    Sweep2d,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Separability => "SEPARABILITY",
            Method::Candidates => "CANDIDATES",
            Method::Sweep1d => "SWEEP_1D",
            Method::Sweep2d => "SWEEP_2D",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport<T: ExactInt> {
    pub distance: Ratio<T>,
    pub witness: Halfspace<T>,
    /// Number of dataset points the witness labels correctly.
    pub agreements: usize,
    pub method: Method,
}

impl<T: ExactInt> DistanceReport<T> {
    /// Builds a report after re-checking the witness against the dataset.
    pub(crate) fn checked(
        ds: &LabeledDataset<T>,
        distance: Ratio<T>,
        witness: Halfspace<T>,
        method: Method,
    ) -> Result<Self> {
        let actual = disagreement(ds, &witness)?;
        if actual != distance {
            return Err(Error::Invariant(format!(
                "{method} witness has disagreement {actual}, solver claimed {distance}"
            )));
        }
        let agreements = ds.agreements(&witness)?;
        Ok(DistanceReport { distance, witness, agreements, method })
    }
}

/// Dispatches to the fastest exact path for the dataset's dimension.
pub fn exact_distance<T: ExactInt>(ds: &LabeledDataset<T>) -> Result<DistanceReport<T>> {
    match ds.dim() {
        1 => exact_distance_1d(ds),
        2 => exact_distance_2d(ds),
        _ => exact_distance_cand(ds),
    }
}

/// Running optimum with reproducible tie-breaking: smaller error wins, then
/// the lexicographically smaller gcd-normalized `(w, theta)`.
#[derive(Debug, Clone)]
pub(crate) struct Best<T: ExactInt> {
    pub error: Ratio<T>,
    pub witness: Halfspace<T>,
    key: Vec<T>,
}

impl<T: ExactInt> Best<T> {
    pub fn new(error: Ratio<T>, witness: Halfspace<T>) -> Self {
        let witness = witness.normalized();
        let key = witness.lex_key();
        Best { error, witness, key }
    }

    /// Best constant classifier for the given label weights.
    pub fn constants(d: usize, weight_ones: &Ratio<T>, weight_zeros: &Ratio<T>) -> Self {
        let mut best = Best::new(weight_zeros.clone(), Halfspace::all_ones(d));
        best.offer(weight_ones.clone(), Halfspace::all_zeros(d));
        best
    }

    /// Whether a candidate with this error could still replace the optimum.
    pub fn admits(&self, error: &Ratio<T>) -> bool {
        *error <= self.error
    }

    pub fn offer(&mut self, error: Ratio<T>, witness: Halfspace<T>) {
        if error > self.error {
            return;
        }
        let witness = witness.normalized();
        let key = witness.lex_key();
        if error < self.error || key < self.key {
            *self = Best { error, witness, key };
        }
    }
}

/// Distinct points with their (shared) label and summed weight, in order of
/// first appearance.
pub(crate) struct Aggregated<T: ExactInt> {
    pub points: Vec<Vec<T>>,
    pub labels: Vec<bool>,
    pub weights: Vec<Ratio<T>>,
}

impl<T: ExactInt> Aggregated<T> {
    pub fn from_dataset(ds: &LabeledDataset<T>) -> Result<Self> {
        if ds.is_multi_label() {
            ds.ensure_function()?;
        }
        let mut index: BTreeMap<&Point<T>, usize> = BTreeMap::new();
        let mut agg = Aggregated { points: vec![], labels: vec![], weights: vec![] };
        for ((p, &l), w) in ds.points().iter().zip(ds.labels()).zip(ds.weights()) {
            match index.get(p) {
                Some(&i) => {
                    if agg.labels[i] != l {
                        return Err(Error::ConflictingLabels { index: i });
                    }
                    agg.weights[i] = num::radd(&agg.weights[i], w)?;
                }
                None => {
                    index.insert(p, agg.points.len());
                    agg.points.push(p.0.clone());
                    agg.labels.push(l);
                    agg.weights.push(w.clone());
                }
            }
        }
        Ok(agg)
    }

    pub fn label_weights(&self) -> Result<(Ratio<T>, Ratio<T>)> {
        let mut ones = Ratio::from_integer(T::zero());
        let mut zeros = ones.clone();
        for (l, w) in self.labels.iter().zip(&self.weights) {
            if *l {
                ones = num::radd(&ones, w)?;
            } else {
                zeros = num::radd(&zeros, w)?;
            }
        }
        Ok((ones, zeros))
    }
}

/// Combines a hyperplane `h_H` (oriented) with a tilt `g` so that points off
/// the hyperplane keep the sign of `h_H` and points on it get the sign of
/// `g`: returns `M * h_H + g` with `M = 1 + max |g(x)|` over off-plane points.
pub(crate) fn tilt<T: ExactInt>(
    plane: &Halfspace<T>,
    g: &Halfspace<T>,
    points: &[Vec<T>],
    on_plane: &[bool],
) -> Result<Halfspace<T>> {
    let mut max_abs = T::zero();
    for (p, &on) in points.iter().zip(on_plane) {
        if on {
            continue;
        }
        let v = num::add(&num::dot(&g.w, p)?, &g.theta)?;
        let v = num_traits::Signed::abs(&v);
        if v > max_abs {
            max_abs = v;
        }
    }
    let m = num::add(&max_abs, &T::one())?;
    let w = plane
        .w
        .iter()
        .zip(&g.w)
        .map(|(a, b)| num::add(&num::mul(a, &m)?, b))
        .collect::<Result<Vec<_>, _>>()?;
    let theta = num::add(&num::mul(&plane.theta, &m)?, &g.theta)?;
    Ok(Halfspace::new(w, theta))
}
