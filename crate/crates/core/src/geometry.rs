//! Points, halfspaces and weighted labeled datasets over the integer grid.

use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::num::{self, ExactInt};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<T>(pub Vec<T>);

impl<T: ExactInt> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Point(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| T::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }
}

/// The classifier `x -> 1{<w, x> + theta >= 0}`.
///
/// `w = 0` is allowed and yields a constant classifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace<T> {
    pub w: Vec<T>,
    pub theta: T,
}

impl<T: ExactInt> Halfspace<T> {
    pub fn new(w: Vec<T>, theta: T) -> Self {
        Halfspace { w, theta }
    }

    pub fn from_i64(w: &[i64], theta: i64) -> Self {
        Halfspace {
            w: w.iter().map(|&c| T::int(c)).collect(),
            theta: T::int(theta),
        }
    }

    /// Constant classifier that labels every point 1 (`w = 0, theta = 0`).
    pub fn all_ones(d: usize) -> Self {
        Halfspace { w: vec![T::zero(); d], theta: T::zero() }
    }

    /// Constant classifier that labels every point 0 (`w = 0, theta = -1`).
    pub fn all_zeros(d: usize) -> Self {
        Halfspace { w: vec![T::zero(); d], theta: -T::one() }
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    /// `<w, x> + theta`, exactly.
    pub fn value(&self, x: &Point<T>) -> Result<T> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.dim() });
        }
        Ok(num::add(&num::dot(&self.w, &x.0)?, &self.theta)?)
    }

    pub fn eval(&self, x: &Point<T>) -> Result<bool> {
        Ok(!self.value(x)?.is_negative())
    }

    /// `(-w, -theta)`: reverses the orientation but keeps the boundary
    /// inclusive, so boundary points are labeled 1 by both.
    pub fn negated(&self) -> Result<Self> {
        Ok(Halfspace {
            w: self.w.iter().map(num::neg).collect::<Result<_, _>>()?,
            theta: num::neg(&self.theta)?,
        })
    }

    /// The exact complement on the integer grid: `1{<w,x> + theta <= -1}`.
    pub fn complement(&self) -> Result<Self> {
        let flipped = self.negated()?;
        Ok(Halfspace {
            theta: num::sub(&flipped.theta, &T::one())?,
            w: flipped.w,
        })
    }

    pub fn scaled(&self, c: &T) -> Result<Self> {
        Ok(Halfspace {
            w: self.w.iter().map(|v| num::mul(v, c)).collect::<Result<_, _>>()?,
            theta: num::mul(&self.theta, c)?,
        })
    }

    /// Divides `(w, theta)` by the gcd of its entries. The classifier is
    /// unchanged since the gcd is positive.
    pub fn normalized(&self) -> Self {
        let mut all = self.w.clone();
        all.push(self.theta.clone());
        let g = num::gcd_all(&all);
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Halfspace {
            w: self.w.iter().map(|v| v.clone() / g.clone()).collect(),
            theta: self.theta.clone() / g,
        }
    }

    /// Key used for reproducible tie-breaking between optimal witnesses.
    pub fn lex_key(&self) -> Vec<T> {
        let n = self.normalized();
        let mut key = n.w;
        key.push(n.theta);
        key
    }
}

pub type Label = bool;

/// A finite weighted sample of a labeled distribution.
///
/// Invariants: at least one point, equal lengths, positive weights summing to
/// exactly one, and (unless built with [`LabeledDataset::new_multi_label`])
/// duplicate points carry identical labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDataset<T: ExactInt> {
    dim: usize,
    points: Vec<Point<T>>,
    labels: Vec<Label>,
    weights: Vec<Ratio<T>>,
    multi_label: bool,
}

impl<T: ExactInt> LabeledDataset<T> {
    pub fn new(points: Vec<Point<T>>, labels: Vec<Label>, weights: Vec<Ratio<T>>) -> Result<Self> {
        let ds = Self::build(points, labels, weights, false)?;
        if let Some(index) = ds.conflicting_duplicate() {
            return Err(Error::ConflictingLabels { index });
        }
        Ok(ds)
    }

    /// Dataset whose duplicate points may disagree on labels. Distance
    /// solvers reject such datasets.
    pub fn new_multi_label(
        points: Vec<Point<T>>,
        labels: Vec<Label>,
        weights: Vec<Ratio<T>>,
    ) -> Result<Self> {
        Self::build(points, labels, weights, true)
    }

    /// Uniform weights over the given points.
    pub fn uniform(points: Vec<Point<T>>, labels: Vec<Label>) -> Result<Self> {
        let counts = vec![T::one(); points.len()];
        let weights = normalize_weights(&counts)?;
        Self::new(points, labels, weights)
    }

    fn build(
        points: Vec<Point<T>>,
        labels: Vec<Label>,
        weights: Vec<Ratio<T>>,
        multi_label: bool,
    ) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidDataset("dataset has no points".into()));
        }
        if labels.len() != points.len() || weights.len() != points.len() {
            return Err(Error::InvalidDataset(format!(
                "length mismatch: {} points, {} labels, {} weights",
                points.len(),
                labels.len(),
                weights.len()
            )));
        }
        let dim = points[0].dim();
        if dim == 0 {
            return Err(Error::InvalidDataset("dimension must be at least 1".into()));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
        }
        if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::InvalidDataset(format!("weight {i} is not positive")));
        }
        if num::rsum(&weights)? != Ratio::one() {
            return Err(Error::InvalidDataset("weights do not sum to 1".into()));
        }
        Ok(LabeledDataset { dim, points, labels, weights, multi_label })
    }

    fn conflicting_duplicate(&self) -> Option<usize> {
        let mut seen: HashMap<&Point<T>, Label> = HashMap::new();
        for (i, (p, &l)) in self.points.iter().zip(&self.labels).enumerate() {
            if let Some(&prev) = seen.get(p) {
                if prev != l {
                    return Some(i);
                }
            } else {
                seen.insert(p, l);
            }
        }
        None
    }

    /// Fails when the dataset is not a function (conflicting duplicates).
    pub fn ensure_function(&self) -> Result<()> {
        match self.conflicting_duplicate() {
            Some(index) => Err(Error::ConflictingLabels { index }),
            None => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn weights(&self) -> &[Ratio<T>] {
        &self.weights
    }

    pub fn is_multi_label(&self) -> bool {
        self.multi_label
    }

    /// Total weight of points carrying `label`.
    pub fn label_weight(&self, label: Label) -> Result<Ratio<T>> {
        Ok(num::rsum(
            self.weights.iter().zip(&self.labels).filter(|(_, &l)| l == label).map(|(w, _)| w),
        )?)
    }

    /// Same points and weights with new labels.
    pub fn relabeled(&self, labels: Vec<Label>) -> Result<Self> {
        Self::new(self.points.clone(), labels, self.weights.clone())
    }

    /// Number of points the classifier labels correctly.
    pub fn agreements(&self, h: &Halfspace<T>) -> Result<usize> {
        let mut count = 0;
        for (p, &l) in self.points.iter().zip(&self.labels) {
            if h.eval(p)? == l {
                count += 1;
            }
        }
        Ok(count)
    }
}

pub fn eval_halfspace<T: ExactInt>(h: &Halfspace<T>, x: &Point<T>) -> Result<bool> {
    h.eval(x)
}

/// Weight of the points on which `h` disagrees with the dataset labels.
pub fn disagreement<T: ExactInt>(ds: &LabeledDataset<T>, h: &Halfspace<T>) -> Result<Ratio<T>> {
    if h.dim() != ds.dim() {
        return Err(Error::DimensionMismatch { expected: ds.dim(), got: h.dim() });
    }
    let mut total = Ratio::zero();
    for ((p, &l), w) in ds.points.iter().zip(&ds.labels).zip(&ds.weights) {
        if h.eval(p)? != l {
            total = num::radd(&total, w)?;
        }
    }
    Ok(total)
}

/// Weights proportional to `counts`, summing to exactly one.
pub fn normalize_weights<T: ExactInt>(counts: &[T]) -> Result<Vec<Ratio<T>>> {
    if counts.is_empty() {
        return Err(Error::InvalidParameter("no counts to normalize".into()));
    }
    if counts.iter().any(|c| !c.is_positive()) {
        return Err(Error::InvalidParameter("counts must be positive".into()));
    }
    let total = counts.iter().try_fold(T::zero(), |acc, c| num::add(&acc, c))?;
    Ok(counts
        .iter()
        .map(|c| num::rat(c.clone(), total.clone()))
        .collect::<Result<_, _>>()?)
}
