//! Reduction from `(d+1)`-SUM to distance approximation for halfspaces in
//! `Z^d`.
//!
//! List `i <= d` is placed on the vertical line over polygon vertex
//! `p_i` (`p_1 = 0`, `p_i = d e_{i-1}`), list `d+1` over the center
//! `c = (1, ..., 1, 0)`. Each value `a` becomes `a* = p_i + 4 d a e_d`
//! (`c + 4 a e_d` for the last list), and contributes the pair
//! `a* - e_d` (label 0) and `a* + e_d` (label 1). A halfspace can cut every
//! vertical line between a matching pair at once exactly when the lifted
//! points `a_1*, ..., a_{d+1}*` are coplanar, which happens exactly when
//! `a_1 + ... + a_d = a_{d+1}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{exact_distance, DistanceReport};
use crate::geometry::{Label, LabeledDataset, Point};
use crate::ksum::KSumInstance;
use crate::num::{self, ExactInt};
use crate::rng::Rng;

/// Largest `|S|` accepted by [`verify_gap`].
pub const DEFAULT_GAP_CAP: usize = 96;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Side {
    Yes,
    No,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Yes => "YES",
            Side::No => "NO",
        })
    }
}

/// One list's points, keyed by the last coordinate of `a*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListIndex<T> {
    /// First `d-1` coordinates shared by every point of the list.
    pub prefix: Vec<T>,
    /// `(last coordinate of a*, source value, source index)`, ascending.
    pub entries: Vec<(T, T, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedInstance<T: ExactInt> {
    pub d: usize,
    pub n: usize,
    pub dataset: LabeledDataset<T>,
    pub per_list_index: Vec<ListIndex<T>>,
    pub eps: Ratio<T>,
    pub threshold: Ratio<T>,
    pub yes_bound: Ratio<T>,
    pub no_bound: Ratio<T>,
}

/// Polygon vertex (or center, for `i = d`) of list `i` (0-based), as the
/// first `d-1` coordinates.
fn list_prefix<T: ExactInt>(d: usize, i: usize) -> Result<Vec<T>> {
    let mut p = vec![T::zero(); d - 1];
    if i == d {
        p.iter_mut().for_each(|c| *c = T::one());
    } else if i > 0 {
        p[i - 1] = num::from_usize(d)?;
    }
    Ok(p)
}

/// Multiplier on `a` in the last coordinate of `a*`.
fn lift_factor<T: ExactInt>(d: usize, i: usize) -> Result<T> {
    Ok(num::from_usize(if i == d { 4 } else { 4 * d })?)
}

pub fn build_reduction<T: ExactInt>(inst: &KSumInstance<T>) -> Result<ReducedInstance<T>> {
    if inst.k < 3 {
        return Err(Error::InvalidParameter(format!(
            "the reduction needs d = k - 1 >= 2 (got k = {}): for d = 1 the polygon degenerates \
             and the lower bound is trivial",
            inst.k
        )));
    }
    inst.check_range()?;
    let d = inst.k - 1;
    let n = inst.n;
    let mut points = Vec::with_capacity(2 * inst.k * n);
    let mut labels = Vec::with_capacity(2 * inst.k * n);
    let mut index = Vec::with_capacity(inst.k);
    for (i, list) in inst.lists.iter().enumerate() {
        let prefix = list_prefix::<T>(d, i)?;
        let factor = lift_factor::<T>(d, i)?;
        let mut entries = Vec::with_capacity(n);
        for (j, a) in list.iter().enumerate() {
            let key = num::mul(&factor, a)?;
            for (offset, label) in [(-T::one(), false), (T::one(), true)] {
                let mut coords = prefix.clone();
                coords.push(num::add(&key, &offset)?);
                points.push(Point(coords));
                labels.push(label);
            }
            entries.push((key, a.clone(), j));
        }
        entries.sort();
        index.push(ListIndex { prefix, entries });
    }
    let dataset = LabeledDataset::uniform(points, labels)?;
    ReducedInstance::with_parts(d, n, dataset, index)
}

impl<T: ExactInt> ReducedInstance<T> {
    fn with_parts(
        d: usize,
        n: usize,
        dataset: LabeledDataset<T>,
        per_list_index: Vec<ListIndex<T>>,
    ) -> Result<Self> {
        let size: T = num::from_usize(dataset.len())?;
        let agree: T = num::from_usize((n + 1) * (d + 1))?;
        let two = T::one() + T::one();
        let eps = num::rat(T::one(), num::from_usize(5 * (d + 1) * n)?)?;
        let yes_num = num::sub(&size, &agree)?;
        let yes_bound = num::rat(yes_num.clone(), size.clone())?;
        let no_bound = num::rat(num::add(&yes_num, &T::one())?, size.clone())?;
        // (|S| - (n+1)(d+1) + 1/2) / |S|
        let threshold = num::rat(
            num::add(&num::mul(&yes_num, &two)?, &T::one())?,
            num::mul(&size, &two)?,
        )?;
        Ok(ReducedInstance { d, n, dataset, per_list_index, eps, threshold, yes_bound, no_bound })
    }

    /// Rebuilds a reduced instance from its dataset, checking that the
    /// dataset is exactly what the construction produces.
    pub fn from_dataset(d: usize, n: usize, dataset: LabeledDataset<T>) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidDataset(format!("not a reduced instance: {msg}"));
        if d < 2 || dataset.dim() != d || dataset.len() != 2 * (d + 1) * n {
            return Err(bad("shape does not match d and n"));
        }
        let mut lists = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let factor = lift_factor::<T>(d, i)?;
            let mut list = Vec::with_capacity(n);
            for j in 0..n {
                let beta = &dataset.points()[2 * (i * n + j) + 1];
                let key = num::sub(&beta.0[d - 1], &T::one())?;
                if !(key.clone() % factor.clone()).is_zero() {
                    return Err(bad("last coordinate is not a lifted value"));
                }
                list.push(key / factor.clone());
            }
            lists.push(list);
        }
        let inst = KSumInstance::new(d + 1, lists)?;
        let rebuilt = build_reduction(&inst)?;
        if rebuilt.dataset != dataset {
            return Err(bad("points, labels or weights differ from the construction"));
        }
        Ok(rebuilt)
    }

    /// `|S|`.
    pub fn size(&self) -> usize {
        self.dataset.len()
    }

    /// The source instance, recovered from the index.
    pub fn source(&self) -> Result<KSumInstance<T>> {
        let lists = self
            .per_list_index
            .iter()
            .map(|li| {
                let mut by_index: Vec<(usize, T)> =
                    li.entries.iter().map(|(_, a, j)| (*j, a.clone())).collect();
                by_index.sort();
                by_index.into_iter().map(|(_, a)| a).collect()
            })
            .collect();
        KSumInstance::new(self.d + 1, lists)
    }

    /// The label of `x` under `f`: its label in `S`, and 0 off `S`.
    pub fn f_query(&self, x: &Point<T>) -> Result<Label> {
        if x.dim() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, got: x.dim() });
        }
        let (head, last) = x.0.split_at(self.d - 1);
        let Some(list) = self.per_list_index.iter().find(|li| li.prefix == head) else {
            return Ok(false);
        };
        let found = |key: &T| list.entries.binary_search_by(|(k, _, _)| k.cmp(key)).is_ok();
        if found(&num::sub(&last[0], &T::one())?) {
            return Ok(true);
        }
        Ok(false)
    }

    /// A uniform point of `S` with its label.
    pub fn draw_sample(&self, rng: &mut Rng) -> (Point<T>, Label) {
        let i = rng.random_range(0..self.size());
        (self.dataset.points()[i].clone(), self.dataset.labels()[i])
    }

    /// Largest absolute coordinate over `S`.
    pub fn max_abs_coordinate(&self) -> T {
        self.dataset
            .points()
            .iter()
            .flat_map(|p| p.0.iter())
            .map(num_traits::Signed::abs)
            .max()
            .unwrap_or_else(T::zero)
    }

    pub fn coordinate_bound(&self) -> CoordinateBound {
        CoordinateBound::new(self.d, self.n, self.max_abs_coordinate().to_bigint())
    }
}

/// The explicit form of the polynomial coordinate bound:
/// `max |x_j| <= 4 d n^(2(d+1)) + d + 1 <= (1/eps)^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateBound {
    pub max_abs: BigInt,
    pub bound: BigInt,
    pub inverse_eps: BigInt,
    pub exponent: u32,
}

impl CoordinateBound {
    pub fn new(d: usize, n: usize, max_abs: BigInt) -> Self {
        let exponent = 2 * (d as u32 + 1);
        let bound = BigInt::from(4 * d) * num_traits::pow(BigInt::from(n), exponent as usize)
            + BigInt::from(d + 1);
        let inverse_eps = BigInt::from(5 * (d + 1) * n);
        CoordinateBound { max_abs, bound, inverse_eps, exponent }
    }

    pub fn holds(&self) -> bool {
        self.max_abs <= self.bound
            && self.bound <= num_traits::pow(self.inverse_eps.clone(), self.exponent as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport<T: ExactInt> {
    pub exact: Ratio<T>,
    pub side: Side,
    pub report: DistanceReport<T>,
}

/// Exact distance of the reduced instance, classified against the gap.
/// A value strictly inside the gap is an internal error.
pub fn verify_gap<T: ExactInt>(red: &ReducedInstance<T>, cap: usize) -> Result<GapReport<T>> {
    if red.size() > cap {
        return Err(Error::CapExceeded { points: red.size(), cap });
    }
    let report = exact_distance(&red.dataset)?;
    let exact = report.distance.clone();
    let side = classify(red, &exact)?;
    Ok(GapReport { exact, side, report })
}

fn classify<T: ExactInt>(red: &ReducedInstance<T>, exact: &Ratio<T>) -> Result<Side> {
    if *exact <= red.yes_bound {
        Ok(Side::Yes)
    } else if *exact >= red.no_bound {
        Ok(Side::No)
    } else {
        Err(Error::GapViolation {
            exact: exact.to_string(),
            yes_bound: red.yes_bound.to_string(),
            no_bound: red.no_bound.to_string(),
        })
    }
}

/// YES iff the solver's estimate is at most the threshold.
pub fn decide_via_distance<T, F>(red: &ReducedInstance<T>, solver: F) -> Result<Side>
where
    T: ExactInt,
    F: FnOnce(&ReducedInstance<T>) -> Result<Ratio<T>>,
{
    let estimate = solver(red)?;
    Ok(if estimate <= red.threshold { Side::Yes } else { Side::No })
}

/// The exact solver for [`decide_via_distance`].
pub fn exact_solver<T: ExactInt>(red: &ReducedInstance<T>) -> Result<Ratio<T>> {
    Ok(exact_distance(&red.dataset)?.distance)
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;
    use proptest::prelude::*;

    use super::*;
    use crate::geometry::Halfspace;
    use crate::ksum::{gen_instance, solve_brute};

    fn inst(lists: &[&[i64]]) -> KSumInstance<i128> {
        KSumInstance::new(
            lists.len(),
            lists.iter().map(|l| l.iter().map(|&v| v as i128).collect()).collect(),
        )
        .unwrap()
    }

    fn pts(red: &ReducedInstance<i128>) -> Vec<(Vec<i128>, bool)> {
        red.dataset
            .points()
            .iter()
            .zip(red.dataset.labels())
            .map(|(p, &l)| (p.0.clone(), l))
            .collect()
    }

    #[test]
    fn two_dimensional_example() {
        let red = build_reduction(&inst(&[&[0], &[0], &[0]])).unwrap();
        assert_eq!(
            pts(&red),
            vec![
                (vec![0, -1], false),
                (vec![0, 1], true),
                (vec![2, -1], false),
                (vec![2, 1], true),
                (vec![1, -1], false),
                (vec![1, 1], true),
            ]
        );
        assert_eq!(red.size(), 6);
        assert_eq!(red.eps, Ratio::new(1, 15));
        assert_eq!(red.threshold, Ratio::new(1, 12));
        let gap = verify_gap(&red, DEFAULT_GAP_CAP).unwrap();
        assert_eq!((gap.exact, gap.side), (Ratio::zero(), Side::Yes));
    }

    #[test]
    fn three_dimensional_examples() {
        let yes = build_reduction(&inst(&[&[0], &[0], &[0], &[0]])).unwrap();
        let expected: Vec<Vec<i128>> = [[0, 0], [3, 0], [0, 3], [1, 1]]
            .iter()
            .flat_map(|p| [vec![p[0], p[1], -1], vec![p[0], p[1], 1]])
            .collect();
        assert_eq!(pts(&yes).into_iter().map(|(p, _)| p).collect::<Vec<_>>(), expected);
        assert!(yes.f_query(&Point(vec![0, 0, 1])).unwrap());
        assert!(!yes.f_query(&Point(vec![5, 5, 5])).unwrap());
        let gap = verify_gap(&yes, DEFAULT_GAP_CAP).unwrap();
        assert_eq!((gap.exact, gap.side), (Ratio::zero(), Side::Yes));
        assert_eq!(yes.yes_bound, Ratio::zero());

        let no = build_reduction(&inst(&[&[0], &[0], &[0], &[1]])).unwrap();
        let last: Vec<_> = pts(&no)[6..].to_vec();
        assert_eq!(last, vec![(vec![1, 1, 3], false), (vec![1, 1, 5], true)]);
        assert!(!no.f_query(&Point(vec![1, 1, 3])).unwrap());
        assert!(no.f_query(&Point(vec![1, 1, 5])).unwrap());
        let gap = verify_gap(&no, DEFAULT_GAP_CAP).unwrap();
        assert_eq!((gap.exact, gap.side), (Ratio::new(1, 8), Side::No));
        assert_eq!(no.no_bound, Ratio::new(1, 8));
        // x_3 >= 0 misclassifies only (1, 1, 3).
        let h = Halfspace::from_i64(&[0, 0, 1], 0);
        assert_eq!(crate::geometry::disagreement(&no.dataset, &h).unwrap(), Ratio::new(1, 8));
    }

    #[test]
    fn rejects_d_one() {
        let one = KSumInstance::<i128>::new(2, vec![vec![0], vec![0]]).unwrap();
        assert!(matches!(build_reduction(&one), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn vertical_pairs_are_ordered() {
        let i = gen_instance::<i128>(3, 3, false, 11).unwrap();
        let red = build_reduction(&i).unwrap();
        for li in &red.per_list_index {
            for pair in li.entries.windows(2) {
                let (a, b) = (&pair[0].0, &pair[1].0);
                // alpha(a) < beta(a) < alpha(b) < beta(b)
                assert!(a + 1 < b - 1);
            }
        }
    }

    #[test]
    fn sampling_matches_queries_and_is_uniform() {
        let red = build_reduction(&inst(&[&[0], &[0], &[0]])).unwrap();
        let mut rng = crate::rng::seeded(5);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..60_000 {
            let (p, l) = red.draw_sample(&mut rng);
            assert_eq!(red.f_query(&p).unwrap(), l);
            *counts.entry(p).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 6);
        for c in counts.values() {
            assert!((*c as f64 / 60_000.0 - 1.0 / 6.0).abs() <= 0.01);
        }
    }

    #[test]
    fn round_trip_through_dataset() {
        let i = gen_instance::<i128>(2, 4, true, 3).unwrap();
        let red = build_reduction(&i).unwrap();
        let back = ReducedInstance::from_dataset(3, 2, red.dataset.clone()).unwrap();
        assert_eq!(back, red);
        assert_eq!(red.source().unwrap(), i);
        let mut labels = red.dataset.labels().to_vec();
        labels[0] = !labels[0];
        let tampered = red.dataset.relabeled(labels).unwrap();
        assert!(ReducedInstance::from_dataset(3, 2, tampered).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn gap_and_equivalence(d in 2usize..=3, n in 1usize..=2, planted: bool, seed: u64) {
            let i = gen_instance::<i128>(n, d + 1, planted, seed).unwrap();
            let red = build_reduction(&i).unwrap();
            prop_assert!(red.eps < Ratio::new(1, 2 * red.size() as i128));
            prop_assert!(red.yes_bound < red.threshold && red.threshold < red.no_bound);
            prop_assert!(red.coordinate_bound().holds());
            let gap = verify_gap(&red, DEFAULT_GAP_CAP).unwrap();
            let expected = if planted { Side::Yes } else { Side::No };
            prop_assert_eq!(gap.side, expected);
            prop_assert_eq!(solve_brute(&i).unwrap().is_some(), planted);
            prop_assert_eq!(decide_via_distance(&red, exact_solver).unwrap(), expected);
        }
    }
}
