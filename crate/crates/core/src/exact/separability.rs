use itertools::Itertools;
use num_rational::Ratio;
use num_traits::Zero;

use super::lp::PhaseOne;
use super::{DistanceReport, Method};
use crate::error::{Error, Result};
use crate::geometry::{Halfspace, LabeledDataset, Point};
use crate::num::{self, ExactInt};

/// Default largest dataset accepted by [`exact_distance_sep`].
pub const DEFAULT_POINT_CAP: usize = 18;

/// Tests whether some halfspace labels every point of the dataset correctly,
/// returning a gcd-normalized witness on success.
pub fn is_separable<T: ExactInt>(ds: &LabeledDataset<T>) -> Result<Option<Halfspace<T>>> {
    ds.ensure_function()?;
    separating_halfspace(ds.points(), ds.labels())
}

/// Exact linear feasibility of
/// `<w,x> + theta >= 0` on label-1 points and `<w,x> + theta <= -1` on
/// label-0 points.
///
/// The `<= -1` form loses nothing on a finite set: if a strict separator has
/// margin `m > 0` on the label-0 side, scaling `(w, theta)` by `1/m` gives
/// value `<= -1` there and keeps the label-1 side non-negative.
pub(crate) fn separating_halfspace<T: ExactInt>(
    points: &[Point<T>],
    labels: &[bool],
) -> Result<Option<Halfspace<T>>> {
    let d = points.first().map_or(0, Point::dim);
    if labels.iter().all(|&l| l) {
        return Ok(Some(Halfspace::all_ones(d)));
    }
    if labels.iter().all(|&l| !l) {
        return Ok(Some(Halfspace::all_zeros(d)));
    }

    // Columns: z+ (d+1), z- (d+1), one slack per row, one artificial per
    // label-0 row, where z = (w, theta).
    let zc = d + 1;
    let n = points.len();
    let zeros_count = labels.iter().filter(|&&l| !l).count();
    let artificial_from = 2 * zc + n;
    let cols = artificial_from + zeros_count;
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    let mut basis = Vec::with_capacity(n);
    let mut next_art = artificial_from;
    for (i, (p, &label)) in points.iter().zip(labels).enumerate() {
        let mut row = vec![T::zero(); cols];
        // Both row kinds start as -a.z+ + a.z- with a = (x, 1).
        for (k, c) in p.0.iter().chain(std::iter::once(&T::one())).enumerate() {
            row[k] = num::neg(c)?;
            row[zc + k] = c.clone();
        }
        if label {
            // -a.z + s = 0
            row[2 * zc + i] = T::one();
            basis.push(2 * zc + i);
            rhs.push(T::zero());
        } else {
            // -a.z - s + art = 1
            row[2 * zc + i] = -T::one();
            row[next_art] = T::one();
            basis.push(next_art);
            next_art += 1;
            rhs.push(T::one());
        }
        rows.push(row);
    }

    let Some(x) = PhaseOne::new(rows, rhs, basis, artificial_from).solve()? else {
        return Ok(None);
    };
    let z: Vec<Ratio<T>> = (0..zc)
        .map(|k| num::rsub(&x[k], &x[zc + k]))
        .collect::<Result<_, _>>()?;
    let ints = num::clear_denominators(&z)?;
    let h = Halfspace::new(ints[..d].to_vec(), ints[d].clone()).normalized();
    for (p, &l) in points.iter().zip(labels) {
        if h.eval(p)? != l {
            return Err(Error::Invariant("simplex witness does not separate".into()));
        }
    }
    Ok(Some(h))
}

/// Minimum weighted disagreement over all separable relabelings, found by
/// enumerating flip sets in increasing size with weight-based pruning.
pub fn exact_distance_sep<T: ExactInt>(
    ds: &LabeledDataset<T>,
    point_cap: usize,
) -> Result<DistanceReport<T>> {
    ds.ensure_function()?;
    let n = ds.len();
    if n > point_cap {
        return Err(Error::CapExceeded { points: n, cap: point_cap });
    }
    let weights = ds.weights();
    let mut sorted: Vec<&Ratio<T>> = weights.iter().collect();
    sorted.sort();
    // smallest_k[j] = total of the j lightest weights, a lower bound on the
    // flip weight of any j-subset.
    let mut smallest_k = vec![Ratio::zero()];
    for w in sorted {
        let last = smallest_k.last().unwrap();
        smallest_k.push(num::radd(last, w)?);
    }

    let mut best: Option<(Ratio<T>, Halfspace<T>)> = None;
    let mut labels = ds.labels().to_vec();
    for (j, lower) in smallest_k.iter().enumerate() {
        if let Some((b, _)) = &best {
            if lower >= b {
                break;
            }
        }
        for flips in (0..n).combinations(j) {
            let weight = num::rsum(flips.iter().map(|&i| &weights[i]))?;
            if let Some((b, _)) = &best {
                if weight >= *b {
                    continue;
                }
            }
            for &i in &flips {
                labels[i] = !labels[i];
            }
            let found = separating_halfspace(ds.points(), &labels)?;
            for &i in &flips {
                labels[i] = !labels[i];
            }
            if let Some(h) = found {
                best = Some((weight, h));
            }
        }
    }
    // The all-ones relabeling is always separable, so `best` is set.
    let (distance, witness) = best.ok_or_else(|| Error::Invariant("no separable labeling".into()))?;
    DistanceReport::checked(ds, distance, witness, Method::Separability)
}
