use std::cmp::Ordering;

use num_rational::Ratio;
use num_traits::Zero;

use super::{tilt, Aggregated, Best, DistanceReport, Method};
use crate::error::{Error, Result};
use crate::geometry::{Halfspace, LabeledDataset};
use crate::num::{self, ExactInt};

/// One-dimensional exact distance: sort, then try every threshold between
/// consecutive distinct values in both orientations using prefix sums.
pub fn exact_distance_1d<T: ExactInt>(ds: &LabeledDataset<T>) -> Result<DistanceReport<T>> {
    if ds.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: ds.dim() });
    }
    let agg = Aggregated::from_dataset(ds)?;
    let entries: Vec<(T, bool, Ratio<T>)> = agg
        .points
        .iter()
        .zip(&agg.labels)
        .zip(&agg.weights)
        .map(|((p, &l), w)| (p[0].clone(), l, w.clone()))
        .collect();
    let best = best_threshold(entries)?;
    DistanceReport::checked(ds, best.error, best.witness, Method::Sweep1d)
}

/// Best 1-d halfspace `1{w t + theta >= 0}` for weighted labeled values.
pub(crate) fn best_threshold<T: ExactInt>(mut entries: Vec<(T, bool, Ratio<T>)>) -> Result<Best<T>> {
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let mut total_ones = Ratio::zero();
    let mut total_zeros = Ratio::zero();
    for (_, l, w) in &entries {
        if *l {
            total_ones = num::radd(&total_ones, w)?;
        } else {
            total_zeros = num::radd(&total_zeros, w)?;
        }
    }
    let mut best = Best::constants(1, &total_ones, &total_zeros);

    // Weights of each label strictly below the current group.
    let mut below_ones = Ratio::zero();
    let mut below_zeros = Ratio::zero();
    let mut i = 0;
    while i < entries.len() {
        let t = entries[i].0.clone();
        let mut group_ones = Ratio::zero();
        let mut group_zeros = Ratio::zero();
        while i < entries.len() && entries[i].0 == t {
            if entries[i].1 {
                group_ones = num::radd(&group_ones, &entries[i].2)?;
            } else {
                group_zeros = num::radd(&group_zeros, &entries[i].2)?;
            }
            i += 1;
        }
        // x >= t: label-1 below are wrong, label-0 at or above are wrong.
        let upper = num::radd(&below_ones, &num::rsub(&total_zeros, &below_zeros)?)?;
        if best.admits(&upper) {
            best.offer(upper, Halfspace::new(vec![T::one()], num::neg(&t)?));
        }
        let through_ones = num::radd(&below_ones, &group_ones)?;
        let through_zeros = num::radd(&below_zeros, &group_zeros)?;
        // x <= t: label-0 at or below are wrong, label-1 above are wrong.
        let lower = num::radd(&through_zeros, &num::rsub(&total_ones, &through_ones)?)?;
        if best.admits(&lower) {
            best.offer(lower, Halfspace::new(vec![-T::one()], t.clone()));
        }
        below_ones = through_ones;
        below_zeros = through_zeros;
    }
    Ok(best)
}

struct Spoke<T: ExactInt> {
    index: usize,
    /// `q - p` flipped into the upper half-plane.
    dir: [T; 2],
    reversed: bool,
}

fn cross<T: ExactInt>(a: &[T; 2], b: &[T; 2]) -> Result<T> {
    Ok(num::sub(&num::mul(&a[0], &b[1])?, &num::mul(&a[1], &b[0])?)?)
}

/// Two-dimensional exact distance by a rotational sweep around every pivot.
///
/// For each pivot the other points are sorted by the direction of the line
/// through the pivot (angle in `[0, pi)`). Sweeping the directed line across
/// those directions moves each point between the left and right side exactly
/// once, so side weights update incrementally. At each critical direction the
/// points on the line form a 1-d subproblem solved by [`best_threshold`],
/// which realizes every boundary treatment by an infinitesimal tilt.
pub fn exact_distance_2d<T: ExactInt>(ds: &LabeledDataset<T>) -> Result<DistanceReport<T>> {
    if ds.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: ds.dim() });
    }
    let agg = Aggregated::from_dataset(ds)?;
    let (ones, zeros) = agg.label_weights()?;
    let mut best = Best::constants(2, &ones, &zeros);
    let pts = &agg.points;
    let n = pts.len();
    if n >= 2 && !ones.is_zero() && !zeros.is_zero() {
        for a in 0..n {
            sweep_pivot(&agg, a, &mut best)?;
        }
    }
    DistanceReport::checked(ds, best.error, best.witness, Method::Sweep2d)
}

fn sweep_pivot<T: ExactInt>(agg: &Aggregated<T>, a: usize, best: &mut Best<T>) -> Result<()> {
    let pts = &agg.points;
    let p = &pts[a];
    let mut spokes = Vec::with_capacity(pts.len() - 1);
    for (i, q) in pts.iter().enumerate() {
        if i == a {
            continue;
        }
        let mut dir = [num::sub(&q[0], &p[0])?, num::sub(&q[1], &p[1])?];
        let reversed = dir[1].is_negative() || (dir[1].is_zero() && dir[0].is_negative());
        if reversed {
            dir = [num::neg(&dir[0])?, num::neg(&dir[1])?];
        }
        spokes.push(Spoke { index: i, dir, reversed });
    }
    // Ascending angle in [0, pi): a precedes b iff cross(a, b) > 0.
    let mut failure = None;
    spokes.sort_by(|s, t| match cross(&s.dir, &t.dir) {
        Ok(c) if c.is_positive() => Ordering::Less,
        Ok(c) if c.is_negative() => Ordering::Greater,
        Ok(_) => Ordering::Equal,
        Err(e) => {
            failure = Some(e);
            Ordering::Equal
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }

    // Just before the first direction: unreversed spokes are left of the
    // directed line, reversed ones right.
    let zero = Ratio::<T>::zero();
    let (mut left_ones, mut left_zeros) = (zero.clone(), zero.clone());
    let (mut right_ones, mut right_zeros) = (zero.clone(), zero.clone());
    for s in &spokes {
        let w = &agg.weights[s.index];
        match (s.reversed, agg.labels[s.index]) {
            (false, true) => left_ones = num::radd(&left_ones, w)?,
            (false, false) => left_zeros = num::radd(&left_zeros, w)?,
            (true, true) => right_ones = num::radd(&right_ones, w)?,
            (true, false) => right_zeros = num::radd(&right_zeros, w)?,
        }
    }

    let mut start = 0;
    while start < spokes.len() {
        let mut end = start + 1;
        while end < spokes.len() && cross(&spokes[start].dir, &spokes[end].dir)?.is_zero() {
            end += 1;
        }
        let block = &spokes[start..end];
        for s in block {
            let w = &agg.weights[s.index];
            match (s.reversed, agg.labels[s.index]) {
                (false, true) => left_ones = num::rsub(&left_ones, w)?,
                (false, false) => left_zeros = num::rsub(&left_zeros, w)?,
                (true, true) => right_ones = num::rsub(&right_ones, w)?,
                (true, false) => right_zeros = num::rsub(&right_zeros, w)?,
            }
        }

        // Left side positive: left label-0 and right label-1 are wrong.
        let off_left = num::radd(&left_zeros, &right_ones)?;
        let off_right = num::radd(&left_ones, &right_zeros)?;
        if best.admits(&off_left) || best.admits(&off_right) {
            evaluate_line(agg, a, block, off_left, off_right, best)?;
        }

        for s in block {
            let w = &agg.weights[s.index];
            match (s.reversed, agg.labels[s.index]) {
                (false, true) => right_ones = num::radd(&right_ones, w)?,
                (false, false) => right_zeros = num::radd(&right_zeros, w)?,
                (true, true) => left_ones = num::radd(&left_ones, w)?,
                (true, false) => left_zeros = num::radd(&left_zeros, w)?,
            }
        }
        start = end;
    }
    Ok(())
}

fn evaluate_line<T: ExactInt>(
    agg: &Aggregated<T>,
    a: usize,
    block: &[Spoke<T>],
    off_left: Ratio<T>,
    off_right: Ratio<T>,
    best: &mut Best<T>,
) -> Result<()> {
    let p = &agg.points[a];
    let g = block[0].dir[0].gcd(&block[0].dir[1]);
    let u = [block[0].dir[0].clone() / g.clone(), block[0].dir[1].clone() / g];

    // Positions along the line, measured by <u, q - p>.
    let mut entries = vec![(T::zero(), agg.labels[a], agg.weights[a].clone())];
    for s in block {
        let q = &agg.points[s.index];
        let t = num::add(
            &num::mul(&u[0], &num::sub(&q[0], &p[0])?)?,
            &num::mul(&u[1], &num::sub(&q[1], &p[1])?)?,
        )?;
        entries.push((t, agg.labels[s.index], agg.weights[s.index].clone()));
    }
    let line = best_threshold(entries)?;

    // cross(u, x - p) = -u1 x0 + u0 x1 + (u1 p0 - u0 p1): positive on the left.
    let left = Halfspace::new(
        vec![num::neg(&u[1])?, u[0].clone()],
        num::sub(&num::mul(&u[1], &p[0])?, &num::mul(&u[0], &p[1])?)?,
    );
    // Lift the 1-d witness: g(x) = w1 <u, x - p> + theta1.
    let w1 = &line.witness.w[0];
    let up = num::add(&num::mul(&u[0], &p[0])?, &num::mul(&u[1], &p[1])?)?;
    let g_lift = Halfspace::new(
        vec![num::mul(w1, &u[0])?, num::mul(w1, &u[1])?],
        num::sub(&line.witness.theta, &num::mul(w1, &up)?)?,
    );

    let mut on_line = vec![false; agg.points.len()];
    on_line[a] = true;
    for s in block {
        on_line[s.index] = true;
    }
    for (plane, off) in [(left.clone(), off_left), (left.negated()?, off_right)] {
        let total = num::radd(&off, &line.error)?;
        if best.admits(&total) {
            let witness = tilt(&plane, &g_lift, &agg.points, &on_line)?;
            best.offer(total, witness);
        }
    }
    Ok(())
}
