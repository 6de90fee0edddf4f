use std::collections::HashSet;

use itertools::Itertools;
use num_rational::Ratio;
use num_traits::Zero;

use super::{tilt, Aggregated, Best, DistanceReport, Method};
use crate::error::Result;
use crate::geometry::{Halfspace, LabeledDataset};
use crate::num::{self, ExactInt};

/// Exact distance by hyperplane candidates with recursive boundary
/// refinement.
///
/// When the points affinely span the space, every separable labeling with
/// both classes present is realized by a weakly separating hyperplane
/// through `d` affinely independent data points (an extreme ray of the cone
/// of weak separators), with the points on that hyperplane labeled by a
/// lower-dimensional halfspace inside it. Points that span less than the
/// full space are projected onto a coordinate subspace that is injective on
/// their affine hull.
pub fn exact_distance_cand<T: ExactInt>(ds: &LabeledDataset<T>) -> Result<DistanceReport<T>> {
    let agg = Aggregated::from_dataset(ds)?;
    let best = solve(ds.dim(), &agg.points, &agg.labels, &agg.weights)?;
    DistanceReport::checked(ds, best.error, best.witness, Method::Candidates)
}

fn solve<T: ExactInt>(
    dim: usize,
    points: &[Vec<T>],
    labels: &[bool],
    weights: &[Ratio<T>],
) -> Result<Best<T>> {
    let mut ones = Ratio::zero();
    let mut zeros = Ratio::zero();
    for (l, w) in labels.iter().zip(weights) {
        if *l {
            ones = num::radd(&ones, w)?;
        } else {
            zeros = num::radd(&zeros, w)?;
        }
    }
    let mut best = Best::constants(dim, &ones, &zeros);
    if dim == 0 || points.len() < 2 || ones.is_zero() || zeros.is_zero() {
        return Ok(best);
    }

    let origin = &points[0];
    let diffs: Vec<Vec<T>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(origin).map(|(a, b)| num::sub(a, b)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let pivots = pivot_columns(&diffs, dim)?;
    if pivots.is_empty() {
        return Ok(best);
    }
    if pivots.len() < dim {
        let projected: Vec<Vec<T>> = points
            .iter()
            .map(|p| pivots.iter().map(|&c| p[c].clone()).collect())
            .collect();
        let sub = solve(pivots.len(), &projected, labels, weights)?;
        let mut w = vec![T::zero(); dim];
        for (&c, v) in pivots.iter().zip(sub.witness.w) {
            w[c] = v;
        }
        best.offer(sub.error, Halfspace::new(w, sub.witness.theta));
        return Ok(best);
    }

    let mut seen: HashSet<Vec<T>> = HashSet::new();
    for combo in (0..points.len()).combinations(dim) {
        let base = &points[combo[0]];
        let rows: Vec<Vec<T>> = combo[1..]
            .iter()
            .map(|&i| points[i].iter().zip(base).map(|(a, b)| num::sub(a, b)).collect())
            .collect::<Result<_, _>>()?;
        let normal = normal_vector(&rows, dim)?;
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let theta = num::neg(&num::dot(&normal, base)?)?;
        let plane = canonical(Halfspace::new(normal, theta));
        if !seen.insert(plane.lex_key()) {
            continue;
        }

        let values: Vec<T> = points
            .iter()
            .map(|p| num::add(&num::dot(&plane.w, p)?, &plane.theta))
            .collect::<Result<_, _>>()?;
        let mut off_pos = Ratio::zero();
        let mut off_neg = Ratio::zero();
        for ((v, &l), w) in values.iter().zip(labels).zip(weights) {
            if v.is_positive() {
                if l {
                    off_neg = num::radd(&off_neg, w)?;
                } else {
                    off_pos = num::radd(&off_pos, w)?;
                }
            } else if v.is_negative() {
                if l {
                    off_pos = num::radd(&off_pos, w)?;
                } else {
                    off_neg = num::radd(&off_neg, w)?;
                }
            }
        }
        if !best.admits(&off_pos) && !best.admits(&off_neg) {
            continue;
        }

        // Points on the plane, with the first coordinate the plane depends
        // on dropped: an affine bijection from the plane onto R^(dim-1).
        let drop = plane.w.iter().position(|c| !c.is_zero()).unwrap();
        let on_plane: Vec<bool> = values.iter().map(Zero::is_zero).collect();
        let mut sub_points = Vec::new();
        let mut sub_labels = Vec::new();
        let mut sub_weights = Vec::new();
        for (i, _) in on_plane.iter().enumerate().filter(|(_, &on)| on) {
            let mut p = points[i].clone();
            p.remove(drop);
            sub_points.push(p);
            sub_labels.push(labels[i]);
            sub_weights.push(weights[i].clone());
        }
        let sub = solve(dim - 1, &sub_points, &sub_labels, &sub_weights)?;
        let mut g_w = sub.witness.w.clone();
        g_w.insert(drop, T::zero());
        let g = Halfspace::new(g_w, sub.witness.theta.clone());

        for (oriented, off) in [(plane.clone(), off_pos), (plane.negated()?, off_neg)] {
            let total = num::radd(&off, &sub.error)?;
            if best.admits(&total) {
                let witness = tilt(&oriented, &g, points, &on_plane)?;
                best.offer(total, witness);
            }
        }
    }
    Ok(best)
}

/// Normalizes by gcd and makes the first non-zero entry of `w` positive.
fn canonical<T: ExactInt>(h: Halfspace<T>) -> Halfspace<T> {
    let h = h.normalized();
    match h.w.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => h.negated().expect("negation of a normalized vector"),
        _ => h,
    }
}

/// Pivot columns of a row-echelon reduction: a set of coordinates on which
/// the projection of the row span is injective.
pub(crate) fn pivot_columns<T: ExactInt>(rows: &[Vec<T>], ncols: usize) -> Result<Vec<usize>> {
    let mut basis: Vec<(usize, Vec<T>)> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for (c, b) in &basis {
            if r[*c].is_zero() {
                continue;
            }
            let p = b[*c].clone();
            let f = r[*c].clone();
            let mut g = T::zero();
            for (x, y) in r.iter_mut().zip(b) {
                *x = num::sub(&num::mul(x, &p)?, &num::mul(&f, y)?)?;
                g = g.gcd(x);
            }
            if !g.is_zero() {
                for x in r.iter_mut() {
                    *x = x.clone() / g.clone();
                }
            }
        }
        if let Some(c) = r.iter().position(|x| !x.is_zero()) {
            basis.push((c, r));
            if basis.len() == ncols {
                break;
            }
        }
    }
    let mut cols: Vec<usize> = basis.into_iter().map(|(c, _)| c).collect();
    cols.sort_unstable();
    Ok(cols)
}

/// Vector orthogonal to the `dim - 1` given rows (generalized cross
/// product): entry `j` is `(-1)^j` times the minor with column `j` removed.
/// Zero iff the rows are linearly dependent.
pub(crate) fn normal_vector<T: ExactInt>(rows: &[Vec<T>], dim: usize) -> Result<Vec<T>> {
    debug_assert_eq!(rows.len() + 1, dim);
    (0..dim)
        .map(|j| {
            let minor: Vec<Vec<T>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let d = determinant(minor)?;
            Ok(if j % 2 == 0 { d } else { num::neg(&d)? })
        })
        .collect()
}

/// Bareiss fraction-free determinant.
pub(crate) fn determinant<T: ExactInt>(mut m: Vec<Vec<T>>) -> Result<T> {
    let n = m.len();
    if n == 0 {
        return Ok(T::one());
    }
    let mut sign = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = num::sub(&num::mul(&m[i][j], &m[k][k])?, &num::mul(&m[i][k], &m[k][j])?)?;
                m[i][j] = v / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if sign { num::neg(&d)? } else { d })
}
