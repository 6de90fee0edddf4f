//! Hard families: projections of alternating profiles along packed
//! directions, explicit orthogonal families, and the bad-set count.

use statrs::distribution::{ContinuousCDF, Normal};

use super::support::{
    correlation, correlation_of_values, GaussianSupport, OnSupport, QuerySpec, SignFunction,
    UnitVector,
};
use crate::error::{Error, Result};
use crate::num::Real;

/// Standard normal quantiles `j/(k+1)`, `j = 1..k`.
pub fn normal_quantiles(k: usize) -> Vec<f64> {
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    (1..=k).map(|j| normal.inverse_cdf(j as f64 / (k + 1) as f64)).collect()
}

/// The profile with `k` sign changes at the normal quantiles, `+1` on the
/// top interval, composed with `<u, x>`.
pub fn projection_profile<F: Real>(u: &UnitVector<F>, k: usize) -> QuerySpec<F> {
    let breakpoints = normal_quantiles(k).into_iter().map(F::lit).collect();
    let signs = (0..=k).map(|i| if (k - i).is_multiple_of(2) { 1 } else { -1 }).collect();
    QuerySpec::ProjectionProfile { u: u.clone(), breakpoints, signs }
}

fn to_sign<F: Real>(values: Vec<F>) -> Result<SignFunction> {
    SignFunction::new(values.into_iter().map(|v| if v >= F::zero() { 1 } else { -1 }).collect())
}

/// `f_i(x) = profile(<u_i, x>)` on every atom of the support.
pub fn build_projection_family<F: Real>(
    vectors: &[UnitVector<F>],
    k: usize,
    support: &GaussianSupport<F>,
) -> Result<Vec<SignFunction>> {
    if k == 0 {
        return Err(Error::InvalidParameter("profiles need k >= 1".into()));
    }
    if support.atoms() < 2 {
        return Err(Error::Sq("degenerate support".into()));
    }
    vectors
        .iter()
        .map(|u| to_sign(projection_profile(u, k).values(support)?))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyReport<F> {
    /// Per member: best correlation with `sign(<u_i, x> - t)` and its `t`.
    pub best_halfspace: Vec<(F, F)>,
    /// Correlations `(i, j, E[f_i f_j])` for `i < j`.
    pub pairwise: Vec<(usize, usize, F)>,
}

impl<F: Real> FamilyReport<F> {
    pub fn max_pairwise(&self) -> F {
        self.pairwise.iter().fold(F::zero(), |m, (_, _, c)| m.max(c.abs()))
    }

    pub fn min_best_halfspace(&self) -> F {
        self.best_halfspace.iter().fold(F::infinity(), |m, (c, _)| m.min(*c))
    }
}

/// Empirical correlations of a projection family: each member against the
/// aligned halfspaces over a threshold grid (the profile breakpoints plus a
/// uniform grid on `[-4, 4]`), and all pairs against each other.
pub fn projection_family_report<F: Real>(
    vectors: &[UnitVector<F>],
    k: usize,
    family: &[SignFunction],
    support: &GaussianSupport<F>,
) -> Result<FamilyReport<F>> {
    let mut grid: Vec<F> = normal_quantiles(k).into_iter().map(F::lit).collect();
    grid.extend((0..=160).map(|i| F::lit(-4.0 + i as f64 * 0.05)));
    let mut best_halfspace = Vec::with_capacity(family.len());
    for (u, f) in vectors.iter().zip(family) {
        let fv = f.values(support)?;
        let proj: Vec<F> = support.base_points().iter().map(|p| u.dot(p)).collect();
        let mut best = (F::neg_infinity(), F::zero());
        for &t in &grid {
            let h: Vec<F> = proj
                .iter()
                .flat_map(|&x| {
                    let v = if x - t >= F::zero() { F::one() } else { -F::one() };
                    [v, v]
                })
                .collect();
            let c = correlation_of_values(&fv, &h) * support.atom_weight();
            if c > best.0 {
                best = (c, t);
            }
        }
        best_halfspace.push(best);
    }
    let mut pairwise = Vec::new();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            pairwise.push((i, j, correlation(support, &family[i], &family[j])?));
        }
    }
    Ok(FamilyReport { best_halfspace, pairwise })
}

/// Rows `0..s` of the Sylvester Hadamard matrix of order `M`, each value
/// repeated on both atoms of its base point. Pairwise correlations are
/// exactly zero. Requires `M` a power of two with `s <= M`.
pub fn orthogonal_family<F: Real>(s: usize, support: &GaussianSupport<F>) -> Result<Vec<SignFunction>> {
    let m = support.base_points().len();
    if !m.is_power_of_two() || s > m || s == 0 {
        return Err(Error::InvalidParameter(format!(
            "orthogonal family of size {s} needs a power-of-two number of base points >= s, got {m}"
        )));
    }
    Ok((0..s)
        .map(|r| {
            let values = (0..m)
                .flat_map(|c| {
                    let v = if (r & c).count_ones() % 2 == 0 { 1 } else { -1 };
                    [v, v]
                })
                .collect();
            SignFunction { values }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BadCount {
    /// `|{f : E[g f] >= tau}|`.
    pub positive: usize,
    /// `|{f : E[g f] <= -tau}|`.
    pub negative: usize,
    /// `floor(s / (s tau^2 - 1))`, or `None` when `s tau^2 <= 1` and the
    /// bound is vacuous.
    pub bound: Option<usize>,
}

/// Checks `|E[f_i f_j]| <= 1/s` for all distinct members.
pub fn check_pairwise<F: Real>(family: &[SignFunction], support: &GaussianSupport<F>) -> Result<()> {
    let s = family.len();
    let limit = F::one() / F::lit(s as f64) + F::lit(1e-12);
    let values = family.iter().map(|f| f.values(support)).collect::<Result<Vec<_>>>()?;
    for i in 0..s {
        for j in i + 1..s {
            let c = correlation_of_values(&values[i], &values[j]) * support.atom_weight();
            if c.abs() > limit {
                return Err(Error::Sq(format!(
                    "members {i} and {j} have correlation {c}, above 1/s = {}",
                    F::one() / F::lit(s as f64)
                )));
            }
        }
    }
    Ok(())
}

/// Members of the family with correlation at least `tau` with `g` (and at
/// most `-tau`), for a family of pairwise correlation at most `1/s`.
///
/// Counts are returned even when `s tau^2 <= 1`; only the bound is then
/// undefined.
pub fn count_bad<F: Real>(
    family: &[SignFunction],
    g: &QuerySpec<F>,
    tau: F,
    support: &GaussianSupport<F>,
) -> Result<BadCount> {
    let s = family.len();
    let st2 = F::lit(s as f64) * tau * tau;
    if s == 0 || !(tau > F::zero()) {
        return Err(Error::InvalidParameter(format!("need s >= 1 and tau > 0, got s = {s}, tau = {tau}")));
    }
    check_pairwise(family, support)?;
    let gv = g.values(support)?;
    let mut positive = 0;
    let mut negative = 0;
    for f in family {
        let c = correlation_of_values(&f.values(support)?, &gv) * support.atom_weight();
        if c >= tau {
            positive += 1;
        }
        if c <= -tau {
            negative += 1;
        }
    }
    let bound = (st2 > F::one())
        .then(|| (F::lit(s as f64) / (st2 - F::one())).floor().to_usize().unwrap_or(usize::MAX));
    Ok(BadCount { positive, negative, bound })
}
