//! Random packings on the sphere and the extreme-angle law.

use rayon::prelude::*;

use super::support::{dot, norm, UnitVector};
use crate::error::{Error, Result};
use crate::num::Real;
use crate::rng::{self, PolarNormal, Rng};

/// Largest `|<u, v>|` over distinct pairs.
pub fn max_abs_inner<F: Real>(vectors: &[UnitVector<F>]) -> F {
    let mut worst = F::zero();
    for (i, u) in vectors.iter().enumerate() {
        for v in &vectors[i + 1..] {
            worst = worst.max(dot(&u.coords, &v.coords).abs());
        }
    }
    worst
}

/// Whether every distinct pair satisfies `|<u, v>| <= threshold` and every
/// vector is a unit vector.
pub fn validate_packing<F: Real>(vectors: &[UnitVector<F>], threshold: F) -> bool {
    vectors
        .iter()
        .all(|u| (norm(&u.coords) - F::one()).abs() <= F::norm_tolerance())
        && max_abs_inner(vectors) <= threshold
}

/// A uniform unit vector: a normalized Gaussian.
pub fn random_unit<F: Real>(d: usize, rng: &mut Rng, normal: &mut PolarNormal) -> UnitVector<F> {
    loop {
        let g: Vec<F> = (0..d).map(|_| F::lit(normal.sample(rng))).collect();
        if let Ok(u) = UnitVector::normalize(g) {
            return u;
        }
    }
}

/// Samples `m` i.i.d. uniform unit vectors until all pairwise `|<u, v>|` are
/// at most `threshold`, for up to `max_retries` attempts.
pub fn sample_packing<F: Real>(
    d: usize,
    m: usize,
    threshold: F,
    max_retries: usize,
    seed: u64,
) -> Result<Vec<UnitVector<F>>> {
    if d < 2 || m < 2 {
        return Err(Error::InvalidParameter(format!("need d >= 2 and m >= 2, got d={d}, m={m}")));
    }
    if threshold < F::zero() {
        return Err(Error::PackingFailed { retries: 0, best: f64::INFINITY });
    }
    let mut rng = rng::seeded(seed);
    let mut normal = PolarNormal::new();
    let mut best = F::infinity();
    for _ in 0..max_retries {
        let set: Vec<UnitVector<F>> = (0..m).map(|_| random_unit(d, &mut rng, &mut normal)).collect();
        let worst = max_abs_inner(&set);
        if worst <= threshold {
            if !validate_packing(&set, threshold) {
                return Err(Error::Invariant("packing fails its own post-check".into()));
            }
            return Ok(set);
        }
        best = best.min(worst);
    }
    Err(Error::PackingFailed { retries: max_retries, best: best.to_f64().unwrap_or(f64::NAN) })
}

/// `m = ceil((1/eps)^(b d))` vectors with threshold `eps^(a eps)`; requires
/// `b < (d-1)/(4d)`.
pub fn packing_parameters(d: usize, eps: f64, a: f64, b: f64) -> Result<(usize, f64)> {
    if d < 2 || !(eps > 0.0 && eps < 1.0) || !(a > 0.0) || !(b > 0.0) {
        return Err(Error::InvalidParameter("need d >= 2, eps in (0, 1), a, b > 0".into()));
    }
    let limit = (d as f64 - 1.0) / (4.0 * d as f64);
    if b >= limit {
        return Err(Error::InvalidParameter(format!("b = {b} must be below (d-1)/(4d) = {limit}")));
    }
    let m = (1.0 / eps).powf(b * d as f64).ceil() as usize;
    Ok((m, eps.powf(a * eps)))
}

/// Angle between unit vectors, `2 atan2(|u - v|, |u + v|)` (accurate near 0
/// and pi).
pub fn angle<F: Real>(u: &UnitVector<F>, v: &UnitVector<F>) -> F {
    let diff: Vec<F> = u.coords.iter().zip(&v.coords).map(|(a, b)| *a - *b).collect();
    let sum: Vec<F> = u.coords.iter().zip(&v.coords).map(|(a, b)| *a + *b).collect();
    F::lit(2.0) * norm(&diff).atan2(norm(&sum))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleStats<F> {
    pub theta_min: F,
    pub theta_max: F,
    /// `n^(2/(d-1)) theta_min`.
    pub scaled_min: F,
    /// `n^(2/(d-1)) (pi - theta_max)`.
    pub scaled_max: F,
}

pub fn angle_stats<F: Real>(vectors: &[UnitVector<F>]) -> Result<AngleStats<F>> {
    let n = vectors.len();
    if n < 2 {
        return Err(Error::InvalidParameter("angle statistics need at least 2 vectors".into()));
    }
    let d = vectors[0].dim();
    if d < 2 {
        return Err(Error::InvalidParameter("angle statistics need d >= 2".into()));
    }
    let mut theta_min = F::infinity();
    let mut theta_max = F::neg_infinity();
    for (i, u) in vectors.iter().enumerate() {
        for v in &vectors[i + 1..] {
            let a = angle(u, v);
            theta_min = theta_min.min(a);
            theta_max = theta_max.max(a);
        }
    }
    let scale = F::lit((n as f64).powf(2.0 / (d as f64 - 1.0)));
    let pi = F::lit(std::f64::consts::PI);
    Ok(AngleStats {
        theta_min,
        theta_max,
        scaled_min: scale * theta_min,
        scaled_max: scale * (pi - theta_max),
    })
}

/// Fit of `F(x) = 1 - exp(-K x^(d-1))` to a sample of scaled extreme angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LawFit {
    /// Maximum-likelihood `K = N / sum x^(d-1)`.
    pub k: f64,
    /// Kolmogorov-Smirnov distance between the empirical and fitted CDFs.
    pub ks: f64,
}

pub fn fit_angle_law(samples: &[f64], d: usize) -> LawFit {
    let p = d as f64 - 1.0;
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let k = xs.len() as f64 / xs.iter().map(|x| x.powf(p)).sum::<f64>();
    let n = xs.len() as f64;
    let ks = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let cdf = 1.0 - (-k * x.powf(p)).exp();
            (cdf - i as f64 / n).abs().max(((i + 1) as f64 / n - cdf).abs())
        })
        .fold(0.0, f64::max);
    LawFit { k, ks }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngleLawReport {
    pub d: usize,
    pub n: usize,
    pub trials: usize,
    pub scaled_min: Vec<f64>,
    pub scaled_max: Vec<f64>,
    pub min_fit: LawFit,
    pub max_fit: LawFit,
}

impl AngleLawReport {
    /// Worse of the two fitted-CDF deviations.
    pub fn max_deviation(&self) -> f64 {
        self.min_fit.ks.max(self.max_fit.ks)
    }
}

/// Repeats [`angle_stats`] on `n` uniform unit vectors in `R^d` and fits the
/// limit law to both scaled extremes.
pub fn angle_law_report(d: usize, n: usize, trials: usize, seed: u64) -> Result<AngleLawReport> {
    if d < 2 || n < 2 || trials == 0 {
        return Err(Error::InvalidParameter("need d >= 2, n >= 2 and at least one trial".into()));
    }
    let stats: Vec<AngleStats<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng::seeded(rng::derive_seed(seed, t as u64));
            let mut normal = PolarNormal::new();
            let vs: Vec<UnitVector<f64>> =
                (0..n).map(|_| random_unit(d, &mut rng, &mut normal)).collect();
            angle_stats(&vs)
        })
        .collect::<Result<_>>()?;
    let scaled_min: Vec<f64> = stats.iter().map(|s| s.scaled_min).collect();
    let scaled_max: Vec<f64> = stats.iter().map(|s| s.scaled_max).collect();
    Ok(AngleLawReport {
        d,
        n,
        trials,
        min_fit: fit_angle_law(&scaled_min, d),
        max_fit: fit_angle_law(&scaled_max, d),
        scaled_min,
        scaled_max,
    })
}
