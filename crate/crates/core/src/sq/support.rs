//! Finite Gaussian surrogate, sign functions, queries and correlations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::Real;
use crate::rng::{self, PolarNormal};

/// `sign(x) * tau * floor(|x| / tau)`: the nearest multiple of `tau`,
/// rounding towards zero.
pub fn round_toward_zero<F: Real>(x: F, tau: F) -> Result<F> {
    if !(tau > F::zero()) {
        return Err(Error::InvalidParameter(format!("tau must be positive, got {tau}")));
    }
    let a = x.abs();
    let mut q = (a / tau).floor();
    // The quotient can round across an integer; fix it against the product.
    if q * tau > a {
        q = q - F::one();
    } else if (q + F::one()) * tau <= a {
        q = q + F::one();
    }
    if q == F::zero() {
        return Ok(F::zero());
    }
    Ok(x.signum() * tau * q)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitVector<F> {
    pub coords: Vec<F>,
}

impl<F: Real> UnitVector<F> {
    /// Accepts `coords` only if its norm is 1 within tolerance.
    pub fn new(coords: Vec<F>) -> Result<Self> {
        let norm = norm(&coords);
        if (norm - F::one()).abs() > F::norm_tolerance() {
            return Err(Error::Sq(format!("vector has norm {norm}, not 1")));
        }
        Ok(UnitVector { coords })
    }

    /// Normalizes a non-zero vector.
    pub fn normalize(coords: Vec<F>) -> Result<Self> {
        let norm = norm(&coords);
        if !(norm > F::zero()) || !norm.is_finite() {
            return Err(Error::Sq("cannot normalize a zero vector".into()));
        }
        UnitVector::new(coords.into_iter().map(|c| c / norm).collect())
    }

    pub fn basis(d: usize, i: usize) -> Self {
        let mut coords = vec![F::zero(); d];
        coords[i] = F::one();
        UnitVector { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn dot(&self, x: &[F]) -> F {
        dot(&self.coords, x)
    }
}

pub(crate) fn dot<F: Real>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + *x * *y)
}

pub(crate) fn norm<F: Real>(a: &[F]) -> F {
    dot(a, a).sqrt()
}

/// `M` base points drawn from `N(0, I_d)`, each carried by two atoms of
/// weight `1/(2M)`. Atoms `2i` and `2i + 1` share base point `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSupport<F> {
    dim: usize,
    base: Vec<Vec<F>>,
}

impl<F: Real> GaussianSupport<F> {
    pub fn sample(dim: usize, base_points: usize, seed: u64) -> Result<Self> {
        if dim == 0 || base_points == 0 {
            return Err(Error::InvalidParameter("support needs d >= 1 and M >= 1".into()));
        }
        let mut rng = rng::seeded(seed);
        let mut normal = PolarNormal::new();
        let base = (0..base_points)
            .map(|_| (0..dim).map(|_| F::lit(normal.sample(&mut rng))).collect())
            .collect();
        Ok(GaussianSupport { dim, base })
    }

    pub fn from_base_points(base: Vec<Vec<F>>) -> Result<Self> {
        let dim = base.first().map_or(0, Vec::len);
        if dim == 0 || base.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidParameter("base points must share a positive dimension".into()));
        }
        Ok(GaussianSupport { dim, base })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base_points(&self) -> &[Vec<F>] {
        &self.base
    }

    pub fn atoms(&self) -> usize {
        2 * self.base.len()
    }

    pub fn atom_weight(&self) -> F {
        F::one() / F::lit(self.atoms() as f64)
    }

    /// Base point carrying atom `a`.
    pub fn point(&self, atom: usize) -> &[F] {
        &self.base[atom / 2]
    }
}

/// A `{-1, +1}` function given by its value on every atom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignFunction {
    pub values: Vec<i8>,
}

impl SignFunction {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::Sq("sign functions take values in {-1, +1}".into()));
        }
        Ok(SignFunction { values })
    }

    pub fn negate(&self) -> Self {
        SignFunction { values: self.values.iter().map(|v| -v).collect() }
    }
}

/// A bounded query function `g : R^d -> [-1, 1]`, used as the correlation
/// query `q(x, y) = g(x) y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QuerySpec<F> {
    /// `+1` if `<w, x> + theta >= 0`, else `-1`.
    HalfspaceSign { w: Vec<F>, theta: F },
    /// `signs[i]` on the `i`-th interval of `<u, x>` cut at `breakpoints`.
    ProjectionProfile { u: UnitVector<F>, breakpoints: Vec<F>, signs: Vec<i8> },
    /// Explicit value per atom.
    Table { values: Vec<F> },
}

impl<F: Real> QuerySpec<F> {
    pub fn validate(&self) -> Result<()> {
        match self {
            QuerySpec::HalfspaceSign { .. } => Ok(()),
            QuerySpec::ProjectionProfile { breakpoints, signs, .. } => {
                if signs.len() != breakpoints.len() + 1 {
                    return Err(Error::Sq("profile needs one sign per interval".into()));
                }
                if breakpoints.windows(2).any(|w| !(w[0] <= w[1])) {
                    return Err(Error::Sq("profile breakpoints must be sorted".into()));
                }
                if signs.iter().any(|&s| s != 1 && s != -1) {
                    return Err(Error::Sq("profile signs must be +1 or -1".into()));
                }
                Ok(())
            }
            QuerySpec::Table { values } => {
                if values.iter().any(|v| !(v.abs() <= F::one())) {
                    return Err(Error::Sq("table values must lie in [-1, 1]".into()));
                }
                Ok(())
            }
        }
    }

    /// Number of sign changes of a profile, if this is one.
    pub fn alternations(&self) -> Option<usize> {
        match self {
            QuerySpec::ProjectionProfile { signs, .. } => {
                Some(signs.windows(2).filter(|w| w[0] != w[1]).count())
            }
            _ => None,
        }
    }

    /// Value at a point of `R^d` (tables have no pointwise meaning).
    pub fn at(&self, x: &[F]) -> Option<F> {
        match self {
            QuerySpec::HalfspaceSign { w, theta } => {
                Some(if dot(w, x) + *theta >= F::zero() { F::one() } else { -F::one() })
            }
            QuerySpec::ProjectionProfile { u, breakpoints, signs } => {
                let t = u.dot(x);
                let i = breakpoints.partition_point(|b| *b <= t);
                Some(F::lit(signs[i] as f64))
            }
            QuerySpec::Table { .. } => None,
        }
    }

    /// The same query rounded towards zero to multiples of `step`, as a
    /// table.
    pub fn rounded(&self, support: &GaussianSupport<F>, step: F) -> Result<Self> {
        let values = self
            .values(support)?
            .into_iter()
            .map(|v| round_toward_zero(v, step))
            .collect::<Result<_>>()?;
        Ok(QuerySpec::Table { values })
    }
}

/// Anything with a value on every atom of a support.
pub trait OnSupport<F: Real> {
    fn values(&self, support: &GaussianSupport<F>) -> Result<Vec<F>>;
}

impl<F: Real> OnSupport<F> for SignFunction {
    fn values(&self, support: &GaussianSupport<F>) -> Result<Vec<F>> {
        if self.values.len() != support.atoms() {
            return Err(Error::Sq(format!(
                "function has {} values, support has {} atoms",
                self.values.len(),
                support.atoms()
            )));
        }
        Ok(self.values.iter().map(|&v| F::lit(v as f64)).collect())
    }
}

impl<F: Real> OnSupport<F> for QuerySpec<F> {
    fn values(&self, support: &GaussianSupport<F>) -> Result<Vec<F>> {
        self.validate()?;
        match self {
            QuerySpec::Table { values } => {
                if values.len() != support.atoms() {
                    return Err(Error::Sq(format!(
                        "table has {} values, support has {} atoms",
                        values.len(),
                        support.atoms()
                    )));
                }
                Ok(values.clone())
            }
            QuerySpec::HalfspaceSign { w, .. } if w.len() != support.dim() => {
                Err(Error::DimensionMismatch { expected: support.dim(), got: w.len() })
            }
            QuerySpec::ProjectionProfile { u, .. } if u.dim() != support.dim() => {
                Err(Error::DimensionMismatch { expected: support.dim(), got: u.dim() })
            }
            _ => {
                let mut out = Vec::with_capacity(support.atoms());
                for p in support.base_points() {
                    let v = self.at(p).expect("pointwise query");
                    out.push(v);
                    out.push(v);
                }
                Ok(out)
            }
        }
    }
}

/// `E[a(x) b(x)]` over the support. Each pair of atoms is summed before
/// accumulating, so a function that is opposite on the two atoms of every
/// pair has correlation exactly zero with any pair-constant function.
pub fn correlation<F: Real>(
    support: &GaussianSupport<F>,
    a: &impl OnSupport<F>,
    b: &impl OnSupport<F>,
) -> Result<F> {
    let a = a.values(support)?;
    let b = b.values(support)?;
    Ok(correlation_of_values(&a, &b) * support.atom_weight())
}

pub(crate) fn correlation_of_values<F: Real>(a: &[F], b: &[F]) -> F {
    a.chunks(2)
        .zip(b.chunks(2))
        .fold(F::zero(), |acc, (x, y)| acc + (x[0] * y[0] + x[1] * y[1]))
}

/// Whether both atoms of every pair carry the same value.
pub fn is_pair_constant<F: Real>(values: &[F]) -> bool {
    values.len().is_multiple_of(2) && values.chunks(2).all(|p| p[0] == p[1])
}
