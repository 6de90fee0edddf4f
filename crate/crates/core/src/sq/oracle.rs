use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::support::{correlation, round_toward_zero, GaussianSupport, QuerySpec, SignFunction};
use crate::error::{Error, Result};
use crate::num::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OracleMode {
    /// The true correlation.
    Exact,
    /// The true correlation rounded towards zero to a multiple of `tau`.
    Rounding,
    /// Always 0; only logs.
    AdversarialZero,
}

impl fmt::Display for OracleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleMode::Exact => "EXACT",
            OracleMode::Rounding => "ROUNDING",
            OracleMode::AdversarialZero => "ADVERSARIAL_ZERO",
        })
    }
}

impl FromStr for OracleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "EXACT" => Ok(OracleMode::Exact),
            "ROUNDING" => Ok(OracleMode::Rounding),
            "ADVERSARIAL_ZERO" => Ok(OracleMode::AdversarialZero),
            other => Err(Error::Parse(format!("unknown oracle mode {other:?}"))),
        }
    }
}

/// `Stat(tau)` for correlation queries, with an append-only query log.
#[derive(Debug, Clone)]
pub struct StatOracle<F> {
    tau: F,
    mode: OracleMode,
    log: Vec<QuerySpec<F>>,
}

impl<F: Real> StatOracle<F> {
    pub fn new(tau: F, mode: OracleMode) -> Result<Self> {
        if !(tau > F::zero()) {
            return Err(Error::InvalidParameter(format!("tau must be positive, got {tau}")));
        }
        Ok(StatOracle { tau, mode, log: Vec::new() })
    }

    pub fn tau(&self) -> F {
        self.tau
    }

    pub fn mode(&self) -> OracleMode {
        self.mode
    }

    pub fn log(&self) -> &[QuerySpec<F>] {
        &self.log
    }

    /// Answers `E[g(x) f(x)]` within `tau`, according to the mode.
    pub fn query(
        &mut self,
        support: &GaussianSupport<F>,
        f: &SignFunction,
        g: QuerySpec<F>,
    ) -> Result<F> {
        let answer = match self.mode {
            OracleMode::Exact => correlation(support, f, &g)?,
            OracleMode::Rounding => round_toward_zero(correlation(support, f, &g)?, self.tau)?,
            OracleMode::AdversarialZero => {
                g.validate()?;
                F::zero()
            }
        };
        self.log.push(g);
        Ok(answer)
    }
}

/// The only channel through which an SQ algorithm sees its input.
pub struct StatSession<'a, F> {
    oracle: &'a mut StatOracle<F>,
    support: &'a GaussianSupport<F>,
    target: &'a SignFunction,
}

impl<'a, F: Real> StatSession<'a, F> {
    pub fn new(
        oracle: &'a mut StatOracle<F>,
        support: &'a GaussianSupport<F>,
        target: &'a SignFunction,
    ) -> Self {
        StatSession { oracle, support, target }
    }

    pub fn ask(&mut self, g: QuerySpec<F>) -> Result<F> {
        self.oracle.query(self.support, self.target, g)
    }

    pub fn tau(&self) -> F {
        self.oracle.tau()
    }

    /// Atoms of the support, so algorithms can build table queries.
    pub fn atoms(&self) -> usize {
        self.support.atoms()
    }

    pub fn dim(&self) -> usize {
        self.support.dim()
    }
}
