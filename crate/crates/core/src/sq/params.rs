//! Parameter chain of the deterministic SQ lower bound.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoundParams {
    pub gamma: f64,
    pub d: usize,
    pub eps: f64,
    /// Family size `(1/eps)^(gamma (d-1) / 4)`.
    pub s: f64,
    /// Packing correlation `eps^(d eps)`.
    pub rho: f64,
    /// Alternations `1/eps - 1`.
    pub k: f64,
    /// Oracle tolerance `s^(-1/3)`.
    pub tau: f64,
}

impl LowerBoundParams {
    pub fn new(gamma: f64, d: usize, eps: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma < 1.0) || d < 2 || !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "need gamma in (0, 1), d >= 2, eps in (0, 1); got {gamma}, {d}, {eps}"
            )));
        }
        let s = (1.0 / eps).powf(gamma * (d as f64 - 1.0) / 4.0);
        Ok(LowerBoundParams {
            gamma,
            d,
            eps,
            s,
            rho: eps.powf(d as f64 * eps),
            k: 1.0 / eps - 1.0,
            tau: s.powf(-1.0 / 3.0),
        })
    }

    /// `2 rho^(k+1)`, which equals `2 eps^d`.
    pub fn pairwise_bound(&self) -> f64 {
        2.0 * self.rho.powf(self.k + 1.0)
    }

    /// The family is nearly orthogonal enough: `2 rho^(k+1) <= 1/s`.
    pub fn chain_holds(&self) -> bool {
        self.pairwise_bound() <= 1.0 / self.s
    }

    /// Query budget `(s^(1/3) - 1) / 2` below which a survivor must remain.
    pub fn query_budget(&self) -> f64 {
        (self.s.cbrt() - 1.0) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_holds_on_a_grid() {
        for gamma in [0.1, 0.5, 0.9, 0.99] {
            for d in 2..=8 {
                for eps in [0.4, 0.2, 0.1, 0.05, 0.01, 0.001] {
                    let p = LowerBoundParams::new(gamma, d, eps).unwrap();
                    assert!((p.pairwise_bound() - 2.0 * eps.powi(d as i32)).abs() <= 1e-9 * p.pairwise_bound());
                    assert!(p.chain_holds(), "{p:?}");
                    assert!((p.tau.powi(3) * p.s - 1.0).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(LowerBoundParams::new(1.0, 3, 0.1).is_err());
        assert!(LowerBoundParams::new(0.5, 1, 0.1).is_err());
        assert!(LowerBoundParams::new(0.5, 3, 0.0).is_err());
    }
}
