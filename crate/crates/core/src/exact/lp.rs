//! Exact phase-one simplex on an integer (fraction-free) tableau.
//!
//! Rows are kept as integer vectors scaled by an arbitrary positive factor;
//! after each pivot every touched row is divided by the gcd of its entries,
//! which bounds coefficient growth by the size of the underlying minors.
//! Bland's rule (smallest eligible index for both entering and leaving
//! variables) guarantees termination on degenerate systems.

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::num::{self, ExactInt};

/// Feasibility problem `A x = b`, `x >= 0` with `b >= 0` and an initial basis
/// given as one identity column per row (coefficient 1, zero elsewhere).
/// Columns at index `artificial_from..` are artificial and carry cost 1.
#[derive(Debug, Clone)]
pub(crate) struct PhaseOne<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    artificial_from: usize,
}

impl<T: ExactInt> PhaseOne<T> {
    pub(crate) fn new(
        rows: Vec<Vec<T>>,
        rhs: Vec<T>,
        basis: Vec<usize>,
        artificial_from: usize,
    ) -> Self {
        debug_assert_eq!(rows.len(), rhs.len());
        debug_assert_eq!(rows.len(), basis.len());
        debug_assert!(rhs.iter().all(|b| !b.is_negative()));
        PhaseOne { rows, rhs, basis, artificial_from }
    }

    /// Returns a feasible point, or `None` when the system is infeasible.
    pub(crate) fn solve(mut self) -> Result<Option<Vec<Ratio<T>>>> {
        let cols = self.rows.first().map_or(0, Vec::len);
        // Reduced costs of the phase-one objective (sum of artificials),
        // scaled by an implicit positive factor. The objective value is
        // `-obj_rhs / scale`.
        let mut obj = vec![T::zero(); cols];
        let mut obj_rhs = T::zero();
        for c in obj.iter_mut().skip(self.artificial_from) {
            *c = T::one();
        }
        for i in 0..self.rows.len() {
            if self.basis[i] >= self.artificial_from {
                for (c, a) in obj.iter_mut().zip(&self.rows[i]) {
                    *c = num::sub(c, a)?;
                }
                obj_rhs = num::sub(&obj_rhs, &self.rhs[i])?;
            }
        }

        loop {
            let entering = (0..self.artificial_from).find(|&j| obj[j].is_negative());
            let Some(c) = entering else { break };

            let mut leave: Option<usize> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                leave = Some(match leave {
                    None => i,
                    Some(k) => {
                        // compare rhs_i / a_ic with rhs_k / a_kc
                        let lhs = num::mul(&self.rhs[i], &self.rows[k][c])?;
                        let rhs = num::mul(&self.rhs[k], a)?;
                        match lhs.cmp(&rhs) {
                            std::cmp::Ordering::Less => i,
                            std::cmp::Ordering::Greater => k,
                            std::cmp::Ordering::Equal => {
                                if self.basis[i] < self.basis[k] {
                                    i
                                } else {
                                    k
                                }
                            }
                        }
                    }
                });
            }
            let Some(r) = leave else {
                return Err(Error::Invariant("phase-one objective unbounded below".into()));
            };
            self.pivot(r, c, &mut obj, &mut obj_rhs)?;
        }

        if !obj_rhs.is_zero() {
            return Ok(None);
        }
        let mut x = vec![Ratio::zero(); cols];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = num::rat(self.rhs[i].clone(), self.rows[i][b].clone())?;
        }
        Ok(Some(x))
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [T], obj_rhs: &mut T) -> Result<()> {
        let p = self.rows[r][c].clone();
        let (pivot_row, pivot_rhs) = (self.rows[r].clone(), self.rhs[r].clone());
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            eliminate(&mut self.rows[i], &mut self.rhs[i], &p, &f, &pivot_row, &pivot_rhs)?;
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            eliminate(obj, obj_rhs, &p, &f, &pivot_row, &pivot_rhs)?;
        }
        self.basis[r] = c;
        Ok(())
    }
}

/// `row <- p * row - f * pivot_row`, then divide by the gcd of the result.
fn eliminate<T: ExactInt>(
    row: &mut [T],
    rhs: &mut T,
    p: &T,
    f: &T,
    pivot_row: &[T],
    pivot_rhs: &T,
) -> Result<()> {
    let mut g = T::zero();
    for (a, b) in row.iter_mut().zip(pivot_row) {
        let v = if b.is_zero() {
            num::mul(a, p)?
        } else {
            num::sub(&num::mul(a, p)?, &num::mul(f, b)?)?
        };
        g = g.gcd(&v);
        *a = v;
    }
    *rhs = num::sub(&num::mul(rhs, p)?, &num::mul(f, pivot_rhs)?)?;
    g = g.gcd(rhs);
    if !g.is_zero() && !g.is_one() {
        for a in row.iter_mut() {
            *a = a.clone() / g.clone();
        }
        *rhs = rhs.clone() / g;
    }
    Ok(())
}
