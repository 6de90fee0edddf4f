//! A pseudorandom function that every registered query sees as noise.

use std::collections::HashMap;

use super::support::{
    is_pair_constant, round_toward_zero, GaussianSupport, OnSupport, QuerySpec, SignFunction,
};
use crate::error::{Error, Result};
use crate::num::Real;

/// Colors each base point by the `tau/2`-rounded values of the queries and
/// the labels of the reference halfspaces, then splits every color class
/// evenly: the two atoms of each base point get opposite signs, with the
/// orientation alternating inside the class.
///
/// Every query and reference is constant on atom pairs, so the correlation
/// of the result with each reference and each rounded query is exactly zero,
/// and with each raw query at most `tau/2`.
pub fn build_f0<F: Real>(
    support: &GaussianSupport<F>,
    queries: &[QuerySpec<F>],
    references: &[QuerySpec<F>],
    tau: F,
) -> Result<SignFunction> {
    if !(tau > F::zero()) {
        return Err(Error::InvalidParameter(format!("tau must be positive, got {tau}")));
    }
    if !support.atoms().is_multiple_of(2) {
        return Err(Error::Sq("support is not paired".into()));
    }
    if let Some(r) = references.iter().find(|r| !matches!(r, QuerySpec::HalfspaceSign { .. })) {
        return Err(Error::Sq(format!("reference {r:?} is not a halfspace sign")));
    }
    let step = tau / F::lit(2.0);
    let mut columns: Vec<Vec<i64>> = Vec::with_capacity(queries.len() + references.len());
    for (i, g) in queries.iter().enumerate() {
        let values = g.values(support)?;
        if !is_pair_constant(&values) {
            return Err(Error::Sq(format!("query {i} differs between the atoms of a pair")));
        }
        columns.push(
            values
                .iter()
                .step_by(2)
                .map(|&v| {
                    let r = round_toward_zero(v, step)?;
                    Ok((r / step).round().to_i64().unwrap_or(0))
                })
                .collect::<Result<_>>()?,
        );
    }
    for r in references {
        let values = r.values(support)?;
        columns.push(values.iter().step_by(2).map(|&v| if v > F::zero() { 1 } else { -1 }).collect());
    }

    let mut parity: HashMap<Vec<i64>, bool> = HashMap::new();
    let mut values = Vec::with_capacity(support.atoms());
    for b in 0..support.base_points().len() {
        let color: Vec<i64> = columns.iter().map(|c| c[b]).collect();
        let flip = parity.entry(color).or_insert(false);
        values.extend(if *flip { [-1, 1] } else { [1, -1] });
        *flip = !*flip;
    }
    SignFunction::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sq::support::{correlation, UnitVector};

    #[test]
    fn exact_zero_invariants() {
        let s = GaussianSupport::<f64>::sample(3, 1000, 17).unwrap();
        let tau = 0.2;
        let queries: Vec<QuerySpec<f64>> = (0..5)
            .map(|i| QuerySpec::HalfspaceSign { w: vec![1.0, i as f64 * 0.3, -0.2], theta: 0.1 * i as f64 })
            .chain([QuerySpec::ProjectionProfile {
                u: UnitVector::basis(3, 2),
                breakpoints: vec![-0.5, 0.5],
                signs: vec![1, -1, 1],
            }])
            .collect();
        let refs = vec![QuerySpec::HalfspaceSign { w: vec![0.0, 1.0, 1.0], theta: -0.3 }];
        let f0 = build_f0(&s, &queries, &refs, tau).unwrap();
        for r in &refs {
            assert_eq!(correlation(&s, &f0, r).unwrap(), 0.0);
        }
        for g in &queries {
            assert_eq!(correlation(&s, &f0, &g.rounded(&s, tau / 2.0).unwrap()).unwrap(), 0.0);
            assert!(correlation(&s, &f0, g).unwrap().abs() <= tau / 2.0);
        }
    }

    #[test]
    fn color_classes_are_balanced() {
        let s = GaussianSupport::<f64>::sample(2, 200, 5).unwrap();
        let refs = vec![QuerySpec::HalfspaceSign { w: vec![1.0, 0.0], theta: 0.0 }];
        let f0 = build_f0(&s, &[], &refs, 0.1).unwrap();
        // Even atoms: within each side of the reference, orientations alternate.
        for side in [true, false] {
            let firsts: Vec<i8> = (0..200)
                .filter(|&b| (s.base_points()[b][0] >= 0.0) == side)
                .map(|b| f0.values[2 * b])
                .collect();
            let sum: i32 = firsts.iter().map(|&v| v as i32).sum();
            assert!(sum == 0 || sum == 1, "{sum}");
        }
    }

    #[test]
    fn rejects_unpaired_queries_and_bad_references() {
        let s = GaussianSupport::<f64>::sample(2, 4, 5).unwrap();
        let table = QuerySpec::Table { values: vec![1.0, -1.0, 0.0, 0.0, 0.5, 0.5, 0.0, 0.0] };
        assert!(build_f0(&s, std::slice::from_ref(&table), &[], 0.1).is_err());
        assert!(build_f0(&s, &[], &[table], 0.1).is_err());
    }
}
