//! The zero-answering adversary against deterministic SQ distance
//! estimators.

use super::f0::build_f0;
use super::oracle::{OracleMode, StatOracle, StatSession};
use super::packing::random_unit;
use super::support::{correlation, GaussianSupport, QuerySpec, SignFunction};
use crate::error::{Error, Result};
use crate::num::Real;
use crate::rng::{self, PolarNormal};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmOutput<F> {
    /// Estimated distance to the nearest halfspace.
    pub estimate: F,
    /// Number of queries the algorithm claims to have made.
    pub queries_issued: usize,
}

/// An SQ procedure. It sees its input only through `session`.
pub trait SqAlgorithm<F: Real> {
    fn run(&mut self, session: &mut StatSession<'_, F>) -> Result<AlgorithmOutput<F>>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transcript<F> {
    pub queries: Vec<QuerySpec<F>>,
    pub estimate: F,
    /// Family indices with `|corr(g, f)| < tau` for every logged `g`.
    pub survivors: Vec<usize>,
    pub f0_survives: bool,
    /// `estimate` is within `eps/16` of some distance `>= 1/2 - eps/100`.
    pub consistent_with_f0: bool,
    /// `estimate` is within `eps/16` of some distance `<= 1/2 - eps/4`, and
    /// a survivor exists.
    pub consistent_with_survivor: bool,
}

impl<F: Real> Transcript<F> {
    /// The zero answers fit both `f0` and a survivor, but no single estimate
    /// serves both.
    pub fn fooled(&self) -> bool {
        self.f0_survives
            && !self.survivors.is_empty()
            && !(self.consistent_with_f0 && self.consistent_with_survivor)
    }
}

fn survives<F: Real>(
    support: &GaussianSupport<F>,
    f: &SignFunction,
    queries: &[QuerySpec<F>],
    tau: F,
) -> Result<bool> {
    for g in queries {
        if correlation(support, g, f)?.abs() >= tau {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs `alg` against an oracle that answers 0 to everything, then checks
/// which inputs the transcript rules out.
pub fn adversary_run<F: Real>(
    alg: &mut dyn SqAlgorithm<F>,
    family: &[SignFunction],
    f0: &SignFunction,
    tau: F,
    support: &GaussianSupport<F>,
    eps: F,
) -> Result<Transcript<F>> {
    if !(eps > F::zero() && eps < F::one()) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
    }
    let mut oracle = StatOracle::new(tau, OracleMode::AdversarialZero)?;
    let out = {
        let mut session = StatSession::new(&mut oracle, support, f0);
        alg.run(&mut session)?
    };
    let queries = oracle.log().to_vec();
    if out.queries_issued != queries.len() {
        return Err(Error::Sq(format!(
            "algorithm reports {} queries but the oracle saw {}",
            out.queries_issued,
            queries.len()
        )));
    }
    let mut survivors = Vec::new();
    for (i, f) in family.iter().enumerate() {
        if survives(support, f, &queries, tau)? {
            survivors.push(i);
        }
    }
    let f0_survives = survives(support, f0, &queries, tau)?;
    let half = F::lit(0.5);
    let slack = eps / F::lit(16.0);
    let consistent_with_f0 = out.estimate >= half - eps / F::lit(100.0) - slack;
    let consistent_with_survivor =
        !survivors.is_empty() && out.estimate <= half - eps / F::lit(4.0) + slack;
    Ok(Transcript {
        queries,
        estimate: out.estimate,
        survivors,
        f0_survives,
        consistent_with_f0,
        consistent_with_survivor,
    })
}

/// The queries `alg` makes when every answer is 0. A deterministic algorithm
/// makes the same queries on every input, so `f0` can be built from them in
/// advance.
pub fn record_queries<F: Real>(
    alg: &mut dyn SqAlgorithm<F>,
    support: &GaussianSupport<F>,
    tau: F,
) -> Result<Vec<QuerySpec<F>>> {
    let mut oracle = StatOracle::new(tau, OracleMode::AdversarialZero)?;
    let dummy = SignFunction::new(vec![1; support.atoms()])?;
    let mut session = StatSession::new(&mut oracle, support, &dummy);
    alg.run(&mut session)?;
    Ok(oracle.log().to_vec())
}

/// Dry run, then `f0` against the recorded queries and `references`.
pub fn f0_for<F: Real>(
    alg: &mut dyn SqAlgorithm<F>,
    support: &GaussianSupport<F>,
    references: &[QuerySpec<F>],
    tau: F,
) -> Result<SignFunction> {
    let queries = record_queries(alg, support, tau)?;
    build_f0(support, &queries, references, tau)
}

/// Answers a fixed estimate without asking anything.
#[derive(Debug, Clone, Copy)]
pub struct ZeroQuery<F> {
    pub estimate: F,
}

impl<F: Real> SqAlgorithm<F> for ZeroQuery<F> {
    fn run(&mut self, _: &mut StatSession<'_, F>) -> Result<AlgorithmOutput<F>> {
        Ok(AlgorithmOutput { estimate: self.estimate, queries_issued: 0 })
    }
}

/// `1/2 - max |answer| / 2`: the distance bound implied by the best
/// correlation seen.
fn correlation_estimate<F: Real>(answers: &[F]) -> F {
    let best = answers.iter().fold(F::zero(), |m, a| m.max(a.abs()));
    (F::one() - best) / F::lit(2.0)
}

/// Asks a fixed list of queries.
#[derive(Debug, Clone)]
pub struct TableQueries<F> {
    pub queries: Vec<QuerySpec<F>>,
}

impl<F: Real> SqAlgorithm<F> for TableQueries<F> {
    fn run(&mut self, session: &mut StatSession<'_, F>) -> Result<AlgorithmOutput<F>> {
        let answers =
            self.queries.iter().map(|g| session.ask(g.clone())).collect::<Result<Vec<_>>>()?;
        Ok(AlgorithmOutput { estimate: correlation_estimate(&answers), queries_issued: answers.len() })
    }
}

/// Probes `count` random halfspaces `sign(<u, x> - t)` with thresholds on a
/// small grid.
#[derive(Debug, Clone, Copy)]
pub struct HalfspaceProbe {
    pub count: usize,
    pub seed: u64,
}

impl<F: Real> SqAlgorithm<F> for HalfspaceProbe {
    fn run(&mut self, session: &mut StatSession<'_, F>) -> Result<AlgorithmOutput<F>> {
        let mut r = rng::seeded(self.seed);
        let mut normal = PolarNormal::new();
        let mut answers = Vec::with_capacity(self.count);
        for i in 0..self.count {
            let u = random_unit::<F>(session.dim(), &mut r, &mut normal);
            let t = F::lit((i % 5) as f64 * 0.5 - 1.0);
            answers.push(session.ask(QuerySpec::HalfspaceSign { w: u.coords, theta: -t })?);
        }
        Ok(AlgorithmOutput { estimate: correlation_estimate(&answers), queries_issued: answers.len() })
    }
}
