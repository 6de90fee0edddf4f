//! Exact and sampled distance to halfspaces, the k-SUM reduction that makes
//! the approximate problem hard, and a statistical-query lower-bound lab.
//!
//! Exact geometry is generic over [`num::ExactInt`] (`i64`, `i128`,
//! `BigInt`); the statistical-query code is generic over [`num::Real`]
//! (`f32`, `f64`). The aliases below fix the defaults used by the CLI.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0)` also rejects NaN

pub mod error;
pub mod estimator;
pub mod exact;
pub mod geometry;
pub mod io;
pub mod ksum;
pub mod num;
pub mod reduction;
pub mod rng;
pub mod sq;

pub use error::{Error, Result};

/// Default exact integer.
pub type Int = i128;
/// Default exact rational.
pub type Rat = num_rational::Ratio<Int>;
pub type Point = geometry::Point<Int>;
pub type Halfspace = geometry::Halfspace<Int>;
pub type LabeledDataset = geometry::LabeledDataset<Int>;
pub type DistanceReport = exact::DistanceReport<Int>;
pub type KSumInstance = ksum::KSumInstance<Int>;
pub type ReducedInstance = reduction::ReducedInstance<Int>;

/// Default float for the statistical-query lab.
pub type Real = f64;
pub type UnitVector = sq::UnitVector<Real>;
pub type GaussianSupport = sq::GaussianSupport<Real>;
pub type QuerySpec = sq::QuerySpec<Real>;
pub type StatOracle = sq::StatOracle<Real>;
