//! Statistical-query simulation on a finite, paired Gaussian surrogate.
//!
//! Every base point is carried by two atoms of weight `1/(2M)`. Queries are
//! pair-constant, so splitting each pair between `+1` and `-1` gives exact
//! zero correlations.

pub mod adversary;
pub mod f0;
pub mod family;
pub mod oracle;
pub mod packing;
pub mod params;
pub mod support;

pub use adversary::{
    adversary_run, f0_for, record_queries, AlgorithmOutput, HalfspaceProbe, SqAlgorithm,
    TableQueries, Transcript, ZeroQuery,
};
pub use f0::build_f0;
pub use family::{
    build_projection_family, check_pairwise, count_bad, orthogonal_family, projection_family_report,
    BadCount, FamilyReport,
};
pub use oracle::{OracleMode, StatOracle, StatSession};
pub use packing::{
    angle_law_report, angle_stats, packing_parameters, sample_packing, validate_packing,
    AngleLawReport, AngleStats,
};
pub use params::LowerBoundParams;
pub use support::{
    correlation, round_toward_zero, GaussianSupport, OnSupport, QuerySpec, SignFunction, UnitVector,
};
