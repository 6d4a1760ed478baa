//! Audit engine for Boolean classifiers.
//!
//! A classifier is a total Boolean function κ: {0,1}^m → {0,1} stored as a
//! truth table. For an instance (v, c) with c = κ(v), this crate computes,
//! all in exact rational arithmetic:
//!
//! - game-theoretic feature attributions (Shapley values of the conditional
//!   expectation game under the uniform input distribution) — [`shapley`];
//! - abductive and contrastive explanations (AXp/CXp: subset-minimal feature
//!   sets that entail, respectively allow changing, the prediction) and
//!   feature relevancy — [`explain`];
//! - an explanation-based importance score — [`importance`];
//! - audits of the attribution against relevancy: the four misleadingness
//!   issues I1–I4, ranking diagnostics, and a wrong-pairs comparator for
//!   external attribution vectors — [`audit`];
//! - an exhaustive scan over *all* Boolean functions of a given arity,
//!   aggregating issue statistics — [`scan`];
//! - a small d-DNNF-style circuit front end that materializes truth tables —
//!   [`circuit`].
//!
//! Exactness is load-bearing: issue detection hinges on `Sv = 0` tests, which
//! floating point cannot decide reliably. All attribution arithmetic runs on
//! integer numerators over the common denominator m!·2^m and is reduced at
//! the end; nothing in the computation path touches a float.

pub mod audit;
pub mod circuit;
pub mod explain;
pub mod function;
pub mod importance;
pub mod problem;
pub mod rational;
pub mod scan;
pub mod sets;
pub mod shapley;

pub use audit::{
    all_irrelevant_dominate, detect_issues, parse_attribution, rank_features, rank_features_f64,
    ranking_diagnostics, wrong_pairs, IssueReport, RankingDiagnostics, RankingMode, WrongPairs,
};
pub use circuit::{check_decomposable, check_deterministic, materialize, parse_circuit, Circuit};
pub use explain::{
    enumerate_axps, enumerate_cxps, relevancy_all, relevant, sigma_build, waxp, wcxp,
    ExplanationSet, SigmaTable,
};
pub use function::{BooleanFunction, Point};
pub use importance::{axp_importance, ImportanceVector, WeightRule};
pub use problem::ExplanationProblem;
pub use rational::Rational;
pub use scan::{merge, scan_functions, ScanConfig, ScanSummary};
pub use sets::FeatureSet;
pub use shapley::{phi, shapley_all, shapley_value, ShapleyVector};

/// Default arity cap for per-instance analysis. Costs are exponential in m
/// (σ tables, explanation sweeps), so front ends keep interactive use under
/// this bound by default; it is configuration, not a structural limit.
pub const DEFAULT_MAX_ARITY: usize = 14;

/// Structural arity bound: beyond this the integer attribution scheme
/// (numerators over m!·2^m accumulated in 128-bit integers) could overflow,
/// so construction of wider functions is refused outright.
pub const HARD_MAX_ARITY: usize = 20;

/// Exhaustive scans enumerate 2^(2^m) functions; m = 4 (65536 functions,
/// ~1M instances) is the last feasible rung.
pub const MAX_SCAN_ARITY: usize = 4;

/// Errors for every fallible operation in the crate.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error("truth table length {0} is not a power of two >= 2")]
    BadTableLength(usize),
    #[error("invalid character {1:?} at position {0}; expected '0' or '1'")]
    BadBit(usize, char),
    #[error("empty bitstring")]
    EmptyBitstring,
    #[error("arity {0} exceeds the supported maximum {1}")]
    ArityTooLarge(usize, usize),
    #[error("point has {point} coordinates but the function has arity {function}")]
    ArityMismatch { point: usize, function: usize },
    #[error("constant function: explanations are undefined, so the analysis is rejected")]
    ConstantFunction,
    #[error("feature index {0} out of range 1..={1}")]
    FeatureOutOfRange(usize, usize),
    #[error("feature set {0:#b} has bits outside 1..={1}")]
    FeatureSetOutOfRange(u32, usize),
    #[error("K = {0} out of range 1..={1}")]
    KOutOfRange(usize, usize),
    #[error("scan arity {0} out of range 1..={}", MAX_SCAN_ARITY)]
    ScanArityOutOfRange(usize),
    #[error("scan needs at least one worker")]
    NoWorkers,
    #[error("scan summaries disagree on configuration ({0})")]
    ConfigMismatch(&'static str),
    #[error("attribution line {line}: {msg}")]
    AttributionFormat { line: usize, msg: String },
    #[error("candidate has {candidate} scores but the reference has {reference}")]
    LengthMismatch { candidate: usize, reference: usize },
    #[error("circuit line {line}: {msg}")]
    CircuitParse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
