//! Symmetrized skew Jensen divergences and the machinery built on top of them.
//!
//! The symmetrized α-skew Jensen divergence `sJ_F^(α)` interpolates between the
//! classical symmetric divergences: with the Shannon generator it equals half the
//! Jeffreys divergence at the endpoints α ∈ {0, 1} and four times the
//! Jensen-Shannon divergence at α = ½. This crate implements that family end to
//! end:
//!
//! | module        | contents                                                        |
//! |---------------|-----------------------------------------------------------------|
//! | [`generators`]  | strictly convex generators F, gradients, Jensen gaps          |
//! | [`divergences`] | entropy, KL, Jeffreys, Jensen-Shannon, K_α, JS_α, φ-divergences, the skew Jensen family |
//! | [`expfam`]      | exponential families, Bregman duality, α-Bhattacharyya closed forms |
//! | [`centroids`]   | CCCP fixed-point solver for divergence centroids              |
//! | [`clustering`]  | k-means, nearest-centroid classification, α-sweep harness     |
//! | [`io`]          | CSV/JSON histogram ingestion, intensity histograms            |
//! | [`cli`]         | command-line dispatcher (`div`, `profile`, `natparam`, `bhatt`, `centroid`, `kmeans`, `sweep`) |
//!
//! # Quick start
//!
//! ```
//! use skewjensen::{Alpha, Histogram};
//! use skewjensen::divergences::{jeffreys, js, skl_alpha};
//!
//! let p = Histogram::new(vec![0.9, 0.1])?;
//! let q = Histogram::new(vec![0.1, 0.9])?;
//!
//! // At alpha = 1/2 the symmetrized family is 4x Jensen-Shannon ...
//! let mid = skl_alpha(&p, &q, Alpha::new(0.5)?)?;
//! assert!((mid - 4.0 * js(&p, &q)?).abs() < 1e-12);
//!
//! // ... and it tends to half the Jeffreys divergence as alpha -> 0.
//! let near_end = skl_alpha(&p, &q, Alpha::new(1e-4)?)?;
//! assert!((near_end - jeffreys(&p, &q)? / 2.0).abs() / near_end < 1e-3);
//! # Ok::<(), skewjensen::Error>(())
//! ```
//!
//! All logarithms are natural (values in nats). Every operation is a pure
//! function over immutable inputs, so the whole API is safe to call from any
//! number of threads.

pub mod centroids;
pub mod cli;
pub mod clustering;
pub mod divergences;
pub mod expfam;
pub mod generators;
pub mod io;

pub use divergences::{Alpha, Histogram, PhiGenerator, PositiveMeasure};
pub use generators::{ConvexGenerator, SeparableGenerator, VectorGenerator};

use thiserror::Error as ThisError;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("unknown generator `{0}` (expected shannon, shannon-xlogx, burg, or quadratic)")]
    UnknownGenerator(String),
    #[error("unknown phi generator `{0}` (expected neg-log, x-log-x, jeffreys, or k-half)")]
    UnknownPhi(String),
    #[error("{value} is outside the domain of the {generator} generator")]
    OutOfDomain { generator: String, value: f64 },
    #[error("skew parameter must lie in [0, 1], got {0}")]
    InvalidAlpha(f64),
    #[error("operation is defined only for skew parameters in the open interval (0, 1), got {0}")]
    EndpointAlpha(f64),
    #[error("mixing weight must lie in the open interval (0, 1), got {0}")]
    InvalidWeight(f64),
    #[error("vectors have mismatched lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid histogram: {0}")]
    InvalidHistogram(String),
    #[error("invalid positive measure: {0}")]
    InvalidMeasure(String),
    #[error("phi generator `{label}` rejected: {reason}")]
    InvalidPhi { label: String, reason: String },
    #[error("invalid source parameters for {family}: {reason}")]
    InvalidSource { family: String, reason: String },
    #[error("natural parameter lies outside the domain of {family}: {reason}")]
    OutOfNaturalDomain { family: String, reason: String },
    #[error("exponential families do not match: {0} vs {1}")]
    FamilyMismatch(String, String),
    #[error("quadrature needs a pointwise-evaluable density; {0} is not supported")]
    QuadratureUnsupported(String),
    #[error("quadrature grid misses {missing:e} of probability mass (limit {limit:e})")]
    InsufficientCoverage { missing: f64, limit: f64 },
    #[error("invalid centroid problem: {0}")]
    InvalidProblem(String),
    #[error(
        "energy increased from {before} to {after} at iteration {iteration}; \
         this indicates an inconsistent gradient/inverse-gradient pair"
    )]
    EnergyIncrease {
        iteration: usize,
        before: f64,
        after: f64,
    },
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error at row {row}, column {col}: {message}")]
    Parse {
        row: usize,
        col: usize,
        message: String,
    },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Absolute tolerance for cross-identity checks at dimension ≤ 64.
///
/// Identities between two closed forms of the same quantity (for example the
/// entropy formulation of `skl_alpha` against its generator formulation) hold to
/// rounding error; 1e-12 absorbs summation noise up to d = 64. Larger dimensions
/// scale as `d * 1e-14`.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Identity tolerance scaled for dimension: 1e-12 up to d = 64, then d·1e-14.
pub fn identity_tol(dim: usize) -> f64 {
    if dim <= 64 {
        IDENTITY_TOL
    } else {
        dim as f64 * 1e-14
    }
}
