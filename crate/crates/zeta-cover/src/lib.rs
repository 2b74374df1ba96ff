//! Spectral zeta determinants on cyclic covers of voltage graphs.
//!
//! A *voltage graph* is a finite multigraph whose edges carry integer
//! voltages.  Summing voltages around cycles defines a homomorphism from the
//! cycle space to ℤ, and for every `N ≥ 1` the quotient ℤ/Nℤ produces an
//! `N`-fold cyclic cover: vertex `(x, k)` is joined to `(y, k + ρ mod N)`
//! for every base edge `x →ρ y`.  This crate computes the spectral data of
//! that tower:
//!
//! * plain, twisted (Born–von Kármán) and bundle-twisted Laplacians,
//!   together with the fiberwise decomposition
//!   `σ(Δ_N) = ⋃_p σ(Δ_{2πp/N})`;
//! * the normalized log-determinant `f_N = log det′(Δ_N) / (N·|V|)` and its
//!   `N → ∞` limit as the integral
//!   `(2π|V|)⁻¹ ∫₀^{2π} log det Δ_θ dθ`;
//! * exact spanning-tree counts (matrix-tree) over arbitrary-precision
//!   integers, used as an independent check of `det′`;
//! * heat kernels of the infinite ℤ-cover and the deck-orbit trace identity;
//! * a flat-torus oracle: Dedekind-eta closed form against a Mellin-split
//!   numerical `ζ′(0)`, plus the square-lattice growth constant and the
//!   McKay bound for regular graphs.
//!
//! The numerical kernel is deliberately small and self-contained: a cyclic
//! Jacobi eigensolver for complex Hermitian matrices, a fraction-free
//! integer determinant, adaptive Gauss–Legendre quadrature with geometric
//! refinement into integrable endpoint singularities, and a log–log power
//! fit.  Everything is deterministic; repeated runs produce byte-identical
//! output.
//!
//! # Quick start
//!
//! ```
//! use zeta_cover::{VoltageGraph, TwistAngle};
//! use zeta_cover::numerics::hermitian_eigenvalues;
//!
//! // Two vertices joined by a pair of edges with voltages 0 and 1.
//! let g = VoltageGraph::parse("v 2\ne 0 1 0\ne 0 1 1\n").unwrap();
//! let spectrum = hermitian_eigenvalues(&g.twisted_laplacian(TwistAngle::new(1.0)), 1e-10).unwrap();
//! assert_eq!(spectrum.values().len(), 2);
//!
//! // Its 3-fold cyclic cover is the 6-cycle: 6 spanning trees.
//! let cover = g.cyclic_cover(3).unwrap();
//! assert_eq!(cover.spanning_tree_count(), 6u32.into());
//! ```
//!
//! The `examples/` directory exercises each capability end to end; the
//! `zeta-cover` binary exposes the same operations as subcommands.

pub mod analysis;
pub mod cli;
pub mod graph;
pub mod numerics;
pub mod torus;
pub mod zeta;

mod parallel;

pub use graph::{CoverGraph, Monodromy, TwistAngle, VoltageGraph};
pub use numerics::{HermitianMatrix, IntegerMatrix, Spectrum};
pub use zeta::{ConvergenceSeries, SeriesEntry, ZetaResult};

/// Crate-wide error type.
///
/// Variants are deliberately fine-grained so callers (and the CLI, which
/// maps them to machine-readable `kind` strings) can distinguish bad input
/// from numerical failure.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Matrix entries are not conjugate-symmetric within tolerance.
    #[error("matrix is not Hermitian within tolerance")]
    NonHermitian,
    /// The Jacobi sweep cap was reached before the off-diagonal norm
    /// dropped below threshold.
    #[error("eigensolver failed to converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    /// Adaptive quadrature (or another iterative estimate) exhausted its
    /// budget before reaching the requested tolerance.
    #[error("requested tolerance {requested:e} not met (achieved {achieved:e})")]
    ToleranceNotMet { requested: f64, achieved: f64 },
    /// A least-squares fit was attempted on unusable samples.
    #[error("degenerate samples: {0}")]
    DegenerateSamples(&'static str),
    /// A graph or monodromy description failed to parse.
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// The base graph is not connected.
    #[error("graph is not connected")]
    Disconnected,
    /// The voltage assignment does not generate ℤ: the gcd of net cycle
    /// voltages is `gcd` (0 means every cycle has net voltage zero).
    #[error("voltages are not surjective onto Z (cycle gcd = {gcd})")]
    NonSurjective { gcd: u64 },
    /// A monodromy matrix is not unitary within tolerance.
    #[error("monodromy matrix is not unitary")]
    NonUnitary,
    /// The monodromy has a repeated eigenvalue angle, so zero-locus
    /// bookkeeping per angle is ill-posed.
    #[error("monodromy eigenvalues are not simple")]
    NonSimpleMonodromy,
    /// The fitted low-angle exponent is not close to an even integer.
    #[error("fitted exponent {fitted} is not within 0.1 of an even integer")]
    NonEvenExponent { fitted: f64 },
    /// The spectral gap needed for the analysis vanished.
    #[error("spectral gap collapsed (an eigenvalue expected to stay positive is ~0)")]
    GapCollapse,
    /// A scan found a different number of features than predicted.
    #[error("expected {expected} features, found {found}")]
    CountMismatch { expected: usize, found: usize },
    /// An exhaustive enumeration would be too large to run.
    #[error("problem size {actual} exceeds enumeration limit {limit}")]
    TooLarge { limit: usize, actual: usize },
    /// A spectrum contains no nonzero eigenvalues, so `det′` is undefined.
    #[error("spectrum has no nonzero eigenvalues")]
    AllZero,
    /// A heat trace expected to decay does not.
    #[error("trace function is not decaying")]
    NonDecaying,
    /// A parameter violated a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// File I/O failed (CLI paths).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable tag for this error, used by the CLI's JSON
    /// error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonHermitian => "non_hermitian",
            Error::NoConvergence { .. } => "no_convergence",
            Error::ToleranceNotMet { .. } => "tolerance_not_met",
            Error::DegenerateSamples(_) => "degenerate_samples",
            Error::Parse { .. } => "parse_error",
            Error::Disconnected => "disconnected",
            Error::NonSurjective { .. } => "non_surjective",
            Error::NonUnitary => "non_unitary",
            Error::NonSimpleMonodromy => "non_simple_monodromy",
            Error::NonEvenExponent { .. } => "non_even_exponent",
            Error::GapCollapse => "gap_collapse",
            Error::CountMismatch { .. } => "count_mismatch",
            Error::TooLarge { .. } => "too_large",
            Error::AllZero => "all_zero",
            Error::NonDecaying => "non_decaying",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Io(_) => "io_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
