//! Numerical certificates for the spectral structure of cover towers.
//!
//! The convergence rate of `f_N` and the long-time behaviour of cover heat
//! traces are controlled by a handful of spectral facts about the twisted
//! family `{Δ_θ}`:
//!
//! * the bottom band vanishes to *even* order at `θ = 0`,
//!   `λ₀(θ) = a·θ^{2p} + O(θ^{2p+2})`, and admits a two-sided pinch
//!   `b·θ^{2p} ≤ λ₀(θ) ≤ a·θ^{2p}` on a window `|θ| ≤ η`;
//! * everything else stays above a uniform gap `ε₀ > 0`;
//! * for a flat unitary bundle, `λ₀(θ) = 0` exactly at the reflected
//!   eigenvalue angles of the monodromy;
//! * the cover heat trace folds into deck orbits of the infinite-cover
//!   kernel;
//! * `det′ Δ = |V|·K` pins the whole spectral pipeline to an integer.
//!
//! These are existence statements; the constants they assert are produced
//! here by scanning, fitting and refining, with every numeric choice (grid
//! resolution, the 0.9 safety margin, fit window) recorded in the report
//! that carries the result.

mod deck;
mod kirchhoff;
mod zeros;

pub use deck::verify_deck_sum;
pub use kirchhoff::{
    brute_force_spanning_trees, verify_matrix_tree, verify_matrix_tree_voltage, ENUMERATION_LIMIT,
};
pub use zeros::monodromy_zero_locus;

use serde::{Deserialize, Serialize};

use crate::graph::{TwistAngle, VoltageGraph};
use crate::numerics::{fit_power_exponent, hermitian_eigenvalues, DEFAULT_ZERO_TOL_REL};
use crate::parallel::parallel_map;
use crate::{Error, Result};

/// Smallest accepted `grid_size`: below this the tail minimum and the fit
/// window are too thinly sampled to trust.
pub const MIN_GRID: usize = 256;

/// Largest admissible right edge of the fit window.  Beyond `θ ≈ 0.3` the
/// `O(θ^{2p+2})` correction pollutes the leading exponent.
pub const MAX_FIT_WINDOW: f64 = 0.3;

/// Safety factor between an observed spectral infimum and the certified
/// gap; the scan only sees grid points, so it never claims the infimum
/// itself.
const GAP_SAFETY: f64 = 0.9;

/// Angles at or beyond this are "far from the band bottom": the gap `ε₀`
/// also has to clear `λ₀` out there.
const TAIL_START: f64 = 0.5;

/// `λ₁` dropping below this anywhere means the upper bands close onto the
/// bottom band and no gap certificate exists.
const LAMBDA1_FLOOR: f64 = 1e-8;

/// Largest accepted distance between the fitted exponent and an even
/// integer; a larger mismatch is reported as an error, not rounded away.
const EXPONENT_SLACK: f64 = 0.1;

fn require_cover_ready(g: &VoltageGraph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.cycle_gcd() != 1 {
        return Err(Error::NonSurjective { gcd: g.cycle_gcd() });
    }
    Ok(())
}

/// One grid row of a [`GapReport`]: the twist angle, the bottom eigenvalue
/// and the next one up (absent on one-vertex graphs, whose fibers are
/// scalars).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct GapSample {
    pub theta: f64,
    pub lambda0: f64,
    pub lambda1: Option<f64>,
}

/// Certified low-angle asymptotics and spectral gap of a twisted family.
///
/// The report asserts, with explicit constants,
///
/// `lower·θ^{2p} ≤ λ₀(θ) ≤ amplitude·θ^{2p}`  for `0 < θ ≤ eta`,
///
/// and `λ ≥ epsilon0` for every other piece of spectrum (the bands
/// `λ₁, λ₂, …` everywhere, and `λ₀` itself once `θ ≥ 0.5`).  All constants
/// come from a uniform scan of `[0, π]` — conjugation symmetry
/// `λ(2π−θ) = λ(θ)` supplies the other half circle — and are deliberately
/// conservative: observed infima are shrunk by a 0.9 safety factor.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapReport {
    /// Scanned spectrum: `(θ, λ₀, λ₁)` over the uniform grid on `[0, π]`.
    pub grid: Vec<GapSample>,
    /// Certified gap: spectrum away from the bottom band stays `≥ epsilon0`.
    pub epsilon0: f64,
    /// Half the (even) vanishing order of `λ₀` at `θ = 0`.
    pub p: u32,
    /// Leading coefficient estimate: mean of `λ₀/θ^{2p}` over the window.
    pub amplitude: f64,
    /// Certified lower constant: `0.9 × min λ₀/θ^{2p}` over the window.
    pub lower: f64,
    /// Right edge of the window on which the two-sided pinch is asserted.
    pub eta: f64,
    /// Raw least-squares exponent before rounding to `2p`.
    pub fitted_exponent: f64,
}

/// Scan the twisted family of `g` and certify its gap data.
///
/// `grid_size` uniform steps cover `θ ∈ [0, π]` (both endpoints included);
/// the exponent is fitted on the samples falling inside `fit_window`,
/// which must sit inside `(0, 0.3]` and span at least one decade.
///
/// Errors: [`Error::InvalidParameter`] for an undersized grid or a bad
/// window, [`Error::NonEvenExponent`] if the fitted slope is not within
/// 0.1 of an even integer, [`Error::GapCollapse`] if `λ₁` touches zero,
/// plus graph preconditions ([`Error::Disconnected`],
/// [`Error::NonSurjective`]).
pub fn gap_scan(g: &VoltageGraph, grid_size: usize, fit_window: (f64, f64)) -> Result<GapReport> {
    gap_scan_with_jobs(g, grid_size, fit_window, 1)
}

/// [`gap_scan`] with the grid sweep spread over `jobs` worker threads.
/// The report is bitwise independent of `jobs`.
pub fn gap_scan_with_jobs(
    g: &VoltageGraph,
    grid_size: usize,
    fit_window: (f64, f64),
    jobs: usize,
) -> Result<GapReport> {
    require_cover_ready(g)?;
    if grid_size < MIN_GRID {
        return Err(Error::InvalidParameter(format!(
            "grid size {grid_size} below the minimum {MIN_GRID}"
        )));
    }
    let (lo, hi) = fit_window;
    if !lo.is_finite() || !hi.is_finite() || lo < 0.0 || hi <= lo || hi > MAX_FIT_WINDOW + 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "fit window ({lo}, {hi}) must sit inside (0, {MAX_FIT_WINDOW}]"
        )));
    }
    if lo > 0.0 && hi / lo < 10.0 {
        return Err(Error::InvalidParameter(format!(
            "fit window ({lo}, {hi}) spans less than one decade"
        )));
    }

    let step = std::f64::consts::PI / grid_size as f64;
    let thetas: Vec<f64> = (0..=grid_size).map(|j| j as f64 * step).collect();
    let rows = parallel_map(&thetas, jobs, |&theta| -> Result<GapSample> {
        let h = g.twisted_laplacian(TwistAngle::new(theta));
        let spectrum = hermitian_eigenvalues(&h, DEFAULT_ZERO_TOL_REL)?;
        let values = spectrum.values();
        Ok(GapSample { theta, lambda0: values[0], lambda1: values.get(1).copied() })
    });
    let mut grid = Vec::with_capacity(rows.len());
    for row in rows {
        grid.push(row?);
    }

    let min_lambda1 = grid
        .iter()
        .filter_map(|s| s.lambda1)
        .fold(f64::INFINITY, f64::min);
    if min_lambda1 < LAMBDA1_FLOOR {
        return Err(Error::GapCollapse);
    }
    let min_tail0 = grid
        .iter()
        .filter(|s| s.theta >= TAIL_START)
        .map(|s| s.lambda0)
        .fold(f64::INFINITY, f64::min);
    let epsilon0 = GAP_SAFETY * min_lambda1.min(min_tail0);

    let samples: Vec<(f64, f64)> = grid
        .iter()
        .filter(|s| s.theta > 0.0 && s.theta >= lo && s.theta <= hi + 1e-12)
        .map(|s| (s.theta, s.lambda0))
        .collect();
    let fit = fit_power_exponent(&samples)?;
    let half = (fit.exponent / 2.0).round();
    if half < 1.0 || (fit.exponent - 2.0 * half).abs() > EXPONENT_SLACK {
        return Err(Error::NonEvenExponent { fitted: fit.exponent });
    }
    let p = half as u32;

    let ratios: Vec<f64> = samples
        .iter()
        .map(|&(theta, l0)| l0 / theta.powi(2 * p as i32))
        .collect();
    let amplitude = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let lower = GAP_SAFETY * ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let eta = samples.last().map(|&(theta, _)| theta).unwrap_or(hi);

    Ok(GapReport { grid, epsilon0, p, amplitude, lower, eta, fitted_exponent: fit.exponent })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_graph() -> VoltageGraph {
        VoltageGraph::parse("v 1\ne 0 0 1\n").unwrap()
    }

    fn double_edge() -> VoltageGraph {
        VoltageGraph::parse("v 2\ne 0 1 0\ne 0 1 1\n").unwrap()
    }

    #[test]
    fn double_edge_has_quadratic_bottom_band() {
        // λ₀(θ) = 2 − 2cos(θ/2) = θ²/4 + O(θ⁴), λ₁ = 2 + 2cos(θ/2) ≥ 2.
        let report = gap_scan(&double_edge(), 512, (0.0, 0.3)).unwrap();
        assert_eq!(report.p, 1);
        assert!((report.fitted_exponent - 2.0).abs() < 0.01, "{}", report.fitted_exponent);
        assert!(report.amplitude > 0.245 && report.amplitude < 0.252, "{}", report.amplitude);
        assert!(report.lower < report.amplitude);
        assert!(report.lower > 0.22, "{}", report.lower);
        // ε₀ comes from the λ₀ tail (≈ 0.063 at θ ≈ 0.5), not from λ₁ ≥ 2.
        assert!(report.epsilon0 > 0.05 && report.epsilon0 < 0.06, "{}", report.epsilon0);
        let min_lambda1 = report
            .grid
            .iter()
            .filter_map(|s| s.lambda1)
            .fold(f64::INFINITY, f64::min);
        assert!(report.epsilon0 < min_lambda1);
    }

    #[test]
    fn loop_report_has_unit_amplitude_and_no_second_band() {
        // λ(θ) = 2 − 2cosθ = θ² + O(θ⁴) on a 1×1 fiber.
        let report = gap_scan(&loop_graph(), 512, (0.0, 0.3)).unwrap();
        assert_eq!(report.p, 1);
        assert!((report.amplitude - 1.0).abs() < 0.01, "{}", report.amplitude);
        assert!(report.grid.iter().all(|s| s.lambda1.is_none()));
        // ε₀ = 0.9 · λ₀ at the first grid angle ≥ 0.5.
        assert!(report.epsilon0 > 0.21 && report.epsilon0 < 0.23, "{}", report.epsilon0);
    }

    #[test]
    fn doubling_every_edge_doubles_the_amplitude() {
        let single = gap_scan(&double_edge(), 512, (0.0, 0.3)).unwrap();
        let doubled = VoltageGraph::parse("v 2\ne 0 1 0\ne 0 1 0\ne 0 1 1\ne 0 1 1\n").unwrap();
        let double = gap_scan(&doubled, 512, (0.0, 0.3)).unwrap();
        assert_eq!(double.p, single.p);
        assert!((double.amplitude - 2.0 * single.amplitude).abs() < 1e-9);
        assert!((double.epsilon0 - 2.0 * single.epsilon0).abs() < 1e-9);
    }

    #[test]
    fn fitted_exponent_is_stable_under_grid_doubling() {
        let coarse = gap_scan(&double_edge(), 512, (0.0, 0.3)).unwrap();
        let fine = gap_scan(&double_edge(), 1024, (0.0, 0.3)).unwrap();
        assert!((coarse.fitted_exponent - fine.fitted_exponent).abs() <= 0.02);
        assert_eq!(coarse.p, fine.p);
    }

    #[test]
    fn certified_pinch_holds_on_the_window() {
        let report = gap_scan(&double_edge(), 512, (0.0, 0.3)).unwrap();
        for s in &report.grid {
            if s.theta > 0.0 && s.theta <= report.eta {
                let floor = report.lower * s.theta.powi(2 * report.p as i32);
                assert!(floor <= s.lambda0 * (1.0 + 1e-12), "θ = {}", s.theta);
            }
        }
    }

    #[test]
    fn report_is_independent_of_worker_count() {
        let sequential = gap_scan_with_jobs(&double_edge(), 256, (0.0, 0.3), 1).unwrap();
        let threaded = gap_scan_with_jobs(&double_edge(), 256, (0.0, 0.3), 7).unwrap();
        assert_eq!(sequential.epsilon0.to_bits(), threaded.epsilon0.to_bits());
        assert_eq!(sequential.amplitude.to_bits(), threaded.amplitude.to_bits());
        for (a, b) in sequential.grid.iter().zip(threaded.grid.iter()) {
            assert_eq!(a.lambda0.to_bits(), b.lambda0.to_bits());
        }
    }

    #[test]
    fn undersized_grid_and_bad_windows_are_rejected() {
        let g = double_edge();
        assert!(matches!(gap_scan(&g, 128, (0.0, 0.3)), Err(Error::InvalidParameter(_))));
        assert!(matches!(gap_scan(&g, 512, (0.0, 0.4)), Err(Error::InvalidParameter(_))));
        assert!(matches!(gap_scan(&g, 512, (0.05, 0.25)), Err(Error::InvalidParameter(_))));
        assert!(matches!(gap_scan(&g, 512, (0.3, 0.3)), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn non_surjective_voltages_are_rejected() {
        let g = VoltageGraph::parse("v 2\ne 0 1 0\ne 0 1 0\n").unwrap();
        assert!(matches!(gap_scan(&g, 512, (0.0, 0.3)), Err(Error::NonSurjective { gcd: 0 })));
    }
}
