//! Zero locus of the bundle-twisted bottom eigenvalue.
//!
//! For a flat unitary bundle with monodromy `U` along the deck generator,
//! the bottom eigenvalue of the twisted operator `Δ_θ ⊗ U` vanishes exactly
//! when the total character is trivial, i.e. at the *reflected* eigenvalue
//! angles of the monodromy: with `U v = e^{iφ} v`, the kernel appears at
//! `θ ≡ −φ (mod 2π)` under this crate's orientation of the edge transport
//! (a lift step multiplies by `e^{iθρ}·U^{ρ}`, so the character `e^{iθ}`
//! must cancel the eigenvalue `e^{iφ}`).
//!
//! The locus is found by a full-circle grid scan of `λ₀(θ)` followed by
//! bisection on the slope sign of each grid minimum down to a bracket of
//! width `1e−10`.  Refinement works on `λ₀` itself rather than `det Δ_θ`:
//! at fiber dimension `n·|V|` the determinant underflows long before `λ₀`
//! loses scale.

use std::f64::consts::TAU;

use crate::graph::{Monodromy, TwistAngle, VoltageGraph};
use crate::numerics::{hermitian_eigenvalues, DEFAULT_ZERO_TOL_REL};
use crate::{Error, Result};

/// Coarsest accepted scan: below this, neighbouring zeros routinely share
/// a grid dip and the count check cannot do its job.
const MIN_GRID: usize = 16;

/// Final bracket width of the slope-sign bisection.
const REFINE_WIDTH: f64 = 1e-10;

/// Half-width of the centered difference used as the slope sign.
const SLOPE_DELTA: f64 = 1e-5;

/// A refined minimum certifies a kernel only below this value; anything
/// larger is a benign interior dip.
const ZERO_ACCEPT: f64 = 1e-8;

/// Refined minima closer than this (cyclically) are the same zero seen
/// from two grid dips.
const MERGE_WIDTH: f64 = 1e-7;

/// Locate all angles `θ ∈ [0, 2π)` where the bundle Laplacian of `(g, m)`
/// acquires a kernel.
///
/// Requires a connected base with surjective voltages and a monodromy with
/// simple eigenvalues ([`Error::NonSimpleMonodromy`] otherwise — with a
/// repeated eigenvalue the per-angle bookkeeping below is ill-posed).  The
/// scan uses `grid_size` uniform angles on the full circle; each local
/// minimum is refined to width `1e−10` and accepted as a zero when
/// `λ₀ < 1e−8`.  Exactly `rank(m)` zeros must emerge, one per eigenvalue
/// angle; any other count is reported as [`Error::CountMismatch`] (the
/// usual cause is a grid too coarse to separate nearby angles).
pub fn monodromy_zero_locus(
    g: &VoltageGraph,
    m: &Monodromy,
    grid_size: usize,
) -> Result<Vec<f64>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.cycle_gcd() != 1 {
        return Err(Error::NonSurjective { gcd: g.cycle_gcd() });
    }
    if grid_size < MIN_GRID {
        return Err(Error::InvalidParameter(format!(
            "grid size {grid_size} below the minimum {MIN_GRID}"
        )));
    }
    // Simplicity check up front; the returned angles themselves are not
    // consumed — the scan below must rediscover them on its own.
    let expected = m.simple_angles()?.len();

    let lambda0 = |theta: f64| -> Result<f64> {
        let h = g.bundle_laplacian(TwistAngle::new(theta), m);
        Ok(hermitian_eigenvalues(&h, DEFAULT_ZERO_TOL_REL)?.values()[0])
    };

    let step = TAU / grid_size as f64;
    let mut values = Vec::with_capacity(grid_size);
    for j in 0..grid_size {
        values.push(lambda0(j as f64 * step)?);
    }

    let mut zeros: Vec<f64> = Vec::new();
    for j in 0..grid_size {
        let prev = values[(j + grid_size - 1) % grid_size];
        let next = values[(j + 1) % grid_size];
        if values[j] > prev || values[j] > next {
            continue;
        }
        let center = j as f64 * step;
        let refined = refine_minimum(&lambda0, center, step)?;
        if lambda0(refined)? >= ZERO_ACCEPT {
            continue;
        }
        // Report inside [0, 2π); a refinement that straddled the seam comes
        // back as 2π − O(width) and means the zero at 0.
        let mut angle = refined.rem_euclid(TAU);
        if TAU - angle < 1e-9 {
            angle = 0.0;
        }
        zeros.push(angle);
    }

    zeros.sort_by(|a, b| a.partial_cmp(b).unwrap());
    zeros.dedup_by(|a, b| (*a - *b).abs() < MERGE_WIDTH);
    if zeros.len() > 1 {
        let (first, last) = (zeros[0], *zeros.last().unwrap());
        if TAU - last + first < MERGE_WIDTH {
            zeros.pop();
        }
    }

    if zeros.len() != expected {
        return Err(Error::CountMismatch { expected, found: zeros.len() });
    }
    Ok(zeros)
}

/// Pin down the minimizer of `f` inside `[center − step, center + step]`
/// to a bracket of width [`REFINE_WIDTH`].
///
/// Value-based search (golden section) stalls here: near a quadratic
/// minimum `c·(θ−θ*)²` the eigenvalue carries an absolute noise floor
/// `ε ≈ 1e−15` from matrix assembly, so value comparisons carry no signal
/// once `|θ−θ*| < √(ε/c) ≈ 1e−8` — coarser than the accuracy the zeros
/// promise.  Bisection on the sign of the centered difference
/// `f(x+δ) − f(x−δ) ≈ 4cδ·(x−θ*)` keeps the signal above the noise down
/// to `|x−θ*| ≈ ε/(4cδ)`, two orders of magnitude tighter.
fn refine_minimum(f: &impl Fn(f64) -> Result<f64>, center: f64, step: f64) -> Result<f64> {
    let delta = SLOPE_DELTA.min(0.25 * step);
    let slope = |x: f64| -> Result<f64> { Ok(f(x + delta)? - f(x - delta)?) };
    let (mut lo, mut hi) = (center - step, center + step);
    if !(slope(lo)? <= 0.0 && slope(hi)? >= 0.0) {
        // No slope change across the window; the grid point itself is the
        // best estimate (the caller's λ₀ acceptance test decides whether
        // the dip certifies a kernel).
        return Ok(center);
    }
    while hi - lo > REFINE_WIDTH {
        let mid = 0.5 * (lo + hi);
        if slope(mid)? <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn loop_graph() -> VoltageGraph {
        VoltageGraph::parse("v 1\ne 0 0 1\n").unwrap()
    }

    #[test]
    fn rank_two_diagonal_monodromy_zeroes_at_reflected_angles() {
        let m = Monodromy::from_phases(&[0.0, std::f64::consts::FRAC_PI_2]).unwrap();
        let zeros = monodromy_zero_locus(&loop_graph(), &m, 512).unwrap();
        assert_eq!(zeros.len(), 2);
        assert!((zeros[0] - 0.0).abs() < 1e-8, "{}", zeros[0]);
        assert!((zeros[1] - 1.5 * std::f64::consts::PI).abs() < 1e-8, "{}", zeros[1]);
    }

    #[test]
    fn scalar_monodromy_zero_sits_at_minus_phi() {
        let m = Monodromy::from_phases(&[2.0]).unwrap();
        let zeros = monodromy_zero_locus(&loop_graph(), &m, 512).unwrap();
        assert_eq!(zeros.len(), 1);
        assert!((zeros[0] - (TAU - 2.0)).abs() < 1e-9, "{}", zeros[0]);
    }

    #[test]
    fn two_vertex_base_sees_the_same_locus() {
        // The fundamental cycle of the double edge has net voltage 1, so a
        // scalar monodromy e^{iφ} vanishes at the same reflected angle.
        let g = VoltageGraph::parse("v 2\ne 0 1 0\ne 0 1 1\n").unwrap();
        let m = Monodromy::from_phases(&[1.0]).unwrap();
        let zeros = monodromy_zero_locus(&g, &m, 512).unwrap();
        assert_eq!(zeros.len(), 1);
        assert!((zeros[0] - (TAU - 1.0)).abs() < 1e-9, "{}", zeros[0]);
    }

    #[test]
    fn repeated_eigenvalues_are_rejected() {
        let m = Monodromy::identity(2);
        assert!(matches!(
            monodromy_zero_locus(&loop_graph(), &m, 512),
            Err(Error::NonSimpleMonodromy)
        ));
    }

    #[test]
    fn coarse_grid_that_merges_zeros_reports_a_count_mismatch() {
        // Angles 0 and 0.02 are simple but land in one grid dip at step
        // 2π/16 ≈ 0.39.
        let m = Monodromy::from_phases(&[0.0, 0.02]).unwrap();
        assert!(matches!(
            monodromy_zero_locus(&loop_graph(), &m, 16),
            Err(Error::CountMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn non_diagonal_unitary_matches_its_eigenvalue_angles() {
        // Rotation by α has eigenvalue angles {α, 2π−α}; the reflected set
        // is the same pair, so the locus is {α, 2π−α} with α = 0.7.
        let alpha: f64 = 0.7;
        let (c, s) = (alpha.cos(), alpha.sin());
        let rows = vec![
            vec![Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
            vec![Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
        ];
        let m = Monodromy::from_rows(&rows).unwrap();
        let zeros = monodromy_zero_locus(&loop_graph(), &m, 512).unwrap();
        assert_eq!(zeros.len(), 2);
        assert!((zeros[0] - alpha).abs() < 1e-8, "{}", zeros[0]);
        assert!((zeros[1] - (TAU - alpha)).abs() < 1e-8, "{}", zeros[1]);
    }

    #[test]
    fn undersized_grid_is_rejected() {
        let m = Monodromy::from_phases(&[1.0]).unwrap();
        assert!(matches!(
            monodromy_zero_locus(&loop_graph(), &m, 8),
            Err(Error::InvalidParameter(_))
        ));
    }
}
