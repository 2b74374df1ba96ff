//! Deck-orbit folding of the cover heat trace.
//!
//! Summing the infinite-cover heat kernel over one deck orbit reproduces
//! the finite cover trace:
//!
//! `Tr e^{−tΔ_N} = N · Σ_{k∈ℤ} Σ_{x∈V} K(t; x, x, kN)`,
//!
//! because the `N`-cover is the quotient of the ℤ-cover by the subgroup
//! `Nℤ`, and every vertex of the quotient has the same `N`-fold orbit
//! structure.  The check below computes both sides by entirely different
//! routes — a dense eigensolve of the cover on the left, fiber integrals
//! of the base on the right — so agreement exercises the whole spectral
//! stack at once.

use crate::graph::{infinite_cover_heat_kernel, VoltageGraph};
use crate::numerics::{hermitian_eigenvalues, DEFAULT_ZERO_TOL_REL};
use crate::zeta::heat_trace;
use crate::{Error, Result};

/// Hard cap on orbit terms; the summand decays like a Bessel tail
/// `I_{kN}(2t)·e^{−ct}`, factorially in `k`, so this is never reached at
/// sane parameters.
const MAX_ORBIT_TERMS: usize = 64;

/// Compare the direct cover heat trace with its deck-orbit folding and
/// return the absolute residual.
///
/// The orbit sum is truncated once a term drops below `tol/10`; the fiber
/// integrals under each kernel evaluation run at a tolerance small enough
/// that the folded side carries total quadrature error well below `tol`.
pub fn verify_deck_sum(g: &VoltageGraph, sheets: usize, t: f64, tol: f64) -> Result<f64> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.cycle_gcd() != 1 {
        return Err(Error::NonSurjective { gcd: g.cycle_gcd() });
    }
    if sheets == 0 {
        return Err(Error::InvalidParameter("sheet count must be positive".into()));
    }
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter("heat time must be nonnegative".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }

    // Direct side: dense eigensolve of the N-sheet cover.
    let cover = g.cyclic_cover(sheets)?;
    let spectrum = hermitian_eigenvalues(&cover.laplacian(), DEFAULT_ZERO_TOL_REL)?;
    let direct = heat_trace(&spectrum, t);

    // Folded side: orbit sum of fundamental-domain kernel diagonals.  The
    // kernel is even in the displacement (deck translation plus symmetry
    // of the kernel), so fold k and −k together.
    let n = g.vertex_count();
    let scale = sheets as f64;
    let kernel_tol = tol / (64.0 * scale * n as f64);
    let diagonal_sum = |displacement: i64| -> Result<f64> {
        let mut acc = 0.0;
        for x in 0..n {
            acc += infinite_cover_heat_kernel(g, t, x, x, displacement, kernel_tol)?;
        }
        Ok(acc)
    };

    let mut folded = scale * diagonal_sum(0)?;
    for k in 1..=MAX_ORBIT_TERMS {
        let term = 2.0 * scale * diagonal_sum((k * sheets) as i64)?;
        folded += term;
        if term.abs() < tol / 10.0 {
            break;
        }
    }

    Ok((direct - folded).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn loop_graph() -> VoltageGraph {
        VoltageGraph::parse("v 1\ne 0 0 1\n").unwrap()
    }

    fn double_edge() -> VoltageGraph {
        VoltageGraph::parse("v 2\ne 0 1 0\ne 0 1 1\n").unwrap()
    }

    #[test]
    fn loop_three_cover_matches_its_closed_trace() {
        // Δ₃ on the 3-cycle has spectrum {0, 3, 3}: trace 1 + 2e^{−3t}.
        let g = loop_graph();
        let cover = g.cyclic_cover(3).unwrap();
        let spectrum = hermitian_eigenvalues(&cover.laplacian(), DEFAULT_ZERO_TOL_REL).unwrap();
        let direct = heat_trace(&spectrum, 1.0);
        assert_abs_diff_eq!(direct, 1.0 + 2.0 * (-3.0f64).exp(), epsilon = 1e-12);

        let residual = verify_deck_sum(&g, 3, 1.0, 1e-9).unwrap();
        assert!(residual <= 1e-9, "residual {residual:e}");
    }

    #[test]
    fn loop_two_cover_trace_is_one_plus_exp_minus_four() {
        let g = loop_graph();
        let cover = g.cyclic_cover(2).unwrap();
        let spectrum = hermitian_eigenvalues(&cover.laplacian(), DEFAULT_ZERO_TOL_REL).unwrap();
        let direct = heat_trace(&spectrum, 1.0);
        assert_abs_diff_eq!(direct, 1.018315638888734180, epsilon = 1e-13);
        let residual = verify_deck_sum(&g, 2, 1.0, 1e-9).unwrap();
        assert!(residual <= 1e-9, "residual {residual:e}");
    }

    #[test]
    fn double_edge_folds_exactly_over_a_range_of_times() {
        let g = double_edge();
        for &(sheets, t) in &[(2usize, 0.5), (3, 1.0), (5, 2.0)] {
            let residual = verify_deck_sum(&g, sheets, t, 1e-9).unwrap();
            assert!(residual <= 1e-9, "N = {sheets}, t = {t}: residual {residual:e}");
        }
    }

    #[test]
    fn zero_time_reduces_to_counting_vertices() {
        // At t = 0 both sides count the cover vertices: the kernel is the
        // Kronecker delta, so only the k = 0 term survives.
        let residual = verify_deck_sum(&double_edge(), 4, 0.0, 1e-10).unwrap();
        assert!(residual <= 1e-10, "residual {residual:e}");
    }

    #[test]
    fn bad_parameters_are_rejected() {
        let g = loop_graph();
        assert!(matches!(
            verify_deck_sum(&g, 0, 1.0, 1e-9),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            verify_deck_sum(&g, 2, -1.0, 1e-9),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            verify_deck_sum(&g, 2, 1.0, 0.0),
            Err(Error::InvalidParameter(_))
        ));
    }
}
