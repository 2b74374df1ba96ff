//! The limiting density as a twist integral, `L = (2π|V|)⁻¹ ∫ log det Δ_θ dθ`.
//!
//! Two numerical hazards live at the endpoints `θ ∈ {0, 2π}`:
//!
//! 1. `log det Δ_θ ~ 2 log θ` diverges (integrably) because the bottom
//!    band vanishes quadratically, `λ₀(θ) = a·θ² + O(θ⁴)` — handled by
//!    the quadrature's geometric endpoint refinement;
//! 2. below `θ ≈ 10⁻⁸` the matrix entries `2 − 2cos(θρ)` round to the
//!    `θ = 0` matrix, so the *computed* `λ₀` is pure eigensolver noise.
//!    Handled analytically: for `θ < 10⁻⁴` the integrand replaces the
//!    computed bottom eigenvalue by `a·θ²`, with `a` obtained once from
//!    second-order perturbation theory at `θ = 0`.  The neglected `O(θ⁴)`
//!    correction perturbs `log λ₀` by `O(θ²) < 10⁻⁸`, far below the
//!    quadrature tolerances in use.
//!
//! The coefficient itself is
//!
//! `a = ⟨v₀|Δ̈₀/2|v₀⟩ − Σ_{i>0} |⟨v_i|Δ̇₀|v₀⟩|² / λ_i(0)`,
//!
//! with `v₀ = 𝟙/√|V|` the exact kernel vector of the untwisted Laplacian
//! and `Δ̇₀`, `Δ̈₀` the edge-wise θ-derivatives (`Δ̇₀[u,v] = iρ` and
//! `Δ̈₀[u,v]/2 = ρ²/2` per edge `u →ρ v`).  For a connected surjective
//! voltage graph `a > 0`: expanding `det Δ_θ` over cycle-rooted spanning
//! forests writes it as a sum of products `Π_γ (2 − 2cos(θ·ρ_γ))` with at
//! least one forest whose single cycle has nonzero net voltage.

use std::cell::RefCell;

use num_complex::Complex64;

use crate::graph::{TwistAngle, VoltageGraph};
use crate::numerics::{
    hermitian_eigen, integrate_adaptive, SingularEnds, DEFAULT_ZERO_TOL_REL,
};
use crate::{Error, Result};

/// Below this angle the bottom eigenvalue comes from perturbation theory
/// rather than the eigensolver.
const THETA_SWITCH: f64 = 1e-4;

fn require_cover_ready(g: &VoltageGraph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.cycle_gcd() != 1 {
        return Err(Error::NonSurjective { gcd: g.cycle_gcd() });
    }
    Ok(())
}

/// Second-order coefficient `a` of the bottom band, `λ₀(θ) = a·θ² + O(θ⁴)`.
pub fn bottom_band_coefficient(g: &VoltageGraph) -> Result<f64> {
    require_cover_ready(g)?;
    let n = g.vertex_count();
    let eig = hermitian_eigen(&g.twisted_laplacian(TwistAngle::new(0.0)))?;
    let lambda_max = eig.values.last().copied().unwrap_or(0.0);
    let zero_tol = DEFAULT_ZERO_TOL_REL * lambda_max.max(1.0) * n as f64;

    // ⟨v₀|Δ̈₀/2|v₀⟩ with v₀ = 𝟙/√n: every edge contributes ρ²/n.
    let second: f64 =
        g.edges().iter().map(|&(_, _, rho)| (rho as f64) * (rho as f64)).sum::<f64>() / n as f64;

    // w = Δ̇₀ v₀: component u is i·(net outgoing voltage at u)/√n.
    let mut net = vec![0.0f64; n];
    for &(u, v, rho) in g.edges() {
        net[u] += rho as f64;
        net[v] -= rho as f64;
    }
    let scale = 1.0 / (n as f64).sqrt();
    let w: Vec<Complex64> = net.iter().map(|&x| Complex64::new(0.0, x * scale)).collect();

    let mut correction = 0.0;
    for k in 0..n {
        if eig.values[k] <= zero_tol {
            continue;
        }
        let mut overlap = Complex64::new(0.0, 0.0);
        for x in 0..n {
            overlap += eig.vector_entry(k, x).conj() * w[x];
        }
        correction += overlap.norm_sqr() / eig.values[k];
    }

    let a = second - correction;
    if a <= 0.0 {
        return Err(Error::GapCollapse);
    }
    Ok(a)
}

/// `log det Δ_θ` with the perturbative bottom-band override near `θ = 0`.
pub(crate) fn log_det_twisted(g: &VoltageGraph, theta: f64, a: f64) -> Result<f64> {
    let eig = hermitian_eigen(&g.twisted_laplacian(TwistAngle::new(theta)))?;
    let distance = theta.rem_euclid(std::f64::consts::TAU);
    let distance = distance.min(std::f64::consts::TAU - distance);
    let mut acc = 0.0;
    let mut values = eig.values.iter();
    if distance < THETA_SWITCH {
        values.next();
        acc += (a * distance * distance).ln();
    }
    for &v in values {
        if v <= 0.0 {
            return Err(Error::GapCollapse);
        }
        acc += v.ln();
    }
    Ok(acc)
}

/// The limiting density `L = (2π·|V|)⁻¹ ∫₀^{2π} log det Δ_θ dθ`.
///
/// `tol` is the absolute accuracy requested for `L` itself.
pub fn theta_integral_limit(g: &VoltageGraph, tol: f64) -> Result<f64> {
    require_cover_ready(g)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let a = bottom_band_coefficient(g)?;
    let volume = g.vertex_count() as f64;

    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |theta: f64| -> f64 {
        match log_det_twisted(g, theta, a) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let raw_tol = tol * std::f64::consts::TAU * volume;
    let q = integrate_adaptive(
        integrand,
        0.0,
        std::f64::consts::TAU,
        raw_tol,
        SingularEnds::both(),
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(q.value / (std::f64::consts::TAU * volume))
}

#[allow(dead_code)]
pub(crate) fn perturbation_switch() -> f64 {
    THETA_SWITCH
}
