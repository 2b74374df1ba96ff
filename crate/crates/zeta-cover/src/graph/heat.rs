//! Heat kernel of the infinite ℤ-cover by fiberwise diagonalization.
//!
//! Fourier analysis along the deck direction block-diagonalizes the
//! ℤ-cover Laplacian into the twisted family `{Δ_θ}`, giving the kernel
//! between `(x, 0)` and `(y, m)` as
//!
//! `K(t; x, y, m) = (2π)⁻¹ ∫₀^{2π} e^{imθ} [e^{−tΔ_θ}]_{xy} dθ`.
//!
//! The integral is automatically real: `Δ_{2π−θ}` is the entrywise
//! conjugate of `Δ_θ`, so the substitution `θ ↦ 2π−θ` conjugates the
//! integrand.  The single loop with voltage 1 (the graph ℤ as a cover)
//! reproduces the classical lattice kernel `e^{−2t} I_m(2t)`.

use std::cell::RefCell;

use num_complex::Complex64;

use super::VoltageGraph;
use crate::numerics::{hermitian_eigen, integrate_adaptive, SingularEnds};
use crate::{Error, Result};

/// Heat kernel of the infinite cyclic cover between `(x, 0)` and `(y, m)`.
///
/// `t` is the (nonnegative) heat time and `tol` the requested absolute
/// accuracy of the fiber integral.
pub fn infinite_cover_heat_kernel(
    g: &VoltageGraph,
    t: f64,
    x: usize,
    y: usize,
    m: i64,
    tol: f64,
) -> Result<f64> {
    if x >= g.vertex_count() || y >= g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "kernel endpoints ({x}, {y}) outside 0..{}",
            g.vertex_count()
        )));
    }
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter("heat time must be nonnegative".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }

    // The integrand cannot report failure through the quadrature closure;
    // stash the first eigensolver error and surface it afterwards.
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |theta: f64| -> f64 {
        match hermitian_eigen(&g.twisted_laplacian(super::TwistAngle::new(theta))) {
            Ok(eig) => {
                let entry = eig.function_entry(|lambda| (-t * lambda).exp(), x, y);
                (Complex64::from_polar(1.0, m as f64 * theta) * entry).re
            }
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let q = integrate_adaptive(integrand, 0.0, std::f64::consts::TAU, tol, SingularEnds::none())?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(q.value / std::f64::consts::TAU)
}
