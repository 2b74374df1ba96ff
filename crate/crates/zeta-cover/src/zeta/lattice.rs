//! Closed-cluster reference constants: the square-lattice determinant
//! density and McKay's tree-entropy bound for regular graphs.
//!
//! The ℤ² analogue of the one-dimensional twist integral is
//!
//! `α = (2π)⁻² ∬_{[0,2π]²} log(4 − 2cosφ − 2cosψ) dφ dψ`,
//!
//! the per-site log-determinant density of the square lattice (equal to
//! `4·G/π` with Catalan's `G`; we evaluate the double integral directly
//! and keep the closed form in the tests).  For degree-`k` regular graphs,
//! spanning-tree counts per vertex are asymptotically bounded by
//!
//! `c_k = (k−1)^{k−1} / (k² − 2k)^{k/2−1}`,
//!
//! so `log c_k` is a ceiling against which measured densities can be
//! compared.

use std::cell::RefCell;

use crate::numerics::{integrate_adaptive, QuadResult, SingularEnds};
use crate::{Error, Result};

/// Largest degree for which `c_k` is evaluated in plain `f64` powers.
const MAX_DEGREE: usize = 128;

/// McKay's constant `c_k` for `k`-regular graphs (`k ≥ 3`).
///
/// Even `k` uses exact integer exponents, so e.g. `c₄ = 27/8` is produced
/// as the exact dyadic `3.375`.
pub fn mckay_constant(k: usize) -> Result<f64> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "McKay's constant needs degree ≥ 3, got {k}"
        )));
    }
    if k > MAX_DEGREE {
        return Err(Error::TooLarge { limit: MAX_DEGREE, actual: k });
    }
    let base = (k - 1) as f64;
    let denom_base = (k * k - 2 * k) as f64;
    let numerator = base.powi(k as i32 - 1);
    let denominator = if k % 2 == 0 {
        denom_base.powi(k as i32 / 2 - 1)
    } else {
        denom_base.powf(k as f64 / 2.0 - 1.0)
    };
    Ok(numerator / denominator)
}

/// The square-lattice density `α = (2π)⁻² ∬ log(4 − 2cosφ − 2cosψ)`.
///
/// Evaluated as a genuinely nested adaptive integral: the inner ψ-average
/// is recomputed at every outer node.  The inner integrand is
/// log-singular only while `4 − 2cosφ` is near 2 (the corner of the
/// Brillouin zone), so endpoint refinement is switched on just there; the
/// outer integrand is continuous with a `|φ|` kink at 0 and 2π, which the
/// flagged endpoints resolve as well.
pub fn lattice2d_limit(tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let tau = std::f64::consts::TAU;
    // Split the budget between the two nesting levels: each raw integral
    // gets π·tol, and each is later divided by 2π.
    let raw_tol = std::f64::consts::PI * tol;

    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let outer_integrand = |phi: f64| -> f64 {
        let a = 4.0 - 2.0 * phi.cos();
        let ends = if a - 2.0 < 0.05 { SingularEnds::both() } else { SingularEnds::none() };
        let inner: Result<QuadResult> =
            integrate_adaptive(|psi: f64| (a - 2.0 * psi.cos()).ln(), 0.0, tau, raw_tol, ends);
        match inner {
            Ok(q) => q.value / tau,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let outer = integrate_adaptive(outer_integrand, 0.0, tau, raw_tol, SingularEnds::both())?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(outer.value / tau)
}
