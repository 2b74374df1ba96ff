//! Zeta-regularized determinants and their cover asymptotics.
//!
//! For a finite graph Laplacian the zeta-determinant is elementary:
//! `det′ Δ = Π_{λ>0} λ` (zero modes dropped), and the quantity that
//! converges along a cover tower is its per-vertex density
//!
//! `f_N = log det′(Δ_N) / (N·|V|)`.
//!
//! As `N → ∞` the sectors `θ_p = 2πp/N` equidistribute and
//!
//! `f_N → L = (2π·|V|)⁻¹ ∫₀^{2π} log det Δ_θ dθ`,
//!
//! with rate `(C/N)·log N` driven by the quadratic vanishing of the bottom
//! band, `λ₀(θ) ≈ a·θ²`.  This module computes each piece: exact finite
//! determinants through the sector product, the limit integral with a
//! perturbative override where floating point loses `λ₀`, a Mellin-split
//! `ζ′(0)` for *infinite* spectra given their heat trace, and two closed
//! clusters of constants (square-lattice tree entropy, McKay's bound) used
//! as external checks.

mod lattice;
mod limit;
mod mellin;
mod series;

pub use lattice::{lattice2d_limit, mckay_constant};
pub use limit::{bottom_band_coefficient, theta_integral_limit};
pub use mellin::{zeta_prime_at_zero, zeta_prime_at_zero_split};
pub use series::{convergence_series, normalized_log_det};

use serde::{Deserialize, Serialize};

use crate::numerics::Spectrum;
use crate::{Error, Result};

/// Euler–Mascheroni constant, the `Γ′(1)` shift in Mellin inversion.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `log det′` — the sum of logs of the nonzero eigenvalues.
///
/// Errors with [`Error::AllZero`] on a spectrum with no positive part and
/// with [`Error::InvalidParameter`] if any eigenvalue is negative beyond
/// the zero tolerance (the operator was not positive semidefinite).
pub fn log_det_prime(spectrum: &Spectrum) -> Result<f64> {
    // Values are sorted, so the bottom one witnesses any genuine
    // negativity; such a value would otherwise hide in the zero prefix.
    if let Some(&bottom) = spectrum.values().first() {
        if bottom < -spectrum.zero_tol() {
            return Err(Error::InvalidParameter(format!(
                "negative eigenvalue {bottom:e} outside the zero tolerance"
            )));
        }
    }
    let nonzero = spectrum.nonzero();
    if nonzero.is_empty() {
        return Err(Error::AllZero);
    }
    let mut acc = 0.0;
    for &v in nonzero {
        if v <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "negative eigenvalue {v:e} outside the zero tolerance"
            )));
        }
        acc += v.ln();
    }
    Ok(acc)
}

/// Heat trace `Σ_λ e^{−λt}` over the full spectrum.
pub fn heat_trace(spectrum: &Spectrum, t: f64) -> f64 {
    spectrum.values().iter().map(|&v| (-v * t).exp()).sum()
}

/// Heat trace with zero modes removed, `Σ_{λ>0} e^{−λt}`.
pub fn heat_trace_prime(spectrum: &Spectrum, t: f64) -> f64 {
    spectrum.nonzero().iter().map(|&v| (-v * t).exp()).sum()
}

/// Zeta-determinant data of one finite operator.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ZetaResult {
    /// `log det′` (zero modes dropped).
    pub log_det_prime: f64,
    /// Normalizing volume, `N·|V|` for an `N`-cover.
    pub volume: usize,
    /// `log_det_prime / volume`.
    pub density: f64,
    /// Number of zero modes that were dropped.
    pub zero_modes: usize,
}

impl ZetaResult {
    /// Package a spectrum with its normalizing volume.
    pub fn from_spectrum(spectrum: &Spectrum, volume: usize) -> Result<Self> {
        if volume == 0 {
            return Err(Error::InvalidParameter("volume must be positive".into()));
        }
        let ldp = log_det_prime(spectrum)?;
        Ok(ZetaResult {
            log_det_prime: ldp,
            volume,
            density: ldp / volume as f64,
            zero_modes: spectrum.zero_count(),
        })
    }
}

/// One row of a convergence sweep: the density at `sheets` sheets and its
/// distance to the limit.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub sheets: usize,
    pub density: f64,
    pub abs_error: f64,
}

/// A convergence sweep `f_N → L`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceSeries {
    /// The limiting density `L` from the twist integral.
    pub limit: f64,
    /// Guaranteed absolute error bound on `limit` (0 when it is exact).
    pub limit_error: f64,
    pub entries: Vec<SeriesEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c4_spectrum() -> Spectrum {
        // The 4-cycle Laplacian spectrum, with a zero tolerance matching
        // what the eigensolver would assign.
        Spectrum::from_values(vec![0.0, 2.0, 2.0, 4.0], 1.6e-9)
    }

    #[test]
    fn log_det_prime_multiplies_nonzero_eigenvalues() {
        let ldp = log_det_prime(&c4_spectrum()).unwrap();
        assert_abs_diff_eq!(ldp, 16.0f64.ln(), epsilon = 1e-14);
    }

    #[test]
    fn all_zero_spectrum_is_an_error() {
        let spec = Spectrum::from_values(vec![0.0, 1e-12], 1e-9);
        assert!(matches!(log_det_prime(&spec), Err(Error::AllZero)));
    }

    #[test]
    fn negative_eigenvalue_is_rejected() {
        let spec = Spectrum::from_values(vec![-0.5, 1.0], 1e-9);
        assert!(matches!(log_det_prime(&spec), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn heat_traces_differ_by_the_zero_modes() {
        let spec = c4_spectrum();
        for &t in &[0.1, 1.0, 3.0] {
            let full = heat_trace(&spec, t);
            let prime = heat_trace_prime(&spec, t);
            assert_abs_diff_eq!(full - prime, 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(
                prime,
                2.0 * (-2.0 * t).exp() + (-4.0 * t).exp(),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn density_is_log_det_over_volume_by_construction() {
        let z = ZetaResult::from_spectrum(&c4_spectrum(), 4).unwrap();
        assert_eq!(z.density, z.log_det_prime / z.volume as f64);
        assert_eq!(z.zero_modes, 1);
        assert_abs_diff_eq!(z.density, 2.0f64.ln(), epsilon = 1e-14);
    }
}
