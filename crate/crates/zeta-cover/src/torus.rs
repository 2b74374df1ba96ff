//! Flat-torus determinants: an exactly solvable continuum cross-check.
//!
//! The torus ℝ²/(ℤ + τℤ), τ = a + ib with b > 0, has Laplace spectrum
//! `λ_{m,n} = 4π²·(m² + (n − ma)²/b²)` over the dual lattice, and its
//! zeta determinant is classical:
//!
//! `det′_ζ Δ_τ = (Im τ)² · |η(τ)|⁴`,
//!
//! with Dedekind's `η(τ) = q^{1/24} Π_{n≥1} (1 − qⁿ)`, `q = e^{2πiτ}`.
//! That gives an independent target for the Mellin-split `ζ′(0)` driver:
//! the heat trace here is summable two ways — termwise over the dual
//! lattice for large time, and through Poisson summation
//! `Tr(t) = (b/4πt)·Σ_{v∈Λ} e^{−|v|²/4t}` for small time — so the trace
//! is cheap and machine-accurate at every `t`, and
//! `ζ′(0) = −log det′_ζ` can be verified to quadrature accuracy.
//!
//! The same closed form drives a continuum convergence series: stretching
//! tori `τ_N = i·N·ℓ` give densities
//! `f_N = log det′_ζ(τ_N)/(N·ℓ) → −π/3`, the two-dimensional analogue of
//! the cover sweep (computed in log form, so large `N·ℓ` never
//! underflows).

use num_complex::Complex64;

use crate::zeta::{zeta_prime_at_zero, ConvergenceSeries, SeriesEntry};
use crate::{Error, Result};

/// Time below which the heat trace switches to its Poisson-summed form.
const POISSON_SWITCH: f64 = 0.2;
/// Smallest `Im τ` the eta product evaluates without fuss.
const MIN_IM: f64 = 1e-4;
/// Magnitude below which further eta factors cannot move an f64 result.
const ETA_TERM_FLOOR: f64 = 1e-18;
const MAX_SHELLS: usize = 10_000;

/// A point `τ = a + ib` of the upper half plane, fixing the torus shape.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModularParameter {
    re: f64,
    im: f64,
}

impl ModularParameter {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() || im <= 0.0 {
            return Err(Error::InvalidParameter(
                "modular parameter needs finite re and im > 0".into(),
            ));
        }
        Ok(ModularParameter { re, im })
    }

    /// Purely imaginary `τ = iy` (rectangular torus).
    pub fn imaginary(y: f64) -> Result<Self> {
        ModularParameter::new(0.0, y)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }
}

fn require_eta_range(tau: &ModularParameter) -> Result<()> {
    if tau.im < MIN_IM {
        return Err(Error::InvalidParameter(format!(
            "eta product needs Im τ ≥ {MIN_IM:e} (got {})",
            tau.im
        )));
    }
    Ok(())
}

/// Dedekind `η(τ)` by its `q`-product, truncated below f64 resolution.
pub fn dedekind_eta(tau: &ModularParameter) -> Result<Complex64> {
    require_eta_range(tau)?;
    let two_pi = std::f64::consts::TAU;
    let q = Complex64::from_polar((-two_pi * tau.im).exp(), two_pi * tau.re);
    let mut eta = Complex64::from_polar(
        (-std::f64::consts::PI * tau.im / 12.0).exp(),
        std::f64::consts::PI * tau.re / 12.0,
    );
    let mut q_pow = Complex64::new(1.0, 0.0);
    loop {
        q_pow *= q;
        if q_pow.norm() < ETA_TERM_FLOOR {
            break;
        }
        eta *= Complex64::new(1.0, 0.0) - q_pow;
    }
    Ok(eta)
}

/// `log |η(τ)|` in a form stable for arbitrarily large `Im τ`.
pub fn log_abs_eta(tau: &ModularParameter) -> Result<f64> {
    require_eta_range(tau)?;
    let two_pi = std::f64::consts::TAU;
    let mut log_abs = -std::f64::consts::PI * tau.im / 12.0;
    let q = Complex64::from_polar((-two_pi * tau.im).exp(), two_pi * tau.re);
    let mut q_pow = Complex64::new(1.0, 0.0);
    loop {
        q_pow *= q;
        if q_pow.norm() < ETA_TERM_FLOOR {
            break;
        }
        log_abs += (Complex64::new(1.0, 0.0) - q_pow).norm().ln();
    }
    Ok(log_abs)
}

/// The zeta determinant `det′_ζ Δ_τ = (Im τ)²·|η(τ)|⁴`.
pub fn det_zeta(tau: &ModularParameter) -> Result<f64> {
    Ok(tau.im * tau.im * (4.0 * log_abs_eta(tau)?).exp())
}

/// Full heat trace `Σ_{m,n} e^{−λ_{m,n} t}` (zero mode included).
///
/// Uses the dual-lattice sum for `t ≥ 0.2` and the Poisson-summed form
/// below, truncating square shells once a whole shell falls under
/// `tol/10`.
pub fn heat_trace(tau: &ModularParameter, t: f64, tol: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter("heat time must be positive".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    if t >= POISSON_SWITCH {
        trace_direct(tau, t, tol)
    } else {
        trace_poisson(tau, t, tol)
    }
}

/// Termwise dual-lattice sum, efficient for large `t`.
fn trace_direct(tau: &ModularParameter, t: f64, tol: f64) -> Result<f64> {
    let (a, b) = (tau.re, tau.im);
    let lambda = |m: f64, n: f64| {
        let d = (n - m * a) / b;
        4.0 * std::f64::consts::PI * std::f64::consts::PI * (m * m + d * d)
    };
    shell_sum(tol, |r| {
        let mut acc = 0.0;
        for (m, n) in shell_indices(r) {
            acc += (-lambda(m as f64, n as f64) * t).exp();
        }
        acc
    })
}

/// Poisson-summed form `(b/4πt)·Σ_Λ e^{−|v|²/4t}`, efficient for small `t`.
fn trace_poisson(tau: &ModularParameter, t: f64, tol: f64) -> Result<f64> {
    let (a, b) = (tau.re, tau.im);
    let prefactor = b / (4.0 * std::f64::consts::PI * t);
    let norm_sq = |m: f64, n: f64| {
        let x = m + n * a;
        let y = n * b;
        x * x + y * y
    };
    let inner = shell_sum(tol / prefactor, |r| {
        let mut acc = 0.0;
        for (m, n) in shell_indices(r) {
            acc += (-norm_sq(m as f64, n as f64) / (4.0 * t)).exp();
        }
        acc
    })?;
    Ok(prefactor * inner)
}

/// Indices with `max(|m|, |n|) = r` (all pairs when `r = 0`).
fn shell_indices(r: i64) -> Vec<(i64, i64)> {
    if r == 0 {
        return vec![(0, 0)];
    }
    let mut idx = Vec::with_capacity(8 * r as usize);
    for m in -r..=r {
        idx.push((m, r));
        idx.push((m, -r));
    }
    for n in (-r + 1)..r {
        idx.push((r, n));
        idx.push((-r, n));
    }
    idx
}

fn shell_sum(tol: f64, shell: impl Fn(i64) -> f64) -> Result<f64> {
    let mut total = 0.0;
    for r in 0..MAX_SHELLS as i64 {
        let s = shell(r);
        total += s;
        if r >= 1 && s < tol / 10.0 {
            return Ok(total);
        }
    }
    Err(Error::ToleranceNotMet { requested: tol, achieved: f64::INFINITY })
}

/// `ζ′(0)` of the torus through the Mellin split — the numerical route,
/// to be compared against `−log det′_ζ` from the eta closed form.
pub fn zeta_prime_numeric(tau: &ModularParameter, tol: f64) -> Result<f64> {
    let failure = std::cell::RefCell::new(None);
    let trace = |t: f64| -> f64 {
        match heat_trace(tau, t, 1e-14) {
            Ok(v) => v - 1.0,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let c_minus1 = tau.im / (4.0 * std::f64::consts::PI);
    let z = zeta_prime_at_zero(trace, c_minus1, -1.0, tol)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(z)
}

/// Stretching-torus densities `f_N = log det′_ζ(i·N·ℓ)/(N·ℓ)`, with the
/// limit `−π/3` — the continuum analogue of the cover sweep.
pub fn limit_series(ell: f64, sheet_counts: &[usize]) -> Result<ConvergenceSeries> {
    if !(ell > 0.0) || !ell.is_finite() {
        return Err(Error::InvalidParameter("stretch step must be positive".into()));
    }
    if sheet_counts.is_empty() {
        return Err(Error::InvalidParameter("no stretch factors given".into()));
    }
    let limit = -std::f64::consts::PI / 3.0;
    let mut entries = Vec::with_capacity(sheet_counts.len());
    for &n in sheet_counts {
        if n == 0 {
            return Err(Error::InvalidParameter("stretch factor must be positive".into()));
        }
        let y = n as f64 * ell;
        let tau = ModularParameter::imaginary(y)?;
        // log det′_ζ = 2·log y + 4·log|η(iy)|, evaluated in log form so
        // large stretches never underflow.
        let density = (2.0 * y.ln() + 4.0 * log_abs_eta(&tau)?) / y;
        entries.push(SeriesEntry { sheets: n, density, abs_error: (density - limit).abs() });
    }
    // The limit is the closed constant −π/3, exact up to representation.
    Ok(ConvergenceSeries { limit, limit_error: 0.0, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn eta_matches_pinned_values_on_the_imaginary_axis() {
        // η(i) = Γ(1/4)/(2π^{3/4}) and η(2i), both to 18 digits.
        let eta_i = dedekind_eta(&ModularParameter::imaginary(1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(eta_i.re, 0.768225422326056659, epsilon = 1e-15);
        assert_abs_diff_eq!(eta_i.im, 0.0, epsilon = 1e-16);
        let eta_2i = dedekind_eta(&ModularParameter::imaginary(2.0).unwrap()).unwrap();
        assert_abs_diff_eq!(eta_2i.re, 0.592382781332415885, epsilon = 1e-15);
    }

    #[test]
    fn eta_matches_pinned_value_off_axis() {
        let tau = ModularParameter::new(0.5, 1.0).unwrap();
        let eta = dedekind_eta(&tau).unwrap();
        assert_abs_diff_eq!(eta.re, 0.764503166797142301, epsilon = 1e-15);
        assert_abs_diff_eq!(eta.im, 0.100648751322317267, epsilon = 1e-15);
        assert_abs_diff_eq!(log_abs_eta(&tau).unwrap(), eta.norm().ln(), epsilon = 1e-14);
    }

    #[test]
    fn eta_translation_covariance() {
        // η(τ+1) = e^{iπ/12}·η(τ).
        let tau = ModularParameter::new(0.3, 0.8).unwrap();
        let shifted = ModularParameter::new(1.3, 0.8).unwrap();
        let lhs = dedekind_eta(&shifted).unwrap();
        let rhs = Complex64::from_polar(1.0, std::f64::consts::PI / 12.0)
            * dedekind_eta(&tau).unwrap();
        assert_abs_diff_eq!(lhs.re, rhs.re, epsilon = 1e-14);
        assert_abs_diff_eq!(lhs.im, rhs.im, epsilon = 1e-14);
    }

    #[test]
    fn eta_inversion_covariance() {
        // η(i/y) = √y·η(iy).
        let y = 2.0;
        let lhs = dedekind_eta(&ModularParameter::imaginary(1.0 / y).unwrap()).unwrap();
        let rhs = y.sqrt() * dedekind_eta(&ModularParameter::imaginary(y).unwrap()).unwrap();
        assert_abs_diff_eq!(lhs.re, rhs.re, epsilon = 1e-13);
        assert_abs_diff_eq!(lhs.im, rhs.im, epsilon = 1e-13);
    }

    #[test]
    fn det_zeta_matches_pinned_values() {
        let cases = [
            (0.0, 1.0, 0.348300982421419215),
            (0.0, 2.0, 0.492571973128244025),
            (0.5, 1.0, 0.353543527002753935),
        ];
        for (re, im, expected) in cases {
            let tau = ModularParameter::new(re, im).unwrap();
            assert_abs_diff_eq!(det_zeta(&tau).unwrap(), expected, epsilon = 1e-14);
        }
    }

    #[test]
    fn direct_and_poisson_traces_agree_in_the_overlap() {
        for tau in [
            ModularParameter::imaginary(1.0).unwrap(),
            ModularParameter::new(0.5, 1.0).unwrap(),
        ] {
            for &t in &[0.12, 0.2, 0.35] {
                let direct = trace_direct(&tau, t, 1e-14).unwrap();
                let poisson = trace_poisson(&tau, t, 1e-14).unwrap();
                assert_abs_diff_eq!(direct, poisson, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn trace_approaches_the_zero_mode_at_large_time() {
        let tau = ModularParameter::imaginary(1.0).unwrap();
        let tr = heat_trace(&tau, 50.0, 1e-14).unwrap();
        assert_abs_diff_eq!(tr, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn mellin_route_recovers_minus_log_det() {
        let tau = ModularParameter::imaginary(1.0).unwrap();
        let z = zeta_prime_numeric(&tau, 1e-8).unwrap();
        assert_abs_diff_eq!(z, 1.054688280995672, epsilon = 1e-7);
        assert_abs_diff_eq!(z, -det_zeta(&tau).unwrap().ln(), epsilon = 1e-7);
    }

    #[test]
    fn stretch_series_matches_pinned_densities() {
        let series = limit_series(1.0, &[10, 100]).unwrap();
        assert_abs_diff_eq!(series.limit, -std::f64::consts::PI / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(series.entries[0].density, -0.586680532597788609, epsilon = 1e-13);
        assert_abs_diff_eq!(series.entries[1].density, -0.955094147476835919, epsilon = 1e-13);
        assert!(series.entries[1].abs_error < series.entries[0].abs_error);
    }

    #[test]
    fn large_stretches_stay_finite_in_log_form() {
        let series = limit_series(1.0, &[20000]).unwrap();
        let f = series.entries[0].density;
        assert!(f.is_finite());
        // By then the q-corrections are invisible: f ≈ (2 log y)/y − π/3.
        let y: f64 = 20000.0;
        assert_abs_diff_eq!(
            f,
            2.0 * y.ln() / y - std::f64::consts::PI / 3.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(ModularParameter::new(0.0, 0.0).is_err());
        assert!(ModularParameter::new(0.0, -1.0).is_err());
        assert!(ModularParameter::new(f64::NAN, 1.0).is_err());
        let thin = ModularParameter::new(0.0, 1e-6).unwrap();
        assert!(matches!(dedekind_eta(&thin), Err(Error::InvalidParameter(_))));
        let tau = ModularParameter::imaginary(1.0).unwrap();
        assert!(heat_trace(&tau, 0.0, 1e-10).is_err());
        assert!(heat_trace(&tau, 1.0, 0.0).is_err());
    }
}
