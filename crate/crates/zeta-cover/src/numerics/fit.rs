//! Least-squares power-law fitting, `y ≈ C·x^p`, on log–log axes.
//!
//! Used to read off the local exponent of the bottom eigenvalue band
//! `λ₀(θ) ~ b·θ^{2p}` near `θ = 0`.  A linear regression of `log y`
//! against `log x` gives the exponent as the slope; the driver refuses
//! clearly under-determined inputs (too few samples, samples that do not
//! span at least a decade in `x`, or non-positive values where the logs
//! would be meaningless) rather than returning a fit nobody should trust.

use crate::{Error, Result};

const MIN_SAMPLES: usize = 8;
const MIN_DECADES: f64 = 1.0;

/// Result of a power-law fit `y ≈ amplitude · x^exponent`.
#[derive(Clone, Copy, Debug)]
pub struct PowerFit {
    pub exponent: f64,
    pub amplitude: f64,
    /// Coefficient of determination of the log–log regression.
    pub r_squared: f64,
}

/// Fit `y ≈ C·x^p` through `(x, y)` samples by least squares on logs.
///
/// Requires at least 8 samples, all with `x > 0` and `y > 0`, spanning at
/// least one decade in `x`; otherwise returns [`Error::DegenerateSamples`].
pub fn fit_power_exponent(samples: &[(f64, f64)]) -> Result<PowerFit> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::DegenerateSamples("fewer than 8 samples"));
    }
    if samples.iter().any(|&(x, y)| !(x > 0.0) || !(y > 0.0)) {
        return Err(Error::DegenerateSamples("samples must have positive x and y"));
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, _) in samples {
        lo = lo.min(x);
        hi = hi.max(x);
    }
    if (hi / lo).log10() < MIN_DECADES {
        return Err(Error::DegenerateSamples("x range spans less than one decade"));
    }

    let n = samples.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(x, y) in samples {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    let det = n * sxx - sx * sx;
    if det <= 0.0 {
        return Err(Error::DegenerateSamples("x values are all identical"));
    }
    let slope = (n * sxy - sx * sy) / det;
    let intercept = (sy - slope * sx) / n;

    let ss_tot = syy - sy * sy / n;
    let mut ss_res = 0.0;
    for &(x, y) in samples {
        let pred = intercept + slope * x.ln();
        let resid = y.ln() - pred;
        ss_res += resid * resid;
    }
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };

    Ok(PowerFit { exponent: slope, amplitude: intercept.exp(), r_squared })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn planted(exponent: f64, amplitude: f64) -> Vec<(f64, f64)> {
        (0..12)
            .map(|i| {
                let x = 1e-3 * 1.9f64.powi(i);
                (x, amplitude * x.powf(exponent))
            })
            .collect()
    }

    #[test]
    fn recovers_planted_quadratic() {
        let fit = fit_power_exponent(&planted(2.0, 0.25)).unwrap();
        assert_abs_diff_eq!(fit.exponent, 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(fit.amplitude, 0.25, epsilon = 1e-10);
        assert!(fit.r_squared > 1.0 - 1e-12);
    }

    #[test]
    fn recovers_planted_quartic_with_noise() {
        let mut samples = planted(4.0, 3.0);
        for (i, (_, y)) in samples.iter_mut().enumerate() {
            *y *= 1.0 + 1e-4 * if i % 2 == 0 { 1.0 } else { -1.0 };
        }
        let fit = fit_power_exponent(&samples).unwrap();
        assert_abs_diff_eq!(fit.exponent, 4.0, epsilon = 1e-3);
    }

    #[test]
    fn rejects_too_few_samples() {
        let samples = planted(2.0, 1.0)[..5].to_vec();
        assert!(matches!(
            fit_power_exponent(&samples),
            Err(Error::DegenerateSamples(_))
        ));
    }

    #[test]
    fn rejects_narrow_range() {
        let samples: Vec<_> = (0..10).map(|i| (1.0 + i as f64 * 0.01, 2.0)).collect();
        assert!(matches!(
            fit_power_exponent(&samples),
            Err(Error::DegenerateSamples(_))
        ));
    }

    #[test]
    fn rejects_nonpositive_values() {
        let mut samples = planted(2.0, 1.0);
        samples[3].1 = 0.0;
        assert!(matches!(
            fit_power_exponent(&samples),
            Err(Error::DegenerateSamples(_))
        ));
    }
}
