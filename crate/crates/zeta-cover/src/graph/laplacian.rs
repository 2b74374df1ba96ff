//! Laplacian builders: combinatorial, character-twisted, bundle-twisted.
//!
//! For a twist angle `θ` the twisted Laplacian acts on ℂ^V:
//!
//! * every edge `u →ρ v` adds `+1` to both diagonal entries,
//! * `−e^{−iθρ}` to entry `(u, v)` and `−e^{+iθρ}` to `(v, u)`.
//!
//! The same rule applied to a loop (`u = v`) drops `2 − 2cos(θρ)` on the
//! diagonal, which is exactly the loop's lift behavior in the cover, so no
//! special casing is needed.  At `θ = 0` this is the ordinary `D − A`.
//!
//! The bundle version replaces the unit character by `e^{iθρ}·U^ρ` for a
//! fixed unitary `U` (rank-`n` monodromy): entries become `n × n` blocks,
//! with `−e^{−iθρ}(U^ρ)†` at block `(u, v)` and its adjoint at `(v, u)`.
//! Rank 1 with `U = 1` reduces to the character-twisted operator.

use num_complex::Complex64;

use super::{CoverGraph, Monodromy, TwistAngle, VoltageGraph};
use crate::numerics::{HermitianMatrix, IntegerMatrix};

impl VoltageGraph {
    /// The combinatorial Laplacian `D − A` over ℤ (loops cancel and are
    /// skipped; parallel edges accumulate).
    pub fn integer_laplacian(&self) -> IntegerMatrix {
        let mut lap = IntegerMatrix::zeros(self.vertex_count());
        for &(u, v, _) in self.edges() {
            if u == v {
                continue;
            }
            lap.add(u, u, 1);
            lap.add(v, v, 1);
            lap.add(u, v, -1);
            lap.add(v, u, -1);
        }
        lap
    }

    /// The character-twisted Laplacian `Δ_θ` on ℂ^V.
    pub fn twisted_laplacian(&self, theta: TwistAngle) -> HermitianMatrix {
        let mut h = HermitianMatrix::zeros(self.vertex_count());
        for &(u, v, rho) in self.edges() {
            let phase = theta.radians() * rho as f64;
            let w = Complex64::from_polar(1.0, phase);
            h.add(u, u, Complex64::new(1.0, 0.0));
            h.add(v, v, Complex64::new(1.0, 0.0));
            h.add(u, v, -w.conj());
            h.add(v, u, -w);
        }
        h
    }

    /// The bundle-twisted Laplacian on ℂ^V ⊗ ℂ^n for a rank-`n` unitary
    /// monodromy, with vertex-major block layout (`(u, a) ↦ u·n + a`).
    pub fn bundle_laplacian(&self, theta: TwistAngle, monodromy: &Monodromy) -> HermitianMatrix {
        let n = monodromy.rank();
        let mut h = HermitianMatrix::zeros(self.vertex_count() * n);
        let one = Complex64::new(1.0, 0.0);
        for &(u, v, rho) in self.edges() {
            let phase = Complex64::from_polar(1.0, theta.radians() * rho as f64);
            let p = monodromy.power(rho);
            for a in 0..n {
                h.add(u * n + a, u * n + a, one);
                h.add(v * n + a, v * n + a, one);
                for b in 0..n {
                    // −e^{−iθρ}(U^ρ)† at (u, v); adjoint at (v, u).
                    h.add(u * n + a, v * n + b, -phase.conj() * p.entry(b, a).conj());
                    h.add(v * n + a, u * n + b, -phase * p.entry(a, b));
                }
            }
        }
        h
    }
}

impl CoverGraph {
    /// The cover's combinatorial Laplacian over ℤ.
    pub fn integer_laplacian(&self) -> IntegerMatrix {
        let mut lap = IntegerMatrix::zeros(self.vertex_count());
        for &(u, v) in self.edges() {
            if u == v {
                continue;
            }
            lap.add(u, u, 1);
            lap.add(v, v, 1);
            lap.add(u, v, -1);
            lap.add(v, u, -1);
        }
        lap
    }

    /// The cover's Laplacian as a real symmetric matrix, for eigensolves.
    pub fn laplacian(&self) -> HermitianMatrix {
        let mut h = HermitianMatrix::zeros(self.vertex_count());
        let one = Complex64::new(1.0, 0.0);
        for &(u, v) in self.edges() {
            if u == v {
                continue;
            }
            h.add(u, u, one);
            h.add(v, v, one);
            h.add(u, v, -one);
            h.add(v, u, -one);
        }
        h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::hermitian_eigenvalues;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_twist_matches_integer_laplacian() {
        let g = VoltageGraph::parse("v 3\ne 0 1 2\ne 1 2 -1\ne 2 0 0\n").unwrap();
        let twisted = g.twisted_laplacian(TwistAngle::new(0.0));
        let exact = g.integer_laplacian();
        for i in 0..3 {
            for j in 0..3 {
                let z = twisted.get(i, j);
                let expect = i64::try_from(exact.get(i, j)).unwrap() as f64;
                assert_abs_diff_eq!(z.re, expect, epsilon = 1e-15);
                assert_abs_diff_eq!(z.im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn loop_twists_to_scalar_two_minus_two_cos() {
        let g = VoltageGraph::parse("v 1\ne 0 0 1\n").unwrap();
        for &theta in &[0.0, 0.5, 1.9, std::f64::consts::PI] {
            let h = g.twisted_laplacian(TwistAngle::new(theta));
            assert_abs_diff_eq!(h.get(0, 0).re, 2.0 - 2.0 * theta.cos(), epsilon = 1e-14);
            assert_eq!(h.get(0, 0).im, 0.0, "imaginary parts must cancel exactly");
        }
    }

    #[test]
    fn double_edge_determinant_is_two_minus_two_cos() {
        // Voltages {0, 1} on a double edge: det Δ_θ = 4 − |1 + e^{iθ}|²
        // = 2 − 2cos θ.
        let g = VoltageGraph::parse("v 2\ne 0 1 0\ne 0 1 1\n").unwrap();
        for &theta in &[0.3, 1.0, 2.5, 5.0] {
            let spec = hermitian_eigenvalues(&g.twisted_laplacian(TwistAngle::new(theta)), 1e-12)
                .unwrap();
            let det: f64 = spec.values().iter().product();
            assert_abs_diff_eq!(det, 2.0 - 2.0 * theta.cos(), epsilon = 1e-12);
        }
    }

    #[test]
    fn twisted_laplacian_survives_hermitian_validation() {
        let g = VoltageGraph::parse("v 4\ne 0 1 1\ne 1 2 3\ne 2 3 -2\ne 3 0 0\ne 1 1 5\n")
            .unwrap();
        let h = g.twisted_laplacian(TwistAngle::new(2.2));
        assert!(crate::numerics::hermitian_eigen(&h).is_ok());
    }

    #[test]
    fn rank_one_trivial_bundle_reduces_to_twist() {
        let g = VoltageGraph::parse("v 2\ne 0 1 0\ne 0 1 1\ne 1 1 2\n").unwrap();
        let theta = TwistAngle::new(1.3);
        let twisted = g.twisted_laplacian(theta);
        let bundle = g.bundle_laplacian(theta, &Monodromy::identity(1));
        for i in 0..2 {
            for j in 0..2 {
                let d = twisted.get(i, j) - bundle.get(i, j);
                assert!(d.norm() < 1e-15);
            }
        }
    }

    #[test]
    fn scalar_monodromy_shifts_the_zero_angle() {
        // Loop with monodromy e^{iφ}: λ(θ) = 2 − 2cos(θ + φ), which
        // vanishes at θ ≡ −φ (mod 2π).
        let g = VoltageGraph::parse("v 1\ne 0 0 1\n").unwrap();
        let phi = 1.1;
        let m = Monodromy::from_phases(&[phi]).unwrap();
        let at = |theta: f64| g.bundle_laplacian(TwistAngle::new(theta), &m).get(0, 0).re;
        assert_abs_diff_eq!(at(-phi), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(at(0.0), 2.0 - 2.0 * phi.cos(), epsilon = 1e-14);
    }

    #[test]
    fn three_cover_of_double_edge_is_the_six_cycle() {
        let g = VoltageGraph::parse("v 2\ne 0 1 0\ne 0 1 1\n").unwrap();
        let cover = g.cyclic_cover(3).unwrap();
        let spec = hermitian_eigenvalues(&cover.laplacian(), 1e-10).unwrap();
        // C₆ spectrum: 2 − 2cos(πk/3), k = 0..5 → {0, 1, 1, 3, 3, 4}.
        let expected = [0.0, 1.0, 1.0, 3.0, 3.0, 4.0];
        for (got, want) in spec.values().iter().zip(expected) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        assert_eq!(spec.zero_count(), 1);
    }
}
