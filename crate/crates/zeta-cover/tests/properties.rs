//! Property-based invariants tying the spectral pipeline together:
//! random voltage graphs exercise the sector decomposition, deck symmetry,
//! matrix-tree agreement, and the numerical kernels they all stand on.

use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::collection::vec;
use proptest::prelude::*;
use std::f64::consts::TAU;

use zeta_cover::analysis::verify_matrix_tree_voltage;
use zeta_cover::cli::{emit_series, parse_series, Format};
use zeta_cover::graph::{Monodromy, TwistAngle, VoltageGraph};
use zeta_cover::numerics::{
    fit_power_exponent, hermitian_eigen, hermitian_eigenvalues, integer_determinant,
    integrate_adaptive, HermitianMatrix, IntegerMatrix, SingularEnds, DEFAULT_ZERO_TOL_REL,
};
use zeta_cover::zeta::{
    heat_trace, log_det_prime, normalized_log_det, ConvergenceSeries, SeriesEntry,
};

prop_compose! {
    /// A connected voltage graph on ≤ 5 vertices: a random spanning tree
    /// plus one to three extra edges (loops allowed).  Surjectivity of the
    /// voltage map is not forced — tests that need it filter on
    /// `cycle_gcd() == 1`, which the small random voltages hit most of the
    /// time.
    fn arb_voltage_graph()
        (n in 1usize..=5)
        (n in Just(n),
         parents in vec(any::<prop::sample::Index>(), n - 1),
         tree_voltages in vec(-2i64..=2, n - 1),
         extras in vec((any::<prop::sample::Index>(), any::<prop::sample::Index>(), -3i64..=3), 1..=3))
        -> VoltageGraph
    {
        let mut edges: Vec<(usize, usize, i64)> = Vec::new();
        for i in 1..n {
            edges.push((parents[i - 1].index(i), i, tree_voltages[i - 1]));
        }
        for &(ref u, ref v, rho) in &extras {
            edges.push((u.index(n), v.index(n), rho));
        }
        VoltageGraph::new(n, edges).expect("endpoints are in range by construction")
    }
}

fn arb_hermitian(dim: usize) -> impl Strategy<Value = HermitianMatrix> {
    vec(vec((-3.0f64..3.0, -3.0f64..3.0), dim), dim).prop_map(move |raw| {
        let mut h = HermitianMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..=i {
                let (re, im) = raw[i][j];
                if i == j {
                    h.set(i, i, Complex64::new(re, 0.0));
                } else {
                    h.set(i, j, Complex64::new(re, im));
                    h.set(j, i, Complex64::new(re, -im));
                }
            }
        }
        h
    })
}

fn arb_series() -> impl Strategy<Value = ConvergenceSeries> {
    (
        -10.0f64..10.0,
        0.0f64..1e-3,
        vec((1usize..100_000, -10.0f64..10.0, 0.0f64..1.0), 1..6),
    )
        .prop_map(|(limit, limit_error, rows)| ConvergenceSeries {
            limit,
            limit_error,
            entries: rows
                .into_iter()
                .map(|(sheets, density, abs_error)| SeriesEntry { sheets, density, abs_error })
                .collect(),
        })
}

/// Determinant by cofactor expansion — exponential, but an independent
/// oracle for the fraction-free elimination.
fn cofactor_determinant(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    if n == 1 {
        return rows[0][0];
    }
    let mut det = 0i64;
    for (j, &pivot) in rows[0].iter().enumerate() {
        if pivot == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        det += sign * pivot * cofactor_determinant(&minor);
    }
    det
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cover_spectrum_is_the_union_of_sector_spectra(
        g in arb_voltage_graph(),
        sheets in 2usize..=16,
    ) {
        prop_assume!(g.cycle_gcd() == 1);
        let cover = g.cyclic_cover(sheets).unwrap();
        let direct = hermitian_eigenvalues(&cover.laplacian(), DEFAULT_ZERO_TOL_REL).unwrap();
        let mut pooled: Vec<f64> = Vec::new();
        for p in 0..sheets {
            let h = g.twisted_laplacian(TwistAngle::sector(p, sheets));
            pooled.extend(hermitian_eigenvalues(&h, DEFAULT_ZERO_TOL_REL).unwrap().values());
        }
        pooled.sort_by(|a, b| a.partial_cmp(b).unwrap());
        prop_assert_eq!(direct.values().len(), pooled.len());
        for (a, b) in direct.values().iter().zip(&pooled) {
            prop_assert!((a - b).abs() <= 1e-9, "sector multiset mismatch: {} vs {}", a, b);
        }
    }

    #[test]
    fn sector_product_density_matches_direct_eigensolve(
        g in arb_voltage_graph(),
        sheets in 1usize..=12,
    ) {
        prop_assume!(g.cycle_gcd() == 1);
        // A single vertex at one sheet has no nonzero mode at all — det′
        // is an empty product there and both routes refuse it.
        prop_assume!(sheets * g.vertex_count() > 1);
        let via_sectors = normalized_log_det(&g, sheets).unwrap();
        let cover = g.cyclic_cover(sheets).unwrap();
        let spectrum = hermitian_eigenvalues(&cover.laplacian(), DEFAULT_ZERO_TOL_REL).unwrap();
        let direct = log_det_prime(&spectrum).unwrap() / (sheets * g.vertex_count()) as f64;
        prop_assert!(
            (via_sectors - direct).abs() <= 1e-8,
            "sector product {} vs direct {}",
            via_sectors,
            direct
        );
    }

    #[test]
    fn heat_trace_dominates_eigenvalue_counts(
        g in arb_voltage_graph(),
        sheets in 1usize..=10,
    ) {
        prop_assume!(g.cycle_gcd() == 1);
        // #{λ ≤ Λ} ≤ e·Tr e^{−Δ/Λ}: each counted mode contributes at
        // least e^{−1} to the trace.
        let cover = g.cyclic_cover(sheets).unwrap();
        let s = hermitian_eigenvalues(&cover.laplacian(), DEFAULT_ZERO_TOL_REL).unwrap();
        for cap in [1.0f64, 4.0, 16.0] {
            let count = s.values().iter().filter(|&&v| v <= cap).count() as f64;
            let bound = std::f64::consts::E * heat_trace(&s, 1.0 / cap);
            prop_assert!(count <= bound + 1e-9, "count {} above bound {} at Λ = {}", count, bound, cap);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn twisted_spectra_are_conjugation_symmetric(
        g in arb_voltage_graph(),
        theta in 0.0f64..TAU,
    ) {
        // Δ_{2π−θ} is the entrywise conjugate of Δ_θ, so the spectra agree.
        let forward =
            hermitian_eigenvalues(&g.twisted_laplacian(TwistAngle::new(theta)), DEFAULT_ZERO_TOL_REL)
                .unwrap();
        let mirrored = hermitian_eigenvalues(
            &g.twisted_laplacian(TwistAngle::new(TAU - theta)),
            DEFAULT_ZERO_TOL_REL,
        )
        .unwrap();
        for (a, b) in forward.values().iter().zip(mirrored.values()) {
            prop_assert!((a - b).abs() <= 1e-9, "conjugation asymmetry: {} vs {}", a, b);
        }
    }

    #[test]
    fn surjective_twists_keep_exactly_one_kernel_at_zero(
        g in arb_voltage_graph(),
        p in 1usize..=15,
    ) {
        prop_assume!(g.cycle_gcd() == 1);
        // Away from θ = 0 the kernel dies; at θ = 0 it is one-dimensional.
        let twisted = g.twisted_laplacian(TwistAngle::sector(p, 16));
        let s = hermitian_eigenvalues(&twisted, DEFAULT_ZERO_TOL_REL).unwrap();
        prop_assert!(s.values()[0] > 1e-8, "kernel survived at sector {}/16: {}", p, s.values()[0]);
        let at_zero =
            hermitian_eigenvalues(&g.twisted_laplacian(TwistAngle::new(0.0)), DEFAULT_ZERO_TOL_REL)
                .unwrap();
        prop_assert_eq!(at_zero.zero_count(), 1);
    }

    #[test]
    fn deck_rotation_permutes_cover_edges(
        g in arb_voltage_graph(),
        sheets in 2usize..=8,
        shift in any::<prop::sample::Index>(),
    ) {
        prop_assume!(g.cycle_gcd() == 1);
        let cover = g.cyclic_cover(sheets).unwrap();
        let sigma = cover.deck_permutation(shift.index(sheets));
        let mut original: Vec<(usize, usize)> =
            cover.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let mut mapped: Vec<(usize, usize)> = cover
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (sigma[u], sigma[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        original.sort_unstable();
        mapped.sort_unstable();
        prop_assert_eq!(original, mapped);
    }

    #[test]
    fn matrix_tree_routes_agree_on_random_bases(g in arb_voltage_graph()) {
        prop_assert!(verify_matrix_tree_voltage(&g).unwrap());
    }

    #[test]
    fn rank_one_identity_bundle_is_the_scalar_twist(
        g in arb_voltage_graph(),
        theta in 0.0f64..TAU,
    ) {
        let twist = TwistAngle::new(theta);
        let plain = g.twisted_laplacian(twist);
        let bundled = g.bundle_laplacian(twist, &Monodromy::identity(1));
        prop_assert_eq!(plain.dim(), bundled.dim());
        for i in 0..plain.dim() {
            for j in 0..plain.dim() {
                let gap = (plain.get(i, j) - bundled.get(i, j)).norm();
                prop_assert!(gap <= 1e-12, "entry ({}, {}) off by {}", i, j, gap);
            }
        }
    }

    #[test]
    fn eigensolver_preserves_trace_and_reconstructs(h in arb_hermitian(5)) {
        let decomposition = hermitian_eigen(&h).unwrap();
        let trace: f64 = (0..5).map(|i| h.get(i, i).re).sum();
        let sum: f64 = decomposition.values.iter().sum();
        let scale = 1.0 + h.max_abs();
        prop_assert!((trace - sum).abs() <= 1e-12 * 5.0 * scale);
        prop_assert!(decomposition.max_residual(&h) <= 1e-11 * scale);
    }

    #[test]
    fn fraction_free_determinant_matches_cofactor_expansion(
        rows in vec(vec(-9i64..=9, 4), 4),
    ) {
        let m = IntegerMatrix::from_rows(&rows).unwrap();
        prop_assert_eq!(integer_determinant(&m), BigInt::from(cofactor_determinant(&rows)));
    }

    #[test]
    fn quadrature_reproduces_polynomial_antiderivatives(
        coefficients in vec(-2.0f64..2.0, 6),
        a in -3.0f64..3.0,
        width in 0.1f64..4.0,
    ) {
        let b = a + width;
        let f = |x: f64| coefficients.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let primitive = |x: f64| -> f64 {
            coefficients
                .iter()
                .enumerate()
                .map(|(k, c)| c * x.powi(k as i32 + 1) / (k as f64 + 1.0))
                .sum()
        };
        let r = integrate_adaptive(f, a, b, 1e-10, SingularEnds::none()).unwrap();
        let exact = primitive(b) - primitive(a);
        prop_assert!(
            (r.value - exact).abs() <= 1e-9 * (1.0 + exact.abs()),
            "integral {} vs antiderivative {}",
            r.value,
            exact
        );
    }

    #[test]
    fn power_fit_recovers_even_exponents(
        p in prop::sample::select(vec![2u32, 4, 6]),
        amplitude in 0.1f64..10.0,
    ) {
        let samples: Vec<(f64, f64)> = (1..=40)
            .map(|k| {
                let x = 0.01 * k as f64;
                (x, amplitude * x.powi(p as i32))
            })
            .collect();
        let fit = fit_power_exponent(&samples).unwrap();
        prop_assert!((fit.exponent - p as f64).abs() <= 0.02);
        prop_assert!((fit.amplitude / amplitude - 1.0).abs() <= 0.02);
        prop_assert!(fit.r_squared > 0.999);
    }

    #[test]
    fn series_survive_both_serializations_bit_for_bit(series in arb_series()) {
        for format in [Format::Json, Format::Csv] {
            let text = emit_series(&series, format).unwrap();
            let back = parse_series(&text).unwrap();
            prop_assert_eq!(back.limit.to_bits(), series.limit.to_bits());
            prop_assert_eq!(back.limit_error.to_bits(), series.limit_error.to_bits());
            prop_assert_eq!(back.entries.len(), series.entries.len());
            for (a, b) in back.entries.iter().zip(&series.entries) {
                prop_assert_eq!(a.sheets, b.sheets);
                prop_assert_eq!(a.density.to_bits(), b.density.to_bits());
                prop_assert_eq!(a.abs_error.to_bits(), b.abs_error.to_bits());
            }
        }
    }
}
