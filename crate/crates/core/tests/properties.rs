use std::f64::consts::PI;

use proptest::prelude::*;
use sideband_core::gaussian::{
    check_physical, partial_trace, partial_transpose, purity, symplectic_eigenvalues, symplectic_form,
};
use sideband_core::oracle::{drift_matrix, expm, extract_coefficients};
use sideband_core::sideband::{epr_variances, full_cm, reduced_cm, simon_marker};
use sideband_core::{coefficients, CoefficientSet, CovarianceMatrix, QuadDouble, Real};

fn ratio() -> impl Strategy<Value = f64> {
    // Log-spaced r − 1 over (1e-7, 2].
    (-7.0_f64..=0.301).prop_map(|e| 1.0 + 10f64.powf(e))
}

fn nbar() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), 0.0..10.0, 0.0..1e7]
}

fn scaled_time() -> impl Strategy<Value = f64> {
    0.0..4.0 * PI
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn autocorrelations_are_nonnegative(tau in scaled_time(), r in ratio(), n in nbar()) {
        let c = coefficients(tau, r, n).unwrap();
        prop_assert!(c.a >= 0.0 && c.b >= 0.0 && c.e >= 0.0);
    }

    #[test]
    fn conserved_combination_vanishes(tau in scaled_time(), r in ratio(), n in nbar()) {
        let c = coefficients(tau, r, n).unwrap();
        let terms = [r * r * c.a, c.e, 2.0 * r * c.f];
        let largest = terms.iter().fold(0.0_f64, |m, t| m.max(t.abs()));
        prop_assert!((terms[0] + terms[1] - terms[2]).abs() <= 1e-8 * largest);
    }

    #[test]
    fn moments_are_periodic(tau in 0.0..2.0 * PI, r in ratio(), n in nbar()) {
        let x = coefficients(tau, r, n).unwrap().values();
        let y = coefficients(tau + 2.0 * PI, r, n).unwrap().values();
        let scale = x.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        for (a, b) in x.iter().zip(y) {
            prop_assert!((a - b).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn uncertainty_product_is_at_least_one(tau in scaled_time(), r in ratio(), n in nbar()) {
        let (m, p) = epr_variances(&coefficients(tau, r, n).unwrap());
        prop_assert!(m * p >= 1.0 - 1e-9, "Δ₋Δ₊ = {}", m * p);
    }

    #[test]
    fn model_states_are_physical_and_unitarily_evolved(tau in scaled_time(), r in ratio(), n in nbar()) {
        let c = CoefficientSet::<QuadDouble>::evaluate(tau, r, n).unwrap();
        let cm = full_cm(&c).unwrap();
        prop_assert!(check_physical(&cm, 1e-9).is_physical());
        let p = purity(&cm).unwrap().to_f64();
        prop_assert!((p * (2.0 * n + 1.0) - 1.0).abs() <= 1e-8, "purity {p}");
    }

    #[test]
    fn reduced_is_trace_of_full(tau in scaled_time(), r in 1.01..3.0, n in nbar()) {
        let c = coefficients(tau, r, n).unwrap();
        prop_assert_eq!(partial_trace(&full_cm(&c).unwrap(), &[0, 2]).unwrap(), reduced_cm(&c));
    }

    #[test]
    fn extraction_inverts_construction(tau in scaled_time(), r in 1.01..3.0, n in nbar()) {
        let c = coefficients(tau, r, n).unwrap();
        let back = extract_coefficients(&full_cm(&c).unwrap(), tau, r, n).unwrap();
        // Exact up to the rounding of the ½ vacuum offset.
        for (x, y) in back.values().iter().zip(c.values()) {
            prop_assert!((x - y).abs() <= f64::EPSILON * (y.abs() + 0.5));
        }
        prop_assert_eq!((back.tau, back.r, back.nbar), (tau, r, n));
    }

    #[test]
    fn partial_transpose_is_an_involution(tau in scaled_time(), r in 1.01..3.0, n in nbar(), mode in 0usize..3) {
        let cm = full_cm(&coefficients(tau, r, n).unwrap()).unwrap();
        let twice = partial_transpose(&partial_transpose(&cm, mode).unwrap(), mode).unwrap();
        prop_assert_eq!(twice, cm);
    }

    #[test]
    fn trace_commutes_with_transpose_on_other_modes(tau in scaled_time(), r in 1.01..3.0, n in nbar()) {
        let cm = full_cm(&coefficients(tau, r, n).unwrap()).unwrap();
        // Transposing mode 2 of the full state is transposing mode 1 of the
        // (0, 2) reduction; tracing out mode 1 does not touch it.
        let a = partial_trace(&partial_transpose(&cm, 2).unwrap(), &[0, 2]).unwrap();
        let b = partial_transpose(&partial_trace(&cm, &[0, 2]).unwrap(), 1).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn drift_is_hamiltonian(chi in 0.1..10.0, extra in 0.01..10.0) {
        let k = drift_matrix(chi, chi + extra).unwrap();
        let j = symplectic_form::<f64>(3);
        let jk = &j * &k;
        prop_assert!((&jk - jk.transpose()).amax() == 0.0);
    }

    #[test]
    fn propagated_vacuum_keeps_vacuum_spectrum(t in 0.0..10.0, r in 1.05..3.0_f64) {
        let sqrt_q = (r * r - 1.0).sqrt();
        let k = drift_matrix(1.0 / sqrt_q, r / sqrt_q).unwrap();
        let s = expm(&(&k * t));
        let j = symplectic_form::<f64>(3);
        prop_assert!((s.transpose() * &j * &s - &j).amax() <= 1e-10 * s.amax().powi(2));
        let sigma = CovarianceMatrix::new(&s * s.transpose() * 0.5).unwrap();
        for nu in symplectic_eigenvalues(&sigma).unwrap() {
            prop_assert!((nu - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn marker_is_never_positive(tau in scaled_time(), r in ratio(), n in nbar()) {
        let c = CoefficientSet::<QuadDouble>::evaluate(tau, r, n).unwrap();
        let scale = (c.a.max(c.e).to_f64() + 1.0).powi(2);
        prop_assert!(simon_marker(&c).to_f64() <= 1e-12 * scale);
    }
}
