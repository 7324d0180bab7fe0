mod common;

use num_complex::Complex64;
use strebel_core::elliptic::{
    e_invariants, inverse_lambda, lambda_of_tau, theta_constants, wp, wp_prime, Lattice, Tau,
};

use common::*;

fn tau(re: f64, im: f64) -> Tau {
    Tau::new(Complex64::new(re, im)).unwrap()
}

#[test]
fn theta_constants_match_partial_sums() {
    let t = Complex64::new(0.3, 1.1);
    let (a2, a3, a4) = theta_constants(t).unwrap();
    let (b2, b3, b4) = theta_partial_sums(t, 200);
    for (x, y) in [(a2, b2), (a3, b3), (a4, b4)] {
        assert!((x - y).norm() <= 1e-13 * y.norm(), "{x} vs {y}");
    }
}

#[test]
fn theta_constants_small_imaginary_part() {
    let t = Complex64::new(0.1, 0.05);
    let (a2, a3, a4) = theta_constants(t).unwrap();
    let (b2, b3, b4) = theta_partial_sums(t, 400);
    for (x, y) in [(a2, b2), (a3, b3), (a4, b4)] {
        assert!((x - y).norm() <= 1e-11 * y.norm().max(1.0), "{x} vs {y}");
    }
}

#[test]
fn e1_matches_lattice_sum_on_square_lattice() {
    let e = e_invariants(tau(0.0, 1.0)).unwrap();
    let oracle = wp_lattice_sum(Complex64::i(), Complex64::new(0.5, 0.0), 200);
    assert!((e.e1 - oracle).norm() < 1e-8, "{} vs {}", e.e1, oracle);
    // The plain square sum agrees to its own (slow) accuracy.
    let rough = wp_square_sum(Complex64::i(), Complex64::new(0.5, 0.0), 200);
    assert!((e.e1 - rough).norm() < 1e-3);
}

#[test]
fn wp_matches_lattice_sum() {
    let t = Complex64::new(0.3, 1.1);
    let w = Complex64::new(0.17, 0.21);
    let value = wp(Tau::new(t).unwrap(), w).unwrap();
    let oracle = wp_lattice_sum(t, w, 200);
    assert!((value - oracle).norm() < 1e-8, "{value} vs {oracle}");
}

#[test]
fn branch_values_match_lattice_sum_for_random_tau() {
    let mut rng = rng(11);
    for _ in 0..20 {
        let t = random_tau(&mut rng);
        let e = e_invariants(Tau::new(t).unwrap()).unwrap();
        let halves = [Complex64::new(0.5, 0.0), t / 2.0, (1.0 + t) / 2.0];
        for (value, half) in [e.e1, e.e2, e.e3].into_iter().zip(halves) {
            let oracle = wp_lattice_sum(t, half, 200);
            assert!(
                (value - oracle).norm() <= 1e-8 * (1.0 + oracle.norm()),
                "tau = {t}: {value} vs {oracle}"
            );
        }
    }
}

#[test]
fn wp_prime_matches_finite_difference() {
    let t = tau(0.3, 1.1);
    let w = Complex64::new(0.17, 0.21);
    let h = 1e-6;
    let fd = (wp(t, w + h).unwrap() - wp(t, w - h).unwrap()) / (2.0 * h);
    let d = wp_prime(t, w).unwrap();
    assert!((d - fd).norm() <= 1e-5 * d.norm(), "{d} vs {fd}");
}

#[test]
fn random_identities() {
    let mut rng = rng(3);
    for _ in 0..100 {
        let t = random_tau(&mut rng);
        let lattice = Lattice::new(Tau::new(t).unwrap()).unwrap();
        let e = lattice.e_invariants();
        let scale = e.e1.norm().max(e.e2.norm()).max(e.e3.norm());
        assert!((e.e1 + e.e2 + e.e3).norm() <= 1e-9 * scale);
        assert!(
            (e.lambda - (e.e3 - e.e2) / (e.e1 - e.e2)).norm() <= 1e-10 * (1.0 + e.lambda.norm())
        );

        let w = random_w(&mut rng, t);
        let (p, dp) = lattice.wp_and_prime(w).unwrap();
        let cubic = 4.0 * (p - e.e1) * (p - e.e2) * (p - e.e3);
        assert!((dp * dp - cubic).norm() <= 1e-9 * (1.0 + dp.norm_sqr()));

        let rel = |a: Complex64, b: Complex64| (a - b).norm() / a.norm().max(1.0);
        assert!(rel(p, lattice.wp(-w).unwrap()) <= 1e-9);
        assert!(rel(p, lattice.wp(w + 1.0).unwrap()) <= 1e-9);
        assert!(rel(p, lattice.wp(w + t).unwrap()) <= 1e-9);
        assert!(rel(p, lattice.wp(w - 3.0 * t + 2.0).unwrap()) <= 1e-9);

        let h = 1e-6;
        let fd = (lattice.wp(w + h).unwrap() - lattice.wp(w - h).unwrap()) / (2.0 * h);
        assert!((dp - fd).norm() <= 1e-5 * dp.norm().max(1.0));
    }
}

#[test]
fn lambda_at_one_plus_i_follows_transformation_laws() {
    // lambda(i) = 1/2 and lambda(tau + 1) = lambda/(lambda - 1) give -1.
    let l = lambda_of_tau(tau(1.0, 1.0)).unwrap();
    assert!((l + 1.0).norm() < 1e-10);
}

#[test]
fn lambda_round_trip_random() {
    let mut rng = rng(5);
    for _ in 0..100 {
        let mu = random_mu(&mut rng);
        let t = inverse_lambda(mu).unwrap();
        assert!(t.value().im > 0.0);
        let back = lambda_of_tau(t).unwrap();
        assert!((back - mu).norm() <= 1e-10 * (1.0 + mu.norm()), "mu = {mu}");
    }
}
