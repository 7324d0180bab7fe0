mod common;

use num_complex::Complex64;
use rand::Rng;
use strebel_core::elliptic::{inverse_lambda, Lattice, Tau};
use strebel_core::strebel::{normalize_unit_length, unit_length_coefficient, Puncture};
use strebel_core::{classify_separation, e_invariants, js_coefficient, recover_slope, RationalSlope};

fn all_slopes(bound: i64) -> Vec<RationalSlope> {
    let mut out = vec![RationalSlope::INFINITY];
    for n in 1..=bound {
        for m in -bound..=bound {
            if num_integer::gcd(m, n) == 1 {
                out.push(RationalSlope::new(m, n).unwrap());
            }
        }
    }
    out
}

#[test]
fn coefficient_matches_lattice_sum_branch_values() {
    let mut rng = common::rng(21);
    for _ in 0..10 {
        let mu = common::random_mu(&mut rng);
        let tau = inverse_lambda(mu).unwrap().value();
        let e1 = common::wp_lattice_sum(tau, Complex64::new(0.5, 0.0), 2000);
        let e2 = common::wp_lattice_sum(tau, tau / 2.0, 2000);
        for q in ["0", "3", "-2/7", "inf"] {
            let q: RationalSlope = q.parse().unwrap();
            let k = rng.gen_range(0.1..10.0);
            let factor = if q.is_infinite() { tau * tau } else { (1.0 + q.to_f64() * tau).powi(2) };
            let oracle = k / (factor * (e1 - e2));
            let a = js_coefficient(mu, q, k).unwrap().a;
            assert!((a - oracle).norm() <= 1e-8 * oracle.norm(), "mu {mu} q {q}: {a} vs {oracle}");
        }
    }
}

#[test]
fn slope_round_trip() {
    let mut rng = common::rng(5);
    for _ in 0..20 {
        let mu = common::random_mu(&mut rng);
        let einv = Lattice::new(inverse_lambda(mu).unwrap()).unwrap().e_invariants();
        for q in all_slopes(30) {
            let k = rng.gen_range(0.01..100.0);
            let a = js_coefficient(mu, q, k).unwrap().a;
            assert_eq!(recover_slope(a, &einv, 64).unwrap(), Some(q), "mu {mu} q {q}");
            let (n, m) = q.direction();
            if n > 10 || m.abs() > 10 {
                continue;
            }
            let twisted = a * Complex64::from_polar(1.0, 0.05);
            // Any slope accepted for the twisted value would need a
            // convergent within about 1e-8 of an irrational-looking ratio;
            // none exists at this denominator bound.
            assert_eq!(recover_slope(twisted, &einv, 10).unwrap(), None, "mu {mu} q {q}");
        }
    }
}

#[test]
fn coefficient_is_linear_in_scale() {
    let mu = Complex64::new(0.3, 0.4);
    let q: RationalSlope = "5/3".parse().unwrap();
    let one = js_coefficient(mu, q, 1.0).unwrap().a;
    for k in [0.5, 2.0, 17.0] {
        let a = js_coefficient(mu, q, k).unwrap().a;
        assert!((a - k * one).norm() <= 1e-13 * a.norm());
    }
}

/// For `g = [[a, b], [c, d]]` in Gamma(2) the lattice of `g tau` is the
/// lattice of `tau` scaled by `1/(c tau + d)`, with matching half periods,
/// so the period `n' + m' g tau` corresponds to `n + m tau` with
/// `n = d n' + b m'`, `m = c n' + a m'`.
#[test]
fn unit_length_coefficients_are_gamma2_covariant() {
    let mut rng = common::rng(3);
    let moves: [[i64; 4]; 4] = [[1, 2, 0, 1], [1, 0, 2, 1], [3, -2, -4, 3], [1, -2, 0, 1]];
    for _ in 0..5 {
        let mu = common::random_mu(&mut rng);
        let tau = inverse_lambda(mu).unwrap().value();
        let base = e_invariants(Tau::new(tau).unwrap()).unwrap();
        for [a, b, c, d] in moves {
            let moved = (a as f64 * tau + b as f64) / (c as f64 * tau + d as f64);
            let other = e_invariants(Tau::new(moved).unwrap()).unwrap();
            assert!((other.lambda - mu).norm() < 1e-9 * (1.0 + mu.norm()));
            for q in all_slopes(5) {
                let (n2, m2) = q.direction();
                let (n, m) = (d * n2 + b * m2, c * n2 + a * m2);
                let p = RationalSlope::new(m, n).unwrap();
                let lhs = unit_length_coefficient(&other, q).a;
                let rhs = unit_length_coefficient(&base, p).a;
                assert!((lhs - rhs).norm() <= 1e-8 * rhs.norm(), "mu {mu} q {q} -> {p}");
                // At a common scale only the direction of `a` is preserved.
                let ratio = js_coefficient_at_scale(&other, q) / js_coefficient_at_scale(&base, p);
                assert!(ratio.re > 0.0 && ratio.im.abs() <= 1e-8 * ratio.norm());
            }
        }
    }
}

fn js_coefficient_at_scale(einv: &strebel_core::EInvariants, q: RationalSlope) -> Complex64 {
    strebel_core::strebel::js_coefficient_at(einv, q, 1.0).unwrap().a
}

#[test]
fn unit_length_scale_depends_on_denominator() {
    for q in all_slopes(6) {
        let (n, _) = q.direction();
        let expected = if n == 0 { 0.25 } else { 0.25 / (n * n) as f64 };
        assert_eq!(normalize_unit_length(q), expected);
    }
}

#[test]
fn separation_classes_follow_parity() {
    let mut seen = std::collections::HashSet::new();
    for q in all_slopes(9) {
        let (n, m) = q.direction();
        let class = classify_separation(q);
        let expected = match (n.rem_euclid(2), m.rem_euclid(2)) {
            (1, 0) => Puncture::One,
            (0, 1) => Puncture::Zero,
            _ => Puncture::Mu,
        };
        assert_eq!(class.paired_with_infinity, expected, "q {q}");
        assert!(!class.complement.contains(&expected));
        seen.insert(class.paired_with_infinity);
    }
    assert_eq!(seen.len(), 3);
}

#[test]
fn unit_length_scale_is_confirmed_by_traced_length() {
    let mu = Complex64::new(0.5, 0.0);
    for q in ["0", "inf", "2"] {
        let q: RationalSlope = q.parse().unwrap();
        assert_eq!(normalize_unit_length(q), 0.25);
        let start = strebel_core::pillowcase::default_start(q);
        let tr = strebel_core::trajectory::trace_trajectory(mu, q, start, 512).unwrap();
        assert!((tr.omega_length - 1.0).abs() <= 1e-6, "q {q}: {}", tr.omega_length);
    }
}

#[test]
fn rotated_horizontal_coefficient_is_rejected() {
    for mu in [Complex64::new(0.5, 0.0), Complex64::new(0.3, 0.4), Complex64::new(2.0, 3.0)] {
        let einv = Lattice::new(inverse_lambda(mu).unwrap()).unwrap().e_invariants();
        let a = js_coefficient(mu, RationalSlope::ZERO, 1.0).unwrap().a * Complex64::from_polar(1.0, 0.1);
        assert_eq!(recover_slope(a, &einv, 64).unwrap(), None, "mu {mu}");
    }
}

#[test]
fn recovery_examples() {
    let mu = Complex64::new(0.3, 0.4);
    let einv = Lattice::new(inverse_lambda(mu).unwrap()).unwrap().e_invariants();
    let a = js_coefficient(mu, RationalSlope::integer(2), 3.0).unwrap().a;
    assert_eq!(recover_slope(a, &einv, 64).unwrap(), Some(RationalSlope::integer(2)));
    let a = js_coefficient(mu, RationalSlope::INFINITY, 1.0).unwrap().a;
    assert_eq!(recover_slope(a, &einv, 64).unwrap(), Some(RationalSlope::INFINITY));
}
