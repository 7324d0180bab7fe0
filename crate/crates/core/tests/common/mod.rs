//! Reference computations that share no code with the library.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Theta constants by fixed-length direct summation, `exp(i pi tau n^2)`
/// evaluated term by term.
pub fn theta_partial_sums(tau: Complex64, terms: i64) -> (Complex64, Complex64, Complex64) {
    let i_pi_tau = Complex64::i() * PI * tau;
    let mut t2 = Complex64::new(0.0, 0.0);
    let mut t3 = Complex64::new(0.0, 0.0);
    let mut t4 = Complex64::new(0.0, 0.0);
    for n in -terms..=terms {
        let nf = n as f64;
        t3 += (i_pi_tau * nf * nf).exp();
        t4 += (i_pi_tau * nf * nf).exp() * if n % 2 == 0 { 1.0 } else { -1.0 };
        let h = nf + 0.5;
        t2 += (i_pi_tau * h * h).exp();
    }
    (t2, t3, t4)
}

/// `wp` for `Z + tau Z` as a lattice sum over rows `|n| <= rows`, each row
/// summed in closed form with `sum_m (x + m)^-2 = pi^2 / sin^2(pi x)`:
///
/// `wp(w) = sum_n pi^2/sin^2(pi (w + n tau)) - pi^2/3 - sum_{n != 0} pi^2/sin^2(pi n tau)`.
pub fn wp_lattice_sum(tau: Complex64, w: Complex64, rows: i64) -> Complex64 {
    // |sin(pi x)|^-2 ~ 4 exp(-2 pi |Im x|): beyond |Im x| = 100 the term is zero in f64.
    let csc2 = |x: Complex64| {
        if x.im.abs() > 100.0 {
            return Complex64::new(0.0, 0.0);
        }
        let s = (PI * x).sin();
        PI * PI / (s * s)
    };
    let mut total = Complex64::new(-PI * PI / 3.0, 0.0);
    for n in -rows..=rows {
        let shift = n as f64 * tau;
        total += csc2(w + shift);
        if n != 0 {
            total -= csc2(shift);
        }
    }
    total
}

/// Plain square-truncated Weierstrass sum, accurate only to about `1/N^2`.
pub fn wp_square_sum(tau: Complex64, w: Complex64, n: i64) -> Complex64 {
    let mut total = 1.0 / (w * w);
    for j in -n..=n {
        for k in -n..=n {
            if j == 0 && k == 0 {
                continue;
            }
            let omega = j as f64 + k as f64 * tau;
            total += 1.0 / ((w - omega) * (w - omega)) - 1.0 / (omega * omega);
        }
    }
    total
}

pub fn random_tau(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(0.3..3.0))
}

/// Random `mu` with `0.05 <= |mu - p|` for `p` in `{0, 1}` and `|mu| <= 4`.
pub fn random_mu(rng: &mut impl Rng) -> Complex64 {
    loop {
        let r = rng.gen_range(0.05..4.0f64);
        let theta = rng.gen_range(0.0..2.0 * PI);
        let mu = Complex64::from_polar(r, theta);
        if (mu - 1.0).norm() >= 0.05 && mu.im.abs() > 1e-3 {
            return mu;
        }
    }
}

/// Random point in the fundamental parallelogram, away from lattice points.
pub fn random_w(rng: &mut impl Rng, tau: Complex64) -> Complex64 {
    loop {
        let w = rng.gen_range(-0.5..0.5) + rng.gen_range(-0.5..0.5) * tau;
        if w.norm() > 0.05 {
            return w;
        }
    }
}
