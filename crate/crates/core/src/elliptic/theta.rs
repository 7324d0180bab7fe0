//! Jacobi theta series with nome `q = exp(i pi tau)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::{MIN_IMAG_TAU, SERIES_TRUNCATION};

const MAX_TERMS: usize = 1_000_000;

pub(crate) fn nome(tau: Complex64) -> Complex64 {
    (Complex64::i() * PI * tau).exp()
}

/// `(theta2, theta3, theta4)` at zero argument.
///
/// Each series stops once the next term is below `1e-16` of the partial
/// sum. Rejects `Im(tau) < 1e-6`, where the series need too many terms.
pub fn theta_constants(tau: Complex64) -> Result<(Complex64, Complex64, Complex64)> {
    if !tau.re.is_finite() || !tau.im.is_finite() {
        return Err(Error::NonFinite("tau"));
    }
    if tau.im <= 0.0 {
        return Err(Error::NotUpperHalfPlane(tau));
    }
    if tau.im < MIN_IMAG_TAU {
        return Err(Error::IllConditioned(tau));
    }
    let q = nome(tau);
    let q2 = q * q;

    // theta3, theta4: 1 + 2 sum (+-1)^n q^{n^2}; q^{n^2} = q^{(n-1)^2} q^{2n-1}
    let mut power = Complex64::new(1.0, 0.0);
    let mut step = q;
    let mut even = Complex64::new(0.0, 0.0);
    let mut alt = Complex64::new(0.0, 0.0);
    let mut n = 1usize;
    loop {
        power *= step;
        step *= q2;
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        even += power;
        alt += power * sign;
        let scale = (1.0 + 2.0 * even).norm().min((1.0 + 2.0 * alt).norm());
        if power.norm() * 2.0 < SERIES_TRUNCATION * scale {
            break;
        }
        n += 1;
        if n > MAX_TERMS {
            return Err(Error::SeriesDivergence(MAX_TERMS));
        }
    }
    let theta3 = 1.0 + 2.0 * even;
    let theta4 = 1.0 + 2.0 * alt;

    // theta2 = 2 q^{1/4} sum q^{n(n+1)}; q^{n(n+1)} = q^{(n-1)n} q^{2n}
    let quarter = (Complex64::i() * PI * tau / 4.0).exp();
    let mut power = Complex64::new(1.0, 0.0);
    let mut step = q2;
    let mut sum = Complex64::new(1.0, 0.0);
    let mut n = 1usize;
    loop {
        power *= step;
        step *= q2;
        sum += power;
        if power.norm() < SERIES_TRUNCATION * sum.norm() {
            break;
        }
        n += 1;
        if n > MAX_TERMS {
            return Err(Error::SeriesDivergence(MAX_TERMS));
        }
    }
    let theta2 = 2.0 * quarter * sum;
    Ok((theta2, theta3, theta4))
}

/// `theta1`, `theta2` and their derivatives at argument `x`.
///
/// Intended for `Im(tau) >= sqrt(3)/2` and `|Im x|` at most about
/// `pi Im(tau)`, where a few dozen terms reach full precision.
pub(crate) struct ThetaPair {
    pub theta1: Complex64,
    pub dtheta1: Complex64,
    pub theta2: Complex64,
    pub dtheta2: Complex64,
}

pub(crate) fn theta12(x: Complex64, q: Complex64, quarter: Complex64) -> ThetaPair {
    let mut t1 = Complex64::new(0.0, 0.0);
    let mut d1 = t1;
    let mut t2 = t1;
    let mut d2 = t1;
    let q2 = q * q;
    let mut power = Complex64::new(1.0, 0.0); // q^{n(n+1)}
    let mut step = q2;
    for n in 0..200usize {
        let k = (2 * n + 1) as f64;
        let (s, c) = ((k * x).sin(), (k * x).cos());
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let a = power * sign;
        t1 += a * s;
        d1 += a * k * c;
        t2 += power * c;
        d2 -= power * k * s;
        let bound = power.norm() * k * (k * x.im.abs()).exp();
        let scale = t1.norm().max(t2.norm()).max(f64::MIN_POSITIVE);
        if n >= 1 && bound < 1e-18 * scale {
            break;
        }
        power *= step;
        step *= q2;
    }
    let pre = 2.0 * quarter;
    ThetaPair {
        theta1: pre * t1,
        dtheta1: pre * d1,
        theta2: pre * t2,
        dtheta2: pre * d2,
    }
}
