//! Inversion of the modular lambda function.

use num_complex::Complex64;

use super::{Lattice, Tau};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Arithmetic-geometric mean, choosing at each step the square root with
/// `|a - b| <= |a + b|`.
fn agm(mut a: Complex64, mut b: Complex64) -> Complex64 {
    for _ in 0..64 {
        let next_a = (a + b) / 2.0;
        let mut next_b = (a * b).sqrt();
        if (next_a - next_b).norm() > (next_a + next_b).norm() {
            next_b = -next_b;
        }
        a = next_a;
        b = next_b;
        if (a - b).norm() <= 1e-15 * a.norm() {
            break;
        }
    }
    a
}

/// `i M(1, sqrt(1 - mu)) / M(1, sqrt(mu))`, which is `i K'/K` on `0 < mu < 1`.
fn agm_guess(mu: Complex64) -> Option<Complex64> {
    let k = mu.sqrt();
    let kp = (1.0 - mu).sqrt();
    let guess = Complex64::i() * agm(Complex64::new(1.0, 0.0), kp) / agm(Complex64::new(1.0, 0.0), k);
    (guess.re.is_finite() && guess.im.is_finite() && guess.im > 1e-3).then_some(guess)
}

fn lambda_at(tau: Complex64) -> Option<Complex64> {
    let t = Tau::new(tau).ok()?;
    Lattice::new(t).ok().map(|l| l.lambda())
}

/// Damped Newton on `lambda(tau) - mu` with a centered finite-difference
/// derivative. Returns the final point and residual.
fn newton(mu: Complex64, start: Complex64, target: f64) -> Option<(Complex64, f64)> {
    let mut tau = start;
    let mut value = lambda_at(tau)?;
    let mut residual = (value - mu).norm();
    for _ in 0..100 {
        if residual <= target {
            break;
        }
        let h = 1e-6 * tau.im.min(1.0);
        let up = lambda_at(tau + h)?;
        let down = lambda_at(tau - h)?;
        let derivative = (up - down) / (2.0 * h);
        if derivative.norm() == 0.0 || !derivative.re.is_finite() {
            return None;
        }
        let mut step = -(value - mu) / derivative;
        let mut accepted = false;
        for _ in 0..40 {
            let candidate = tau + step;
            if candidate.im > 1e-4 {
                if let Some(v) = lambda_at(candidate) {
                    let r = (v - mu).norm();
                    if r < residual {
                        tau = candidate;
                        value = v;
                        residual = r;
                        accepted = true;
                        break;
                    }
                }
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    Some((tau, residual))
}

/// Moves `tau` into the fundamental domain of `Gamma(2)` bounded by
/// `Re tau = -1`, `Re tau = 1` and the circles `|tau -+ 1/2| = 1/2`, using
/// `tau -> tau + 2` and `tau -> tau/(1 -+ 2 tau)`.
pub fn normalize_gamma2(tau: Complex64) -> Complex64 {
    let mut z = tau;
    for _ in 0..10_000 {
        let shift = ((z.re + 1.0) / 2.0).floor();
        if shift != 0.0 {
            z -= 2.0 * shift;
        }
        if (z - 0.5).norm() < 0.5 - 1e-15 {
            z = z / (1.0 - 2.0 * z);
        } else if (z + 0.5).norm() < 0.5 - 1e-15 {
            z = z / (1.0 + 2.0 * z);
        } else {
            break;
        }
    }
    z
}

pub fn inverse_lambda(mu: Complex64) -> Result<Tau> {
    inverse_lambda_with(mu, &Tolerances::default())
}

/// A `tau` with `lambda(tau) = mu`, normalized to the `Gamma(2)` domain of
/// [`normalize_gamma2`]. Deterministic for fixed input.
pub fn inverse_lambda_with(mu: Complex64, tol: &Tolerances) -> Result<Tau> {
    if !mu.re.is_finite() || !mu.im.is_finite() {
        return Err(Error::NonFinite("mu"));
    }
    if mu.norm() == 0.0 || (mu - 1.0).norm() == 0.0 {
        return Err(Error::DegenerateMu(mu));
    }
    let target = tol.lambda_residual * (1.0 + mu.norm());
    let polish = 1e-3 * target;

    let seeds = agm_guess(mu).into_iter().chain([
        Complex64::new(0.0, 1.0),
        Complex64::new(1.0, 1.0),
        Complex64::new(-1.0, 1.0),
        Complex64::new(0.5, 0.5),
        Complex64::new(-0.5, 0.5),
        Complex64::new(0.0, 2.0),
        Complex64::new(0.0, 0.3),
    ]);
    let mut best: Option<(Complex64, f64)> = None;
    for seed in seeds {
        if let Some((tau, residual)) = newton(mu, seed, polish) {
            if best.is_none_or(|(_, r)| residual < r) {
                best = Some((tau, residual));
            }
            if residual <= target {
                break;
            }
        }
    }
    let (tau, _) = best.ok_or(Error::NoConvergence {
        mu,
        residual: f64::INFINITY,
    })?;

    let normalized = normalize_gamma2(tau);
    let (tau, residual) = newton(mu, normalized, polish).ok_or(Error::NoConvergence {
        mu,
        residual: f64::INFINITY,
    })?;
    if residual > target {
        return Err(Error::NoConvergence { mu, residual });
    }
    Tau::new(tau)
}
