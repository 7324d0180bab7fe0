//! Weierstrass `wp` for the lattice `Z + tau Z`, its branch values and the
//! modular lambda function.
//!
//! Half periods are fixed as `w1 = 1`, `w2 = tau`, so
//! `e1 = wp(1/2)`, `e2 = wp(tau/2)`, `e3 = wp((1 + tau)/2)` and
//! `lambda = (e3 - e2)/(e1 - e2)`.
//!
//! All evaluations first move `tau` into the standard fundamental domain of
//! `SL(2, Z)` and rescale, so the theta series always run at
//! `|q| <= exp(-pi sqrt(3)/2)`.

mod modular;
mod theta;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tolerance::POLE_DISTANCE;

pub use modular::{inverse_lambda, inverse_lambda_with, normalize_gamma2};
pub use theta::theta_constants;

/// A point of the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Tau(Complex64);

impl Tau {
    pub fn new(value: Complex64) -> Result<Tau> {
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::NonFinite("tau"));
        }
        if value.im <= 0.0 {
            return Err(Error::NotUpperHalfPlane(value));
        }
        Ok(Tau(value))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }
}

impl From<Tau> for Complex64 {
    fn from(t: Tau) -> Complex64 {
        t.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EInvariants {
    pub tau: Tau,
    pub e1: Complex64,
    pub e2: Complex64,
    pub e3: Complex64,
    pub lambda: Complex64,
}

impl EInvariants {
    pub fn e1_minus_e2(&self) -> Complex64 {
        self.e1 - self.e2
    }
}

/// `wp` data for one lattice, reusable across many evaluations.
#[derive(Debug, Clone)]
pub struct Lattice {
    tau: Tau,
    /// `tau` moved into the fundamental domain by `[[a, b], [c, d]]`.
    reduced: Complex64,
    matrix: [i64; 4],
    /// `c tau + d`: the lattice equals `scale * (Z + reduced Z)`.
    scale: Complex64,
    q: Complex64,
    quarter: Complex64,
    theta34_sq: Complex64,
    /// Branch values of the reduced lattice at `1/2`, `reduced/2`, `(1+reduced)/2`.
    reduced_e: [Complex64; 3],
    e: [Complex64; 3],
}

impl Lattice {
    pub fn new(tau: Tau) -> Result<Lattice> {
        let t = tau.value();
        if t.im < crate::tolerance::MIN_IMAG_TAU {
            return Err(Error::IllConditioned(t));
        }
        let (reduced, matrix) = reduce_sl2z(t);
        let [a, b, c, d] = matrix;
        let scale = c as f64 * t + d as f64;
        let (th2, th3, th4) = theta_constants(reduced)?;
        let p = PI * PI / 3.0;
        let (t2, t3, t4) = (th2.powi(4), th3.powi(4), th4.powi(4));
        let reduced_e = [p * (t2 + 2.0 * t4), -p * (t2 + t3), p * (t2 - t4)];
        let pick = |x: i64, y: i64| -> Complex64 {
            let idx = match (x.rem_euclid(2), y.rem_euclid(2)) {
                (1, 0) => 0,
                (0, 1) => 1,
                (1, 1) => 2,
                _ => unreachable!("unimodular images of half periods are half periods"),
            };
            reduced_e[idx] / (scale * scale)
        };
        // 1 = scale (a - c r), tau = scale (d r - b) with r the reduced tau.
        let e = [pick(a, -c), pick(-b, d), pick(a - b, d - c)];
        Ok(Lattice {
            tau,
            reduced,
            matrix,
            scale,
            q: theta::nome(reduced),
            quarter: (Complex64::i() * PI * reduced / 4.0).exp(),
            theta34_sq: (th3 * th4).powi(2),
            reduced_e,
            e,
        })
    }

    pub fn tau(&self) -> Tau {
        self.tau
    }

    /// Representative of `tau` in the `SL(2, Z)` fundamental domain, with the
    /// matrix `[a, b, c, d]` that maps `tau` to it.
    pub fn reduced_tau(&self) -> (Complex64, [i64; 4]) {
        (self.reduced, self.matrix)
    }

    pub fn e_invariants(&self) -> EInvariants {
        let [e1, e2, e3] = self.e;
        EInvariants {
            tau: self.tau,
            e1,
            e2,
            e3,
            lambda: (e3 - e2) / (e1 - e2),
        }
    }

    pub fn lambda(&self) -> Complex64 {
        let [e1, e2, e3] = self.e;
        (e3 - e2) / (e1 - e2)
    }

    /// Splits `w` as `s + t tau` with real `s`, `t`.
    pub fn coordinates(&self, w: Complex64) -> (f64, f64) {
        let tau = self.tau.value();
        let t = w.im / tau.im;
        (w.re - t * tau.re, t)
    }

    /// Distance from `w` to the nearest lattice point.
    pub fn distance_to_lattice(&self, w: Complex64) -> f64 {
        let z = self.reduce_point(w / self.scale);
        self.nearest_corner(z) * self.scale.norm()
    }

    /// Moves a point of the reduced lattice into the cell around the origin.
    fn reduce_point(&self, z: Complex64) -> Complex64 {
        let r = self.reduced;
        let t = (z.im / r.im).round();
        let z = z - t * r;
        z - z.re.round()
    }

    fn nearest_corner(&self, z: Complex64) -> f64 {
        let r = self.reduced;
        let mut best = f64::INFINITY;
        for j in -1..=1 {
            for k in -1..=1 {
                best = best.min((z - (j as f64 + k as f64 * r)).norm());
            }
        }
        best
    }

    fn reduced_point(&self, w: Complex64) -> Result<Complex64> {
        if !w.re.is_finite() || !w.im.is_finite() {
            return Err(Error::NonFinite("w"));
        }
        let z = self.reduce_point(w / self.scale);
        let distance = self.nearest_corner(z) * self.scale.norm();
        if distance < POLE_DISTANCE {
            return Err(Error::PoleProximity { w, distance });
        }
        Ok(z)
    }

    /// `wp` and `wp'` on the reduced lattice at a reduced point.
    fn reduced_wp(&self, z: Complex64) -> (Complex64, Complex64) {
        let th = theta::theta12(PI * z, self.q, self.quarter);
        let ratio = th.theta2 / th.theta1;
        let dratio = PI * (th.dtheta2 * th.theta1 - th.theta2 * th.dtheta1) / (th.theta1 * th.theta1);
        let k = PI * PI * self.theta34_sq;
        let value = self.reduced_e[0] + k * ratio * ratio;
        let derivative = 2.0 * k * ratio * dratio;
        (value, derivative)
    }

    pub fn wp(&self, w: Complex64) -> Result<Complex64> {
        Ok(self.wp_and_prime(w)?.0)
    }

    pub fn wp_prime(&self, w: Complex64) -> Result<Complex64> {
        Ok(self.wp_and_prime(w)?.1)
    }

    pub fn wp_and_prime(&self, w: Complex64) -> Result<(Complex64, Complex64)> {
        let z = self.reduced_point(w)?;
        let (v, dv) = self.reduced_wp(z);
        let s2 = self.scale * self.scale;
        Ok((v / s2, dv / (s2 * self.scale)))
    }
}

/// Maps `tau` into `|Re| <= 1/2, |tau| >= 1`; returns the image and
/// `[a, b, c, d]` with `image = (a tau + b)/(c tau + d)`.
pub(crate) fn reduce_sl2z(tau: Complex64) -> (Complex64, [i64; 4]) {
    let (mut a, mut b, mut c, mut d) = (1i64, 0i64, 0i64, 1i64);
    let mut z = tau;
    for _ in 0..10_000 {
        let n = z.re.round();
        if n != 0.0 {
            z -= n;
            let n = n as i64;
            a -= n * c;
            b -= n * d;
        }
        if z.norm_sqr() < 1.0 - 1e-15 {
            z = -1.0 / z;
            let (na, nb, nc, nd) = (-c, -d, a, b);
            a = na;
            b = nb;
            c = nc;
            d = nd;
        } else {
            break;
        }
    }
    // Recompute from the integer matrix to avoid accumulated rounding.
    let image = (a as f64 * tau + b as f64) / (c as f64 * tau + d as f64);
    (image, [a, b, c, d])
}

pub fn e_invariants(tau: Tau) -> Result<EInvariants> {
    Ok(Lattice::new(tau)?.e_invariants())
}

pub fn wp(tau: Tau, w: Complex64) -> Result<Complex64> {
    Lattice::new(tau)?.wp(w)
}

pub fn wp_prime(tau: Tau, w: Complex64) -> Result<Complex64> {
    Lattice::new(tau)?.wp_prime(w)
}

pub fn lambda_of_tau(tau: Tau) -> Result<Complex64> {
    Ok(Lattice::new(tau)?.lambda())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tau(re: f64, im: f64) -> Tau {
        Tau::new(c(re, im)).unwrap()
    }

    #[test]
    fn square_lattice_branch_values() {
        let e = e_invariants(tau(0.0, 1.0)).unwrap();
        assert!(e.e3.norm() < 1e-10);
        assert!((e.e1 + e.e2).norm() < 1e-10);
        assert!(e.e1.re > 0.0 && e.e1.im.abs() < 1e-10);
        assert!((e.lambda - 0.5).norm() < 1e-12);
    }

    #[test]
    fn half_period_value() {
        let t = tau(0.0, 1.0);
        let e = e_invariants(t).unwrap();
        assert!((wp(t, c(0.5, 0.0)).unwrap() - e.e1).norm() < 1e-10);
        assert!((wp(t, c(0.0, 0.5)).unwrap() - e.e2).norm() < 1e-10);
        assert!((wp(t, c(0.5, 0.5)).unwrap() - e.e3).norm() < 1e-10);
    }

    #[test]
    fn derivative_vanishes_near_half_period() {
        let t = tau(0.0, 1.0);
        let near = wp_prime(t, c(0.5 + 1e-3, 0.0)).unwrap();
        let nearer = wp_prime(t, c(0.5 + 1e-4, 0.0)).unwrap();
        // Simple zero: shrinking the offset tenfold shrinks wp' tenfold.
        assert!((near.norm() / nearer.norm() - 10.0).abs() < 1e-2);
        assert!(wp_prime(t, c(0.5, 0.0)).unwrap().norm() < 1e-9);
    }

    #[test]
    fn lambda_transformations() {
        assert!((lambda_of_tau(tau(0.0, 1.0)).unwrap() - 0.5).norm() < 1e-12);
        let l = lambda_of_tau(tau(0.3, 0.8)).unwrap();
        let l2 = lambda_of_tau(tau(2.3, 0.8)).unwrap();
        assert!((l - l2).norm() < 1e-10);
        // lambda(tau + 1) = lambda/(lambda - 1); at tau = i that is -1.
        assert!((lambda_of_tau(tau(1.0, 1.0)).unwrap() + 1.0).norm() < 1e-10);
        // lambda(-1/tau) = 1 - lambda(tau)
        let t = c(0.3, 0.8);
        let s = Tau::new(-1.0 / t).unwrap();
        assert!((lambda_of_tau(s).unwrap() - (1.0 - l)).norm() < 1e-10);
    }

    #[test]
    fn pole_is_rejected() {
        let t = tau(0.3, 1.1);
        assert!(matches!(wp(t, c(1.0, 0.0)), Err(Error::PoleProximity { .. })));
        assert!(matches!(wp(t, c(0.3, 1.1)), Err(Error::PoleProximity { .. })));
    }

    #[test]
    fn reduction_matrix_is_unimodular() {
        for &(re, im) in &[(0.3, 0.05), (-3.7, 0.2), (0.49, 0.9), (10.0, 3.0)] {
            let (z, [a, b, c_, d]) = reduce_sl2z(c(re, im));
            assert_eq!(a * d - b * c_, 1);
            assert!(z.re.abs() <= 0.5 + 1e-12 && z.norm() >= 1.0 - 1e-12);
        }
    }
}
