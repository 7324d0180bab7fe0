//! Explicit Jenkins-Strebel coefficients.
//!
//! For `omega = a dz^2 / (z (z - 1)(z - mu))`, pulling back through `T`
//! and then `wp` gives the constant differential `4 a (e1 - e2) dw^2` on the
//! torus. Its horizontal lines are closed exactly when their direction is
//! a lattice direction `n + m tau`, so `omega` is Jenkins-Strebel iff
//!
//! ```text
//! a = k / ((1 + q tau)^2 (e1 - e2))    (q = m/n finite)
//! a = k / (tau^2 (e1 - e2))            (q = inf)
//! ```
//!
//! for some `k > 0`.

use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::elliptic::{inverse_lambda, Lattice, EInvariants, Tau};
use crate::error::{Error, Result};
use crate::slope::RationalSlope;
use crate::tolerance::Tolerances;

/// One of the four poles of the differential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Puncture {
    Zero,
    One,
    Mu,
    Infinity,
}

impl Puncture {
    pub const ALL: [Puncture; 4] = [Puncture::Zero, Puncture::One, Puncture::Mu, Puncture::Infinity];

    pub fn label(self) -> &'static str {
        match self {
            Puncture::Zero => "0",
            Puncture::One => "1",
            Puncture::Mu => "mu",
            Puncture::Infinity => "inf",
        }
    }

    /// Position on the sphere, `None` for infinity.
    pub fn position(self, mu: Complex64) -> Option<Complex64> {
        match self {
            Puncture::Zero => Some(Complex64::new(0.0, 0.0)),
            Puncture::One => Some(Complex64::new(1.0, 0.0)),
            Puncture::Mu => Some(mu),
            Puncture::Infinity => None,
        }
    }
}

impl fmt::Display for Puncture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Puncture {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.label())
    }
}

/// Which two punctures lie on the same side of the closed trajectories.
/// Infinity is always listed in the first pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SeparationClass {
    pub paired_with_infinity: Puncture,
    pub complement: [Puncture; 2],
}

impl SeparationClass {
    pub fn with_infinity(partner: Puncture) -> Self {
        let mut rest = [Puncture::Zero, Puncture::One, Puncture::Mu]
            .into_iter()
            .filter(|p| *p != partner);
        let complement = [rest.next().unwrap(), rest.next().unwrap()];
        SeparationClass {
            paired_with_infinity: partner,
            complement,
        }
    }
}

impl fmt::Display for SeparationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{inf,{}}} | {{{},{}}}",
            self.paired_with_infinity, self.complement[0], self.complement[1]
        )
    }
}

/// The q-line through the origin meets the half period `(n + m tau)/2`,
/// whose image under `T o wp` is `1`, `0` or `mu` according to the parities
/// of `n` and `m`.
pub fn classify_separation(q: RationalSlope) -> SeparationClass {
    let m_odd = q.numerator().rem_euclid(2) == 1;
    let n_odd = q.denominator().rem_euclid(2) == 1;
    let partner = match (n_odd, m_odd) {
        (true, false) => Puncture::One,
        (false, true) => Puncture::Zero,
        (true, true) => Puncture::Mu,
        (false, false) => unreachable!("reduced slopes never have both parts even"),
    };
    SeparationClass::with_infinity(partner)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JSCoefficient {
    /// Coefficient of `dz^2 / (z (z - 1)(z - mu))`.
    pub a: Complex64,
    pub k: f64,
    pub q: RationalSlope,
    pub tau: Tau,
}

/// `(n + m tau)^2 / n^2`, i.e. `(1 + q tau)^2`; `tau^2` for infinity.
fn slope_factor(q: RationalSlope, tau: Complex64) -> Complex64 {
    let (n, m) = q.direction();
    if q.is_infinite() {
        tau * tau
    } else {
        let v = n as f64 + m as f64 * tau;
        v * v / (n as f64 * n as f64)
    }
}

fn check_scale(k: f64) -> Result<()> {
    if k.is_finite() && k > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidScale(k))
    }
}

/// Coefficient for slope `q` on the lattice described by `einv`.
pub fn js_coefficient_at(einv: &EInvariants, q: RationalSlope, k: f64) -> Result<JSCoefficient> {
    check_scale(k)?;
    let a = k / (slope_factor(q, einv.tau.value()) * einv.e1_minus_e2());
    Ok(JSCoefficient {
        a,
        k,
        q,
        tau: einv.tau,
    })
}

pub fn js_coefficient(mu: Complex64, q: RationalSlope, k: f64) -> Result<JSCoefficient> {
    check_scale(k)?;
    let tau = inverse_lambda(mu)?;
    let einv = Lattice::new(tau)?.e_invariants();
    js_coefficient_at(&einv, q, k)
}

/// `c = a (e1 - e2)`: the pullback to the torus is `4 c dw^2`.
pub fn pullback_torus_coefficient(a: Complex64, einv: &EInvariants) -> Complex64 {
    a * einv.e1_minus_e2()
}

/// Scale `k` giving closed trajectories of omega-length one.
///
/// On the torus the trajectory is the segment from `w` to `w + n + m tau`
/// in the metric `|4c|^(1/2) |dw|`, of length `2 sqrt(k) n` (`2 sqrt(k)`
/// for infinity), and `T o wp` maps it one-to-one onto the closed
/// trajectory for a start off the symmetric lines.
pub fn normalize_unit_length(q: RationalSlope) -> f64 {
    if q.is_infinite() {
        0.25
    } else {
        let n = q.denominator() as f64;
        1.0 / (4.0 * n * n)
    }
}

/// Coefficient normalized to unit omega-length.
pub fn unit_length_coefficient(einv: &EInvariants, q: RationalSlope) -> JSCoefficient {
    js_coefficient_at(einv, q, normalize_unit_length(q)).expect("unit-length scale is positive")
}

pub fn recover_slope(a: Complex64, einv: &EInvariants, max_denominator: u64) -> Result<Option<RationalSlope>> {
    recover_slope_with(a, einv, max_denominator, &Tolerances::default())
}

/// Finds `q` with denominator at most `max_denominator` (or `q = inf`) making
/// `a (e1 - e2) (1 + q tau)^2` a positive real, or `None` if there is none.
///
/// Writes a square root of `1/(a (e1 - e2))` as `alpha + beta tau` and
/// reconstructs `beta/alpha` from its continued fraction convergents.
pub fn recover_slope_with(
    a: Complex64,
    einv: &EInvariants,
    max_denominator: u64,
    tol: &Tolerances,
) -> Result<Option<RationalSlope>> {
    if max_denominator == 0 {
        return Err(Error::InvalidDenominatorBound);
    }
    if !a.re.is_finite() || !a.im.is_finite() {
        return Err(Error::NonFinite("a"));
    }
    let c = pullback_torus_coefficient(a, einv);
    if c.norm() == 0.0 {
        return Err(Error::ZeroCoefficient);
    }
    let tau = einv.tau.value();
    let zeta = (1.0 / c).sqrt();
    let beta = zeta.im / tau.im;
    let alpha = zeta.re - beta * tau.re;

    let accepts = |q: RationalSlope| {
        let (n, m) = q.direction();
        let v = c * (n as f64 + m as f64 * tau).powi(2);
        v.re > 0.0 && v.im.abs() <= tol.slope_phase * v.norm()
    };

    let mut candidates = Vec::new();
    if alpha != 0.0 {
        for (m, n) in convergents(beta / alpha, max_denominator) {
            if let Ok(q) = RationalSlope::new(m, n) {
                candidates.push(q);
            }
        }
    }
    candidates.push(RationalSlope::INFINITY);
    Ok(candidates.into_iter().find(|q| accepts(*q)))
}

/// Continued fraction convergents `p/q` of `x` with `0 < q <= max_den`.
fn convergents(x: f64, max_den: u64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    if !x.is_finite() || x.abs() > 1e15 {
        return out;
    }
    // (p_{-2}, p_{-1}) = (0, 1), (q_{-2}, q_{-1}) = (1, 0)
    let (mut h_prev, mut h) = (0i64, 1i64);
    let (mut k_prev, mut k) = (1i64, 0i64);
    let mut rest = x;
    for _ in 0..64 {
        let digit = rest.floor();
        if digit.abs() > 1e15 {
            break;
        }
        let d = digit as i64;
        let (Some(h_next), Some(k_next)) = (
            d.checked_mul(h).and_then(|v| v.checked_add(h_prev)),
            d.checked_mul(k).and_then(|v| v.checked_add(k_prev)),
        ) else {
            break;
        };
        if k_next as u64 > max_den {
            break;
        }
        out.push((h_next, k_next));
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        let frac = rest - digit;
        if frac < 1e-12 {
            break;
        }
        rest = 1.0 / frac;
    }
    out
}
