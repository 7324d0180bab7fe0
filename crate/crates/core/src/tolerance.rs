//! Numerical tolerances.
//!
//! Every threshold used by the analytic code lives in [`Tolerances`]. The
//! defaults are the contractual values; [`Tolerances::from_base`] rescales
//! all of them together from a single precision parameter (the lambda
//! round-trip tolerance, default `1e-10`).

use serde::{Deserialize, Serialize};

/// Default relative truncation threshold for theta series.
pub const SERIES_TRUNCATION: f64 = 1e-16;
/// Smallest admissible imaginary part of tau.
pub const MIN_IMAG_TAU: f64 = 1e-6;
/// Distance to a lattice point below which the Weierstrass function is
/// treated as being at its pole.
pub const POLE_DISTANCE: f64 = 1e-12;
/// Base precision parameter the other defaults are expressed against.
pub const BASE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Residual of `lambda(inverse_lambda(mu)) - mu`, relative to `1 + |mu|`.
    pub lambda_residual: f64,
    /// Phase tolerance for accepting a slope in `recover_slope`.
    pub slope_phase: f64,
    /// Chordal closure distance for a traced trajectory.
    pub closure: f64,
    /// Maximum `|arg(f * zdot^2)|` along a horizontal trajectory.
    pub horizontality: f64,
    /// Chordal radius for matching an endpoint to a puncture.
    pub puncture_match: f64,
    /// Relative change stopping the omega-length quadrature refinement.
    pub quadrature: f64,
    /// Deviation of a unit-length trajectory's omega-length from one.
    pub unit_length: f64,
    /// Proximity of a sample to a half-lattice point that aborts a trace.
    pub branch_proximity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            lambda_residual: 1e-10,
            slope_phase: 1e-8,
            closure: 1e-8,
            horizontality: 1e-5,
            puncture_match: 1e-6,
            quadrature: 1e-6,
            unit_length: 1e-4,
            branch_proximity: 1e-10,
        }
    }
}

impl Tolerances {
    /// Scales every default by `base / 1e-10`.
    pub fn from_base(base: f64) -> Self {
        let s = base / BASE;
        let d = Tolerances::default();
        Tolerances {
            lambda_residual: d.lambda_residual * s,
            slope_phase: d.slope_phase * s,
            closure: d.closure * s,
            horizontality: d.horizontality * s,
            puncture_match: d.puncture_match * s,
            quadrature: d.quadrature * s,
            unit_length: d.unit_length * s,
            branch_proximity: d.branch_proximity * s,
        }
    }
}
