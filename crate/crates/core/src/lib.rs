//! Jenkins-Strebel quadratic differentials on the sphere with four simple
//! poles at `0, 1, mu, inf`.
//!
//! The differential `a dz^2 / (z (z - 1)(z - mu))` pulls back through
//! `T o wp` to a constant differential on the torus `C / (Z + tau Z)`,
//! with `lambda(tau) = mu` and `T(z) = (z - e2)/(e1 - e2)`. It is
//! Jenkins-Strebel exactly when its horizontal direction upstairs has a
//! rational slope `q`, which gives an explicit coefficient for every
//! `q` in `Q u {inf}`.
//!
//! - [`elliptic`]: theta series, `wp`, branch values, `lambda` and its inverse.
//! - [`strebel`]: the coefficient for a slope, and back.
//! - [`pillowcase`]: exact edge-crossing combinatorics of q-lines.
//! - [`freegroup`]: words and conjugacy classes in the free group on `a, b, c`.
//! - [`trajectory`]: numerical trajectories on the sphere, used to
//!   cross-check the other modules.

pub mod elliptic;
pub mod error;
pub mod freegroup;
pub mod pillowcase;
pub mod slope;
pub mod strebel;
pub mod tolerance;
pub mod trajectory;

pub use num_complex::Complex64 as ComplexValue;

pub use elliptic::{e_invariants, inverse_lambda, lambda_of_tau, wp, wp_prime, EInvariants, Lattice, Tau};
pub use error::{Error, ErrorKind, Result};
pub use freegroup::{conjugacy_canonical, equal_classes, ConjugacyClass, Word};
pub use pillowcase::{word_of_slope, EdgeColor, GridPoint};
pub use slope::RationalSlope;

pub use strebel::{classify_separation, js_coefficient, recover_slope, JSCoefficient, Puncture, SeparationClass};
pub use tolerance::Tolerances;
