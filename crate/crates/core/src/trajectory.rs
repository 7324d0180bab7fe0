//! Horizontal trajectories on the sphere as images of q-lines under `T o wp`.
//!
//! No differential equation is integrated: a straight line of slope `q` in
//! the plane maps onto a horizontal trajectory, so the trajectory is sampled
//! by evaluating `wp`. The checks here (closure, horizontality, omega-length,
//! endpoints of critical trajectories, edge-crossing colors) are numerical
//! confirmations of the exact results in [`crate::strebel`] and
//! [`crate::pillowcase`].

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::elliptic::{inverse_lambda_with, EInvariants, Lattice};
use crate::error::{Error, Result};
use crate::pillowcase::{default_start, edge_color, hits_grid_vertex, trace_line, EdgeColor, GridPoint, Orientation, Rational};
use crate::slope::RationalSlope;
use crate::strebel::{unit_length_coefficient, Puncture};
use crate::tolerance::Tolerances;

/// Beyond this modulus a point is stored in the chart `1/z`.
pub const INFINITY_CHART_RADIUS: f64 = 1e6;

const MAX_PANELS: usize = 1 << 20;

/// `T(z) = (z - e2)/(e1 - e2)`, sending `e1, e2, e3, inf` to `1, 0, mu, inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusT {
    e1: Complex64,
    e2: Complex64,
}

impl MobiusT {
    pub fn new(e1: Complex64, e2: Complex64) -> Result<Self> {
        if e1 == e2 {
            return Err(Error::Internal("T needs e1 != e2".into()));
        }
        Ok(MobiusT { e1, e2 })
    }

    pub fn from_invariants(einv: &EInvariants) -> Self {
        MobiusT {
            e1: einv.e1,
            e2: einv.e2,
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (z - self.e2) / (self.e1 - self.e2)
    }

    pub fn invert(&self, z: Complex64) -> Complex64 {
        self.e2 + z * (self.e1 - self.e2)
    }

    /// `T'`, a constant.
    pub fn derivative(&self) -> Complex64 {
        1.0 / (self.e1 - self.e2)
    }
}

pub fn apply_t(einv: &EInvariants, z: Complex64) -> Complex64 {
    MobiusT::from_invariants(einv).apply(z)
}

/// A point of the Riemann sphere. When `at_infinity` is set, `value` is the
/// coordinate `1/z` of the chart at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub value: Complex64,
    pub at_infinity: bool,
}

impl SpherePoint {
    pub fn infinity() -> Self {
        SpherePoint {
            value: Complex64::new(0.0, 0.0),
            at_infinity: true,
        }
    }

    pub fn from_plane(z: Complex64) -> Self {
        if z.norm() > INFINITY_CHART_RADIUS || !z.re.is_finite() || !z.im.is_finite() {
            let inv = 1.0 / z;
            let value = if inv.re.is_finite() && inv.im.is_finite() {
                inv
            } else {
                Complex64::new(0.0, 0.0)
            };
            SpherePoint {
                value,
                at_infinity: true,
            }
        } else {
            SpherePoint {
                value: z,
                at_infinity: false,
            }
        }
    }

    /// Plane coordinate, `None` at infinity itself.
    pub fn to_plane(&self) -> Option<Complex64> {
        if !self.at_infinity {
            Some(self.value)
        } else if self.value.norm() == 0.0 {
            None
        } else {
            Some(1.0 / self.value)
        }
    }

    /// Image on the unit sphere under inverse stereographic projection.
    fn unit_vector(&self) -> [f64; 3] {
        let (x, s) = if self.at_infinity {
            (self.value.conj(), -1.0)
        } else {
            (self.value, 1.0)
        };
        let r2 = x.norm_sqr();
        let d = 1.0 + r2;
        [2.0 * x.re / d, 2.0 * x.im / d, s * (r2 - 1.0) / d]
    }

    /// Chordal distance on the unit sphere, at most 2.
    pub fn chordal_distance(&self, other: &SpherePoint) -> f64 {
        let a = self.unit_vector();
        let b = other.unit_vector();
        ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
    }

    pub fn of_puncture(p: Puncture, mu: Complex64) -> Self {
        match p.position(mu) {
            Some(z) => SpherePoint::from_plane(z),
            None => SpherePoint::infinity(),
        }
    }
}

impl Serialize for SpherePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SpherePoint", 3)?;
        st.serialize_field("re", &self.value.re)?;
        st.serialize_field("im", &self.value.im)?;
        st.serialize_field("at_infinity", &self.at_infinity)?;
        st.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrajectorySample {
    pub q: RationalSlope,
    pub mu: Complex64,
    pub start: GridPoint,
    pub points: Vec<SpherePoint>,
    pub closed: bool,
    /// Chordal distance between the images of `u = 0` and `u = 1`.
    pub closure_residual: f64,
    /// Set when the image already closes at `u = 1/2` (lines through a
    /// point fixed by `w -> -w` modulo the lattice).
    pub early_closure: bool,
    /// Omega-length of one period, for the unit-length coefficient.
    pub omega_length: f64,
    /// Largest `|arg(f(z) (dz/du)^2)|` over the samples.
    pub max_arg_deviation: f64,
}

/// Evaluation of `T(wp(w0 + u v))` and its `u`-derivative.
struct Tracer {
    lattice: Lattice,
    einv: EInvariants,
    t: MobiusT,
    mu: Complex64,
    a: Complex64,
    origin: Complex64,
    direction: Complex64,
    tol: Tolerances,
}

impl Tracer {
    fn new(mu: Complex64, q: RationalSlope, start: GridPoint, tol: &Tolerances) -> Result<Tracer> {
        let tau = inverse_lambda_with(mu, tol)?;
        let lattice = Lattice::new(tau)?;
        let einv = lattice.e_invariants();
        let a = unit_length_coefficient(&einv, q).a;
        let (n, m) = q.direction();
        let tau = tau.value();
        let (s, t) = start.to_f64();
        Ok(Tracer {
            t: MobiusT::from_invariants(&einv),
            lattice,
            einv,
            mu,
            a,
            origin: s + t * tau,
            direction: n as f64 + m as f64 * tau,
            tol: *tol,
        })
    }

    fn at(&self, u: f64) -> Complex64 {
        self.origin + u * self.direction
    }

    /// Distance from `w` to the half lattice (branch points and poles).
    fn branch_distance(&self, w: Complex64) -> f64 {
        self.lattice.distance_to_lattice(2.0 * w) / 2.0
    }

    fn sphere(&self, w: Complex64) -> Result<(Complex64, Complex64)> {
        let (p, dp) = self.lattice.wp_and_prime(w)?;
        let z = self.t.apply(p);
        let dz = dp * self.t.derivative() * self.direction;
        Ok((z, dz))
    }

    /// `f(z) = a / (z (z - 1)(z - mu))`.
    fn density(&self, z: Complex64) -> Complex64 {
        self.a / (z * (z - 1.0) * (z - self.mu))
    }

    /// Same differential in the chart `zeta = 1/z`.
    fn density_at_infinity(&self, zeta: Complex64) -> Complex64 {
        self.a / (zeta * (1.0 - zeta) * (1.0 - self.mu * zeta))
    }

    /// Trapezoid estimate of the omega-length over `panels` chords.
    fn polyline_length(&self, panels: usize) -> Result<f64> {
        let mut prev = self.sphere(self.at(0.0))?.0;
        let mut total = 0.0;
        for i in 1..=panels {
            let z = self.sphere(self.at(i as f64 / panels as f64))?.0;
            total += if prev.norm().max(z.norm()) > 2.0 {
                let (za, zb) = (1.0 / prev, 1.0 / z);
                let ga = self.density_at_infinity(za).norm().sqrt();
                let gb = self.density_at_infinity(zb).norm().sqrt();
                0.5 * (ga + gb) * (zb - za).norm()
            } else {
                let ga = self.density(prev).norm().sqrt();
                let gb = self.density(z).norm().sqrt();
                0.5 * (ga + gb) * (z - prev).norm()
            };
            prev = z;
        }
        Ok(total)
    }

    /// Chord-trapezoid lengths with Richardson extrapolation, doubling the
    /// panel count until the extrapolated value settles.
    fn omega_length(&self, initial_panels: usize) -> Result<f64> {
        let mut panels = initial_panels.max(64);
        let mut coarse = self.polyline_length(panels)?;
        let mut previous: Option<f64> = None;
        while panels * 2 <= MAX_PANELS {
            panels *= 2;
            let fine = self.polyline_length(panels)?;
            let extrapolated = (4.0 * fine - coarse) / 3.0;
            if let Some(p) = previous {
                if (extrapolated - p).abs() <= self.tol.quadrature * extrapolated.abs() {
                    return Ok(extrapolated);
                }
            }
            previous = Some(extrapolated);
            coarse = fine;
        }
        previous.ok_or(Error::Internal("no quadrature estimate".into()))
    }
}

fn validate_inputs(mu: Complex64, q: RationalSlope, start: GridPoint, samples: usize) -> Result<()> {
    if samples < 16 {
        return Err(Error::TooFewSamples(samples));
    }
    if mu.norm() == 0.0 || (mu - 1.0).norm() == 0.0 {
        return Err(Error::DegenerateMu(mu));
    }
    let degenerate = |reason| Error::DegenerateStart {
        s: start.s.to_string(),
        t: start.t.to_string(),
        q: q.to_string(),
        reason,
    };
    if start.tile().is_none() {
        return Err(degenerate("start lies on a grid line"));
    }
    if hits_grid_vertex(q, start) {
        return Err(degenerate("the line passes through a half-lattice point"));
    }
    Ok(())
}

pub fn trace_trajectory(mu: Complex64, q: RationalSlope, start: GridPoint, samples: usize) -> Result<TrajectorySample> {
    trace_trajectory_with(mu, q, start, samples, &Tolerances::default())
}

/// Samples `T(wp(start + u (n + m tau)))` at `samples` evenly spaced
/// `u` in `[0, 1]`, for the unit-length differential of slope `q`.
pub fn trace_trajectory_with(
    mu: Complex64,
    q: RationalSlope,
    start: GridPoint,
    samples: usize,
    tol: &Tolerances,
) -> Result<TrajectorySample> {
    validate_inputs(mu, q, start, samples)?;
    let tracer = Tracer::new(mu, q, start, tol)?;

    let mut points = Vec::with_capacity(samples);
    let mut max_arg: f64 = 0.0;
    for i in 0..samples {
        let u = i as f64 / (samples - 1) as f64;
        let w = tracer.at(u);
        let distance = tracer.branch_distance(w);
        if distance < tol.branch_proximity {
            return Err(Error::BranchProximity { u, distance });
        }
        let (z, dz) = tracer.sphere(w)?;
        let value = tracer.density(z) * dz * dz;
        max_arg = max_arg.max(value.arg().abs());
        points.push(SpherePoint::from_plane(z));
    }

    let first = SpherePoint::from_plane(tracer.sphere(tracer.at(0.0))?.0);
    let last = SpherePoint::from_plane(tracer.sphere(tracer.at(1.0))?.0);
    let half = SpherePoint::from_plane(tracer.sphere(tracer.at(0.5))?.0);
    let closure_residual = first.chordal_distance(&last);
    let early_closure = first.chordal_distance(&half) <= tol.closure;
    let omega_length = tracer.omega_length(samples)?;

    Ok(TrajectorySample {
        q,
        mu,
        start,
        points,
        closed: closure_residual <= tol.closure,
        closure_residual,
        early_closure,
        omega_length,
        max_arg_deviation: max_arg,
    })
}

/// One of the four half periods, as a grid point `(s, t)` in `{0, 1/2}^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HalfPeriod {
    Origin,
    Half,
    HalfTau,
    HalfOnePlusTau,
}

impl HalfPeriod {
    pub const ALL: [HalfPeriod; 4] = [
        HalfPeriod::Origin,
        HalfPeriod::Half,
        HalfPeriod::HalfTau,
        HalfPeriod::HalfOnePlusTau,
    ];

    pub fn label(self) -> &'static str {
        match self {
            HalfPeriod::Origin => "0",
            HalfPeriod::Half => "1/2",
            HalfPeriod::HalfTau => "tau/2",
            HalfPeriod::HalfOnePlusTau => "(1+tau)/2",
        }
    }

    fn coordinates(self) -> (i64, i64) {
        match self {
            HalfPeriod::Origin => (0, 0),
            HalfPeriod::Half => (1, 0),
            HalfPeriod::HalfTau => (0, 1),
            HalfPeriod::HalfOnePlusTau => (1, 1),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriticalTrajectory {
    pub through: HalfPeriod,
    pub endpoints: [Puncture; 2],
    pub points: Vec<SpherePoint>,
}

pub fn critical_graph(mu: Complex64, q: RationalSlope, samples: usize) -> Result<Vec<CriticalTrajectory>> {
    critical_graph_with(mu, q, samples, &Tolerances::default())
}

/// Traces the q-line from each half period to the next one along it (half
/// a primitive period). Each image is a critical trajectory; its endpoints
/// are matched to the nearest puncture.
pub fn critical_graph_with(
    mu: Complex64,
    q: RationalSlope,
    samples: usize,
    tol: &Tolerances,
) -> Result<Vec<CriticalTrajectory>> {
    if samples < 16 {
        return Err(Error::TooFewSamples(samples));
    }
    if mu.norm() == 0.0 || (mu - 1.0).norm() == 0.0 {
        return Err(Error::DegenerateMu(mu));
    }
    let lattice = Lattice::new(inverse_lambda_with(mu, tol)?)?;
    let einv = lattice.e_invariants();
    let t = MobiusT::from_invariants(&einv);
    let tau = einv.tau.value();
    let (n, m) = q.direction();

    HalfPeriod::ALL
        .iter()
        .map(|&hp| {
            let (i, j) = hp.coordinates();
            let mut points = Vec::with_capacity(samples);
            for step in 0..samples {
                let u = Rational::new(step as i64, 2 * (samples as i64 - 1));
                // Doubled coordinates of the point, exact.
                let two_s = Rational::from_integer(i) + u * 2 * n;
                let two_t = Rational::from_integer(j) + u * 2 * m;
                let on_lattice = two_s.is_integer()
                    && two_t.is_integer()
                    && two_s.to_integer() % 2 == 0
                    && two_t.to_integer() % 2 == 0;
                if on_lattice {
                    points.push(SpherePoint::infinity());
                    continue;
                }
                let s = two_s.to_f64().unwrap_or(f64::NAN) / 2.0;
                let tt = two_t.to_f64().unwrap_or(f64::NAN) / 2.0;
                let z = t.apply(lattice.wp(s + tt * tau)?);
                points.push(SpherePoint::from_plane(z));
            }
            let label = |p: &SpherePoint| -> Result<Puncture> {
                Puncture::ALL
                    .into_iter()
                    .map(|c| (c, SpherePoint::of_puncture(c, mu).chordal_distance(p)))
                    .filter(|(_, d)| *d <= tol.puncture_match)
                    .min_by(|x, y| x.1.total_cmp(&y.1))
                    .map(|(c, _)| c)
                    .ok_or_else(|| Error::UnmatchedEndpoint(format!("{p:?}")))
            };
            let endpoints = [label(&points[0])?, label(&points[samples - 1])?];
            Ok(CriticalTrajectory {
                through: hp,
                endpoints,
                points,
            })
        })
        .collect()
}

/// Puncture joined to infinity by the critical trajectory through the origin.
pub fn origin_partner(mu: Complex64, q: RationalSlope, samples: usize) -> Result<Puncture> {
    let graph = critical_graph(mu, q, samples)?;
    let origin = graph
        .iter()
        .find(|c| c.through == HalfPeriod::Origin)
        .ok_or(Error::Internal("critical graph lacks the origin line".into()))?;
    match origin.endpoints {
        [Puncture::Infinity, p] | [p, Puncture::Infinity] => Ok(p),
        _ => Err(Error::Internal("origin line does not start at infinity".into())),
    }
}

/// Newton solve of `wp(w) = target` near `guess`, in the reciprocal form
/// when `target` is large.
fn solve_wp(lattice: &Lattice, target: Complex64, guess: Complex64, scale: f64) -> Option<Complex64> {
    let reciprocal = target.norm() > 1e3 * scale;
    let mut w = guess;
    for _ in 0..40 {
        let (p, dp) = lattice.wp_and_prime(w).ok()?;
        let step = if reciprocal {
            // F = 1/p - 1/target, F' = -p'/p^2
            (1.0 / p - 1.0 / target) / (-dp / (p * p))
        } else {
            (p - target) / dp
        };
        if !step.re.is_finite() || !step.im.is_finite() {
            return None;
        }
        w -= step;
        if step.norm() <= 1e-14 * (1.0 + w.norm()) {
            return Some(w);
        }
    }
    None
}

pub fn numeric_crossing_colors(mu: Complex64, q: RationalSlope, samples: usize) -> Result<Vec<EdgeColor>> {
    numeric_crossing_colors_with(mu, q, samples, &Tolerances::default())
}

/// Edge colors crossed by the traced trajectory, recovered from the sphere
/// points alone: the curve is lifted back to the plane by Newton
/// continuation on `wp`, and the lift's crossings of the half-integer grid
/// are read off in floating point.
pub fn numeric_crossing_colors_with(
    mu: Complex64,
    q: RationalSlope,
    samples: usize,
    tol: &Tolerances,
) -> Result<Vec<EdgeColor>> {
    let start = default_start(q);
    validate_inputs(mu, q, start, samples)?;
    let tracer = Tracer::new(mu, q, start, tol)?;
    let steps = samples.max(256 * q.height() as usize);
    let scale = tracer.einv.e1.norm().max(tracer.einv.e2.norm()).max(1.0);

    let target = |z: Complex64| tracer.t.invert(z);
    let mut lifted: Vec<Complex64> = Vec::with_capacity(steps + 1);
    let mut previous_z = tracer.sphere(tracer.origin)?.0;
    lifted.push(
        solve_wp(&tracer.lattice, target(previous_z), tracer.origin, scale).ok_or(Error::LiftFailure(0))?,
    );
    for i in 1..=steps {
        let z = tracer.sphere(tracer.at(i as f64 / steps as f64))?.0;
        let guess = if i >= 2 {
            2.0 * lifted[i - 1] - lifted[i - 2]
        } else {
            let (_, dp) = tracer.lattice.wp_and_prime(lifted[0])?;
            lifted[0] + (z - previous_z) / (dp * tracer.t.derivative())
        };
        let w = solve_wp(&tracer.lattice, target(z), guess, scale).ok_or(Error::LiftFailure(i))?;
        lifted.push(w);
        previous_z = z;
    }

    let mut crossings: Vec<(f64, EdgeColor)> = Vec::new();
    for (i, pair) in lifted.windows(2).enumerate() {
        let (s0, t0) = tracer.lattice.coordinates(pair[0]);
        let (s1, t1) = tracer.lattice.coordinates(pair[1]);
        for (x0, x1, orientation) in [(s0, s1, Orientation::Vertical), (t0, t1, Orientation::Horizontal)] {
            let (a, b) = ((2.0 * x0).floor() as i64, (2.0 * x1).floor() as i64);
            let lines: Vec<i64> = if b > a { (a + 1..=b).collect() } else { (b + 1..=a).rev().collect() };
            for line in lines {
                let frac = (line as f64 / 2.0 - x0) / (x1 - x0);
                crossings.push((i as f64 + frac, edge_color(orientation, line)));
            }
        }
    }
    crossings.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(crossings.into_iter().map(|(_, c)| c).collect())
}

pub fn intersection_word_check(mu: Complex64, q: RationalSlope, samples: usize) -> Result<bool> {
    let exact = trace_line(q, default_start(q))?.colors();
    Ok(numeric_crossing_colors(mu, q, samples)? == exact)
}

/// Images of the four edges of a white tile: green `[0, 1/2]`, yellow
/// `[0, tau/2]`, red `[tau/2, (1 + tau)/2]`, blue `[1/2, (1 + tau)/2]`.
pub fn pillowcase_edges(mu: Complex64, samples: usize) -> Result<Vec<(EdgeColor, Vec<SpherePoint>)>> {
    if samples < 2 {
        return Err(Error::TooFewSamples(samples));
    }
    let lattice = Lattice::new(inverse_lambda_with(mu, &Tolerances::default())?)?;
    let einv = lattice.e_invariants();
    let t = MobiusT::from_invariants(&einv);
    let tau = einv.tau.value();
    let segments = [
        (EdgeColor::Green, Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)),
        (EdgeColor::Yellow, Complex64::new(0.0, 0.0), tau / 2.0),
        (EdgeColor::Red, tau / 2.0, (1.0 + tau) / 2.0),
        (EdgeColor::Blue, Complex64::new(0.5, 0.0), (1.0 + tau) / 2.0),
    ];
    segments
        .iter()
        .map(|&(color, from, to)| {
            let pts = (0..samples)
                .map(|i| {
                    let u = i as f64 / (samples - 1) as f64;
                    if i == 0 && from.norm() == 0.0 {
                        return Ok(SpherePoint::infinity());
                    }
                    Ok(SpherePoint::from_plane(t.apply(lattice.wp(from + u * (to - from))?)))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((color, pts))
        })
        .collect()
}
