//! Command implementations and their JSON/text renderings.

use std::fmt::Write;

use serde::Serialize;
use strebel_core::elliptic::{inverse_lambda_with, Lattice};
use strebel_core::pillowcase::{default_start, slope_word_from, Direction};
use strebel_core::strebel::{js_coefficient_at, Puncture, normalize_unit_length, pullback_torus_coefficient, recover_slope_with};
use strebel_core::trajectory::{
    critical_graph_with, numeric_crossing_colors_with, HalfPeriod, pillowcase_edges, trace_trajectory_with, CriticalTrajectory,
    SpherePoint,
};
use strebel_core::{classify_separation, ComplexValue, EInvariants, Error, RationalSlope, Tau};

use crate::parse::Scale;
use crate::svg::{self, Layer};
use crate::{CliError, Command, Format, Outcome, RunConfig};

/// Complex number as `{"re": .., "im": ..}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<ComplexValue> for Cx {
    fn from(z: ComplexValue) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

fn show(z: ComplexValue) -> String {
    if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

trait Report: Serialize {
    fn text(&self) -> String;

    fn svg(&self) -> Option<String> {
        None
    }
}

fn render<R: Report>(report: &R, config: &RunConfig) -> Result<String, CliError> {
    match config.format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Text => Ok(report.text()),
        Format::Svg => report
            .svg()
            .ok_or_else(|| CliError::Usage("svg output is only available for `trace`".into())),
    }
}

fn lattice_for(mu: ComplexValue, config: &RunConfig) -> Result<(Tau, EInvariants), CliError> {
    let tau = inverse_lambda_with(mu, &config.tolerances)?;
    let einv = Lattice::new(tau)?.e_invariants();
    Ok((tau, einv))
}

pub(crate) fn dispatch(command: &Command, config: &RunConfig) -> Result<Outcome, CliError> {
    let ok = |body: String| Outcome { body, exit_code: 0 };
    match *command {
        Command::LambdaInv { mu } => {
            let (tau, einv) = lattice_for(mu, config)?;
            let report = LambdaReport {
                mu: mu.into(),
                tau: tau.value().into(),
                lambda: einv.lambda.into(),
                residual: (einv.lambda - mu).norm(),
            };
            render(&report, config).map(ok)
        }
        Command::Elliptic { tau, w } => {
            let lattice = Lattice::new(Tau::new(tau)?)?;
            let einv = lattice.e_invariants();
            let (wp, wp_prime) = match w {
                Some(w) => {
                    let (p, dp) = lattice.wp_and_prime(w)?;
                    (Some(p.into()), Some(dp.into()))
                }
                None => (None, None),
            };
            let report = EllipticReport {
                tau: tau.into(),
                e1: einv.e1.into(),
                e2: einv.e2.into(),
                e3: einv.e3.into(),
                lambda: einv.lambda.into(),
                w: w.map(Cx::from),
                wp,
                wp_prime,
            };
            render(&report, config).map(ok)
        }
        Command::Coeff { mu, q, k } => {
            let (tau, einv) = lattice_for(mu, config)?;
            let (k, unit_length) = match k {
                Scale::Fixed(k) => (k, false),
                Scale::UnitLength => (normalize_unit_length(q), true),
            };
            let coeff = js_coefficient_at(&einv, q, k)?;
            let report = CoeffReport {
                q: q.to_string(),
                mu: mu.into(),
                tau: tau.value().into(),
                k,
                unit_length,
                a: coeff.a.into(),
                torus_coefficient: pullback_torus_coefficient(coeff.a, &einv).into(),
                e1: einv.e1.into(),
                e2: einv.e2.into(),
                e3: einv.e3.into(),
            };
            render(&report, config).map(ok)
        }
        Command::Word { q, start, reverse } => {
            let start = start.unwrap_or_else(|| default_start(q));
            let direction = if reverse { Direction::Backward } else { Direction::Forward };
            let word = slope_word_from(q, start, direction)?;
            let report = WordReport {
                q: q.to_string(),
                start: (start.s.to_string(), start.t.to_string()),
                direction: if reverse { "backward" } else { "forward" },
                edge_sequence: word.sequence.colors().iter().map(|c| c.name()).collect(),
                pairs: word.pairs.iter().map(|(a, b)| [a.name(), b.name()]).collect(),
                raw_factors: word.factors.iter().map(|f| f.to_string()).collect(),
                raw_word: word.raw.to_string(),
                expanded_word: word.expanded.to_string(),
                canonical_class: word.class.to_string(),
                separation: classify_separation(q).to_string(),
            };
            render(&report, config).map(ok)
        }
        Command::Classify { q, mu, a, max_den } => {
            let report = match (q, mu, a) {
                (Some(q), None, None) => ClassifyReport::of(Some(q)),
                (None, Some(mu), Some(a)) => {
                    let (_, einv) = lattice_for(mu, config)?;
                    ClassifyReport::of(recover_slope_with(a, &einv, max_den, &config.tolerances)?)
                }
                _ => return Err(CliError::Usage("give either --q, or both --mu and --a".into())),
            };
            render(&report, config).map(ok)
        }
        Command::Trace { mu, q, samples, start } => {
            let start = start.unwrap_or_else(|| default_start(q));
            let tr = trace_trajectory_with(mu, q, start, samples, &config.tolerances)?;
            let critical = critical_graph_with(mu, q, (samples / 2).max(16), &config.tolerances)?;
            let edges = pillowcase_edges(mu, 128)?;
            let report = TraceReport {
                q: q.to_string(),
                mu: mu.into(),
                start: (start.s.to_string(), start.t.to_string()),
                closed: tr.closed,
                closure_residual: tr.closure_residual,
                early_closure: tr.early_closure,
                omega_length: tr.omega_length,
                max_arg_deviation: tr.max_arg_deviation,
                points: tr.points,
                critical_graph: critical,
                pillowcase_edges: edges
                    .into_iter()
                    .map(|(color, points)| EdgeCurve {
                        color: color.name(),
                        points,
                    })
                    .collect(),
            };
            render(&report, config).map(ok)
        }
        Command::Check { mu, q, samples } => {
            let report = run_checks(mu, q, samples, config)?;
            let exit_code = if report.passed { 0 } else { 3 };
            render(&report, config).map(|body| Outcome { body, exit_code })
        }
        Command::Enumerate { max_den } => {
            if max_den == 0 {
                return Err(Error::InvalidDenominatorBound.into());
            }
            let rows = RationalSlope::enumerate(max_den)
                .into_iter()
                .map(|q| {
                    let word = strebel_core::pillowcase::slope_word(q);
                    EnumerateRow {
                        q: q.to_string(),
                        canonical_class: word.class.to_string(),
                        separation: classify_separation(q).to_string(),
                        word_length: word.pairs.len(),
                    }
                })
                .collect();
            render(&EnumerateReport { max_den, rows }, config).map(ok)
        }
    }
}

#[derive(Serialize)]
struct LambdaReport {
    mu: Cx,
    tau: Cx,
    lambda: Cx,
    residual: f64,
}

impl Report for LambdaReport {
    fn text(&self) -> String {
        format!(
            "tau = {}\nlambda(tau) = {}\nresidual = {:e}\n",
            show(cx(self.tau)),
            show(cx(self.lambda)),
            self.residual
        )
    }
}

fn cx(c: Cx) -> ComplexValue {
    ComplexValue::new(c.re, c.im)
}

#[derive(Serialize)]
struct EllipticReport {
    tau: Cx,
    e1: Cx,
    e2: Cx,
    e3: Cx,
    lambda: Cx,
    #[serde(skip_serializing_if = "Option::is_none")]
    w: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wp: Option<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wp_prime: Option<Cx>,
}

impl Report for EllipticReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for (name, v) in [("e1", self.e1), ("e2", self.e2), ("e3", self.e3), ("lambda", self.lambda)] {
            let _ = writeln!(out, "{name} = {}", show(cx(v)));
        }
        if let (Some(p), Some(dp)) = (self.wp, self.wp_prime) {
            let _ = writeln!(out, "wp(w) = {}\nwp'(w) = {}", show(cx(p)), show(cx(dp)));
        }
        out
    }
}

#[derive(Serialize)]
struct CoeffReport {
    q: String,
    mu: Cx,
    tau: Cx,
    k: f64,
    unit_length: bool,
    a: Cx,
    torus_coefficient: Cx,
    e1: Cx,
    e2: Cx,
    e3: Cx,
}

impl Report for CoeffReport {
    fn text(&self) -> String {
        format!(
            "q = {}\ntau = {}\nk = {}{}\na = {}\n",
            self.q,
            show(cx(self.tau)),
            self.k,
            if self.unit_length { " (unit length)" } else { "" },
            show(cx(self.a))
        )
    }
}

#[derive(Serialize)]
struct WordReport {
    q: String,
    start: (String, String),
    direction: &'static str,
    edge_sequence: Vec<&'static str>,
    pairs: Vec<[&'static str; 2]>,
    raw_factors: Vec<String>,
    raw_word: String,
    expanded_word: String,
    canonical_class: String,
    separation: String,
}

impl Report for WordReport {
    fn text(&self) -> String {
        let pairs: Vec<String> = self.pairs.iter().map(|[a, b]| format!("{a}->{b}")).collect();
        format!(
            "q = {}\nedges: {}\npairs: {}\nraw word: {}\nexpanded: {}\nclass: {}\nseparation: {}\n",
            self.q,
            self.edge_sequence.join(","),
            pairs.join(" "),
            self.raw_factors.join(" "),
            if self.expanded_word.is_empty() { "1" } else { &self.expanded_word },
            self.canonical_class,
            self.separation
        )
    }
}

#[derive(Serialize)]
struct ClassifyReport {
    jenkins_strebel: bool,
    q: Option<String>,
    separation: Option<String>,
    paired_with_infinity: Option<String>,
}

impl ClassifyReport {
    fn of(q: Option<RationalSlope>) -> Self {
        let class = q.map(classify_separation);
        ClassifyReport {
            jenkins_strebel: q.is_some(),
            q: q.map(|q| q.to_string()),
            separation: class.map(|c| c.to_string()),
            paired_with_infinity: class.map(|c| c.paired_with_infinity.label().to_string()),
        }
    }
}

impl Report for ClassifyReport {
    fn text(&self) -> String {
        match (&self.q, &self.separation) {
            (Some(q), Some(sep)) => format!("q = {q}\nseparation: {sep}\n"),
            _ => "not Jenkins-Strebel at this denominator bound\n".to_string(),
        }
    }
}

#[derive(Serialize)]
struct EdgeCurve {
    color: &'static str,
    points: Vec<SpherePoint>,
}

#[derive(Serialize)]
struct TraceReport {
    q: String,
    mu: Cx,
    start: (String, String),
    closed: bool,
    closure_residual: f64,
    early_closure: bool,
    omega_length: f64,
    max_arg_deviation: f64,
    points: Vec<SpherePoint>,
    critical_graph: Vec<CriticalTrajectory>,
    pillowcase_edges: Vec<EdgeCurve>,
}

impl Report for TraceReport {
    fn text(&self) -> String {
        let mut out = format!(
            "q = {}\nclosed: {} (residual {:e})\nearly closure: {}\nomega-length: {}\nmax |arg f dz^2|: {:e}\n",
            self.q, self.closed, self.closure_residual, self.early_closure, self.omega_length, self.max_arg_deviation
        );
        for c in &self.critical_graph {
            let _ = writeln!(
                out,
                "critical trajectory through {}: {} - {}",
                c.through.label(), c.endpoints[0], c.endpoints[1]
            );
        }
        out
    }

    fn svg(&self) -> Option<String> {
        let mut layers: Vec<Layer<'_>> = self
            .pillowcase_edges
            .iter()
            .map(|e| Layer {
                class: "edge",
                stroke: match e.color {
                    "red" => svg::edge_stroke(strebel_core::EdgeColor::Red),
                    "yellow" => svg::edge_stroke(strebel_core::EdgeColor::Yellow),
                    "green" => svg::edge_stroke(strebel_core::EdgeColor::Green),
                    _ => svg::edge_stroke(strebel_core::EdgeColor::Blue),
                },
                width: 4.0,
                dashed: false,
                points: &e.points,
            })
            .collect();
        layers.extend(self.critical_graph.iter().map(|c| Layer {
            class: "critical",
            stroke: "#555555",
            width: 1.5,
            dashed: true,
            points: &c.points,
        }));
        layers.push(Layer {
            class: "trajectory",
            stroke: "#000000",
            width: 2.0,
            dashed: false,
            points: &self.points,
        });
        let title = format!("q = {}, mu = {}", self.q, show(cx(self.mu)));
        Some(svg::render(cx(self.mu), &title, &layers))
    }
}

#[derive(Serialize)]
struct CheckItem {
    name: &'static str,
    passed: bool,
    value: f64,
    tolerance: f64,
}

#[derive(Serialize)]
struct CheckReport {
    q: String,
    mu: Cx,
    passed: bool,
    checks: Vec<CheckItem>,
}

impl Report for CheckReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{verdict} {} (value {:e}, tolerance {:e})", c.name, c.value, c.tolerance);
        }
        out
    }
}

fn run_checks(mu: ComplexValue, q: RationalSlope, samples: usize, config: &RunConfig) -> Result<CheckReport, CliError> {
    let tol = &config.tolerances;
    let start = default_start(q);
    let tr = trace_trajectory_with(mu, q, start, samples, tol)?;
    let exact = strebel_core::pillowcase::trace_line(q, start)?.colors();
    let numeric = numeric_crossing_colors_with(mu, q, samples, tol)?;
    let critical = critical_graph_with(mu, q, (samples / 2).max(16), tol)?;
    let expected = classify_separation(q).paired_with_infinity;
    let partner = critical
        .iter()
        .find(|c| c.through == HalfPeriod::Origin)
        .map(|c| c.endpoints.iter().copied().find(|p| *p != Puncture::Infinity));
    let (_, einv) = lattice_for(mu, config)?;
    let a = js_coefficient_at(&einv, q, normalize_unit_length(q))?.a;
    let recovered = recover_slope_with(a, &einv, q.denominator().unsigned_abs().max(1), tol)?;

    let flag = |b: bool| if b { 0.0 } else { 1.0 };
    let checks = vec![
        CheckItem {
            name: "closure",
            passed: tr.closure_residual <= tol.closure,
            value: tr.closure_residual,
            tolerance: tol.closure,
        },
        CheckItem {
            name: "horizontality",
            passed: tr.max_arg_deviation <= tol.horizontality,
            value: tr.max_arg_deviation,
            tolerance: tol.horizontality,
        },
        CheckItem {
            name: "omega_length",
            passed: (tr.omega_length - 1.0).abs() <= tol.unit_length,
            value: (tr.omega_length - 1.0).abs(),
            tolerance: tol.unit_length,
        },
        CheckItem {
            name: "intersection_word",
            passed: numeric == exact,
            value: flag(numeric == exact),
            tolerance: 0.0,
        },
        CheckItem {
            name: "separation",
            passed: partner == Some(Some(expected)),
            value: flag(partner == Some(Some(expected))),
            tolerance: 0.0,
        },
        CheckItem {
            name: "slope_recovery",
            passed: recovered == Some(q),
            value: flag(recovered == Some(q)),
            tolerance: 0.0,
        },
    ];
    Ok(CheckReport {
        q: q.to_string(),
        mu: mu.into(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[derive(Serialize)]
struct EnumerateRow {
    q: String,
    canonical_class: String,
    separation: String,
    word_length: usize,
}

#[derive(Serialize)]
struct EnumerateReport {
    max_den: u32,
    rows: Vec<EnumerateRow>,
}

impl Report for EnumerateReport {
    fn text(&self) -> String {
        let mut out = format!("{:<8} {:<24} {:<20} {}\n", "q", "class", "separation", "pairs");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<8} {:<24} {:<20} {}",
                r.q, r.canonical_class, r.separation, r.word_length
            );
        }
        out
    }
}
