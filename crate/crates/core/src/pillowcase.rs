//! Exact combinatorics of q-lines on the chessboard-colored half-lattice.
//!
//! The plane is tiled by squares of side 1/2 in the `(1, tau)` basis. The
//! tile with lower-left corner `(i/2, j/2)` is white when `i + j` is even
//! and gray otherwise. Grid edges are colored by the line they lie on:
//!
//! | line            | color  |
//! |-----------------|--------|
//! | `t` in Z        | green  |
//! | `t` in Z + 1/2  | red    |
//! | `s` in Z        | yellow |
//! | `s` in Z + 1/2  | blue   |
//!
//! A q-line started in a white tile crosses `2(|m| + |n|)` edges per
//! primitive period, alternating into gray and back into white tiles.
//! Each white-gray-white transit is one loop in the fundamental group of
//! the pillowcase; multiplying them gives the curve class of the slope.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::freegroup::{conjugacy_canonical, expand_d, ConjugacyClass, SymLetter, SymWord, Symbol, Word};
use crate::slope::RationalSlope;

pub type Rational = Ratio<i64>;

/// The point `s + t*tau`, with exact coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridPoint {
    pub s: Rational,
    pub t: Rational,
}

impl GridPoint {
    pub fn new(s: Rational, t: Rational) -> Self {
        GridPoint { s, t }
    }

    pub fn from_fractions(s: (i64, i64), t: (i64, i64)) -> Self {
        GridPoint {
            s: Rational::new(s.0, s.1),
            t: Rational::new(t.0, t.1),
        }
    }

    /// Index `(i, j)` of the tile containing the point, or `None` on a grid line.
    pub fn tile(&self) -> Option<(i64, i64)> {
        let two_s = self.s * 2;
        let two_t = self.t * 2;
        if two_s.is_integer() || two_t.is_integer() {
            return None;
        }
        Some((two_s.floor().to_integer(), two_t.floor().to_integer()))
    }

    pub fn in_white_tile(&self) -> bool {
        matches!(self.tile(), Some((i, j)) if (i + j).is_even())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.s.to_f64().unwrap_or(f64::NAN),
            self.t.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s, self.t)
    }
}

impl Serialize for GridPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("GridPoint", 2)?;
        st.serialize_field("s", &self.s.to_string())?;
        st.serialize_field("t", &self.t.to_string())?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeColor {
    Red,
    Yellow,
    Green,
    Blue,
}

impl EdgeColor {
    pub const ALL: [EdgeColor; 4] = [EdgeColor::Red, EdgeColor::Yellow, EdgeColor::Green, EdgeColor::Blue];

    pub fn name(self) -> &'static str {
        match self {
            EdgeColor::Red => "red",
            EdgeColor::Yellow => "yellow",
            EdgeColor::Green => "green",
            EdgeColor::Blue => "blue",
        }
    }
}

impl fmt::Display for EdgeColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EdgeColor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "red" => Ok(EdgeColor::Red),
            "yellow" => Ok(EdgeColor::Yellow),
            "green" => Ok(EdgeColor::Green),
            "blue" => Ok(EdgeColor::Blue),
            other => Err(Error::InvalidTransit {
                entry: other.to_string(),
                exit: String::new(),
            }),
        }
    }
}

/// Orientation of the grid line being crossed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// A line `t = const`.
    Horizontal,
    /// A line `s = const`.
    Vertical,
}

/// Color of the grid line at coordinate `line_index / 2`.
pub fn edge_color(orientation: Orientation, line_index: i64) -> EdgeColor {
    let half_odd = line_index.rem_euclid(2) == 1;
    match (orientation, half_odd) {
        (Orientation::Horizontal, false) => EdgeColor::Green,
        (Orientation::Horizontal, true) => EdgeColor::Red,
        (Orientation::Vertical, false) => EdgeColor::Yellow,
        (Orientation::Vertical, true) => EdgeColor::Blue,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrossingEvent {
    /// Position along the line; `1` is one primitive lattice translation.
    #[serde(serialize_with = "ser_rational")]
    pub param: Rational,
    pub color: EdgeColor,
    pub orientation: Orientation,
    /// Grid line crossed, in half units.
    pub line_index: i64,
}

fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingSequence {
    pub events: Vec<CrossingEvent>,
    pub q: RationalSlope,
    pub start: GridPoint,
    pub direction: Direction,
}

impl CrossingSequence {
    pub fn colors(&self) -> Vec<EdgeColor> {
        self.events.iter().map(|e| e.color).collect()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

/// Validates a start point for the q-line through it.
pub fn check_start(q: RationalSlope, start: GridPoint) -> Result<()> {
    let degenerate = |reason| Error::DegenerateStart {
        s: start.s.to_string(),
        t: start.t.to_string(),
        q: q.to_string(),
        reason,
    };
    if start.tile().is_none() {
        return Err(degenerate("start lies on a grid line"));
    }
    if !start.in_white_tile() {
        return Err(degenerate("start lies in a gray tile"));
    }
    if hits_grid_vertex(q, start) {
        return Err(degenerate("the line passes through a grid vertex"));
    }
    Ok(())
}

/// Whether the q-line through `p` meets a point of the half-lattice.
///
/// `n*t - m*s` is constant along the line; at a vertex `(i/2, j/2)` it is
/// `(n*j - m*i)/2`, and since `gcd(m, n) = 1` every half-integer occurs.
pub fn hits_grid_vertex(q: RationalSlope, p: GridPoint) -> bool {
    let (n, m) = q.direction();
    let invariant = (p.t * n - p.s * m) * 2;
    invariant.is_integer()
}

/// Deterministic start point: `(1/4, 1/5)`, nudged to
/// `(1/4, 1/5 + 1/(210 k))` for `k = 1, 2, ...` if its line is degenerate.
pub fn default_start(q: RationalSlope) -> GridPoint {
    let base = GridPoint::from_fractions((1, 4), (1, 5));
    if !hits_grid_vertex(q, base) {
        return base;
    }
    (1..)
        .map(|k| GridPoint::new(base.s, base.t + Rational::new(1, 210 * k)))
        .find(|p| !hits_grid_vertex(q, *p))
        .expect("some nudge avoids every vertex")
}

pub fn trace_line(q: RationalSlope, start: GridPoint) -> Result<CrossingSequence> {
    trace_line_directed(q, start, Direction::Forward)
}

/// Crossings of the q-line from `start` over one primitive period, walking
/// along `(n, m)` (forward) or `(-n, -m)` (backward).
pub fn trace_line_directed(
    q: RationalSlope,
    start: GridPoint,
    direction: Direction,
) -> Result<CrossingSequence> {
    check_start(q, start)?;
    let (n, m) = q.direction();
    let sign = match direction {
        Direction::Forward => 1,
        Direction::Backward => -1,
    };
    let mut events = Vec::with_capacity(2 * q.height() as usize);
    crossings_along(start.s, sign * n, Orientation::Vertical, &mut events);
    crossings_along(start.t, sign * m, Orientation::Horizontal, &mut events);
    events.sort_by_key(|a| a.param);
    if events.windows(2).any(|w| w[0].param == w[1].param) {
        return Err(Error::Internal("coincident crossings on a vertex-free line".into()));
    }
    Ok(CrossingSequence {
        events,
        q,
        start,
        direction,
    })
}

/// Crossings of the half-integer lines strictly between `x0` and `x0 + dx`.
fn crossings_along(x0: Rational, dx: i64, orientation: Orientation, out: &mut Vec<CrossingEvent>) {
    if dx == 0 {
        return;
    }
    let lo = (x0 * 2).floor().to_integer();
    let hi = ((x0 + dx) * 2).floor().to_integer();
    let range: Box<dyn Iterator<Item = i64>> = if dx > 0 {
        Box::new(lo + 1..=hi)
    } else {
        Box::new((hi + 1..=lo).rev())
    };
    for index in range {
        let param = (Rational::new(index, 2) - x0) / dx;
        debug_assert!(param > Rational::zero() && param < Rational::from_integer(1));
        out.push(CrossingEvent {
            param,
            color: edge_color(orientation, index),
            orientation,
            line_index: index,
        });
    }
}

/// Splits the sequence into consecutive (entry, exit) pairs of gray tiles.
pub fn pair_crossings(seq: &CrossingSequence) -> Result<Vec<(EdgeColor, EdgeColor)>> {
    if !seq.events.len().is_multiple_of(2) {
        return Err(Error::Internal(format!(
            "odd crossing count {} for slope {}",
            seq.events.len(),
            seq.q
        )));
    }
    Ok(seq
        .events
        .chunks_exact(2)
        .map(|pair| (pair[0].color, pair[1].color))
        .collect())
}

/// Loop in the fundamental group for a transit of a gray tile.
pub fn pair_to_generator(entry: EdgeColor, exit: EdgeColor) -> Result<SymWord> {
    use EdgeColor::*;
    use Symbol::{A, B, C, D};
    let l = |s, inv| SymLetter::new(s, inv);
    let letters = match (entry, exit) {
        (Red, Yellow) => vec![l(C, false)],
        (Yellow, Green) => vec![l(D, false)],
        (Green, Blue) => vec![l(A, false)],
        (Blue, Red) => vec![l(B, false)],
        (Red, Green) => vec![l(C, false), l(D, false)],
        (Yellow, Blue) => vec![l(D, false), l(A, false)],
        (Yellow, Red) => vec![l(C, true)],
        (Green, Yellow) => vec![l(D, true)],
        (Blue, Green) => vec![l(A, true)],
        (Red, Blue) => vec![l(B, true)],
        (Green, Red) => vec![l(D, true), l(C, true)],
        (Blue, Yellow) => vec![l(A, true), l(D, true)],
        (e, x) => {
            return Err(Error::InvalidTransit {
                entry: e.to_string(),
                exit: x.to_string(),
            })
        }
    };
    Ok(SymWord::from_letters(letters))
}

/// Every intermediate of the slope-to-class computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeWord {
    pub sequence: CrossingSequence,
    pub pairs: Vec<(EdgeColor, EdgeColor)>,
    /// One factor per pair, `d` left symbolic.
    pub factors: Vec<SymWord>,
    /// Product of the factors as written.
    pub raw: SymWord,
    /// Product with `d` expanded, freely reduced.
    pub expanded: Word,
    pub class: ConjugacyClass,
}

pub fn slope_word_from(q: RationalSlope, start: GridPoint, direction: Direction) -> Result<SlopeWord> {
    let sequence = trace_line_directed(q, start, direction)?;
    let pairs = pair_crossings(&sequence)?;
    let factors = pairs
        .iter()
        .map(|&(entry, exit)| pair_to_generator(entry, exit))
        .collect::<Result<Vec<_>>>()?;
    let raw = SymWord::concat(&factors);
    let expanded = expand_d(&raw);
    let class = conjugacy_canonical(&expanded);
    Ok(SlopeWord {
        sequence,
        pairs,
        factors,
        raw,
        expanded,
        class,
    })
}

pub fn slope_word(q: RationalSlope) -> SlopeWord {
    slope_word_from(q, default_start(q), Direction::Forward)
        .expect("the default start point is valid for every slope")
}

/// Curve class (conjugacy class modulo inverse) of the slope `q`.
pub fn word_of_slope(q: RationalSlope) -> ConjugacyClass {
    slope_word(q).class
}
