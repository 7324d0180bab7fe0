mod common;

use std::collections::HashMap;

use num_rational::Ratio;
use rand::Rng;
use strebel_core::pillowcase::{
    check_start, default_start, slope_word, slope_word_from, trace_line, trace_line_directed, Direction,
};
use strebel_core::{word_of_slope, EdgeColor, GridPoint, RationalSlope};

fn all_slopes(bound: i64) -> Vec<RationalSlope> {
    let mut out = vec![RationalSlope::INFINITY];
    for n in 1..=bound {
        for m in -bound..=bound {
            if num_integer::gcd(m, n) == 1 {
                out.push(RationalSlope::new(m, n).unwrap());
            }
        }
    }
    out
}

/// Colors met by the segment from `start` to `start + (n, m)`, found in
/// floating point by solving for each half-integer line separately.
fn float_crossings(q: RationalSlope, start: GridPoint) -> Vec<EdgeColor> {
    let (n, m) = q.direction();
    let (s0, t0) = start.to_f64();
    let mut events: Vec<(f64, EdgeColor)> = Vec::new();
    let mut scan = |x0: f64, dx: i64, vertical: bool| {
        if dx == 0 {
            return;
        }
        let (lo, hi) = if dx > 0 { (x0, x0 + dx as f64) } else { (x0 + dx as f64, x0) };
        let mut k = (2.0 * lo).ceil() as i64;
        while (k as f64) / 2.0 <= hi {
            let u = (k as f64 / 2.0 - x0) / dx as f64;
            if u > 1e-12 && u <= 1.0 + 1e-12 {
                let half = k.rem_euclid(2) == 1;
                let color = match (vertical, half) {
                    (false, false) => EdgeColor::Green,
                    (false, true) => EdgeColor::Red,
                    (true, false) => EdgeColor::Yellow,
                    (true, true) => EdgeColor::Blue,
                };
                events.push((u, color));
            }
            k += 1;
        }
    };
    scan(s0, n, true);
    scan(t0, m, false);
    events.sort_by(|a, b| a.0.total_cmp(&b.0));
    events.into_iter().map(|e| e.1).collect()
}

fn random_white_start(rng: &mut impl Rng, q: RationalSlope) -> GridPoint {
    loop {
        let i: i64 = rng.gen_range(-3..3);
        let j: i64 = rng.gen_range(-3..3);
        if (i + j).rem_euclid(2) != 0 {
            continue;
        }
        let s = Ratio::new(i, 2) + Ratio::new(rng.gen_range(1..97), 194);
        let t = Ratio::new(j, 2) + Ratio::new(rng.gen_range(1..89), 178);
        let p = GridPoint::new(s, t);
        if check_start(q, p).is_ok() {
            return p;
        }
    }
}

#[test]
fn crossing_count_law() {
    for q in all_slopes(20) {
        let (n, m) = q.direction();
        let seq = trace_line(q, default_start(q)).unwrap();
        assert_eq!(seq.len() as i64, 2 * (m.abs() + n.abs()), "q = {q}");
    }
}

#[test]
fn exact_sequence_matches_float_oracle() {
    let mut rng = common::rng(7);
    for q in all_slopes(12) {
        for start in [default_start(q), random_white_start(&mut rng, q)] {
            let exact = trace_line(q, start).unwrap().colors();
            assert_eq!(exact, float_crossings(q, start), "q = {q}, start = {start}");
        }
    }
}

#[test]
fn class_independent_of_start_and_direction() {
    let mut rng = common::rng(11);
    for q in all_slopes(6) {
        let class = word_of_slope(q);
        for _ in 0..10 {
            let start = random_white_start(&mut rng, q);
            for dir in [Direction::Forward, Direction::Backward] {
                let w = slope_word_from(q, start, dir).unwrap();
                assert_eq!(w.class, class, "q = {q}, start = {start}, {dir:?}");
            }
        }
    }
}

#[test]
fn reversed_trace_is_the_forward_trace_backwards() {
    let q: RationalSlope = "3/5".parse().unwrap();
    let start = default_start(q);
    let mut fwd = trace_line_directed(q, start, Direction::Forward).unwrap().colors();
    let back = trace_line_directed(q, start, Direction::Backward).unwrap().colors();
    fwd.reverse();
    // Same cyclic sequence read backwards.
    let doubled: Vec<_> = fwd.iter().chain(fwd.iter()).copied().collect();
    assert!(doubled.windows(back.len()).any(|w| w == back.as_slice()));
}

#[test]
fn distinct_slopes_give_distinct_classes() {
    let mut seen = HashMap::new();
    for q in all_slopes(10) {
        let class = word_of_slope(q);
        assert!(!class.is_trivial(), "q = {q}");
        if let Some(other) = seen.insert(class.clone(), q) {
            panic!("{q} and {other} share class {class}");
        }
    }
}

#[test]
fn word_length_grows_with_height() {
    for q in all_slopes(8) {
        let w = slope_word(q);
        assert_eq!(w.pairs.len() as u64, q.height());
    }
}
