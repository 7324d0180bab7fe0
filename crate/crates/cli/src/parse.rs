//! Value parsers for command-line arguments.

use strebel_core::pillowcase::Rational;
use strebel_core::{ComplexValue, GridPoint, RationalSlope};

/// Complex numbers as `re+imi`, `re`, `imi`, with optional spaces.
pub fn complex(text: &str) -> Result<ComplexValue, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty complex number".into());
    }
    let value: ComplexValue = compact
        .replace('j', "i")
        .parse()
        .map_err(|_| format!("cannot parse complex number {text:?}; expected re+imi"))?;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(format!("complex number {text:?} is not finite"));
    }
    Ok(value)
}

pub fn slope(text: &str) -> Result<RationalSlope, String> {
    text.parse().map_err(|e: strebel_core::Error| e.to_string())
}

/// Grid points as `s,t` with rational coordinates, e.g. `1/4,1/5`.
pub fn grid_point(text: &str) -> Result<GridPoint, String> {
    let (s, t) = text
        .split_once(',')
        .ok_or_else(|| format!("expected s,t in {text:?}"))?;
    let coord = |x: &str| {
        x.trim()
            .parse::<Rational>()
            .map_err(|_| format!("cannot parse rational coordinate {x:?}"))
    };
    Ok(GridPoint::new(coord(s)?, coord(t)?))
}

pub fn positive(text: &str) -> Result<f64, String> {
    match text.trim().parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("expected a positive number, got {text:?}")),
    }
}

/// Scale `k` of a differential: a positive number or `unit-length`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scale {
    Fixed(f64),
    UnitLength,
}

pub fn scale(text: &str) -> Result<Scale, String> {
    match text.trim() {
        "unit-length" | "unit" => Ok(Scale::UnitLength),
        other => positive(other).map(Scale::Fixed),
    }
}
