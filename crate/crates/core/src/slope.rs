use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A slope `q = m/n` in lowest terms, with `q = inf` stored as `1/0`.
///
/// The sign is always carried by `m`, so `n >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSlope", into = "RawSlope")]
pub struct RationalSlope {
    m: i64,
    n: i64,
}

#[derive(Serialize, Deserialize)]
struct RawSlope {
    m: i64,
    n: i64,
}

impl TryFrom<RawSlope> for RationalSlope {
    type Error = Error;
    fn try_from(raw: RawSlope) -> Result<Self> {
        RationalSlope::new(raw.m, raw.n)
    }
}

impl From<RationalSlope> for RawSlope {
    fn from(q: RationalSlope) -> Self {
        RawSlope { m: q.m, n: q.n }
    }
}

impl RationalSlope {
    pub const INFINITY: RationalSlope = RationalSlope { m: 1, n: 0 };
    pub const ZERO: RationalSlope = RationalSlope { m: 0, n: 1 };

    /// Builds `m/n`, reducing to lowest terms and moving the sign onto `m`.
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m == 0 && n == 0 {
            return Err(Error::InvalidSlope("0/0 is not a slope".into()));
        }
        if m == i64::MIN || n == i64::MIN {
            return Err(Error::InvalidSlope("component out of range".into()));
        }
        if n == 0 {
            return Ok(Self::INFINITY);
        }
        let g = m.gcd(&n);
        let (mut m, mut n) = (m / g, n / g);
        if n < 0 {
            m = -m;
            n = -n;
        }
        Ok(RationalSlope { m, n })
    }

    pub fn integer(m: i64) -> Self {
        RationalSlope { m, n: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.m
    }

    pub fn denominator(&self) -> i64 {
        self.n
    }

    pub fn is_infinite(&self) -> bool {
        self.n == 0
    }

    /// Primitive lattice direction `(n, m)` in the basis `(1, tau)`.
    pub fn direction(&self) -> (i64, i64) {
        (self.n, self.m)
    }

    /// `|m| + |n|`, the number of gray tiles a primitive segment crosses.
    pub fn height(&self) -> u64 {
        self.m.unsigned_abs() + self.n.unsigned_abs()
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            self.m as f64 / self.n as f64
        }
    }

    /// All reduced slopes with `|m| <= bound` and `0 <= n <= bound`,
    /// ordered by `(n, m)`; infinity comes first.
    pub fn enumerate(bound: u32) -> Vec<RationalSlope> {
        let b = bound as i64;
        let mut out = Vec::new();
        if b >= 1 {
            out.push(Self::INFINITY);
        }
        for n in 1..=b {
            for m in -b..=b {
                if m.gcd(&n) == 1 {
                    out.push(RationalSlope { m, n });
                }
            }
        }
        out
    }
}

impl fmt::Display for RationalSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.m, self.n)
        }
    }
}

impl FromStr for RationalSlope {
    type Err = Error;

    /// Accepts `m/n`, a bare integer, or `inf`. Decimals are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "infinity" | "∞" | "Inf" | "INF") {
            return Ok(Self::INFINITY);
        }
        let parse_int = |part: &str| -> Result<i64> {
            let part = part.trim();
            part.parse::<i64>().map_err(|_| {
                Error::InvalidSlope(format!(
                    "{s:?}: expected m/n, an integer or inf (decimals are not exact)"
                ))
            })
        };
        match s.split_once('/') {
            Some((m, n)) => RationalSlope::new(parse_int(m)?, parse_int(n)?),
            None => RationalSlope::new(parse_int(s)?, 1),
        }
    }
}
