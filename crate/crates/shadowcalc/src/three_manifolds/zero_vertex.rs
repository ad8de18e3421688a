//! The three closed special-free polyhedra without true vertices and the 4-manifolds they
//! shadow: boundaries and the homeomorphism classification.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::{SeifertDescription, ThreeManifold};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    X1,
    X2,
    X3,
}

impl Shape {
    pub fn arity(self) -> usize {
        match self {
            Shape::X1 => 1,
            Shape::X2 => 2,
            Shape::X3 => 3,
        }
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x1" => Ok(Shape::X1),
            "x2" => Ok(Shape::X2),
            "x3" => Ok(Shape::X3),
            _ => Err(Error::Domain(format!("unknown shape '{s}'"))),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::X1 => "X1",
            Shape::X2 => "X2",
            Shape::X3 => "X3",
        })
    }
}

/// A zero-vertex shadow with its gleams. `X2` stores `r2 = 2r`, which is odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroVertexShadow {
    X1 { n: i64 },
    X2 { n: i64, r2: i64 },
    X3 { l: i64, m: i64, n: i64 },
}

/// Parses `3`, `-3/2` or `1.5` into half-units.
pub fn parse_gleam(s: &str) -> Result<i64> {
    let bad = || Error::Domain(format!("bad gleam '{s}'"));
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        return match b.trim() {
            "1" => a.checked_mul(2).ok_or_else(bad),
            "2" => Ok(a),
            _ => Err(bad()),
        };
    }
    if let Some((a, b)) = s.split_once('.') {
        let neg = a.starts_with('-');
        let whole: i64 = if a == "-" || a.is_empty() { 0 } else { a.parse().map_err(|_| bad())? };
        let half = match b.trim_end_matches('0') {
            "" => 0,
            "5" => 1,
            _ => return Err(bad()),
        };
        return Ok(2 * whole + if neg { -half } else { half });
    }
    s.parse::<i64>().map_err(|_| bad())?.checked_mul(2).ok_or_else(bad)
}

impl ZeroVertexShadow {
    /// Builds from gleams in half-units; all must be whole except the second one of `X2`.
    pub fn from_half_units(shape: Shape, h: &[i64]) -> Result<Self> {
        if h.len() != shape.arity() {
            return Err(Error::Domain(format!("{shape} takes {} gleams, got {}", shape.arity(), h.len())));
        }
        let whole = |i: usize| -> Result<i64> {
            if h[i] % 2 != 0 {
                return Err(Error::Inadmissible { region: i, half_units: h[i], z2: 0 });
            }
            Ok(h[i] / 2)
        };
        Ok(match shape {
            Shape::X1 => ZeroVertexShadow::X1 { n: whole(0)? },
            Shape::X2 => {
                if h[1] % 2 == 0 {
                    return Err(Error::Inadmissible { region: 1, half_units: h[1], z2: 1 });
                }
                ZeroVertexShadow::X2 { n: whole(0)?, r2: h[1] }
            }
            Shape::X3 => ZeroVertexShadow::X3 { l: whole(0)?, m: whole(1)?, n: whole(2)? },
        })
    }

    pub fn parse(shape: Shape, gleams: &[&str]) -> Result<Self> {
        let h = gleams.iter().map(|s| parse_gleam(s)).collect::<Result<Vec<_>>>()?;
        Self::from_half_units(shape, &h)
    }

    pub fn shape(&self) -> Shape {
        match self {
            ZeroVertexShadow::X1 { .. } => Shape::X1,
            ZeroVertexShadow::X2 { .. } => Shape::X2,
            ZeroVertexShadow::X3 { .. } => Shape::X3,
        }
    }
}

fn int(x: i64) -> Rational64 {
    Rational64::from_integer(x)
}

fn seifert(fibers: &[(i64, i64)]) -> ThreeManifold {
    ThreeManifold::Seifert(SeifertDescription::new(fibers.iter().map(|&(a, b)| (a, int(b))).collect()))
}

pub fn boundary_description(s: &ZeroVertexShadow) -> Result<ThreeManifold> {
    match *s {
        ZeroVertexShadow::X1 { n } => match n {
            0 => Ok(ThreeManifold::connected_sum(vec![ThreeManifold::lens(3, 1)?, ThreeManifold::lens(3, -1)?])),
            1 | -1 => ThreeManifold::lens(9, -4 * n),
            _ => Ok(seifert(&[(3, 1), (3, -1), (n, 1)])),
        },
        ZeroVertexShadow::X2 { n, r2 } => {
            if r2 % 2 == 0 {
                return Err(Error::Inadmissible { region: 1, half_units: r2, z2: 1 });
            }
            if n == 0 {
                Ok(ThreeManifold::connected_sum(vec![ThreeManifold::lens(2, 1)?, ThreeManifold::lens(r2, -2)?]))
            } else if n == 1 || n == -1 {
                ThreeManifold::lens(2 * r2 + n, -4)
            } else if r2 == 1 || r2 == -1 {
                ThreeManifold::lens(n + 2 * r2, -1)
            } else {
                // (2r, 1/2 - r) with 1/2 - r = (1 - r2) / 2, an integer
                Ok(ThreeManifold::Seifert(SeifertDescription::new(vec![
                    (2, int(1)),
                    (n, int(1)),
                    (r2, Rational64::new(1 - r2, 2)),
                ])))
            }
        }
        ZeroVertexShadow::X3 { l, m, n } => {
            let g = [l, m, n];
            if let Some(i) = g.iter().position(|x| x.abs() == 1) {
                let (mu, nu) = (g[(i + 1) % 3] + g[i], g[(i + 2) % 3] + g[i]);
                return ThreeManifold::lens(mu * nu - 1, mu);
            }
            if let Some(i) = g.iter().position(|&x| x == 0) {
                let (a, b) = (g[(i + 1) % 3], g[(i + 2) % 3]);
                return Ok(ThreeManifold::connected_sum(vec![ThreeManifold::lens(a, 1)?, ThreeManifold::lens(b, 1)?]));
            }
            Ok(seifert(&[(l, 1), (m, 1), (n, 1)]))
        }
    }
}

fn sorted3(a: [i64; 3]) -> [i64; 3] {
    let mut a = a;
    a.sort_unstable();
    a
}

/// `{s, a, b}` against `{-s, a + 2s, b + 2s}` for some entry `s = ±1` of `x`.
fn unit_shift(x: [i64; 3], y: [i64; 3]) -> bool {
    let y = sorted3(y);
    (0..3).any(|i| {
        let s = x[i];
        if s.abs() != 1 {
            return false;
        }
        let (a, b) = (x[(i + 1) % 3], x[(i + 2) % 3]);
        sorted3([-s, a + 2 * s, b + 2 * s]) == y
    })
}

fn is_one_minus_one(x: [i64; 3]) -> Option<i64> {
    let s = sorted3(x);
    if s[0] == -1 && s[1] == 1 {
        Some(s[2])
    } else if s[0] == -1 && s[2] == 1 {
        Some(s[1])
    } else if s[1] == -1 && s[2] == 1 {
        Some(s[0])
    } else {
        None
    }
}

fn x3_condition(x: [i64; 3], y: [i64; 3]) -> bool {
    if sorted3(x) == sorted3(y) {
        return true;
    }
    for s in [1, -1] {
        let (big, small) = (sorted3([s, -2 * s, -2 * s]), sorted3([-s, 0, 0]));
        if sorted3(x) == big && sorted3(y) == small {
            return true;
        }
        let (zeros, big) = (sorted3([0, 0, -s]), sorted3([s, -2 * s, -2 * s]));
        if sorted3(x) == zeros && sorted3(y) == big {
            return true;
        }
    }
    if unit_shift(x, y) {
        return true;
    }
    if let (Some(a), Some(b)) = (is_one_minus_one(x), is_one_minus_one(y)) {
        if (a - b).rem_euclid(2) == 0 {
            return true;
        }
    }
    false
}

/// Condition (iii) of the zero-vertex classification.
pub fn homeo_zero_vertex(a: &ZeroVertexShadow, b: &ZeroVertexShadow) -> Result<bool> {
    use ZeroVertexShadow::*;
    match (*a, *b) {
        (X1 { n }, X1 { n: n2 }) => Ok(n == n2),
        (X2 { n, r2 }, X2 { n: n2, r2: s2 }) => {
            if r2 % 2 == 0 || s2 % 2 == 0 {
                return Err(Error::Domain("X2 needs a strict half-integer second gleam".into()));
            }
            Ok((n, r2) == (n2, s2) || (n == n2 + 4 && r2 == -1 && s2 == 1) || (n == n2 - 4 && r2 == 1 && s2 == -1))
        }
        (X3 { l, m, n }, X3 { l: l2, m: m2, n: n2 }) => Ok(x3_condition([l, m, n], [l2, m2, n2])),
        _ => Err(Error::Domain(format!("cannot compare {} with {}", a.shape(), b.shape()))),
    }
}
