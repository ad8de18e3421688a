//! Boundary 3-manifolds and 4-manifold invariants of zero-vertex shadows, lens spaces,
//! Alexander polynomials from Seifert matrices, and Casson invariant differences.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod alexander;
mod forms;
mod zero_vertex;

pub use alexander::{
    alexander_from_seifert, casson_difference, casson_difference_closed, casson_difference_surgery, seifert_matrix,
    LaurentPolynomial,
};
pub use forms::{intersection_form, Definiteness, IntersectionForm2};
pub use zero_vertex::{boundary_description, homeo_zero_vertex, parse_gleam, Shape, ZeroVertexShadow};

/// `L(p, q)` up to unoriented homeomorphism. `p = 0` is `S^2 x S^1` and `p = 1` is `S^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LensSpace {
    pub p: i64,
    pub q: i64,
}

impl LensSpace {
    /// Canonical form: `p >= 0`, `0 <= q < p` minimal among `±q^{±1}`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        let p = p.abs();
        match p {
            0 if q.abs() == 1 => return Ok(LensSpace { p: 0, q: 1 }),
            0 => return Err(Error::Domain(format!("L(0,{q}) needs q = ±1"))),
            1 => return Ok(LensSpace { p: 1, q: 0 }),
            _ => {}
        }
        let q0 = q.rem_euclid(p);
        if q0.gcd(&p) != 1 {
            return Err(Error::Domain(format!("L({p},{q}) needs gcd(p,q) = 1")));
        }
        let inv = mod_inverse(q0, p).expect("unit");
        let q = [q0, p - q0, inv, p - inv].into_iter().map(|x| x % p).min().unwrap();
        Ok(LensSpace { p, q })
    }

    pub fn is_s3(&self) -> bool {
        self.p == 1
    }

    pub fn is_s2xs1(&self) -> bool {
        self.p == 0
    }
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = a.extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// Unoriented classification: `|p|` agrees and `q' ≡ ±q^{±1} (mod |p|)`.
pub fn lens_homeo(a: LensSpace, b: LensSpace) -> bool {
    let (p, pb) = (a.p.abs(), b.p.abs());
    if p != pb {
        return false;
    }
    if p <= 1 {
        return true;
    }
    let (qa, qb) = (a.q.rem_euclid(p), b.q.rem_euclid(p));
    let prod = (qa as i128 * qb as i128).rem_euclid(p as i128) as i64;
    qa == qb || (qa + qb) % p == 0 || prod == 1 || prod == p - 1
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.p {
            0 => f.write_str("S2xS1"),
            1 => f.write_str("S3"),
            _ => write!(f, "L({},{})", self.p, self.q),
        }
    }
}

/// A Seifert fibered space over `S^2` with Euler number slot 0, fibers as written.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeifertDescription {
    pub fibers: Vec<(i64, Rational64)>,
}

impl SeifertDescription {
    pub fn new(fibers: Vec<(i64, Rational64)>) -> Self {
        assert!(!fibers.is_empty());
        SeifertDescription { fibers }
    }

    fn sorted(&self) -> Vec<(i64, Rational64)> {
        let mut f = self.fibers.clone();
        f.sort();
        f
    }
}

fn rat_str(x: Rational64) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for SeifertDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fibers: Vec<String> = self.fibers.iter().map(|(a, b)| format!("({a},{})", rat_str(*b))).collect();
        write!(f, "S2(0;{})", fibers.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", content = "payload")]
pub enum ThreeManifold {
    S3,
    S2xS1,
    Lens(LensSpace),
    Seifert(SeifertDescription),
    ConnectedSum(Vec<ThreeManifold>),
}

impl ThreeManifold {
    /// `L(p, q)`, with `S^3` and `S^2 x S^1` under their own tags.
    pub fn lens(p: i64, q: i64) -> Result<Self> {
        let l = LensSpace::new(p, q)?;
        Ok(if l.is_s3() {
            ThreeManifold::S3
        } else if l.is_s2xs1() {
            ThreeManifold::S2xS1
        } else {
            ThreeManifold::Lens(l)
        })
    }

    /// Connected sum, dropping `S^3` summands and flattening nested sums.
    pub fn connected_sum(parts: Vec<ThreeManifold>) -> Self {
        let mut out = Vec::new();
        for p in parts {
            match p {
                ThreeManifold::S3 => {}
                ThreeManifold::ConnectedSum(xs) => out.extend(xs),
                x => out.push(x),
            }
        }
        match out.len() {
            0 => ThreeManifold::S3,
            1 => out.pop().unwrap(),
            _ => ThreeManifold::ConnectedSum(out),
        }
    }

    pub fn is_prime(&self) -> bool {
        !matches!(self, ThreeManifold::ConnectedSum(_))
    }

    /// Identification on the normal forms produced here: lens spaces by the unoriented
    /// classification, Seifert forms by their fiber multisets, sums summand by summand.
    pub fn equivalent(&self, other: &ThreeManifold) -> bool {
        use ThreeManifold::*;
        match (self, other) {
            (S3, S3) | (S2xS1, S2xS1) => true,
            (Lens(a), Lens(b)) => lens_homeo(*a, *b),
            (Seifert(a), Seifert(b)) => a.sorted() == b.sorted(),
            (ConnectedSum(a), ConnectedSum(b)) => {
                if a.len() != b.len() {
                    return false;
                }
                let mut used = vec![false; b.len()];
                a.iter().all(|x| {
                    match (0..b.len()).find(|&j| !used[j] && x.equivalent(&b[j])) {
                        Some(j) => {
                            used[j] = true;
                            true
                        }
                        None => false,
                    }
                })
            }
            _ => false,
        }
    }
}

impl fmt::Display for ThreeManifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThreeManifold::S3 => f.write_str("S3"),
            ThreeManifold::S2xS1 => f.write_str("S2xS1"),
            ThreeManifold::Lens(l) if l.p == 2 => f.write_str("RP3"),
            ThreeManifold::Lens(l) => write!(f, "{l}"),
            ThreeManifold::Seifert(s) => write!(f, "{s}"),
            ThreeManifold::ConnectedSum(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                f.write_str(&parts.join(" # "))
            }
        }
    }
}
