//! Intersection forms of the zero-vertex 4-manifolds.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::ZeroVertexShadow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
}

/// A symmetric integer form of rank at most two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IntersectionForm2 {
    Trivial,
    Rank1(i64),
    Rank2([[i64; 2]; 2]),
}

impl IntersectionForm2 {
    pub fn rank(&self) -> usize {
        match self {
            IntersectionForm2::Trivial => 0,
            IntersectionForm2::Rank1(_) => 1,
            IntersectionForm2::Rank2(_) => 2,
        }
    }

    pub fn determinant(&self) -> i64 {
        match *self {
            IntersectionForm2::Trivial => 1,
            IntersectionForm2::Rank1(d) => d,
            IntersectionForm2::Rank2([[a, b], [c, d]]) => a * d - b * c,
        }
    }

    pub fn degenerate(&self) -> bool {
        self.determinant() == 0
    }

    pub fn signature(&self) -> i64 {
        match *self {
            IntersectionForm2::Trivial => 0,
            IntersectionForm2::Rank1(d) => d.signum(),
            IntersectionForm2::Rank2([[a, _], [_, d]]) => {
                let det = self.determinant();
                if det < 0 {
                    0
                } else if det > 0 {
                    2 * a.signum()
                } else {
                    (a + d).signum()
                }
            }
        }
    }

    /// Even iff every square `x.x` is even.
    pub fn is_even(&self) -> bool {
        match *self {
            IntersectionForm2::Trivial => true,
            IntersectionForm2::Rank1(d) => d % 2 == 0,
            IntersectionForm2::Rank2([[a, _], [_, d]]) => a % 2 == 0 && d % 2 == 0,
        }
    }

    /// Degenerate forms are reported as indefinite; see [`IntersectionForm2::degenerate`].
    pub fn definiteness(&self) -> Definiteness {
        if self.degenerate() || self.rank() == 0 {
            return Definiteness::Indefinite;
        }
        let s = self.signature();
        if s == self.rank() as i64 {
            Definiteness::Positive
        } else if s == -(self.rank() as i64) {
            Definiteness::Negative
        } else {
            Definiteness::Indefinite
        }
    }

    /// Isomorphism class name for unimodular indefinite rank-two forms: `H` or `<1>+<-1>`.
    pub fn unimodular_indefinite_class(&self) -> Option<&'static str> {
        if self.rank() != 2 || self.determinant() != -1 {
            return None;
        }
        Some(if self.is_even() { "H" } else { "<1>+<-1>" })
    }
}

impl fmt::Display for IntersectionForm2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntersectionForm2::Trivial => f.write_str("()"),
            IntersectionForm2::Rank1(d) => write!(f, "<{d}>"),
            IntersectionForm2::Rank2([[a, b], [c, d]]) => write!(f, "[[{a},{b}],[{c},{d}]]"),
        }
    }
}

pub fn intersection_form(s: &ZeroVertexShadow) -> IntersectionForm2 {
    match *s {
        ZeroVertexShadow::X1 { .. } => IntersectionForm2::Trivial,
        ZeroVertexShadow::X2 { n, r2 } => IntersectionForm2::Rank1(n + 2 * r2),
        ZeroVertexShadow::X3 { l, m, n } => IntersectionForm2::Rank2([[m + l, l], [l, n + l]]),
    }
}
