//! Laurent polynomials, Alexander polynomials of genus-one Seifert matrices and the
//! Casson surgery formula for the family boundaries.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{coefficients, FamilyParams};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentPolynomial(BTreeMap<i32, i64>);

impl LaurentPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: &[(i32, i64)]) -> Self {
        let mut p = Self::new();
        for &(e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i32, c: i64) {
        let v = self.0.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&e);
        }
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }

    pub fn eval_at_one(&self) -> i64 {
        self.0.values().sum()
    }

    /// Second derivative at `t = 1`: `sum c_e e (e - 1)`.
    pub fn second_derivative_at_one(&self) -> i64 {
        self.terms().map(|(e, c)| c * e as i64 * (e as i64 - 1)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(e, c)| self.coeff(-e) == c)
    }

    fn shifted(&self, by: i32) -> Self {
        LaurentPolynomial(self.0.iter().map(|(&e, &c)| (e + by, c)).collect())
    }

    fn negated(&self) -> Self {
        LaurentPolynomial(self.0.iter().map(|(&e, &c)| (e, -c)).collect())
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            match (i, c < 0) {
                (0, _) => write!(f, "{c}*t^{e}")?,
                (_, true) => write!(f, " - {}*t^{e}", -c)?,
                (_, false) => write!(f, " + {c}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// `det(S - t S^T)` for a 2x2 Seifert matrix, normalized symmetric with value 1 at `t = 1`.
pub fn alexander_from_seifert(s: [[i64; 2]; 2]) -> Result<LaurentPolynomial> {
    let [[a, b], [c, d]] = s;
    if (b - c).abs() != 1 {
        return Err(Error::Domain(format!("det(S - S^T) = {} is not ±1", (b - c) * (b - c))));
    }
    // (a - ta)(d - td) - (b - tc)(c - tb)
    let mut p = LaurentPolynomial::new();
    p.add_term(0, a * d - b * c);
    p.add_term(1, -2 * a * d + b * b + c * c);
    p.add_term(2, a * d - c * b);
    let low = p.terms().next().map(|(e, _)| e).unwrap_or(0);
    let high = p.terms().last().map(|(e, _)| e).unwrap_or(0);
    let mut p = p.shifted(-(low + high) / 2);
    if p.eval_at_one() < 0 {
        p = p.negated();
    }
    debug_assert!(p.is_symmetric() && p.eval_at_one() == 1);
    Ok(p)
}

/// Seifert matrix of the surgery knot in the boundary of the cork with parameter `n`.
pub fn seifert_matrix(n: u32, l1: i64) -> [[i64; 2]; 2] {
    let s = if n % 2 == 1 { 1 } else { -1 };
    [[0, s * l1], [s * l1 + 1, 0]]
}

fn l1(n: u32) -> Result<i64> {
    Ok(coefficients(FamilyParams::new(n, 0)?)?.l[0])
}

/// `-d (l_1^2 - (-1)^n l_1)` with `d = k' - k`.
pub fn casson_difference_closed(n: u32, k: u32, k2: u32) -> Result<i64> {
    let l1 = l1(n)?;
    let d = k2 as i64 - k as i64;
    let sign = if n % 2 == 0 { 1 } else { -1 };
    Ok(-d * (l1 * l1 - sign * l1))
}

/// `(d / 2) Δ''(1)` from the Alexander polynomial of the surgery knot.
pub fn casson_difference_surgery(n: u32, k: u32, k2: u32) -> Result<i64> {
    let delta = alexander_from_seifert(seifert_matrix(n, l1(n)?))?;
    let d = k2 as i64 - k as i64;
    let dd = delta.second_derivative_at_one();
    if (d * dd) % 2 != 0 {
        return Err(Error::Invalid("odd surgery term".into()));
    }
    Ok(d * dd / 2)
}

/// `λ(∂C_{n,k'}) - λ(∂C_{n,k})`, computed both ways and cross-checked.
pub fn casson_difference(n: u32, k: u32, k2: u32) -> Result<i64> {
    let a = casson_difference_closed(n, k, k2)?;
    let b = casson_difference_surgery(n, k, k2)?;
    if a != b {
        return Err(Error::Invalid(format!("Casson routes disagree: {a} vs {b}")));
    }
    Ok(a)
}
