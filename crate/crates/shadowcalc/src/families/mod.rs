//! The cork family `C_{n,k}`, the auxiliary `M_{n,k}` and the pair `W_{n,k}, W'_{n,k}`:
//! framing coefficients, complexity bounds, cork arithmetic and explicit shadows.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ceil_sqrt_4pi2n;

mod shadows;

pub use shadows::{build_shadow, build_shadow_file, w_prime_site};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    pub n: u32,
    pub k: u32,
}

impl FamilyParams {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be a positive integer".into()));
        }
        Ok(FamilyParams { n, k })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyData {
    pub m: Vec<i64>,
    pub l: Vec<i64>,
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
}

impl FamilyData {
    pub fn l_sum(&self) -> i64 {
        self.l.iter().sum()
    }
}

fn ceiling(n: u32, c: (i64, i64), offset: (i64, i64)) -> Result<i64> {
    let c = BigRational::new(BigInt::from(c.0), BigInt::from(c.1));
    let off = BigRational::new(BigInt::from(offset.0), BigInt::from(offset.1));
    ceil_sqrt_4pi2n(n as u64, &c, &off)?
        .to_i64()
        .ok_or(Error::Overflow("framing coefficient"))
}

/// `A = ceil(sqrt(4 pi^2 n - 1))`, `B = ceil(sqrt(4 pi^2 n - 1/4))`.
pub fn a_b(n: u32) -> Result<(i64, i64)> {
    Ok((ceiling(n, (1, 1), (0, 1))?, ceiling(n, (1, 4), (0, 1))?))
}

pub fn coefficients(p: FamilyParams) -> Result<FamilyData> {
    let n = p.n as usize;
    let (a, b) = a_b(p.n)?;
    let base = -ceiling(p.n, (1, 1), (1, 2))?;
    let mut m = vec![base; n];
    m[0] -= p.k as i64;
    let l = (1..=n + 1)
        .map(|j| {
            if j == 1 {
                b
            } else if n % 2 == 0 && j == n {
                2 * b - 1
            } else if n % 2 == 1 && j == n + 1 {
                b + 1
            } else if n % 2 == 0 && j == n + 1 {
                b
            } else {
                a
            }
        })
        .collect();
    Ok(FamilyData { m, l, a, b })
}

/// The complexity upper bound `D(n)`, in its odd/even form.
#[allow(non_snake_case)]
pub fn D(n: u32) -> Result<i64> {
    if n == 0 {
        return Err(Error::Domain("n must be a positive integer".into()));
    }
    let (a, b) = a_b(n)?;
    let n = n as i64;
    Ok(if n % 2 == 1 { (n - 1) * a + n + 2 * b } else { (n - 2) * a + n + 4 * b - 2 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub cork_upper: i64,
    pub pair_upper: i64,
    pub lower: i64,
}

pub fn bounds(p: FamilyParams) -> Result<Bounds> {
    let s = coefficients(p)?.l_sum();
    let n = p.n as i64;
    let out = Bounds { cork_upper: s + n - 3, pair_upper: s + n - 1, lower: 2 * n };
    debug_assert_eq!(Some(out.pair_upper), D(p.n).ok());
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorkChecks {
    pub linking_number: i64,
    pub tb_number: i64,
    pub is_mazur_candidate: bool,
}

pub fn cork_checks(p: FamilyParams) -> Result<CorkChecks> {
    let d = coefficients(p)?;
    let linking_number = d.l.iter().enumerate().map(|(i, &l)| if i % 2 == 0 { -l } else { l }).sum();
    let tb_number = d.l_sum() - 1;
    Ok(CorkChecks {
        linking_number,
        tb_number,
        is_mazur_candidate: i64::abs(linking_number) == 1 && tb_number >= 1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stage {
    /// `P'`: shadow of `C_{n,k}` before collapsing.
    Pp,
    /// `P''`: special shadow of `C_{n,k}`.
    Ppp,
    /// `Q'`: shadow of `M_{n,k}` before collapsing.
    Qp,
    /// `Q''`: special shadow of `M_{n,k}`.
    Qpp,
    /// Special shadow of `W'_{n,k}`: `P''` with a bubble after the (0→2)-move.
    Wpp,
    /// `Q''` with `gl(R_1) = 1 - sum l_j`.
    Wvar,
}

impl Stage {
    pub const ALL: [Stage; 6] = [Stage::Pp, Stage::Ppp, Stage::Qp, Stage::Qpp, Stage::Wpp, Stage::Wvar];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Pp => "Pp",
            Stage::Ppp => "Ppp",
            Stage::Qp => "Qp",
            Stage::Qpp => "Qpp",
            Stage::Wpp => "Wpp",
            Stage::Wvar => "Wvar",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Stage::ALL
            .into_iter()
            .find(|st| st.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown stage '{s}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(n: u32, k: u32) -> FamilyParams {
        FamilyParams::new(n, k).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let d = coefficients(fp(1, 0)).unwrap();
        assert_eq!((d.m.clone(), d.l.clone()), (vec![-7], vec![7, 8]));
        let d = coefficients(fp(2, 0)).unwrap();
        assert_eq!((d.m.clone(), d.l.clone()), (vec![-10, -10], vec![9, 17, 9]));
        let d = coefficients(fp(1, 3)).unwrap();
        assert_eq!((d.m.clone(), d.l.clone()), (vec![-10], vec![7, 8]));
    }

    #[test]
    fn d_values() {
        assert_eq!([D(1).unwrap(), D(2).unwrap(), D(3).unwrap()], [15, 36, 47]);
        assert!(D(0).is_err());
    }

    #[test]
    fn bounds_and_cork() {
        assert_eq!(bounds(fp(1, 0)).unwrap(), Bounds { cork_upper: 13, pair_upper: 15, lower: 2 });
        assert_eq!(bounds(fp(2, 0)).unwrap(), Bounds { cork_upper: 34, pair_upper: 36, lower: 4 });
        let c = cork_checks(fp(1, 0)).unwrap();
        assert_eq!((c.linking_number, c.tb_number, c.is_mazur_candidate), (1, 14, true));
        let c = cork_checks(fp(2, 0)).unwrap();
        assert_eq!((c.linking_number, c.tb_number), (-1, 34));
        let c = cork_checks(fp(3, 0)).unwrap();
        assert_eq!((c.linking_number, c.tb_number), (1, 44));
    }

    #[test]
    fn stage_names() {
        for s in Stage::ALL {
            assert_eq!(s.name().parse::<Stage>().unwrap(), s);
        }
        assert!("X".parse::<Stage>().is_err());
    }
}
