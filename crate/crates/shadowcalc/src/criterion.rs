//! The Ishikawa–Koda exactness criterion for special shadows and the Costantino–Thurston
//! lower bound on shadow complexity from the Gromov norm.
//!
//! A region `R` with gleam `gl` and `v(R)` corner claims has slope length
//! `sqrt(4 gl^2 + v(R)^2)`. With `h = 2 gl` in half-units this is `sqrt(h^2 + v^2)`, an
//! integer under the root, compared against `(2 pi sqrt(2V))^2 = 8 pi^2 V`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{exceeds_multiple_of_pi_sq, format_sig};
use crate::poly::{stats, v_count, GleamAssignment, SimplePolyhedron};

/// Volume of the regular ideal tetrahedron.
pub const V_TET: f64 = 1.0149416064096536;
/// Volume of the regular ideal octahedron.
pub const V_OCT: f64 = 3.663862376708876;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionRow {
    pub region: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// Gleam in half-units.
    pub gleam_half_units: i64,
    pub v: usize,
    /// `4 gl^2 + v^2`, exact.
    pub slope_length_sq: i64,
    pub slope_length: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    #[serde(rename = "V")]
    pub v: usize,
    /// `2 pi sqrt(2V)`, for display; decisions use the exact comparison.
    pub threshold: f64,
    pub rows: Vec<CriterionRow>,
    pub verdict: bool,
}

impl CriterionReport {
    /// When the verdict holds, the special shadow complexity of the boundary equals `V`.
    pub fn complexity(&self) -> Option<usize> {
        self.verdict.then_some(self.v)
    }

    pub fn min_row(&self) -> Option<&CriterionRow> {
        self.rows.iter().min_by_key(|r| (r.slope_length_sq, r.region))
    }

    /// Aligned text table; reals at 6 significant digits.
    pub fn to_table(&self) -> String {
        let mut out = format!("V = {}\nthreshold = {}\n", self.v, format_sig(self.threshold, 6));
        let name = |r: &CriterionRow| r.label.clone().unwrap_or_else(|| format!("#{}", r.region));
        let w = self.rows.iter().map(|r| name(r).len()).chain([6]).max().unwrap_or(6);
        out.push_str(&format!("{:<w$}  {:>8}  {:>4}  {:>12}  pass\n", "region", "gleam", "v", "slope"));
        for r in &self.rows {
            out.push_str(&format!(
                "{:<w$}  {:>8}  {:>4}  {:>12}  {}\n",
                name(r),
                half_units_str(r.gleam_half_units),
                r.v,
                format_sig(r.slope_length, 6),
                if r.pass { "yes" } else { "no" }
            ));
        }
        if let Some(m) = self.min_row() {
            out.push_str(&format!("min slope = {} ({})\n", format_sig(m.slope_length, 6), name(m)));
        }
        out.push_str(&format!("verdict = {}\n", self.verdict));
        if let Some(c) = self.complexity() {
            out.push_str(&format!("special shadow complexity = {c}\n"));
        }
        out
    }
}

/// Half-units as a gleam: `-13` prints as `-13/2`, `-30` as `-15`.
pub fn half_units_str(h: i64) -> String {
    if h % 2 == 0 {
        format!("{}", h / 2)
    } else {
        format!("{h}/2")
    }
}

pub fn ik_check(p: &SimplePolyhedron, g: &GleamAssignment) -> Result<CriterionReport> {
    let s = stats(p)?;
    if !s.is_special {
        return Err(Error::NotSpecial);
    }
    let mut rows = Vec::new();
    for r in p.internal_regions() {
        let h = g.get(r).ok_or(Error::MissingGleam(r))?;
        let v = v_count(p, r);
        let sq = h
            .checked_mul(h)
            .and_then(|x| x.checked_add((v * v) as i64))
            .ok_or(Error::Overflow("slope length"))?;
        let pass = exceeds_multiple_of_pi_sq(&BigInt::from(sq), 8 * s.v as u64)?;
        rows.push(CriterionRow {
            region: r,
            label: p.regions[r].label.clone(),
            gleam_half_units: h,
            v,
            slope_length_sq: sq,
            slope_length: (sq as f64).sqrt(),
            pass,
        });
    }
    let verdict = rows.iter().all(|r| r.pass);
    Ok(CriterionReport {
        v: s.v,
        threshold: 2.0 * std::f64::consts::PI * (2.0 * s.v as f64).sqrt(),
        rows,
        verdict,
    })
}

/// `v_tet / (2 v_oct) * norm`; callers ceil when an integer bound is wanted.
pub fn ct_lower_bound(gromov_norm: f64) -> Result<f64> {
    if gromov_norm.is_nan() || gromov_norm < 0.0 {
        return Err(Error::Domain(format!("Gromov norm must be nonnegative, got {gromov_norm}")));
    }
    Ok(V_TET / (2.0 * V_OCT) * gromov_norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_shadow, FamilyParams, Stage};
    use crate::poly::x1;

    #[test]
    fn q_double_prime_one_zero() {
        let (p, g) = build_shadow(FamilyParams::new(1, 0).unwrap(), Stage::Qpp).unwrap();
        let rep = ik_check(&p, &g).unwrap();
        assert!((rep.threshold - 12.566370614359172).abs() < 1e-12);
        let m = rep.min_row().unwrap();
        assert_eq!((m.label.as_deref(), m.slope_length_sq), (Some("R1_1"), 173));
        assert!(rep.verdict);
        assert_eq!(rep.complexity(), Some(2));
        let t = rep.to_table();
        assert!(t.contains("threshold = 12.5664"));
        assert!(t.contains("min slope = 13.1529 (R1_1)"));
    }

    #[test]
    fn overriding_a_gleam_fails() {
        let (p, mut g) = build_shadow(FamilyParams::new(1, 0).unwrap(), Stage::Qpp).unwrap();
        let r = p.region_by_label("R1_1").unwrap();
        g.set(r, 0);
        let rep = ik_check(&p, &g).unwrap();
        let row = rep.rows.iter().find(|x| x.region == r).unwrap();
        assert_eq!((row.slope_length_sq, row.slope_length), (4, 2.0));
        assert!(!row.pass);
        assert!(!rep.verdict);
    }

    #[test]
    fn rejects_non_special() {
        let (p, g) = build_shadow(FamilyParams::new(1, 0).unwrap(), Stage::Qp).unwrap();
        assert_eq!(ik_check(&p, &g), Err(Error::NotSpecial));
        let (p, _) = build_shadow(FamilyParams::new(1, 0).unwrap(), Stage::Qpp).unwrap();
        assert!(matches!(ik_check(&p, &GleamAssignment::new()), Err(Error::MissingGleam(_))));
    }

    #[test]
    fn zero_vertex_threshold() {
        let p = x1();
        let mut g = GleamAssignment::new();
        g.set(0, 2);
        let rep = ik_check(&p, &g).unwrap();
        assert_eq!(rep.threshold, 0.0);
        assert!(rep.verdict);
    }

    #[test]
    fn ct_bound() {
        assert_eq!(ct_lower_bound(0.0).unwrap(), 0.0);
        assert!((ct_lower_bound(2.0 * V_OCT / V_TET).unwrap() - 1.0).abs() < 1e-15);
        let oracle = 1.0149416064 / (2.0 * 3.6638623767) * 10.0;
        assert!((ct_lower_bound(10.0).unwrap() - oracle).abs() < 1e-9);
        assert_eq!(format!("{:.4}", ct_lower_bound(10.0).unwrap()), "1.3851");
        assert!(ct_lower_bound(-1.0).is_err());
    }
}
