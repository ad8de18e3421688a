use serde::{Deserialize, Serialize};

use super::skeleton::{Dart, Skeleton};
use super::{validate, GleamAssignment, RegionKind, SimplePolyhedron};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "R_int")]
    pub r_int: usize,
    #[serde(rename = "R_bdry")]
    pub r_bdry: usize,
    pub chi: i64,
    pub is_special: bool,
}

pub(crate) fn require_valid(p: &SimplePolyhedron) -> Result<()> {
    let v = validate(p);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Invalid(v.join("; ")))
    }
}

/// Vertex and region counts and the Euler characteristic
/// `V - #segments + sum of region surface characteristics`.
pub fn stats(p: &SimplePolyhedron) -> Result<Stats> {
    require_valid(p)?;
    let r_int = p.regions.iter().filter(|r| r.kind == RegionKind::Internal).count();
    let r_bdry = p.regions.len() - r_int;
    let chi = p.vertices as i64 - p.segment_count() as i64
        + (0..p.regions.len()).map(|r| p.region_surface_chi(r)).sum::<i64>();
    let is_special = p.boundary_curves.is_empty() && p.regions.iter().all(|r| r.is_disk);
    Ok(Stats { v: p.vertices, e: p.edges.len(), r_int, r_bdry, chi, is_special })
}

pub(crate) fn z2_with(sk: &Skeleton, p: &SimplePolyhedron, region: usize) -> u8 {
    p.regions[region]
        .circuits
        .iter()
        .map(|c| {
            let ds: Vec<Dart> = c.iter().map(|q| Dart::new(q.edge, q.slot, q.forward)).collect();
            sk.circuit_z2(&ds)
        })
        .sum::<u8>()
        % 2
}

/// The Z/2 gleam of an internal region.
pub fn z2_gleam(p: &SimplePolyhedron, region: usize) -> Result<u8> {
    let r = p.regions.get(region).ok_or(Error::NoRegion(region))?;
    if r.kind != RegionKind::Internal {
        return Err(Error::BoundaryRegion(region));
    }
    let sk = Skeleton::from_polyhedron(p)?;
    Ok(z2_with(&sk, p, region))
}

/// Number of vertex corners met by the circuits of a region, with multiplicity.
pub fn v_count(p: &SimplePolyhedron, region: usize) -> usize {
    p.regions[region].circuits.iter().flatten().filter(|q| q.corner.is_some()).count()
}

/// True iff every internal gleam has the parity of its Z/2 gleam.
pub fn check_admissible(p: &SimplePolyhedron, g: &GleamAssignment) -> Result<bool> {
    require_valid(p)?;
    let sk = Skeleton::from_polyhedron(p)?;
    for r in p.internal_regions() {
        let h = g.get(r).ok_or(Error::MissingGleam(r))?;
        if h.rem_euclid(2) as u8 != z2_with(&sk, p, r) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn require_admissible(p: &SimplePolyhedron, g: &GleamAssignment) -> Result<()> {
    let sk = Skeleton::from_polyhedron(p)?;
    for r in p.internal_regions() {
        let h = g.get(r).ok_or(Error::MissingGleam(r))?;
        let z = z2_with(&sk, p, r);
        if h.rem_euclid(2) as u8 != z {
            return Err(Error::Inadmissible { region: r, half_units: h, z2: z });
        }
    }
    Ok(())
}
