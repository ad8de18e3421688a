//! Combinatorial simple polyhedra.
//!
//! A true vertex has four germs `0..4`; the six corners are the unordered germ pairs.
//! A triple edge carries three sheet slots `0..3`. A region circuit is a cyclic list of
//! passes; a pass on a segment names the germ it turns into at the arrival vertex.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

mod attach;
mod chain;
mod homology;
mod invariants;
mod io;
mod moves;
pub(crate) mod skeleton;
mod snf;
mod validate;
mod zero;

pub use attach::{attach_curves, Crossing, CurveSpec, NewRegionKind, RegionOrigin};
pub use chain::{chain_polyhedron, chain_skeleton_choices, ChainPattern};
pub use homology::{homology, Homology};
pub use invariants::{check_admissible, stats, v_count, z2_gleam, Stats};
pub use io::{emit_text, from_json, parse_text, to_json, PolyFile};
pub use moves::{add_bubble, collapse_all, collapse_boundary_region, zero_two_move, MoveSite};
pub use snf::smith_diagonal;
pub use validate::validate;
pub use zero::{x1, x2, x3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GermRef {
    pub vertex: usize,
    pub germ: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Edge {
    Segment { start: GermRef, end: GermRef },
    Circle,
}

impl Edge {
    pub fn is_circle(&self) -> bool {
        matches!(self, Edge::Circle)
    }
}

/// One traversal of a sheet slot of an edge by a region circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pass {
    pub edge: usize,
    pub forward: bool,
    pub slot: u8,
    /// Germ turned into at the arrival vertex; `None` on triple circles.
    pub corner: Option<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionKind {
    Internal,
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub kind: RegionKind,
    pub circuits: Vec<Vec<Pass>>,
    pub is_disk: bool,
    pub genus: u32,
    pub orientable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A boundary circle of the polyhedron lying in the closure of one region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    pub region: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplePolyhedron {
    pub vertices: usize,
    pub edges: Vec<Edge>,
    pub regions: Vec<Region>,
    #[serde(default)]
    pub boundary_curves: Vec<BoundaryCurve>,
}

impl SimplePolyhedron {
    pub fn boundary_count(&self, region: usize) -> usize {
        self.boundary_curves.iter().filter(|b| b.region == region).count()
    }

    /// Euler characteristic of the compact surface underlying a region.
    pub fn region_surface_chi(&self, region: usize) -> i64 {
        let r = &self.regions[region];
        let h = (r.circuits.len() + self.boundary_count(region)) as i64;
        let g = r.genus as i64;
        if r.orientable {
            2 - 2 * g - h
        } else {
            2 - g - h
        }
    }

    pub fn segment_count(&self) -> usize {
        self.edges.iter().filter(|e| !e.is_circle()).count()
    }

    pub fn internal_regions(&self) -> impl Iterator<Item = usize> + '_ {
        self.regions
            .iter()
            .enumerate()
            .filter(|(_, r)| r.kind == RegionKind::Internal)
            .map(|(i, _)| i)
    }

    pub fn region_by_label(&self, label: &str) -> Option<usize> {
        self.regions.iter().position(|r| r.label.as_deref() == Some(label))
    }
}

/// Gleams in half-units, keyed by region id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GleamAssignment(pub BTreeMap<usize, i64>);

impl GleamAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, region: usize) -> Option<i64> {
        self.0.get(&region).copied()
    }

    pub fn set(&mut self, region: usize, half_units: i64) {
        self.0.insert(region, half_units);
    }

    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }

    /// Sorted multiset of half-unit values.
    pub fn multiset(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.0.values().copied().collect();
        v.sort_unstable();
        v
    }
}

pub(crate) fn others(g: u8) -> [u8; 3] {
    let mut out = [0u8; 3];
    let mut k = 0;
    for h in 0..4u8 {
        if h != g {
            out[k] = h;
            k += 1;
        }
    }
    out
}
