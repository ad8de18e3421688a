//! Attaching disks or annuli along curves drawn on a polyhedron.
//!
//! A curve is either a cyclic list of transverse crossings with triple edges, or a null
//! curve inside one region. Each crossing becomes a true vertex with germs
//! 0 = edge behind, 1 = edge ahead, 2 = incoming arc, 3 = outgoing arc. Regions met by
//! arcs must be disks; each arc splits such a region in two.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::invariants::require_valid;
use super::skeleton::{assemble, slot_owner, Dart, RegionSpec, SkEdge, Skeleton};
use super::{GermRef, RegionKind, SimplePolyhedron};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub edge: usize,
    /// Slot whose sheet carries the curve into the edge.
    pub from_slot: u8,
    /// Slot whose sheet carries the curve away from the edge.
    pub to_slot: u8,
    /// Order key along the edge in its forward direction.
    pub position: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NewRegionKind {
    /// An internal disk region.
    Disk,
    /// A boundary region: an annulus with one free boundary circle.
    Annulus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub crossings: Vec<Crossing>,
    /// Host region of a null curve; ignored when there are crossings.
    #[serde(default)]
    pub region: Option<usize>,
    pub kind: NewRegionKind,
    #[serde(default)]
    pub label: Option<String>,
}

impl CurveSpec {
    pub fn null(region: usize, kind: NewRegionKind) -> Self {
        CurveSpec { crossings: Vec::new(), region: Some(region), kind, label: None }
    }

    pub fn through(crossings: Vec<Crossing>, kind: NewRegionKind) -> Self {
        CurveSpec { crossings, region: None, kind, label: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionOrigin {
    /// A piece of an old region; `main` pieces keep the old id.
    Piece { parent: usize, main: bool },
    /// The region attached along curve `i`.
    Curve(usize),
}

#[derive(Clone, Copy, Debug)]
enum NewEdge {
    Piece(usize),
    Arc { region: usize },
    Null,
}

fn part(x: u8, y: u8, s: u8, germ: u8) -> u8 {
    let z = 3 - x - y;
    if s == z {
        1 - germ
    } else if s == x {
        2
    } else {
        3
    }
}

fn cerr(msg: impl Into<String>) -> Error {
    Error::Curve(msg.into())
}

/// Attaches one new region per curve. Returns the new polyhedron and, per region, where
/// it came from. Old region ids are kept by their main pieces; other pieces, then inner
/// disks of null curves, then the attached regions follow in order.
pub fn attach_curves(p: &SimplePolyhedron, curves: &[CurveSpec]) -> Result<(SimplePolyhedron, Vec<RegionOrigin>)> {
    require_valid(p)?;
    let sk = Skeleton::from_polyhedron(p)?;
    let owner = slot_owner(p);
    let ne = p.edges.len();

    let mut arcs_in: BTreeMap<usize, usize> = BTreeMap::new();
    let mut null_hosts: BTreeSet<usize> = BTreeSet::new();
    let mut on_edge: BTreeMap<usize, Vec<(u32, usize, u8, u8)>> = BTreeMap::new();
    let mut vid = p.vertices;
    let mut first_vertex = Vec::with_capacity(curves.len());
    for (ci, c) in curves.iter().enumerate() {
        first_vertex.push(vid);
        if c.crossings.is_empty() {
            let r = c.region.ok_or_else(|| cerr(format!("null curve {ci} needs a host region")))?;
            if r >= p.regions.len() {
                return Err(Error::NoRegion(r));
            }
            null_hosts.insert(r);
            continue;
        }
        let k = c.crossings.len();
        for (i, x) in c.crossings.iter().enumerate() {
            if x.edge >= ne {
                return Err(Error::NoEdge(x.edge));
            }
            if x.from_slot > 2 || x.to_slot > 2 || x.from_slot == x.to_slot {
                return Err(cerr(format!("curve {ci} crossing {i}: bad slots")));
            }
            let nx = &c.crossings[(i + 1) % k];
            let r = owner[&(x.edge, x.to_slot)].0;
            if nx.edge >= ne || nx.from_slot > 2 || owner[&(nx.edge, nx.from_slot)].0 != r {
                return Err(cerr(format!("curve {ci}: arc after crossing {i} changes region")));
            }
            *arcs_in.entry(r).or_default() += 1;
            on_edge.entry(x.edge).or_default().push((x.position, vid, x.from_slot, x.to_slot));
            vid += 1;
        }
    }
    for (&r, _) in &arcs_in {
        if !p.regions[r].is_disk {
            return Err(cerr(format!("region {r} is crossed by arcs but is not a disk")));
        }
        if null_hosts.contains(&r) {
            return Err(cerr(format!("region {r} hosts a null curve and is crossed by arcs")));
        }
    }
    for pts in on_edge.values_mut() {
        pts.sort_unstable();
        if pts.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(cerr("two crossings share a position"));
        }
    }

    let g = |vertex: usize, germ: u8| GermRef { vertex, germ };
    let mut edges: Vec<SkEdge> = Vec::new();
    let mut info: Vec<NewEdge> = Vec::new();
    let mut first_piece = vec![0usize; ne];
    for (e, old) in sk.edges.iter().enumerate() {
        first_piece[e] = edges.len();
        let pts = on_edge.get(&e).map(|v| v.as_slice()).unwrap_or(&[]);
        let parts = |w: &(u32, usize, u8, u8), germ: u8| -> [u8; 3] {
            [part(w.2, w.3, 0, germ), part(w.2, w.3, 1, germ), part(w.2, w.3, 2, germ)]
        };
        match old {
            _ if pts.is_empty() => edges.push(old.clone()),
            SkEdge::Seg { start, end, pa, pb } => {
                let (mut a, mut a_p) = (*start, *pa);
                for w in pts {
                    edges.push(SkEdge::Seg { start: a, end: g(w.1, 0), pa: a_p, pb: parts(w, 0) });
                    a = g(w.1, 1);
                    a_p = parts(w, 1);
                }
                edges.push(SkEdge::Seg { start: a, end: *end, pa: a_p, pb: *pb });
            }
            SkEdge::Circ { sigma } => {
                let m = pts.len();
                for i in 0..m - 1 {
                    edges.push(SkEdge::Seg {
                        start: g(pts[i].1, 1),
                        end: g(pts[i + 1].1, 0),
                        pa: parts(&pts[i], 1),
                        pb: parts(&pts[i + 1], 0),
                    });
                }
                let p0 = parts(&pts[0], 0);
                edges.push(SkEdge::Seg {
                    start: g(pts[m - 1].1, 1),
                    end: g(pts[0].1, 0),
                    pa: parts(&pts[m - 1], 1),
                    pb: [p0[sigma[0] as usize], p0[sigma[1] as usize], p0[sigma[2] as usize]],
                });
            }
        }
        while info.len() < edges.len() {
            info.push(NewEdge::Piece(e));
        }
    }
    let mut curve_edge = vec![0usize; curves.len()];
    for (ci, c) in curves.iter().enumerate() {
        curve_edge[ci] = edges.len();
        if c.crossings.is_empty() {
            edges.push(SkEdge::Circ { sigma: [0, 1, 2] });
            info.push(NewEdge::Null);
            continue;
        }
        let k = c.crossings.len();
        for i in 0..k {
            let x = &c.crossings[i];
            let nx = &c.crossings[(i + 1) % k];
            let (region, d1) = owner[&(x.edge, x.to_slot)];
            let d2 = owner[&(nx.edge, nx.from_slot)].1;
            let p1 = if d1 { 1 } else { 0 };
            let q1 = if d2 { 0 } else { 1 };
            edges.push(SkEdge::Seg {
                start: g(first_vertex[ci] + i, 3),
                end: g(first_vertex[ci] + (i + 1) % k, 2),
                pa: [2, p1, 1 - p1],
                pb: [3, q1, 1 - q1],
            });
            info.push(NewEdge::Arc { region });
        }
    }
    let nsk = Skeleton::new(vid, edges)?;
    first_piece.push(curve_edge.first().copied().unwrap_or(nsk.edges.len()));
    let piece_darts = |q: &super::Pass| -> Vec<Dart> {
        let pieces = first_piece[q.edge]..first_piece[q.edge + 1];
        if q.forward {
            pieces.map(|e| Dart::new(e, q.slot, true)).collect()
        } else {
            pieces.rev().map(|e| Dart::new(e, q.slot, false)).collect()
        }
    };

    let mut seen = vec![[false; 3]; nsk.edges.len()];
    let belongs = |d: Dart, r: usize| -> bool {
        match info[d.edge] {
            NewEdge::Piece(e) => owner[&(e, d.slot)].0 == r,
            NewEdge::Arc { region } => d.slot != 0 && region == r,
            NewEdge::Null => false,
        }
    };
    let take = |c: &[Dart], seen: &mut Vec<[bool; 3]>| -> Result<()> {
        for d in c {
            if seen[d.edge][d.slot as usize] {
                return Err(cerr("curves are not in general position"));
            }
            seen[d.edge][d.slot as usize] = true;
        }
        Ok(())
    };

    let mut specs: Vec<RegionSpec> = Vec::new();
    let mut origins: Vec<RegionOrigin> = Vec::new();
    let mut extra: Vec<(usize, Vec<Dart>)> = Vec::new();
    for (ri, r) in p.regions.iter().enumerate() {
        let mut circuits = Vec::new();
        for c in &r.circuits {
            for nd in c.iter().flat_map(|q| piece_darts(q)) {
                if seen[nd.edge][nd.slot as usize] {
                    if arcs_in.contains_key(&ri) {
                        continue;
                    }
                    return Err(cerr(format!("region {ri}: circuits merged")));
                }
                let t = nsk.trace(nd);
                if t.iter().any(|&d| !belongs(d, ri)) {
                    return Err(cerr(format!("region {ri}: traced circuit leaves the region")));
                }
                take(&t, &mut seen)?;
                circuits.push(t);
                if !arcs_in.contains_key(&ri) {
                    break;
                }
            }
        }
        if let Some(&k) = arcs_in.get(&ri) {
            if circuits.len() != k + 1 {
                return Err(cerr(format!("arcs in region {ri} cross or fail to split it")));
            }
            let mut it = circuits.into_iter();
            let main = it.next().unwrap();
            extra.extend(it.map(|c| (ri, c)));
            let mut spec = RegionSpec::disk(main);
            spec.kind = r.kind;
            spec.label = r.label.clone();
            specs.push(spec);
        } else {
            for (ci, c) in curves.iter().enumerate() {
                if c.crossings.is_empty() && c.region == Some(ri) {
                    let d = Dart::new(curve_edge[ci], 0, true);
                    take(&[d], &mut seen)?;
                    circuits.push(vec![d]);
                }
            }
            specs.push(RegionSpec {
                kind: r.kind,
                circuits,
                genus: r.genus,
                orientable: r.orientable,
                label: r.label.clone(),
                boundary_circles: p.boundary_count(ri),
            });
        }
        origins.push(RegionOrigin::Piece { parent: ri, main: true });
    }
    for (parent, c) in extra {
        specs.push(RegionSpec::disk(c));
        origins.push(RegionOrigin::Piece { parent, main: false });
    }
    for (ci, c) in curves.iter().enumerate() {
        if c.crossings.is_empty() {
            let d = Dart::new(curve_edge[ci], 1, false);
            take(&[d], &mut seen)?;
            specs.push(RegionSpec::disk(vec![d]));
            origins.push(RegionOrigin::Piece { parent: c.region.unwrap(), main: false });
        }
    }
    for (ci, c) in curves.iter().enumerate() {
        let circuit = if c.crossings.is_empty() {
            vec![Dart::new(curve_edge[ci], 2, true)]
        } else {
            let t = nsk.trace(Dart::new(curve_edge[ci], 0, true));
            if t.len() != c.crossings.len() || t.iter().any(|d| d.slot != 0) {
                return Err(cerr(format!("curve {ci} does not close up")));
            }
            t
        };
        take(&circuit, &mut seen)?;
        let mut spec = RegionSpec::disk(circuit);
        spec.label = c.label.clone();
        if c.kind == NewRegionKind::Annulus {
            spec.kind = RegionKind::Boundary;
            spec.boundary_circles = 1;
        }
        specs.push(spec);
        origins.push(RegionOrigin::Curve(ci));
    }
    if seen.iter().flatten().any(|&s| !s) {
        return Err(cerr("some sheet belongs to no region"));
    }
    Ok((assemble(&nsk, specs), origins))
}
