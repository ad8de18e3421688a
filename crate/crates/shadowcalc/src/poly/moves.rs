//! Collapses along boundary regions, bubbles and the (0→2)-move.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::attach::{attach_curves, CurveSpec, NewRegionKind};
use super::invariants::{require_admissible, require_valid, z2_with};
use super::skeleton::{assemble, region_darts, reverse_circuit, slot_owner, Dart, RegionSpec, SkEdge, Skeleton};
use super::{others, GermRef, GleamAssignment, RegionKind, SimplePolyhedron};
use crate::error::{Error, Result};

struct ParityUnion {
    parent: Vec<usize>,
    flip: Vec<bool>,
    bad: Vec<bool>,
}

impl ParityUnion {
    fn new(n: usize) -> Self {
        ParityUnion { parent: (0..n).collect(), flip: vec![false; n], bad: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (r, f) = self.find(self.parent[x]);
        self.parent[x] = r;
        self.flip[x] ^= f;
        (r, self.flip[x])
    }

    /// Records `flip(a) ^ flip(b) == rel`.
    fn union(&mut self, a: usize, b: usize, rel: bool) {
        let (ra, fa) = self.find(a);
        let (rb, fb) = self.find(b);
        if ra == rb {
            if fa ^ fb != rel {
                self.bad[ra] = true;
            }
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        self.flip[hi] = fa ^ fb ^ rel;
        self.bad[lo] |= self.bad[hi];
    }
}

fn merged_label(p: &SimplePolyhedron, members: &[usize]) -> Option<String> {
    let labels: Vec<&str> = members.iter().filter_map(|&m| p.regions[m].label.as_deref()).collect();
    match labels.as_slice() {
        [] => None,
        [one] if members.len() == 1 => Some(one.to_string()),
        _ => {
            let stem = |l: &str| l.split('.').next().unwrap_or(l).to_string();
            let first = stem(labels[0]);
            if labels.iter().all(|l| stem(l) == first) {
                Some(first)
            } else {
                None
            }
        }
    }
}

fn partners(e: &SkEdge, at_start: bool) -> [u8; 3] {
    match e {
        SkEdge::Seg { pa, pb, .. } => {
            if at_start {
                *pa
            } else {
                *pb
            }
        }
        SkEdge::Circ { .. } => unreachable!("circles have no ends"),
    }
}

fn ends(e: &SkEdge) -> (GermRef, GermRef) {
    match e {
        SkEdge::Seg { start, end, .. } => (*start, *end),
        SkEdge::Circ { .. } => unreachable!("circles have no ends"),
    }
}

struct Chain {
    /// (old edge, traversed forward, chain slot -> old slot)
    pieces: Vec<(usize, bool, [u8; 3])>,
    edge: SkEdge,
}

/// Removes a boundary annulus whose attaching circuit meets each triple edge and each
/// true vertex at most once, together with those edges and vertices.
pub fn collapse_boundary_region(
    p: &SimplePolyhedron,
    g: &GleamAssignment,
    region: usize,
) -> Result<(SimplePolyhedron, GleamAssignment)> {
    require_valid(p)?;
    let b = p.regions.get(region).ok_or(Error::NoRegion(region))?;
    if b.kind != RegionKind::Boundary {
        return Err(Error::NotBoundary(region));
    }
    if b.circuits.len() != 1 || p.boundary_count(region) != 1 || b.genus != 0 || !b.orientable {
        return Err(Error::NoFreeFace(format!("region {region} is not an annulus on one boundary circle")));
    }
    let sk = Skeleton::from_polyhedron(p)?;
    let owner = slot_owner(p);
    let circuit = &region_darts(p)[region][0];

    let ne = sk.edges.len();
    let mut dissolved = vec![false; ne];
    let mut removed: BTreeMap<usize, (u8, u8)> = BTreeMap::new();
    for &d in circuit {
        if dissolved[d.edge] {
            return Err(Error::NoFreeFace(format!("region {region} meets edge {} twice", d.edge)));
        }
        dissolved[d.edge] = true;
        if let Some((gg, t)) = sk.arrival(d) {
            if removed.insert(gg.vertex, (gg.germ, t)).is_some() {
                return Err(Error::NoFreeFace(format!("region {region} meets vertex {} twice", gg.vertex)));
            }
        }
    }

    let walk = |e0: usize, fwd0: bool| -> Chain {
        let (mut e, mut fwd, mut cur) = (e0, fwd0, [0u8, 1, 2]);
        let (s0, t0) = ends(&sk.edges[e0]);
        let start = if fwd0 { s0 } else { t0 };
        let pa = partners(&sk.edges[e0], fwd0);
        let mut pieces = Vec::new();
        loop {
            pieces.push((e, fwd, cur));
            let (s, t) = ends(&sk.edges[e]);
            let arr = if fwd { t } else { s };
            let arr_p = partners(&sk.edges[e], !fwd);
            let Some(&(a, bb)) = removed.get(&arr.vertex) else {
                let pb = [arr_p[cur[0] as usize], arr_p[cur[1] as usize], arr_p[cur[2] as usize]];
                return Chain { pieces, edge: SkEdge::Seg { start, end: arr, pa, pb } };
            };
            let g2 = others(arr.germ).into_iter().find(|&x| x != a && x != bb).expect("fourth germ");
            let nxt = GermRef { vertex: arr.vertex, germ: g2 };
            let (f, is_start) = sk.edge_at(nxt);
            let fp = partners(&sk.edges[f], is_start);
            let mut ncur = [0u8; 3];
            for s in 0..3 {
                let q = arr_p[cur[s] as usize];
                let target = if q == a || q == bb { q } else { arr.germ };
                ncur[s] = fp.iter().position(|&x| x == target).expect("partner") as u8;
            }
            e = f;
            fwd = is_start;
            cur = ncur;
            if e == e0 && fwd == fwd0 {
                return Chain { pieces, edge: SkEdge::Circ { sigma: cur } };
            }
        }
    };

    let mut used = vec![false; ne];
    let mut chains: Vec<Chain> = Vec::new();
    for pass in 0..2 {
        for e in 0..ne {
            if dissolved[e] || used[e] {
                continue;
            }
            let ch = match &sk.edges[e] {
                SkEdge::Circ { sigma } => Chain { pieces: vec![(e, true, [0, 1, 2])], edge: SkEdge::Circ { sigma: *sigma } },
                SkEdge::Seg { start, end, .. } => {
                    if !removed.contains_key(&start.vertex) {
                        walk(e, true)
                    } else if !removed.contains_key(&end.vertex) {
                        walk(e, false)
                    } else if pass == 1 {
                        walk(e, true)
                    } else {
                        continue;
                    }
                }
            };
            for &(x, _, _) in &ch.pieces {
                used[x] = true;
            }
            chains.push(ch);
        }
    }
    chains.sort_by_key(|c| c.pieces.iter().map(|x| x.0).min());

    let vmap: BTreeMap<usize, usize> =
        (0..p.vertices).filter(|v| !removed.contains_key(v)).enumerate().map(|(i, v)| (v, i)).collect();
    let remap = |gr: GermRef| GermRef { vertex: vmap[&gr.vertex], germ: gr.germ };
    let edges: Vec<SkEdge> = chains
        .iter()
        .map(|c| match &c.edge {
            SkEdge::Seg { start, end, pa, pb } => SkEdge::Seg { start: remap(*start), end: remap(*end), pa: *pa, pb: *pb },
            circ => circ.clone(),
        })
        .collect();
    let nsk = Skeleton::new(vmap.len(), edges)?;
    // new slot -> (old edge, old slot, same direction)
    let back = |d: Dart| -> (usize, u8, bool) {
        let (e, fwd, cur) = chains[d.edge].pieces[0];
        (e, cur[d.slot as usize], d.fwd == fwd)
    };

    let nr = p.regions.len();
    let mut uf = ParityUnion::new(nr);
    let mut lost_segments = vec![0i64; nr];
    for &d in circuit {
        let os: Vec<(usize, bool)> = (0..3u8).filter(|&s| s != d.slot).map(|s| owner[&(d.edge, s)]).collect();
        uf.union(os[0].0, os[1].0, !(os[0].1 ^ os[1].1));
        if !sk.edges[d.edge].is_circ() {
            lost_segments[os[0].0] += 1;
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for r in 0..nr {
        if r != region {
            let root = uf.find(r).0;
            groups.entry(root).or_default().push(r);
        }
    }
    let mut by_root: BTreeMap<usize, Vec<Vec<Dart>>> = BTreeMap::new();
    for c in nsk.circuits()? {
        let (e, s, _) = back(c[0]);
        let root = uf.find(owner[&(e, s)].0).0;
        by_root.entry(root).or_default().push(c);
    }

    let mut specs = Vec::new();
    let mut out_g = GleamAssignment::new();
    for (root, members) in &groups {
        let circuits = by_root.remove(root).unwrap_or_default();
        let chi: i64 = members.iter().map(|&m| p.region_surface_chi(m)).sum::<i64>()
            - members.iter().map(|&m| lost_segments[m]).sum::<i64>();
        let bcount: usize = members.iter().map(|&m| p.boundary_count(m)).sum();
        let orientable = !uf.bad[*root] && members.iter().all(|&m| p.regions[m].orientable);
        let h = (circuits.len() + bcount) as i64;
        let genus = if orientable {
            let twice = 2 - h - chi;
            if twice < 0 || twice % 2 != 0 {
                return Err(Error::Invalid(format!("collapse left region {root} with inconsistent topology")));
            }
            twice / 2
        } else {
            2 - h - chi
        };
        if genus < 0 || (!orientable && genus < 1) || circuits.is_empty() {
            return Err(Error::Invalid(format!("collapse left region {root} with inconsistent topology")));
        }
        let mut oriented = Vec::with_capacity(circuits.len());
        for c in circuits {
            if !orientable {
                oriented.push(c);
                continue;
            }
            let agree: BTreeSet<bool> = c
                .iter()
                .map(|&d| {
                    let (e, s, same) = back(d);
                    let (m, listed) = owner[&(e, s)];
                    (same == listed) ^ uf.find(m).1
                })
                .collect();
            match agree.len() {
                1 if agree.contains(&true) => oriented.push(c),
                1 => oriented.push(reverse_circuit(&c)),
                _ => return Err(Error::Invalid(format!("collapse broke the orientation of region {root}"))),
            }
        }
        let kind = if members.iter().any(|&m| p.regions[m].kind == RegionKind::Boundary) {
            RegionKind::Boundary
        } else {
            RegionKind::Internal
        };
        if kind == RegionKind::Internal {
            let mut sum = 0i64;
            for &m in members {
                sum += g.get(m).ok_or(Error::MissingGleam(m))?;
            }
            out_g.set(specs.len(), sum);
        }
        specs.push(RegionSpec {
            kind,
            circuits: oriented,
            genus: genus as u32,
            orientable,
            label: merged_label(p, members),
            boundary_circles: bcount,
        });
    }
    Ok((assemble(&nsk, specs), out_g))
}

/// Collapses boundary regions greedily, always taking the lowest collapsible id.
pub fn collapse_all(p: &SimplePolyhedron, g: &GleamAssignment) -> Result<(SimplePolyhedron, GleamAssignment)> {
    let mut cur = (p.clone(), g.clone());
    'outer: loop {
        for r in 0..cur.0.regions.len() {
            if cur.0.regions[r].kind != RegionKind::Boundary {
                continue;
            }
            match collapse_boundary_region(&cur.0, &cur.1, r) {
                Ok(next) => {
                    cur = next;
                    continue 'outer;
                }
                Err(Error::NoFreeFace(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        return Ok(cur);
    }
}

/// Splits an internal region by a new triple circle bounding a disk, and caps the circle
/// with a second disk. The new disk and cap take the supplied gleams, in that order;
/// their ids are the last two.
pub fn add_bubble(
    p: &SimplePolyhedron,
    g: &GleamAssignment,
    region: usize,
    new_gleams: (i64, i64),
) -> Result<(SimplePolyhedron, GleamAssignment)> {
    let r = p.regions.get(region).ok_or(Error::NoRegion(region))?;
    if r.kind != RegionKind::Internal {
        return Err(Error::NotInternal(region));
    }
    let (q, _) = attach_curves(p, &[CurveSpec::null(region, NewRegionKind::Disk)])?;
    let mut out = g.clone();
    let n = q.regions.len();
    out.set(n - 2, new_gleams.0);
    out.set(n - 1, new_gleams.1);
    require_admissible(&q, &out)?;
    Ok((q, out))
}

/// Where to apply the (0→2)-move: a triple circle with trivial monodromy whose sheet
/// `outer_slot` belongs to the same region as sheet `region_slot` of the segment `edge`.
/// The sheet `lune_slot` of the circle is pushed across the edge into sheet `target_slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSite {
    pub circle: usize,
    pub outer_slot: u8,
    pub lune_slot: u8,
    pub edge: usize,
    pub region_slot: u8,
    pub target_slot: u8,
}

impl SkEdge {
    fn is_circ(&self) -> bool {
        matches!(self, SkEdge::Circ { .. })
    }
}

fn incompatible(msg: impl Into<String>) -> Error {
    Error::IncompatibleSite(msg.into())
}

/// Slides a triple circle across a triple edge, creating two true vertices and a lune on
/// each side of the edge. Gleams are inherited by the surviving parts; the new lune starts
/// at 0 and half-unit corrections restore admissibility, taken from the sheet the lune was
/// cut from when possible.
pub fn zero_two_move(
    p: &SimplePolyhedron,
    g: &GleamAssignment,
    site: MoveSite,
) -> Result<(SimplePolyhedron, GleamAssignment)> {
    require_valid(p)?;
    let MoveSite { circle: c, outer_slot, lune_slot, edge: e, region_slot, target_slot } = site;
    if c >= p.edges.len() {
        return Err(Error::NoEdge(c));
    }
    if e >= p.edges.len() {
        return Err(Error::NoEdge(e));
    }
    if outer_slot > 2 || lune_slot > 2 || outer_slot == lune_slot {
        return Err(incompatible("circle slots"));
    }
    if region_slot > 2 || target_slot > 2 || region_slot == target_slot {
        return Err(incompatible("edge slots"));
    }
    let mut base = p.clone();
    let sk0 = Skeleton::from_polyhedron(p)?;
    match &sk0.edges[c] {
        SkEdge::Circ { sigma } if *sigma == [0, 1, 2] => {}
        SkEdge::Circ { .. } => return Err(incompatible("circle monodromy is not trivial")),
        _ => return Err(incompatible(format!("edge {c} is not a triple circle"))),
    }
    if !matches!(sk0.edges[e], SkEdge::Seg { .. }) {
        return Err(incompatible(format!("edge {e} is not a segment")));
    }
    let owner = slot_owner(p);
    let (r, dc) = owner[&(c, outer_slot)];
    let (r2, de) = owner[&(e, region_slot)];
    if r != r2 {
        return Err(incompatible("circle and edge sheets lie in different regions"));
    }
    if p.regions[r].kind != RegionKind::Internal {
        return Err(Error::NotInternal(r));
    }
    if dc != de && p.regions[r].orientable {
        for reg in base.regions.iter_mut() {
            for q in reg.circuits.iter_mut().flatten() {
                if q.edge == c {
                    q.forward = !q.forward;
                }
            }
        }
    }
    let sk = Skeleton::from_polyhedron(&base)?;
    let owner = slot_owner(&base);
    let cap_slot = 3 - outer_slot - lune_slot;
    let t_slot = 3 - region_slot - target_slot;
    let (a0, b0, pa0, pb0) = match &sk.edges[e] {
        SkEdge::Seg { start, end, pa, pb } => (*start, *end, *pa, *pb),
        _ => unreachable!(),
    };
    let u = sk.nv;
    let w = sk.nv + 1;
    let gr = |vertex: usize, germ: u8| GermRef { vertex, germ };
    let by = |rs: u8, ss: u8, ts: u8| {
        let mut x = [0u8; 3];
        x[region_slot as usize] = rs;
        x[target_slot as usize] = ss;
        x[t_slot as usize] = ts;
        x
    };
    let on_c = |os: u8, ls: u8, cs: u8| {
        let mut x = [0u8; 3];
        x[outer_slot as usize] = os;
        x[lune_slot as usize] = ls;
        x[cap_slot as usize] = cs;
        x
    };
    let mut edges = sk.edges.clone();
    edges[e] = SkEdge::Seg { start: a0, end: gr(u, 0), pa: pa0, pb: by(2, 3, 1) };
    edges[c] = SkEdge::Seg { start: gr(u, 2), end: gr(w, 2), pa: on_c(0, 1, 3), pb: on_c(1, 0, 3) };
    let e_mid = edges.len();
    edges.push(SkEdge::Seg { start: gr(u, 1), end: gr(w, 0), pa: by(2, 3, 0), pb: by(2, 3, 1) });
    edges.push(SkEdge::Seg { start: gr(w, 1), end: b0, pa: by(2, 3, 0), pb: pb0 });
    // arc b slots: 0 = outer side of the target sheet, 1 = its lune, 2 = cap
    edges.push(SkEdge::Seg { start: gr(w, 3), end: gr(u, 3), pa: [1, 0, 2], pb: [0, 1, 2] });
    let nsk = Skeleton::new(sk.nv + 2, edges)?;

    let mut seen: BTreeMap<(usize, u8), usize> = BTreeMap::new();
    let mut specs = Vec::new();
    for (ri, reg) in base.regions.iter().enumerate() {
        let mut circuits: Vec<Vec<Dart>> = Vec::new();
        for circ in &reg.circuits {
            let q = circ[0];
            let d = Dart::new(q.edge, q.slot, q.forward);
            if let Some(&o) = seen.get(&(d.edge, d.slot)) {
                if o != ri {
                    return Err(Error::Invalid("move mixed two regions".into()));
                }
                continue;
            }
            let t = nsk.trace(d);
            for x in &t {
                seen.insert((x.edge, x.slot), ri);
            }
            circuits.push(t);
        }
        specs.push(RegionSpec {
            kind: reg.kind,
            circuits,
            genus: reg.genus,
            orientable: reg.orientable,
            label: reg.label.clone(),
            boundary_circles: base.boundary_count(ri),
        });
    }
    let lune = nsk.trace(Dart::new(e_mid, target_slot, true));
    if lune.iter().any(|d| seen.contains_key(&(d.edge, d.slot))) {
        return Err(Error::Invalid("move did not produce a new lune".into()));
    }
    let lune_id = specs.len();
    specs.push(RegionSpec::disk(lune));
    let q = assemble(&nsk, specs);
    if !super::validate(&q).is_empty() {
        return Err(Error::Invalid("move produced an invalid polyhedron".into()));
    }

    let s_region = owner[&(e, target_slot)].0;
    let mut out = g.clone();
    out.set(lune_id, 0);
    let qsk = Skeleton::from_polyhedron(&q)?;
    let mismatch = |out: &GleamAssignment, r: usize| -> Result<bool> {
        let h = out.get(r).ok_or(Error::MissingGleam(r))?;
        Ok(h.rem_euclid(2) as u8 != z2_with(&qsk, &q, r))
    };
    if mismatch(&out, lune_id)? {
        out.set(lune_id, 1);
        if q.regions[s_region].kind == RegionKind::Internal {
            let h = out.get(s_region).ok_or(Error::MissingGleam(s_region))?;
            out.set(s_region, h - 1);
        }
    }
    for r in q.internal_regions().collect::<Vec<_>>() {
        if mismatch(&out, r)? {
            let h = out.get(r).unwrap();
            out.set(r, h + 1);
        }
    }
    Ok((q, out))
}
