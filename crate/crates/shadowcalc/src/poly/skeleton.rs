//! Slot-level incidence structure: partner germs per slot at each segment end and the
//! monodromy of each triple circle. Region circuits are the orbits of `next` on darts.

use std::collections::{BTreeMap, HashMap};

use super::{others, BoundaryCurve, Edge, GermRef, Pass, Region, RegionKind, SimplePolyhedron};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum SkEdge {
    /// `pa[s]` / `pb[s]`: the germ that slot `s` turns into at the start / end vertex.
    Seg { start: GermRef, end: GermRef, pa: [u8; 3], pb: [u8; 3] },
    /// Going forward once around the circle carries slot `s` to slot `sigma[s]`.
    Circ { sigma: [u8; 3] },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Dart {
    pub edge: usize,
    pub slot: u8,
    pub fwd: bool,
}

impl Dart {
    pub fn new(edge: usize, slot: u8, fwd: bool) -> Self {
        Dart { edge, slot, fwd }
    }

    pub fn rev(self) -> Dart {
        Dart { fwd: !self.fwd, ..self }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Skeleton {
    pub nv: usize,
    pub edges: Vec<SkEdge>,
    at: HashMap<GermRef, (usize, bool)>,
}

fn inverse(p: &[u8; 3]) -> [u8; 3] {
    let mut q = [0u8; 3];
    for (i, &x) in p.iter().enumerate() {
        q[x as usize] = i as u8;
    }
    q
}

fn is_perm_of(p: &[u8; 3], set: &[u8; 3]) -> bool {
    let mut a = *p;
    a.sort_unstable();
    let mut b = *set;
    b.sort_unstable();
    a == b
}

impl Skeleton {
    pub fn new(nv: usize, edges: Vec<SkEdge>) -> Result<Self> {
        let mut at = HashMap::new();
        for (i, e) in edges.iter().enumerate() {
            if let SkEdge::Seg { start, end, pa, pb } = e {
                for (g, side, p) in [(start, true, pa), (end, false, pb)] {
                    if g.vertex >= nv || g.germ > 3 {
                        return Err(Error::Invalid(format!("edge {i} endpoint out of range")));
                    }
                    if !is_perm_of(p, &others(g.germ)) {
                        return Err(Error::Invalid(format!("edge {i} partner map is not a bijection")));
                    }
                    if at.insert(*g, (i, side)).is_some() {
                        return Err(Error::Invalid(format!(
                            "germ {}:{} used twice",
                            g.vertex, g.germ
                        )));
                    }
                }
            } else if let SkEdge::Circ { sigma } = e {
                if !is_perm_of(sigma, &[0, 1, 2]) {
                    return Err(Error::Invalid(format!("edge {i} monodromy is not a permutation")));
                }
            }
        }
        if at.len() != 4 * nv {
            return Err(Error::Invalid("some vertex germ is unused".into()));
        }
        Ok(Skeleton { nv, edges, at })
    }

    pub fn edge_at(&self, g: GermRef) -> (usize, bool) {
        self.at[&g]
    }

    /// Arrival germ and the germ turned into, for a segment dart.
    pub fn arrival(&self, d: Dart) -> Option<(GermRef, u8)> {
        match &self.edges[d.edge] {
            SkEdge::Seg { start, end, pa, pb } => {
                if d.fwd {
                    Some((*end, pb[d.slot as usize]))
                } else {
                    Some((*start, pa[d.slot as usize]))
                }
            }
            SkEdge::Circ { .. } => None,
        }
    }

    /// Slot of the edge at `g` whose sheet turns into germ `partner` at that end.
    pub fn slot_towards(&self, g: GermRef, partner: u8) -> (usize, u8, bool) {
        let (e, is_start) = self.edge_at(g);
        let p = match &self.edges[e] {
            SkEdge::Seg { pa, pb, .. } => {
                if is_start {
                    pa
                } else {
                    pb
                }
            }
            SkEdge::Circ { .. } => unreachable!(),
        };
        let s = p.iter().position(|&x| x == partner).expect("partner present") as u8;
        (e, s, is_start)
    }

    pub fn next(&self, d: Dart) -> Dart {
        match &self.edges[d.edge] {
            SkEdge::Seg { .. } => {
                let (g, b) = self.arrival(d).unwrap();
                let nb = GermRef { vertex: g.vertex, germ: b };
                let (e, s, is_start) = self.slot_towards(nb, g.germ);
                Dart { edge: e, slot: s, fwd: is_start }
            }
            SkEdge::Circ { sigma } => {
                let s = if d.fwd { sigma[d.slot as usize] } else { inverse(sigma)[d.slot as usize] };
                Dart { slot: s, ..d }
            }
        }
    }

    pub fn trace(&self, d: Dart) -> Vec<Dart> {
        let mut out = vec![d];
        let mut cur = self.next(d);
        while cur != d {
            out.push(cur);
            cur = self.next(cur);
            assert!(out.len() <= 3 * self.edges.len() + 1, "circuit does not close");
        }
        out
    }

    /// All circuits, each started at its smallest unvisited forward dart.
    pub fn circuits(&self) -> Result<Vec<Vec<Dart>>> {
        let mut seen = vec![[false; 3]; self.edges.len()];
        let mut out = Vec::new();
        for e in 0..self.edges.len() {
            for s in 0..3u8 {
                if seen[e][s as usize] {
                    continue;
                }
                let c = self.trace(Dart::new(e, s, true));
                for d in &c {
                    if seen[d.edge][d.slot as usize] {
                        return Err(Error::Invalid(format!("slot {}:{} traversed twice", d.edge, d.slot)));
                    }
                    seen[d.edge][d.slot as usize] = true;
                }
                out.push(c);
            }
        }
        Ok(out)
    }

    pub fn pass(&self, d: Dart) -> Pass {
        Pass { edge: d.edge, forward: d.fwd, slot: d.slot, corner: self.arrival(d).map(|(_, b)| b) }
    }

    pub fn edge_records(&self) -> Vec<Edge> {
        self.edges
            .iter()
            .map(|e| match e {
                SkEdge::Seg { start, end, .. } => Edge::Segment { start: *start, end: *end },
                SkEdge::Circ { .. } => Edge::Circle,
            })
            .collect()
    }

    /// Ordered pair of the two other slots carried across the transition `d -> next(d)`.
    fn carry(&self, d: Dart, pair: (u8, u8)) -> (u8, u8) {
        let n = self.next(d);
        match &self.edges[d.edge] {
            SkEdge::Circ { sigma } => {
                let m = if d.fwd { *sigma } else { inverse(sigma) };
                (m[pair.0 as usize], m[pair.1 as usize])
            }
            SkEdge::Seg { pa, pb, .. } => {
                let (g, b) = self.arrival(d).unwrap();
                let nb = GermRef { vertex: g.vertex, germ: b };
                let partners = if d.fwd { pb } else { pa };
                let map = |s: u8| -> u8 {
                    let (e, t, _) = self.slot_towards(nb, partners[s as usize]);
                    debug_assert_eq!(e, n.edge);
                    t
                };
                (map(pair.0), map(pair.1))
            }
        }
    }

    /// Parity of the swap of the two other sheets after one trip around the circuit.
    pub fn circuit_z2(&self, c: &[Dart]) -> u8 {
        let first = c[0];
        let o: Vec<u8> = (0..3u8).filter(|&s| s != first.slot).collect();
        let start = (o[0], o[1]);
        let mut pair = start;
        for &d in c {
            pair = self.carry(d, pair);
        }
        if pair == start {
            0
        } else {
            debug_assert_eq!(pair, (start.1, start.0));
            1
        }
    }

    /// Derives partner maps and monodromies from the region circuits of `p`,
    /// collecting every inconsistency found.
    pub fn derive(p: &SimplePolyhedron) -> (Option<Skeleton>, Vec<String>) {
        let mut errs = Vec::new();
        let ne = p.edges.len();
        let mut pa: Vec<[Option<u8>; 3]> = vec![[None; 3]; ne];
        let mut pb: Vec<[Option<u8>; 3]> = vec![[None; 3]; ne];
        let mut sigma: Vec<[Option<u8>; 3]> = vec![[None; 3]; ne];
        let mut at: HashMap<GermRef, (usize, bool)> = HashMap::new();
        for (i, e) in p.edges.iter().enumerate() {
            if let Edge::Segment { start, end } = e {
                for (g, side) in [(start, true), (end, false)] {
                    if g.vertex >= p.vertices || g.germ > 3 {
                        errs.push(format!("edge {i} endpoint {}:{} out of range", g.vertex, g.germ));
                        continue;
                    }
                    if at.insert(*g, (i, side)).is_some() {
                        errs.push(format!("vertex {} germ {} used by more than one edge end", g.vertex, g.germ));
                    }
                }
            }
        }
        for v in 0..p.vertices {
            for g in 0..4u8 {
                if !at.contains_key(&GermRef { vertex: v, germ: g }) {
                    errs.push(format!("vertex {v} germ {g} has no edge"));
                }
            }
        }
        let set = |tab: &mut Vec<[Option<u8>; 3]>, e: usize, s: u8, val: u8, errs: &mut Vec<String>, what: &str| {
            let cell = &mut tab[e][s as usize];
            match cell {
                Some(x) if *x != val => errs.push(format!("edge {e} slot {s}: conflicting {what}")),
                _ => *cell = Some(val),
            }
        };
        for (ri, r) in p.regions.iter().enumerate() {
            for (ci, c) in r.circuits.iter().enumerate() {
                if c.is_empty() {
                    errs.push(format!("region {ri} circuit {ci} is empty"));
                    continue;
                }
                for k in 0..c.len() {
                    let a = c[k];
                    let b = c[(k + 1) % c.len()];
                    if a.edge >= ne || b.edge >= ne || a.slot > 2 || b.slot > 2 {
                        errs.push(format!("region {ri} circuit {ci}: pass out of range"));
                        continue;
                    }
                    match &p.edges[a.edge] {
                        Edge::Circle => {
                            if b.edge != a.edge || b.forward != a.forward {
                                errs.push(format!("region {ri} circuit {ci}: circle pass not followed by the same circle"));
                                continue;
                            }
                            if a.forward {
                                set(&mut sigma, a.edge, a.slot, b.slot, &mut errs, "monodromy");
                            } else {
                                set(&mut sigma, a.edge, b.slot, a.slot, &mut errs, "monodromy");
                            }
                        }
                        Edge::Segment { start, end } => {
                            let Some(corner) = a.corner else {
                                errs.push(format!("region {ri} circuit {ci}: segment pass without corner"));
                                continue;
                            };
                            let g = if a.forward { *end } else { *start };
                            if a.forward {
                                set(&mut pb, a.edge, a.slot, corner, &mut errs, "end partner");
                            } else {
                                set(&mut pa, a.edge, a.slot, corner, &mut errs, "start partner");
                            }
                            let nb = GermRef { vertex: g.vertex, germ: corner };
                            match at.get(&nb) {
                                Some(&(e2, is_start)) if e2 == b.edge && is_start == b.forward => {
                                    if b.forward {
                                        set(&mut pa, b.edge, b.slot, g.germ, &mut errs, "start partner");
                                    } else {
                                        set(&mut pb, b.edge, b.slot, g.germ, &mut errs, "end partner");
                                    }
                                }
                                _ => errs.push(format!(
                                    "region {ri} circuit {ci}: pass on edge {} does not leave vertex {} at germ {}",
                                    b.edge, g.vertex, corner
                                )),
                            }
                        }
                    }
                }
            }
        }
        let mut edges = Vec::with_capacity(ne);
        for (i, e) in p.edges.iter().enumerate() {
            match e {
                Edge::Circle => {
                    let s: Option<Vec<u8>> = sigma[i].iter().copied().collect();
                    match s {
                        Some(v) => edges.push(SkEdge::Circ { sigma: [v[0], v[1], v[2]] }),
                        None => {
                            errs.push(format!("edge {i}: monodromy undetermined"));
                            edges.push(SkEdge::Circ { sigma: [0, 1, 2] });
                        }
                    }
                }
                Edge::Segment { start, end } => {
                    let a: Option<Vec<u8>> = pa[i].iter().copied().collect();
                    let b: Option<Vec<u8>> = pb[i].iter().copied().collect();
                    match (a, b) {
                        (Some(a), Some(b)) => edges.push(SkEdge::Seg {
                            start: *start,
                            end: *end,
                            pa: [a[0], a[1], a[2]],
                            pb: [b[0], b[1], b[2]],
                        }),
                        _ => {
                            errs.push(format!("edge {i}: partner germs undetermined"));
                            edges.push(SkEdge::Seg { start: *start, end: *end, pa: [0, 0, 0], pb: [0, 0, 0] });
                        }
                    }
                }
            }
        }
        if !errs.is_empty() {
            return (None, errs);
        }
        match Skeleton::new(p.vertices, edges) {
            Ok(sk) => (Some(sk), errs),
            Err(e) => {
                errs.push(e.to_string());
                (None, errs)
            }
        }
    }

    pub fn from_polyhedron(p: &SimplePolyhedron) -> Result<Skeleton> {
        let (sk, errs) = Skeleton::derive(p);
        sk.ok_or_else(|| Error::Invalid(errs.join("; ")))
    }
}

/// Region data expressed in darts, used by constructions.
#[derive(Clone, Debug)]
pub(crate) struct RegionSpec {
    pub kind: RegionKind,
    pub circuits: Vec<Vec<Dart>>,
    pub genus: u32,
    pub orientable: bool,
    pub label: Option<String>,
    pub boundary_circles: usize,
}

impl RegionSpec {
    pub fn disk(c: Vec<Dart>) -> Self {
        RegionSpec {
            kind: RegionKind::Internal,
            circuits: vec![c],
            genus: 0,
            orientable: true,
            label: None,
            boundary_circles: 0,
        }
    }
}

pub(crate) fn assemble(sk: &Skeleton, specs: Vec<RegionSpec>) -> SimplePolyhedron {
    let mut regions = Vec::with_capacity(specs.len());
    let mut boundary_curves = Vec::new();
    for (i, s) in specs.into_iter().enumerate() {
        for _ in 0..s.boundary_circles {
            boundary_curves.push(BoundaryCurve { region: i });
        }
        let is_disk = s.circuits.len() == 1 && s.genus == 0 && s.orientable && s.boundary_circles == 0;
        regions.push(Region {
            kind: s.kind,
            circuits: s.circuits.iter().map(|c| c.iter().map(|&d| sk.pass(d)).collect()).collect(),
            is_disk,
            genus: s.genus,
            orientable: s.orientable,
            label: s.label,
        });
    }
    SimplePolyhedron { vertices: sk.nv, edges: sk.edge_records(), regions, boundary_curves }
}

pub(crate) fn region_darts(p: &SimplePolyhedron) -> Vec<Vec<Vec<Dart>>> {
    p.regions
        .iter()
        .map(|r| {
            r.circuits
                .iter()
                .map(|c| c.iter().map(|q| Dart::new(q.edge, q.slot, q.forward)).collect())
                .collect()
        })
        .collect()
}

/// For each slot, the region owning it and the direction in which it is listed.
pub(crate) fn slot_owner(p: &SimplePolyhedron) -> BTreeMap<(usize, u8), (usize, bool)> {
    let mut m = BTreeMap::new();
    for (ri, r) in p.regions.iter().enumerate() {
        for c in &r.circuits {
            for q in c {
                m.insert((q.edge, q.slot), (ri, q.forward));
            }
        }
    }
    m
}

pub(crate) fn reverse_circuit(c: &[Dart]) -> Vec<Dart> {
    c.iter().rev().map(|d| d.rev()).collect()
}
