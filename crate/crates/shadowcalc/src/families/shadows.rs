//! Explicit shadows of the family.
//!
//! `Q''` is a chain of `2n` true vertices whose bigons alternate in Z/2 gleam; `R_1` is
//! the region through slot 0 of edge 1, `R_2` the other long region, and the small
//! regions in order of first appearance along the edges are
//! `R_{2,1}, R_{1,1}, R_{2,2}, R_{1,2}, ..., R_{2,n+1}`.
//!
//! `Q'` is `Q''` with `3n+2` boundary annuli: two crossing curves per pair of pants and
//! `n+2` null curves. Collapsing every annulus returns `Q''`. Pieces are named after the
//! tables of `Q'` by parity order inside each region of `Q''`: in `R_2` the first even
//! piece is `D_2`, odd pieces pair up as `T_{i,1}, T_{i,2}` and the remaining even ones
//! as `T_{i,3}, T_{i,4}`; in `R_{1,i}` the odd piece is `T_{i,5}`.
//!
//! `P''` is a chain of `sum l_j + n - 3` true vertices with one long region, and `P'` adds
//! `2n+2` annuli crossing its edges `4n+2` times in total.

use std::collections::BTreeMap;

use super::{coefficients, FamilyData, FamilyParams, Stage};
use crate::error::{Error, Result};
use crate::gleam_ledger::{disk_gleam, region_gleams, DiskAttachment, EventKind, ProjectionEvent};
use crate::poly::skeleton::slot_owner;
use crate::poly::{
    add_bubble, attach_curves, chain_polyhedron, chain_skeleton_choices, check_admissible, z2_gleam, zero_two_move,
    ChainPattern, Crossing, CurveSpec, Edge, GleamAssignment, MoveSite, NewRegionKind, PolyFile, RegionOrigin, SimplePolyhedron,
};

struct QRoles {
    r1: usize,
    r2: usize,
    r1i: Vec<usize>,
    r2j: Vec<usize>,
}

fn q_roles(p: &SimplePolyhedron, n: usize) -> QRoles {
    let owner = slot_owner(p);
    let r1 = owner[&(1, 0)].0;
    let r2 = (0..p.regions.len())
        .find(|&r| r != r1 && p.regions[r].circuits[0].len() == 4 * n)
        .expect("second long region");
    let mut bg = Vec::new();
    for e in 0..p.edges.len() {
        for s in 0..3u8 {
            let r = owner[&(e, s)].0;
            if r != r1 && r != r2 && !bg.contains(&r) {
                bg.push(r);
            }
        }
    }
    let r2j = (0..=n).map(|j| bg[2 * j]).collect();
    let r1i = (0..n).map(|i| bg[2 * i + 1]).collect();
    QRoles { r1, r2, r1i, r2j }
}

fn q_base(n: usize) -> Result<(SimplePolyhedron, QRoles)> {
    let v = 2 * n;
    let mut p = chain_polyhedron(v, &chain_skeleton_choices(v, ChainPattern::Alternating))?;
    let roles = q_roles(&p, n);
    p.regions[roles.r1].label = Some("R1".into());
    p.regions[roles.r2].label = Some("R2".into());
    for (i, &r) in roles.r1i.iter().enumerate() {
        p.regions[r].label = Some(format!("R1_{}", i + 1));
    }
    for (j, &r) in roles.r2j.iter().enumerate() {
        p.regions[r].label = Some(format!("R2_{}", j + 1));
    }
    Ok((p, roles))
}

fn q_double_prime(d: &FamilyData, r1_shift: i64) -> Result<(SimplePolyhedron, GleamAssignment)> {
    let n = d.m.len();
    let (p, roles) = q_base(n)?;
    let s = d.l_sum();
    let mut g = GleamAssignment::new();
    g.set(roles.r1, -2 * s + 2 * r1_shift);
    g.set(roles.r2, -2 * s);
    for (i, &r) in roles.r1i.iter().enumerate() {
        g.set(r, 2 * d.m[i] + 1);
    }
    for (j, &r) in roles.r2j.iter().enumerate() {
        g.set(r, 2 * d.l[j]);
    }
    Ok((p, g))
}

fn crossing(edge: usize, from_slot: u8, to_slot: u8, position: u32) -> Crossing {
    Crossing { edge, from_slot, to_slot, position }
}

/// Final region -> region of the base it lies in, through two attachment steps.
fn grandparents(o1: &[RegionOrigin], o2: &[RegionOrigin]) -> Vec<Option<usize>> {
    o2.iter()
        .map(|o| match *o {
            RegionOrigin::Piece { parent, .. } => match o1[parent] {
                RegionOrigin::Piece { parent, .. } => Some(parent),
                RegionOrigin::Curve(_) => None,
            },
            RegionOrigin::Curve(_) => None,
        })
        .collect()
}

fn pattern_error(what: &str) -> Error {
    Error::Invalid(format!("Q' piece pattern broken: {what}"))
}

fn q_prime(d: &FamilyData) -> Result<(SimplePolyhedron, GleamAssignment, Vec<ProjectionEvent>)> {
    let n = d.m.len();
    let (base, roles) = q_base(n)?;
    let owner = slot_owner(&base);
    let regs = |e: usize| [owner[&(e, 0)].0, owner[&(e, 1)].0, owner[&(e, 2)].0];
    let slots_of = |e: usize, r: usize| -> Vec<u8> { (0..3u8).filter(|&s| owner[&(e, s)].0 == r).collect() };
    let edge_with = |want: [usize; 3]| -> Result<usize> {
        let mut w = want;
        w.sort_unstable();
        (0..base.edges.len())
            .find(|&e| {
                let mut r = regs(e);
                r.sort_unstable();
                r == w
            })
            .ok_or_else(|| pattern_error("missing edge"))
    };
    let mut curves = Vec::new();
    for i in 0..n {
        let b = roles.r1i[i];
        let eb = edge_with([roles.r2, roles.r2, b])?;
        let et = edge_with([roles.r1, roles.r1, b])?;
        let target = roles.r2j[i + 1];
        let ej = (0..base.edges.len())
            .find(|&e| regs(e).contains(&target))
            .ok_or_else(|| pattern_error("missing edge"))?;
        let (ab, cb) = (slots_of(eb, roles.r2), slots_of(eb, b)[0]);
        let at = slots_of(et, roles.r1);
        let one = *slots_of(ej, roles.r1).first().ok_or_else(|| pattern_error("edge misses R1"))?;
        let cj = slots_of(ej, target)[0];
        let t = 10 * i as u32;
        curves.push(CurveSpec::through(
            vec![
                crossing(eb, cb, ab[0], t),
                crossing(eb, ab[1], ab[0], t + 1),
                crossing(eb, ab[0], ab[1], t + 2),
                crossing(eb, ab[1], cb, t + 3),
            ],
            NewRegionKind::Annulus,
        ));
        curves.push(CurveSpec::through(
            vec![crossing(ej, one, cj, t + 6), crossing(ej, cj, one, t + 5), crossing(et, at[0], at[1], t + 5)],
            NewRegionKind::Annulus,
        ));
    }
    let (q1, o1) = attach_curves(&base, &curves)?;
    let mut nulls: Vec<CurveSpec> = (0..n).map(|_| CurveSpec::null(roles.r2, NewRegionKind::Annulus)).collect();
    nulls.push(CurveSpec::null(roles.r1, NewRegionKind::Annulus));
    nulls.push(CurveSpec::null(roles.r2j[0], NewRegionKind::Annulus));
    let (mut q, o2) = attach_curves(&q1, &nulls)?;

    let gp = grandparents(&o1, &o2);
    let mut pieces: BTreeMap<usize, Vec<(usize, u8)>> = BTreeMap::new();
    for r in q.internal_regions().collect::<Vec<_>>() {
        let parent = gp[r].ok_or_else(|| pattern_error("internal region outside Q''"))?;
        pieces.entry(parent).or_default().push((r, z2_gleam(&q, r)?));
    }
    let s = d.l_sum();
    let mut labels: BTreeMap<usize, String> = BTreeMap::new();
    let mut disks: Vec<DiskAttachment> = Vec::new();
    let mut events: Vec<ProjectionEvent> = Vec::new();
    let disk = |id: usize, pos: i64, neg: i64, framing: i64| DiskAttachment {
        disk: id,
        positives: pos as u64,
        negatives: neg as u64,
        base_framing: framing,
    };

    let r1p = &pieces[&roles.r1];
    if r1p.len() != 2 * n + 2 || r1p.iter().any(|x| x.1 != 0) {
        return Err(pattern_error("R1"));
    }
    labels.insert(r1p[0].0, "R1.D1".into());
    disks.push(disk(r1p[0].0, 0, 2 * s, -s));
    labels.insert(r1p[1].0, "R1.S0".into());
    for i in 0..n {
        labels.insert(r1p[2 + 2 * i].0, format!("R1.S1_{}", i + 1));
        labels.insert(r1p[3 + 2 * i].0, format!("R1.S2_{}", i + 1));
    }

    let r2p = &pieces[&roles.r2];
    let even: Vec<usize> = r2p.iter().filter(|x| x.1 == 0).map(|x| x.0).collect();
    let odd: Vec<usize> = r2p.iter().filter(|x| x.1 == 1).map(|x| x.0).collect();
    if odd.len() != 2 * n || even.len() != 2 * n + 1 {
        return Err(pattern_error("R2"));
    }
    labels.insert(even[0], "R2.D2".into());
    disks.push(disk(even[0], 2 * n as i64, 2 * s, -s));
    let mut t5 = Vec::new();
    for i in 0..n {
        labels.insert(odd[2 * i], format!("R2.T{}_1", i + 1));
        labels.insert(odd[2 * i + 1], format!("R2.T{}_2", i + 1));
        labels.insert(even[1 + 2 * i], format!("R2.T{}_3", i + 1));
        labels.insert(even[2 + 2 * i], format!("R2.T{}_4", i + 1));
        let rp = &pieces[&roles.r1i[i]];
        let (Some(o), Some(e)) = (rp.iter().find(|x| x.1 == 1), rp.iter().find(|x| x.1 == 0)) else {
            return Err(pattern_error("R1_i"));
        };
        if rp.len() != 2 {
            return Err(pattern_error("R1_i"));
        }
        labels.insert(o.0, format!("R1_{}.T{}_5", i + 1, i + 1));
        labels.insert(e.0, format!("R1_{}.D1_{}", i + 1, i + 1));
        disks.push(disk(e.0, 0, -2 * d.m[i], d.m[i]));
        t5.push(o.0);
        events.push(ProjectionEvent::new(
            EventKind::SingIntersection,
            -1,
            vec![(odd[2 * i], -1), (odd[2 * i + 1], -1)],
        )?);
    }
    for &o in &t5 {
        events.push(ProjectionEvent::new(EventKind::SingIntersection, 1, vec![(o, 1)])?);
    }
    for (j, &r) in roles.r2j.iter().enumerate() {
        let rp = &pieces[&r];
        if rp.len() != 2 || rp.iter().any(|x| x.1 != 0) {
            return Err(pattern_error("R2_j"));
        }
        labels.insert(rp[0].0, format!("R2_{}.D2_{}", j + 1, j + 1));
        labels.insert(rp[1].0, format!("R2_{}.S{}", j + 1, j + 1));
        disks.push(disk(rp[0].0, 2 * d.l[j], 0, d.l[j]));
    }

    for (&r, l) in &labels {
        q.regions[r].label = Some(l.clone());
    }
    let mut g = GleamAssignment::new();
    let sums = region_gleams(&events);
    for r in q.internal_regions() {
        g.set(r, sums.get(r).unwrap_or(0));
    }
    for dk in &disks {
        g.set(dk.disk, disk_gleam(dk));
    }
    if !check_admissible(&q, &g)? {
        return Err(pattern_error("gleams not admissible"));
    }
    Ok((q, g, events))
}

fn minimal_gleams(p: &SimplePolyhedron) -> Result<GleamAssignment> {
    let mut g = GleamAssignment::new();
    for r in p.internal_regions() {
        g.set(r, z2_gleam(p, r)? as i64);
    }
    Ok(g)
}

fn p_double_prime(d: &FamilyData) -> Result<(SimplePolyhedron, GleamAssignment)> {
    let n = d.m.len() as i64;
    let v = (d.l_sum() + n - 3) as usize;
    let mut p = chain_polyhedron(v, &chain_skeleton_choices(v, ChainPattern::Contractible))?;
    for (i, r) in p.regions.iter_mut().enumerate() {
        r.label = Some(format!("P{i}"));
    }
    let g = minimal_gleams(&p)?;
    Ok((p, g))
}

fn p_prime(d: &FamilyData) -> Result<(SimplePolyhedron, GleamAssignment)> {
    let n = d.m.len();
    let (base, bg) = p_double_prime(d)?;
    let mut curves = vec![
        CurveSpec::through(vec![crossing(1, 0, 1, 0)], NewRegionKind::Annulus),
        CurveSpec::through(vec![crossing(2, 0, 1, 0)], NewRegionKind::Annulus),
    ];
    for i in 1..=n {
        for e in [2 * i + 1, 2 * i + 2] {
            curves.push(CurveSpec::through(
                vec![crossing(e, 0, 1, 1), crossing(e, 1, 0, 2)],
                NewRegionKind::Annulus,
            ));
        }
    }
    let (mut p, origins) = attach_curves(&base, &curves)?;
    let mut g = GleamAssignment::new();
    let mut used: BTreeMap<usize, i64> = BTreeMap::new();
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for r in p.internal_regions().collect::<Vec<_>>() {
        if let RegionOrigin::Piece { parent, main: false } = origins[r] {
            let h = z2_gleam(&p, r)? as i64;
            g.set(r, h);
            *used.entry(parent).or_default() += h;
            let k = count.entry(parent).or_default();
            *k += 1;
            p.regions[r].label = Some(format!("P{parent}.{k}"));
        }
    }
    for r in p.internal_regions().collect::<Vec<_>>() {
        if let RegionOrigin::Piece { parent, main: true } = origins[r] {
            let h = bg.get(parent).ok_or(Error::MissingGleam(parent))?;
            g.set(r, h - used.get(&parent).copied().unwrap_or(0));
            if count.contains_key(&parent) {
                p.regions[r].label = Some(format!("P{parent}.0"));
            }
        }
    }
    if !check_admissible(&p, &g)? {
        return Err(Error::Invalid("P' gleams not admissible".into()));
    }
    Ok((p, g))
}

/// Bubble gleams in half-units: the inner disk gets 0 and the cap -1, the sign of the
/// blown-up complex projective plane.
pub(crate) const BUBBLE_GLEAMS: (i64, i64) = (0, -2);

/// The (0→2)-site used after bubbling: the newest triple circle, pushed across the first
/// segment met by its outer region, into a sheet of another region when there is one.
pub fn w_prime_site(p: &SimplePolyhedron) -> Result<MoveSite> {
    let circle = (0..p.edges.len())
        .rev()
        .find(|&e| matches!(p.edges[e], Edge::Circle))
        .ok_or_else(|| Error::IncompatibleSite("no triple circle".into()))?;
    let owner = slot_owner(p);
    let host = owner[&(circle, 0)].0;
    for e in 0..p.edges.len() {
        if matches!(p.edges[e], Edge::Circle) {
            continue;
        }
        for r in 0..3u8 {
            if owner[&(e, r)].0 != host {
                continue;
            }
            let others: Vec<u8> = (0..3u8).filter(|&t| t != r).collect();
            let target = others.iter().copied().find(|&t| owner[&(e, t)].0 != host).unwrap_or(others[0]);
            return Ok(MoveSite { circle, outer_slot: 0, lune_slot: 1, edge: e, region_slot: r, target_slot: target });
        }
    }
    Err(Error::IncompatibleSite("outer region meets no segment".into()))
}

fn w_prime(d: &FamilyData) -> Result<(SimplePolyhedron, GleamAssignment)> {
    let (p, g) = p_double_prime(d)?;
    let host = slot_owner(&p)[&(0, 0)].0;
    let (b, gb) = add_bubble(&p, &g, host, BUBBLE_GLEAMS)?;
    let site = w_prime_site(&b)?;
    zero_two_move(&b, &gb, site)
}

/// The named shadow with its gleams and, for `Q'`, the projection events behind them.
pub fn build_shadow_file(params: FamilyParams, stage: Stage) -> Result<PolyFile> {
    let d = coefficients(params)?;
    let (p, g, events) = match stage {
        Stage::Qp => q_prime(&d)?,
        Stage::Qpp => {
            let (p, g) = q_double_prime(&d, 0)?;
            (p, g, Vec::new())
        }
        Stage::Wvar => {
            let (p, g) = q_double_prime(&d, 1)?;
            (p, g, Vec::new())
        }
        Stage::Ppp => {
            let (p, g) = p_double_prime(&d)?;
            (p, g, Vec::new())
        }
        Stage::Pp => {
            let (p, g) = p_prime(&d)?;
            (p, g, Vec::new())
        }
        Stage::Wpp => {
            let (p, g) = w_prime(&d)?;
            (p, g, Vec::new())
        }
    };
    Ok(PolyFile { poly: p, gleams: Some(g), events })
}

pub fn build_shadow(params: FamilyParams, stage: Stage) -> Result<(SimplePolyhedron, GleamAssignment)> {
    let f = build_shadow_file(params, stage)?;
    Ok((f.poly, f.gleams.unwrap_or_default()))
}
