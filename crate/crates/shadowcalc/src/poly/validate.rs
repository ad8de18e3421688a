use std::collections::HashMap;

use super::skeleton::Skeleton;
use super::{Edge, RegionKind, SimplePolyhedron};

/// Structural violations of `p`; empty iff `p` is a valid simple polyhedron.
pub fn validate(p: &SimplePolyhedron) -> Vec<String> {
    let mut out = Vec::new();
    let ne = p.edges.len();

    let mut claims = vec![[0usize; 3]; ne];
    for r in &p.regions {
        for c in &r.circuits {
            for q in c {
                if q.edge < ne && q.slot < 3 {
                    claims[q.edge][q.slot as usize] += 1;
                }
            }
        }
    }
    let mut slots_ok = true;
    for (e, cl) in claims.iter().enumerate() {
        let claimed = cl.iter().filter(|&&k| k > 0).count();
        if claimed != 3 {
            out.push(format!("edge has {claimed} of 3 passes claimed (edge {e})"));
            slots_ok = false;
        }
        for (s, &k) in cl.iter().enumerate() {
            if k > 1 {
                out.push(format!("edge {e} slot {s} claimed {k} times"));
                slots_ok = false;
            }
        }
    }

    let mut corners: HashMap<(usize, u8, u8), usize> = HashMap::new();
    for r in &p.regions {
        for c in &r.circuits {
            for q in c {
                if let (Some(Edge::Segment { start, end }), Some(b)) = (p.edges.get(q.edge), q.corner) {
                    let g = if q.forward { end } else { start };
                    let key = (g.vertex, g.germ.min(b), g.germ.max(b));
                    *corners.entry(key).or_default() += 1;
                }
            }
        }
    }
    for v in 0..p.vertices {
        for a in 0..4u8 {
            for b in (a + 1)..4u8 {
                match corners.get(&(v, a, b)).copied().unwrap_or(0) {
                    1 => {}
                    k => out.push(format!("vertex {v} corner {a}{b} claimed {k} times")),
                }
            }
        }
    }
    for (&(v, a, b), _) in corners.iter() {
        if v >= p.vertices || a == b {
            out.push(format!("invalid corner claim {a}{b} at vertex {v}"));
        }
    }

    if slots_ok {
        let (_, errs) = Skeleton::derive(p);
        out.extend(errs);
    }

    for (ri, r) in p.regions.iter().enumerate() {
        let nb = p.boundary_count(ri);
        match r.kind {
            RegionKind::Internal if nb > 0 => out.push(format!("internal region {ri} touches the boundary")),
            RegionKind::Boundary if nb == 0 => out.push(format!("boundary region {ri} has no boundary circle")),
            _ => {}
        }
        let disk = r.circuits.len() == 1 && r.genus == 0 && r.orientable && nb == 0;
        if r.is_disk != disk && !r.circuits.is_empty() {
            out.push(format!("region {ri} disk flag disagrees with its topology"));
        }
        if !r.orientable && r.genus == 0 {
            out.push(format!("region {ri} is non-orientable with genus 0"));
        }
    }
    for (i, b) in p.boundary_curves.iter().enumerate() {
        if b.region >= p.regions.len() {
            out.push(format!("boundary circle {i} refers to missing region {}", b.region));
        }
    }
    out
}
