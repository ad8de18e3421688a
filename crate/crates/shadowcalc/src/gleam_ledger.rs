//! Gleams read off a link projection: disk gleams from framing-curve crossings and
//! half-unit contributions at crossings and at intersections with the singular set.
//!
//! Contributions are signed half-units attached to output region ids. A
//! `sing_intersection` of sign `s` puts `s` on each adjacent region it lists; crossings
//! list up to four corners. Generators supply events directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{attach_curves, CurveSpec, GleamAssignment, NewRegionKind, RegionKind, RegionOrigin, SimplePolyhedron};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Crossing,
    SingIntersection,
}

impl EventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::Crossing => "crossing",
            EventKind::SingIntersection => "sing_intersection",
        }
    }

    pub fn max_contributions(self) -> usize {
        match self {
            EventKind::Crossing => 4,
            EventKind::SingIntersection => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionEvent {
    pub kind: EventKind,
    pub sign: i8,
    /// (region id, ±1 half-unit)
    pub contributions: Vec<(usize, i8)>,
}

fn sign_str(x: i8) -> &'static str {
    if x > 0 {
        "+1"
    } else {
        "-1"
    }
}

fn parse_sign(t: &str) -> std::result::Result<i8, String> {
    match t {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("bad sign '{t}'")),
    }
}

impl ProjectionEvent {
    pub fn new(kind: EventKind, sign: i8, contributions: Vec<(usize, i8)>) -> Result<Self> {
        let ev = ProjectionEvent { kind, sign, contributions };
        ev.check().map_err(Error::Domain)?;
        Ok(ev)
    }

    pub fn check(&self) -> std::result::Result<(), String> {
        if self.sign != 1 && self.sign != -1 {
            return Err("event sign must be +1 or -1".into());
        }
        if self.contributions.len() > self.kind.max_contributions() {
            return Err(format!(
                "{} contributes to {} regions, at most {} allowed",
                self.kind.as_str(),
                self.contributions.len(),
                self.kind.max_contributions()
            ));
        }
        if self.contributions.iter().any(|&(_, h)| h != 1 && h != -1) {
            return Err("each contribution is one half-unit".into());
        }
        Ok(())
    }

    pub fn to_line(&self) -> String {
        let mut s = format!("{} {}", self.kind.as_str(), sign_str(self.sign));
        for &(r, h) in &self.contributions {
            s.push_str(&format!(" {r}:{}", sign_str(h)));
        }
        s
    }

    pub fn from_line(line: &str) -> std::result::Result<Self, String> {
        let mut toks = line.split_whitespace();
        let kind = match toks.next() {
            Some("crossing") => EventKind::Crossing,
            Some("sing_intersection") => EventKind::SingIntersection,
            other => return Err(format!("bad event kind {other:?}")),
        };
        let sign = parse_sign(toks.next().ok_or("missing event sign")?)?;
        let mut contributions = Vec::new();
        for t in toks {
            let (r, h) = t.split_once(':').ok_or_else(|| format!("bad contribution '{t}'"))?;
            let r: usize = r.parse().map_err(|_| format!("bad region id '{r}'"))?;
            contributions.push((r, parse_sign(h)?));
        }
        let ev = ProjectionEvent { kind, sign, contributions };
        ev.check()?;
        Ok(ev)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskAttachment {
    pub disk: usize,
    pub positives: u64,
    pub negatives: u64,
    pub base_framing: i64,
}

/// Positive minus negative framing-curve crossings, read as half-units.
pub fn disk_gleam(d: &DiskAttachment) -> i64 {
    d.positives as i64 - d.negatives as i64
}

/// Per-region sums of the contributions; only regions named by some event appear.
pub fn region_gleams(events: &[ProjectionEvent]) -> GleamAssignment {
    let mut g = GleamAssignment::new();
    for ev in events {
        for &(r, h) in &ev.contributions {
            let cur = g.get(r).unwrap_or(0);
            g.set(r, cur + h as i64);
        }
    }
    g
}

/// Attaches one region per curve to `base`. Disk curves take the gleam of the attachment
/// with the same index as the curve; old regions take the event sums, zero when untouched.
/// Event region ids refer to the output.
pub fn assemble_shadow(
    base: &SimplePolyhedron,
    curves: &[CurveSpec],
    disks: &[DiskAttachment],
    events: &[ProjectionEvent],
) -> Result<(SimplePolyhedron, GleamAssignment)> {
    for ev in events {
        ev.check().map_err(Error::Curve)?;
    }
    let (p, origins) = attach_curves(base, curves)?;
    let mut g = GleamAssignment::new();
    for (ci, c) in curves.iter().enumerate() {
        let ds: Vec<&DiskAttachment> = disks.iter().filter(|d| d.disk == ci).collect();
        match (c.kind, ds.as_slice()) {
            (NewRegionKind::Disk, [d]) => {
                let id = origins.iter().position(|o| *o == RegionOrigin::Curve(ci)).expect("curve region");
                g.set(id, disk_gleam(d));
            }
            (NewRegionKind::Annulus, []) => {}
            _ => return Err(Error::Curve(format!("curve {ci} needs exactly one disk attachment iff it bounds a disk"))),
        }
    }
    if let Some(d) = disks.iter().find(|d| d.disk >= curves.len()) {
        return Err(Error::Curve(format!("disk attachment {} names no curve", d.disk)));
    }
    let sums = region_gleams(events);
    for (&r, _) in &sums.0 {
        if r >= p.regions.len() || matches!(origins[r], RegionOrigin::Curve(_)) {
            return Err(Error::Curve(format!("event names region {r}, which is not an old region piece")));
        }
        if p.regions[r].kind != RegionKind::Internal {
            return Err(Error::Curve(format!("event names boundary region {r}")));
        }
    }
    for r in p.internal_regions() {
        if matches!(origins[r], RegionOrigin::Piece { .. }) {
            g.set(r, sums.get(r).unwrap_or(0));
        }
    }
    if !crate::poly::check_admissible(&p, &g)? {
        return Err(Error::Curve("event contributions disagree with the Z/2 gleams".into()));
    }
    Ok((p, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn event_lines_round_trip() {
        let ev = ProjectionEvent::new(EventKind::SingIntersection, -1, vec![(5, -1), (6, -1)]).unwrap();
        assert_eq!(ev.to_line(), "sing_intersection -1 5:-1 6:-1");
        assert_eq!(ProjectionEvent::from_line(&ev.to_line()).unwrap(), ev);
    }

    #[test]
    fn contribution_limits() {
        assert!(ProjectionEvent::new(EventKind::SingIntersection, 1, vec![(0, 1); 3]).is_err());
        assert!(ProjectionEvent::new(EventKind::Crossing, 1, vec![(0, 1); 4]).is_ok());
        assert!(ProjectionEvent::new(EventKind::Crossing, 1, vec![(0, 1); 5]).is_err());
        assert!(ProjectionEvent::new(EventKind::Crossing, 1, vec![(0, 2)]).is_err());
    }

    #[test]
    fn disk_gleams() {
        let d = DiskAttachment { disk: 0, positives: 0, negatives: 0, base_framing: 0 };
        assert_eq!(disk_gleam(&d), 0);
        let d = DiskAttachment { disk: 0, positives: 2, negatives: 30, base_framing: -15 };
        assert_eq!(disk_gleam(&d), -28);
    }

    #[test]
    fn empty_events() {
        assert!(region_gleams(&[]).0.is_empty());
    }
}
