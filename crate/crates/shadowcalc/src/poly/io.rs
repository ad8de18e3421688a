//! Line-oriented text format and its JSON counterpart.
//!
//! ```text
//! VERTICES
//! 0 1
//! EDGES
//! 0 seg 0:0 0:1
//! 1 circ
//! REGIONS
//! 0 internal disk=1 genus=0 orientable=1 label=R1 | 0+:0:1 2-:1:3
//! GLEAMS
//! 0 -30
//! BOUNDARY
//! 0 region=4
//! EVENTS
//! sing_intersection -1 5:-1 6:-1
//! END
//! ```
//!
//! A pass is `edge` + direction sign, the slot, and the germ turned into at the arrival
//! vertex (`-` on circles).

use serde::{Deserialize, Serialize};

use super::{BoundaryCurve, Edge, GermRef, GleamAssignment, Pass, Region, RegionKind, SimplePolyhedron};
use crate::error::{Error, Result};
use crate::gleam_ledger::ProjectionEvent;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyFile {
    pub poly: SimplePolyhedron,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gleams: Option<GleamAssignment>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub events: Vec<ProjectionEvent>,
}

impl PolyFile {
    pub fn new(poly: SimplePolyhedron, gleams: Option<GleamAssignment>) -> Self {
        PolyFile { poly, gleams, events: Vec::new() }
    }
}

fn fmt_pass(q: &Pass) -> String {
    let c = match q.corner {
        Some(g) => g.to_string(),
        None => "-".to_string(),
    };
    format!("{}{}:{}:{}", q.edge, if q.forward { '+' } else { '-' }, q.slot, c)
}

fn fmt_germ(g: &GermRef) -> String {
    format!("{}:{}", g.vertex, g.germ)
}

pub fn emit_text(f: &PolyFile) -> String {
    let p = &f.poly;
    let mut s = String::new();
    s.push_str("VERTICES\n");
    let ids: Vec<String> = (0..p.vertices).map(|v| v.to_string()).collect();
    s.push_str(&ids.join(" "));
    s.push('\n');
    s.push_str("EDGES\n");
    for (i, e) in p.edges.iter().enumerate() {
        match e {
            Edge::Segment { start, end } => {
                s.push_str(&format!("{i} seg {} {}\n", fmt_germ(start), fmt_germ(end)))
            }
            Edge::Circle => s.push_str(&format!("{i} circ\n")),
        }
    }
    s.push_str("REGIONS\n");
    for (i, r) in p.regions.iter().enumerate() {
        let kind = match r.kind {
            RegionKind::Internal => "internal",
            RegionKind::Boundary => "boundary",
        };
        s.push_str(&format!(
            "{i} {kind} disk={} genus={} orientable={}",
            r.is_disk as u8, r.genus, r.orientable as u8
        ));
        if let Some(l) = &r.label {
            s.push_str(&format!(" label={l}"));
        }
        for c in &r.circuits {
            s.push_str(" |");
            for q in c {
                s.push(' ');
                s.push_str(&fmt_pass(q));
            }
        }
        s.push('\n');
    }
    if let Some(g) = &f.gleams {
        s.push_str("GLEAMS\n");
        for (r, h) in &g.0 {
            s.push_str(&format!("{r} {h}\n"));
        }
    }
    if !p.boundary_curves.is_empty() {
        s.push_str("BOUNDARY\n");
        for (i, b) in p.boundary_curves.iter().enumerate() {
            s.push_str(&format!("{i} region={}\n", b.region));
        }
    }
    if !f.events.is_empty() {
        s.push_str("EVENTS\n");
        for ev in &f.events {
            s.push_str(&ev.to_line());
            s.push('\n');
        }
    }
    s.push_str("END\n");
    s
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse::<T>().map_err(|_| perr(line, format!("bad number '{tok}'")))
}

fn parse_germ(tok: &str, line: usize) -> Result<GermRef> {
    let (v, g) = tok.split_once(':').ok_or_else(|| perr(line, format!("bad germ '{tok}'")))?;
    Ok(GermRef { vertex: num(v, line)?, germ: num(g, line)? })
}

fn parse_pass(tok: &str, line: usize) -> Result<Pass> {
    let mut parts = tok.split(':');
    let head = parts.next().unwrap_or("");
    let slot = parts.next().ok_or_else(|| perr(line, format!("bad pass '{tok}'")))?;
    let corner = parts.next().ok_or_else(|| perr(line, format!("bad pass '{tok}'")))?;
    if parts.next().is_some() || head.len() < 2 {
        return Err(perr(line, format!("bad pass '{tok}'")));
    }
    let (e, dir) = head.split_at(head.len() - 1);
    let forward = match dir {
        "+" => true,
        "-" => false,
        _ => return Err(perr(line, format!("bad direction in '{tok}'"))),
    };
    let corner = if corner == "-" { None } else { Some(num(corner, line)?) };
    Ok(Pass { edge: num(e, line)?, forward, slot: num(slot, line)?, corner })
}

fn kv<'a>(tok: &'a str, key: &str, line: usize) -> Result<&'a str> {
    tok.strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| perr(line, format!("expected {key}=..., found '{tok}'")))
}

fn flag(tok: &str, key: &str, line: usize) -> Result<bool> {
    match kv(tok, key, line)? {
        "1" => Ok(true),
        "0" => Ok(false),
        v => Err(perr(line, format!("bad flag {key}={v}"))),
    }
}

fn check_id(tok: Option<&str>, expect: usize, line: usize) -> Result<()> {
    let t = tok.ok_or_else(|| perr(line, "missing id"))?;
    let id: usize = num(t, line)?;
    if id != expect {
        return Err(perr(line, format!("expected id {expect}, found {id}")));
    }
    Ok(())
}

#[derive(PartialEq, Clone, Copy)]
enum Section {
    None,
    Vertices,
    Edges,
    Regions,
    Gleams,
    Boundary,
    Events,
    Done,
}

pub fn parse_text(text: &str) -> Result<PolyFile> {
    let mut sec = Section::None;
    let mut vertices: Option<usize> = None;
    let mut edges = Vec::new();
    let mut regions = Vec::new();
    let mut gleams: Option<GleamAssignment> = None;
    let mut boundary = Vec::new();
    let mut events = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let ln = k + 1;
        let line = raw.trim();
        if line.starts_with('#') || (line.is_empty() && sec != Section::Vertices) {
            continue;
        }
        let next = match line {
            "VERTICES" => Some(Section::Vertices),
            "EDGES" => Some(Section::Edges),
            "REGIONS" => Some(Section::Regions),
            "GLEAMS" => Some(Section::Gleams),
            "BOUNDARY" => Some(Section::Boundary),
            "EVENTS" => Some(Section::Events),
            "END" => Some(Section::Done),
            _ => None,
        };
        if let Some(s) = next {
            if s == Section::Gleams {
                gleams = Some(GleamAssignment::new());
            }
            sec = s;
            continue;
        }
        match sec {
            Section::None | Section::Done => return Err(perr(ln, "content outside a section")),
            Section::Vertices => {
                if vertices.is_some() {
                    return Err(perr(ln, "vertex ids already given"));
                }
                let ids: Vec<usize> = line.split_whitespace().map(|t| num(t, ln)).collect::<Result<_>>()?;
                if ids.iter().enumerate().any(|(i, &v)| i != v) {
                    return Err(perr(ln, "vertex ids must be 0..V in order"));
                }
                vertices = Some(ids.len());
            }
            Section::Edges => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                check_id(toks.first().copied(), edges.len(), ln)?;
                match toks.get(1).copied() {
                    Some("seg") if toks.len() == 4 => edges.push(Edge::Segment {
                        start: parse_germ(toks[2], ln)?,
                        end: parse_germ(toks[3], ln)?,
                    }),
                    Some("circ") if toks.len() == 2 => edges.push(Edge::Circle),
                    _ => return Err(perr(ln, "bad edge line")),
                }
            }
            Section::Regions => {
                let mut chunks = line.split('|');
                let head: Vec<&str> = chunks.next().unwrap_or("").split_whitespace().collect();
                check_id(head.first().copied(), regions.len(), ln)?;
                if head.len() < 5 || head.len() > 6 {
                    return Err(perr(ln, "bad region header"));
                }
                let kind = match head[1] {
                    "internal" => RegionKind::Internal,
                    "boundary" => RegionKind::Boundary,
                    v => return Err(perr(ln, format!("bad region kind '{v}'"))),
                };
                let is_disk = flag(head[2], "disk", ln)?;
                let genus: u32 = num(kv(head[3], "genus", ln)?, ln)?;
                let orientable = flag(head[4], "orientable", ln)?;
                let label = match head.get(5) {
                    Some(t) => Some(kv(t, "label", ln)?.to_string()),
                    None => None,
                };
                let mut circuits = Vec::new();
                for ch in chunks {
                    let c: Vec<Pass> = ch.split_whitespace().map(|t| parse_pass(t, ln)).collect::<Result<_>>()?;
                    if c.is_empty() {
                        return Err(perr(ln, "empty circuit"));
                    }
                    circuits.push(c);
                }
                regions.push(Region { kind, circuits, is_disk, genus, orientable, label });
            }
            Section::Gleams => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(perr(ln, "bad gleam line"));
                }
                let g = gleams.as_mut().expect("gleam section open");
                let r: usize = num(toks[0], ln)?;
                if g.0.keys().next_back().is_some_and(|&last| last >= r) {
                    return Err(perr(ln, "gleam region ids must increase"));
                }
                g.set(r, num(toks[1], ln)?);
            }
            Section::Boundary => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                check_id(toks.first().copied(), boundary.len(), ln)?;
                if toks.len() != 2 {
                    return Err(perr(ln, "bad boundary line"));
                }
                boundary.push(BoundaryCurve { region: num(kv(toks[1], "region", ln)?, ln)? });
            }
            Section::Events => events.push(ProjectionEvent::from_line(line).map_err(|m| perr(ln, m))?),
        }
    }
    if sec != Section::Done {
        return Err(perr(text.lines().count(), "missing END"));
    }
    let vertices = vertices.unwrap_or(0);
    Ok(PolyFile {
        poly: SimplePolyhedron { vertices, edges, regions, boundary_curves: boundary },
        gleams,
        events,
    })
}

pub fn to_json(f: &PolyFile) -> String {
    serde_json::to_string_pretty(f).expect("serializable") + "\n"
}

pub fn from_json(text: &str) -> Result<PolyFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
}
