//! Integral homology of a simple polyhedron from a CW structure:
//! 0-cells are the true vertices and one point per triple circle, 1-cells the triple
//! edges, and every region is one 2-cell. A non-disk region adds a base point, arcs to
//! each attaching circuit and boundary circle, and the handle or cross-cap loops of its
//! surface, so its 2-cell boundary is the sum of its circuits, boundary loops and
//! twice each cross-cap.

use serde::{Deserialize, Serialize};

use super::invariants::require_valid;
use super::snf::smith_diagonal;
use super::{Edge, SimplePolyhedron};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homology {
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
    /// Elementary divisors greater than one, per degree 0, 1, 2.
    pub torsion: [Vec<i64>; 3],
}

impl Homology {
    pub fn is_point(&self) -> bool {
        self.b0 == 1 && self.b1 == 0 && self.b2 == 0 && self.torsion.iter().all(|t| t.is_empty())
    }
}

struct Cells {
    n0: usize,
    d1: Vec<Vec<(usize, i64)>>,
    d2: Vec<Vec<(usize, i64)>>,
}

impl Cells {
    fn point(&mut self) -> usize {
        self.n0 += 1;
        self.n0 - 1
    }

    fn arc(&mut self, from: usize, to: usize) -> usize {
        let mut b = vec![];
        if from != to {
            b.push((to, 1));
            b.push((from, -1));
        }
        self.d1.push(b);
        self.d1.len() - 1
    }
}

fn build(p: &SimplePolyhedron) -> Cells {
    let mut c = Cells { n0: p.vertices, d1: Vec::new(), d2: Vec::new() };
    let mut circle_point = vec![usize::MAX; p.edges.len()];
    for (i, e) in p.edges.iter().enumerate() {
        match e {
            Edge::Segment { start, end } => {
                c.arc(start.vertex, end.vertex);
            }
            Edge::Circle => {
                let q = c.point();
                circle_point[i] = q;
                c.arc(q, q);
            }
        }
    }
    for (ri, r) in p.regions.iter().enumerate() {
        let mut chain: Vec<(usize, i64)> = Vec::new();
        for circuit in &r.circuits {
            for q in circuit {
                chain.push((q.edge, if q.forward { 1 } else { -1 }));
            }
        }
        if !r.is_disk {
            let base = c.point();
            for circuit in &r.circuits {
                let Some(q) = circuit.first() else { continue };
                let at = match &p.edges[q.edge] {
                    Edge::Segment { start, end } => {
                        if q.forward {
                            start.vertex
                        } else {
                            end.vertex
                        }
                    }
                    Edge::Circle => circle_point[q.edge],
                };
                c.arc(base, at);
            }
            for _ in 0..p.boundary_count(ri) {
                let q = c.point();
                c.arc(base, q);
                let l = c.arc(q, q);
                chain.push((l, 1));
            }
            if r.orientable {
                for _ in 0..(2 * r.genus) {
                    c.arc(base, base);
                }
            } else {
                for _ in 0..r.genus {
                    let l = c.arc(base, base);
                    chain.push((l, 2));
                }
            }
        }
        c.d2.push(chain);
    }
    c
}

fn dense(cols: &[Vec<(usize, i64)>], nrows: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; cols.len()]; nrows];
    for (j, col) in cols.iter().enumerate() {
        for &(i, v) in col {
            m[i][j] += v;
        }
    }
    m
}

/// Betti numbers and torsion coefficients by Smith normal form.
pub fn homology(p: &SimplePolyhedron) -> Result<Homology> {
    require_valid(p)?;
    let c = build(p);
    let n1 = c.d1.len();
    let n2 = c.d2.len();
    let s1 = smith_diagonal(&dense(&c.d1, c.n0), n1)?;
    let s2 = smith_diagonal(&dense(&c.d2, n1), n2)?;
    let (r1, r2) = (s1.len(), s2.len());
    Ok(Homology {
        b0: c.n0 - r1,
        b1: n1 - r1 - r2,
        b2: n2 - r2,
        torsion: [
            s1.iter().copied().filter(|&d| d > 1).collect(),
            s2.iter().copied().filter(|&d| d > 1).collect(),
            Vec::new(),
        ],
    })
}
