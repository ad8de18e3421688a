//! Linear chains of true vertices `u_0 .. u_{V-1}`.
//!
//! Germs at each vertex: 0 and 1 face left, 2 and 3 face right. Edges in order: a loop at
//! `u_0` from germ 0 to germ 1, then for each gap a top edge (germ 2 to germ 0) and a
//! bottom edge (germ 3 to germ 1), then a loop at `u_{V-1}` from germ 2 to germ 3. Each
//! edge takes a permutation index choosing how its end slots pair with partner germs.

use super::skeleton::{assemble, RegionSpec, SkEdge, Skeleton};
use super::{others, GermRef, SimplePolyhedron};
use crate::error::Result;

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn seg(a: GermRef, b: GermRef, choice: usize) -> SkEdge {
    let pa = others(a.germ);
    let ob = others(b.germ);
    let p = PERMS[choice % 6];
    SkEdge::Seg { start: a, end: b, pa, pb: [ob[p[0]], ob[p[1]], ob[p[2]]] }
}

pub(crate) fn chain_skeleton(v: usize, choices: &[usize]) -> Result<Skeleton> {
    assert!(v >= 1 && choices.len() == 2 * v);
    let g = |vertex: usize, germ: u8| GermRef { vertex, germ };
    let mut edges = Vec::with_capacity(2 * v);
    let mut k = 0;
    edges.push(seg(g(0, 0), g(0, 1), choices[k]));
    k += 1;
    for i in 0..v - 1 {
        edges.push(seg(g(i, 2), g(i + 1, 0), choices[k]));
        edges.push(seg(g(i, 3), g(i + 1, 1), choices[k + 1]));
        k += 2;
    }
    edges.push(seg(g(v - 1, 2), g(v - 1, 3), choices[k]));
    Skeleton::new(v, edges)
}

/// The chain with every circuit capped by a disk.
pub fn chain_polyhedron(v: usize, choices: &[usize]) -> Result<SimplePolyhedron> {
    let sk = chain_skeleton(v, choices)?;
    let specs = sk.circuits()?.into_iter().map(RegionSpec::disk).collect();
    Ok(assemble(&sk, specs))
}

/// Edge choices for the two chain patterns used by the family generators.
pub fn chain_skeleton_choices(v: usize, pattern: ChainPattern) -> Vec<usize> {
    let mut ch = vec![0];
    match pattern {
        ChainPattern::Alternating => {
            for b in 0..v - 1 {
                if b % 2 == 0 {
                    ch.extend([3, 5]);
                } else {
                    ch.extend([3, 3]);
                }
            }
        }
        ChainPattern::Contractible => {
            for b in 0..v - 1 {
                if b == 0 {
                    ch.extend([0, 1]);
                } else {
                    ch.extend([3, 3]);
                }
            }
        }
    }
    ch.push(0);
    ch
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainPattern {
    /// Bigons alternate between odd and even Z/2 gleam; two long circuits of length `2V`.
    Alternating,
    /// One long circuit; the capped complex is contractible.
    Contractible,
}
