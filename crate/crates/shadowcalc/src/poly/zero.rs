//! The three special polyhedra without true vertices: disks glued along one triple circle
//! by maps of total degree three.

use super::{Edge, Pass, Region, RegionKind, SimplePolyhedron};

fn circle_region(label: &str, slots: &[u8]) -> Region {
    Region {
        kind: RegionKind::Internal,
        circuits: vec![slots.iter().map(|&slot| Pass { edge: 0, forward: true, slot, corner: None }).collect()],
        is_disk: true,
        genus: 0,
        orientable: true,
        label: Some(label.to_string()),
    }
}

fn on_circle(regions: Vec<Region>) -> SimplePolyhedron {
    SimplePolyhedron { vertices: 0, edges: vec![Edge::Circle], regions, boundary_curves: Vec::new() }
}

/// One disk attached by a degree-3 map.
pub fn x1() -> SimplePolyhedron {
    on_circle(vec![circle_region("R1", &[0, 1, 2])])
}

/// `R2` attached by a degree-2 map and `R3` by a degree-1 map; `R3` has odd Z/2 gleam.
pub fn x2() -> SimplePolyhedron {
    on_circle(vec![circle_region("R2", &[0, 1]), circle_region("R3", &[2])])
}

/// Three disks each attached by a degree-1 map.
pub fn x3() -> SimplePolyhedron {
    on_circle(vec![circle_region("R1", &[0]), circle_region("R2", &[1]), circle_region("R3", &[2])])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{check_admissible, homology, stats, validate, z2_gleam, GleamAssignment};

    #[test]
    fn zero_vertex_examples() {
        let s = stats(&x1()).unwrap();
        assert_eq!((s.v, s.e, s.r_int, s.r_bdry, s.chi, s.is_special), (0, 1, 1, 0, 1, true));
        let h = homology(&x1()).unwrap();
        assert_eq!((h.b0, h.b1, h.b2), (1, 0, 0));
        assert_eq!(h.torsion[1], vec![3]);
        let h = homology(&x3()).unwrap();
        assert_eq!((h.b0, h.b1, h.b2), (1, 0, 2));
        assert!(validate(&x3()).is_empty());
        assert_eq!(z2_gleam(&x2(), 1).unwrap(), 1);
        assert_eq!(z2_gleam(&x2(), 0).unwrap(), 0);
        assert_eq!(z2_gleam(&x1(), 0).unwrap(), 0);
        let g = |a: i64, b: i64| GleamAssignment([(0, a), (1, b)].into_iter().collect());
        assert!(check_admissible(&x2(), &g(6, 1)).unwrap());
        assert!(!check_admissible(&x2(), &g(6, 2)).unwrap());
    }

    #[test]
    fn deleted_circuit_reports_one_violation() {
        let mut p = x3();
        p.regions[2].circuits.clear();
        assert_eq!(validate(&p), vec!["edge has 2 of 3 passes claimed (edge 0)".to_string()]);
    }
}
