use shadowcalc::families::{build_shadow, coefficients, FamilyParams, Stage};
use shadowcalc::poly::{check_admissible, collapse_all, homology, stats, v_count, validate};

fn fp(n: u32, k: u32) -> FamilyParams {
    FamilyParams::new(n, k).unwrap()
}

#[test]
fn q_double_prime_table() {
    let (p, g) = build_shadow(fp(1, 0), Stage::Qpp).unwrap();
    assert!(validate(&p).is_empty());
    let s = stats(&p).unwrap();
    assert_eq!((s.v, s.r_int, s.r_bdry, s.is_special), (2, 5, 0, true));
    let at = |l: &str| g.get(p.region_by_label(l).unwrap()).unwrap();
    assert_eq!([at("R1"), at("R2"), at("R1_1"), at("R2_1"), at("R2_2")], [-30, -30, -13, 14, 16]);
    assert!(check_admissible(&p, &g).unwrap());
    let v = |l: &str| v_count(&p, p.region_by_label(l).unwrap());
    assert_eq!([v("R1"), v("R2"), v("R1_1"), v("R2_1"), v("R2_2")], [4, 4, 2, 1, 1]);
}

#[test]
fn q_prime_collapses_to_q_double_prime() {
    for n in 1..=4 {
        let (p, g) = build_shadow(fp(n, 1), Stage::Qp).unwrap();
        assert!(validate(&p).is_empty(), "{:?}", validate(&p));
        let s = stats(&p).unwrap();
        let n = n as usize;
        assert_eq!((s.v, s.r_int, s.r_bdry), (9 * n, 10 * n + 5, 3 * n + 2));
        let (c, cg) = collapse_all(&p, &g).unwrap();
        let (q, qg) = build_shadow(fp(n as u32, 1), Stage::Qpp).unwrap();
        let sc = stats(&c).unwrap();
        assert_eq!((sc.v, sc.r_int, sc.r_bdry, sc.is_special), (2 * n, 2 * n + 3, 0, true));
        assert_eq!(cg.multiset(), qg.multiset());
        for r in 0..q.regions.len() {
            let l = q.regions[r].label.clone().unwrap();
            let cr = c.region_by_label(&l).unwrap();
            assert_eq!(cg.get(cr), qg.get(r), "{l}");
        }
        assert_eq!(homology(&c).unwrap(), homology(&p).unwrap());
    }
}

#[test]
fn p_stages() {
    for n in 1..=3 {
        let d = coefficients(fp(n, 0)).unwrap();
        let s: i64 = d.l.iter().sum();
        let (pp, g) = build_shadow(fp(n, 0), Stage::Ppp).unwrap();
        assert_eq!(stats(&pp).unwrap().v as i64, s + n as i64 - 3);
        assert!(homology(&pp).unwrap().is_point());
        let (p1, g1) = build_shadow(fp(n, 0), Stage::Pp).unwrap();
        assert_eq!(stats(&p1).unwrap().v as i64, s + n as i64 - 3 + 4 * n as i64 + 2);
        let (c, cg) = collapse_all(&p1, &g1).unwrap();
        assert_eq!(stats(&c).unwrap().v, pp.vertices);
        assert!(stats(&c).unwrap().is_special);
        assert_eq!(cg.total(), g.total());
        let (w, wg) = build_shadow(fp(n, 0), Stage::Wpp).unwrap();
        let sw = stats(&w).unwrap();
        assert!(sw.is_special);
        assert_eq!(sw.v as i64, s + n as i64 - 1);
        assert!(check_admissible(&w, &wg).unwrap());
        let h = homology(&w).unwrap();
        assert_eq!((h.b0, h.b1, h.b2), (1, 0, 1));
    }
}
