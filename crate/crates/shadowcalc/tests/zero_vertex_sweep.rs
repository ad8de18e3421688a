use shadowcalc::three_manifolds::{boundary_description, homeo_zero_vertex, intersection_form, ZeroVertexShadow};

fn x3_box() -> Vec<ZeroVertexShadow> {
    let mut v = Vec::new();
    for l in -4..=4 {
        for m in -4..=4 {
            for n in -4..=4 {
                v.push(ZeroVertexShadow::X3 { l, m, n });
            }
        }
    }
    v
}

fn x2_box() -> Vec<ZeroVertexShadow> {
    let mut v = Vec::new();
    for n in -8..=8 {
        for r2 in (-7..=7).step_by(2) {
            v.push(ZeroVertexShadow::X2 { n, r2 });
        }
    }
    v
}

fn consistent(a: &ZeroVertexShadow, b: &ZeroVertexShadow) -> Result<(), String> {
    let (fa, fb) = (intersection_form(a), intersection_form(b));
    if (fa.determinant(), fa.signature(), fa.is_even(), fa.definiteness(), fa.degenerate())
        != (fb.determinant(), fb.signature(), fb.is_even(), fb.definiteness(), fb.degenerate())
    {
        return Err(format!("forms differ: {a:?} {fa} vs {b:?} {fb}"));
    }
    let (ba, bb) = (boundary_description(a).unwrap(), boundary_description(b).unwrap());
    if !ba.equivalent(&bb) {
        return Err(format!("boundaries differ: {a:?} {ba} vs {b:?} {bb}"));
    }
    Ok(())
}

#[test]
fn homeo_implies_matching_invariants() {
    let mut bad = Vec::new();
    for bx in [x3_box(), x2_box()] {
        for a in &bx {
            for b in &bx {
                if homeo_zero_vertex(a, b).unwrap() {
                    if let Err(e) = consistent(a, b) {
                        bad.push(e);
                    }
                }
            }
        }
    }
    assert!(bad.is_empty(), "{} failures, first: {:?}", bad.len(), &bad[..bad.len().min(5)]);
}

fn relation(bx: &[ZeroVertexShadow]) -> Vec<Vec<usize>> {
    bx.iter()
        .map(|a| (0..bx.len()).filter(|&j| homeo_zero_vertex(a, &bx[j]).unwrap()).collect())
        .collect()
}

#[test]
fn reflexive_symmetric_transitive_in_box() {
    for bx in [x3_box(), x2_box()] {
        let rel = relation(&bx);
        for (i, s) in rel.iter().enumerate() {
            assert!(s.contains(&i), "not reflexive at {:?}", bx[i]);
            for &j in s {
                assert!(rel[j].contains(&i), "not symmetric: {:?} {:?}", bx[i], bx[j]);
                for &k in &rel[j] {
                    assert!(s.contains(&k), "not transitive: {:?} {:?} {:?}", bx[i], bx[j], bx[k]);
                }
            }
        }
    }
}

#[test]
fn x2_homeo_preserves_n_plus_4r() {
    let bx = x2_box();
    for a in &bx {
        for b in &bx {
            if let (ZeroVertexShadow::X2 { n, r2 }, ZeroVertexShadow::X2 { n: n2, r2: s2 }) = (a, b) {
                if homeo_zero_vertex(a, b).unwrap() {
                    assert_eq!(n + 2 * r2, n2 + 2 * s2);
                }
            }
        }
    }
}
