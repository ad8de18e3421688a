//! Acceptance criteria 1-10. Prints one line per criterion; exits nonzero on any failure.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;

use shadowcalc::criterion::ik_check;
use shadowcalc::families::{bounds, build_shadow, coefficients, cork_checks, w_prime_site, FamilyParams, Stage, D};
use shadowcalc::poly::{
    add_bubble, chain_polyhedron, collapse_all, homology, stats, v_count, validate, x1, x2, x3, zero_two_move, GleamAssignment,
    SimplePolyhedron,
};
use shadowcalc::three_manifolds::{
    alexander_from_seifert, boundary_description, casson_difference_closed, casson_difference_surgery, homeo_zero_vertex,
    intersection_form, seifert_matrix, ZeroVertexShadow,
};

const PI_50: &str = "314159265358979323846264338327950288419716939937510";

/// `ceil(offset + sqrt(4 pi^2 n - num/den))` from 50 digits of pi, or `None` when the
/// enclosure straddles an integer.
fn oracle_ceil(n: u64, num: i64, den: i64, offset_halves: i64) -> Option<i64> {
    let s = BigInt::from(10u32).pow(50);
    let pi_lo: BigInt = PI_50.parse().unwrap();
    let pi_hi: BigInt = &pi_lo + 1;
    let c: BigInt = &s * &s * num / den;
    let x_lo: BigInt = BigInt::from(4 * n) * &pi_lo * &pi_lo - &c;
    let x_hi: BigInt = BigInt::from(4 * n) * &pi_hi * &pi_hi - &c;
    let off: BigInt = &s * offset_halves / 2;
    let lo = x_lo.sqrt() + &off;
    let hi = x_hi.sqrt() + 1 + &off;
    let ceil = |v: &BigInt| -> BigInt { (v + &s - 1) / &s };
    let (a, b) = (ceil(&lo), ceil(&hi));
    (a == b).then(|| a.try_into().unwrap())
}

struct Oracle {
    m: Vec<i64>,
    l: Vec<i64>,
    d: i64,
}

fn oracle(n: u32, k: u32) -> Oracle {
    let nn = n as u64;
    let a = oracle_ceil(nn, 1, 1, 0).expect("A decided");
    let b = oracle_ceil(nn, 1, 4, 0).expect("B decided");
    let mc = oracle_ceil(nn, 1, 1, 1).expect("m decided");
    let n = n as usize;
    let m = (1..=n).map(|i| if i == 1 { -mc - k as i64 } else { -mc }).collect();
    let l = (1..=n + 1)
        .map(|j| match () {
            _ if j == 1 => b,
            _ if n % 2 == 0 && j == n => 2 * b - 1,
            _ if n % 2 == 1 && j == n + 1 => b + 1,
            _ if n % 2 == 0 && j == n + 1 => b,
            _ => a,
        })
        .collect();
    let ni = n as i64;
    let d = if n % 2 == 1 { (ni - 1) * a + ni + 2 * b } else { (ni - 2) * a + ni + 4 * b - 2 };
    Oracle { m, l, d }
}

fn fp(n: u32, k: u32) -> FamilyParams {
    FamilyParams::new(n, k).unwrap()
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn label_gleams(p: &SimplePolyhedron, g: &GleamAssignment) -> BTreeMap<String, i64> {
    p.internal_regions()
        .map(|r| (p.regions[r].label.clone().unwrap_or_else(|| format!("#{r}")), g.get(r).unwrap()))
        .collect()
}

fn criterion_1() -> Check {
    let mut cases = 0;
    for n in 1..=8u32 {
        for k in 0..=2u32 {
            let o = oracle(n, k);
            let d = coefficients(fp(n, k)).map_err(|e| e.to_string())?;
            ensure(d.m == o.m && d.l == o.l, || format!("coefficients differ at n={n} k={k}"))?;
            let (p, g) = build_shadow(fp(n, k), Stage::Qpp).map_err(|e| e.to_string())?;
            let s = stats(&p).map_err(|e| e.to_string())?;
            ensure(s.v == 2 * n as usize && s.r_int == 2 * n as usize + 3 && s.r_bdry == 0 && s.is_special, || {
                format!("Q'' counts at n={n} k={k}: {s:?}")
            })?;
            let sum: i64 = o.l.iter().sum();
            let mut want: BTreeMap<String, (i64, usize)> = BTreeMap::new();
            want.insert("R1".into(), (-2 * sum, 4 * n as usize));
            want.insert("R2".into(), (-2 * sum, 4 * n as usize));
            for i in 1..=n as usize {
                want.insert(format!("R1_{i}"), (2 * o.m[i - 1] + 1, 2));
            }
            for j in 1..=n as usize + 1 {
                let v = if j == 1 || j == n as usize + 1 { 1 } else { 2 };
                want.insert(format!("R2_{j}"), (2 * o.l[j - 1], v));
            }
            let got: BTreeMap<String, (i64, usize)> = p
                .internal_regions()
                .map(|r| (p.regions[r].label.clone().unwrap_or_default(), (g.get(r).unwrap(), v_count(&p, r))))
                .collect();
            ensure(got == want, || format!("Q'' table at n={n} k={k}: got {got:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("Q'' gleams and v-values match the region table, {cases} cases"))
}

fn criterion_2() -> Check {
    for n in 1..=8u32 {
        let k = n % 3;
        let o = oracle(n, k);
        let sum: i64 = o.l.iter().sum();
        let (qp, qg) = build_shadow(fp(n, k), Stage::Qp).map_err(|e| e.to_string())?;
        let nn = n as usize;
        ensure(stats(&qp).unwrap().v == 9 * nn, || format!("Q' has {} vertices at n={n}", qp.vertices))?;
        let mut table: BTreeMap<String, i64> = BTreeMap::new();
        table.insert("R1.D1".into(), -2 * sum);
        table.insert("R2.D2".into(), -2 * sum + 2 * n as i64);
        table.insert("R1.S0".into(), 0);
        for i in 1..=nn {
            table.insert(format!("R1_{i}.D1_{i}"), 2 * o.m[i - 1]);
            table.insert(format!("R1.S1_{i}"), 0);
            table.insert(format!("R1.S2_{i}"), 0);
            table.insert(format!("R2.T{i}_1"), -1);
            table.insert(format!("R2.T{i}_2"), -1);
            table.insert(format!("R2.T{i}_3"), 0);
            table.insert(format!("R2.T{i}_4"), 0);
            table.insert(format!("R1_{i}.T{i}_5"), 1);
        }
        for j in 1..=nn + 1 {
            table.insert(format!("R2_{j}.D2_{j}"), 2 * o.l[j - 1]);
            table.insert(format!("R2_{j}.S{j}"), 0);
        }
        ensure(label_gleams(&qp, &qg) == table, || format!("Q' subregion gleams differ at n={n}"))?;
        let (c, cg) = collapse_all(&qp, &qg).map_err(|e| e.to_string())?;
        let (qpp, qppg) = build_shadow(fp(n, k), Stage::Qpp).map_err(|e| e.to_string())?;
        ensure(stats(&c).unwrap().v == 2 * nn, || format!("collapsed Q' has {} vertices", c.vertices))?;
        ensure(label_gleams(&c, &cg) == label_gleams(&qpp, &qppg), || format!("collapse merge differs at n={n}"))?;

        let (pp, pg) = build_shadow(fp(n, k), Stage::Pp).map_err(|e| e.to_string())?;
        let (ppp, pppg) = build_shadow(fp(n, k), Stage::Ppp).map_err(|e| e.to_string())?;
        ensure(pp.vertices - ppp.vertices == 4 * nn + 2, || format!("P' -> P'' drop is {} at n={n}", pp.vertices - ppp.vertices))?;
        let (pc, pcg) = collapse_all(&pp, &pg).map_err(|e| e.to_string())?;
        ensure(pc.vertices == ppp.vertices && pcg.total() == pppg.total(), || format!("P' collapse at n={n}"))?;
    }
    Ok("Q' -> Q'' (9n -> 2n) and P' -> P'' (drop 4n+2) with merged gleams, n <= 8".into())
}

fn criterion_3() -> Check {
    let mut cases = 0;
    for n in 1..=20u32 {
        for k in 0..=5u32 {
            for st in [Stage::Qpp, Stage::Wvar] {
                let (p, g) = build_shadow(fp(n, k), st).map_err(|e| e.to_string())?;
                let r = ik_check(&p, &g).map_err(|e| e.to_string())?;
                ensure(r.verdict && r.complexity() == Some(2 * n as usize), || format!("{st} fails at n={n} k={k}"))?;
                cases += 1;
            }
        }
    }
    let (p, g) = build_shadow(fp(1, 0), Stage::Wvar).unwrap();
    let r = ik_check(&p, &g).unwrap();
    let r1 = r.rows.iter().find(|x| x.label.as_deref() == Some("R1")).unwrap();
    ensure(r1.gleam_half_units == -28 && r1.slope_length_sq == 800, || format!("Wvar(1,0) R1 row {r1:?}"))?;
    Ok(format!("exact verdicts true on Q'' and the W variant, {cases} cases"))
}

fn criterion_4() -> Check {
    for n in 1..=100u32 {
        let b = bounds(fp(n, 0)).map_err(|e| e.to_string())?;
        let d = D(n).map_err(|e| e.to_string())?;
        let o = oracle(n, 0);
        ensure(b.pair_upper == d && d == o.d && b.pair_upper - b.cork_upper == 2 && b.lower == 2 * n as i64, || {
            format!("bounds at n={n}: {b:?}, D={d}, oracle {}", o.d)
        })?;
    }
    let small = [oracle(1, 0).d, oracle(2, 0).d, oracle(3, 0).d];
    ensure(small == [15, 36, 47], || format!("50-digit oracle gives {small:?}"))?;
    ensure([D(1).unwrap(), D(2).unwrap(), D(3).unwrap()] == [15, 36, 47], || "D(1..3)".into())?;
    Ok("pair_upper = D(n), gap 2, n <= 100; D(1..3) = 15, 36, 47".into())
}

fn criterion_5() -> Check {
    for n in 1..=100u32 {
        for k in 0..=10u32 {
            let c = cork_checks(fp(n, k)).map_err(|e| e.to_string())?;
            let o = oracle(n, k);
            let lk: i64 = o.l.iter().enumerate().map(|(i, &l)| if (i + 1) % 2 == 0 { l } else { -l }).sum();
            let tb = o.l.iter().sum::<i64>() - 1;
            ensure(lk.abs() == 1 && tb >= 1 && c.linking_number == lk && c.tb_number == tb && c.is_mazur_candidate, || {
                format!("cork checks at n={n} k={k}: {c:?}")
            })?;
        }
    }
    Ok("|linking| = 1 and tb >= 1 for n <= 100, k <= 10".into())
}

fn criterion_6() -> Check {
    let mut cases = 0;
    for n in 1..=50u32 {
        let l1 = oracle(n, 0).l[0];
        let delta = alexander_from_seifert(seifert_matrix(n, l1)).map_err(|e| e.to_string())?;
        let sign = if n % 2 == 0 { 1 } else { -1 };
        ensure(delta.coeff(1) == -l1 * l1 + sign * l1 && delta.eval_at_one() == 1, || format!("Alexander polynomial at n={n}"))?;
        for k in 0..=10u32 {
            for k2 in 0..=10u32 {
                if k == k2 {
                    continue;
                }
                let want = -(k2 as i64 - k as i64) * (l1 * l1 - sign * l1);
                let a = casson_difference_closed(n, k, k2).map_err(|e| e.to_string())?;
                let b = casson_difference_surgery(n, k, k2).map_err(|e| e.to_string())?;
                ensure(a == want && b == want && want != 0, || format!("Casson at n={n} k={k} k'={k2}: {a} {b} {want}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("closed form = (d/2) Delta''(1) != 0, {cases} cases"))
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let mut x3 = Vec::new();
    for l in -4..=4 {
        for m in -4..=4 {
            for n in -4..=4 {
                x3.push(ZeroVertexShadow::X3 { l, m, n });
            }
        }
    }
    let mut x2 = Vec::new();
    for n in -8..=8 {
        for r2 in (-7..=7).step_by(2) {
            x2.push(ZeroVertexShadow::X2 { n, r2 });
        }
    }
    let mut pairs = 0;
    for bx in [&x3, &x2] {
        for a in bx.iter() {
            for b in bx.iter() {
                let h = homeo_zero_vertex(a, b).map_err(|e| e.to_string())?;
                if let (ZeroVertexShadow::X2 { n, r2 }, ZeroVertexShadow::X2 { n: n2, r2: s2 }) = (a, b) {
                    ensure(n + 2 * r2 == n2 + 2 * s2 || !h, || format!("{a:?} ~ {b:?} with n+4r mismatch"))?;
                }
                if !h {
                    continue;
                }
                pairs += 1;
                let (fa, fb) = (intersection_form(a), intersection_form(b));
                ensure(
                    (fa.determinant(), fa.signature(), fa.is_even(), fa.definiteness())
                        == (fb.determinant(), fb.signature(), fb.is_even(), fb.definiteness()),
                    || format!("forms of {a:?} and {b:?} differ"),
                )?;
                let (ba, bb) = (boundary_description(a).unwrap(), boundary_description(b).unwrap());
                ensure(ba.equivalent(&bb), || format!("boundaries {ba} and {bb} of {a:?}, {b:?}"))?;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("sweep took {secs:.1} s"))?;
    Ok(format!("{pairs} homeomorphic pairs consistent, {secs:.2} s"))
}

fn criterion_8() -> Check {
    for n in 1..=5u32 {
        for k in 0..=2u32 {
            let (p, _) = build_shadow(fp(n, k), Stage::Ppp).map_err(|e| e.to_string())?;
            ensure(homology(&p).unwrap().is_point(), || format!("P''({n},{k}) is not acyclic"))?;
        }
    }
    let h1 = homology(&x1()).unwrap();
    ensure(h1.torsion[1] == vec![3] && h1.b1 == 0 && h1.b2 == 0, || format!("X1 homology {h1:?}"))?;
    ensure(homology(&x2()).unwrap().b2 == 1, || "X2 b2".into())?;
    ensure(homology(&x3()).unwrap().b2 == 2, || "X3 b2".into())?;
    let mut checked = 3;
    for a in 0..6 {
        for b in 0..6 {
            let Ok(p) = chain_polyhedron(1, &[a, b]) else { continue };
            if !validate(&p).is_empty() || !stats(&p).unwrap().is_special {
                continue;
            }
            let h = homology(&p).unwrap();
            ensure(h.b2 <= 2, || format!("one-vertex chain {a},{b} has b2 = {}", h.b2))?;
            checked += 1;
        }
    }
    Ok(format!("P'' acyclic for n <= 5; X1 H1 = Z/3; X3 b2 = 2; b2 <= 2 on {checked} special polyhedra with V <= 1"))
}

fn criterion_9() -> Check {
    for n in 1..=8u32 {
        let d = coefficients(fp(n, 0)).unwrap();
        let (p, g) = build_shadow(fp(n, 0), Stage::Ppp).map_err(|e| e.to_string())?;
        let host = p.internal_regions().next().unwrap();
        let (b, bg) = add_bubble(&p, &g, host, (0, -2)).map_err(|e| e.to_string())?;
        let (s0, s1) = (stats(&p).unwrap(), stats(&b).unwrap());
        let (h0, h1) = (homology(&p).unwrap(), homology(&b).unwrap());
        ensure(s1.chi == s0.chi + 1 && h1.b2 == h0.b2 + 1 && s1.v == s0.v, || format!("bubble contract at n={n}"))?;
        let site = w_prime_site(&b).map_err(|e| e.to_string())?;
        let (m, _) = zero_two_move(&b, &bg, site).map_err(|e| e.to_string())?;
        let s2 = stats(&m).unwrap();
        ensure(s2.v == s1.v + 2 && homology(&m).unwrap() == h1, || format!("(0-2)-move contract at n={n}"))?;
        let (w, _) = build_shadow(fp(n, 0), Stage::Wpp).map_err(|e| e.to_string())?;
        let sw = stats(&w).unwrap();
        let want = d.l_sum() + n as i64 - 1;
        ensure(sw.is_special && sw.v as i64 == want, || format!("W' at n={n}: V={} want {want}", sw.v))?;
    }
    Ok("bubble +1 chi/b2, (0-2)-move +2 V with homology kept, W' special with V = sum l + n - 1, n <= 8".into())
}

fn main() {
    let checks: [(u32, fn() -> Check); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let mut failed = 0;
    for (i, f) in checks {
        match f() {
            Ok(msg) => println!("criterion {i}: PASS  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {i}: FAIL  {msg}");
            }
        }
    }
    println!(
        "criterion 10: DECLARED NOT REPRODUCIBLE  hyperbolicity of the cork boundaries, exoticness of the pair and the \
         homeomorphism classifications are theorem inputs; criteria 1-9 check their arithmetic consequences"
    );
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
