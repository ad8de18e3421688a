use std::path::PathBuf;
use std::process::{Command, Output};

use shadowcalc::families::{build_shadow, FamilyParams, Stage};
use shadowcalc::poly::stats;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shadowcalc")).args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("shadowcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn family_params() {
    let o = run(&["family", "params", "-n", "1", "-k", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for line in ["m = (-7)", "l = (7, 8)", "D = 15", "bounds = {cork_upper: 13, pair_upper: 15, lower: 2}", "linking = +1", "tb = 14"] {
        assert!(s.contains(line), "missing {line}:\n{s}");
    }
}

#[test]
fn criterion_on_emitted_file() {
    let f = tmp("qpp.txt");
    assert_eq!(run(&["family", "shadow", "-n", "1", "-k", "0", "--stage", "Qpp", "-o", f.to_str().unwrap()]).status.code(), Some(0));
    let o = run(&["criterion", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("threshold = 12.5664"), "{s}");
    assert!(s.contains("min slope = 13.1529"), "{s}");

    let text = std::fs::read_to_string(&f).unwrap();
    assert!(text.contains("\n3 -13\n"));
    let broken = text.replace("\n3 -13\n", "\n3 0\n");
    let g = tmp("qpp_broken.txt");
    std::fs::write(&g, broken).unwrap();
    let o = run(&["criterion", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn lens_and_classify() {
    let o = run(&["lens", "7", "1", "7", "6"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "homeomorphic"));
    let o = run(&["lens", "5", "1", "5", "2"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(1), "not homeomorphic"));
    let o = run(&["lens", "9", "-4", "9", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["classify", "boundary", "--shape", "x3", "--gleams", "1", "0", "2"]);
    assert_eq!(stdout(&o).trim(), "RP3");
    let o = run(&["classify", "homeo", "--shape", "x2", "--gleams", "1", "1/2", "--against", "5", "-0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["classify", "homeo", "--shape", "x2", "--gleams=1,1/2", "--against=5,-1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["classify", "homeo", "--shape", "x3", "--gleams", "1", "-1", "4", "--against", "1", "-1", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["classify", "form", "--shape", "x2", "--gleams", "1", "1/2"]);
    assert!(stdout(&o).contains("form = <3>"));
    let o = run(&["casson", "-n", "2", "-k", "0", "-K", "1"]);
    assert_eq!(stdout(&o).trim(), "-72");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["family", "params"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "stats", "/nonexistent/file"]).status.code(), Some(3));
    assert_eq!(run(&["family", "params", "-n", "0"]).status.code(), Some(3));
    assert_eq!(run(&["classify", "boundary", "--shape", "x2", "--gleams", "1", "1"]).status.code(), Some(3));
}

#[test]
fn stats_round_trip_and_determinism() {
    for n in 1..=10u32 {
        for stage in Stage::ALL {
            let f = tmp(&format!("{stage}_{n}.txt"));
            let o = run(&["family", "shadow", "-n", &n.to_string(), "-k", "1", "--stage", stage.name(), "-o", f.to_str().unwrap()]);
            assert_eq!(o.status.code(), Some(0), "{stage} {n}: {}", String::from_utf8_lossy(&o.stderr));
            let (p, _) = build_shadow(FamilyParams::new(n, 1).unwrap(), stage).unwrap();
            let s = stats(&p).unwrap();
            let want = format!(
                "V = {}\nE = {}\nR_int = {}\nR_bdry = {}\nchi = {}\nspecial = {}\n",
                s.v, s.e, s.r_int, s.r_bdry, s.chi, s.is_special
            );
            let a = run(&["poly", "stats", f.to_str().unwrap()]);
            assert_eq!(stdout(&a), want, "{stage} {n}");
            if n <= 2 {
                let j = tmp(&format!("{stage}_{n}.json"));
                run(&["family", "shadow", "-n", &n.to_string(), "-k", "1", "--stage", stage.name(), "-o", j.to_str().unwrap()]);
                assert_eq!(stdout(&run(&["poly", "stats", j.to_str().unwrap()])), want);
                let t1 = stdout(&run(&["family", "shadow", "-n", &n.to_string(), "--stage", stage.name()]));
                let t2 = stdout(&run(&["family", "shadow", "-n", &n.to_string(), "--stage", stage.name()]));
                assert_eq!(t1, t2);
            }
        }
    }
}

#[test]
fn poly_moves() {
    let f = tmp("qp.txt");
    run(&["family", "shadow", "-n", "1", "--stage", "Qp", "-o", f.to_str().unwrap()]);
    let c = tmp("qp_collapsed.txt");
    assert_eq!(run(&["poly", "collapse", f.to_str().unwrap(), "-o", c.to_str().unwrap()]).status.code(), Some(0));
    let s = stdout(&run(&["poly", "stats", c.to_str().unwrap()]));
    assert!(s.contains("V = 2\n") && s.contains("special = true"), "{s}");
    assert_eq!(run(&["criterion", c.to_str().unwrap()]).status.code(), Some(0));

    let p = tmp("ppp.txt");
    run(&["family", "shadow", "-n", "1", "--stage", "Ppp", "-o", p.to_str().unwrap()]);
    assert_eq!(stdout(&run(&["poly", "homology", p.to_str().unwrap()])), "H0 = Z\nH1 = 0\nH2 = 0\n");
    let b = tmp("ppp_bubble.txt");
    assert_eq!(run(&["poly", "bubble", p.to_str().unwrap(), "--region", "0", "-o", b.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(stdout(&run(&["poly", "homology", b.to_str().unwrap()])), "H0 = Z\nH1 = 0\nH2 = Z\n");
    let m = tmp("ppp_move.txt");
    assert_eq!(run(&["poly", "move02", b.to_str().unwrap(), "-o", m.to_str().unwrap()]).status.code(), Some(0));
    let w = tmp("wpp.txt");
    run(&["family", "shadow", "-n", "1", "--stage", "Wpp", "-o", w.to_str().unwrap()]);
    assert_eq!(stdout(&run(&["poly", "stats", m.to_str().unwrap()])), stdout(&run(&["poly", "stats", w.to_str().unwrap()])));
    assert_eq!(stdout(&run(&["poly", "validate", w.to_str().unwrap()])).trim(), "valid");
}
