use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use shadowcalc::criterion::ik_check;
use shadowcalc::exact::format_sig;
use shadowcalc::families::{bounds, build_shadow, build_shadow_file, coefficients, cork_checks, w_prime_site, FamilyParams, Stage, D};
use shadowcalc::poly::{
    add_bubble, collapse_all, collapse_boundary_region, emit_text, from_json, homology, parse_text, stats, to_json, validate,
    zero_two_move, MoveSite, PolyFile,
};
use shadowcalc::three_manifolds::{
    boundary_description, casson_difference, homeo_zero_vertex, intersection_form, lens_homeo, LensSpace, Shape,
    ZeroVertexShadow,
};
use shadowcalc::Error;

#[derive(Parser)]
#[command(name = "shadowcalc", version, about = "Shadowed polyhedra, gleams and cork families")]
struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Cork family data and shadows.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Operations on polyhedron files.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Exactness criterion on a special shadow file; exit 0 iff the verdict holds.
    Criterion {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Casson invariant difference between two family members.
    Casson {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 'K')]
        k2: u32,
    },
    /// Zero-vertex shadows: boundary, homeomorphism test, intersection form.
    Classify {
        what: ClassifyWhat,
        #[command(flatten)]
        args: ClassifyArgs,
    },
    /// Unoriented lens space comparison of L(p,q) and L(P,Q).
    Lens {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(allow_negative_numbers = true)]
        p2: i64,
        #[arg(allow_negative_numbers = true)]
        q2: i64,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Coefficients, D(n), bounds and cork checks.
    Params {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'k', default_value_t = 0)]
        k: u32,
    },
    /// Writes the shadow of a construction stage.
    Shadow {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'k', default_value_t = 0)]
        k: u32,
        #[arg(long)]
        stage: Stage,
        /// Output path; `.json` selects JSON. Defaults to stdout as text.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Runs the criterion on Q'' and the W variant for all n <= N, k <= K.
    Check {
        #[arg(short = 'N')]
        n_max: u32,
        #[arg(short = 'K', default_value_t = 0)]
        k_max: u32,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    Stats { file: PathBuf },
    /// Lists violations; exit 1 when there are any.
    Validate { file: PathBuf },
    Homology { file: PathBuf },
    /// Collapses one boundary region, or all of them.
    Collapse {
        file: PathBuf,
        #[arg(long)]
        region: Option<usize>,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Adds a bubble inside an internal region.
    Bubble {
        file: PathBuf,
        #[arg(long)]
        region: usize,
        /// Gleam of the new disk, in half-units.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        disk: i64,
        /// Gleam of the cap, in half-units.
        #[arg(long, default_value_t = -2, allow_negative_numbers = true)]
        cap: i64,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// (0→2)-move; without --edge the site is picked from the newest triple circle.
    Move02 {
        file: PathBuf,
        #[command(flatten)]
        site: SiteArgs,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SiteArgs {
    #[arg(long)]
    circle: Option<usize>,
    #[arg(long, default_value_t = 0)]
    outer_slot: u8,
    #[arg(long, default_value_t = 1)]
    lune_slot: u8,
    #[arg(long)]
    edge: Option<usize>,
    #[arg(long, default_value_t = 0)]
    region_slot: u8,
    #[arg(long, default_value_t = 1)]
    target_slot: u8,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassifyWhat {
    Boundary,
    Homeo,
    Form,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    shape: Shape,
    /// Gleams, e.g. `1 0 2`, `0 3/2`, `5 -0.5` or `5,-1/2`.
    #[arg(long, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true, required = true)]
    gleams: Vec<String>,
    /// Second gleam tuple for `homeo`.
    #[arg(long, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true)]
    against: Vec<String>,
}

enum Fail {
    Data(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Data(e.to_string())
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::Data(e.to_string())
    }
}

type Out = Result<bool, Fail>;

fn read_file(path: &Path) -> Result<PolyFile, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail::Data(format!("{}: {e}", path.display())))?;
    let f = if text.trim_start().starts_with('{') { from_json(&text)? } else { parse_text(&text)? };
    Ok(f)
}

fn write_file(f: &PolyFile, path: Option<&Path>) -> Result<(), Fail> {
    match path {
        Some(p) => {
            let json = p.extension().is_some_and(|e| e == "json");
            fs::write(p, if json { to_json(f) } else { emit_text(f) })?;
        }
        None => print!("{}", emit_text(f)),
    }
    Ok(())
}

fn list(xs: &[i64]) -> String {
    let s: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(", "))
}

fn family(cmd: FamilyCmd) -> Out {
    match cmd {
        FamilyCmd::Params { n, k } => {
            let p = FamilyParams::new(n, k)?;
            let d = coefficients(p)?;
            let b = bounds(p)?;
            let c = cork_checks(p)?;
            println!("n = {n}");
            println!("k = {k}");
            println!("A = {}", d.a);
            println!("B = {}", d.b);
            println!("m = {}", list(&d.m));
            println!("l = {}", list(&d.l));
            println!("D = {}", D(n)?);
            println!("bounds = {{cork_upper: {}, pair_upper: {}, lower: {}}}", b.cork_upper, b.pair_upper, b.lower);
            println!("linking = {:+}", c.linking_number);
            println!("tb = {}", c.tb_number);
            println!("mazur_candidate = {}", c.is_mazur_candidate);
            Ok(true)
        }
        FamilyCmd::Shadow { n, k, stage, output } => {
            let f = build_shadow_file(FamilyParams::new(n, k)?, stage)?;
            write_file(&f, output.as_deref())?;
            Ok(true)
        }
        FamilyCmd::Check { n_max, k_max } => {
            let cases: Vec<(u32, u32, Stage)> = (1..=n_max)
                .flat_map(|n| (0..=k_max).flat_map(move |k| [(n, k, Stage::Qpp), (n, k, Stage::Wvar)]))
                .collect();
            let rows: Vec<Result<(u32, u32, Stage, bool, f64), Error>> = cases
                .par_iter()
                .map(|&(n, k, st)| {
                    let (p, g) = build_shadow(FamilyParams::new(n, k)?, st)?;
                    let r = ik_check(&p, &g)?;
                    let min = r.min_row().map(|x| x.slope_length).unwrap_or(f64::INFINITY);
                    Ok((n, k, st, r.verdict, min))
                })
                .collect();
            let mut all = true;
            for row in rows {
                let (n, k, st, verdict, min) = row?;
                all &= verdict;
                println!("n={n} k={k} {st}: min slope {} verdict {verdict}", format_sig(min, 6));
            }
            Ok(all)
        }
    }
}

fn site(p: &PolyFile, a: &SiteArgs) -> Result<MoveSite, Fail> {
    match (a.circle, a.edge) {
        (None, None) => Ok(w_prime_site(&p.poly)?),
        (Some(circle), Some(edge)) => Ok(MoveSite {
            circle,
            outer_slot: a.outer_slot,
            lune_slot: a.lune_slot,
            edge,
            region_slot: a.region_slot,
            target_slot: a.target_slot,
        }),
        _ => Err(Fail::Data("--circle and --edge go together".into())),
    }
}

fn gleams_of(f: &PolyFile) -> Result<shadowcalc::poly::GleamAssignment, Fail> {
    f.gleams.clone().ok_or_else(|| Fail::Data("file has no GLEAMS section".into()))
}

fn poly(cmd: PolyCmd) -> Out {
    match cmd {
        PolyCmd::Stats { file } => {
            let f = read_file(&file)?;
            let s = stats(&f.poly)?;
            println!("V = {}", s.v);
            println!("E = {}", s.e);
            println!("R_int = {}", s.r_int);
            println!("R_bdry = {}", s.r_bdry);
            println!("chi = {}", s.chi);
            println!("special = {}", s.is_special);
            Ok(true)
        }
        PolyCmd::Validate { file } => {
            let f = read_file(&file)?;
            let v = validate(&f.poly);
            if v.is_empty() {
                println!("valid");
            }
            for x in &v {
                println!("{x}");
            }
            Ok(v.is_empty())
        }
        PolyCmd::Homology { file } => {
            let f = read_file(&file)?;
            let h = homology(&f.poly)?;
            let group = |b: usize, t: &[i64]| {
                let mut parts: Vec<String> = Vec::new();
                if b > 0 {
                    parts.push(if b == 1 { "Z".into() } else { format!("Z^{b}") });
                }
                parts.extend(t.iter().map(|d| format!("Z/{d}")));
                if parts.is_empty() {
                    "0".into()
                } else {
                    parts.join(" + ")
                }
            };
            println!("H0 = {}", group(h.b0, &h.torsion[0]));
            println!("H1 = {}", group(h.b1, &h.torsion[1]));
            println!("H2 = {}", group(h.b2, &h.torsion[2]));
            Ok(true)
        }
        PolyCmd::Collapse { file, region, output } => {
            let f = read_file(&file)?;
            let g = f.gleams.clone().unwrap_or_default();
            let (p, g) = match region {
                Some(r) => collapse_boundary_region(&f.poly, &g, r)?,
                None => collapse_all(&f.poly, &g)?,
            };
            write_file(&PolyFile::new(p, Some(g)), output.as_deref())?;
            Ok(true)
        }
        PolyCmd::Bubble { file, region, disk, cap, output } => {
            let f = read_file(&file)?;
            let (p, g) = add_bubble(&f.poly, &gleams_of(&f)?, region, (disk, cap))?;
            write_file(&PolyFile::new(p, Some(g)), output.as_deref())?;
            Ok(true)
        }
        PolyCmd::Move02 { file, site: a, output } => {
            let f = read_file(&file)?;
            let s = site(&f, &a)?;
            let (p, g) = zero_two_move(&f.poly, &gleams_of(&f)?, s)?;
            write_file(&PolyFile::new(p, Some(g)), output.as_deref())?;
            Ok(true)
        }
    }
}

fn criterion(file: &Path, json: bool) -> Out {
    let f = read_file(file)?;
    let r = ik_check(&f.poly, &gleams_of(&f)?)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&r).map_err(|e| Fail::Data(e.to_string()))?);
    } else {
        print!("{}", r.to_table());
    }
    Ok(r.verdict)
}

fn classify(what: ClassifyWhat, a: ClassifyArgs) -> Out {
    let parse = |xs: &[String]| -> Result<ZeroVertexShadow, Fail> {
        let refs: Vec<&str> = xs.iter().map(|s| s.as_str()).collect();
        Ok(ZeroVertexShadow::parse(a.shape, &refs)?)
    };
    let s = parse(&a.gleams)?;
    match what {
        ClassifyWhat::Boundary => {
            println!("{}", boundary_description(&s)?);
            Ok(true)
        }
        ClassifyWhat::Form => {
            let f = intersection_form(&s);
            println!("form = {f}");
            println!("determinant = {}", f.determinant());
            println!("signature = {}", f.signature());
            println!("parity = {}", if f.is_even() { "even" } else { "odd" });
            println!("definiteness = {:?}", f.definiteness());
            println!("degenerate = {}", f.degenerate());
            Ok(true)
        }
        ClassifyWhat::Homeo => {
            if a.against.is_empty() {
                return Err(Fail::Data("homeo needs --against".into()));
            }
            let t = parse(&a.against)?;
            let h = homeo_zero_vertex(&s, &t)?;
            println!("{}", if h { "homeomorphic" } else { "not homeomorphic" });
            Ok(h)
        }
    }
}

fn run(cli: Cli) -> Out {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| Fail::Data(e.to_string()))?;
    }
    match cli.cmd {
        Cmd::Family(c) => family(c),
        Cmd::Poly(c) => poly(c),
        Cmd::Criterion { file, json } => criterion(&file, json),
        Cmd::Casson { n, k, k2 } => {
            println!("{}", casson_difference(n, k, k2)?);
            Ok(true)
        }
        Cmd::Classify { what, args } => classify(what, args),
        Cmd::Lens { p, q, p2, q2 } => {
            let h = lens_homeo(LensSpace::new(p, q)?, LensSpace::new(p2, q2)?);
            println!("{}", if h { "homeomorphic" } else { "not homeomorphic" });
            Ok(h)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
