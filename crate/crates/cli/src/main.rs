use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use simplex_centers::centers::all_centers;
use simplex_centers::classify::classify;
use simplex_centers::cevians::cevian_feet;
use simplex_centers::constructions::{
    coincident_if_simplex, equiareal_equiradial_not_equifacetal, equifacetal_tetrahedron,
    equiradial_not_equiareal, exterior_circumcenter_equal_cevians, gram_thm41, gram_thm43,
    regular_simplex, rhombus_fold_tetrahedron, scan_coincident_if_base, solve_equal_inradius_t,
};
use simplex_centers::corpus::{generate_corpus, Constraint, RandomCorpusSpec, DEFAULT_CORPUS_ATTEMPTS};
use simplex_centers::geometry::{barycentric, facet_volumes, Point, Simplex};
use simplex_centers::tolerance::relative_spread;
use simplex_centers::io::{read_simplex, to_json, SimplexJson};
use simplex_centers::verify::{max_pairwise, verify, Check, TheoremId, Verdict};
use simplex_centers::{GeometryError, Tolerance};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_GENERATION: u8 = 4;

#[derive(Parser)]
#[command(name = "simplex-centers", version, about = "Centers, classification and constructions for d-simplices")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Absolute tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_abs: f64,
    /// Relative tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_rel: f64,
    /// Output format. `jsonl` writes one record per line for streams.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Suppress the summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// Report centers and classification of a simplex or Gram matrix file (`-` reads stdin).
    Analyze { input: PathBuf },
    /// Build a named example simplex and check the properties it is built to have.
    Construct(ConstructArgs),
    /// Run a named theorem verification suite.
    Verify {
        id: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Emit a seeded corpus of random simplices.
    Random {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 1.0)]
        range: f64,
        #[arg(long, value_enum)]
        constraint: Option<ConstraintArg>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draws allowed per simplex for rejection-filtered constraints.
        #[arg(long, default_value_t = DEFAULT_CORPUS_ATTEMPTS)]
        max_attempts: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstraintArg {
    UnitCircumradius,
    Centered,
    AcuteBase,
}

impl From<ConstraintArg> for Constraint {
    fn from(c: ConstraintArg) -> Self {
        match c {
            ConstraintArg::UnitCircumradius => Constraint::UnitCircumradius,
            ConstraintArg::Centered => Constraint::Centered,
            ConstraintArg::AcuteBase => Constraint::AcuteBase,
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    name: Generator,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    edge: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Generator {
    Regular,
    #[value(name = "thm2.2")]
    Thm2_2,
    Equifacetal,
    #[value(name = "thm3.3")]
    Thm3_3,
    #[value(name = "thm3.4")]
    Thm3_4,
    #[value(name = "thm4.1")]
    Thm4_1,
    #[value(name = "thm4.3")]
    Thm4_3,
    #[value(name = "thm4.6")]
    Thm4_6,
    #[value(name = "thm5.5")]
    Thm5_5,
}

enum Failure {
    Geometry(GeometryError),
    Usage(String),
    Io(io::Error),
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::Geometry(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Geometry(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                GeometryError::Parse(_) => EXIT_USAGE,
                GeometryError::GenerationFailed { .. } => EXIT_GENERATION,
                _ => EXIT_PRECONDITION,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let g = &cli.global;
    let tol = Tolerance::new(g.tol_abs, g.tol_rel).map_err(|e| Failure::Usage(e.to_string()))?;
    match &cli.command {
        Command::Analyze { input } => analyze(input, &tol),
        Command::Construct(args) => construct(args, g, &tol),
        Command::Verify { id, seed, samples } => {
            let id: TheoremId = id.parse().map_err(Failure::Usage)?;
            let run = verify(id, *seed, *samples, &tol);
            emit(&to_json(&run))?;
            if !g.quiet {
                summarize(&format!("{id} seed {seed}"), &run.details)?;
            }
            Ok(if run.verdict == Verdict::Pass { 0 } else { EXIT_FAIL })
        }
        Command::Random { d, count, range, constraint, seed, max_attempts } => {
            let spec = RandomCorpusSpec {
                dimension: *d,
                count: *count,
                range: *range,
                constraint: constraint.map(Constraint::from),
                seed: *seed,
                max_attempts: *max_attempts,
            };
            let corpus = generate_corpus(&spec)?;
            let records: Vec<SimplexJson> = corpus.iter().map(SimplexJson::from).collect();
            match g.format {
                Format::Json => emit(&to_json(&records))?,
                Format::Jsonl => {
                    for r in &records {
                        emit(&to_json(r))?;
                    }
                }
            }
            Ok(0)
        }
    }
}

fn emit(line: &str) -> io::Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{line}")
}

fn summarize(title: &str, checks: &[Check]) -> io::Result<()> {
    let mut err = io::stderr().lock();
    writeln!(err, "{title}")?;
    for c in checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        writeln!(err, "  {mark} {}: {:.3e} {} {:.3e}", c.name, c.value, c.relation, c.threshold)?;
    }
    Ok(())
}

fn analyze(input: &PathBuf, tol: &Tolerance) -> Result<u8, Failure> {
    let text = if input.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(input)?
    };
    let s = read_simplex(&text, tol)?;
    let centers = all_centers(&s, tol)?;
    let classification = classify(&s, tol)?;
    let report = json!({
        "simplex": SimplexJson::from(&s),
        "centers": centers,
        "classification": classification,
    });
    emit(&to_json(&report))?;
    Ok(0)
}

fn need<T>(value: Option<T>, flag: &str, name: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("{name} needs --{flag}")))
}

fn construct(args: &ConstructArgs, g: &Global, tol: &Tolerance) -> Result<u8, Failure> {
    let (label, s, extra) = build(args)?;
    let checks = post_checks(args, &s, tol)?;
    let mut record = json!({ "name": label, "simplex": SimplexJson::from(&s) });
    if let Value::Object(map) = &mut record {
        map.extend(extra);
        map.insert("checks".into(), serde_json::to_value(&checks).expect("plain data"));
    }
    emit(&to_json(&record))?;
    if !g.quiet {
        summarize(&label, &checks)?;
    }
    Ok(if checks.iter().all(|c| c.passed) { 0 } else { EXIT_FAIL })
}

type Built = (String, Simplex, serde_json::Map<String, Value>);

fn build(args: &ConstructArgs) -> Result<Built, Failure> {
    let mut extra = serde_json::Map::new();
    let (label, s) = match args.name {
        Generator::Regular => {
            let d = need(args.d, "d", "regular")?;
            (format!("regular d={d}"), regular_simplex(d, args.edge)?)
        }
        Generator::Thm2_2 => {
            let t = match args.t {
                Some(t) => t,
                None => solve_equal_inradius_t()?,
            };
            extra.insert("t".into(), json!(t));
            (format!("rhombus fold t={t}"), rhombus_fold_tetrahedron(t)?)
        }
        Generator::Equifacetal => {
            let a = need(args.a, "a", "equifacetal")?;
            let b = need(args.b, "b", "equifacetal")?;
            let c = need(args.c, "c", "equifacetal")?;
            (format!("equifacetal ({a}, {b}, {c})"), equifacetal_tetrahedron(a, b, c)?)
        }
        Generator::Thm3_3 => {
            let (a, b, c) = match (args.a, args.b, args.c) {
                (Some(a), Some(b), Some(c)) => (a, b, c),
                (None, None, None) => scan_coincident_if_base(0.05)?,
                _ => return Err(Failure::Usage("thm3.3 takes all of --a --b --c or none".into())),
            };
            let out = coincident_if_simplex(a, b, c)?;
            extra.insert("base".into(), json!([a, b, c]));
            extra.insert("base_circumradius".into(), json!(out.base_circumradius));
            extra.insert("base_inradius".into(), json!(out.base_inradius));
            extra.insert("apex_height".into(), json!(out.apex_height));
            (format!("I = F over base ({a}, {b}, {c})"), out.simplex)
        }
        Generator::Thm3_4 => {
            let d = need(args.d, "d", "thm3.4")?;
            (format!("equiradial, not equiareal, d={d}"), equiradial_not_equiareal(d)?)
        }
        Generator::Thm4_1 => {
            let x = need(args.x, "x", "thm4.1")?;
            let (gram, s) = gram_thm41(x)?;
            extra.insert("gram_eigenvalues".into(), json!(gram.eigenvalues()));
            (format!("four coincident centers x={x}"), s)
        }
        Generator::Thm4_3 => {
            let (gram, s) = gram_thm43()?;
            extra.insert("gram_eigenvalues".into(), json!(gram.eigenvalues()));
            ("equiareal, centers distinct".to_string(), s)
        }
        Generator::Thm4_6 => {
            let out = equiareal_equiradial_not_equifacetal()?;
            extra.insert("base_angle".into(), json!(out.base_angle));
            extra.insert("h".into(), json!(out.h));
            ("equiareal and equiradial, not equifacetal".to_string(), out.simplex)
        }
        Generator::Thm5_5 => {
            let d = need(args.d, "d", "thm5.5")?;
            let r = need(args.r, "r", "thm5.5")?;
            (
                format!("exterior circumcenter with equal cevians d={d} r={r}"),
                exterior_circumcenter_equal_cevians(d, r)?,
            )
        }
    };
    Ok((label, s, extra))
}

fn flag(name: &str, ok: bool) -> Check {
    Check::failures(name, usize::from(!ok), 1)
}

/// Properties each generator is built to have, and those it is built to lack.
fn post_checks(args: &ConstructArgs, s: &Simplex, tol: &Tolerance) -> Result<Vec<Check>, Failure> {
    let rep = classify(s, tol)?;
    let c = all_centers(s, tol)?;
    let scale = 1.0 + c.circumradius;
    let checks = match args.name {
        Generator::Regular => vec![
            flag("regular", rep.regular),
            Check::at_most("center spread", max_pairwise(&c.named().iter().map(|p| p.1).collect::<Vec<_>>()), tol.abs_tol * scale, 1),
        ],
        Generator::Thm2_2 => vec![
            flag("facet inradii equal", rep.facet_inradii_equal),
            flag("not equifacetal", !rep.equifacetal),
            Check::at_most("|I - J|", (&c.incenter - &c.complementary_1_centroid).norm(), tol.abs_tol * scale, 1),
        ],
        Generator::Equifacetal => vec![
            flag("equifacetal", rep.equifacetal),
            Check::at_most(
                "max distance among G, I, C, F, M",
                max_pairwise(&[&c.centroid, &c.incenter, &c.circumcenter, &c.fermat_torricelli, &c.monge]),
                tol.abs_tol * scale,
                1,
            ),
        ],
        Generator::Thm3_3 => vec![
            Check::at_most("|I - F|", (&c.incenter - &c.fermat_torricelli).norm(), 1e-8, 1),
            flag("not equifacetal", !rep.equifacetal),
        ],
        Generator::Thm3_4 => {
            vec![
                flag("equiradial", rep.equiradial),
                flag("not equiareal", !rep.equiareal),
                Check::above("facet volume spread", relative_spread(&facet_volumes(s)), 1e-3, 1),
                Check::at_most("facet circumradius spread", rep.witnesses.facet_circumradius_spread, tol.rel_tol, 1),
            ]
        }
        Generator::Thm4_1 => vec![
            Check::at_most(
                "max distance among G, C, I, F",
                max_pairwise(&[&c.centroid, &c.circumcenter, &c.incenter, &c.fermat_torricelli]),
                1e-8,
                1,
            ),
            flag("equiareal", rep.equiareal),
            flag("equiradial", rep.equiradial),
        ],
        Generator::Thm4_3 => vec![
            flag("equiareal", rep.equiareal),
            Check::above("|G - C|", (&c.centroid - &c.circumcenter).norm(), 1e-4, 1),
            Check::above("|G - F|", (&c.centroid - &c.fermat_torricelli).norm(), 1e-4, 1),
            Check::above("|C - F|", (&c.circumcenter - &c.fermat_torricelli).norm(), 1e-4, 1),
        ],
        Generator::Thm4_6 => vec![
            flag("equiareal", rep.equiareal),
            flag("equiradial", rep.equiradial),
            flag("not equifacetal", !rep.equifacetal),
            Check::at_most("most negative weight of C", barycentric(s, &c.circumcenter)?.min(), -1e-3, 1),
        ],
        Generator::Thm5_5 => {
            let origin = Point::zeros(s.dim());
            let cev = cevian_feet(s, &origin, tol)?;
            vec![
                Check::at_most("cevian length spread", cev.spread, 1e-9, 1),
                Check::at_most("most negative weight of C", barycentric(s, &origin)?.min(), -1e-3, 1),
                flag("partition size r", cev.lemma52_r == args.r),
            ]
        }
    };
    Ok(checks)
}
