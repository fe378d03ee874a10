//! The `quiverkit` command line. [`run`] does all the work so tests can
//! drive it in-process; `main` only prints.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use quiverkit::linalg::format_q;
use quiverkit::oracle::{verify_oracle, VerificationReport};
use quiverkit::quiver::{classify_quiver, make_walk, validate_presentation, Quiver, QuiverSpec, WalkEnd, WalkSpec};
use quiverkit::rep::{
    hom_space, injective_at, is_in_rrep, presentation_status, projective_at, simple_at, walk_rep, RepJson, RepMorphism,
    StableRep,
};
use quiverkit::synthesis::{
    chain_explore, component_inventory, knit_oracle_agreement, knit_preinjective, knit_preprojective, quasi_wing,
    span_member, verify_fixtures, Chain, KnittedComponent, ThinFamily, ToDot, WingInterval, WingWindow,
};

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    /// 0 success, 1 verification violation, 2 input error.
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "quiverkit",
    version,
    about = "Representations of strongly locally finite quivers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report presentation violations; exits 1 if there are any.
    Validate { quiver: PathBuf },
    /// Star / Dynkin / sourced / sinked classification.
    Classify { quiver: PathBuf },
    /// Which components the Auslander-Reiten quiver has.
    Inventory { quiver: PathBuf },
    /// Knit the preprojective (or preinjective) component.
    Knit(KnitArgs),
    /// Write a representation as JSON.
    Rep(RepArgs),
    /// Basis of the morphisms between two representations.
    Hom {
        quiver: PathBuf,
        source: PathBuf,
        target: PathBuf,
    },
    /// fg / fp / fcg / fcp flags and rrep membership.
    Status { quiver: PathBuf, rep: PathBuf },
    /// Grow a chain of irreducible morphisms from a thin representation.
    Chain(ChainArgs),
    /// Run a verification suite; exits 1 on any violation.
    #[command(subcommand)]
    Verify(VerifySuite),
    /// Graphviz output.
    #[command(subcommand)]
    Export(Export),
}

#[derive(Args, Debug)]
struct KnitArgs {
    quiver: PathBuf,
    #[arg(long)]
    depth: usize,
    #[arg(long)]
    radius: usize,
    #[arg(long)]
    preinjective: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Make {
    Proj,
    Inj,
    Simple,
    Walk,
}

#[derive(Args, Debug)]
struct RepArgs {
    quiver: PathBuf,
    #[arg(long)]
    make: Make,
    /// Vertex for proj / inj / simple.
    #[arg(long)]
    vertex: Option<String>,
    /// Walk start: a vertex name or `tail:K`.
    #[arg(long)]
    from: Option<String>,
    /// Walk end: a vertex name or `tail:K`.
    #[arg(long)]
    to: Option<String>,
    /// Walk given as JSON instead of `--from/--to`.
    #[arg(long, conflicts_with_all = ["from", "to"])]
    walk: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ChainArgs {
    quiver: PathBuf,
    /// Seed walk start: a vertex name or `tail:K`.
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
    #[arg(long, default_value_t = 4)]
    steps: usize,
    /// How far along each tail the thin family reaches.
    #[arg(long, default_value_t = 6)]
    radius: usize,
}

#[derive(Subcommand, Debug)]
enum VerifySuite {
    /// Brute-force checks on every orientation of A_n.
    Oracle {
        #[arg(long)]
        n: usize,
    },
    /// Checks on the shipped quivers.
    Fixtures,
}

#[derive(Subcommand, Debug)]
enum Export {
    #[command(subcommand)]
    Dot(DotTarget),
}

#[derive(Subcommand, Debug)]
enum DotTarget {
    Knit(KnitArgs),
    /// Quasi-wing of an interval; unbounded ends need the window flags.
    Wing {
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        i_min: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        i_max: Option<i64>,
        #[arg(long)]
        max_level: Option<usize>,
    },
    Chain(ChainArgs),
}

enum Output {
    Json(Value),
    Text(String),
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CommandResult {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CommandResult {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((out, ok)) => {
            let stdout = match out {
                Output::Json(v) => format!("{}\n", serde_json::to_string_pretty(&v).expect("values serialize")),
                Output::Text(t) => t,
            };
            CommandResult {
                code: if ok { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => CommandResult {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e:#}\n"),
        },
    }
}

fn to_json(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("payloads serialize")
}

/// Deserializes JSON, naming the offending field on failure.
fn parse_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        anyhow::anyhow!("{}: at {at}: {}", path.display(), e.into_inner())
    })
}

fn load_quiver(path: &Path) -> anyhow::Result<Arc<Quiver>> {
    let spec: QuiverSpec = parse_json(path)?;
    let q = Quiver::from_spec(&spec).with_context(|| path.display().to_string())?;
    Ok(Arc::new(q))
}

fn load_rep(q: &Arc<Quiver>, path: &Path) -> anyhow::Result<StableRep> {
    let j: RepJson = parse_json(path)?;
    j.to_rep(q).with_context(|| path.display().to_string())
}

fn dispatch(cmd: Command) -> anyhow::Result<(Output, bool)> {
    let ok = |v: Value| Ok((Output::Json(v), true));
    match cmd {
        Command::Validate { quiver } => {
            let spec: QuiverSpec = parse_json(&quiver)?;
            let report = validate_presentation(&spec)?;
            Ok((Output::Json(to_json(&report)), report.valid))
        }
        Command::Classify { quiver } => ok(to_json(&classify_quiver(&*load_quiver(&quiver)?)?)),
        Command::Inventory { quiver } => ok(to_json(&component_inventory(&*load_quiver(&quiver)?)?)),
        Command::Knit(a) => ok(to_json(&knit(&a)?)),
        Command::Rep(a) => ok(to_json(&RepJson::from_rep(&make_rep(&a)?))),
        Command::Hom { quiver, source, target } => {
            let q = load_quiver(&quiver)?;
            let m = load_rep(&q, &source)?;
            let n = load_rep(&q, &target)?;
            let basis = hom_space(&m, &n)?;
            ok(json!({ "dim": basis.len(), "basis": basis.iter().map(morphism_json).collect::<Vec<_>>() }))
        }
        Command::Status { quiver, rep } => {
            let q = load_quiver(&quiver)?;
            let m = load_rep(&q, &rep)?;
            let mut v = to_json(&presentation_status(&m)?);
            v["in_rrep"] = json!(is_in_rrep(&m));
            v["finite_dimensional"] = json!(m.is_finite_dimensional());
            ok(v)
        }
        Command::Chain(a) => ok(chain_json(&chain(&a)?)),
        Command::Verify(suite) => {
            let report: VerificationReport = match suite {
                VerifySuite::Oracle { n } => {
                    if !(1..=12).contains(&n) {
                        bail!("--n must be between 1 and 12");
                    }
                    let mut checks = verify_oracle(n)?.checks;
                    checks.push(knit_oracle_agreement(n)?);
                    VerificationReport::new(checks)
                }
                VerifySuite::Fixtures => verify_fixtures()?,
            };
            Ok((Output::Json(to_json(&report)), report.is_clean()))
        }
        Command::Export(Export::Dot(target)) => {
            let text = match target {
                DotTarget::Knit(a) => knit(&a)?.to_dot(),
                DotTarget::Chain(a) => chain(&a)?.to_dot(),
                DotTarget::Wing {
                    lo,
                    hi,
                    i_min,
                    i_max,
                    max_level,
                } => {
                    let window = match (i_min, i_max, max_level) {
                        (Some(i_min), Some(i_max), Some(max_level)) => Some(WingWindow {
                            i_min,
                            i_max,
                            max_level,
                        }),
                        (None, None, None) => None,
                        _ => bail!("--i-min, --i-max and --max-level go together"),
                    };
                    quasi_wing(&WingInterval { lo, hi }, window.as_ref())?.to_dot()
                }
            };
            Ok((Output::Text(text), true))
        }
    }
}

fn knit(a: &KnitArgs) -> anyhow::Result<KnittedComponent> {
    let q = load_quiver(&a.quiver)?;
    Ok(if a.preinjective {
        knit_preinjective(&q, a.depth, a.radius)?
    } else {
        knit_preprojective(&q, a.depth, a.radius)?
    })
}

fn make_rep(a: &RepArgs) -> anyhow::Result<StableRep> {
    let q = load_quiver(&a.quiver)?;
    let vertex = || -> anyhow::Result<_> {
        let name = a.vertex.as_deref().context("--vertex is required")?;
        Ok(q.vertex_by_name(name)?)
    };
    Ok(match a.make {
        Make::Proj => projective_at(&q, vertex()?)?,
        Make::Inj => injective_at(&q, vertex()?)?,
        Make::Simple => simple_at(&q, vertex()?)?,
        Make::Walk => {
            let spec = match (&a.walk, &a.from, &a.to) {
                (Some(p), _, _) => parse_json::<WalkSpec>(p)?,
                (None, Some(from), Some(to)) => WalkSpec::Span {
                    from: WalkEnd::parse(from),
                    to: WalkEnd::parse(to),
                },
                _ => bail!("--make walk needs --walk FILE or both --from and --to"),
            };
            walk_rep(&q, &make_walk(&q, &spec)?)?
        }
    })
}

fn chain(a: &ChainArgs) -> anyhow::Result<Chain> {
    let q = load_quiver(&a.quiver)?;
    let family = ThinFamily::new(&q, a.radius)?;
    let seed = span_member(&q, WalkEnd::parse(&a.from), WalkEnd::parse(&a.to))?;
    Ok(chain_explore(&seed, &family, a.steps)?)
}

fn morphism_json(f: &RepMorphism) -> Value {
    let q = f.source().quiver();
    let comps: BTreeMap<String, Vec<Vec<String>>> = f
        .source()
        .window()
        .vertices()
        .iter()
        .zip(f.comps())
        .filter(|(_, m)| m.rows() > 0 && m.cols() > 0)
        .map(|(&v, m)| {
            (
                q.vertex_name(v),
                (0..m.rows()).map(|i| m.row(i).iter().map(format_q).collect()).collect(),
            )
        })
        .collect();
    json!(comps)
}

fn chain_json(c: &Chain) -> Value {
    let maps: Vec<Value> = c
        .maps
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let kind = match (f.is_mono(), f.is_epi()) {
                (true, true) => "iso",
                (true, false) => "mono",
                (false, true) => "epi",
                (false, false) => "other",
            };
            json!({ "from": c.nodes[i].label, "to": c.nodes[i + 1].label, "kind": kind })
        })
        .collect();
    json!({ "nodes": c.labels(), "seed": c.seed, "maps": maps, "closed": c.closed })
}
