//! The `triflow` command line. JSON goes to standard output, diagnostics to
//! standard error, and the exit code says what went wrong.

use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use triflow_core::certify::{verify_certificate, verify_z3proof};
use triflow_core::graph::{boundary_of, is_strongly_connected, Z3Boundary};
use triflow_core::oracle::{Oracle, DEFAULT_EDGE_LIMIT};
use triflow_core::Multigraph;

use crate::analyze::{analyze, Analyses, Options};
use crate::corpus::{self, Check};
use crate::dot::{certificate_dot, graph_dot, orientation_dot};
use crate::gen::{generate, Family};
use crate::json::{
    boundary_from_json, boundary_json, coloring_json, orientation_json, parse_document,
    parse_graph, BoundaryJson, Document, FlowJson, GraphJson,
};
use crate::Failure;

pub const EDGE_LIMIT_VAR: &str = "TRIFLOW_ORACLE_EDGE_LIMIT";

#[derive(Debug, Parser)]
#[command(
    name = "triflow",
    version,
    about = "Nowhere-zero 3-flows, group connectivity and strong orientations of small graphs"
)]
pub struct Cli {
    /// Machine-readable output where a command also has a text form.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a graph from one of the built-in families.
    Gen(GenArgs),
    /// Decide flow and connectivity properties of a graph.
    Analyze(AnalyzeArgs),
    /// Compare deciders with the exhaustive oracles over a graph corpus.
    Corpus(CorpusArgs),
    /// Render a graph, orientation or certificate.
    Export(ExportArgs),
    /// Run one exhaustive oracle.
    Oracle(OracleArgs),
    /// Check a witness or certificate against a graph.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Wheel,
    K4,
    Crystal,
    Book,
    Fan,
    Bullgrown,
    #[value(name = "random2tree")]
    Random2Tree,
    #[value(name = "double2tree")]
    Double2Tree,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub family: FamilyName,
    /// Rim length of a wheel.
    #[arg(long)]
    pub k: Option<usize>,
    /// Vertex count.
    #[arg(long)]
    pub n: Option<usize>,
    /// Bull-growing steps.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Extra random edges for random2tree.
    #[arg(long, default_value_t = 0)]
    pub extra: usize,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Input file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    pub input: String,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArg,
    /// Every analysis; the default when none is selected.
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub nzf: bool,
    #[arg(long)]
    pub z3: bool,
    #[arg(long)]
    pub s3: bool,
    #[arg(long)]
    pub flow_index: bool,
    /// Triangular connectivity and the odd wheel structure.
    #[arg(long)]
    pub tri: bool,
    /// Confirm each decider verdict with the oracles; exit 2 on a mismatch.
    #[arg(long)]
    pub cross_check: bool,
    /// Add per-stage wall-clock times, which makes output nondeterministic.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Largest vertex count.
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    /// Most edges beyond the spanning triangle-tree.
    #[arg(long, default_value_t = 3)]
    pub extra: usize,
    /// Skip graphs with more edges.
    #[arg(long)]
    pub max_edges: Option<usize>,
    /// Checks to run: 3nzf, z3, s3, shortcut, bull. Defaults to all.
    #[arg(long = "check", value_delimiter = ',')]
    pub checks: Vec<Check>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub input: InputArg,
    /// Graphviz output; without it the document is re-emitted as normalised JSON.
    #[arg(long)]
    pub dot: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Nzf,
    Mod3,
    Z3,
    S3,
    FlowIndex,
    Color,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub kind: OracleKind,
    #[command(flatten)]
    pub input: InputArg,
    /// Flow bound for `nzf`.
    #[arg(long, default_value_t = 3)]
    pub k: u32,
    /// Boundary for `mod3` as a JSON object of residues; zero by default.
    #[arg(long)]
    pub beta: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// The graph the witness is about.
    #[command(flatten)]
    pub input: InputArg,
    /// Certificate, proof, orientation, flow or partition JSON.
    #[arg(long)]
    pub witness: String,
    /// Boundary an orientation must realise, as a JSON object of residues.
    #[arg(long)]
    pub beta: Option<String>,
}

pub fn oracle_from_env() -> Result<Oracle, Failure> {
    match std::env::var(EDGE_LIMIT_VAR) {
        Err(_) => Ok(Oracle::new(DEFAULT_EDGE_LIMIT)),
        Ok(s) => s.trim().parse::<usize>().map(Oracle::new).map_err(|_| {
            Failure::Input(format!(
                "{EDGE_LIMIT_VAR} must be a non-negative integer, got {s:?}"
            ))
        }),
    }
}

fn read_text(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    if path == "-" {
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("reading standard input: {e}")))?;
    } else {
        s = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("reading {path}: {e}")))?;
    }
    Ok(s)
}

fn read_graph(path: &str) -> Result<Multigraph, Failure> {
    parse_graph(&read_text(path)?).map_err(Failure::Input)
}

fn read_beta(g: &Multigraph, text: Option<&str>) -> Result<Z3Boundary, Failure> {
    let Some(text) = text else {
        return Ok(Z3Boundary::zero(g));
    };
    let b: BoundaryJson =
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("invalid boundary: {e}")))?;
    boundary_from_json(g, &b).map_err(|e| Failure::Input(format!("invalid boundary: {e}")))
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn need(v: Option<usize>, flag: &str, family: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::Input(format!("{family} needs --{flag}")))
}

fn family(a: &GenArgs) -> Result<Family, Failure> {
    let seed = a.seed;
    Ok(match a.family {
        FamilyName::Wheel => Family::Wheel {
            k: need(a.k, "k", "wheel")?,
        },
        FamilyName::K4 => Family::K4,
        FamilyName::Crystal => Family::Crystal {
            n: need(a.n, "n", "crystal")?,
            seed,
        },
        FamilyName::Book => Family::Book {
            n: need(a.n, "n", "book")?,
        },
        FamilyName::Fan => Family::Fan {
            n: need(a.n, "n", "fan")?,
        },
        FamilyName::Bullgrown => Family::Bullgrown {
            steps: need(a.steps, "steps", "bullgrown")?,
            seed,
        },
        FamilyName::Random2Tree => Family::Random2Tree {
            n: need(a.n, "n", "random2tree")?,
            extra: a.extra,
            seed,
        },
        FamilyName::Double2Tree => Family::Double2Tree {
            n: need(a.n, "n", "double2tree")?,
            seed,
        },
    })
}

fn cmd_gen(a: &GenArgs) -> Result<(String, u8), Failure> {
    let g = generate(&family(a)?).map_err(|e| Failure::Input(e.to_string()))?;
    Ok((to_json(&GraphJson::from(&g)), 0))
}

fn cmd_analyze(a: &AnalyzeArgs) -> Result<(String, u8), Failure> {
    let g = read_graph(&a.input.input)?;
    let picked = Analyses {
        nzf: a.nzf,
        z3: a.z3,
        s3: a.s3,
        flow_index: a.flow_index,
        tri: a.tri,
    };
    let analyses = if a.all || picked == Analyses::default() {
        Analyses::all()
    } else {
        picked
    };
    let opts = Options {
        analyses,
        cross_check: a.cross_check,
        timings: a.timings,
        oracle: oracle_from_env()?,
    };
    let r = analyze(&g, &opts)?;
    let code = match &r.cross_check {
        Some(c) if !c.agree => {
            for d in &c.disagreements {
                eprintln!("disagreement: {d}");
            }
            2
        }
        _ => 0,
    };
    Ok((to_json(&r), code))
}

fn cmd_corpus(a: &CorpusArgs, json: bool) -> Result<(String, u8), Failure> {
    let checks = if a.checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        a.checks.clone()
    };
    let cfg = corpus::Config {
        n: a.n,
        extra: a.extra,
        max_edges: a.max_edges,
        checks,
        oracle: oracle_from_env()?,
    };
    let r = corpus::run(&cfg)?;
    let out = if json { to_json(&r) } else { r.to_table() };
    if r.partial {
        eprintln!("partial run: the oracle guardrail skipped some instances");
    }
    Ok((out, r.exit_code()))
}

fn cmd_export(a: &ExportArgs) -> Result<(String, u8), Failure> {
    let doc = parse_document(&read_text(&a.input.input)?).map_err(Failure::Input)?;
    if !a.dot {
        let out = match &doc {
            Document::Graph(g) => to_json(&GraphJson::from(
                &g.to_graph().map_err(|e| Failure::Input(e.to_string()))?,
            )),
            Document::Certificate(c) => to_json(c),
            Document::Flow(f) => to_json(f),
            Document::Orientation(o) => to_json(o),
            Document::Proof(p) => to_json(p),
            Document::Partition(p) => to_json(p),
        };
        return Ok((out, 0));
    }
    let out = match &doc {
        Document::Graph(g) => graph_dot(&g.to_graph().map_err(|e| Failure::Input(e.to_string()))?),
        Document::Orientation(o) => orientation_dot(&crate::json::orientation_from_json(o)),
        Document::Flow(f) => orientation_dot(&f.to_flow().orientation),
        Document::Certificate(c) => {
            let c = c
                .to_certificate()
                .map_err(|e| Failure::Input(e.to_string()))?;
            certificate_dot(&c)
                .ok_or_else(|| Failure::Check("certificate does not replay".into()))?
        }
        other => {
            return Err(Failure::Input(format!(
                "a {} has no DOT form",
                other.kind()
            )))
        }
    };
    Ok((out, 0))
}

fn cmd_oracle(a: &OracleArgs, json: bool) -> Result<(String, u8), Failure> {
    let g = read_graph(&a.input.input)?;
    let oracle = oracle_from_env()?;
    let guard = |e: triflow_core::Error| match e {
        triflow_core::Error::TooLarge { .. } => Failure::Guardrail(e.to_string()),
        triflow_core::Error::Disconnected => Failure::Input("the graph is disconnected".into()),
        other => Failure::Input(other.to_string()),
    };
    let (verdict, detail) = match a.kind {
        OracleKind::Nzf => {
            let f = oracle.has_nzf(&g, a.k).map_err(guard)?;
            (
                f.is_some(),
                f.map(|f| json!({ "flow": FlowJson::from(&f) })),
            )
        }
        OracleKind::Mod3 => {
            let beta = read_beta(&g, a.beta.as_deref())?;
            let d = oracle.mod3_orient(&g, &beta).map_err(guard)?;
            (
                d.is_some(),
                d.map(|d| json!({ "orientation": orientation_json(&d) })),
            )
        }
        OracleKind::Z3 | OracleKind::S3 | OracleKind::FlowIndex => {
            let r = match a.kind {
                OracleKind::Z3 => oracle.z3_connected(&g),
                OracleKind::S3 => oracle.s3_member(&g),
                _ => oracle.flow_index_lt3(&g),
            }
            .map_err(guard)?;
            let detail = match (&r.witness, &r.counterexample_boundary) {
                (Some(triflow_core::oracle::Witness::Orientation(d)), _) => {
                    Some(json!({ "orientation": orientation_json(d) }))
                }
                (_, Some(b)) => Some(json!({ "counterexample_boundary": boundary_json(b) })),
                _ => None,
            };
            (r.verdict, detail)
        }
        OracleKind::Color => {
            let c = oracle.vertex_3_colorable(&g);
            (
                c.is_some(),
                c.map(|c| json!({ "coloring": coloring_json(&c) })),
            )
        }
    };
    let out = if json {
        let mut v = json!({ "verdict": verdict });
        if let Some(serde_json::Value::Object(m)) = detail {
            v.as_object_mut().expect("object").extend(m);
        }
        to_json(&v)
    } else {
        format!("{verdict}\n")
    };
    Ok((out, 0))
}

fn cmd_verify(a: &VerifyArgs, json: bool) -> Result<(String, u8), Failure> {
    let g = read_graph(&a.input.input)?;
    let doc = parse_document(&read_text(&a.witness)?).map_err(Failure::Input)?;
    let bad = |e: triflow_core::Error| Failure::Input(e.to_string());
    let (ok, reason): (bool, String) = match &doc {
        Document::Certificate(c) => {
            let ok = verify_certificate(&g, &c.to_certificate().map_err(bad)?);
            (
                ok,
                if ok {
                    "certificate replays to the graph".into()
                } else {
                    "certificate does not replay to the graph".into()
                },
            )
        }
        Document::Proof(p) => {
            let ok = verify_z3proof(&g, &p.to_proof());
            (
                ok,
                if ok {
                    "proof verifies".into()
                } else {
                    "proof does not verify".into()
                },
            )
        }
        Document::Flow(f) => {
            let ok = f.to_flow().check(&g);
            (
                ok,
                if ok {
                    "nowhere-zero flow".into()
                } else {
                    "not a nowhere-zero flow on the graph".into()
                },
            )
        }
        Document::Partition(p) => match p.to_partition().check(&g) {
            Ok(()) => (true, "valid spanning partition".into()),
            Err(e) => (false, e.to_string()),
        },
        Document::Orientation(o) => {
            let d = crate::json::orientation_from_json(o);
            match boundary_of(&g, &d) {
                Err(e) => (false, e.to_string()),
                Ok(b) => {
                    let strong = is_strongly_connected(&g, &d);
                    match &a.beta {
                        Some(_) if b != read_beta(&g, a.beta.as_deref())? => {
                            (false, "orientation misses the boundary".into())
                        }
                        _ => (
                            true,
                            format!(
                                "orientation{} with boundary {}",
                                if strong { ", strongly connected," } else { "" },
                                serde_json::to_string(&boundary_json(&b)).expect("serialisable")
                            ),
                        ),
                    }
                }
            }
        }
        Document::Graph(_) => {
            return Err(Failure::Input(
                "--witness holds a graph, not a witness".into(),
            ))
        }
    };
    let out = if json {
        to_json(&json!({ "kind": doc.kind(), "valid": ok, "reason": reason }))
    } else {
        format!("{}: {reason}\n", if ok { "valid" } else { "invalid" })
    };
    Ok((out, if ok { 0 } else { 2 }))
}

/// Runs a parsed command, returning standard output and the exit code.
pub fn execute(cli: &Cli) -> Result<(String, u8), Failure> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Corpus(a) => cmd_corpus(a, cli.json),
        Command::Export(a) => cmd_export(a),
        Command::Oracle(a) => cmd_oracle(a, cli.json),
        Command::Verify(a) => cmd_verify(a, cli.json),
    }
}

/// Parses `args`, runs the command and writes its output. Returns the exit
/// code.
pub fn main_with(args: impl IntoIterator<Item = String>) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok((out, code)) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|()| stdout.flush())
                .is_err()
            {
                return 1;
            }
            code
        }
        Err(f) => {
            eprintln!("triflow: {f}");
            f.exit_code()
        }
    }
}
