//! Command-line front end: `vc <command> [options] [FILE]`.
//!
//! Exit codes: 0 success, 1 answered "no" (infeasible decision, failed
//! certification or audit), 2 usage / input error, 3 node budget exhausted.
//! With `--json` every command prints line-delimited JSON: zero or more
//! record lines followed by one [`RunReport`] line.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::io::{parse_graph, parse_graph_as, render_graph, Format};
use crate::reduce::Simplifier;
use crate::reduce::DEFAULT_COMPONENT_LIMIT;
use crate::solver::{solve_decision, solve_optimum, Level, SolveStats, SolverConfig};
use crate::verify::{audit_trace, evaluate_constraints, Profile};
use crate::{gen, oracle, Error, Graph, Instance, Result, VertexSet};

/// Environment variable supplying the default `--budget`.
pub const BUDGET_ENV: &str = "VC_BRANCH_BUDGET";

/// Exit code: success.
pub const EXIT_OK: i32 = 0;
/// Exit code: the answer is "no".
pub const EXIT_NO: i32 = 1;
/// Exit code: bad usage or malformed input.
pub const EXIT_USAGE: i32 = 2;
/// Exit code: node budget exhausted.
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "vc", version, about = "Exact parameterized vertex cover by LP-surplus branch-and-reduce")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Solver level.
    #[arg(long, global = true, default_value = "level7", value_parser = parse_level)]
    algorithm: Level,
    /// Seed for `gen`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum search nodes (default: $VC_BRANCH_BUDGET, else unlimited).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Largest component solved exhaustively while simplifying (0 disables;
    /// default 24, or 0 for `reduce`).
    #[arg(long, global = true)]
    component_limit: Option<usize>,
    /// Graph file format (input is auto-detected when omitted; output defaults to td).
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<Format>,
    /// Print line-delimited JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a vertex cover of size at most k exists.
    Solve {
        /// Graph file (`-` or omitted: stdin).
        input: Option<PathBuf>,
        /// Cover size bound.
        #[arg(long)]
        k: i64,
    },
    /// Compute a minimum vertex cover.
    Optimize {
        /// Graph file (`-` or omitted: stdin).
        input: Option<PathBuf>,
    },
    /// Evaluate the measure-constraint tables.
    VerifyConstants {
        /// simple, advanced-4 … advanced-7, or all.
        #[arg(long, default_value = "all")]
        profile: String,
    },
    /// Solve with every branching step audited against its claimed drop.
    Audit {
        /// Graph file (`-` or omitted: stdin).
        input: Option<PathBuf>,
        /// Cover size bound (omitted: optimize).
        #[arg(long)]
        k: Option<i64>,
    },
    /// Exhaustive minimum vertex cover (small graphs only).
    Oracle {
        /// Graph file (`-` or omitted: stdin).
        input: Option<PathBuf>,
    },
    /// Generate a graph.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Simplify only; print the reduced graph.
    Reduce {
        /// Graph file (`-` or omitted: stdin).
        input: Option<PathBuf>,
        /// Parameter to reduce along with the graph.
        #[arg(long)]
        k: Option<i64>,
        /// Append the reduction trace as `c trace` lines.
        #[arg(long)]
        emit_trace: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// Erdős–Rényi G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
    /// Random d-regular graph.
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Circulant C_n(offsets).
    Circulant {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        offsets: Vec<usize>,
    },
    /// A named graph: petersen, kite, q<d>, c<n>, k<n>, star<n>, p<n>, grid<r>x<c>, circ<n>:<s>,…
    Named { name: String },
}

fn parse_level(s: &str) -> std::result::Result<Level, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Configuration echoed in every report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    /// Solver level.
    pub algorithm: Level,
    /// Node budget.
    pub budget: Option<u64>,
    /// Component limit in effect.
    pub component_limit: usize,
    /// Generator seed.
    pub seed: u64,
    /// Graph format.
    pub format: Format,
}

/// Machine-readable summary of one command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// Subcommand name.
    pub command: String,
    /// SHA-256 of the input bytes, when there was an input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    /// Configuration used.
    pub config: ConfigEcho,
    /// Command-specific result.
    pub result: Value,
    /// Search statistics, for solving commands.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<SolveStats>,
}

struct Output {
    code: i32,
    records: Vec<Value>,
    text: String,
    result: Value,
    stats: Option<SolveStats>,
    digest: Option<String>,
}

impl Output {
    fn new(code: i32, text: String, result: Value) -> Self {
        Output { code, records: Vec::new(), text, result, stats: None, digest: None }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let budget = match cli.opts.budget {
        Some(b) => Some(b),
        None => match std::env::var(BUDGET_ENV) {
            Ok(s) => match s.trim().parse() {
                Ok(b) => Some(b),
                Err(_) => {
                    let _ = writeln!(err, "error: {BUDGET_ENV}='{s}' is not a node count");
                    return EXIT_USAGE;
                }
            },
            Err(_) => None,
        },
    };
    let is_reduce = matches!(cli.command, Command::Reduce { .. });
    let echo = ConfigEcho {
        algorithm: cli.opts.algorithm,
        budget,
        component_limit: cli.opts.component_limit.unwrap_or(if is_reduce { 0 } else { DEFAULT_COMPONENT_LIMIT }),
        seed: cli.opts.seed,
        format: cli.opts.format.unwrap_or_default(),
    };
    let name = command_name(&cli.command);
    let (code, report, records, text) = match execute(&cli, &echo, stdin) {
        Ok(o) => {
            let report =
                RunReport { command: name.into(), input_digest: o.digest, config: echo, result: o.result, stats: o.stats };
            (o.code, report, o.records, o.text)
        }
        Err(Error::Budget { nodes, stats }) => {
            let report = RunReport {
                command: name.into(),
                input_digest: None,
                config: echo,
                result: json!({ "status": "budget-exhausted", "nodes": nodes }),
                stats: Some(*stats),
            };
            (EXIT_BUDGET, report, Vec::new(), format!("budget exhausted after {nodes} nodes\n"))
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = if cli.opts.json {
        records
            .iter()
            .try_for_each(|r| writeln!(out, "{r}"))
            .and_then(|_| writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes")))
    } else {
        out.write_all(text.as_bytes())
    };
    if written.is_err() {
        return EXIT_USAGE;
    }
    code
}

/// Entry point for the `vc` binary.
pub fn main_from_env() -> i32 {
    run(std::env::args_os(), &mut std::io::stdin().lock(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Solve { .. } => "solve",
        Command::Optimize { .. } => "optimize",
        Command::VerifyConstants { .. } => "verify-constants",
        Command::Audit { .. } => "audit",
        Command::Oracle { .. } => "oracle",
        Command::Gen { .. } => "gen",
        Command::Reduce { .. } => "reduce",
    }
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(std::fs::read_to_string(p)?),
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn load(path: &Option<PathBuf>, format: Option<Format>, stdin: &mut dyn Read) -> Result<(Graph, String)> {
    let text = read_input(path, stdin)?;
    let g = match format {
        Some(f) => parse_graph_as(&text, f)?,
        None => parse_graph(&text)?,
    };
    Ok((g, format!("{:x}", Sha256::digest(text.as_bytes()))))
}

/// 1-indexed ids, as in the input file.
fn one_based(c: &VertexSet) -> Vec<u64> {
    c.iter().map(|v| v as u64 + 1).collect()
}

fn cover_line(c: &VertexSet) -> String {
    let ids: Vec<String> = one_based(c).iter().map(u64::to_string).collect();
    format!("cover: {}\n", ids.join(" "))
}

fn execute(cli: &Cli, echo: &ConfigEcho, stdin: &mut dyn Read) -> Result<Output> {
    let cfg = SolverConfig {
        component_limit: echo.component_limit,
        budget: echo.budget,
        level: echo.algorithm,
        ..SolverConfig::default()
    };
    let fmt = cli.opts.format;
    let mut out = match &cli.command {
        Command::Solve { input, k } => {
            let (g, digest) = load(input, fmt, stdin)?;
            let r = solve_decision(&Instance::new(g, *k), echo.algorithm, &cfg)?;
            let mut text = if r.feasible { "feasible\n".to_string() } else { "infeasible\n".to_string() };
            if let Some(c) = &r.cover {
                text += &cover_line(c);
            }
            text += &format!("nodes: {}\n", r.stats.nodes);
            let result = json!({
                "k": k,
                "feasible": r.feasible,
                "cover": r.cover.as_ref().map(one_based),
            });
            let mut o = Output::new(if r.feasible { EXIT_OK } else { EXIT_NO }, text, result);
            o.stats = Some(r.stats);
            o.digest = Some(digest);
            o
        }
        Command::Optimize { input } => {
            let (g, digest) = load(input, fmt, stdin)?;
            let r = solve_optimum(&g, &cfg)?;
            let text = format!("opt: {}\n{}nodes: {}\n", r.opt, cover_line(&r.cover), r.stats.nodes);
            let mut o = Output::new(EXIT_OK, text, json!({ "opt": r.opt, "cover": one_based(&r.cover) }));
            o.stats = Some(r.stats);
            o.digest = Some(digest);
            o
        }
        Command::VerifyConstants { profile } => {
            let profiles: Vec<Profile> =
                if profile == "all" { Profile::ALL.to_vec() } else { vec![profile.parse()?] };
            let reports: Vec<_> = profiles.into_iter().map(evaluate_constraints).collect();
            let pass = reports.iter().all(|r| r.pass);
            let mut text = String::new();
            for r in &reports {
                text += &format!("# profile {} : {}\n", r.profile, if r.pass { "pass" } else { "FAIL" });
                text += &r.to_table();
            }
            let mut o = Output::new(if pass { EXIT_OK } else { EXIT_NO }, text, json!({ "pass": pass }));
            o.records = reports.iter().map(|r| serde_json::to_value(r).expect("report serializes")).collect();
            o
        }
        Command::Audit { input, k } => {
            let (g, digest) = load(input, fmt, stdin)?;
            let cfg = SolverConfig { audit: true, ..cfg };
            let (answer, mut stats) = match k {
                Some(k) => {
                    let r = solve_decision(&Instance::new(g, *k), echo.algorithm, &cfg)?;
                    (json!({ "k": k, "feasible": r.feasible }), r.stats)
                }
                None => {
                    let r = solve_optimum(&g, &cfg)?;
                    (json!({ "opt": r.opt }), r.stats)
                }
            };
            let records = std::mem::take(&mut stats.audit);
            let summary = audit_trace(&records, &cfg.params);
            let mut text = format!("audited nodes: {}\nviolations: {}\n", summary.records, summary.violations);
            for (rule, a) in &summary.per_rule {
                text += &format!("rule {rule}: {} nodes, {} violations, max val {:.6}\n", a.records, a.violations, a.max_val_realized);
            }
            let clean = summary.violations == 0 && summary.composition_mismatches == 0;
            let result = json!({ "answer": answer, "summary": summary });
            let mut o = Output::new(if clean { EXIT_OK } else { EXIT_NO }, text, result);
            o.records = records.iter().map(|r| json!({ "audit": r })).collect();
            o.stats = Some(stats);
            o.digest = Some(digest);
            o
        }
        Command::Oracle { input } => {
            let (g, digest) = load(input, fmt, stdin)?;
            let (opt, cover) = oracle::brute_force_vc(&g)?;
            let mut o = Output::new(
                EXIT_OK,
                format!("opt: {opt}\n{}", cover_line(&cover)),
                json!({ "opt": opt, "cover": one_based(&cover) }),
            );
            o.digest = Some(digest);
            o
        }
        Command::Gen { kind } => {
            let g = match kind {
                GenKind::Gnp { n, p } => gen::gnp(*n, *p, echo.seed)?,
                GenKind::Regular { n, d } => gen::random_regular(*n, *d, echo.seed)?,
                GenKind::Circulant { n, offsets } => gen::circulant(*n, offsets)?,
                GenKind::Named { name } => gen::named(name)?,
            };
            let text = render_graph(&g, echo.format);
            let edges: Vec<[u64; 2]> = g.edges().map(|(u, v)| [u as u64 + 1, v as u64 + 1]).collect();
            Output::new(EXIT_OK, text, json!({ "n": g.n(), "m": g.m(), "edges": edges }))
        }
        Command::Reduce { input, k, emit_trace } => {
            let (g, digest) = load(input, fmt, stdin)?;
            let k0 = k.unwrap_or(0);
            let (reduced, trace) = Simplifier::new(echo.component_limit).simplify(&Instance::new(g, k0));
            let dk = trace.total_dk();
            let (rg, _) = reduced.into_parts();
            let mut text = format!("c reduced by {} steps, dk {dk}\n", trace.len());
            if let Some(k) = k {
                text += &format!("c k {}\n", k - dk);
            }
            text += &render_graph(&rg, echo.format);
            if *emit_trace {
                for s in &trace.steps {
                    text += &format!("c trace {s}\n");
                }
            }
            let mut result = json!({
                "n": rg.n(),
                "m": rg.m(),
                "dk": dk,
                "k": k.map(|k| k - dk),
                "graph": render_graph(&rg, echo.format),
            });
            if *emit_trace {
                result["trace"] = serde_json::to_value(&trace).expect("trace serializes");
            }
            let mut o = Output::new(EXIT_OK, text, result);
            o.digest = Some(digest);
            o
        }
    };
    if let Some(s) = out.stats.as_mut() {
        s.audit.clear();
    }
    Ok(out)
}
