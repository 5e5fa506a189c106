//! The `respart` command line.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::anatomy::{gen_tree_anatomy, tree_anatomy};
use crate::bounds::{bounds_report_with, BoundEntry, BoundsOptions, BoundsReport};
use crate::constructions::{construct, Construction, Method};
use crate::error::Error;
use crate::graph::{all_pairs_distances, block_decomposition, is_generalized_tree, Graph};
use crate::io;
use crate::lab::{random_generalized_tree, random_tree, sweep, GenTreeParams, SweepOptions, SweepResult, SweepSpec};
use crate::resolver::{is_resolving_partition, partition_representation, ExactOptions, VertexPartition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_VIOLATIONS: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "respart", version, about = "Resolving partitions of trees and generalized trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print anatomy and the bounds report for a graph.
    Analyze {
        input: PathBuf,
        /// Compute exact pd and dim by search.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build a resolving partition with one of the constructions.
    Construct {
        input: PathBuf,
        #[arg(long, default_value = "auto")]
        method: Method,
        /// Write the partition file here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check whether a partition (text or JSON) resolves a graph.
    Verify {
        input: PathBuf,
        partition: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check every bound and construction over a family of graphs.
    Sweep {
        #[command(subcommand)]
        kind: SweepKind,
    },
    /// Print the graph in DOT, optionally colored by a partition.
    ExportDot {
        input: PathBuf,
        #[arg(long, conflicts_with = "method")]
        partition: Option<PathBuf>,
        #[arg(long)]
        method: Option<Method>,
    },
    /// Print a random tree (edge list) or generalized tree (build file).
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
}

#[derive(Debug, Args)]
pub struct SweepOutput {
    /// Write violations as JSON to this file.
    #[arg(long)]
    pub violations: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum SweepKind {
    /// All labeled trees in an order range.
    Trees {
        #[arg(long, default_value_t = 2)]
        min_n: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        /// Largest order for exact pd (defaults to max-n).
        #[arg(long)]
        pd_max_n: Option<usize>,
        /// Largest order for exact dim (defaults to max-n).
        #[arg(long)]
        dim_max_n: Option<usize>,
        #[command(flatten)]
        output: SweepOutput,
    },
    /// Seeded random trees.
    RandomTrees {
        #[arg(long, default_value_t = 500)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        min_n: usize,
        #[arg(long, default_value_t = 16)]
        max_n: usize,
        /// Also compare against exact pd and dim (within the size limits).
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        output: SweepOutput,
    },
    /// Seeded random generalized trees.
    Gentrees {
        #[arg(long, default_value_t = 200)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        params: GenTreeArgs,
        /// Skip the exact searches.
        #[arg(long)]
        no_exact: bool,
        #[command(flatten)]
        output: SweepOutput,
    },
}

#[derive(Debug, Args)]
pub struct GenTreeArgs {
    #[arg(long, default_value_t = 6)]
    pub max_blocks: usize,
    #[arg(long, default_value_t = 2)]
    pub min_size: usize,
    #[arg(long, default_value_t = 5)]
    pub max_size: usize,
    #[arg(long, default_value_t = 12)]
    pub max_vertices: usize,
}

impl From<&GenTreeArgs> for GenTreeParams {
    fn from(a: &GenTreeArgs) -> Self {
        GenTreeParams {
            max_blocks: a.max_blocks,
            min_size: a.min_size,
            max_size: a.max_size,
            max_vertices: a.max_vertices,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum GenerateKind {
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Gentree {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        params: GenTreeArgs,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                Error::VerificationFailed(_) => EXIT_VERIFICATION,
                Error::NotATree
                | Error::IsAPath
                | Error::NotAPath
                | Error::NotAStar
                | Error::IsAStar
                | Error::NotASpider { .. }
                | Error::TooFewLeaves { .. }
                | Error::NotGeneralizedTree(_)
                | Error::PreconditionViolated(_) => EXIT_PRECONDITION,
                _ => EXIT_USAGE,
            },
            CliError::Io { .. } | CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Errors are reported on `err`.
pub fn run_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match run(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let exact = ExactOptions::from_env();
    match &cli.command {
        Command::Analyze { input, exact: want_exact, json } => {
            let g = read_graph(input)?;
            let text = analyze(&g, *want_exact, exact, *json)?;
            emit(out, &text)?;
        }
        Command::Construct { input, method, out: out_path, json } => {
            let g = read_graph(input)?;
            let dm = all_pairs_distances(&g)?;
            let c = construct(&g, &dm, *method)?;
            let summary = format!("{}: {} classes, bound {}", c.method, c.class_count(), c.bound);
            let body = if *json { to_json(&construction_json(&c)) } else { io::format_partition(&c.partition) };
            match out_path {
                Some(path) => {
                    write_file(path, &body)?;
                    emit(out, &format!("{summary}\n"))?;
                }
                None => {
                    emit(out, &body)?;
                    if !*json {
                        emit(err, &format!("{summary}\n"))?;
                    }
                }
            }
        }
        Command::Verify { input, partition, json } => {
            let g = read_graph(input)?;
            let dm = all_pairs_distances(&g)?;
            let pi = read_partition(partition, g.n())?;
            let verdict = is_resolving_partition(&dm, &pi)?;
            let witness = match verdict.witness {
                Some((u, v)) => {
                    let ru = partition_representation(&dm, &pi, u)?;
                    let rv = partition_representation(&dm, &pi, v)?;
                    Some((u, v, ru, rv))
                }
                None => None,
            };
            let text = if *json {
                to_json(&json!({
                    "resolving": verdict.resolving,
                    "classes": pi.num_classes(),
                    "witness": witness.as_ref().map(|(u, v, ru, rv)| json!({
                        "pair": [u, v],
                        "representations": [ru, rv],
                    })),
                }))
            } else {
                match &witness {
                    None => format!("resolving ({} classes)\n", pi.num_classes()),
                    Some((u, v, ru, rv)) => format!(
                        "not resolving: vertices {u} and {v} share representation\n  r({u}) = {}\n  r({v}) = {}\n",
                        fmt_vec(&ru.0),
                        fmt_vec(&rv.0)
                    ),
                }
            };
            emit(out, &text)?;
        }
        Command::Sweep { kind } => return run_sweep(kind, exact, out),
        Command::ExportDot { input, partition, method } => {
            let g = read_graph(input)?;
            all_pairs_distances(&g)?;
            let pi = match (partition, method) {
                (Some(path), _) => Some(read_partition(path, g.n())?),
                (None, Some(m)) => Some(construct(&g, &all_pairs_distances(&g)?, *m)?.partition),
                (None, None) => None,
            };
            emit(out, &io::to_dot(&g, pi.as_ref())?)?;
        }
        Command::Generate { kind } => {
            let text = match kind {
                GenerateKind::Tree { n, seed } => io::format_edge_list(&random_tree(*n, *seed)?),
                GenerateKind::Gentree { seed, params } => random_generalized_tree(&params.into(), *seed)?.1.to_string(),
            };
            emit(out, &text)?;
        }
    }
    Ok(EXIT_OK)
}

fn run_sweep(kind: &SweepKind, exact: ExactOptions, out: &mut dyn Write) -> CliResult<i32> {
    let (spec, output) = match kind {
        SweepKind::Trees { min_n, max_n, pd_max_n, dim_max_n, output } => (
            SweepSpec::Trees {
                min_n: *min_n,
                max_n: *max_n,
                pd_max_n: pd_max_n.unwrap_or(*max_n),
                dim_max_n: dim_max_n.unwrap_or(*max_n),
            },
            output,
        ),
        SweepKind::RandomTrees { count, seed, min_n, max_n, exact, output } => (
            SweepSpec::RandomTrees { count: *count, seed_start: *seed, min_n: *min_n, max_n: *max_n, exact: *exact },
            output,
        ),
        SweepKind::Gentrees { count, seed, params, no_exact, output } => (
            SweepSpec::GenTrees { count: *count, seed_start: *seed, params: params.into(), exact: !no_exact },
            output,
        ),
    };
    let result = sweep(&spec, &SweepOptions { exact, corruption: None })?;
    if let Some(path) = &output.violations {
        write_file(path, &to_json(&serde_json::to_value(&result.violations).expect("serializable")))?;
    }
    let text = if output.json { to_json(&sweep_json(&result)) } else { sweep_text(&result) };
    emit(out, &text)?;
    Ok(if result.passed() { EXIT_OK } else { EXIT_VIOLATIONS })
}

fn sweep_json(result: &SweepResult) -> Value {
    json!({ "instances": result.instances, "passed": result.passed(), "violations": result.violations })
}

fn sweep_text(result: &SweepResult) -> String {
    let mut s = format!("{} instances, {} violations\n", result.instances, result.violations.len());
    for v in result.violations.iter().take(20) {
        writeln!(s, "  {}: {} expected {}, observed {}", v.instance, v.check, v.expected, v.observed).unwrap();
    }
    if result.violations.len() > 20 {
        writeln!(s, "  ... {} more", result.violations.len() - 20).unwrap();
    }
    s
}

fn graph_class(g: &Graph) -> &'static str {
    if g.n() >= 2 && g.is_path_graph() {
        "path"
    } else if g.is_star_graph() {
        "star"
    } else if g.is_tree() {
        "tree"
    } else if is_generalized_tree(g) {
        "generalized_tree"
    } else {
        "graph"
    }
}

/// Builds the analyze report; see the README for the JSON schema.
pub fn analyze(g: &Graph, want_exact: bool, exact: ExactOptions, json: bool) -> CliResult<String> {
    let dm = all_pairs_distances(g)?;
    let class = graph_class(g);
    if want_exact && class != "path" && g.n() > exact.pd_limit {
        return Err(Error::TooLarge { n: g.n(), limit: exact.pd_limit }.into());
    }
    let opts = BoundsOptions { compute_exact: want_exact, exact, corruption: None };
    let report = bounds_report_with(g, &dm, &opts)?;
    let tree = if g.is_tree() && !g.is_path_graph() { Some(tree_anatomy(g, &dm)?) } else { None };
    let gentree = if is_generalized_tree(g) { Some(gen_tree_anatomy(g, &block_decomposition(g)?)?) } else { None };

    if json {
        let tree_json = tree.as_ref().map(|a| {
            json!({
                "n1": a.n1(), "ex": a.ex(), "kappa": a.kappa, "tau": a.tau,
                "xi": a.xi(), "theta": a.theta(),
                "leaves": a.leaves, "majors": a.majors,
                "exterior_majors": a.exterior_majors,
                "supports": a.support.supports,
            })
        });
        return Ok(to_json(&json!({
            "n": g.n(),
            "m": g.edge_count(),
            "class": class,
            "tree": tree_json,
            "generalized_tree": gentree,
            "pd": report.exact_pd,
            "pd_source": report.pd_source,
            "pd_witness": report.pd_witness,
            "dim": report.exact_dim,
            "dim_witness": report.dim_witness,
            "theta_certificate": report.theta_certificate,
            "bounds": report.entries,
        })));
    }

    let mut s = format!("n={} m={} class={class}\n", g.n(), g.edge_count());
    if let Some(a) = &tree {
        writeln!(
            s,
            "tree: n1={} ex={} kappa={} tau={} xi={} theta={}",
            a.n1(),
            a.ex(),
            a.kappa,
            a.tau,
            a.xi(),
            a.theta()
        )
        .unwrap();
        for m in &a.exterior_majors {
            writeln!(s, "  exterior major {}: terminals {}", m.vertex, fmt_vec(&m.terminals)).unwrap();
        }
    }
    if let Some(ga) = &gentree {
        writeln!(s, "generalized tree: zeta={} vartheta={} phi={}", ga.zeta, ga.vartheta, ga.phi).unwrap();
    }
    write_exact(&mut s, &report);
    writeln!(s, "bounds:").unwrap();
    for e in &report.entries {
        writeln!(s, "  {}", fmt_entry(e)).unwrap();
    }
    Ok(s)
}

fn write_exact(s: &mut String, r: &BoundsReport) {
    if let (Some(pd), Some(src)) = (r.exact_pd, r.pd_source) {
        let src = serde_json::to_value(src).expect("serializable");
        write!(s, "pd={pd} ({})", src.as_str().unwrap_or_default()).unwrap();
        if let Some(w) = &r.pd_witness {
            write!(s, " witness {}", fmt_classes(w)).unwrap();
        }
        s.push('\n');
    }
    if let Some(dim) = r.exact_dim {
        writeln!(s, "dim={dim} witness {}", fmt_vec(r.dim_witness.as_deref().unwrap_or_default())).unwrap();
    }
}

fn fmt_entry(e: &BoundEntry) -> String {
    let kind = serde_json::to_value(e.kind).expect("serializable");
    let value = e.value.map_or("-".to_string(), |v| v.to_string());
    let status = match (e.applicable, e.satisfied, e.tight) {
        (false, ..) => "n/a",
        (true, None, _) => "unchecked",
        (true, Some(false), _) => "VIOLATED",
        (true, Some(true), Some(true)) => "ok (tight)",
        (true, Some(true), _) => "ok",
    };
    format!("{:<38} {:<16} {:>4}  {status}", e.name, kind.as_str().unwrap_or_default(), value)
}

fn fmt_vec<T: ToString>(v: &[T]) -> String {
    let items: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", items.join(", "))
}

fn fmt_classes(p: &VertexPartition) -> String {
    let classes: Vec<String> = p
        .classes()
        .iter()
        .map(|c| format!("{{{}}}", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("{{{}}}", classes.join(", "))
}

fn construction_json(c: &Construction) -> Value {
    json!({
        "method": c.method,
        "bound": c.bound,
        "classes": c.class_count(),
        "partition": c.partition,
    })
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit(w: &mut dyn Write, text: &str) -> CliResult<()> {
    w.write_all(text.as_bytes())
        .map_err(|source| CliError::Io { path: PathBuf::from("<output>"), source })
}

fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn read_graph(path: &Path) -> CliResult<Graph> {
    Ok(io::parse_graph(&read_file(path)?)?)
}

/// Reads a partition file, or the JSON written by `construct --json`.
fn read_partition(path: &Path, n: usize) -> CliResult<VertexPartition> {
    let text = read_file(path)?;
    let trimmed = text.trim_start();
    if !(trimmed.starts_with('[') || trimmed.starts_with('{')) {
        return Ok(io::parse_partition(&text, n)?);
    }
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: invalid JSON: {e}", path.display())))?;
    let classes = value.get("partition").unwrap_or(&value);
    let classes: Vec<Vec<usize>> = serde_json::from_value(classes.clone())
        .map_err(|e| CliError::Usage(format!("{}: expected a list of classes: {e}", path.display())))?;
    Ok(VertexPartition::new(classes, n)?)
}
