use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use rsp_core::oracle::{
    enumerate_paths_with_budget, oracle_rsp_quantities, walk_oracle, DEFAULT_CAP, DEFAULT_PATH_BUDGET,
};
use rsp_core::rank::{mean_group_rank, spearman, top_k_overlap};
use rsp_core::{reference_transitions, write_edge_list, Graph, RspModel, TransitionPolicy};
use serde::Serialize;

use crate::dot::{self, Palette};
use crate::error::{CliError, CliResult};
use crate::measure::{self, Measure};
use crate::output::{
    fmt_sig, output_path, score_csv, score_rows, to_json, write_file, RunManifest, ScoreRow, ScoreTable,
};
use crate::source::{read_group, GraphArgs, PolicyArg};

/// Deviation above which `oracle-check` fails.
pub const ORACLE_TOLERANCE: f64 = 1e-6;

fn base_manifest(command: &str, graph: &GraphArgs, threads: Option<usize>) -> RunManifest {
    let mut m = RunManifest::new(command);
    m.input = graph.input.as_ref().map(|p| p.display().to_string());
    m.generator = graph.generate.clone();
    m.directed = graph.directed;
    m.cost_policy = graph.cost_name().to_string();
    m.seed = graph.seed;
    m.threads = threads;
    m
}

fn node_label(g: &Graph, label: &str) -> CliResult<usize> {
    g.node_id(label)
        .ok_or_else(|| CliError::validation("unknown-node", format!("no node labelled `{label}`")))
}

/// Writes `body` to `PREFIX.ext` plus a JSON mirror, or prints it when no
/// prefix is given.
fn emit<T: Serialize>(
    out: &Option<PathBuf>,
    ext: &str,
    body: &str,
    mut manifest: RunManifest,
    json: impl FnOnce(RunManifest) -> T,
) -> CliResult<()> {
    match out {
        Some(prefix) => {
            let main = output_path(prefix, ext);
            let mirror = output_path(prefix, ".json");
            manifest.outputs = vec![main.display().to_string(), mirror.display().to_string()];
            write_file(&main, body)?;
            write_file(&mirror, &to_json(&json(manifest)))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum)]
    pub measure: Measure,
    /// Inverse temperature (rsp and rsp-net).
    #[arg(long)]
    pub beta: Vec<f64>,
    #[arg(long, value_enum, default_value = "weight")]
    pub policy: PolicyArg,
    /// Output prefix: writes PREFIX.csv and PREFIX.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct ScoreDocument<'a> {
    manifest: RunManifest,
    measure: String,
    notes: &'a [String],
    scores: Vec<ScoreRow<'a>>,
}

pub fn compute(args: &ComputeArgs, threads: Option<usize>) -> CliResult<()> {
    let g = args.graph.load()?;
    let beta = match (args.measure.uses_beta(), args.beta.as_slice()) {
        (true, [b]) => Some(*b),
        (true, []) => None,
        (true, _) => {
            return Err(CliError::validation(
                "single-beta-required",
                "compute takes one --beta; use sweep for a grid",
            ))
        }
        (false, _) => None,
    };
    let policy: TransitionPolicy = args.policy.into();
    let v = measure::compute(args.measure, &g, policy, beta)?;
    for note in v.notes() {
        eprintln!("warning: {note}");
    }
    let mut manifest = base_manifest("compute", &args.graph, threads);
    manifest.measure = Some(args.measure.name().to_string());
    manifest.betas = beta.into_iter().collect();
    manifest.policy = args.measure.uses_policy().then(|| policy.name().to_string());
    emit(&args.out, ".csv", &score_csv(&g, &v), manifest, |manifest| {
        ScoreDocument {
            manifest,
            measure: v.tag().to_string(),
            notes: v.notes(),
            scores: score_rows(&g, &v),
        }
    })
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value = "rsp")]
    pub measure: Measure,
    /// Inverse temperatures, in output order.
    #[arg(long, required = true)]
    pub beta: Vec<f64>,
    #[arg(long, value_enum, default_value = "weight")]
    pub policy: PolicyArg,
    /// File of node labels whose mean rank is summarized per β.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Relative tolerance under which scores share an averaged rank in the
    /// group summary.
    #[arg(long, default_value_t = 1e-9)]
    pub tie_tol: f64,
    /// Output prefix: writes PREFIX.csv, PREFIX.json and PREFIX.groups.csv.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct GroupRow {
    beta: f64,
    mean_rank: f64,
    group_size: usize,
}

#[derive(Serialize)]
struct SweepBlock<'a> {
    beta: f64,
    notes: Vec<String>,
    scores: Vec<ScoreRow<'a>>,
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    manifest: RunManifest,
    measure: &'a str,
    blocks: Vec<SweepBlock<'a>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    group_summary: Vec<GroupRow>,
}

pub fn sweep(args: &SweepArgs, threads: Option<usize>) -> CliResult<()> {
    if !args.measure.uses_beta() {
        return Err(CliError::validation(
            "beta-independent-measure",
            format!("sweep needs rsp or rsp-net, got {}", args.measure.name()),
        ));
    }
    let g = args.graph.load()?;
    let group = args.group.as_deref().map(|p| read_group(p, &g)).transpose()?;
    let policy: TransitionPolicy = args.policy.into();
    let transitions = reference_transitions(&g, policy)?;
    g.check_strong_connectivity()?;

    let mut csv = String::from("beta,node_id,score,rank\n");
    let mut vectors = Vec::with_capacity(args.beta.len());
    for &beta in &args.beta {
        let scored = RspModel::with_transitions(&g, transitions.clone(), beta)
            .map_err(CliError::from)
            .and_then(|m| measure::from_model(args.measure, &m));
        let v = scored.map_err(|e| match e {
            CliError::Validation { reason, message } => CliError::Validation {
                reason,
                message: format!("at beta = {beta}: {message}"),
            },
            CliError::Numerical { reason, message } => CliError::Numerical {
                reason,
                message: format!("at beta = {beta}: {message}"),
            },
            other => other,
        })?;
        let ranks = v.ranks();
        for &node in v.ranking() {
            let _ = writeln!(
                csv,
                "{},{},{},{}",
                fmt_sig(beta),
                g.label(node),
                fmt_sig(v.scores()[node]),
                ranks[node]
            );
        }
        vectors.push((beta, v));
    }
    for note in vectors.first().map(|(_, v)| v.notes()).unwrap_or_default() {
        eprintln!("warning: {note}");
    }

    let summary: Vec<GroupRow> = match &group {
        Some(members) => vectors
            .iter()
            .map(|(beta, v)| GroupRow {
                beta: *beta,
                mean_rank: mean_group_rank(v.scores(), members, args.tie_tol),
                group_size: members.len(),
            })
            .collect(),
        None => Vec::new(),
    };
    let mut summary_csv = String::from("beta,mean_rank,group_size\n");
    for row in &summary {
        let _ = writeln!(
            summary_csv,
            "{},{},{}",
            fmt_sig(row.beta),
            fmt_sig(row.mean_rank),
            row.group_size
        );
    }

    let mut manifest = base_manifest("sweep", &args.graph, threads);
    manifest.measure = Some(args.measure.name().to_string());
    manifest.betas = args.beta.clone();
    manifest.policy = Some(policy.name().to_string());
    manifest.group = args.group.as_ref().map(|p| p.display().to_string());
    match &args.out {
        Some(prefix) => {
            let main = output_path(prefix, ".csv");
            let mirror = output_path(prefix, ".json");
            let groups = output_path(prefix, ".groups.csv");
            manifest.outputs = vec![main.display().to_string(), mirror.display().to_string()];
            if group.is_some() {
                manifest.outputs.push(groups.display().to_string());
                write_file(&groups, &summary_csv)?;
            }
            write_file(&main, &csv)?;
            let doc = SweepDocument {
                manifest,
                measure: args.measure.name(),
                blocks: vectors
                    .iter()
                    .map(|(beta, v)| SweepBlock {
                        beta: *beta,
                        notes: v.notes().to_vec(),
                        scores: score_rows(&g, v),
                    })
                    .collect(),
                group_summary: summary,
            };
            write_file(&mirror, &to_json(&doc))
        }
        None => {
            print!("{csv}");
            if group.is_some() {
                eprint!("{summary_csv}");
            }
            Ok(())
        }
    }
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Two score CSV files with `node_id` and `score` columns.
    #[arg(num_args = 2, required = true)]
    pub files: Vec<PathBuf>,
    /// Relative tolerance under which scores tie for Spearman's rho.
    #[arg(long, default_value_t = 1e-9)]
    pub tie_tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct CompareDocument {
    manifest: RunManifest,
    spearman: f64,
    top_k_overlap: Vec<(usize, f64)>,
}

pub fn compare(args: &CompareArgs, threads: Option<usize>) -> CliResult<()> {
    let a = ScoreTable::read(&args.files[0])?;
    let b = ScoreTable::read(&args.files[1])?;
    let b_scores = b.aligned_to(&a.labels).ok_or_else(|| {
        CliError::validation(
            "mismatched-nodes",
            format!(
                "{} and {} cover different nodes",
                args.files[0].display(),
                args.files[1].display()
            ),
        )
    })?;
    let rho = spearman(&a.scores, &b_scores, args.tie_tol);
    let overlaps: Vec<(usize, f64)> = [1, 5, 10]
        .iter()
        .map(|&k| (k, top_k_overlap(&a.scores, &b_scores, k)))
        .collect();
    let mut report = String::from("metric,value\n");
    let _ = writeln!(report, "spearman,{}", fmt_sig(rho));
    for (k, o) in &overlaps {
        let _ = writeln!(report, "top_{k},{}", fmt_sig(*o));
    }
    let mut manifest = RunManifest::new("compare");
    manifest.input = Some(
        args.files
            .iter()
            .map(|p| p.display().to_string())
            .collect::<Vec<_>>()
            .join(","),
    );
    manifest.threads = threads;
    emit(&args.out, ".csv", &report, manifest, |manifest| CompareDocument {
        manifest,
        spearman: rho,
        top_k_overlap: overlaps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OracleMethod {
    /// List every absorbing path (bounded by --budget).
    Enumerate,
    /// Dynamic program over path length; same truncated sums.
    Walk,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Source node label.
    #[arg(long)]
    pub source: String,
    /// Target node label.
    #[arg(long)]
    pub target: String,
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    /// Maximum path length in edges.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    /// Maximum number of enumerated paths.
    #[arg(long, default_value_t = DEFAULT_PATH_BUDGET)]
    pub budget: u64,
    #[arg(long, value_enum, default_value = "enumerate")]
    pub method: OracleMethod,
    #[arg(long, value_enum, default_value = "weight")]
    pub policy: PolicyArg,
}

pub fn oracle_check(args: &OracleArgs) -> CliResult<()> {
    let g = args.graph.load()?;
    let s = node_label(&g, &args.source)?;
    let t = node_label(&g, &args.target)?;
    let policy: TransitionPolicy = args.policy.into();
    let transitions = reference_transitions(&g, policy)?;
    let est = match args.method {
        OracleMethod::Enumerate => {
            let e = enumerate_paths_with_budget(&g, &transitions, s, t, args.cap, args.budget)?;
            oracle_rsp_quantities(&e, &g, args.beta)?
        }
        OracleMethod::Walk => walk_oracle(&g, &transitions, s, t, args.cap, args.beta)?,
    };
    let model = RspModel::with_transitions(&g, transitions, args.beta)?;
    let partition = model.solve().pair_partition_function(s, t)?;
    let flows = model.pair_edge_flows(s, t)?;

    let dev_z = (partition - est.partition).abs();
    let dev_visits = flows
        .node_visits
        .iter()
        .zip(&est.visits)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let dev_flows = flows
        .edge_flows
        .iter()
        .zip(&est.edge_flows)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let worst = dev_z.max(dev_visits).max(dev_flows);
    let pass = worst <= ORACLE_TOLERANCE;
    println!(
        "pair {} -> {} beta {} cap {}",
        args.source,
        args.target,
        fmt_sig(args.beta),
        args.cap
    );
    println!(
        "partition closed-form {} oracle {}",
        fmt_sig(partition),
        fmt_sig(est.partition)
    );
    println!(
        "deviation partition {:e} visits {:e} flows {:e}",
        dev_z, dev_visits, dev_flows
    );
    println!("last-increment {:e}", est.last_increment);
    println!(
        "{} max deviation {:e} (tolerance {:e})",
        if pass { "PASS" } else { "FAIL" },
        worst,
        ORACLE_TOLERANCE
    );
    if pass {
        Ok(())
    } else {
        Err(CliError::OracleFailure {
            message: format!("max deviation {worst:e} exceeds {ORACLE_TOLERANCE:e}"),
        })
    }
}

#[derive(Debug, Args)]
pub struct DotArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Score CSV covering every node.
    #[arg(long)]
    pub scores: PathBuf,
    #[arg(long, value_enum, default_value = "heat")]
    pub palette: Palette,
    /// Output file; prints to stdout otherwise.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn export_dot(args: &DotArgs) -> CliResult<()> {
    let g = args.graph.load()?;
    let table = ScoreTable::read(&args.scores)?;
    let scores = table.aligned_to(g.labels()).ok_or_else(|| {
        CliError::validation(
            "missing-scores",
            format!("{} does not score every node exactly once", args.scores.display()),
        )
    })?;
    let title = args
        .scores
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "scores".to_string());
    let doc = dot::render(&g, &scores, args.palette, &title);
    match &args.out {
        Some(path) => write_file(path, &doc),
        None => {
            print!("{doc}");
            Ok(())
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Output prefix: writes PREFIX.edges and PREFIX.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Serialize)]
struct GenerateDocument {
    manifest: RunManifest,
    nodes: usize,
    edges: usize,
}

pub fn generate(args: &GenerateArgs, threads: Option<usize>) -> CliResult<()> {
    let g = args.graph.load()?;
    let text = write_edge_list(&g);
    let manifest = base_manifest("generate", &args.graph, threads);
    let edges = if g.is_undirected() {
        g.arc_count() / 2
    } else {
        g.arc_count()
    };
    emit(&args.out, ".edges", &text, manifest, |manifest| GenerateDocument {
        manifest,
        nodes: g.node_count(),
        edges,
    })
}
