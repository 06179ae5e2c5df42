//! Batch front-end behind the `trinion` binary.
//!
//! Every subcommand expands its `(genus, level, graph)` grid into jobs, runs
//! them on a rayon pool and emits the results in job order, so output is the
//! same for any worker count.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::abelian::{abelian_row, gamma0_comparison, AbelianRow};
use crate::error::Error;
use crate::fiber::{classify, FiberRecord, GroupTag, Status};
use crate::graph::{enumerate_trivalent_graphs, gamma0, CanonicalCertificate, TrivalentGraph};
use crate::polytope::{lattice_asymptotics, lattice_check, polytope_of_graph, volume_mc};
use crate::verlinde::{count_report, verify_rank_identity, CountReport};
use crate::weights::{
    all_labelings, enumerate_weights, is_admissible, label_space_size, DEFAULT_MAX_COUNT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREEMENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN_COMMAND: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

const SCHEMA_VERSION: u32 = 1;
const LEVEL_CONVENTION: &str = "labels 0..=k, trigonometric sum over k+2";

#[derive(Parser, Debug)]
#[command(
    name = "trinion",
    version,
    about = "Fusion weights, Verlinde numbers and fibre data on trivalent graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Subcommand, Debug)]
enum CommandArgs {
    /// List isomorphism classes of trivalent graphs.
    Graphs(JobArgs),
    /// List admissible weights.
    Weights(JobArgs),
    /// Count weights on each selected graph by every available route.
    Count(JobArgs),
    /// Check the rank identity across all graphs of each genus.
    Verify(JobArgs),
    /// Polytope volume, lattice check and asymptotics.
    Polytope(JobArgs),
    /// Stabilizer tags and fibre invariants of every admissible weight.
    Fibers(JobArgs),
    /// Jacobian and Kummer counts.
    Abelian(JobArgs),
}

#[derive(Args, Debug, Clone)]
struct JobArgs {
    /// Genus or inclusive range `A..B`.
    #[arg(long, default_value = "2", value_parser = parse_range)]
    genus: RangeInclusive<u32>,
    /// Level or inclusive range `A..B`.
    #[arg(long, default_value = "1", value_parser = parse_range)]
    level: RangeInclusive<u32>,
    /// `all`, `gamma0`, or a canonical certificate in hex.
    #[arg(long, default_value = "all")]
    graph: String,
    /// Read the graph from a file instead.
    #[arg(long, conflicts_with = "graph")]
    graph_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_MAX_COUNT)]
    max_count: u128,
    /// `weights`: list every labeling with its admissibility.
    #[arg(long)]
    all_labelings: bool,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok(lo..=hi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Graphs,
    Weights,
    Count,
    Verify,
    Polytope,
    Fibers,
    Abelian,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSelector {
    All,
    Gamma0,
    Certificate(CanonicalCertificate),
    File(TrivalentGraph),
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    pub genus: RangeInclusive<u32>,
    pub level: RangeInclusive<u32>,
    pub graph: GraphSelector,
    pub format: Format,
    pub seed: u64,
    pub samples: u64,
    pub jobs: Option<usize>,
    pub max_count: u128,
    pub all_labelings: bool,
}

/// Exit code, standard output and diagnostics of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

impl JobSpec {
    pub fn parse<I, T>(args: I) -> Result<JobSpec, Outcome>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = match Cli::try_parse_from(args) {
            Ok(cli) => cli,
            Err(e) => {
                let code = match e.kind() {
                    ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                    ErrorKind::InvalidSubcommand => EXIT_UNKNOWN_COMMAND,
                    _ => EXIT_USAGE,
                };
                let text = e.render().to_string();
                return Err(if code == EXIT_OK {
                    Outcome {
                        code,
                        stdout: text,
                        stderr: String::new(),
                    }
                } else {
                    Outcome {
                        code,
                        stdout: String::new(),
                        stderr: text,
                    }
                });
            }
        };
        let (command, a) = match cli.command {
            CommandArgs::Graphs(a) => (Command::Graphs, a),
            CommandArgs::Weights(a) => (Command::Weights, a),
            CommandArgs::Count(a) => (Command::Count, a),
            CommandArgs::Verify(a) => (Command::Verify, a),
            CommandArgs::Polytope(a) => (Command::Polytope, a),
            CommandArgs::Fibers(a) => (Command::Fibers, a),
            CommandArgs::Abelian(a) => (Command::Abelian, a),
        };
        if *a.level.start() == 0 {
            return Err(Outcome::fail(EXIT_USAGE, Error::LevelZero));
        }
        if *a.genus.start() < 2 {
            return Err(Outcome::fail(EXIT_USAGE, "genus must be at least 2"));
        }
        if a.jobs == Some(0) {
            return Err(Outcome::fail(EXIT_USAGE, "--jobs must be positive"));
        }
        let graph = match (&a.graph_file, a.graph.as_str()) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Outcome::fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
                let g = TrivalentGraph::from_text(&text)
                    .map_err(|e| Outcome::fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
                GraphSelector::File(g)
            }
            (None, "all") => GraphSelector::All,
            (None, "gamma0") => GraphSelector::Gamma0,
            (None, hex) => GraphSelector::Certificate(
                CanonicalCertificate::from_hex(hex)
                    .ok_or_else(|| Outcome::fail(EXIT_USAGE, format!("bad certificate {hex:?}")))?,
            ),
        };
        Ok(JobSpec {
            command,
            genus: a.genus,
            level: a.level,
            graph,
            format: a.format,
            seed: a.seed,
            samples: a.samples,
            jobs: a.jobs,
            max_count: a.max_count,
            all_labelings: a.all_labelings,
        })
    }
}

/// Parses `args` (program name first) and runs the job.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match JobSpec::parse(args) {
        Ok(job) => run_job(&job),
        Err(outcome) => outcome,
    }
}

/// A check that came out false, identified by its job key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub check: &'static str,
    pub genus: u32,
    pub level: Option<u32>,
    pub graph: Option<CanonicalCertificate>,
}

struct Emitted {
    extra: Map<String, Value>,
    results: Vec<Value>,
    csv: String,
    failures: Vec<FailureRecord>,
}

impl Emitted {
    fn new(csv_header: &str) -> Self {
        Emitted {
            extra: Map::new(),
            results: Vec::new(),
            csv: format!("{csv_header}\n"),
            failures: Vec::new(),
        }
    }
}

pub fn run_job(job: &JobSpec) -> Outcome {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = job.jobs {
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let result = pool.install(|| match job.command {
        Command::Graphs => graphs(job),
        Command::Weights => weights(job),
        Command::Count => count(job),
        Command::Verify => verify(job),
        Command::Polytope => polytope(job),
        Command::Fibers => fibers(job),
        Command::Abelian => abelian(job),
    });
    finish(job, result)
}

fn finish(job: &JobSpec, result: Result<Emitted, Error>) -> Outcome {
    let out = match result {
        Ok(out) => out,
        Err(e @ (Error::Budget { .. } | Error::ContractionWidth { .. })) => {
            return Outcome::fail(EXIT_BUDGET, e)
        }
        Err(e) => return Outcome::fail(EXIT_USAGE, e),
    };
    let code = if out.failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    };
    let failures = serde_json::to_value(&out.failures).expect("failure records serialize");
    match job.format {
        Format::Json => {
            let mut env = Map::new();
            env.insert(
                "schema".into(),
                json!(format!(
                    "trinion.{}/{SCHEMA_VERSION}",
                    command_name(job.command)
                )),
            );
            env.extend(out.extra);
            env.insert("results".into(), Value::Array(out.results));
            env.insert("failures".into(), failures);
            Outcome {
                code,
                stdout: serde_json::to_string_pretty(&Value::Object(env)).expect("json") + "\n",
                stderr: String::new(),
            }
        }
        Format::Csv => Outcome {
            code,
            stdout: out.csv,
            stderr: if out.failures.is_empty() {
                String::new()
            } else {
                json!({ "failures": failures }).to_string() + "\n"
            },
        },
    }
}

fn command_name(c: Command) -> String {
    serde_json::to_value(c)
        .unwrap()
        .as_str()
        .unwrap()
        .to_owned()
}

fn select_graphs(job: &JobSpec, genus: u32) -> Result<Vec<TrivalentGraph>, Error> {
    Ok(match &job.graph {
        GraphSelector::All => enumerate_trivalent_graphs(genus)?,
        GraphSelector::Gamma0 => vec![gamma0(genus)?],
        GraphSelector::Certificate(c) => enumerate_trivalent_graphs(genus)?
            .into_iter()
            .filter(|g| g.certificate() == *c)
            .collect(),
        GraphSelector::File(g) if g.genus() == genus => vec![g.clone()],
        GraphSelector::File(_) => Vec::new(),
    })
}

type GridJob = (u32, u32, TrivalentGraph);

fn graph_grid(job: &JobSpec) -> Result<Vec<GridJob>, Error> {
    let mut out = Vec::new();
    for g in job.genus.clone() {
        let graphs = select_graphs(job, g)?;
        for k in job.level.clone() {
            out.extend(graphs.iter().map(|x| (g, k, x.clone())));
        }
    }
    if out.is_empty() {
        return Err(Error::Format("no graph matches the selection".into()));
    }
    Ok(out)
}

fn level_grid(job: &JobSpec) -> Vec<(u32, u32)> {
    job.genus
        .clone()
        .flat_map(|g| job.level.clone().map(move |k| (g, k)))
        .collect()
}

fn join<T: std::fmt::Display>(xs: impl IntoIterator<Item = T>, sep: &str) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

fn graphs(job: &JobSpec) -> Result<Emitted, Error> {
    let mut out = Emitted::new("genus,certificate,vertex_count,edges");
    for genus in job.genus.clone() {
        for g in select_graphs(job, genus)? {
            let cert = g.certificate();
            let _ = writeln!(
                out.csv,
                "{genus},{cert},{},{}",
                g.vertex_count(),
                join(g.edges().iter().map(|(u, v)| format!("{u}-{v}")), " ")
            );
            out.results.push(json!({
                "genus": genus,
                "certificate": cert,
                "vertex_count": g.vertex_count(),
                "edges": g.edges(),
                "names": g.names(),
            }));
        }
    }
    Ok(out)
}

fn weights(job: &JobSpec) -> Result<Emitted, Error> {
    let grid = graph_grid(job)?;
    let blocks: Vec<Vec<(Vec<u32>, bool)>> = grid
        .par_iter()
        .map(|(_, k, g)| {
            if job.all_labelings {
                if label_space_size(g, *k) > job.max_count {
                    return Err(Error::Budget { cap: job.max_count });
                }
                all_labelings(g, *k)
                    .map(|w| Ok((w.labels().to_vec(), is_admissible(g, &w)?.is_ok())))
                    .collect()
            } else {
                Ok(enumerate_weights(g, *k, job.max_count)?
                    .into_iter()
                    .map(|w| (w.labels().to_vec(), true))
                    .collect())
            }
        })
        .collect::<Result<_, Error>>()?;
    let mut out = Emitted::new("");
    out.csv.clear();
    for ((genus, k, g), rows) in grid.iter().zip(blocks) {
        let cert = g.certificate();
        let _ = writeln!(out.csv, "# genus={genus} level={k} graph={cert}");
        let _ = writeln!(out.csv, "{},admissible", join(0..g.edge_count(), ","));
        let mut list = Vec::with_capacity(rows.len());
        for (labels, ok) in rows {
            let _ = writeln!(out.csv, "{},{ok}", join(&labels, ","));
            let map: Map<String, Value> = labels
                .iter()
                .enumerate()
                .map(|(e, a)| (e.to_string(), json!(a)))
                .collect();
            list.push(json!({ "labels": map, "admissible": ok }));
        }
        out.results.push(json!({
            "genus": genus,
            "level": k,
            "graph": cert,
            "edge_names": g.names(),
            "weights": list,
        }));
    }
    Ok(out)
}

fn count_rows(out: &mut Emitted, reports: Vec<CountReport>, check: &'static str) {
    out.extra
        .insert("level_convention".into(), json!(LEVEL_CONVENTION));
    for r in reports {
        let _ = writeln!(
            out.csv,
            "{},{},{},{},{},{},{:e},{}",
            r.genus,
            r.level,
            opt(r.graph.as_ref()),
            opt(r.count_enumeration),
            r.count_contraction,
            r.count_formula,
            r.formula_radius,
            r.agreement
        );
        if !r.agreement {
            out.failures.push(FailureRecord {
                check,
                genus: r.genus,
                level: Some(r.level),
                graph: r.graph.clone(),
            });
        }
        out.results
            .push(serde_json::to_value(&r).expect("report serializes"));
    }
}

const COUNT_HEADER: &str =
    "genus,level,graph,count_enumeration,count_contraction,count_formula,formula_radius,agreement";

fn count(job: &JobSpec) -> Result<Emitted, Error> {
    let reports = graph_grid(job)?
        .par_iter()
        .map(|(_, k, g)| count_report(g, *k))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Emitted::new(COUNT_HEADER);
    count_rows(&mut out, reports, "agreement");
    Ok(out)
}

fn verify(job: &JobSpec) -> Result<Emitted, Error> {
    let reports = level_grid(job)
        .par_iter()
        .map(|&(g, k)| verify_rank_identity(g, k))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Emitted::new(COUNT_HEADER);
    count_rows(&mut out, reports, "agreement");
    Ok(out)
}

fn polytope(job: &JobSpec) -> Result<Emitted, Error> {
    let mut graphs = Vec::new();
    for genus in job.genus.clone() {
        graphs.extend(select_graphs(job, genus)?.into_iter().map(|g| (genus, g)));
    }
    let levels: Vec<u32> = job.level.clone().collect();
    let mut out = Emitted::new("");
    out.csv.clear();
    for (genus, g) in &graphs {
        let cert = g.certificate();
        let poly = polytope_of_graph(g);
        let volume = volume_mc(&poly, job.samples, job.seed)?;
        let sigma = (volume.mean - volume.paper_value) / volume.stderr;
        let lattice = levels
            .par_iter()
            .map(|&k| match lattice_check(g, k, job.max_count) {
                Err(Error::Budget { .. }) => Ok(None),
                r => r.map(Some),
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let table = lattice_asymptotics(g, &levels)?;
        for check in lattice.iter().flatten() {
            if !check.agreement {
                out.failures.push(FailureRecord {
                    check: "lattice",
                    genus: *genus,
                    level: Some(check.level),
                    graph: Some(cert.clone()),
                });
            }
        }
        let _ = writeln!(out.csv, "# genus={genus} graph={cert}");
        let _ = writeln!(out.csv, "k,count,ratio_num,ratio_den");
        for r in &table.rows {
            let _ = writeln!(
                out.csv,
                "{},{},{},{}",
                r.k, r.count, r.ratio_num, r.ratio_den
            );
        }
        out.results.push(json!({
            "genus": genus,
            "graph": cert,
            "constraints": poly.constraints.len(),
            "volume": volume,
            "paper_value_sigma": sigma,
            "paper_value_flagged": sigma.abs() > 3.0,
            "lattice": lattice,
            "asymptotics": table,
        }));
    }
    Ok(out)
}

/// Consistency of one classified weight against the inclusion rules, the
/// dimension bounds and the exact-stratum bookkeeping.
fn fiber_consistent(genus: u32, r: &FiberRecord) -> bool {
    let top = 3 * genus as usize - 3;
    let generic = r.vertex_tags.iter().all(|&t| t == GroupTag::Z2);
    let exact_ok = match r.status {
        Status::Exact => match (r.t, r.p, r.s, r.h1) {
            (Some(t), Some(p), Some(s), Some(h)) => {
                r.dimension == t + 3 * p + 2 * s && h.free_rank == t && h.two_torsion_rank == p
            }
            _ => false,
        },
        Status::Partial => r.t.is_none() && r.h1.is_none(),
    };
    r.edge_tags.iter().all(|&t| t != GroupTag::Z2)
        && r.dimension <= top
        && (!generic || r.dimension == top)
        && exact_ok
}

fn fibers(job: &JobSpec) -> Result<Emitted, Error> {
    let grid = graph_grid(job)?;
    let blocks = grid
        .par_iter()
        .map(|(_, k, g)| {
            let ws = enumerate_weights(g, *k, job.max_count)?;
            Ok(ws.par_iter().map(|w| classify(g, w)).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut out = Emitted::new(
        "genus,level,graph,labels,edge_tags,vertex_tags,dimension,status,t,p,s,h1_free,h1_two_torsion",
    );
    let tag = |t: &GroupTag| format!("{t:?}");
    for ((genus, k, g), records) in grid.iter().zip(blocks) {
        let cert = g.certificate();
        let consistent = records.iter().all(|r| fiber_consistent(*genus, r));
        if !consistent {
            out.failures.push(FailureRecord {
                check: "fiber_consistency",
                genus: *genus,
                level: Some(*k),
                graph: Some(cert.clone()),
            });
        }
        for r in &records {
            let _ = writeln!(
                out.csv,
                "{genus},{k},{cert},{},{},{},{},{},{},{},{},{},{}",
                join(&r.labels, " "),
                join(r.edge_tags.iter().map(tag), " "),
                join(r.vertex_tags.iter().map(tag), " "),
                r.dimension,
                if r.status == Status::Exact {
                    "exact"
                } else {
                    "partial"
                },
                opt(r.t),
                opt(r.p),
                opt(r.s),
                opt(r.h1.map(|h| h.free_rank)),
                opt(r.h1.map(|h| h.two_torsion_rank)),
            );
        }
        out.results.push(json!({
            "genus": genus,
            "level": k,
            "graph": cert,
            "consistent": consistent,
            "records": records,
        }));
    }
    Ok(out)
}

fn abelian(job: &JobSpec) -> Result<Emitted, Error> {
    let grid = level_grid(job);
    let rows: Vec<AbelianRow> = grid
        .par_iter()
        .map(|&(g, k)| abelian_row(g, k))
        .collect::<Result<_, _>>()?;
    let mut out = Emitted::new("g,k,theta_rank,kummer_rank,orbit_count,match");
    for r in &rows {
        let _ = writeln!(
            out.csv,
            "{},{},{},{},{},{}",
            r.g, r.k, r.theta_rank, r.kummer_rank, r.orbit_count, r.matches
        );
        if !r.matches {
            out.failures.push(FailureRecord {
                check: "kummer_orbits",
                genus: r.g,
                level: Some(r.k),
                graph: None,
            });
        }
        out.results
            .push(serde_json::to_value(r).expect("row serializes"));
    }
    if job.graph == GraphSelector::Gamma0 {
        let cmp = grid
            .par_iter()
            .map(|&(g, k)| gamma0_comparison(g, k, job.max_count))
            .collect::<Result<Vec<_>, _>>()?;
        out.extra.insert("gamma0_comparison".into(), json!(cmp));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert_eq!(parse_range("1..4").unwrap(), 1..=4);
        assert_eq!(parse_range("1..=4").unwrap(), 1..=4);
        assert!(parse_range("4..1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["trinion", "verify", "--level", "0"]).code, EXIT_USAGE);
        assert_eq!(run(["trinion", "frobnicate"]).code, EXIT_UNKNOWN_COMMAND);
        assert_eq!(run(["trinion", "count", "--bogus"]).code, EXIT_USAGE);
        assert_eq!(
            run([
                "trinion",
                "weights",
                "--genus",
                "3",
                "--level",
                "4",
                "--max-count",
                "5"
            ])
            .code,
            EXIT_BUDGET
        );
        assert_eq!(
            run(["trinion", "verify", "--genus", "2", "--level", "1..2"]).code,
            EXIT_OK
        );
    }

    #[test]
    fn failures_set_exit_code() {
        let job = JobSpec::parse(["trinion", "abelian", "--format", "csv"]).unwrap();
        let mut out = Emitted::new("x");
        out.failures.push(FailureRecord {
            check: "kummer_orbits",
            genus: 2,
            level: Some(1),
            graph: None,
        });
        let o = finish(&job, Ok(out));
        assert_eq!(o.code, EXIT_DISAGREEMENT);
        assert!(o.stderr.contains("kummer_orbits"));
        let json = JobSpec {
            format: Format::Json,
            ..job.clone()
        };
        let o = finish(&json, Ok(Emitted::new("x")));
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.contains("\"schema\": \"trinion.abelian/1\""));
        let o = finish(&job, Err(Error::Budget { cap: 3 }));
        assert_eq!(o.code, EXIT_BUDGET);
    }
}
