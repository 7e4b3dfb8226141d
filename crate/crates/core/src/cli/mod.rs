//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when an audit finds its conclusion failing
//! under satisfied hypotheses, 2 on input or usage errors.

pub mod parse;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::audit::{self, BoundEvaluator, BoundId, TheoremId};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::interlacing::interlacing_report;
use crate::numeric::{singular_values, symmetric_eigen, DenseMatrix, TolerancePolicy};
use crate::partition::{
    classify_graph_partition, is_equitable_for_matrix, Partition, ProductPartition,
};
use crate::quotient::{quotient_matrix, symmetric_quotient};
use crate::search::{equitable_refinement, find_equitable_partitions, maximize_bound};

pub use parse::{parse_input, parse_inputs, Input, InputKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "interlace",
    version,
    about = "Quotient matrices, eigenvalue interlacing and equitable partitions"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Relative equality tolerance (default 1e-8).
    #[arg(long, global = true, value_parser = positive_f64)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Allow partition enumeration beyond 10 elements.
    #[arg(long, global = true)]
    pub cap_override: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Edge list file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Matrix file.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of a graph or symmetric matrix; singular values of a
    /// rectangular matrix.
    Spectrum {
        #[command(flatten)]
        source: Source,
        /// Use the Laplacian of the graph.
        #[arg(long)]
        laplacian: bool,
    },
    /// Quotient matrix under a partition (or a row and column partition).
    Quotient {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        col_partition: Option<PathBuf>,
        #[arg(long)]
        laplacian: bool,
    },
    /// Interlacing of the quotient spectrum, with tight and exact classes.
    Interlace {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        laplacian: bool,
    },
    /// Edge-count bounds on the spectrum for one partition.
    Bounds {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        /// One of ineq4, ineq3, lapl1, lapl2 (default: all).
        #[arg(long)]
        bound: Option<BoundId>,
    },
    /// Audit the equality conditions of one result on an instance.
    Audit {
        /// 1, 2, 3, 4, 5, c1 or fg.
        #[arg(long)]
        theorem: TheoremId,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long)]
        col_partition: Option<PathBuf>,
        /// Second graph for the join audit (fg).
        #[arg(long)]
        graph2: Option<PathBuf>,
    },
    /// Coarsest equitable partition refining a seed (default: one block).
    Refine {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        partition: Option<PathBuf>,
    },
    /// Exhaustive search: best bound over k-block partitions, or all
    /// equitable partitions.
    Search {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, requires = "k", conflicts_with = "equitable")]
        bound: Option<BoundId>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, required_unless_present = "bound")]
        equitable: bool,
        #[arg(long, requires = "equitable")]
        max_k: Option<usize>,
    },
    /// Top eigenvalue of the join of an r1-regular graph on n1 vertices with
    /// an r2-regular graph on n2 vertices.
    JoinMu1 {
        #[arg(long)]
        r1: usize,
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        r2: usize,
        #[arg(long)]
        n2: usize,
    },
}

fn positive_f64(s: &str) -> std::result::Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("tolerance must be positive, got {s}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    Counterexample,
    InputError,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            Self::Success => 0,
            Self::Counterexample => 1,
            Self::InputError => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub report: String,
}

/// Parses `args` (program name first), runs, writes the report and returns
/// the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitStatus::InputError.code()
            } else {
                0
            };
        }
    };
    match run(&config).and_then(|outcome| emit(&config, &outcome).map(|()| outcome.status)) {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitStatus::InputError.code()
        }
    }
}

fn emit(config: &RunConfig, outcome: &Outcome) -> Result<()> {
    match &config.out {
        Some(path) => std::fs::write(path, &outcome.report)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(outcome.report.as_bytes())
            .map_err(|e| Error::Io(e.to_string())),
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    let policy = match config.tol {
        Some(tol) => TolerancePolicy::with_eq_tol(tol)?,
        None => TolerancePolicy::default(),
    };
    let ctx = Context {
        policy,
        cap_override: config.cap_override,
    };
    let (mut report, status) = ctx.dispatch(&config.command)?;
    report.insert("policy".into(), to_value(policy));
    let value = render::normalize(Value::Object(report));
    let text = match config.format {
        Format::Json => render::to_json(&value),
        Format::Text => render::to_text(&value),
    };
    Ok(Outcome {
        status,
        report: text,
    })
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

enum Loaded {
    Graph(Graph),
    Matrix(DenseMatrix),
}

impl Loaded {
    fn read(source: &Source) -> Result<Self> {
        match (&source.graph, &source.matrix) {
            (Some(path), _) => Ok(Self::Graph(read_graph(path)?)),
            (None, Some(path)) => match parse_inputs(path, InputKind::Matrix)? {
                Input::Matrix(m) => Ok(Self::Matrix(m)),
                _ => unreachable!("matrix kind yields a matrix"),
            },
            (None, None) => Err(Error::InvalidArgument(
                "one of --graph or --matrix is required".into(),
            )),
        }
    }

    fn matrix(&self, laplacian: bool) -> Result<(DenseMatrix, &'static str)> {
        match (self, laplacian) {
            (Self::Graph(g), false) => Ok((g.adjacency_matrix(), "adjacency")),
            (Self::Graph(g), true) => Ok((g.laplacian_matrix(), "laplacian")),
            (Self::Matrix(m), false) => Ok((m.clone(), "matrix")),
            (Self::Matrix(_), true) => {
                Err(Error::InvalidArgument("--laplacian needs --graph".into()))
            }
        }
    }

    fn graph(&self, what: &str) -> Result<&Graph> {
        match self {
            Self::Graph(g) => Ok(g),
            Self::Matrix(_) => Err(Error::InvalidArgument(format!("{what} needs --graph"))),
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    match parse_inputs(path, InputKind::GraphEdgeList)? {
        Input::Graph(g) => Ok(g),
        _ => unreachable!("edge-list kind yields a graph"),
    }
}

fn read_partition(path: &Path, ground: usize) -> Result<Partition> {
    match parse_inputs(path, InputKind::Partition { ground })? {
        Input::Partition(p) => Ok(p),
        _ => unreachable!("partition kind yields a partition"),
    }
}

fn required<'a>(path: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    path.as_deref()
        .ok_or_else(|| Error::InvalidArgument(format!("{flag} is required here")))
}

struct Context {
    policy: TolerancePolicy,
    cap_override: bool,
}

type Report = (Map<String, Value>, ExitStatus);

fn report(command: &str, fields: Value) -> Map<String, Value> {
    let mut map = match fields {
        Value::Object(m) => m,
        other => Map::from_iter([("result".to_string(), other)]),
    };
    map.insert("command".into(), Value::String(command.into()));
    map
}

impl Context {
    fn dispatch(&self, command: &Command) -> Result<Report> {
        match command {
            Command::Spectrum { source, laplacian } => self.spectrum(source, *laplacian),
            Command::Quotient {
                source,
                partition,
                col_partition,
                laplacian,
            } => self.quotient(source, partition, col_partition.as_deref(), *laplacian),
            Command::Interlace {
                source,
                partition,
                laplacian,
            } => self.interlace(source, partition, *laplacian),
            Command::Bounds {
                graph,
                partition,
                bound,
            } => self.bounds(graph, partition, *bound),
            Command::Audit {
                theorem,
                source,
                partition,
                col_partition,
                graph2,
            } => self.audit(*theorem, source, partition, col_partition, graph2),
            Command::Refine { graph, partition } => self.refine(graph, partition.as_deref()),
            Command::Search {
                graph,
                bound,
                k,
                equitable: _,
                max_k,
            } => self.search(graph, *bound, *k, *max_k),
            Command::JoinMu1 { r1, n1, r2, n2 } => {
                let mu1 = audit::finck_grohmann_mu1(*r1, *n1, *r2, *n2)?;
                let fields = json!({ "r1": r1, "n1": n1, "r2": r2, "n2": n2, "mu1": mu1 });
                Ok((report("join-mu1", fields), ExitStatus::Success))
            }
        }
    }

    fn spectrum(&self, source: &Source, laplacian: bool) -> Result<Report> {
        let (m, kind) = Loaded::read(source)?.matrix(laplacian)?;
        let fields = if m.is_square() {
            let spectrum = symmetric_eigen(&m, &self.policy)?;
            json!({ "source": kind, "n": m.rows(), "values": spectrum.values() })
        } else {
            let sv = singular_values(&m, &self.policy)?;
            json!({ "source": kind, "rows": m.rows(), "cols": m.cols(), "singular_values": sv })
        };
        Ok((report("spectrum", fields), ExitStatus::Success))
    }

    fn quotient(
        &self,
        source: &Source,
        rows: &Path,
        cols: Option<&Path>,
        laplacian: bool,
    ) -> Result<Report> {
        let (m, kind) = Loaded::read(source)?.matrix(laplacian)?;
        let row_p = read_partition(rows, m.rows())?;
        let col_p = match cols {
            Some(path) => read_partition(path, m.cols())?,
            None => row_p.clone(),
        };
        let pp = ProductPartition::new(row_p, col_p);
        let q = quotient_matrix(&m, &pp)?;
        let equitable = is_equitable_for_matrix(&m, &pp, &self.policy)?;
        let fields = json!({
            "source": kind,
            "row_partition": pp.rows(),
            "col_partition": pp.cols(),
            "quotient": q.matrix().to_rows(),
            "equitable": equitable,
        });
        Ok((report("quotient", fields), ExitStatus::Success))
    }

    fn interlace(&self, source: &Source, partition: &Path, laplacian: bool) -> Result<Report> {
        let loaded = Loaded::read(source)?;
        let (m, kind) = loaded.matrix(laplacian)?;
        let p = read_partition(partition, m.rows())?;
        let alpha = symmetric_eigen(&m, &self.policy)?;
        let q = symmetric_quotient(&m, &p)?;
        let beta = symmetric_eigen(q.matrix(), &self.policy)?;
        let interlacing = interlacing_report(alpha.values(), beta.values(), &self.policy)?;
        let equitable =
            is_equitable_for_matrix(&m, &ProductPartition::square(p.clone()), &self.policy)?;
        let mut fields = json!({
            "source": kind,
            "partition": p,
            "alpha": alpha.values(),
            "beta": beta.values(),
            "interlacing": interlacing,
            "equitable": equitable,
        });
        if let Loaded::Graph(g) = &loaded {
            fields["graph_partition"] = to_value(classify_graph_partition(g, &p)?);
        }
        Ok((report("interlace", fields), ExitStatus::Success))
    }

    fn bounds(&self, graph: &Path, partition: &Path, bound: Option<BoundId>) -> Result<Report> {
        let g = read_graph(graph)?;
        let p = read_partition(partition, g.order())?;
        let evaluator = BoundEvaluator::new(&g, &self.policy)?;
        let reports = match bound {
            Some(id) => vec![evaluator.evaluate(&p, id)?],
            None => evaluator.evaluate_all(&p)?,
        };
        let fields = json!({ "partition": p, "reports": reports });
        Ok((report("bounds", fields), ExitStatus::Success))
    }

    fn audit(
        &self,
        theorem: TheoremId,
        source: &Source,
        partition: &Option<PathBuf>,
        col_partition: &Option<PathBuf>,
        graph2: &Option<PathBuf>,
    ) -> Result<Report> {
        let loaded = Loaded::read(source)?;
        let policy = &self.policy;
        let verdict = if theorem == TheoremId::FinckGrohmann {
            let g1 = loaded.graph("audit --theorem fg")?;
            let g2 = read_graph(required(graph2, "--graph2")?)?;
            audit::audit_finck_grohmann(g1, &g2, policy)?
        } else {
            let (a, _) = loaded.matrix(false)?;
            let p = read_partition(required(partition, "--partition")?, a.rows())?;
            match theorem {
                TheoremId::One => audit::audit_theorem1(loaded.graph("theorem 1")?, &p, policy)?,
                TheoremId::Two => audit::audit_theorem2(loaded.graph("theorem 2")?, &p, policy)?,
                TheoremId::Corollary1 => {
                    audit::audit_corollary1(loaded.graph("theorem c1")?, &p, policy)?
                }
                TheoremId::Three => audit::audit_theorem3(&a, &p, policy)?,
                TheoremId::Five => audit::audit_theorem5(&a, &p, policy)?,
                TheoremId::Four => {
                    let q = match col_partition {
                        Some(path) => read_partition(path, a.cols())?,
                        None if a.is_square() => p.clone(),
                        None => {
                            return Err(Error::InvalidArgument(
                                "--col-partition is required".into(),
                            ))
                        }
                    };
                    audit::audit_theorem4(&a, &p, &q, policy)?
                }
                TheoremId::FinckGrohmann => unreachable!("handled above"),
            }
        };
        let status = if verdict.is_counterexample() {
            ExitStatus::Counterexample
        } else {
            ExitStatus::Success
        };
        let Value::Object(mut map) = to_value(&verdict) else {
            unreachable!("verdict is an object")
        };
        map.insert("command".into(), Value::String("audit".into()));
        Ok((map, status))
    }

    fn refine(&self, graph: &Path, seed: Option<&Path>) -> Result<Report> {
        let g = read_graph(graph)?;
        let seed = match seed {
            Some(path) => read_partition(path, g.order())?,
            None => Partition::single_block(g.order()),
        };
        let refined = equitable_refinement(&g, &seed)?;
        let fields = json!({ "seed": seed, "partition": refined, "blocks": refined.len() });
        Ok((report("refine", fields), ExitStatus::Success))
    }

    fn search(
        &self,
        graph: &Path,
        bound: Option<BoundId>,
        k: Option<usize>,
        max_k: Option<usize>,
    ) -> Result<Report> {
        let g = read_graph(graph)?;
        let fields = match bound {
            Some(id) => {
                let k =
                    k.ok_or_else(|| Error::InvalidArgument("--k is required with --bound".into()))?;
                to_value(maximize_bound(&g, k, id, self.cap_override)?)
            }
            None => {
                let max_k = max_k.unwrap_or(g.order());
                let found = find_equitable_partitions(&g, max_k, self.cap_override)?;
                json!({ "max_k": max_k, "count": found.len(), "partitions": found })
            }
        };
        Ok((report("search", fields), ExitStatus::Success))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("interlace").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn join_mu1_text() {
        let out = run(&config(&[
            "join-mu1", "--r1", "2", "--n1", "4", "--r2", "1", "--n2", "2",
        ]))
        .unwrap();
        assert_eq!(out.status, ExitStatus::Success);
        assert!(
            out.report.contains("mu1: 4.37228132327\n"),
            "{}",
            out.report
        );
    }

    #[test]
    fn usage_errors() {
        let bad = |args: &[&str]| {
            RunConfig::try_parse_from(std::iter::once("interlace").chain(args.iter().copied()))
        };
        assert!(bad(&["spectrum"]).is_err());
        assert!(bad(&["spectrum", "--graph", "a", "--matrix", "b"]).is_err());
        assert!(bad(&[
            "--tol", "0", "join-mu1", "--r1", "1", "--n1", "2", "--r2", "1", "--n2", "2"
        ])
        .is_err());
        assert!(bad(&["search", "--graph", "a", "--bound", "ineq4"]).is_err());
        assert!(bad(&["search", "--graph", "a"]).is_err());
        assert!(bad(&["audit", "--theorem", "9", "--graph", "a"]).is_err());
        assert!(bad(&["search", "--graph", "a", "--equitable"]).is_ok());
        assert!(run(&config(&[
            "join-mu1", "--r1", "3", "--n1", "3", "--r2", "1", "--n2", "2"
        ]))
        .is_err());
    }
}
