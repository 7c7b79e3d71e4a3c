//! Command-line front-end: file ingestion, method dispatch, ranked TSV or
//! JSON output with solver diagnostics.
//!
//! Exit codes: 0 success, 1 input error (bad flags, malformed files,
//! invalid configuration), 2 numerical failure (divergence or a method
//! precondition rejection).

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::graph::{Normalization, ScoreVector, SparseGraph};
use crate::output::RankedOutput;
use crate::solver::SolverConfig;
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "spectral-rank",
    about = "Eigenvector-style ranking over sparse weighted directed graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// PageRank with damping, personalization and dangling patch
    Pagerank(MethodArgs),
    /// HITS authority and hub scores
    Hits(MethodArgs),
    /// Pinski-Narin journal influence per reference
    Influence(MethodArgs),
    /// Leontief input-output equilibrium prices (closed, or open with --open)
    Leontief(MethodArgs),
    /// Seeley popularity (row-stochastic choice matrix fixed point)
    Seeley(MethodArgs),
    /// Katz attenuated-path status
    Katz(MethodArgs),
    /// Hubbell prestige with signed endorsements and exogenous status
    Hubbell(MethodArgs),
    /// Wei-Kendall sport ranking from match outcomes
    Sport(MethodArgs),
    /// Monte-Carlo random-surfer visit frequencies
    Simulate(MethodArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NormalizeOpt {
    Sum,
    None,
}

#[derive(Args)]
struct MethodArgs {
    /// Graph edge-list file (TSV `src dst [weight]`), or matches file for
    /// `sport`
    #[arg(long)]
    input: PathBuf,

    /// Damping factor (pagerank, simulate)
    #[arg(long, default_value_t = 0.85)]
    alpha: f64,

    /// Convergence tolerance
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,

    /// Iteration cap
    #[arg(long = "max-iter", default_value_t = 100_000)]
    max_iter: usize,

    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    /// Display normalization where the method allows it (katz)
    #[arg(long, value_enum)]
    normalize: Option<NormalizeOpt>,

    /// Teleportation vector file (TSV `label value`); must cover all nodes
    #[arg(long)]
    personalization: Option<PathBuf>,

    /// Exogenous vector file (hubbell status, leontief --open profit);
    /// missing labels default to 0
    #[arg(long)]
    exogenous: Option<PathBuf>,

    /// Katz per-hop attenuation factor
    #[arg(long, default_value_t = 0.1)]
    attenuation: f64,

    /// Walk length (simulate)
    #[arg(long, default_value_t = 1_000_000)]
    steps: u64,

    /// RNG seed (simulate)
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Open Leontief model (requires --exogenous)
    #[arg(long)]
    open: bool,

    /// Multiply displayed scores by 100
    #[arg(long = "scale-100")]
    scale_100: bool,

    /// Uniform perturbation strength (hits: default off; sport: default 0.01)
    #[arg(long)]
    xi: Option<f64>,
}

impl MethodArgs {
    fn solver(&self) -> SolverConfig {
        SolverConfig {
            tolerance: self.tol,
            max_iterations: self.max_iter,
            norm: crate::solver::Norm::L1,
        }
    }

    fn base_params(&self) -> Map<String, Value> {
        let mut p = Map::new();
        p.insert("tol".into(), json!(self.tol));
        p.insert("max_iter".into(), json!(self.max_iter));
        if self.scale_100 {
            p.insert("scale_100".into(), json!(true));
        }
        p
    }
}

/// Parses `label value` TSV into a vector aligned with the graph's node
/// order. With `require_all`, every node must be covered; otherwise missing
/// labels default to 0.
fn load_vector(
    path: &Path,
    g: &SparseGraph,
    require_all: bool,
    what: &str,
) -> Result<ScoreVector> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let mut map: HashMap<&str, f64> = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse {
            line: lineno + 1,
            msg,
        };
        let [label, value] = line.split('\t').collect::<Vec<_>>()[..] else {
            return Err(err(format!("expected `label<TAB>value`: '{line}'")));
        };
        let value: f64 = value
            .parse()
            .map_err(|_| err(format!("bad value '{value}'")))?;
        map.insert(label, value);
    }
    let mut values = Vec::with_capacity(g.n());
    for label in g.labels() {
        match map.get(label.as_str()) {
            Some(&v) => values.push(v),
            None if require_all => {
                return Err(Error::InvalidInput(format!(
                    "{what} file {} does not cover node '{label}'",
                    path.display()
                )))
            }
            None => values.push(0.0),
        }
    }
    Ok(ScoreVector::new(values, Normalization::None))
}

fn execute(cmd: &Command) -> Result<RankedOutput> {
    match cmd {
        Command::Pagerank(a) => {
            let g = SparseGraph::parse_tsv_path(&a.input)?;
            let personalization = a
                .personalization
                .as_deref()
                .map(|p| load_vector(p, &g, true, "personalization"))
                .transpose()?;
            let cfg = crate::pagerank::PageRankConfig {
                alpha: Some(a.alpha),
                personalization,
                dangling: None,
                solver: a.solver(),
            };
            let (pi, report) = crate::pagerank::pagerank(&g, &cfg)?;
            let mut params = a.base_params();
            params.insert("alpha".into(), json!(a.alpha));
            Ok(RankedOutput::rank(
                "pagerank",
                params,
                g.labels(),
                vec!["score"],
                &[pi.values],
                g.edge_count(),
            )
            .with_report(&report))
        }
        Command::Hits(a) => {
            let g = SparseGraph::parse_tsv_path(&a.input)?;
            let xi = a.xi.unwrap_or(0.0);
            let r = crate::hits::hits_with_perturbation(&g, &a.solver(), xi)?;
            let mut params = a.base_params();
            params.insert("xi".into(), json!(xi));
            let mut out = RankedOutput::rank(
                "hits",
                params,
                g.labels(),
                vec!["authority", "hub"],
                &[r.authority.values, r.hub.values],
                g.edge_count(),
            )
            .with_report(&r.report);
            if !r.uniqueness_verified {
                out.warnings.push(
                    "authority graph is disconnected; the dominant eigenvector may not \
                     be unique (computed from the fixed all-ones start)"
                        .into(),
                );
            }
            Ok(out)
        }
        Command::Influence(a) => {
            let g = SparseGraph::parse_tsv_path(&a.input)?;
            let r = crate::influence::influence_scores(&g, &a.solver())?;
            let mut out = RankedOutput::rank(
                "influence",
                a.base_params(),
                g.labels(),
                vec!["per_reference", "total"],
                &[r.per_reference.values, r.total.values],
                g.edge_count(),
            )
            .with_report(&r.report);
            out.warnings = r.warnings;
            Ok(out)
        }
        Command::Leontief(a) => {
            let g = SparseGraph::parse_tsv_path(&a.input)?;
            let mut params = a.base_params();
            params.insert("open".into(), json!(a.open));
            let r = if a.open {
                let Some(path) = a.exogenous.as_deref() else {
                    return Err(Error::InvalidInput(
                        "--open requires --exogenous PATH (profit vector)".into(),
                    ));
                };
                let profit = load_vector(path, &g, false, "profit")?;
                crate::influence::leontief_open(&g, &profit, &a.solver())?
            } else {
                crate::influence::leontief_closed(&g, &a.solver())?
            };
            let mut out = RankedOutput::rank(
                "leontief",
                params,
                g.labels(),
                vec!["price", "cost", "revenue"],
                &[r.prices.values, r.costs, r.revenues],
                g.edge_count(),
            )
            .with_report(&r.report);
            out.warnings = r.warnings;
            if !a.open {
                out.warnings.push(
                    "closed-model prices are sum-to-one; absolute levels are recovered \
                     up to one global factor"
                        .into(),
                );
            }
            Ok(out)
        }
        Command::Seeley(a) => {
            let g = SparseGraph::parse_tsv_path(&a.input)?;
            let pi = crate::sociometry::seeley(&g, &a.solver())?;
            Ok(RankedOutput::rank(
                "seeley",
                a.base_params(),
                g.labels(),
                vec!["score"],
                &[pi.values],
                g.edge_count(),
            ))
        }
        Command::Katz(a) => {
            let g = SparseGraph::parse_tsv_path(&a.input)?;
            let cfg = crate::sociometry::KatzConfig {
                attenuation: a.attenuation,
                solver: a.solver(),
            };
            let mut pi = crate::sociometry::katz(&g, &cfg)?;
            let mut params = a.base_params();
            params.insert("attenuation".into(), json!(a.attenuation));
            if a.normalize == Some(NormalizeOpt::Sum) {
                let s = pi.sum();
                if s > 0.0 {
                    pi.values.iter_mut().for_each(|v| *v /= s);
                }
                params.insert("normalize".into(), json!("sum"));
            }
            Ok(RankedOutput::rank(
                "katz",
                params,
                g.labels(),
                vec!["score"],
                &[pi.values],
                g.edge_count(),
            ))
        }
        Command::Hubbell(a) => {
            let g = SparseGraph::parse_tsv_path(&a.input)?;
            let Some(path) = a.exogenous.as_deref() else {
                return Err(Error::InvalidInput(
                    "hubbell requires --exogenous PATH (minimal-status vector)".into(),
                ));
            };
            let v = load_vector(path, &g, false, "exogenous")?;
            let pi = crate::sociometry::hubbell(&g, &v, &a.solver())?;
            Ok(RankedOutput::rank(
                "hubbell",
                a.base_params(),
                g.labels(),
                vec!["score"],
                &[pi.values],
                g.edge_count(),
            ))
        }
        Command::Sport(a) => {
            let matches = crate::sociometry::MatchList::parse_tsv_path(&a.input)?;
            let xi = a.xi.unwrap_or(0.01);
            let (pi, report) =
                crate::sociometry::sport_rank_with_perturbation(&matches, &a.solver(), xi)?;
            let labels = crate::sociometry::sport_labels(&matches)?;
            let mut params = a.base_params();
            params.insert("xi".into(), json!(xi));
            Ok(RankedOutput::rank(
                "sport",
                params,
                &labels,
                vec!["score"],
                &[pi.values],
                matches.len(),
            )
            .with_report(&report))
        }
        Command::Simulate(a) => {
            let g = SparseGraph::parse_tsv_path(&a.input)?;
            let personalization = a
                .personalization
                .as_deref()
                .map(|p| load_vector(p, &g, true, "personalization"))
                .transpose()?;
            let cfg = crate::sim::SimConfig {
                steps: a.steps,
                alpha: a.alpha,
                seed: a.seed,
                personalization,
                dangling: None,
            };
            let pi = crate::sim::simulate(&g, &cfg)?;
            let mut params = a.base_params();
            params.insert("alpha".into(), json!(a.alpha));
            params.insert("steps".into(), json!(a.steps));
            params.insert("seed".into(), json!(a.seed));
            let mut out = RankedOutput::rank(
                "simulate",
                params,
                g.labels(),
                vec!["score"],
                &[pi.values],
                g.edge_count(),
            );
            out.iterations = Some(a.steps);
            Ok(out)
        }
    }
}

fn args_of(cmd: &Command) -> &MethodArgs {
    match cmd {
        Command::Pagerank(a)
        | Command::Hits(a)
        | Command::Influence(a)
        | Command::Leontief(a)
        | Command::Seeley(a)
        | Command::Katz(a)
        | Command::Hubbell(a)
        | Command::Sport(a)
        | Command::Simulate(a) => a,
    }
}

/// Parses `argv` (including the program name), runs the requested method
/// and writes the result to `out`. Returns the process exit code.
pub fn run<W: Write>(argv: &[String], out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                let _ = write!(out, "{e}");
                return 0;
            }
            eprintln!("{e}");
            return 1;
        }
    };
    let a = args_of(&cli.cmd);
    match execute(&cli.cmd) {
        Ok(mut ranked) => {
            if a.scale_100 {
                ranked.scale_100();
            }
            let written = match a.format {
                Format::Tsv => ranked.write_tsv(out),
                Format::Json => ranked.write_json(out),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("{e}");
                    1
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::InvalidInput(_) => 1,
                Error::Numerical(_) => 2,
            }
        }
    }
}
