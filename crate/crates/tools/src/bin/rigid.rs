use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rigidity_core::certify::FailingObligation;
use rigidity_core::connector::{connector_certify, ConnectorConfig};
use rigidity_core::randgraph::{gnp, random_regular, RngSpec};
use rigidity_core::rigidity::{is_d_rigid, DEFAULT_TRIALS};
use rigidity_core::Partition;
use rigidity_tools::config::Config;
use rigidity_tools::edgelist::{read_graph_file, write_edge_list};
use rigidity_tools::experiments::{
    cmd_codegree, cmd_connector, cmd_equipartition, cmd_regular, cmd_threshold,
    default_threshold_grid, need_dimension, parse_ratio, CodegreeConfig, CodegreeModel,
    ConnectorExperiment, EquipartitionConfig, RegularConfig, ThresholdConfig,
};
use rigidity_tools::formats::{read_json, to_json, PartitionFile};
use rigidity_tools::plot::plot_svg;
use rigidity_tools::table::Table;
use rigidity_tools::{Error, Result};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_VIOLATED: u8 = 3;

/// Generic d-dimensional rigidity of graphs: rank tests, partition
/// certificates, and random-graph experiments.
///
/// Exit status: 0 rigid / accepted / done, 1 flexible / rejected, 2 error,
/// 3 hypotheses of the connector pipeline not met.
#[derive(Parser, Debug)]
#[command(name = "rigid", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Master seed (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Monte Carlo trials per parameter point.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Independent rank evaluations per rigidity test.
    #[arg(long, global = true)]
    rank_trials: Option<u32>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Flat JSON object of defaults, e.g. {"seed": 3, "n": 150}.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test one edge-list graph for generic d-rigidity; prints a JSON verdict.
    Check {
        graph: PathBuf,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Fraction of rigid G(n, p) over a grid of p.
    Threshold {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Comma-separated p values; default is seven points around the
        /// connectivity threshold.
        #[arg(long, value_delimiter = ',')]
        p_grid: Option<Vec<f64>>,
    },
    /// Rigid cores of sparse G(n, p) found by the connector pipeline, then
    /// grown by 0-extensions.
    Giant(Pipeline),
    /// Connector pipeline on one graph file or on random instances.
    Connector {
        /// Edge-list graph; needs --partition.
        graph: Option<PathBuf>,
        /// JSON file `{"blocks": [[...], ...]}`.
        #[arg(long)]
        partition: Option<PathBuf>,
        #[command(flatten)]
        pipeline: Pipeline,
    },
    /// Rigidity of random r-regular graphs.
    Regular {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Rigidity against minimum codegree.
    Codegree {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        model: Option<CodegreeModel>,
        /// Comma-separated shared-clique sizes for the cliques model.
        #[arg(long, value_delimiter = ',')]
        k_grid: Option<Vec<usize>>,
    },
    /// Partition codegree of random equipartitions of one G(n, 1/2).
    Equipartition {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Check a strong, generalized or double partition certificate.
    CertifyPartition {
        graph: PathBuf,
        spec: PathBuf,
        #[arg(long)]
        d: Option<usize>,
    },
    /// SVG line plot of CSV columns.
    Plot {
        csv: PathBuf,
        #[arg(long)]
        x: String,
        /// Comma-separated column names.
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<String>,
    },
    /// Write a random graph as an edge list with provenance comments.
    Generate {
        #[arg(value_enum)]
        model: GenModel,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        r: Option<usize>,
        /// Stream id within the master seed.
        #[arg(long, default_value_t = 0)]
        stream: u64,
    },
}

#[derive(Args, Debug)]
struct Pipeline {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    /// Number of blocks.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Exact ratio such as 0.9 or 9/10.
    #[arg(long)]
    eta: Option<String>,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum GenModel {
    Gnp,
    Regular,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::io(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_table(out: Option<&Path>, t: &Table) -> Result<()> {
    emit(out, &t.to_csv()?)
}

fn pipeline_config(
    cfg: &Config,
    seed: u64,
    trials: usize,
    threads: usize,
    p: &Pipeline,
    absorb: bool,
) -> Result<ConnectorExperiment> {
    let eta: String = cfg.require(p.eta.clone(), "eta")?;
    Ok(ConnectorExperiment {
        n: cfg.require(p.n, "n")?,
        p: cfg.require(p.p, "p")?,
        m: cfg.require(p.m, "m")?,
        k: cfg.require(p.k, "k")?,
        eta: parse_ratio(&eta)?,
        trials,
        seed,
        threads,
        absorb,
    })
}

fn run(cli: Cli) -> Result<u8> {
    let g = &cli.global;
    let cfg = match &g.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let seed = cfg.pick(g.seed, "seed", 0u64)?;
    let trials = cfg.pick(g.trials, "trials", 100usize)?;
    let rank_trials = cfg.pick(g.rank_trials, "rank_trials", DEFAULT_TRIALS)?;
    let threads = cfg.pick(g.threads, "threads", 0usize)?;
    let out = g.out.as_deref();
    if rank_trials == 0 {
        return Err(Error::Usage("rank_trials must be at least 1".into()));
    }

    match cli.command {
        Command::Check { graph, d } => {
            let d = cfg.require(d, "d")?;
            need_dimension(d)?;
            let gr = read_graph_file(&graph)?;
            let v = is_d_rigid(&gr, d, seed, rank_trials);
            emit(out, &to_json(&v)?)?;
            Ok(if v.rigid { 0 } else { EXIT_NEGATIVE })
        }
        Command::Threshold { n, d, p_grid } => {
            let n = cfg.pick(n, "n", 150)?;
            let c = ThresholdConfig {
                n,
                d: cfg.pick(d, "d", 2)?,
                grid: cfg.pick(p_grid, "p_grid", default_threshold_grid(n))?,
                trials: cfg.pick(g.trials, "trials", 200)?,
                seed,
                threads,
            };
            emit_table(out, &cmd_threshold(&c)?)?;
            Ok(0)
        }
        Command::Giant(p) => {
            let c = pipeline_config(&cfg, seed, trials, threads, &p, true)?;
            emit_table(out, &cmd_connector(&c)?)?;
            Ok(0)
        }
        Command::Connector {
            graph: Some(graph),
            partition,
            pipeline,
        } => {
            let partition = cfg.require(partition, "partition")?;
            let gr = read_graph_file(&graph)?;
            let part: Partition = read_json(&partition)?;
            let eta: String = cfg.require(pipeline.eta.clone(), "eta")?;
            let k = cfg.require(pipeline.k, "k")?;
            let ccfg = ConnectorConfig::new(k, parse_ratio(&eta)?, seed)?;
            let o = connector_certify(&gr, &part, &ccfg)?;
            emit(out, &to_json(&o)?)?;
            Ok(match &o.certificate.failing_obligation {
                None => 0,
                Some(FailingObligation::HypothesisViolated { .. }) => EXIT_VIOLATED,
                Some(_) => EXIT_NEGATIVE,
            })
        }
        Command::Connector {
            graph: None,
            partition,
            pipeline,
        } => {
            if partition.is_some() {
                return Err(Error::Usage("--partition needs a graph file".into()));
            }
            let c = pipeline_config(&cfg, seed, trials, threads, &pipeline, false)?;
            emit_table(out, &cmd_connector(&c)?)?;
            Ok(0)
        }
        Command::Regular { n, r, d } => {
            let c = RegularConfig {
                n: cfg.require(n, "n")?,
                r: cfg.require(r, "r")?,
                d: cfg.require(d, "d")?,
                trials,
                seed,
                threads,
            };
            emit_table(out, &cmd_regular(&c)?)?;
            Ok(0)
        }
        Command::Codegree { n, model, k_grid } => {
            let c = CodegreeConfig {
                n: cfg.pick(n, "n", 200)?,
                model: cfg.pick(model, "model", CodegreeModel::Gnp)?,
                k_grid: cfg.pick(k_grid, "k_grid", (1..=8).collect())?,
                trials,
                seed,
                threads,
            };
            emit_table(out, &cmd_codegree(&c)?)?;
            Ok(0)
        }
        Command::Equipartition { n, samples } => {
            let c = EquipartitionConfig {
                n: cfg.pick(n, "n", 400)?,
                samples: cfg.pick(samples, "samples", 100)?,
                seed,
            };
            emit_table(out, &cmd_equipartition(&c)?)?;
            Ok(0)
        }
        Command::CertifyPartition { graph, spec, d } => {
            let d = cfg.require(d, "d")?;
            need_dimension(d)?;
            let gr = read_graph_file(&graph)?;
            let f: PartitionFile = read_json(&spec)?;
            let v = f.certify(&gr, d, seed)?;
            emit(out, &to_json(&v)?)?;
            Ok(if v.accepted { 0 } else { EXIT_NEGATIVE })
        }
        Command::Plot { csv, x, y } => {
            let text = std::fs::read_to_string(&csv).map_err(|e| Error::io(&csv, e))?;
            let svg = plot_svg(&Table::from_csv(&text)?, &x, &y)?;
            emit(out, &svg)?;
            Ok(0)
        }
        Command::Generate {
            model,
            n,
            p,
            r,
            stream,
        } => {
            let n = cfg.require(n, "n")?;
            let spec = RngSpec::new(seed, stream);
            let (gr, desc) = match model {
                GenModel::Gnp => {
                    let p = cfg.require(p, "p")?;
                    (gnp(n, p, spec)?, format!("model: gnp, n = {n}, p = {p}"))
                }
                GenModel::Regular => {
                    let r = cfg.require(r, "r")?;
                    (
                        random_regular(n, r, spec)?,
                        format!("model: regular, n = {n}, r = {r}"),
                    )
                }
            };
            let comments = vec![desc, format!("master seed = {seed}, stream = {stream}")];
            emit(out, &write_edge_list(&gr, &comments))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
