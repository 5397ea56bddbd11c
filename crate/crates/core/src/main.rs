use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use desmallworld::generate::{generate, GeneratorConfig};
use desmallworld::harness::{self, Method, RunParams};
use desmallworld::{load_edge_list, Directedness, Error, Graph, Result};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GeneratorKind {
    Ws,
    Ks,
}

/// Select edges whose removal cuts the most vertex pairs within k hops.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// SNAP-style edge list to load.
    #[arg(
        long,
        conflicts_with = "generate",
        required_unless_present = "generate"
    )]
    graph: Option<PathBuf>,

    /// Generate a small-world graph instead of loading one.
    #[arg(long, value_enum)]
    generate: Option<GeneratorKind>,

    /// Vertex count (ws) or grid side (ks).
    #[arg(long, default_value_t = 1000)]
    n: usize,

    /// Watts-Strogatz ring degree (even).
    #[arg(long, default_value_t = 4)]
    ws_degree: usize,

    /// Watts-Strogatz rewiring probability.
    #[arg(long, default_value_t = 0.1)]
    ws_p: f64,

    /// Kleinberg long-range exponent.
    #[arg(long, default_value_t = 2.0)]
    ks_exponent: f64,

    /// Kleinberg long-range links per vertex.
    #[arg(long, default_value_t = 1)]
    ks_links: usize,

    /// Spreading parameter: pairs within this many hops are reachable.
    #[arg(long, default_value_t = 3)]
    k: u32,

    /// Number of edges to remove.
    #[arg(long)]
    budget: usize,

    /// Method, or a comma-separated list to compare.
    #[arg(long, value_delimiter = ',', default_value = "omw")]
    method: Vec<String>,

    /// Edges per scoring pass for bt/lb/sb and greedy-* methods.
    #[arg(long)]
    batch: Option<usize>,

    #[arg(long, default_value_t = 1.0)]
    lambda: f64,

    /// Step size; relative to the largest starting gradient unless
    /// --raw-step is given.
    #[arg(long, default_value_t = 0.05)]
    beta: f64,

    /// Use --beta as the absolute gradient step.
    #[arg(long)]
    raw_step: bool,

    /// Candidate set size as a multiple of the budget (omw).
    #[arg(long, default_value_t = 5.0)]
    alpha: f64,

    #[arg(long, default_value_t = 200)]
    max_iters: usize,

    #[arg(long, default_value_t = 1e-4)]
    tol: f64,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Report CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Removed edges, one "u v" per line. With several methods the method
    /// name is appended to the file name.
    #[arg(long)]
    edges_out: Option<PathBuf>,

    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(args: &Args) -> Result<()> {
    let methods = args
        .method
        .iter()
        .map(|m| m.parse::<Method>())
        .collect::<Result<Vec<_>>>()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;

    let (graph, labels) = load_graph(args)?;
    log::info!(
        "graph: {} vertices, {} edges",
        graph.vertex_count(),
        graph.edge_count()
    );

    let params = RunParams {
        batch: args.batch,
        lambda: args.lambda,
        beta: args.beta,
        scale_step: !args.raw_step,
        alpha: args.alpha,
        max_iters: args.max_iters,
        tol: args.tol,
        seed: args.seed,
        ..RunParams::new(args.k, args.budget)
    };
    let reports = pool.install(|| harness::compare(&graph, &methods, &params))?;

    match &args.out {
        Some(path) => harness::write_reports(&reports, BufWriter::new(File::create(path)?))?,
        None => harness::write_reports(&reports, io::stdout().lock())?,
    }
    if reports.len() > 1 {
        eprintln!(
            "ranking by delta: {}",
            harness::ranking(&reports).join(" > ")
        );
    }

    if let Some(path) = &args.edges_out {
        for report in &reports {
            let target = if reports.len() == 1 {
                path.clone()
            } else {
                suffixed(path, &report.method)
            };
            let mut out = BufWriter::new(File::create(&target)?);
            harness::write_removed_edges(report, labels.as_deref(), &mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn load_graph(args: &Args) -> Result<(Graph, Option<Vec<u64>>)> {
    if let Some(path) = &args.graph {
        let file = File::open(path)?;
        let loaded = load_edge_list(BufReader::new(file), Directedness::Directed)?;
        log::info!(
            "{}: {} data lines, {} self-loops, {} duplicate or reciprocal lines",
            path.display(),
            loaded.stats.data_lines,
            loaded.stats.self_loops,
            loaded.stats.duplicates
        );
        return Ok((loaded.graph, Some(loaded.labels)));
    }
    let config = match args.generate {
        Some(GeneratorKind::Ws) => GeneratorConfig {
            ws_base_degree: args.ws_degree,
            ws_rewire_prob: args.ws_p,
            ..GeneratorConfig::watts_strogatz(args.n)
        },
        Some(GeneratorKind::Ks) => GeneratorConfig {
            ks_long_range_exponent: args.ks_exponent,
            ks_long_range_edges_per_vertex: args.ks_links,
            ..GeneratorConfig::kleinberg(args.n)
        },
        None => {
            return Err(Error::Parameter(
                "either --graph or --generate is required".into(),
            ))
        }
    };
    let config = config.with_seed(args.seed);
    Ok((generate(&config)?, None))
}

fn suffixed(path: &Path, method: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".");
    name.push(method);
    PathBuf::from(name)
}
