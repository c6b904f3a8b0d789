//! Command-line front end: exact measures, sampling estimates, the
//! size-k correlation sweep, and the timing harness, over edge-list
//! files. Exit codes: 0 success, 1 usage error, 2 data error, 3
//! guard or overflow.

use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xbc_core::analysis::{
    bench_exclusive, correlate_size_k, set_label, set_measures, Convention, CsvMeta,
    SET_ENUMERATION_GUARD,
};
use xbc_core::exact::{
    betweenness_all, co_betweenness, exclusive_betweenness_direct, exclusive_betweenness_ie,
    group_betweenness_direct, group_betweenness_ie,
};
use xbc_core::graph::{largest_component, load_edge_list, Graph, LoadOptions, VertexSet};
use xbc_core::sampling::{
    estimate_general, estimate_pair_sampling, estimate_path_sampling, estimate_source_sampling,
    PairDistribution, SampleEstimate,
};
use xbc_core::spd::SpCache;
use xbc_core::Error;

#[derive(Parser)]
#[command(name = "xbc", version, about = "Exclusive betweenness centrality toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an exact measure on a vertex set (or plain betweenness)
    Compute(ComputeArgs),
    /// Estimate exclusive betweenness by sampling
    Estimate(EstimateArgs),
    /// Evaluate all sets of one size and correlate the measures
    Correlate(CorrelateArgs),
    /// Time exact exclusive betweenness over random sets of each size
    Bench(BenchArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Edge-list file (whitespace-separated pairs; '%' and '#' comments)
    #[arg(long)]
    graph: PathBuf,
    /// Accept a disconnected graph and analyze its largest component
    #[arg(long)]
    allow_disconnected: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Measure {
    /// Betweenness of every vertex
    B,
    /// Exclusive betweenness of the set
    Xb,
    /// Group betweenness of the set
    Gb,
    /// Co-betweenness of the set
    Cb,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Direct per-member evaluation for xb/gb, chain evaluation for cb
    Auto,
    /// Inclusion-exclusion over subsets (xb and gb only)
    Ie,
    /// Direct evaluation without subset expansion (xb and gb only)
    Direct,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Sampler {
    /// Draw sources, count qualifying paths per source exactly
    Source,
    /// Draw endpoint pairs, count qualifying paths per pair exactly
    Pair,
    /// Draw endpoint pairs, then one shortest path per draw
    Path,
    /// The path scheme under the uniform pair distribution, spelled out
    General,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Which measure to compute
    #[arg(long, value_enum)]
    measure: Measure,
    /// Vertex set as comma-separated original ids (omit for --measure b)
    #[arg(long, value_delimiter = ',')]
    set: Option<Vec<u64>>,
    /// Evaluation method (omit for auto)
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Present unordered-pair counts (halves ordered values)
    #[arg(long)]
    unordered: bool,
    /// Also write a CSV report here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Vertex set as comma-separated original ids
    #[arg(long, value_delimiter = ',', required = true)]
    set: Vec<u64>,
    /// Sampling scheme
    #[arg(long, value_enum)]
    sampler: Sampler,
    /// Number of sampling iterations
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// RNG seed (fixed default keeps runs reproducible)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Present unordered-pair counts (halves the mean, quarters variance)
    #[arg(long)]
    unordered: bool,
}

#[derive(Args)]
struct CorrelateArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Set size to enumerate exhaustively
    #[arg(long, default_value_t = 2)]
    size: usize,
    /// Present unordered-pair counts in the CSV rows
    #[arg(long)]
    unordered: bool,
    /// Write the per-set CSV report here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Inclusive set-size range, e.g. 2..5
    #[arg(long, default_value = "2..5")]
    sizes: String,
    /// Random sets drawn per size
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// RNG seed (fixed default keeps runs reproducible)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the per-size CSV report here
    #[arg(long)]
    out: Option<PathBuf>,
}

struct CliError {
    code: u8,
    message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match &e {
            Error::UnknownVertex { .. }
            | Error::InvalidSet(_)
            | Error::InvalidDistribution(_)
            | Error::DegeneratePairSpace => 1,
            Error::GuardExceeded { .. }
            | Error::CountOverflow
            | Error::PathCountOverflow
            | Error::CapExceeded { .. } => 3,
            _ => 2,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError {
        code: 1,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::Correlate(args) => cmd_correlate(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result.and_then(|text| emit(&text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// Writes the command's output in one shot. A closed pipe downstream
/// (e.g. `| head`) is a normal way for output to end, not a failure.
fn emit(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(Error::Io(e).into()),
    }
}

fn load(args: &GraphArgs) -> Result<Graph, CliError> {
    let opts = LoadOptions {
        require_connected: !args.allow_disconnected,
        ..LoadOptions::default()
    };
    let file = File::open(&args.graph).map_err(|e| CliError {
        code: 2,
        message: format!("{}: {e}", args.graph.display()),
    })?;
    let summary = load_edge_list(BufReader::new(file), &opts)?;
    let mut graph = summary.graph;
    if args.allow_disconnected {
        graph = largest_component(&graph);
    }
    Ok(graph)
}

fn convention(unordered: bool) -> Convention {
    if unordered {
        Convention::Unordered
    } else {
        Convention::Ordered
    }
}

fn meta(args: &GraphArgs, conv: Convention, seed: Option<u64>) -> CsvMeta {
    CsvMeta {
        tool: format!("xbc {}", env!("CARGO_PKG_VERSION")),
        graph: args.graph.display().to_string(),
        convention: conv,
        seed,
    }
}

fn parse_set(g: &Graph, originals: &[u64]) -> Result<VertexSet, CliError> {
    Ok(g.vertex_set_from_originals(originals)?)
}

fn write_out(path: &PathBuf, csv: &str) -> Result<(), CliError> {
    std::fs::write(path, csv).map_err(Error::Io)?;
    Ok(())
}

fn cmd_compute(args: ComputeArgs) -> Result<String, CliError> {
    let g = load(&args.graph)?;
    let conv = convention(args.unordered);
    let mut text = String::new();

    if args.measure == Measure::B {
        if args.set.is_some() {
            return Err(usage("--set does not apply to --measure b (it covers every vertex)"));
        }
        if args.method.is_some() {
            return Err(usage("--method does not apply to --measure b"));
        }
        let b = betweenness_all(&g)?;
        for v in 0..g.vertex_count() {
            writeln!(text, "{}: {}", g.original_id(v), conv.render(b[v])).unwrap();
        }
        if let Some(out) = &args.out {
            let mut csv = meta(&args.graph, conv, None).header_lines();
            csv.push_str("vertex,b\n");
            for v in 0..g.vertex_count() {
                csv.push_str(&format!("{},{}\n", g.original_id(v), conv.render(b[v])));
            }
            write_out(out, &csv)?;
        }
        return Ok(text);
    }

    let originals = args
        .set
        .as_deref()
        .ok_or_else(|| usage("--set is required for set measures (xb, gb, cb)"))?;
    let a = parse_set(&g, originals)?;
    let method = args.method.unwrap_or(Method::Auto);
    let cache = SpCache::build(&g)?;
    let value = match (args.measure, method) {
        (Measure::Xb, Method::Auto) | (Measure::Xb, Method::Direct) => {
            exclusive_betweenness_direct(&g, &cache, &a)?
        }
        (Measure::Xb, Method::Ie) => exclusive_betweenness_ie(&cache, &a)?,
        (Measure::Gb, Method::Auto) | (Measure::Gb, Method::Direct) => {
            group_betweenness_direct(&g, &cache, &a)?
        }
        (Measure::Gb, Method::Ie) => group_betweenness_ie(&cache, &a)?,
        (Measure::Cb, Method::Auto) => co_betweenness(&cache, &a, &a)?,
        (Measure::Cb, _) => {
            return Err(usage("--measure cb has a single evaluation method; omit --method"))
        }
        (Measure::B, _) => unreachable!("handled above"),
    };
    writeln!(text, "{}: {}", set_label(&g, a.members()), conv.render(value)).unwrap();

    if let Some(out) = &args.out {
        let m = set_measures(&cache, &a)?;
        let mut csv = meta(&args.graph, conv, None).header_lines();
        csv.push_str("set,xb,gb,cb\n");
        csv.push_str(&format!(
            "{},{},{},{}\n",
            set_label(&g, &m.members),
            conv.render(m.xb),
            conv.render(m.gb),
            conv.render(m.cb)
        ));
        write_out(out, &csv)?;
    }
    Ok(text)
}

fn cmd_estimate(args: EstimateArgs) -> Result<String, CliError> {
    if args.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let g = load(&args.graph)?;
    let a = parse_set(&g, &args.set)?;
    let (name, est): (&str, SampleEstimate) = match args.sampler {
        Sampler::Source => (
            "source",
            estimate_source_sampling(&g, &a, args.samples, args.seed)?,
        ),
        Sampler::Pair => (
            "pair",
            estimate_pair_sampling(&g, &a, args.samples, args.seed)?,
        ),
        Sampler::Path => (
            "path",
            estimate_path_sampling(&g, &a, args.samples, args.seed)?,
        ),
        Sampler::General => (
            "general",
            estimate_general(
                &g,
                &a,
                &PairDistribution::UniformPair,
                args.samples,
                args.seed,
            )?,
        ),
    };
    let conv = convention(args.unordered);
    let (mean, variance) = match conv {
        Convention::Ordered => (est.mean, est.sample_variance),
        Convention::Unordered => (est.mean / 2.0, est.sample_variance / 4.0),
    };
    let mut text = String::new();
    writeln!(text, "set: {}", set_label(&g, a.members())).unwrap();
    writeln!(text, "sampler: {name}").unwrap();
    writeln!(text, "convention: {}", conv.as_str()).unwrap();
    writeln!(text, "mean: {mean}").unwrap();
    writeln!(text, "variance: {variance}").unwrap();
    writeln!(text, "samples: {}", est.samples).unwrap();
    writeln!(text, "seed: {}", est.seed).unwrap();
    Ok(text)
}

fn cmd_correlate(args: CorrelateArgs) -> Result<String, CliError> {
    let g = load(&args.graph)?;
    let report = correlate_size_k(&g, args.size, SET_ENUMERATION_GUARD)?;
    let mut text = String::new();
    writeln!(text, "sets: {}", report.rows.len()).unwrap();
    writeln!(text, "pearson xb-gb: {:.6}", report.pearson_xb_gb).unwrap();
    writeln!(text, "pearson xb-cb: {:.6}", report.pearson_xb_cb).unwrap();
    writeln!(text, "pearson gb-cb: {:.6}", report.pearson_gb_cb).unwrap();
    writeln!(text, "spearman xb-gb: {:.6}", report.spearman_xb_gb).unwrap();
    writeln!(text, "spearman xb-cb: {:.6}", report.spearman_xb_cb).unwrap();
    writeln!(text, "spearman gb-cb: {:.6}", report.spearman_gb_cb).unwrap();
    if let Some(out) = &args.out {
        let conv = convention(args.unordered);
        let csv = report.to_csv(&g, &meta(&args.graph, conv, None));
        write_out(out, &csv)?;
    }
    Ok(text)
}

fn parse_sizes(text: &str) -> Result<Vec<usize>, CliError> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| usage(format!("--sizes expects an inclusive range like 2..5, got '{text}'")))?;
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| usage(format!("invalid range start '{lo}'")))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| usage(format!("invalid range end '{hi}'")))?;
    if lo == 0 || hi < lo {
        return Err(usage(format!("--sizes range {lo}..{hi} is empty or starts at 0")));
    }
    Ok((lo..=hi).collect())
}

fn cmd_bench(args: BenchArgs) -> Result<String, CliError> {
    if args.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let sizes = parse_sizes(&args.sizes)?;
    let g = load(&args.graph)?;
    let report = bench_exclusive(&g, &sizes, args.trials, args.seed)?;
    let mut text = String::new();
    writeln!(text, "cache build: {:.6}s", report.cache_build.as_secs_f64()).unwrap();
    for s in &report.sizes {
        writeln!(
            text,
            "k={}: trials {}, median {:.6}s, max {:.6}s",
            s.k,
            s.times.len(),
            s.median.as_secs_f64(),
            s.max.as_secs_f64()
        )
        .unwrap();
    }
    if let Some(out) = &args.out {
        let csv = report.to_csv(&meta(&args.graph, Convention::Ordered, Some(args.seed)));
        write_out(out, &csv)?;
    }
    Ok(text)
}
