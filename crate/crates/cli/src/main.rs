use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use walkingtime::datagen::{
    boards_to_temporal_graph, labels_csv, node_color_labels, two_glider_config, GolTrace, Neighborhood,
};
use walkingtime::embedding::{load_embeddings, TrainConfig};
use walkingtime::graph::{parse_input, transform_graph, write_edge_list};
use walkingtime::lambda::{sample_gap_histogram, HistogramOptions, LambdaError};
use walkingtime::pipeline::{run_walkingtime, PipelineConfig};
use walkingtime::plot::{emit_scatter, parse_labels};
use walkingtime::walker::{SamplingMode, WalkConfig};

#[derive(Parser)]
#[command(name = "walkingtime", version, about = "Temporal random-walk node embeddings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Embed the nodes of an edge-list file.
    Run(RunArgs),
    /// Write the two-glider Game of Life graph and its color labels.
    GolGen(GolArgs),
    /// Histogram of gap statistics over random incident edge pairs.
    LambdaHist(HistArgs),
    /// Scatter plot of a 2-D embedding file as SVG.
    Plot(PlotArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    /// Edge-list file (I/P/S records).
    #[arg(long)]
    input: PathBuf,
    /// Embedding file to write.
    #[arg(long)]
    output: PathBuf,
    /// Symmetric window extension applied to every edge interval.
    #[arg(long)]
    lambda: f64,
    #[arg(long, default_value_t = 80)]
    walk_length: usize,
    #[arg(long, default_value_t = 10)]
    walks_per_node: usize,
    #[arg(long, default_value_t = 10)]
    window: usize,
    /// Training epochs.
    #[arg(long, default_value_t = 5)]
    iters: usize,
    /// Return parameter.
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// In-out parameter.
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    #[arg(long, default_value_t = 128)]
    dim: usize,
    #[arg(long, default_value_t = SamplingMode::Rejection)]
    mode: SamplingMode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Walker threads; results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 5)]
    negatives: usize,
    #[arg(long, default_value_t = 0.025)]
    lr: f64,
    /// Also dump the walk corpus, one walk of labels per line.
    #[arg(long)]
    walks_out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct GolArgs {
    /// Number of boards, counting the initial one.
    #[arg(long, default_value_t = 200)]
    steps: usize,
    #[arg(long, default_value_t = Neighborhood::Moore8)]
    neighborhood: Neighborhood,
    /// Edge-list output.
    #[arg(long)]
    edges: PathBuf,
    /// `label,color` CSV output.
    #[arg(long)]
    labels: PathBuf,
}

#[derive(clap::Args)]
struct HistArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Only pair edges that join different node pairs.
    #[arg(long)]
    distinct_pairs: bool,
    #[arg(long)]
    bin_width: Option<f64>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args)]
struct PlotArgs {
    #[arg(long)]
    embeddings: PathBuf,
    #[arg(long)]
    labels: Option<PathBuf>,
    #[arg(long)]
    output: PathBuf,
}

enum Failure {
    Parse(anyhow::Error),
    Config(anyhow::Error),
    Runtime(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Config(_) => 3,
            Failure::Runtime(_) => 4,
        }
    }

    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Parse(e) | Failure::Config(e) | Failure::Runtime(e) => e,
        }
    }
}

fn runtime<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Runtime(e.into())
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if !path.is_file() {
        return Err(Failure::Config(anyhow!("input file {} does not exist", path.display())));
    }
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(runtime)
}

/// Writes through a temporary file in the destination directory, so a
/// failed run leaves nothing behind.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a temporary file in {}", dir.display()))
        .map_err(runtime)?;
    tmp.write_all(contents.as_bytes()).map_err(runtime)?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(runtime)?;
    Ok(())
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let text = read_input(&args.input)?;
    let input = parse_input(&text)
        .with_context(|| format!("parsing {}", args.input.display()))
        .map_err(Failure::Parse)?;
    let mut cfg = PipelineConfig::new(
        WalkConfig {
            lambda: args.lambda,
            walk_length: args.walk_length,
            walks_per_node: args.walks_per_node,
            p: args.p,
            q: args.q,
            seed: args.seed,
            mode: args.mode,
        },
        TrainConfig {
            window: args.window,
            epochs: args.iters,
            dim: args.dim,
            negatives: args.negatives,
            lr_initial: args.lr,
            seed: args.seed,
        },
    );
    cfg.threads = args.threads;
    let out = run_walkingtime(&input, &cfg).map_err(|e| {
        if e.is_config() {
            Failure::Config(e.into())
        } else {
            runtime(e)
        }
    })?;

    let mut manifest = serde_json::to_value(&out.manifest).map_err(runtime)?;
    manifest["input"] = args.input.display().to_string().into();
    manifest["output"] = args.output.display().to_string().into();
    if let Some(path) = &args.walks_out {
        let g = transform_graph(&input, args.lambda).map_err(runtime)?;
        write_atomic(path, &out.corpus.to_text(&g))?;
        manifest["walks_out"] = path.display().to_string().into();
    }
    write_atomic(&args.output, &out.embeddings)?;
    eprintln!("{manifest}");
    Ok(())
}

fn gol_gen(args: GolArgs) -> Result<(), Failure> {
    let init = two_glider_config();
    let trace = GolTrace::run(&init.board(), args.steps);
    let g = boards_to_temporal_graph(&trace, args.neighborhood);
    let labels = node_color_labels(&trace, &init.red, &init.blue);
    write_atomic(&args.edges, &write_edge_list(&g))?;
    write_atomic(&args.labels, &labels_csv(&labels))?;
    eprintln!(
        "{}",
        serde_json::json!({
            "steps": args.steps,
            "neighborhood": args.neighborhood,
            "nodes": g.node_count(),
            "point_edges": g.point_edges().len(),
            "edges": args.edges.display().to_string(),
            "labels": args.labels.display().to_string(),
        })
    );
    Ok(())
}

fn lambda_hist(args: HistArgs) -> Result<(), Failure> {
    let opts = HistogramOptions {
        samples: args.samples,
        distinct_pairs: args.distinct_pairs,
        seed: args.seed,
        bin_width: args.bin_width,
    };
    if opts.samples == 0 {
        return Err(Failure::Config(LambdaError::NoSamples.into()));
    }
    if let Some(w) = opts.bin_width {
        if !(w.is_finite() && w > 0.0) {
            return Err(Failure::Config(LambdaError::BadBinWidth(w).into()));
        }
    }
    let text = read_input(&args.input)?;
    let input = parse_input(&text)
        .with_context(|| format!("parsing {}", args.input.display()))
        .map_err(Failure::Parse)?;
    let g = transform_graph(&input, 0.0).map_err(runtime)?;
    let hist = sample_gap_histogram(&g, &opts).map_err(runtime)?;
    match &args.output {
        Some(path) => write_atomic(path, &hist.to_csv())?,
        None => print!("{}", hist.to_csv()),
    }
    eprintln!("{}", hist.summary());
    Ok(())
}

fn plot(args: PlotArgs) -> Result<(), Failure> {
    let emb = load_embeddings(&read_input(&args.embeddings)?)
        .with_context(|| format!("parsing {}", args.embeddings.display()))
        .map_err(Failure::Parse)?;
    let labels = match &args.labels {
        Some(path) => parse_labels(&read_input(path)?)
            .with_context(|| format!("parsing {}", path.display()))
            .map_err(Failure::Parse)?,
        None => Default::default(),
    };
    let svg = emit_scatter(&emb, &labels).map_err(|e| Failure::Config(e.into()))?;
    write_atomic(&args.output, &svg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Run(a) => run(a),
        Command::GolGen(a) => gol_gen(a),
        Command::LambdaHist(a) => lambda_hist(a),
        Command::Plot(a) => plot(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error());
            ExitCode::from(f.code())
        }
    }
}
