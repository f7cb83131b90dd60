use clap::{Args, Parser, Subcommand, ValueEnum};
use route_skyline::graph::{GeneratorConfig, DEFAULT_MAX_COST};
use route_skyline::Method;
use route_skyline_cli::{
    cmd_bench, cmd_generate, cmd_query, cmd_validate, exit, BenchConfig, CliError, GraphInput,
    QueryArgs, TaskSource,
};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  internal error
  2  usage error (bad flags, unsupported method for the graph, too few tasks)
  3  unreadable or malformed graph / tasks file
  4  node id not in the graph
  5  target unreachable (query still prints an empty skyline)
  6  methods disagree (bench) or oracle mismatch (validate)";

#[derive(Parser)]
#[command(name = "skyline", version, about = "Pareto-optimal route skylines on multi-cost graphs", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic graph in the edge-list format.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Compute the skyline of one s-t query.
    Query(QueryCli),
    /// Run a benchmark sweep over tasks and methods.
    Bench(BenchCli),
    /// Check every method against brute force on all node pairs of a small graph.
    Validate {
        graph: PathBuf,
        #[arg(long, default_value_t = route_skyline::oracle::DEFAULT_NODE_LIMIT)]
        node_limit: usize,
        #[arg(long)]
        remap_ids: bool,
    },
}

#[derive(Args)]
struct CostArgs {
    /// Number of cost criteria.
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Target Pearson correlation between criteria, in [-1, 1].
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    rho: f64,
    /// Costs are integers in 1..=max-cost.
    #[arg(long, default_value_t = DEFAULT_MAX_COST)]
    max_cost: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout if omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// Bidirectional 4-neighbour lattice.
    Grid {
        #[arg(long)]
        width: usize,
        #[arg(long)]
        height: usize,
        #[command(flatten)]
        cost: CostArgs,
    },
    /// Strongly connected random digraph.
    Random {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        edges: usize,
        #[command(flatten)]
        cost: CostArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct QueryCli {
    graph: PathBuf,
    #[arg(long, short)]
    source: u64,
    #[arg(long, short)]
    target: u64,
    /// none, pp, bpp, md or dd.
    #[arg(long, short, default_value = "pp")]
    method: Method,
    #[arg(long, value_enum, default_value = "json")]
    emit: Emit,
    /// Include node sequences of the skyline paths.
    #[arg(long)]
    paths: bool,
    /// Include wall-clock timings (output is then no longer reproducible).
    #[arg(long)]
    timing: bool,
    /// Treat node ids in the file as sparse labels.
    #[arg(long)]
    remap_ids: bool,
}

#[derive(Args)]
struct BenchCli {
    graph: PathBuf,
    /// File with one `s t` pair per line.
    #[arg(long, conflicts_with = "random_tasks")]
    tasks: Option<PathBuf>,
    /// Number of random reachable (s, t) pairs to draw.
    #[arg(long, required_unless_present = "tasks")]
    random_tasks: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "pp,md")]
    methods: Vec<Method>,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    /// Per-run timeout in seconds.
    #[arg(long, default_value_t = 300.0)]
    timeout: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Worker threads for running tasks concurrently.
    #[arg(long, env = "SKYLINE_THREADS", default_value_t = 1)]
    threads: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long)]
    remap_ids: bool,
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn generate(kind: GenerateKind) -> Result<i32, CliError> {
    let (config, cost) = match kind {
        GenerateKind::Grid {
            width,
            height,
            cost,
        } => (
            GeneratorConfig::grid(width, height, cost.d, cost.seed),
            cost,
        ),
        GenerateKind::Random { nodes, edges, cost } => (
            GeneratorConfig::random(nodes, edges, cost.d, cost.seed),
            cost,
        ),
    };
    let config = config
        .with_correlation(cost.rho)
        .with_max_cost(cost.max_cost);
    let mut out = output(&cost.output)?;
    cmd_generate(&config, &mut out)?;
    out.flush()?;
    Ok(exit::OK)
}

fn query(q: QueryCli) -> Result<i32, CliError> {
    let report = cmd_query(&QueryArgs {
        graph: q.graph,
        source: q.source,
        target: q.target,
        method: q.method,
        remap_ids: q.remap_ids,
        paths: q.paths,
        timing: q.timing,
    })?;
    let text = match q.emit {
        Emit::Json => report.to_json()?,
        Emit::Text => report.to_text(),
    };
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(report.exit_code())
}

fn bench(b: BenchCli) -> Result<i32, CliError> {
    if !(b.timeout > 0.0 && b.timeout.is_finite()) {
        return Err(CliError::Usage(
            "--timeout must be a positive number of seconds".into(),
        ));
    }
    let input = GraphInput::load(&b.graph, b.remap_ids)?;
    let source = match (b.tasks, b.random_tasks) {
        (Some(path), _) => TaskSource::File(path),
        (None, Some(count)) => TaskSource::Random {
            count,
            seed: b.seed,
        },
        (None, None) => return Err(CliError::Usage("give --tasks or --random-tasks".into())),
    };
    let config = BenchConfig {
        methods: b.methods,
        reps: b.reps,
        timeout: Duration::from_secs_f64(b.timeout),
        threads: b.threads,
    };
    let report = cmd_bench(&input, &source, &config)?;
    let mut out = output(&b.output)?;
    match b.format {
        Format::Csv => report.write_csv(&mut out)?,
        Format::Json => report.write_json(&mut out)?,
    }
    out.flush()?;
    eprint!("{}", report.summary_text());
    Ok(report.exit_code())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Generate { kind } => generate(kind),
        Command::Query(q) => query(q),
        Command::Bench(b) => bench(b),
        Command::Validate {
            graph,
            node_limit,
            remap_ids,
        } => {
            let input = GraphInput::load(&graph, remap_ids)?;
            let report = cmd_validate(&input, node_limit)?;
            print!("{}", report.to_text());
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
