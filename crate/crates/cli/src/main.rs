//! `hlnet`: build hypercube-like networks, count edge-disjoint paths, and
//! verify conditional edge-fault tolerance.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hlnet_cli::{reproduce, Envelope};
use hlnet_core::bounds::{bound_report, brute_force_max_induced_edges, BoundReport};
use hlnet_core::fault::{
    expected_tolerance, extremal_witness, giant_component_check, verify_lower_bound, Expected,
    SearchMode, SearchVerdict,
};
use hlnet_core::flow::{is_sm_lambda, max_edge_disjoint_paths, FlowResult};
use hlnet_core::io::{parse_graph_spec, read_fault_list, write_dot, write_edge_list};
use hlnet_core::{Budget, EdgeSet, Error, HLNetwork};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "hlnet",
    version,
    about = "Edge-fault tolerance toolkit for hypercube-like interconnection networks",
    after_help = "Graph specs: qn:<n> (hypercube), cq3 (crossed cube), \
                  random:<n>:<seed> (seeded member), or an edge-list file path.\n\
                  Exit codes: 0 success, 1 verification failure, 2 invalid configuration."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a network and print it as an edge list or DOT drawing.
    Build(BuildArgs),
    /// Count edge-disjoint paths between two vertices, with the matching cut.
    Flow(FlowArgs),
    /// Check strong Menger edge connectivity, optionally under faults.
    Smlambda(SmlambdaArgs),
    /// Induced-edge maxima and boundary bounds for one dimension.
    Bounds(BoundsArgs),
    /// Verify that every admissible fault set up to a size keeps the property.
    Verify(VerifyArgs),
    /// Build and certify the extremal breaking fault set.
    Witness(WitnessArgs),
    /// Check that bounded fault sets always leave a giant component.
    Lemma27(Lemma27Args),
    /// Run the full reproduction matrix and print a pass/fail line per claim.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct BudgetArgs {
    /// Cap on enumerated or sampled fault sets before a search aborts.
    #[arg(long, default_value_t = 10_000_000)]
    budget_subsets: u64,
    /// Wall-clock guard in seconds for searches (0 disables it).
    #[arg(long, default_value_t = 600)]
    budget_seconds: u64,
}

impl BudgetArgs {
    fn build(&self) -> Budget {
        let mut b = Budget::unlimited().with_max_subsets(self.budget_subsets);
        b.max_wall = (self.budget_seconds > 0).then(|| Duration::from_secs(self.budget_seconds));
        b
    }
}

#[derive(Args)]
struct WorkerArgs {
    /// Worker threads for fault-set searches (0 uses every core). Results
    /// are identical at any worker count.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Args)]
struct SearchModeArgs {
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,
    /// Number of admissible fault sets to draw in sampled mode.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Random seed; required by sampled mode.
    #[arg(long)]
    seed: Option<u64>,
}

impl SearchModeArgs {
    fn build(&self) -> Result<SearchMode, Error> {
        match self.mode {
            Mode::Exhaustive => Ok(SearchMode::Exhaustive),
            Mode::Sampled => {
                let seed = self.seed.ok_or_else(|| {
                    Error::InvalidArgument("sampled mode needs an explicit --seed".into())
                })?;
                Ok(SearchMode::Sampled {
                    samples: self.samples,
                    seed,
                })
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuildFormat {
    Edges,
    Dot,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    graph: String,
    #[arg(long, value_enum, default_value_t = BuildFormat::Edges)]
    format: BuildFormat,
    /// Write to a file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fault-list file; those edges are highlighted in DOT output.
    #[arg(long)]
    faults: Option<PathBuf>,
    /// Vertices to mark in DOT output, comma separated.
    #[arg(long, value_delimiter = ',')]
    mark: Vec<u32>,
}

#[derive(Args)]
struct FlowArgs {
    /// Graph spec or edge-list file.
    graph: String,
    /// Source vertex.
    u: u32,
    /// Sink vertex.
    v: u32,
    /// Fault-list file of edges to remove first.
    #[arg(long)]
    faults: Option<PathBuf>,
    /// Emit the certified result as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SmlambdaArgs {
    /// Graph spec or edge-list file.
    graph: String,
    /// Fault-list file of edges to remove first.
    #[arg(long)]
    faults: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Dimension of the family member.
    #[arg(long)]
    n: u32,
    /// Report a single subgraph order instead of the full range.
    #[arg(long)]
    g: Option<u64>,
    /// Print an aligned table instead of JSON lines.
    #[arg(long)]
    table: bool,
    /// Cross-check the closed form against brute force on the hypercube
    /// (practical for n <= 4).
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: String,
    /// Minimum residual degree every vertex must keep.
    #[arg(long)]
    r: u32,
    /// Fault budget to verify; defaults to the expected tolerance.
    #[arg(long)]
    m: Option<u64>,
    #[command(flatten)]
    search: SearchModeArgs,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    workers: WorkerArgs,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    graph: String,
    /// Minimum residual degree the fault set must respect.
    #[arg(long)]
    r: u32,
    /// Also write a DOT drawing with the fault set highlighted.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Args)]
struct Lemma27Args {
    #[arg(long)]
    graph: String,
    /// Subcube level parameterizing the fault budget.
    #[arg(long)]
    r: u32,
    #[command(flatten)]
    search: SearchModeArgs,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    workers: WorkerArgs,
}

#[derive(Args)]
struct ReproduceArgs {
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    workers: WorkerArgs,
}

fn main() -> ExitCode {
    // Die quietly instead of panicking when stdout closes early, e.g. when
    // long JSON output is piped into `head`.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::WitnessInvariant(_) | Error::FlowCertification(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Build(args) => build(args),
        Command::Flow(args) => flow(args),
        Command::Smlambda(args) => smlambda(args),
        Command::Bounds(args) => bounds(args),
        Command::Verify(args) => verify(args),
        Command::Witness(args) => witness(args),
        Command::Lemma27(args) => lemma27(args),
        Command::Reproduce(args) => reproduce_all(args),
    }
}

fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T, Error> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot build worker pool: {e}")))?;
    Ok(pool.install(f))
}

fn load_faults(g: &HLNetwork, path: &Option<PathBuf>) -> Result<EdgeSet, Error> {
    match path {
        Some(p) => read_fault_list(&std::fs::read_to_string(p)?, g),
        None => Ok(EdgeSet::new()),
    }
}

fn emit(text: String, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn build(args: BuildArgs) -> Result<ExitCode, Error> {
    let g = parse_graph_spec(&args.graph)?;
    let faults = load_faults(&g, &args.faults)?;
    let text = match args.format {
        BuildFormat::Edges => write_edge_list(&g),
        BuildFormat::Dot => write_dot(&g, Some(&faults), &args.mark),
    };
    emit(text, &args.out)?;
    Ok(ExitCode::SUCCESS)
}

fn flow(args: FlowArgs) -> Result<ExitCode, Error> {
    let g = parse_graph_spec(&args.graph)?;
    let faults = load_faults(&g, &args.faults)?;
    let view = g.delete_edges(&faults)?;
    let result = max_edge_disjoint_paths(&view, args.u, args.v)?;
    result.certify(&view)?;
    if args.json {
        let report = Envelope::new(&result, &Budget::unlimited()).graph(&args.graph);
        print_json(&report);
    } else {
        print_flow_text(&result);
    }
    Ok(ExitCode::SUCCESS)
}

fn print_flow_text(result: &FlowResult) {
    println!(
        "{} edge-disjoint paths between {} and {}",
        result.value, result.source, result.sink
    );
    for (i, path) in result.paths.iter().enumerate() {
        let stops: Vec<String> = path.iter().map(u32::to_string).collect();
        println!("path {}: {}", i + 1, stops.join(" "));
    }
    println!("cut: {}", result.cut);
}

fn smlambda(args: SmlambdaArgs) -> Result<ExitCode, Error> {
    let g = parse_graph_spec(&args.graph)?;
    let faults = load_faults(&g, &args.faults)?;
    let view = g.delete_edges(&faults)?;
    let report = is_sm_lambda(&view);
    let verdict = report.verdict;
    let envelope = Envelope::new(&report, &Budget::unlimited()).graph(&args.graph);
    print_json(&envelope);
    Ok(exit_pass(verdict))
}

fn bounds(args: BoundsArgs) -> Result<ExitCode, Error> {
    if args.n == 0 || args.n as usize > hlnet_core::MAX_DIMENSION {
        return Err(Error::InvalidArgument(format!(
            "dimension must be 1..={}, got {}",
            hlnet_core::MAX_DIMENSION,
            args.n
        )));
    }
    let budget = args.budget.build();
    let top = 1u64 << args.n;
    let orders: Vec<u64> = match args.g {
        Some(g) => {
            if g == 0 || g >= top {
                return Err(Error::InvalidArgument(format!(
                    "subgraph order must be 1..={}, got {g}",
                    top - 1
                )));
            }
            vec![g]
        }
        None => (1..top).collect(),
    };
    let oracle_host = if args.oracle {
        Some(HLNetwork::hypercube(args.n as usize)?)
    } else {
        None
    };
    let mut rows = Vec::with_capacity(orders.len());
    for g in orders {
        let oracle = match &oracle_host {
            Some(host) => Some(brute_force_max_induced_edges(host, g as usize, &budget)?),
            None => None,
        };
        rows.push(bound_report(args.n, g, oracle));
    }
    let all_pass = rows.iter().all(|r| r.pass);
    if args.table {
        print_bounds_table(&rows);
    } else {
        for row in &rows {
            println!(
                "{}",
                serde_json::to_string(row).expect("reports serialize")
            );
        }
    }
    Ok(exit_pass(all_pass))
}

fn print_bounds_table(rows: &[BoundReport]) {
    let with_oracle = rows.iter().any(|r| r.oracle_max_edges.is_some());
    if with_oracle {
        println!(
            "{:>10} {:>12} {:>14} {:>12} {:>6}",
            "g", "max_edges", "boundary_bound", "oracle", "pass"
        );
    } else {
        println!("{:>10} {:>12} {:>14}", "g", "max_edges", "boundary_bound");
    }
    for r in rows {
        if with_oracle {
            println!(
                "{:>10} {:>12} {:>14} {:>12} {:>6}",
                r.g,
                r.max_edges,
                r.boundary_bound,
                r.oracle_max_edges
                    .map(|o| o.to_string())
                    .unwrap_or_else(|| "-".into()),
                r.pass
            );
        } else {
            println!("{:>10} {:>12} {:>14}", r.g, r.max_edges, r.boundary_bound);
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    expected: Expected,
    search: hlnet_core::fault::SearchResult,
}

fn verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let g = parse_graph_spec(&args.graph)?;
    let budget = args.budget.build();
    let mode = args.search.build()?;
    let expected = expected_tolerance(g.dimension() as u32, args.r)?;
    let m = match (args.m, expected) {
        (Some(m), _) => m,
        (None, Expected::Exact { value }) => value,
        (None, Expected::Reference { value }) => value,
        (None, Expected::Unknown) => {
            return Err(Error::InvalidArgument(
                "no established tolerance for this graph and threshold; pass --m".into(),
            ))
        }
    };
    let search = with_workers(args.workers.workers, || {
        verify_lower_bound(&g, args.r, m, mode, &budget)
    })??;
    let holds = matches!(search.verdict, SearchVerdict::Holds);
    let report = Envelope::new(VerifyReport { expected, search }, &budget)
        .graph(&args.graph)
        .seed(args.search.seed)
        .workers(args.workers.workers);
    print_json(&report);
    Ok(exit_pass(holds))
}

fn witness(args: WitnessArgs) -> Result<ExitCode, Error> {
    let g = parse_graph_spec(&args.graph)?;
    let w = extremal_witness(&g, args.r as usize)?;
    if let Some(path) = &args.dot {
        let dot = write_dot(&g, Some(&w.fault_set), &[w.u, w.v]);
        std::fs::write(path, dot)?;
    }
    let report = Envelope::new(&w, &Budget::unlimited()).graph(&args.graph);
    print_json(&report);
    Ok(ExitCode::SUCCESS)
}

fn lemma27(args: Lemma27Args) -> Result<ExitCode, Error> {
    let g = parse_graph_spec(&args.graph)?;
    let budget = args.budget.build();
    let mode = args.search.build()?;
    let check = with_workers(args.workers.workers, || {
        giant_component_check(&g, args.r, mode, &budget)
    })??;
    let pass = check.pass;
    let report = Envelope::new(&check, &budget)
        .graph(&args.graph)
        .seed(args.search.seed)
        .workers(args.workers.workers);
    print_json(&report);
    Ok(exit_pass(pass))
}

fn reproduce_all(args: ReproduceArgs) -> Result<ExitCode, Error> {
    let budget = args.budget.build();
    let outcomes = with_workers(args.workers.workers, || reproduce::run_all(&budget))?;
    let mut passed = 0;
    for outcome in &outcomes {
        let tag = if outcome.pass { "ok  " } else { "FAIL" };
        println!("{tag} {}: {}", outcome.name, outcome.details);
        if outcome.pass {
            passed += 1;
        }
    }
    println!("{passed}/{} criteria passed", outcomes.len());
    Ok(exit_pass(passed == outcomes.len()))
}

fn exit_pass(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
