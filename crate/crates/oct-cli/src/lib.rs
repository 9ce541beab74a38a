//! Command line front end. The actual argument parsing and dispatch live
//! here (rather than in main.rs) so integration tests can drive the CLI
//! in-process and inspect exit codes and output directly.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use oct_core::bounds::{evaluate, DERANDOMIZED_KAPPA};
use oct_core::experiment::{run_experiment, ExperimentError, ExperimentSpec, NamedConfig};
use oct_core::geometry::{
    build_disk_graph, generate_random_instance, parse_disk_file, write_disk_file,
};
use oct_core::graph::Graph;
use oct_core::oracle::{exact_oct, BaseSubroutine};
use oct_core::solver::{solve, verify_solution, Chosen, SolveDiagnostics, SolverConfig, Variant};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "oct",
    about = "Odd cycle transversal solver for disk intersection graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random disk instance file
    Generate(GenerateArgs),
    /// Convert a disk instance file to an edge-list graph file
    BuildGraph(BuildGraphArgs),
    /// Run the approximation pipeline on an edge-list graph
    Solve(SolveArgs),
    /// Solve exactly by branch and bound
    Exact(ExactArgs),
    /// Check that deleting the given vertices leaves a bipartite graph
    Verify(VerifyArgs),
    /// Evaluate the closed-form approximation ratio bound
    Bound(BoundArgs),
    /// Run a batch of instances against the exact oracle and emit CSV
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of disks
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    r_min: i64,
    #[arg(long, default_value_t = 5)]
    r_max: i64,
    /// Side length of the coordinate box
    #[arg(long, default_value_t = 100)]
    side: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BuildGraphArgs {
    /// Disk instance file
    #[arg(long)]
    input: PathBuf,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Randomized,
    Derandomized,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    Exact,
    Greedy,
}

#[derive(Args)]
struct SolveArgs {
    /// Edge-list graph file
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = VariantArg::Randomized)]
    variant: VariantArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Independent repetitions, best kept (randomized variant only)
    #[arg(long)]
    repeats: Option<usize>,
    #[arg(long, value_enum, default_value_t = BaseArg::Exact)]
    base: BaseArg,
    /// Branch-and-bound node budget for the exact base subroutine
    #[arg(long, default_value_t = 10_000_000)]
    base_budget: u64,
    /// Declared ratio recorded for the greedy fallback base
    #[arg(long, default_value_t = 2.0)]
    greedy_ratio: f64,
    /// Collect oracle-backed diagnostics
    #[arg(long)]
    diagnostics: bool,
    /// Node budget for the diagnostics oracle
    #[arg(long, default_value_t = 10_000_000)]
    diagnostics_budget: u64,
    /// Build the triangle packing in seed-shuffled order
    #[arg(long)]
    shuffle_packing: bool,
}

#[derive(Args)]
struct ExactArgs {
    /// Edge-list graph file
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Edge-list graph file
    #[arg(long)]
    input: PathBuf,
    /// Comma-separated vertex ids; empty for the empty set
    #[arg(long, default_value = "")]
    solution: String,
}

#[derive(Args)]
struct BoundArgs {
    /// Average-degree parameter (sets kappa = 3^-(3d/8 + 5/4))
    #[arg(long, conflicts_with = "kappa")]
    d: Option<f64>,
    /// Dead-density coefficient, used directly
    #[arg(long)]
    kappa: Option<f64>,
    /// Use the derandomized constant kappa = 400^-3 / 3
    #[arg(long, conflicts_with_all = ["d", "kappa"])]
    derandomized: bool,
    /// Base subroutine ratio
    #[arg(long, default_value_t = 2.25)]
    rho0: f64,
    /// Evaluate at this ratio instead of the computed root
    #[arg(long)]
    rho: Option<f64>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    count: usize,
    #[arg(long)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
    #[arg(long, default_value_t = 1)]
    r_min: i64,
    #[arg(long, default_value_t = 5)]
    r_max: i64,
    #[arg(long, default_value_t = 100)]
    side: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Solver variants to compare; each becomes one CSV config column value
    #[arg(long, value_enum, value_delimiter = ',',
          default_values_t = [VariantArg::Randomized, VariantArg::Derandomized])]
    variants: Vec<VariantArg>,
    #[arg(long)]
    repeats: Option<usize>,
    #[arg(long, value_enum, default_value_t = BaseArg::Exact)]
    base: BaseArg,
    #[arg(long, default_value_t = 10_000_000)]
    base_budget: u64,
    #[arg(long, default_value_t = 2.0)]
    greedy_ratio: f64,
    /// Node budget for the per-instance exact oracle
    #[arg(long, default_value_t = 10_000_000)]
    oracle_budget: u64,
    #[arg(long)]
    csv: PathBuf,
    #[arg(long)]
    summary: PathBuf,
    /// Record wall-clock milliseconds (breaks CSV reproducibility)
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    shuffle_packing: bool,
}

/// Runs the CLI on `args` (including argv[0]). Returns the process exit
/// code: 0 on success, 1 for domain failures (verification rejected,
/// infeasible request), 2 for usage or input errors.
pub fn run(args: &[String]) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own usage/help text; --help and --version
            // are successful outcomes, everything else is a usage error
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn dispatch(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Generate(a) => cmd_generate(a),
        Command::BuildGraph(a) => cmd_build_graph(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Exact(a) => cmd_exact(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bound(a) => cmd_bound(a),
        Command::Experiment(a) => cmd_experiment(a),
    }
}

fn emit(text: String, out: Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(&path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read_graph(path: &PathBuf) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Graph::parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn cmd_generate(a: GenerateArgs) -> Result<u8> {
    let inst = generate_random_instance(a.n, a.r_min, a.r_max, a.side, a.seed)?;
    emit(write_disk_file(&inst), a.out)?;
    Ok(0)
}

fn cmd_build_graph(a: BuildGraphArgs) -> Result<u8> {
    let text = std::fs::read_to_string(&a.input)
        .with_context(|| format!("reading {}", a.input.display()))?;
    let inst = parse_disk_file(&text)?;
    let g = build_disk_graph(&inst);
    emit(g.to_edge_list(), a.out)?;
    Ok(0)
}

fn base_subroutine(base: BaseArg, budget: u64, greedy_ratio: f64) -> BaseSubroutine {
    match base {
        BaseArg::Exact => BaseSubroutine::exact(budget),
        BaseArg::Greedy => BaseSubroutine::greedy_fallback(greedy_ratio),
    }
}

fn solver_config(
    variant: VariantArg,
    seed: u64,
    repeats: Option<usize>,
    base: BaseSubroutine,
    shuffle: bool,
) -> Result<SolverConfig> {
    let mut cfg = match variant {
        VariantArg::Randomized => SolverConfig::randomized(seed, base),
        VariantArg::Derandomized => SolverConfig::derandomized(base),
    };
    cfg.seed = seed;
    cfg.shuffle_packing = shuffle;
    if let Some(r) = repeats {
        if r == 0 {
            bail!("--repeats must be at least 1");
        }
        if matches!(variant, VariantArg::Derandomized) && r != 1 {
            bail!("the derandomized variant admits exactly one repeat");
        }
        cfg.repeats = r;
    }
    Ok(cfg)
}

/// The diagnostics keys promised by the solve subcommand, all nullable.
#[derive(Serialize)]
struct DiagnosticsDoc {
    a: Option<f64>,
    b_hat: Option<f64>,
    d_avg: Option<f64>,
    dead_count: usize,
    s1: usize,
    s2: usize,
    s3: Option<usize>,
    depth: usize,
}

impl From<&SolveDiagnostics> for DiagnosticsDoc {
    fn from(d: &SolveDiagnostics) -> DiagnosticsDoc {
        DiagnosticsDoc {
            a: d.a,
            b_hat: d.b_hat,
            d_avg: d.d_avg,
            dead_count: d.dead_count,
            s1: d.s1,
            s2: d.s2,
            s3: d.s3,
            depth: d.depth,
        }
    }
}

#[derive(Serialize)]
struct SolveDoc {
    n: usize,
    m: usize,
    size: usize,
    solution: Vec<usize>,
    chosen: Chosen,
    variant: Variant,
    seed: u64,
    diagnostics: Option<DiagnosticsDoc>,
}

fn cmd_solve(a: SolveArgs) -> Result<u8> {
    let g = read_graph(&a.input)?;
    let base = base_subroutine(a.base, a.base_budget, a.greedy_ratio);
    let mut cfg = solver_config(a.variant, a.seed, a.repeats, base, a.shuffle_packing)?;
    cfg.collect_diagnostics = a.diagnostics;
    cfg.diagnostics_budget = a.diagnostics_budget;
    let res = solve(&g, &cfg);
    let doc = SolveDoc {
        n: g.vertex_count(),
        m: g.edge_count(),
        size: res.solution.len(),
        solution: res.solution,
        chosen: res.chosen,
        variant: cfg.variant,
        seed: cfg.seed,
        diagnostics: a.diagnostics.then(|| DiagnosticsDoc::from(&res.diagnostics)),
    };
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(0)
}

#[derive(Serialize)]
struct ExactDoc {
    n: usize,
    m: usize,
    size: usize,
    solution: Vec<usize>,
    optimal: bool,
    nodes_explored: u64,
}

fn cmd_exact(a: ExactArgs) -> Result<u8> {
    let g = read_graph(&a.input)?;
    let res = exact_oct(&g, a.budget);
    let doc = ExactDoc {
        n: g.vertex_count(),
        m: g.edge_count(),
        size: res.vertices.len(),
        solution: res.vertices,
        optimal: res.optimal,
        nodes_explored: res.nodes_explored,
    };
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(0)
}

fn parse_solution(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(
            part.parse::<usize>()
                .map_err(|_| anyhow!("invalid vertex id '{part}' in --solution"))?,
        );
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn cmd_verify(a: VerifyArgs) -> Result<u8> {
    let g = read_graph(&a.input)?;
    let solution = parse_solution(&a.solution)?;
    if let Some(&v) = solution.iter().find(|&&v| v >= g.vertex_count()) {
        bail!("vertex {v} out of range for a graph on {} vertices", g.vertex_count());
    }
    let valid = verify_solution(&g, &solution);
    println!(
        "{}",
        serde_json::to_string_pretty(&serde_json::json!({
            "valid": valid,
            "size": solution.len(),
        }))?
    );
    Ok(if valid { 0 } else { 1 })
}

fn cmd_bound(a: BoundArgs) -> Result<u8> {
    let kappa = if a.derandomized {
        DERANDOMIZED_KAPPA
    } else if let Some(k) = a.kappa {
        k
    } else if let Some(d) = a.d {
        if d < 0.0 {
            bail!("--d must be nonnegative");
        }
        oct_core::bounds::kappa_from_degree(d)
    } else {
        bail!("one of --d, --kappa, or --derandomized is required");
    };
    if a.rho0 < 1.0 {
        bail!("--rho0 must be at least 1");
    }
    let result = evaluate(kappa, a.rho0, a.rho)?;
    println!("{}", serde_json::to_string_pretty(&result)?);
    Ok(0)
}

fn cmd_experiment(a: ExperimentArgs) -> Result<u8> {
    let base = base_subroutine(a.base, a.base_budget, a.greedy_ratio);
    let mut configs = Vec::new();
    for v in &a.variants {
        let cfg = solver_config(*v, a.seed, a.repeats, base, a.shuffle_packing)?;
        let name = match v {
            VariantArg::Randomized => "randomized",
            VariantArg::Derandomized => "derandomized",
        };
        configs.push(NamedConfig {
            name: name.to_string(),
            config: cfg,
        });
    }
    let spec = ExperimentSpec {
        count: a.count,
        n_min: a.n_min,
        n_max: a.n_max,
        r_min: a.r_min,
        r_max: a.r_max,
        side: a.side,
        seed: a.seed,
        configs,
        oracle_budget: a.oracle_budget,
        csv_path: a.csv,
        summary_path: a.summary,
        timings: a.timings,
    };
    match run_experiment(&spec) {
        Ok(records) => {
            let summary = std::fs::read_to_string(&spec.summary_path)?;
            print!("{summary}");
            eprintln!(
                "wrote {} records to {}",
                records.len(),
                spec.csv_path.display()
            );
            Ok(0)
        }
        Err(e @ ExperimentError::VerificationFailed { .. }) => {
            eprintln!("error: {e}");
            Ok(1)
        }
        Err(ExperimentError::InvalidSpec(msg)) => bail!("invalid experiment spec: {msg}"),
        Err(e) => Err(e.into()),
    }
}
