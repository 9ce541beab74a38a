//! Experiment runner: generates a family of random disk instances, runs
//! every configured solver against the exact oracle, re-verifies each
//! solution, and emits one CSV row per (instance, config) pair plus a JSON
//! summary. All randomness derives from the experiment seed, so outputs
//! are byte-identical across runs unless wall-clock timing is requested.

use crate::geometry::{build_disk_graph, generate_random_instance, write_disk_file, GeometryError};
use crate::graph::Graph;
use crate::mix_seed;
use crate::oracle::exact_oct;
use crate::par::{par_map, seq_map};
use crate::solver::{solve, verify_solution, OctResult, SolveDiagnostics, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Instant;
use thiserror::Error;

const SALT_INSTANCE: u64 = 0x696e7374;
const SALT_SOLVE: u64 = 0x736f6c76;

#[derive(Clone, Debug)]
pub struct NamedConfig {
    pub name: String,
    pub config: SolverConfig,
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub count: usize,
    /// Disks per instance, drawn uniformly from this inclusive range.
    pub n_min: usize,
    pub n_max: usize,
    pub r_min: i64,
    pub r_max: i64,
    pub side: i64,
    pub seed: u64,
    pub configs: Vec<NamedConfig>,
    /// Node budget for the exact oracle; an exhausted search records the
    /// optimum as unknown rather than a bound.
    pub oracle_budget: u64,
    pub csv_path: PathBuf,
    pub summary_path: PathBuf,
    /// Fill the ms column with wall-clock timings. Off by default because
    /// timings break byte-for-byte reproducibility of the CSV.
    pub timings: bool,
}

#[derive(Clone, Debug)]
pub struct ExperimentRecord {
    pub instance_id: usize,
    pub n: usize,
    pub m: usize,
    pub config: String,
    pub size: usize,
    pub opt: Option<usize>,
    pub ratio: Option<f64>,
    pub diagnostics: SolveDiagnostics,
    pub ms: Option<u128>,
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid experiment spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(
        "solution for instance {instance_id} under config '{config}' failed verification; \
         repro bundle written to {repro}"
    )]
    VerificationFailed {
        instance_id: usize,
        config: String,
        repro: PathBuf,
    },
}

#[derive(Serialize)]
struct ConfigSummary {
    name: String,
    records: usize,
    max_ratio: Option<f64>,
    mean_ratio: Option<f64>,
    opt_known: usize,
}

#[derive(Serialize)]
struct Summary {
    schema: u32,
    instances: usize,
    records: usize,
    invariant_violations: usize,
    configs: Vec<ConfigSummary>,
}

struct InstanceRun {
    id: usize,
    instance_text: String,
    records: Vec<ExperimentRecord>,
    /// (config name, offending solution) when re-verification failed.
    failure: Option<String>,
}

fn run_instance(spec: &ExperimentSpec, id: usize) -> Result<InstanceRun, GeometryError> {
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(spec.seed, SALT_INSTANCE.wrapping_add(id as u64)));
    let n = rng.gen_range(spec.n_min..=spec.n_max);
    let inst = generate_random_instance(n, spec.r_min, spec.r_max, spec.side, rng.gen())?;
    let g = build_disk_graph(&inst);
    let exact = exact_oct(&g, spec.oracle_budget);
    let opt = exact.optimal.then_some(exact.vertices.len());
    let solver_seed = mix_seed(spec.seed, SALT_SOLVE.wrapping_add(id as u64));

    let mut records = Vec::with_capacity(spec.configs.len());
    let mut failure = None;
    for named in &spec.configs {
        let mut cfg = named.config.clone();
        cfg.seed = solver_seed;
        let started = Instant::now();
        let res: OctResult = solve(&g, &cfg);
        let ms = spec.timings.then(|| started.elapsed().as_millis());
        if !verify_solution(&g, &res.solution) {
            failure = Some(named.name.clone());
        }
        let size = res.solution.len();
        let ratio = match opt {
            Some(o) if o > 0 => Some(size as f64 / o as f64),
            _ => None,
        };
        records.push(ExperimentRecord {
            instance_id: id,
            n: g.vertex_count(),
            m: g.edge_count(),
            config: named.name.clone(),
            size,
            opt,
            ratio,
            diagnostics: res.diagnostics,
            ms,
        });
    }
    Ok(InstanceRun {
        id,
        instance_text: write_disk_file(&inst),
        records,
        failure,
    })
}

fn fmt_opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

/// Renders records into the fixed CSV layout. Optional fields render as
/// empty cells.
pub fn records_to_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::from(
        "instance_id,n,m,config,size,opt,ratio,a,b_hat,d_avg,dead_count,depth,ms\n",
    );
    for r in records {
        let d = &r.diagnostics;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.instance_id,
            r.n,
            r.m,
            r.config,
            r.size,
            fmt_opt(&r.opt),
            fmt_opt(&r.ratio),
            fmt_opt(&d.a),
            fmt_opt(&d.b_hat),
            fmt_opt(&d.d_avg),
            d.dead_count,
            d.depth,
            fmt_opt(&r.ms),
        ));
    }
    out
}

fn build_summary(spec: &ExperimentSpec, records: &[ExperimentRecord]) -> Summary {
    let mut violations = 0;
    for r in records {
        if let Some(o) = r.opt {
            if r.size < o {
                violations += 1;
            }
        }
        for x in [r.diagnostics.a, r.diagnostics.b_hat].into_iter().flatten() {
            if !(0.0..=1.0).contains(&x) {
                violations += 1;
            }
        }
    }
    let configs = spec
        .configs
        .iter()
        .map(|named| {
            let mine: Vec<&ExperimentRecord> =
                records.iter().filter(|r| r.config == named.name).collect();
            let ratios: Vec<f64> = mine.iter().filter_map(|r| r.ratio).collect();
            ConfigSummary {
                name: named.name.clone(),
                records: mine.len(),
                max_ratio: ratios.iter().copied().fold(None, |acc: Option<f64>, x| {
                    Some(acc.map_or(x, |a| a.max(x)))
                }),
                mean_ratio: (!ratios.is_empty())
                    .then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
                opt_known: mine.iter().filter(|r| r.opt.is_some()).count(),
            }
        })
        .collect();
    Summary {
        schema: 1,
        instances: spec.count,
        records: records.len(),
        invariant_violations: violations,
        configs,
    }
}

fn validate_spec(spec: &ExperimentSpec) -> Result<(), ExperimentError> {
    if spec.n_min > spec.n_max || spec.n_min == 0 {
        return Err(ExperimentError::InvalidSpec(
            "instance size range must be nonempty and positive".into(),
        ));
    }
    if spec.configs.is_empty() {
        return Err(ExperimentError::InvalidSpec(
            "at least one solver config is required".into(),
        ));
    }
    let mut names: Vec<&str> = spec.configs.iter().map(|c| c.name.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    if names.len() != spec.configs.len() {
        return Err(ExperimentError::InvalidSpec(
            "config names must be unique".into(),
        ));
    }
    Ok(())
}

/// Runs the whole family, writes the CSV and the JSON summary, and returns
/// the records sorted by (instance id, config listing order). Instances are
/// processed concurrently; a failed re-verification aborts after writing a
/// repro bundle next to the CSV.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ExperimentRecord>, ExperimentError> {
    validate_spec(spec)?;
    let runs = par_map((0..spec.count).collect::<Vec<usize>>(), |id| {
        run_instance(spec, id)
    });
    let mut instance_runs = Vec::with_capacity(runs.len());
    for run in runs {
        instance_runs.push(run?);
    }
    instance_runs.sort_by_key(|r| r.id);

    for run in &instance_runs {
        if let Some(config) = &run.failure {
            let repro = repro_path(&spec.csv_path, run.id);
            let bundle = format!(
                "# repro bundle: instance {} of experiment seed {}\n# config: {}\n{}",
                run.id, spec.seed, config, run.instance_text
            );
            std::fs::write(&repro, bundle)?;
            return Err(ExperimentError::VerificationFailed {
                instance_id: run.id,
                config: config.clone(),
                repro,
            });
        }
    }

    let records: Vec<ExperimentRecord> = instance_runs
        .into_iter()
        .flat_map(|r| r.records)
        .collect();
    std::fs::write(&spec.csv_path, records_to_csv(&records))?;
    let summary = build_summary(spec, &records);
    let mut json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    json.push('\n');
    std::fs::write(&spec.summary_path, json)?;
    Ok(records)
}

fn repro_path(csv: &Path, instance_id: usize) -> PathBuf {
    let stem = csv
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("experiment");
    csv.with_file_name(format!("{stem}.repro-{instance_id}.disks"))
}

/// Solves every graph under one config, spreading instances across the
/// rayon pool when the `parallel` feature is on.
pub fn solve_batch(graphs: &[Graph], cfg: &SolverConfig) -> Vec<OctResult> {
    par_map(graphs.iter().collect::<Vec<&Graph>>(), |g| solve(g, cfg))
}

/// Sequential twin of `solve_batch` for comparison on the same build.
pub fn solve_batch_sequential(graphs: &[Graph], cfg: &SolverConfig) -> Vec<OctResult> {
    seq_map(graphs.iter().collect::<Vec<&Graph>>(), |g| solve(g, cfg))
}
