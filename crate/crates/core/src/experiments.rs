//! Seeded repeated runs, trace aggregation and variant comparison.
//!
//! Run `r` of an experiment uses seed `base_seed + r`. Runs may execute on a
//! thread pool, but aggregation always walks the runs in ascending run index,
//! so serial and parallel execution give bit-identical results.

use rayon::prelude::*;

use crate::benchmarks::{lookup, Benchmark, BenchmarkKind, Objective};
use crate::error::{Result, SwarmError};
use crate::rng::RandomStream;
use crate::swarm::{init_swarm, SwarmConfig};
use crate::variants::VariantSpec;

/// Default iterations-to-threshold epsilon for a benchmark.
pub fn default_epsilon(objective: &str) -> f64 {
    match BenchmarkKind::from_name(objective) {
        Ok(BenchmarkKind::Griewank) => 1e-15,
        _ => 1e-12,
    }
}

/// Snapshot iterations used when none are given: 10 and the final iteration.
pub fn default_snapshots(it_max: usize) -> Vec<usize> {
    let mut s: Vec<usize> = [10.min(it_max), it_max].into_iter().filter(|&i| i > 0).collect();
    s.dedup();
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub objective_name: String,
    pub n_dims: usize,
    pub variant: VariantSpec,
    pub swarm: SwarmConfig,
    pub repetitions: usize,
    pub base_seed: u64,
    pub snapshot_iterations: Vec<usize>,
    /// Threshold for [`iterations_to_threshold`].
    pub epsilon: f64,
}

impl ExperimentSpec {
    /// Twenty repetitions from seed 0, default snapshots and epsilon.
    pub fn new(objective_name: impl Into<String>, variant: VariantSpec, swarm: SwarmConfig) -> Self {
        let objective_name = objective_name.into();
        Self {
            epsilon: default_epsilon(&objective_name),
            snapshot_iterations: default_snapshots(swarm.it_max),
            n_dims: swarm.n_dims,
            objective_name,
            variant,
            swarm,
            repetitions: 20,
            base_seed: 0,
        }
    }

    pub fn with_repetitions(mut self, repetitions: usize) -> Self {
        self.repetitions = repetitions;
        self
    }

    pub fn with_seed(mut self, base_seed: u64) -> Self {
        self.base_seed = base_seed;
        self
    }

    pub fn with_snapshots(mut self, snapshots: Vec<usize>) -> Self {
        self.snapshot_iterations = snapshots;
        self
    }

    pub fn run_seed(&self, run_index: usize) -> u64 {
        self.base_seed.wrapping_add(run_index as u64)
    }

    pub fn objective(&self) -> Result<Benchmark> {
        lookup(&self.objective_name, self.n_dims)
    }

    pub fn validate(&self) -> Result<()> {
        self.swarm.validate()?;
        self.variant.validate()?;
        if self.swarm.n_dims != self.n_dims {
            return Err(SwarmError::Config(format!(
                "experiment has {} dimensions but its swarm has {}",
                self.n_dims, self.swarm.n_dims
            )));
        }
        if self.repetitions == 0 {
            return Err(SwarmError::Config("repetitions must be at least 1".into()));
        }
        if let Some(&bad) = self
            .snapshot_iterations
            .iter()
            .find(|&&s| s == 0 || s > self.swarm.it_max)
        {
            return Err(SwarmError::Config(format!(
                "snapshot iteration {bad} outside 1..={}",
                self.swarm.it_max
            )));
        }
        if !(self.epsilon > 0.0) {
            return Err(SwarmError::Config(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        self.objective().map(|_| ())
    }
}

/// Best-so-far fitness of one run; index 0 is the post-initialization value.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub seed: u64,
    pub best_fitness_per_iteration: Vec<f64>,
    pub final_best_position: Vec<f64>,
}

impl RunTrace {
    pub fn final_best(&self) -> f64 {
        *self.best_fitness_per_iteration.last().expect("trace is never empty")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnapshotStats {
    pub iteration: usize,
    pub mean: f64,
    /// Sample standard deviation; zero for a single run.
    pub std: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateResult {
    pub objective_name: String,
    pub n_dims: usize,
    pub variant: VariantSpec,
    pub epsilon: f64,
    /// Run seeds in run-index order.
    pub seeds: Vec<u64>,
    pub mean_trace: Vec<f64>,
    pub snapshots: Vec<SnapshotStats>,
    pub iterations_to_threshold: Vec<Option<usize>>,
    /// Mean over the runs that reached epsilon; `None` when none did.
    pub mean_iterations_to_threshold: Option<f64>,
    pub final_best: Vec<f64>,
}

impl AggregateResult {
    pub fn snapshot(&self, iteration: usize) -> Option<&SnapshotStats> {
        self.snapshots.iter().find(|s| s.iteration == iteration)
    }

    pub fn runs_reaching_threshold(&self) -> usize {
        self.iterations_to_threshold.iter().flatten().count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    #[default]
    Serial,
    /// Runs spread over a dedicated pool with this many threads.
    Threads(usize),
}

/// Initializes a swarm and performs `it_max` steps, recording the best after each.
pub fn run_single(spec: &ExperimentSpec, seed: u64) -> Result<RunTrace> {
    spec.validate()?;
    let objective = spec.objective()?;
    run_with_objective(spec, &objective, seed)
}

/// Like [`run_single`] with a caller-supplied objective.
pub fn run_with_objective<O: Objective + ?Sized>(spec: &ExperimentSpec, objective: &O, seed: u64) -> Result<RunTrace> {
    let config = &spec.swarm;
    let mut rng = RandomStream::new(seed);
    let mut state = init_swarm(config, objective, &mut rng)?;
    let mut trace = Vec::with_capacity(config.it_max + 1);
    trace.push(state.global_best_fit);
    for _ in 0..config.it_max {
        spec.variant.step(&mut state, config, objective, &mut rng)?;
        trace.push(state.global_best_fit);
    }
    Ok(RunTrace {
        seed,
        best_fitness_per_iteration: trace,
        final_best_position: state.global_best_pos,
    })
}

/// First iteration whose best-so-far fitness is at most `epsilon`.
pub fn iterations_to_threshold(trace: &RunTrace, epsilon: f64) -> Option<usize> {
    trace
        .best_fitness_per_iteration
        .iter()
        .position(|&f| f <= epsilon)
}

/// Aggregates traces of one experiment; input order does not matter.
pub fn aggregate(spec: &ExperimentSpec, mut traces: Vec<RunTrace>) -> AggregateResult {
    assert!(!traces.is_empty(), "nothing to aggregate");
    let run_index = |seed: u64| seed.wrapping_sub(spec.base_seed);
    traces.sort_by_key(|t| run_index(t.seed));

    let n = traces.len() as f64;
    let len = traces[0].best_fitness_per_iteration.len();
    let mean_trace: Vec<f64> = (0..len)
        .map(|k| traces.iter().map(|t| t.best_fitness_per_iteration[k]).sum::<f64>() / n)
        .collect();

    let snapshots = spec
        .snapshot_iterations
        .iter()
        .map(|&iteration| {
            let values: Vec<f64> = traces
                .iter()
                .map(|t| t.best_fitness_per_iteration[iteration])
                .collect();
            let mean = mean_trace[iteration];
            let std = if values.len() > 1 {
                (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
            } else {
                0.0
            };
            SnapshotStats {
                iteration,
                mean,
                std,
                min: values.iter().copied().fold(f64::INFINITY, f64::min),
                max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect();

    let iterations_to_threshold: Vec<Option<usize>> = traces
        .iter()
        .map(|t| iterations_to_threshold(t, spec.epsilon))
        .collect();
    let reached: Vec<usize> = iterations_to_threshold.iter().flatten().copied().collect();
    let mean_iterations_to_threshold =
        (!reached.is_empty()).then(|| reached.iter().sum::<usize>() as f64 / reached.len() as f64);

    AggregateResult {
        objective_name: spec.objective_name.clone(),
        n_dims: spec.n_dims,
        variant: spec.variant,
        epsilon: spec.epsilon,
        seeds: traces.iter().map(|t| t.seed).collect(),
        final_best: traces.iter().map(RunTrace::final_best).collect(),
        mean_trace,
        snapshots,
        iterations_to_threshold,
        mean_iterations_to_threshold,
    }
}

/// Runs every repetition of `spec` and aggregates them.
pub fn run_repeated(spec: &ExperimentSpec, parallelism: Parallelism) -> Result<AggregateResult> {
    run_batch(std::slice::from_ref(spec), parallelism).map(|mut v| v.remove(0))
}

/// Runs several experiments, sharing one pool across all of their repetitions.
///
/// The first failing run (in experiment, then run-index order) is reported
/// with its seed.
pub fn run_batch(specs: &[ExperimentSpec], parallelism: Parallelism) -> Result<Vec<AggregateResult>> {
    let objectives = specs
        .iter()
        .map(|s| s.validate().and_then(|_| s.objective()))
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, u64)> = specs
        .iter()
        .enumerate()
        .flat_map(|(e, s)| (0..s.repetitions).map(move |r| (e, s.run_seed(r))))
        .collect();
    let run = |&(e, seed): &(usize, u64)| {
        run_with_objective(&specs[e], &objectives[e], seed).map_err(|source| SwarmError::Run {
            seed,
            source: Box::new(source),
        })
    };
    let results: Vec<Result<RunTrace>> = match parallelism {
        Parallelism::Serial | Parallelism::Threads(0 | 1) => jobs.iter().map(run).collect(),
        Parallelism::Threads(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| SwarmError::Config(format!("cannot build thread pool: {e}")))?;
            pool.install(|| jobs.par_iter().map(run).collect())
        }
    };

    let mut per_spec: Vec<Vec<RunTrace>> = vec![Vec::new(); specs.len()];
    for ((e, _), result) in jobs.iter().zip(results) {
        per_spec[*e].push(result?);
    }
    Ok(specs
        .iter()
        .zip(per_spec)
        .map(|(spec, traces)| aggregate(spec, traces))
        .collect())
}

/// Results of several variants on the same objective and swarm.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    pub objective_name: String,
    pub n_dims: usize,
    pub snapshot_iterations: Vec<usize>,
    /// Sorted by the mean at the last snapshot, best first.
    pub rows: Vec<AggregateResult>,
}

impl ComparisonTable {
    pub fn row(&self, variant: crate::variants::VariantKind) -> Option<&AggregateResult> {
        self.rows.iter().find(|r| r.variant.kind == variant)
    }
}

pub fn compare_variants(specs: &[ExperimentSpec], parallelism: Parallelism) -> Result<ComparisonTable> {
    let first = specs
        .first()
        .ok_or_else(|| SwarmError::Config("no experiments to compare".into()))?;
    for s in &specs[1..] {
        if s.objective_name != first.objective_name
            || s.n_dims != first.n_dims
            || s.swarm != first.swarm
            || s.snapshot_iterations != first.snapshot_iterations
        {
            return Err(SwarmError::Config(format!(
                "cannot compare {} on {}-{} with {} on {}-{}: objective, swarm and snapshots must match",
                s.variant.kind, s.objective_name, s.n_dims, first.variant.kind, first.objective_name, first.n_dims
            )));
        }
    }
    let rows = run_batch(specs, parallelism)?;
    Ok(build_table(first, rows))
}

/// Orders already-computed aggregates into a comparison table.
pub fn build_table(template: &ExperimentSpec, mut rows: Vec<AggregateResult>) -> ComparisonTable {
    let key = |r: &AggregateResult| r.snapshots.last().map_or(r.mean_trace[r.mean_trace.len() - 1], |s| s.mean);
    rows.sort_by(|a, b| key(a).total_cmp(&key(b)));
    ComparisonTable {
        objective_name: template.objective_name.clone(),
        n_dims: template.n_dims,
        snapshot_iterations: template.snapshot_iterations.clone(),
        rows,
    }
}
