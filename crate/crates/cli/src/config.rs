//! Command-line parsing and resolution of defaults.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

use swarmlab::benchmarks::BenchmarkKind;
use swarmlab::experiments::{default_epsilon, default_snapshots};
use swarmlab::{BoundaryPolicy, Bounds, ExperimentSpec, SwarmConfig, VariantKind, VariantSpec};

const ALL_OBJECTIVES: [&str; 3] = ["griewank", "rastrigin", "rosenbrock"];

#[derive(Debug, Parser)]
#[command(name = "swarmlab", version, about = "PSO variant benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one or more variants (default: tpme on griewank-30).
    Run(ExperimentArgs),
    /// Compare variants on one objective (default: all five on griewank-30).
    Compare(ExperimentArgs),
    /// Full grid: five variants x three objectives x 30/60/90 dimensions.
    PaperRepro(ExperimentArgs),
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// Objective name(s), comma separated.
    #[arg(long, value_delimiter = ',')]
    objective: Vec<String>,
    /// Dimension(s), comma separated.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(1..))]
    dims: Vec<u64>,
    /// Variant name(s): ldw, epsom, psom, mpso, tpme.
    #[arg(long, value_delimiter = ',')]
    variants: Vec<String>,
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..))]
    particles: u64,
    #[arg(long, default_value_t = 2000, value_parser = clap::value_parser!(u64).range(1..))]
    iterations: u64,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    repetitions: u64,
    /// Base seed; run r uses seed + r.
    #[arg(long, env = "SWARMLAB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "results")]
    out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (default: available parallelism).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Snapshot iterations, comma separated (default: 10 and the final iteration).
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(1..))]
    snapshots: Vec<u64>,
    /// Iterations-to-threshold epsilon (default: 1e-15 griewank, 1e-12 otherwise).
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = VariantSpec::DEFAULT_MU)]
    mu: f64,
    #[arg(long, default_value_t = VariantSpec::DEFAULT_P)]
    p: f64,
    #[arg(long, default_value_t = VariantSpec::DEFAULT_NE as u64, value_parser = clap::value_parser!(u64).range(1..))]
    ne: u64,
    #[arg(long, default_value_t = VariantSpec::DEFAULT_A)]
    a: f64,
    #[arg(long, default_value_t = 0.9)]
    wmax: f64,
    #[arg(long, default_value_t = 0.1)]
    wmin: f64,
    #[arg(long, default_value_t = 1.4962)]
    c1: f64,
    #[arg(long, default_value_t = 1.4962)]
    c2: f64,
    #[arg(long, default_value_t = -100.0, allow_negative_numbers = true)]
    lower: f64,
    #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
    upper: f64,
    #[arg(long, value_enum, default_value_t = Boundary::None)]
    boundary: Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SubcommandKind {
    Run,
    Compare,
    PaperRepro,
}

impl SubcommandKind {
    pub fn name(self) -> &'static str {
        match self {
            SubcommandKind::Run => "run",
            SubcommandKind::Compare => "compare",
            SubcommandKind::PaperRepro => "paper-repro",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Boundary {
    None,
    Clamp,
}

/// Fully resolved command line.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub subcommand: SubcommandKind,
    pub objectives: Vec<String>,
    pub dims: Vec<usize>,
    pub variants: Vec<VariantKind>,
    pub particles: usize,
    pub iterations: usize,
    pub repetitions: usize,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub format: Format,
    pub jobs: usize,
    pub snapshots: Vec<usize>,
    /// `None` selects the per-objective default.
    pub epsilon: Option<f64>,
    pub mu: f64,
    pub p: f64,
    pub ne: usize,
    pub a: f64,
    pub w_max: f64,
    pub w_min: f64,
    pub c1: f64,
    pub c2: f64,
    pub lower: f64,
    pub upper: f64,
    pub boundary: BoundaryPolicy,
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> clap::Error {
    Cli::command().error(ErrorKind::ValueValidation, format!("invalid value for '--{flag}': {msg}"))
}

/// Parses an argument vector (program name first). Errors are usage errors.
pub fn parse_cli<I, T>(args: I) -> Result<CliConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = Cli::command().try_get_matches_from(args)?;
    let cli = Cli::from_arg_matches(&matches)?;
    let (subcommand, args) = match cli.command {
        Command::Run(a) => (SubcommandKind::Run, a),
        Command::Compare(a) => (SubcommandKind::Compare, a),
        Command::PaperRepro(a) => (SubcommandKind::PaperRepro, a),
    };
    resolve(subcommand, args)
}

fn resolve(subcommand: SubcommandKind, args: ExperimentArgs) -> Result<CliConfig, clap::Error> {
    let objectives = if args.objective.is_empty() {
        match subcommand {
            SubcommandKind::PaperRepro => ALL_OBJECTIVES.iter().map(|s| s.to_string()).collect(),
            _ => vec!["griewank".to_string()],
        }
    } else {
        args.objective
    };
    for o in &objectives {
        BenchmarkKind::from_name(o).map_err(|e| usage("objective", e))?;
    }

    let dims = if args.dims.is_empty() {
        match subcommand {
            SubcommandKind::PaperRepro => vec![30, 60, 90],
            _ => vec![30],
        }
    } else {
        args.dims.iter().map(|&d| d as usize).collect()
    };
    for o in &objectives {
        for &d in &dims {
            swarmlab::benchmarks::lookup(o, d).map_err(|e| usage("dims", e))?;
        }
    }

    let variants = if args.variants.is_empty() {
        match subcommand {
            SubcommandKind::Run => vec![VariantKind::Tpme],
            _ => VariantKind::ALL.to_vec(),
        }
    } else {
        args.variants
            .iter()
            .map(|v| VariantKind::from_name(v).map_err(|e| usage("variants", e)))
            .collect::<Result<_, _>>()?
    };

    let iterations = args.iterations as usize;
    let snapshots = if args.snapshots.is_empty() {
        default_snapshots(iterations)
    } else {
        let s: Vec<usize> = args.snapshots.iter().map(|&s| s as usize).collect();
        if let Some(bad) = s.iter().find(|&&s| s > iterations) {
            return Err(usage("snapshots", format!("{bad} exceeds --iterations {iterations}")));
        }
        s
    };

    if let Some(eps) = args.epsilon {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(usage("epsilon", format!("{eps} is not a positive number")));
        }
    }
    if !(args.mu > 0.0 && args.mu.is_finite()) {
        return Err(usage("mu", format!("{} is not positive", args.mu)));
    }
    if !(args.p > 0.0 && args.p.is_finite()) {
        return Err(usage("p", format!("{} is not positive", args.p)));
    }
    if !(args.a > 0.0 && args.a <= 1.0) {
        return Err(usage("a", format!("{} is outside (0, 1]", args.a)));
    }
    for (flag, v) in [("wmax", args.wmax), ("wmin", args.wmin), ("c1", args.c1), ("c2", args.c2)] {
        if !v.is_finite() {
            return Err(usage(flag, format!("{v} is not finite")));
        }
    }
    if args.wmin > args.wmax {
        return Err(usage("wmin", format!("{} exceeds --wmax {}", args.wmin, args.wmax)));
    }
    Bounds::new(args.lower, args.upper).map_err(|e| usage("lower", e))?;

    let jobs = match args.jobs {
        Some(j) => j as usize,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };

    Ok(CliConfig {
        subcommand,
        objectives,
        dims,
        variants,
        particles: args.particles as usize,
        iterations,
        repetitions: args.repetitions as usize,
        seed: args.seed,
        out_dir: args.out_dir,
        format: args.format,
        jobs,
        snapshots,
        epsilon: args.epsilon,
        mu: args.mu,
        p: args.p,
        ne: args.ne as usize,
        a: args.a,
        w_max: args.wmax,
        w_min: args.wmin,
        c1: args.c1,
        c2: args.c2,
        lower: args.lower,
        upper: args.upper,
        boundary: match args.boundary {
            Boundary::None => BoundaryPolicy::None,
            Boundary::Clamp => BoundaryPolicy::Clamp,
        },
    })
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl CliConfig {
    /// Every setting as explicit flags; `parse_cli` on the result gives back `self`.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec!["swarmlab".to_string(), self.subcommand.name().to_string()];
        let mut flag = |name: &str, value: String| {
            args.push(format!("--{name}"));
            args.push(value);
        };
        flag("objective", self.objectives.join(","));
        flag("dims", join(&self.dims));
        flag("variants", self.variants.iter().map(|v| v.name()).collect::<Vec<_>>().join(","));
        flag("particles", self.particles.to_string());
        flag("iterations", self.iterations.to_string());
        flag("repetitions", self.repetitions.to_string());
        flag("seed", self.seed.to_string());
        flag("out-dir", self.out_dir.display().to_string());
        flag("format", self.format.name().to_string());
        flag("jobs", self.jobs.to_string());
        if !self.snapshots.is_empty() {
            flag("snapshots", join(&self.snapshots));
        }
        if let Some(eps) = self.epsilon {
            flag("epsilon", format!("{eps:?}"));
        }
        flag("mu", format!("{:?}", self.mu));
        flag("p", format!("{:?}", self.p));
        flag("ne", self.ne.to_string());
        flag("a", format!("{:?}", self.a));
        flag("wmax", format!("{:?}", self.w_max));
        flag("wmin", format!("{:?}", self.w_min));
        flag("c1", format!("{:?}", self.c1));
        flag("c2", format!("{:?}", self.c2));
        flag("lower", format!("{:?}", self.lower));
        flag("upper", format!("{:?}", self.upper));
        flag("boundary", self.boundary.name().to_string());
        args
    }

    pub fn variant_spec(&self, kind: VariantKind) -> VariantSpec {
        VariantSpec {
            kind,
            mpso_mu: self.mu,
            tpme_p: self.p,
            tpme_ne: self.ne,
            tpme_a: self.a,
        }
    }

    pub fn swarm_config(&self, n_dims: usize) -> SwarmConfig {
        SwarmConfig {
            n_particles: self.particles,
            n_dims,
            it_max: self.iterations,
            w_max: self.w_max,
            w_min: self.w_min,
            c1: self.c1,
            c2: self.c2,
            bounds: Bounds {
                lower: self.lower,
                upper: self.upper,
            },
            boundary_policy: self.boundary,
        }
    }

    pub fn epsilon_for(&self, objective: &str) -> f64 {
        self.epsilon.unwrap_or_else(|| default_epsilon(objective))
    }

    /// Cartesian expansion, ordered by objective, then dimension, then variant.
    pub fn experiment_specs(&self) -> Vec<ExperimentSpec> {
        let mut specs = Vec::new();
        for objective in &self.objectives {
            for &n in &self.dims {
                for &kind in &self.variants {
                    let mut spec = ExperimentSpec::new(objective.clone(), self.variant_spec(kind), self.swarm_config(n))
                        .with_repetitions(self.repetitions)
                        .with_seed(self.seed)
                        .with_snapshots(self.snapshots.clone());
                    spec.epsilon = self.epsilon_for(objective);
                    specs.push(spec);
                }
            }
        }
        specs
    }
}
