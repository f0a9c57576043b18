//! Particle swarm optimization with classification, elitism and mutation.
//!
//! The crate is organised around a single swarm representation ([`SwarmState`])
//! and a family of steppers that advance it by one synchronous iteration:
//!
//! * `ldw`   - linearly decreasing inertia weight PSO,
//! * `epsom` - elite PSO with multiplicative global-best mutation,
//! * `psom`  - PSO with mean-based particle classification,
//! * `mpso`  - PSO with threshold-triggered position mutation,
//! * `tpme`  - PSO with band classification, elitism and targeted position mutation.
//!
//! All objectives are minimized. Runs are reproducible from a 64-bit seed: every
//! random draw comes from a [`RandomStream`] consumed in a fixed order (particles,
//! then dimensions, then `r1`, `r2` and any mutation draw).
//!
//! ```
//! use swarmlab::{benchmarks, experiments::run_single, ExperimentSpec, SwarmConfig, VariantSpec};
//!
//! let mut swarm = SwarmConfig::default_for(10);
//! swarm.it_max = 50;
//! let spec = ExperimentSpec::new("griewank", VariantSpec::tpme(), swarm);
//! let trace = run_single(&spec, 7).unwrap();
//! assert_eq!(trace.best_fitness_per_iteration.len(), 51);
//! # let _ = benchmarks::lookup("rastrigin", 10).unwrap();
//! ```

pub mod benchmarks;
pub mod error;
pub mod experiments;
pub mod rng;
pub mod swarm;
pub mod variants;

pub use benchmarks::{Benchmark, Objective};
pub use error::{Result, SwarmError};
pub use experiments::{AggregateResult, ExperimentSpec, Parallelism, RunTrace};
pub use rng::{ConstantStream, RandomStream, ReplayStream, UniformSource};
pub use swarm::{BoundaryPolicy, Bounds, SwarmConfig, SwarmState, VelocityMode};
pub use variants::{ClassLabel, VariantKind, VariantSpec};
