//! Benchmark objectives: Rosenbrock, Rastrigin and Griewank.
//!
//! All three are minimization problems with global minimum value zero.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Result, SwarmError};

/// Anything a swarm can minimize.
pub trait Objective: Sync {
    fn name(&self) -> &str;
    fn n_dims(&self) -> usize;
    fn evaluate(&self, x: &[f64]) -> f64;
}

/// Standard Rosenbrock: `sum_{i<n} 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2`.
///
/// Minimum 0 at `(1, ..., 1)`. Slices shorter than two yield 0.
pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let (xi, xn) = (w[0], w[1]);
            100.0 * (xn - xi * xi).powi(2) + (1.0 - xi).powi(2)
        })
        .sum()
}

/// Rosenbrock with the exponent on the leading coordinate:
/// `sum_{i<n} 100 (x_{i+1}^2 - x_i)^2 + (1 - x_i)^2`. Also 0 at all-ones.
pub fn rosenbrock_as_printed(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let (xi, xn) = (w[0], w[1]);
            100.0 * (xn * xn - xi).powi(2) + (1.0 - xi).powi(2)
        })
        .sum()
}

/// `sum x_i^2 - 10 cos(2 pi x_i) + 10`, minimum 0 at the origin.
pub fn rastrigin(x: &[f64]) -> f64 {
    x.iter()
        .map(|&xi| xi * xi - 10.0 * (2.0 * PI * xi).cos() + 10.0)
        .sum()
}

/// `sum x_i^2 / 4000 - prod cos(x_i / sqrt(i)) + 1` with 1-based `i`.
pub fn griewank(x: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut prod = 1.0;
    for (i, &xi) in x.iter().enumerate() {
        sum += xi * xi / 4000.0;
        prod *= (xi / ((i + 1) as f64).sqrt()).cos();
    }
    sum - prod + 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchmarkKind {
    Griewank,
    Rastrigin,
    Rosenbrock,
    RosenbrockAsPrinted,
}

impl BenchmarkKind {
    pub const ALL: [BenchmarkKind; 4] = [
        BenchmarkKind::Griewank,
        BenchmarkKind::Rastrigin,
        BenchmarkKind::Rosenbrock,
        BenchmarkKind::RosenbrockAsPrinted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchmarkKind::Griewank => "griewank",
            BenchmarkKind::Rastrigin => "rastrigin",
            BenchmarkKind::Rosenbrock => "rosenbrock",
            BenchmarkKind::RosenbrockAsPrinted => "rosenbrock-as-printed",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| SwarmError::UnknownObjective {
                name: name.to_string(),
                valid: Self::ALL.iter().map(|k| k.name()).collect(),
            })
    }

    fn min_dims(self) -> usize {
        match self {
            BenchmarkKind::Rosenbrock | BenchmarkKind::RosenbrockAsPrinted => 2,
            _ => 1,
        }
    }

    fn optimizer_coordinate(self) -> f64 {
        match self {
            BenchmarkKind::Rosenbrock | BenchmarkKind::RosenbrockAsPrinted => 1.0,
            _ => 0.0,
        }
    }
}

impl fmt::Display for BenchmarkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A benchmark bound to a dimension, with its known optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct Benchmark {
    kind: BenchmarkKind,
    n_dims: usize,
}

impl Benchmark {
    pub fn new(kind: BenchmarkKind, n_dims: usize) -> Result<Self> {
        let min = kind.min_dims();
        if n_dims < min {
            return Err(SwarmError::Dimension {
                function: kind.name(),
                min,
                got: n_dims,
            });
        }
        Ok(Self { kind, n_dims })
    }

    pub fn kind(&self) -> BenchmarkKind {
        self.kind
    }

    pub fn known_optimum_value(&self) -> f64 {
        0.0
    }

    pub fn known_optimizer(&self) -> Vec<f64> {
        vec![self.kind.optimizer_coordinate(); self.n_dims]
    }
}

impl Objective for Benchmark {
    fn name(&self) -> &str {
        self.kind.name()
    }

    fn n_dims(&self) -> usize {
        self.n_dims
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.n_dims);
        match self.kind {
            BenchmarkKind::Griewank => griewank(x),
            BenchmarkKind::Rastrigin => rastrigin(x),
            BenchmarkKind::Rosenbrock => rosenbrock(x),
            BenchmarkKind::RosenbrockAsPrinted => rosenbrock_as_printed(x),
        }
    }
}

/// Looks up a benchmark by its registry name.
pub fn lookup(name: &str, n_dims: usize) -> Result<Benchmark> {
    Benchmark::new(BenchmarkKind::from_name(name)?, n_dims)
}
