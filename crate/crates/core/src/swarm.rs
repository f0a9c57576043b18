//! Swarm state and the shared update kernels.
//!
//! A step is synchronous: every particle is evaluated, then all bests are
//! updated, then all particles move. Kernels here are the building blocks the
//! variant steppers compose.

use crate::benchmarks::Objective;
use crate::error::{Result, SwarmError};
use crate::rng::UniformSource;

/// Search box, applied uniformly to all dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl Bounds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        let b = Self { lower, upper };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lower.is_finite() && self.upper.is_finite()) {
            return Err(SwarmError::Config(format!(
                "bounds must be finite, got [{}, {}]",
                self.lower, self.upper
            )));
        }
        if self.lower > self.upper {
            return Err(SwarmError::Config(format!(
                "lower bound {} exceeds upper bound {}",
                self.lower, self.upper
            )));
        }
        Ok(())
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// Maps a uniform draw on `[0, 1)` into the box.
    #[inline]
    pub fn sample(&self, u: f64) -> f64 {
        if self.lower == self.upper {
            self.lower
        } else {
            self.lower + u * self.width()
        }
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            lower: -100.0,
            upper: 100.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryPolicy {
    /// Particles may leave the box.
    #[default]
    None,
    /// Coordinates are clipped to the box and the matching velocity component zeroed.
    Clamp,
}

impl BoundaryPolicy {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryPolicy::None => "none",
            BoundaryPolicy::Clamp => "clamp",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "none" => Ok(BoundaryPolicy::None),
            "clamp" => Ok(BoundaryPolicy::Clamp),
            other => Err(SwarmError::Config(format!(
                "unknown boundary policy {other:?}; expected none or clamp"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwarmConfig {
    pub n_particles: usize,
    pub n_dims: usize,
    pub it_max: usize,
    pub w_max: f64,
    pub w_min: f64,
    pub c1: f64,
    pub c2: f64,
    pub bounds: Bounds,
    pub boundary_policy: BoundaryPolicy,
}

impl SwarmConfig {
    /// 40 particles, 2000 iterations, w from 0.9 down to 0.1, c1 = c2 = 1.4962,
    /// box [-100, 100], no boundary handling.
    pub fn default_for(n_dims: usize) -> Self {
        Self {
            n_particles: 40,
            n_dims,
            it_max: 2000,
            w_max: 0.9,
            w_min: 0.1,
            c1: 1.4962,
            c2: 1.4962,
            bounds: Bounds::default(),
            boundary_policy: BoundaryPolicy::None,
        }
    }

    /// `it_max == 0` is accepted so a run can consist of initialization only.
    pub fn validate(&self) -> Result<()> {
        self.bounds.validate()?;
        if self.n_particles == 0 {
            return Err(SwarmError::Config("n_particles must be at least 1".into()));
        }
        if self.n_dims == 0 {
            return Err(SwarmError::Config("n_dims must be at least 1".into()));
        }
        if !(self.w_min <= self.w_max) {
            return Err(SwarmError::Config(format!(
                "w_min {} exceeds w_max {}",
                self.w_min, self.w_max
            )));
        }
        for (name, v) in [("w_max", self.w_max), ("w_min", self.w_min), ("c1", self.c1), ("c2", self.c2)] {
            if !v.is_finite() {
                return Err(SwarmError::Config(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwarmState {
    pub positions: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
    pub personal_best_pos: Vec<Vec<f64>>,
    pub personal_best_fit: Vec<f64>,
    pub global_best_pos: Vec<f64>,
    pub global_best_fit: f64,
    /// Number of completed steps.
    pub iteration: usize,
    /// Fitness of `positions`, as evaluated at the end of the last step.
    pub fitness: Vec<f64>,
}

impl SwarmState {
    pub fn n_particles(&self) -> usize {
        self.positions.len()
    }

    pub fn n_dims(&self) -> usize {
        self.global_best_pos.len()
    }

    /// Index of the particle with the lowest current fitness (lowest index on ties).
    pub fn best_current_index(&self) -> usize {
        argmin(&self.fitness)
    }

    pub fn is_finite(&self) -> bool {
        let rows = |m: &Vec<Vec<f64>>| m.iter().flatten().all(|v| v.is_finite());
        rows(&self.positions)
            && rows(&self.velocities)
            && rows(&self.personal_best_pos)
            && self.personal_best_fit.iter().all(|v| v.is_finite())
            && self.global_best_pos.iter().all(|v| v.is_finite())
            && self.global_best_fit.is_finite()
            && self.fitness.iter().all(|v| v.is_finite())
    }
}

/// First index of the minimum; ties go to the lowest index.
pub(crate) fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v < values[best] {
            best = i;
        }
    }
    best
}

/// Evaluates every particle; non-finite values abort with the particle index.
pub fn evaluate_all<O: Objective + ?Sized>(
    objective: &O,
    positions: &[Vec<f64>],
    iteration: usize,
) -> Result<Vec<f64>> {
    positions
        .iter()
        .enumerate()
        .map(|(particle, x)| {
            let value = objective.evaluate(x);
            if value.is_finite() {
                Ok(value)
            } else {
                Err(SwarmError::Evaluation {
                    particle,
                    iteration,
                    value,
                })
            }
        })
        .collect()
}

/// Uniform positions in the box, zero velocities, bests from the first evaluation.
pub fn init_swarm<O, R>(config: &SwarmConfig, objective: &O, rng: &mut R) -> Result<SwarmState>
where
    O: Objective + ?Sized,
    R: UniformSource + ?Sized,
{
    config.validate()?;
    if objective.n_dims() != config.n_dims {
        return Err(SwarmError::Config(format!(
            "objective {} has {} dimensions but the swarm has {}",
            objective.name(),
            objective.n_dims(),
            config.n_dims
        )));
    }
    let positions: Vec<Vec<f64>> = (0..config.n_particles)
        .map(|_| {
            (0..config.n_dims)
                .map(|_| config.bounds.sample(rng.next_uniform()))
                .collect()
        })
        .collect();
    let fitness = evaluate_all(objective, &positions, 0)?;
    let best = argmin(&fitness);
    Ok(SwarmState {
        velocities: vec![vec![0.0; config.n_dims]; config.n_particles],
        personal_best_pos: positions.clone(),
        personal_best_fit: fitness.clone(),
        global_best_pos: positions[best].clone(),
        global_best_fit: fitness[best],
        iteration: 0,
        positions,
        fitness,
    })
}

/// Linearly decreasing inertia weight: `w_max - it (w_max - w_min) / it_max`.
pub fn inertia_weight(it: usize, config: &SwarmConfig) -> f64 {
    config.w_max - it as f64 * (config.w_max - config.w_min) / config.it_max as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VelocityMode {
    /// Momentum plus the pull toward the personal best; draws `r1` only.
    Cognitive,
    /// Momentum plus the pull toward the global best; draws `r2` only.
    Social,
    /// Both pulls; draws `r1` then `r2` per dimension.
    Full,
}

pub fn velocity_update<R: UniformSource + ?Sized>(
    mode: VelocityMode,
    state: &SwarmState,
    particle: usize,
    w: f64,
    config: &SwarmConfig,
    rng: &mut R,
) -> Vec<f64> {
    let x = &state.positions[particle];
    let v = &state.velocities[particle];
    let pb = &state.personal_best_pos[particle];
    let gb = &state.global_best_pos;
    (0..x.len())
        .map(|j| {
            let mut nv = w * v[j];
            if matches!(mode, VelocityMode::Cognitive | VelocityMode::Full) {
                let r1 = rng.next_uniform();
                nv += config.c1 * r1 * (pb[j] - x[j]);
            }
            if matches!(mode, VelocityMode::Social | VelocityMode::Full) {
                let r2 = rng.next_uniform();
                nv += config.c2 * r2 * (gb[j] - x[j]);
            }
            nv
        })
        .collect()
}

pub fn position_update(state: &SwarmState, particle: usize, velocity: &[f64]) -> Vec<f64> {
    assert_eq!(velocity.len(), state.n_dims(), "velocity length mismatch");
    state.positions[particle]
        .iter()
        .zip(velocity)
        .map(|(x, v)| x + v)
        .collect()
}

pub fn apply_boundary(
    policy: BoundaryPolicy,
    bounds: &Bounds,
    position: &mut [f64],
    velocity: &mut [f64],
) {
    if policy == BoundaryPolicy::None {
        return;
    }
    for (x, v) in position.iter_mut().zip(velocity.iter_mut()) {
        if *x < bounds.lower {
            *x = bounds.lower;
            *v = 0.0;
        } else if *x > bounds.upper {
            *x = bounds.upper;
            *v = 0.0;
        }
    }
}

/// Records `fitness` as the current fitness and updates personal and global bests.
///
/// Strict improvement is required; on ties the incumbent is kept, and among
/// several particles tying for a new global best the lowest index wins.
pub fn update_bests(state: &mut SwarmState, fitness: Vec<f64>) -> Result<()> {
    if let Some((particle, &value)) = fitness.iter().enumerate().find(|(_, f)| !f.is_finite()) {
        return Err(SwarmError::Evaluation {
            particle,
            iteration: state.iteration,
            value,
        });
    }
    for (i, &f) in fitness.iter().enumerate() {
        if f < state.personal_best_fit[i] {
            state.personal_best_fit[i] = f;
            state.personal_best_pos[i].clone_from(&state.positions[i]);
        }
    }
    let best = argmin(&fitness);
    if fitness[best] < state.global_best_fit {
        state.global_best_fit = fitness[best];
        state.global_best_pos.clone_from(&state.positions[best]);
    }
    state.fitness = fitness;
    Ok(())
}

/// Moves one particle with the given velocity mode and applies the boundary policy.
pub(crate) fn move_particle<R: UniformSource + ?Sized>(
    mode: VelocityMode,
    state: &mut SwarmState,
    particle: usize,
    w: f64,
    config: &SwarmConfig,
    rng: &mut R,
) {
    let mut v = velocity_update(mode, state, particle, w, config, rng);
    let mut x = position_update(state, particle, &v);
    apply_boundary(config.boundary_policy, &config.bounds, &mut x, &mut v);
    state.positions[particle] = x;
    state.velocities[particle] = v;
}

/// Evaluates the moved swarm, updates bests and advances the iteration counter.
pub(crate) fn finish_step<O: Objective + ?Sized>(state: &mut SwarmState, objective: &O) -> Result<()> {
    let fitness = evaluate_all(objective, &state.positions, state.iteration + 1)?;
    update_bests(state, fitness)?;
    state.iteration += 1;
    Ok(())
}
