use crate::benchmarks::Objective;
use crate::error::{Result, SwarmError};
use crate::rng::UniformSource;
use crate::swarm::{
    apply_boundary, finish_step, inertia_weight, move_particle, Bounds, SwarmConfig, SwarmState, VelocityMode,
};

use super::VariantSpec;

/// Identifier of the position mutation rule, echoed in run metadata.
///
/// The mutation activation and threshold schedule are fixed; the displacement
/// itself is this crate's choice: each coordinate moves by
/// `TH * (2 eta - 1) * (upper - lower) / 2`.
pub const MPSO_MUTATION_RULE: &str = "threshold-scaled-uniform-offset";

/// Mutation threshold `(1 - (i - 1) / (it_max - 1))^(1 / mu)` for 1-based iteration `i`.
pub fn mpso_threshold(i: usize, it_max: usize, mu: f64) -> Result<f64> {
    if it_max < 2 {
        return Err(SwarmError::Domain(format!(
            "mutation threshold needs it_max >= 2, got {it_max}"
        )));
    }
    if i == 0 || i > it_max {
        return Err(SwarmError::Domain(format!(
            "iteration {i} outside 1..={it_max}"
        )));
    }
    if !(mu > 0.0) {
        return Err(SwarmError::Domain(format!("mutation factor must be positive, got {mu}")));
    }
    let base = 1.0 - (i - 1) as f64 / (it_max - 1) as f64;
    Ok(base.powf(1.0 / mu))
}

/// Displaces every coordinate uniformly within `±threshold * width / 2`.
pub fn mutate_position_mpso<R: UniformSource + ?Sized>(
    position: &[f64],
    threshold: f64,
    bounds: &Bounds,
    rng: &mut R,
) -> Vec<f64> {
    let half = threshold * bounds.width() / 2.0;
    position
        .iter()
        .map(|&x| x + half * (2.0 * rng.next_uniform() - 1.0))
        .collect()
}

/// One M-PSO iteration.
///
/// All particles first move exactly as in LDW-PSO (same draws). Then, per
/// particle, one trigger draw decides whether the position is mutated, which
/// consumes one further draw per dimension.
pub fn step_mpso<O, R>(
    state: &mut SwarmState,
    config: &SwarmConfig,
    spec: &VariantSpec,
    objective: &O,
    rng: &mut R,
) -> Result<()>
where
    O: Objective + ?Sized,
    R: UniformSource + ?Sized,
{
    let threshold = mpso_threshold(state.iteration + 1, config.it_max, spec.mpso_mu)?;
    let w = inertia_weight(state.iteration, config);
    for i in 0..state.n_particles() {
        move_particle(VelocityMode::Full, state, i, w, config, rng);
    }
    for i in 0..state.n_particles() {
        if rng.next_uniform() < threshold {
            let mut x = mutate_position_mpso(&state.positions[i], threshold, &config.bounds, rng);
            apply_boundary(config.boundary_policy, &config.bounds, &mut x, &mut state.velocities[i]);
            state.positions[i] = x;
        }
    }
    finish_step(state, objective)
}
