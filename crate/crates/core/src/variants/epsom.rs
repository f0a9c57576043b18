use crate::benchmarks::Objective;
use crate::error::Result;
use crate::rng::UniformSource;
use crate::swarm::{SwarmConfig, SwarmState};

use super::step_ldw;

/// Multiplicative global-best mutation `G_b (1 + 0.5 eta)`, one `eta` per dimension.
pub fn mutate_gbest_epsom<R: UniformSource + ?Sized>(gbest: &[f64], rng: &mut R) -> Vec<f64> {
    gbest
        .iter()
        .map(|&g| g * (1.0 + 0.5 * rng.next_uniform()))
        .collect()
}

/// An LDW iteration followed by a greedy global-best mutation.
///
/// The mutated point replaces the global best only when strictly better, so
/// `global_best_fit` may drop below every personal best.
pub fn step_epsom<O, R>(state: &mut SwarmState, config: &SwarmConfig, objective: &O, rng: &mut R) -> Result<()>
where
    O: Objective + ?Sized,
    R: UniformSource + ?Sized,
{
    step_ldw(state, config, objective, rng)?;
    let candidate = mutate_gbest_epsom(&state.global_best_pos, rng);
    let f = objective.evaluate(&candidate);
    // NaN compares false and is rejected with the other non-improvements.
    if f < state.global_best_fit {
        state.global_best_fit = f;
        state.global_best_pos = candidate;
    }
    Ok(())
}
