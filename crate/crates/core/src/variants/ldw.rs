use crate::benchmarks::Objective;
use crate::error::Result;
use crate::rng::UniformSource;
use crate::swarm::{finish_step, inertia_weight, move_particle, SwarmConfig, SwarmState, VelocityMode};

/// One iteration of linearly decreasing inertia weight PSO.
pub fn step_ldw<O, R>(state: &mut SwarmState, config: &SwarmConfig, objective: &O, rng: &mut R) -> Result<()>
where
    O: Objective + ?Sized,
    R: UniformSource + ?Sized,
{
    let w = inertia_weight(state.iteration, config);
    for i in 0..state.n_particles() {
        move_particle(VelocityMode::Full, state, i, w, config, rng);
    }
    finish_step(state, objective)
}
