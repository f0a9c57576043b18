use crate::benchmarks::Objective;
use crate::error::Result;
use crate::rng::UniformSource;
use crate::swarm::{finish_step, inertia_weight, move_particle, SwarmConfig, SwarmState};

use super::{mean, ClassLabel};

/// Fitness landmarks for PSO-M classification (minimization orientation).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsomThresholds {
    pub aver: f64,
    /// Midpoint between the mean and the worst fitness.
    pub aver1: f64,
    /// Midpoint between the best fitness and the mean.
    pub aver2: f64,
    pub f_best: f64,
    pub f_worst: f64,
}

/// Splits the swarm at the midpoints between the mean and the extreme fitness values.
///
/// `fitness <= aver2` is good, `fitness >= aver1` is bad, anything between is
/// fair. When all fitness values coincide both tests hold and good wins.
pub fn classify_psom(fitness: &[f64]) -> (PsomThresholds, Vec<ClassLabel>) {
    assert!(!fitness.is_empty(), "cannot classify an empty swarm");
    let aver = mean(fitness);
    let f_best = fitness.iter().copied().fold(f64::INFINITY, f64::min);
    let f_worst = fitness.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let t = PsomThresholds {
        aver,
        aver1: (f_worst + aver) / 2.0,
        aver2: (f_best + aver) / 2.0,
        f_best,
        f_worst,
    };
    let labels = fitness
        .iter()
        .map(|&f| {
            if f <= t.aver2 {
                ClassLabel::Good
            } else if f >= t.aver1 {
                ClassLabel::Bad
            } else {
                ClassLabel::Fair
            }
        })
        .collect();
    (t, labels)
}

/// Moves every particle with the velocity model of its label, then evaluates.
///
/// Good particles use the cognitive model, bad ones the social model, fair ones
/// the full update.
pub fn step_classified<O, R>(
    state: &mut SwarmState,
    config: &SwarmConfig,
    objective: &O,
    rng: &mut R,
    labels: &[ClassLabel],
) -> Result<()>
where
    O: Objective + ?Sized,
    R: UniformSource + ?Sized,
{
    assert_eq!(labels.len(), state.n_particles(), "one label per particle");
    let w = inertia_weight(state.iteration, config);
    for (i, label) in labels.iter().enumerate() {
        move_particle(label.velocity_mode(), state, i, w, config, rng);
    }
    finish_step(state, objective)
}

/// One PSO-M iteration; classification runs on every iteration.
pub fn step_psom<O, R>(state: &mut SwarmState, config: &SwarmConfig, objective: &O, rng: &mut R) -> Result<()>
where
    O: Objective + ?Sized,
    R: UniformSource + ?Sized,
{
    let (_, labels) = classify_psom(&state.fitness);
    step_classified(state, config, objective, rng, &labels)
}
