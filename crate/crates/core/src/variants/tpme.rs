use crate::benchmarks::Objective;
use crate::error::Result;
use crate::rng::UniformSource;
use crate::swarm::{apply_boundary, finish_step, inertia_weight, move_particle, SwarmConfig, SwarmState};

use super::{mean, ClassLabel, VariantSpec};

/// Band classification around the mean fitness `m`.
///
/// The band is `[m - p|m|, m + p|m|]`; below it is good, above it is bad.
/// Once every particle sits inside the band all labels are fair and the
/// special updates stop on their own.
pub fn classify_tpme(fitness: &[f64], p: f64) -> Vec<ClassLabel> {
    assert!(!fitness.is_empty(), "cannot classify an empty swarm");
    let m = mean(fitness);
    let half = p * m.abs();
    let (lo, hi) = (m - half, m + half);
    fitness
        .iter()
        .map(|&f| {
            if f < lo {
                ClassLabel::Good
            } else if f > hi {
                ClassLabel::Bad
            } else {
                ClassLabel::Fair
            }
        })
        .collect()
}

/// Elite mutation multiplier `2 a eta + (1 - a)`, uniform on `[1 - a, 1 + a)`.
#[inline]
pub fn elite_multiplier(a: f64, eta: f64) -> f64 {
    2.0 * a * eta + (1.0 - a)
}

/// One PSO-TPME iteration.
///
/// Good particles follow their personal best only, fair particles use the
/// full update, and bad particles follow the global best until iteration
/// `tpme_ne`. From then on a bad particle is relocated onto the currently
/// best particle's position scaled by one [`elite_multiplier`] draw, with its
/// velocity reset to zero. The relocation consumes a single draw per particle.
pub fn step_tpme<O, R>(
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
    let labels = classify_tpme(&state.fitness, spec.tpme_p);
    let elitism = state.iteration >= spec.tpme_ne;
    let elite = elitism
        .then(|| state.positions[state.best_current_index()].clone());
    let w = inertia_weight(state.iteration, config);

    for (i, label) in labels.into_iter().enumerate() {
        match (label, &elite) {
            (ClassLabel::Bad, Some(elite)) => {
                let c = elite_multiplier(spec.tpme_a, rng.next_uniform());
                let mut x: Vec<f64> = elite.iter().map(|&e| e * c).collect();
                let mut v = vec![0.0; x.len()];
                apply_boundary(config.boundary_policy, &config.bounds, &mut x, &mut v);
                state.positions[i] = x;
                state.velocities[i] = v;
            }
            _ => move_particle(label.velocity_mode(), state, i, w, config, rng),
        }
    }
    finish_step(state, objective)
}
