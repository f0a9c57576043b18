//! The five PSO variants behind a single stepper, [`VariantSpec::step`].
//!
//! Every stepper advances a [`SwarmState`] by exactly one synchronous
//! iteration and leaves `global_best_fit` non-increasing.

mod epsom;
mod ldw;
mod mpso;
mod psom;
mod tpme;

use std::fmt;

pub use epsom::{mutate_gbest_epsom, step_epsom};
pub use ldw::step_ldw;
pub use mpso::{mpso_threshold, mutate_position_mpso, step_mpso, MPSO_MUTATION_RULE};
pub use psom::{classify_psom, step_classified, step_psom, PsomThresholds};
pub use tpme::{classify_tpme, elite_multiplier, step_tpme};

use crate::benchmarks::Objective;
use crate::error::{Result, SwarmError};
use crate::rng::UniformSource;
use crate::swarm::{SwarmConfig, SwarmState, VelocityMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VariantKind {
    Ldw,
    Epsom,
    Psom,
    Mpso,
    Tpme,
}

impl VariantKind {
    pub const ALL: [VariantKind; 5] = [
        VariantKind::Epsom,
        VariantKind::Ldw,
        VariantKind::Psom,
        VariantKind::Mpso,
        VariantKind::Tpme,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VariantKind::Ldw => "ldw",
            VariantKind::Epsom => "epsom",
            VariantKind::Psom => "psom",
            VariantKind::Mpso => "mpso",
            VariantKind::Tpme => "tpme",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| SwarmError::UnknownVariant {
                name: name.to_string(),
                valid: Self::ALL.iter().map(|k| k.name()).collect(),
            })
    }
}

impl fmt::Display for VariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Algorithm choice plus the variant-specific parameters.
///
/// All parameters are carried regardless of `kind` so that a run's resolved
/// parameter set can be echoed in full.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariantSpec {
    pub kind: VariantKind,
    /// M-PSO mutation factor.
    pub mpso_mu: f64,
    /// TPME classification band, as a fraction of the mean fitness.
    pub tpme_p: f64,
    /// First iteration at which TPME relocates bad particles.
    pub tpme_ne: usize,
    /// TPME elite mutation half-width.
    pub tpme_a: f64,
}

impl VariantSpec {
    pub const DEFAULT_MU: f64 = 0.05;
    pub const DEFAULT_P: f64 = 0.02;
    pub const DEFAULT_NE: usize = 3;
    pub const DEFAULT_A: f64 = 0.5;

    pub fn new(kind: VariantKind) -> Self {
        Self {
            kind,
            mpso_mu: Self::DEFAULT_MU,
            tpme_p: Self::DEFAULT_P,
            tpme_ne: Self::DEFAULT_NE,
            tpme_a: Self::DEFAULT_A,
        }
    }

    pub fn ldw() -> Self {
        Self::new(VariantKind::Ldw)
    }

    pub fn epsom() -> Self {
        Self::new(VariantKind::Epsom)
    }

    pub fn psom() -> Self {
        Self::new(VariantKind::Psom)
    }

    pub fn mpso() -> Self {
        Self::new(VariantKind::Mpso)
    }

    pub fn tpme() -> Self {
        Self::new(VariantKind::Tpme)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mpso_mu > 0.0 && self.mpso_mu.is_finite()) {
            return Err(SwarmError::Config(format!("mu must be positive, got {}", self.mpso_mu)));
        }
        if !(self.tpme_p > 0.0 && self.tpme_p.is_finite()) {
            return Err(SwarmError::Config(format!("p must be positive, got {}", self.tpme_p)));
        }
        if !(self.tpme_a > 0.0 && self.tpme_a <= 1.0) {
            return Err(SwarmError::Config(format!("a must lie in (0, 1], got {}", self.tpme_a)));
        }
        if self.tpme_ne == 0 {
            return Err(SwarmError::Config("ne must be at least 1".into()));
        }
        Ok(())
    }

    /// Advances `state` by one iteration of the selected variant.
    pub fn step<O, R>(
        &self,
        state: &mut SwarmState,
        config: &SwarmConfig,
        objective: &O,
        rng: &mut R,
    ) -> Result<()>
    where
        O: Objective + ?Sized,
        R: UniformSource + ?Sized,
    {
        match self.kind {
            VariantKind::Ldw => step_ldw(state, config, objective, rng),
            VariantKind::Epsom => step_epsom(state, config, objective, rng),
            VariantKind::Psom => step_psom(state, config, objective, rng),
            VariantKind::Mpso => step_mpso(state, config, self, objective, rng),
            VariantKind::Tpme => step_tpme(state, config, self, objective, rng),
        }
    }
}

impl Default for VariantSpec {
    fn default() -> Self {
        Self::tpme()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    Good,
    Fair,
    Bad,
}

impl ClassLabel {
    /// Velocity model used for the label when no elitism applies.
    pub fn velocity_mode(self) -> VelocityMode {
        match self {
            ClassLabel::Good => VelocityMode::Cognitive,
            ClassLabel::Fair => VelocityMode::Full,
            ClassLabel::Bad => VelocityMode::Social,
        }
    }
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}
