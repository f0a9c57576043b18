//! Seeded uniform random streams.
//!
//! Every stochastic decision in a run is a single uniform draw on `[0, 1)`.
//! Consumption order within one iteration: particles in index order, and for
//! each particle dimensions in index order, with `r1` before `r2` before any
//! variant-specific draw. Steppers only draw what a branch actually uses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Source of uniform draws on `[0, 1)`.
pub trait UniformSource {
    fn next_uniform(&mut self) -> f64;
}

/// ChaCha8-backed stream; the same seed always yields the same sequence.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl UniformSource for RandomStream {
    #[inline]
    fn next_uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }
}

/// Replays a fixed list of draws, then panics when exhausted.
///
/// Used to force specific `r1`/`r2`/`eta` values in hand-checked steps.
#[derive(Debug, Clone)]
pub struct ReplayStream {
    draws: Vec<f64>,
    pos: usize,
}

impl ReplayStream {
    pub fn new(draws: impl Into<Vec<f64>>) -> Self {
        Self {
            draws: draws.into(),
            pos: 0,
        }
    }

    pub fn consumed(&self) -> usize {
        self.pos
    }
}

impl UniformSource for ReplayStream {
    fn next_uniform(&mut self) -> f64 {
        let v = *self
            .draws
            .get(self.pos)
            .unwrap_or_else(|| panic!("replay stream exhausted after {} draws", self.pos));
        self.pos += 1;
        v
    }
}

/// Returns the same value forever.
#[derive(Debug, Clone, Copy)]
pub struct ConstantStream(pub f64);

impl UniformSource for ConstantStream {
    fn next_uniform(&mut self) -> f64 {
        self.0
    }
}

/// Records every draw taken from an inner source.
#[derive(Debug)]
pub struct RecordingStream<S> {
    inner: S,
    pub log: Vec<f64>,
}

impl<S: UniformSource> RecordingStream<S> {
    pub fn new(inner: S) -> Self {
        Self {
            inner,
            log: Vec::new(),
        }
    }
}

impl<S: UniformSource> UniformSource for RecordingStream<S> {
    fn next_uniform(&mut self) -> f64 {
        let v = self.inner.next_uniform();
        self.log.push(v);
        v
    }
}

impl<S: UniformSource + ?Sized> UniformSource for &mut S {
    fn next_uniform(&mut self) -> f64 {
        (**self).next_uniform()
    }
}
