use thiserror::Error;

pub type Result<T, E = SwarmError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SwarmError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{function} requires at least {min} dimensions, got {got}")]
    Dimension {
        function: &'static str,
        min: usize,
        got: usize,
    },

    #[error("unknown objective {name:?}; valid names are: {}", valid.join(", "))]
    UnknownObjective { name: String, valid: Vec<&'static str> },

    #[error("unknown variant {name:?}; valid names are: {}", valid.join(", "))]
    UnknownVariant { name: String, valid: Vec<&'static str> },

    #[error("objective returned non-finite value {value} for particle {particle} at iteration {iteration}")]
    Evaluation {
        particle: usize,
        iteration: usize,
        value: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("run with seed {seed} failed: {source}")]
    Run {
        seed: u64,
        #[source]
        source: Box<SwarmError>,
    },
}
