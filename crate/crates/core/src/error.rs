use std::fmt;

/// Errors raised by the solver library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("fluid depth {h:e} is at or below the floor")]
    DepthTooSmall { h: f64 },
    #[error("non-finite coefficient in energy cubic")]
    NonFinite,
    #[error("minmod of an empty list")]
    EmptyInput,
    #[error("array too short: need at least {needed} values, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("unknown topography descriptor `{0}`")]
    UnknownDescriptor(String),
    #[error("degenerate equilibrium: (hv)^2 equals (hb)^2 but they are not both zero")]
    DegenerateEquilibrium,
    #[error("non-finite state produced in Runge-Kutta stage {stage}")]
    NonFiniteState { stage: usize },
    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: usize, right: usize },
    #[error("rate requires positive differences, got {0:e}")]
    NonPositive(f64),
    #[error("averaging window has not started (T must exceed 2 T_f = {start})")]
    WindowNotStarted { start: f64 },
    #[error("negative discriminant in the cyclo-geostrophic balance")]
    ComplexRoot,
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("run failed at t = {t}, step {step}: {source}")]
    Run {
        t: f64,
        step: usize,
        #[source]
        source: Box<Error>,
    },
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    pub(crate) fn config(msg: impl fmt::Display) -> Self {
        Error::ConfigInvalid(msg.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
