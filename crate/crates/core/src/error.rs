use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("mode {mode} out of range for a {modes}-mode state")]
    ModeOutOfRange { mode: usize, modes: usize },

    #[error("truncation at occupation {cutoff} leaves a norm deficit of {deficit:e}")]
    Truncation { cutoff: usize, deficit: f64 },

    #[error("mode map is not unitary (deviation {deviation:e})")]
    NonUnitary { deviation: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("variance must be positive, got {0}")]
    NonPositiveVariance(f64),

    #[error("power-law fit needs at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("data must be strictly positive (index {index})")]
    NonPositiveData { index: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("no interior minimum found before t = {t_max}")]
    NoBracket { t_max: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
