use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero-length link")]
    ZeroLengthLink,

    #[error("nonpositive distance: {0} km")]
    NonPositiveDistance(f64),

    #[error("negative distance: {0} km")]
    NegativeDistance(f64),

    #[error("spectral efficiency overflow: {0} bit/s/Hz exceeds 1024")]
    SpectralEfficiencyOverflow(f64),

    #[error("negative array gain: {0} dB")]
    NegativeGain(f64),

    #[error("array gain of {0} dB needs more elements than can be counted")]
    GainTooLarge(f64),

    #[error("array needs at least one element, got {0}")]
    TooFewElements(u64),

    #[error("empty sweep")]
    EmptySweep,

    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
