use thiserror::Error;

use crate::model::SectionId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("OnStableManifold: |height| = {height:e} is below the floor {floor:e}")]
    OnStableManifold { height: f64, floor: f64 },

    #[error("WrongSection: expected {expected:?}, got {got:?}")]
    WrongSection { expected: SectionId, got: SectionId },

    #[error("TooFewSamples: need at least {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("DegenerateUnfolding: lambda = {0:e} must be positive")]
    DegenerateUnfolding(f64),

    #[error("InsufficientResolution: {0}")]
    InsufficientResolution(String),

    #[error("CrossingUncertain: {0}")]
    CrossingUncertain(String),

    #[error("RealizationFailed: realized {longest_prefix} of {requested} symbols")]
    RealizationFailed { longest_prefix: usize, requested: usize },

    #[error("InvalidInput: {0}")]
    InvalidInput(String),

    #[error("ConfigError: line {line}: {message}")]
    Config { line: usize, message: String },
}

impl Error {
    /// Short variant name, used by the CLI when reporting domain failures.
    pub fn name(&self) -> &'static str {
        match self {
            Error::OnStableManifold { .. } => "OnStableManifold",
            Error::WrongSection { .. } => "WrongSection",
            Error::TooFewSamples { .. } => "TooFewSamples",
            Error::DegenerateUnfolding(_) => "DegenerateUnfolding",
            Error::InsufficientResolution(_) => "InsufficientResolution",
            Error::CrossingUncertain(_) => "CrossingUncertain",
            Error::RealizationFailed { .. } => "RealizationFailed",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Config { .. } => "ConfigError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
