//! Error types for the library.

use thiserror::Error;

/// Errors from the kinematics operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum KinematicsError {
    #[error("robot parameter `{field}` must be positive and finite, got {value}")]
    NonPositiveParam { field: &'static str, value: f64 },

    #[error("integration time step must be positive and finite, got {0}")]
    InvalidTimeStep(f64),
}

/// Errors from constructing or evaluating the fuzzy controller.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FuzzyError {
    #[error("membership function feet must straddle the peak: {left} <= {peak} <= {right}")]
    MalformedMembership { left: f64, peak: f64, right: f64 },

    #[error("linguistic variable `{variable}`: {reason}")]
    MalformedVariable { variable: String, reason: String },

    #[error("output singletons: {0}")]
    MalformedSingletons(String),

    #[error("rule table: {0}")]
    MalformedRules(String),

    #[error("controller: {0}")]
    MismatchedController(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("defuzzification needs at least one nonzero firing strength")]
    DegenerateInput,
}

/// Errors from building a reference path.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum PathError {
    #[error("a path needs at least one segment")]
    Empty,

    #[error("segment {index}: {reason}")]
    BadSegment { index: usize, reason: String },

    #[error("segments {0} and {1} are not connected (gap {2:.3e} m exceeds 1e-9 m)")]
    Disconnected(usize, usize, f64),
}

/// Errors from trace evaluation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("cannot compute an RMSE over an empty series")]
    EmptySeries,

    #[error("cannot evaluate an empty trace")]
    EmptyTrace,

    #[error("cannot aggregate an empty list of reports")]
    NoReports,
}

/// Errors from loading and validating a scenario file.
#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read scenario file: {0}")]
    Io(#[from] std::io::Error),

    #[error("scenario file does not parse: {0}")]
    Parse(#[from] toml::de::Error),

    #[error("invalid scenario field `{field}`: {reason}")]
    Invalid { field: String, reason: String },
}

impl ScenarioError {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl std::fmt::Display) -> Self {
        ScenarioError::Invalid {
            field: field.into(),
            reason: reason.to_string(),
        }
    }
}
