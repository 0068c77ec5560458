use std::path::PathBuf;

use thiserror::Error;

use crate::metric::Modality;

/// Errors raised by the registry and batch calculation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("metric `{0}` is already registered")]
    DuplicateMetric(String),

    #[error("unknown metric `{name}`; available metrics: {}", available.join(", "))]
    UnknownMetric { name: String, available: Vec<String> },

    #[error("default threshold {threshold} for metric `{name}` is outside [0, 1]")]
    InvalidThreshold { name: String, threshold: f64 },

    #[error("pair {index}: metric `{metric}` expects {expected} input, got {found}")]
    ModalityMismatch {
        index: usize,
        metric: String,
        expected: Modality,
        found: Modality,
    },

    #[error("pair {index}: could not decode payload: {source}")]
    Decode {
        index: usize,
        #[source]
        source: DecodeError,
    },

    #[error("pair {index}: metric `{metric}` failed: {source}")]
    Metric {
        index: usize,
        metric: String,
        #[source]
        source: MetricError,
    },
}

/// Failure to turn a payload into a metric-ready value.
#[derive(Debug, Error)]
pub enum DecodeError {
    #[error(transparent)]
    Plan(#[from] crate::structured::PlanParseError),

    #[error(transparent)]
    Series(#[from] crate::structured::SeriesParseError),

    #[error("{path}: {message}")]
    Media { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Failure inside a metric computation on well-typed inputs.
#[derive(Debug, Error)]
pub enum MetricError {
    #[error("image shapes differ: candidate {candidate}, reference {reference}")]
    ShapeMismatch { candidate: String, reference: String },

    #[error("sample rates differ: candidate {candidate} Hz, reference {reference} Hz")]
    SampleRateMismatch { candidate: u32, reference: u32 },

    #[error("embedding provider failed: {0}")]
    Embedding(#[from] crate::text::EmbeddingError),

    #[error("metric produced a non-finite value ({0})")]
    NonFinite(f64),
}
