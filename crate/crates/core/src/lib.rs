//! Reference-based similarity scoring for generated outputs.
//!
//! Every metric compares a candidate against a reference of the same
//! modality (text, plan, time series, image or audio) and returns a
//! similarity in `[0, 1]`. The [`Registry`] holds metrics by name and scores
//! batches; the [`experiment`] module compares many candidates against one
//! reference and writes CSV and SVG reports.

pub mod align;
pub mod builtins;
mod error;
pub mod experiment;
pub mod media;
mod metric;
pub mod structured;
pub mod text;

pub use error::{DecodeError, Error, MetricError};
pub use metric::{ComparisonPair, Metric, MetricDescriptor, MetricHandle, Modality, Payload, Registry, Score, Value};
