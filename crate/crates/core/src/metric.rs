//! The metric contract shared by every modality.
//!
//! A metric maps a `(candidate, reference)` pair of the same [`Modality`] to a
//! [`Score`] in `[0, 1]`, where `1` means identical under that metric. Metrics
//! built on a distance report `1 - normalized distance` (or a squashed variant),
//! so every score in the engine is higher-is-better and a single threshold rule
//! (`score >= threshold`) applies everywhere.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

use crate::error::{DecodeError, Error, MetricError};
use crate::media::{AudioBuffer, ImageBuffer};
use crate::structured::{parse_plan, parse_timeseries, PlanSequence, TimeSeries};

/// The kind of payload a metric consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modality {
    Text,
    Plan,
    TimeSeries,
    Image,
    Audio,
}

impl Modality {
    pub const ALL: [Modality; 5] = [
        Modality::Text,
        Modality::Plan,
        Modality::TimeSeries,
        Modality::Image,
        Modality::Audio,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Modality::Text => "text",
            Modality::Plan => "plan",
            Modality::TimeSeries => "timeseries",
            Modality::Image => "image",
            Modality::Audio => "audio",
        }
    }

    pub fn parse(name: &str) -> Option<Modality> {
        Modality::ALL.into_iter().find(|m| m.as_str() == name)
    }

    /// Image and audio payloads can only come from files.
    pub fn is_media(self) -> bool {
        matches!(self, Modality::Image | Modality::Audio)
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Registry entry describing one metric.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricDescriptor {
    pub name: String,
    pub modality: Modality,
    pub default_threshold: f64,
}

impl MetricDescriptor {
    pub const DEFAULT_THRESHOLD: f64 = 0.5;

    pub fn new(name: impl Into<String>, modality: Modality) -> Self {
        Self {
            name: name.into(),
            modality,
            default_threshold: Self::DEFAULT_THRESHOLD,
        }
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.default_threshold = threshold;
        self
    }

    /// All metrics report similarities.
    pub fn higher_is_better(&self) -> bool {
        true
    }
}

/// A similarity in `[0, 1]`. Never NaN.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Score(f64);

impl Score {
    pub const ZERO: Score = Score(0.0);
    pub const ONE: Score = Score(1.0);

    /// Accepts any finite value, clamping rounding overshoot into `[0, 1]`.
    pub fn new(value: f64) -> Result<Score, MetricError> {
        if !value.is_finite() {
            return Err(MetricError::NonFinite(value));
        }
        Ok(Score(value.clamp(0.0, 1.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<Score> for f64 {
    fn from(score: Score) -> f64 {
        score.0
    }
}

/// A decoded, metric-ready input.
#[derive(Debug, Clone)]
pub enum Value {
    Text(String),
    Plan(PlanSequence),
    Series(TimeSeries),
    Image(Arc<ImageBuffer>),
    Audio(Arc<AudioBuffer>),
}

impl Value {
    pub fn modality(&self) -> Modality {
        match self {
            Value::Text(_) => Modality::Text,
            Value::Plan(_) => Modality::Plan,
            Value::Series(_) => Modality::TimeSeries,
            Value::Image(_) => Modality::Image,
            Value::Audio(_) => Modality::Audio,
        }
    }
}

/// A modality-tagged input as supplied by a caller, before parsing or decoding.
#[derive(Debug, Clone)]
pub enum Payload {
    Text(String),
    /// Plan string in the `visit(x), eat(y)|see(z)` format.
    Plan(String),
    /// Time series as `key: value` pairs or a bare numeric list.
    Series(String),
    SeriesValues(Vec<f64>),
    ImageFile(PathBuf),
    AudioFile(PathBuf),
    Decoded(Value),
}

impl Payload {
    pub fn modality(&self) -> Modality {
        match self {
            Payload::Text(_) => Modality::Text,
            Payload::Plan(_) => Modality::Plan,
            Payload::Series(_) | Payload::SeriesValues(_) => Modality::TimeSeries,
            Payload::ImageFile(_) => Modality::Image,
            Payload::AudioFile(_) => Modality::Audio,
            Payload::Decoded(v) => v.modality(),
        }
    }

    /// Parses or decodes the payload.
    pub fn resolve(&self) -> Result<Value, DecodeError> {
        Ok(match self {
            Payload::Text(s) => Value::Text(s.clone()),
            Payload::Plan(s) => Value::Plan(parse_plan(s)?),
            Payload::Series(s) => Value::Series(parse_timeseries(s)?.series),
            Payload::SeriesValues(v) => Value::Series(TimeSeries::from_values(v)),
            Payload::ImageFile(p) => Value::Image(Arc::new(ImageBuffer::open(p)?)),
            Payload::AudioFile(p) => Value::Audio(Arc::new(AudioBuffer::open(p)?)),
            Payload::Decoded(v) => v.clone(),
        })
    }
}

impl From<Value> for Payload {
    fn from(value: Value) -> Self {
        Payload::Decoded(value)
    }
}

#[derive(Debug, Clone)]
pub struct ComparisonPair {
    pub candidate: Payload,
    pub reference: Payload,
}

impl ComparisonPair {
    pub fn new(candidate: impl Into<Payload>, reference: impl Into<Payload>) -> Self {
        Self {
            candidate: candidate.into(),
            reference: reference.into(),
        }
    }

    pub fn text(candidate: &str, reference: &str) -> Self {
        Self::new(
            Payload::Text(candidate.to_owned()),
            Payload::Text(reference.to_owned()),
        )
    }
}

/// A similarity function over two values of the metric's modality.
///
/// Implementations must be pure: the same inputs always give the same bits.
/// The registry checks modality before calling, so implementations may treat
/// a foreign variant as unreachable.
pub trait Metric: Send + Sync {
    fn calculate(&self, candidate: &Value, reference: &Value) -> Result<f64, MetricError>;
}

impl<F> Metric for F
where
    F: Fn(&Value, &Value) -> Result<f64, MetricError> + Send + Sync,
{
    fn calculate(&self, candidate: &Value, reference: &Value) -> Result<f64, MetricError> {
        self(candidate, reference)
    }
}

/// Position of a metric in its registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricHandle(usize);

struct Entry {
    descriptor: MetricDescriptor,
    metric: Arc<dyn Metric>,
}

/// Name-indexed collection of metrics, kept in registration order.
///
/// Built once, then shared read-only; calculation takes `&self` and is safe
/// from many threads.
#[derive(Default)]
pub struct Registry {
    entries: Vec<Entry>,
    by_name: HashMap<String, usize>,
}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.entries.iter().map(|e| &e.descriptor.name))
            .finish()
    }
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// A registry holding every built-in metric.
    pub fn with_builtins() -> Self {
        let mut registry = Self::new();
        crate::builtins::register_all(&mut registry);
        registry
    }

    pub fn register(
        &mut self,
        descriptor: MetricDescriptor,
        metric: impl Metric + 'static,
    ) -> Result<MetricHandle, Error> {
        self.register_arc(descriptor, Arc::new(metric))
    }

    pub fn register_arc(
        &mut self,
        descriptor: MetricDescriptor,
        metric: Arc<dyn Metric>,
    ) -> Result<MetricHandle, Error> {
        if self.by_name.contains_key(&descriptor.name) {
            return Err(Error::DuplicateMetric(descriptor.name));
        }
        let t = descriptor.default_threshold;
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidThreshold {
                name: descriptor.name,
                threshold: t,
            });
        }
        let index = self.entries.len();
        self.by_name.insert(descriptor.name.clone(), index);
        self.entries.push(Entry { descriptor, metric });
        Ok(MetricHandle(index))
    }

    pub fn handle(&self, name: &str) -> Result<MetricHandle, Error> {
        self.by_name
            .get(name)
            .map(|&i| MetricHandle(i))
            .ok_or_else(|| Error::UnknownMetric {
                name: name.to_owned(),
                available: self.names().map(str::to_owned).collect(),
            })
    }

    pub fn descriptor(&self, name: &str) -> Result<&MetricDescriptor, Error> {
        let MetricHandle(i) = self.handle(name)?;
        Ok(&self.entries[i].descriptor)
    }

    pub fn metric(&self, name: &str) -> Result<Arc<dyn Metric>, Error> {
        let MetricHandle(i) = self.handle(name)?;
        Ok(Arc::clone(&self.entries[i].metric))
    }

    pub fn list_metrics(&self) -> impl Iterator<Item = &MetricDescriptor> {
        self.entries.iter().map(|e| &e.descriptor)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.descriptor.name.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Scores one pair of already-resolved values. `index` is only used for
    /// error reporting.
    pub fn score_values(
        &self,
        name: &str,
        index: usize,
        candidate: &Value,
        reference: &Value,
    ) -> Result<Score, Error> {
        let MetricHandle(i) = self.handle(name)?;
        let entry = &self.entries[i];
        let expected = entry.descriptor.modality;
        for found in [candidate.modality(), reference.modality()] {
            if found != expected {
                return Err(Error::ModalityMismatch {
                    index,
                    metric: name.to_owned(),
                    expected,
                    found,
                });
            }
        }
        let metric_err = |source| Error::Metric {
            index,
            metric: name.to_owned(),
            source,
        };
        let raw = entry
            .metric
            .calculate(candidate, reference)
            .map_err(metric_err)?;
        Score::new(raw).map_err(metric_err)
    }

    /// Scores every pair in order. All pairs are modality-checked before any
    /// payload is decoded, so a mismatch anywhere rejects the whole batch.
    pub fn calculate_batch(&self, name: &str, pairs: &[ComparisonPair]) -> Result<Vec<Score>, Error> {
        let expected = self.descriptor(name)?.modality;
        for (index, pair) in pairs.iter().enumerate() {
            for found in [pair.candidate.modality(), pair.reference.modality()] {
                if found != expected {
                    return Err(Error::ModalityMismatch {
                        index,
                        metric: name.to_owned(),
                        expected,
                        found,
                    });
                }
            }
        }
        pairs
            .iter()
            .enumerate()
            .map(|(index, pair)| {
                let decode = |p: &Payload| p.resolve().map_err(|source| Error::Decode { index, source });
                let candidate = decode(&pair.candidate)?;
                let reference = decode(&pair.reference)?;
                self.score_values(name, index, &candidate, &reference)
            })
            .collect()
    }

    pub fn calculate(&self, name: &str, pair: &ComparisonPair) -> Result<Score, Error> {
        let mut scores = self.calculate_batch(name, std::slice::from_ref(pair))?;
        Ok(scores.remove(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant(value: f64) -> impl Metric {
        move |_: &Value, _: &Value| Ok(value)
    }

    #[test]
    fn register_then_lookup() {
        let mut registry = Registry::new();
        let handle = registry
            .register(MetricDescriptor::new("jaccard", Modality::Text), constant(0.25))
            .unwrap();
        assert_eq!(registry.handle("jaccard").unwrap(), handle);
        let score = registry.calculate("jaccard", &ComparisonPair::text("a", "b")).unwrap();
        assert_eq!(score.value(), 0.25);
    }

    #[test]
    fn duplicate_name_rejected() {
        let mut registry = Registry::new();
        registry
            .register(MetricDescriptor::new("jaccard", Modality::Text), constant(1.0))
            .unwrap();
        let err = registry
            .register(MetricDescriptor::new("jaccard", Modality::Text), constant(1.0))
            .unwrap_err();
        assert!(matches!(err, Error::DuplicateMetric(ref n) if n == "jaccard"));
    }

    #[test]
    fn threshold_out_of_range_rejected() {
        let mut registry = Registry::new();
        let err = registry
            .register(
                MetricDescriptor::new("m", Modality::Text).with_threshold(1.5),
                constant(1.0),
            )
            .unwrap_err();
        assert!(matches!(err, Error::InvalidThreshold { .. }));
    }

    #[test]
    fn unknown_metric_lists_available() {
        let mut registry = Registry::new();
        registry
            .register(MetricDescriptor::new("a", Modality::Text), constant(1.0))
            .unwrap();
        let err = registry.handle("zzz").unwrap_err();
        assert!(err.to_string().contains("available metrics: a"));
    }

    #[test]
    fn non_finite_is_an_error() {
        let mut registry = Registry::new();
        registry
            .register(MetricDescriptor::new("nan", Modality::Text), constant(f64::NAN))
            .unwrap();
        let err = registry.calculate("nan", &ComparisonPair::text("a", "a")).unwrap_err();
        assert!(matches!(err, Error::Metric { source: MetricError::NonFinite(_), .. }));
    }

    #[test]
    fn mismatch_names_offending_index() {
        let mut registry = Registry::new();
        registry
            .register(MetricDescriptor::new("m", Modality::Text), constant(1.0))
            .unwrap();
        let pairs = vec![
            ComparisonPair::text("a", "a"),
            ComparisonPair::new(Payload::Plan("a".into()), Payload::Text("a".into())),
        ];
        let err = registry.calculate_batch("m", &pairs).unwrap_err();
        assert!(matches!(err, Error::ModalityMismatch { index: 1, .. }));
    }

    #[test]
    fn modality_names_round_trip() {
        for m in Modality::ALL {
            assert_eq!(Modality::parse(m.as_str()), Some(m));
        }
    }
}
