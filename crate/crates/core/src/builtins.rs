//! The built-in metric set, one entry per metric family.

use std::sync::Arc;

use crate::error::MetricError;
use crate::media;
use crate::metric::{Metric, MetricDescriptor, Modality, Registry, Value};
use crate::structured;
use crate::text::{self, EmbeddingProvider, HashEmbedding, RougeVariant};

/// Names and modalities of the built-ins, in registration order.
pub const BUILTINS: [(&str, Modality); 18] = [
    ("bleu", Modality::Text),
    ("rougeL", Modality::Text),
    ("js_divergence", Modality::Text),
    ("jaccard", Modality::Text),
    ("cosine", Modality::Text),
    ("levenshtein", Modality::Text),
    ("sequence_matcher", Modality::Text),
    ("bertscore", Modality::Text),
    ("planning_lcs", Modality::Plan),
    ("planning_jaccard", Modality::Plan),
    ("timeseries_element_diff", Modality::TimeSeries),
    ("timeseries_dtw", Modality::TimeSeries),
    ("audio_snr", Modality::Audio),
    ("audio_spectrogram", Modality::Audio),
    ("ssim", Modality::Image),
    ("psnr", Modality::Image),
    ("average_hash", Modality::Image),
    ("histogram_match", Modality::Image),
];

fn tokens_metric(f: fn(&[String], &[String]) -> f64) -> impl Metric {
    move |c: &Value, r: &Value| match (c, r) {
        (Value::Text(c), Value::Text(r)) => Ok(f(&text::tokenize(c), &text::tokenize(r))),
        _ => unreachable!("registry checks modality"),
    }
}

fn chars_metric(f: fn(&str, &str) -> f64) -> impl Metric {
    move |c: &Value, r: &Value| match (c, r) {
        (Value::Text(c), Value::Text(r)) => Ok(f(c, r)),
        _ => unreachable!("registry checks modality"),
    }
}

fn plan_metric(f: fn(&structured::PlanSequence, &structured::PlanSequence) -> f64) -> impl Metric {
    move |c: &Value, r: &Value| match (c, r) {
        (Value::Plan(c), Value::Plan(r)) => Ok(f(c, r)),
        _ => unreachable!("registry checks modality"),
    }
}

fn series_metric(f: fn(&structured::TimeSeries, &structured::TimeSeries) -> f64) -> impl Metric {
    move |c: &Value, r: &Value| match (c, r) {
        (Value::Series(c), Value::Series(r)) => Ok(f(c, r)),
        _ => unreachable!("registry checks modality"),
    }
}

fn image_metric(f: fn(&media::ImageBuffer, &media::ImageBuffer) -> Result<f64, MetricError>) -> impl Metric {
    move |c: &Value, r: &Value| match (c, r) {
        (Value::Image(c), Value::Image(r)) => f(c, r),
        _ => unreachable!("registry checks modality"),
    }
}

fn audio_metric(f: fn(&media::AudioBuffer, &media::AudioBuffer) -> Result<f64, MetricError>) -> impl Metric {
    move |c: &Value, r: &Value| match (c, r) {
        (Value::Audio(c), Value::Audio(r)) => f(c, r),
        _ => unreachable!("registry checks modality"),
    }
}

/// BERTScore F1 over the given embedder.
pub fn bertscore(provider: Arc<dyn EmbeddingProvider>) -> impl Metric {
    move |c: &Value, r: &Value| match (c, r) {
        (Value::Text(c), Value::Text(r)) => {
            Ok(text::embedding_score(&text::tokenize(c), &text::tokenize(r), provider.as_ref())?)
        }
        _ => unreachable!("registry checks modality"),
    }
}

pub(crate) fn register_all(registry: &mut Registry) {
    register_with_embedder(registry, Arc::new(HashEmbedding::default()));
}

/// Registers every built-in, with `bertscore` backed by `provider`.
pub fn register_with_embedder(registry: &mut Registry, provider: Arc<dyn EmbeddingProvider>) {
    let metrics: [Arc<dyn Metric>; 18] = [
        Arc::new(tokens_metric(text::bleu)),
        Arc::new(tokens_metric(|c, r| text::rouge(c, r, RougeVariant::RougeL))),
        Arc::new(tokens_metric(text::js_divergence_score)),
        Arc::new(tokens_metric(text::jaccard)),
        Arc::new(tokens_metric(text::cosine_tfidf)),
        Arc::new(chars_metric(text::levenshtein_score)),
        Arc::new(chars_metric(text::sequence_matcher_score)),
        Arc::new(bertscore(provider)),
        Arc::new(plan_metric(structured::planning_lcs)),
        Arc::new(plan_metric(structured::planning_jaccard)),
        Arc::new(series_metric(structured::timeseries_element_diff)),
        Arc::new(series_metric(structured::timeseries_dtw)),
        Arc::new(audio_metric(media::audio_snr_score)),
        Arc::new(audio_metric(media::spectrogram_distance_score)),
        Arc::new(image_metric(media::ssim)),
        Arc::new(image_metric(|c, r| Ok(media::psnr_score(c, r)))),
        Arc::new(image_metric(|c, r| Ok(media::average_hash_score(c, r)))),
        Arc::new(image_metric(|c, r| Ok(media::histogram_match(c, r)))),
    ];
    for ((name, modality), metric) in BUILTINS.into_iter().zip(metrics) {
        registry
            .register_arc(MetricDescriptor::new(name, modality), metric)
            .expect("built-in names are unique");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::ComparisonPair;

    #[test]
    fn fresh_registry_lists_builtins_in_order() {
        let registry = Registry::with_builtins();
        let listed: Vec<(&str, Modality)> = registry.list_metrics().map(|d| (d.name.as_str(), d.modality)).collect();
        assert_eq!(listed, BUILTINS.to_vec());
        assert!(registry.list_metrics().all(|d| d.default_threshold == 0.5 && d.higher_is_better()));
    }

    #[test]
    fn batch_examples() {
        let registry = Registry::with_builtins();
        let scores = registry
            .calculate_batch("jaccard", &[ComparisonPair::text("a b c", "b c d"), ComparisonPair::text("x", "x")])
            .unwrap();
        assert_eq!(scores.iter().map(|s| s.value()).collect::<Vec<_>>(), vec![0.5, 1.0]);
        let err = registry.calculate_batch("ssim", &[ComparisonPair::text("a", "b")]).unwrap_err();
        assert!(matches!(err, crate::Error::ModalityMismatch { index: 0, .. }));
    }

    #[test]
    fn builtin_names_reject_reregistration() {
        let mut registry = Registry::with_builtins();
        let err = registry
            .register(MetricDescriptor::new("jaccard", Modality::Text), tokens_metric(text::jaccard))
            .unwrap_err();
        assert!(matches!(err, crate::Error::DuplicateMetric(_)));
    }
}
