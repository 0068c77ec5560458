//! Many candidates against one reference: score matrices, thresholds,
//! aggregation across groups, and CSV/SVG reports.

mod csv_report;
mod matrix;
mod svg;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use rayon::prelude::*;

use crate::error::{DecodeError, Error};
use crate::metric::{Modality, Payload, Registry, Value};

pub use csv_report::{parse_csv, to_csv, CSV_HEADER};
pub use matrix::{aggregate, AggregationSpec, ScoreMatrix};
pub use svg::{radar_points, render_bar, render_radar};

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("experiment needs at least one candidate")]
    NoCandidates,
    #[error("experiment needs at least one metric")]
    NoMetrics,
    #[error("nothing to aggregate")]
    NoGroups,
    #[error("candidate `{0}` appears twice")]
    DuplicateCandidate(String),
    #[error("metric `{0}` is listed twice")]
    DuplicateMetric(String),
    #[error(transparent)]
    Registry(#[from] Error),
    #[error("metric `{metric}` expects {expected} input but {subject} is {found}")]
    ModalityMismatch {
        subject: String,
        metric: String,
        expected: Modality,
        found: Modality,
    },
    #[error("threshold {value} for `{metric}` is outside [0, 1]")]
    ThresholdOutOfRange { metric: String, value: f64 },
    #[error("threshold given for `{0}`, which is not one of the experiment's metrics")]
    ThresholdForUnlistedMetric(String),
    #[error("{subject}: {source}")]
    Decode {
        subject: String,
        #[source]
        source: DecodeError,
    },
    #[error("candidate `{candidate}`: {source}")]
    Metric {
        candidate: String,
        #[source]
        source: Error,
    },
    #[error("row sets differ: {}", difference.join(", "))]
    RowMismatch { difference: Vec<String> },
    #[error("column sets differ: {}", difference.join(", "))]
    ColumnMismatch { difference: Vec<String> },
    #[error("group `{group}`: {source}")]
    GroupMismatch {
        group: String,
        #[source]
        source: Box<ExperimentError>,
    },
    #[error("no metric column `{0}`")]
    UnknownColumn(String),
    #[error("radar chart needs at least 3 metrics, got {0}")]
    RadarNeedsThreeAxes(usize),
    #[error("malformed score matrix: {0}")]
    Malformed(String),
    #[error("CSV line {line}: {message}")]
    Csv { line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Candidates, one shared reference, and the metrics to apply.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub candidates: IndexMap<String, Payload>,
    pub reference: Payload,
    pub metrics: Vec<String>,
    /// Overrides; metrics without one use their registered default.
    pub thresholds: BTreeMap<String, f64>,
    pub output_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(reference: Payload) -> Self {
        Self {
            candidates: IndexMap::new(),
            reference,
            metrics: Vec::new(),
            thresholds: BTreeMap::new(),
            output_dir: None,
        }
    }

    pub fn candidate(mut self, id: impl Into<String>, payload: Payload) -> Self {
        self.candidates.insert(id.into(), payload);
        self
    }

    pub fn metric(mut self, name: impl Into<String>) -> Self {
        self.metrics.push(name.into());
        self
    }

    pub fn threshold(mut self, metric: impl Into<String>, value: f64) -> Self {
        self.thresholds.insert(metric.into(), value);
        self
    }

    /// Checks everything that can be checked without decoding payloads and
    /// returns the effective per-metric thresholds.
    pub fn validate(&self, registry: &Registry) -> Result<Vec<f64>, ExperimentError> {
        if self.candidates.is_empty() {
            return Err(ExperimentError::NoCandidates);
        }
        if self.metrics.is_empty() {
            return Err(ExperimentError::NoMetrics);
        }
        for (i, m) in self.metrics.iter().enumerate() {
            if self.metrics[..i].contains(m) {
                return Err(ExperimentError::DuplicateMetric(m.clone()));
            }
        }
        if let Some(extra) = self.thresholds.keys().find(|k| !self.metrics.contains(k)) {
            return Err(ExperimentError::ThresholdForUnlistedMetric(extra.clone()));
        }
        let mut thresholds = Vec::with_capacity(self.metrics.len());
        for metric in &self.metrics {
            let descriptor = registry.descriptor(metric)?;
            let subjects = std::iter::once(("reference".to_owned(), &self.reference))
                .chain(self.candidates.iter().map(|(id, p)| (format!("candidate `{id}`"), p)));
            for (subject, payload) in subjects {
                if payload.modality() != descriptor.modality {
                    return Err(ExperimentError::ModalityMismatch {
                        subject,
                        metric: metric.clone(),
                        expected: descriptor.modality,
                        found: payload.modality(),
                    });
                }
            }
            let t = self.thresholds.get(metric).copied().unwrap_or(descriptor.default_threshold);
            if !(0.0..=1.0).contains(&t) {
                return Err(ExperimentError::ThresholdOutOfRange {
                    metric: metric.clone(),
                    value: t,
                });
            }
            thresholds.push(t);
        }
        Ok(thresholds)
    }
}

/// Scores every (candidate, metric) cell. Payloads are decoded once each,
/// cells are computed in parallel, and the first failure in row-major order
/// aborts the run.
pub fn compare(registry: &Registry, config: &ExperimentConfig) -> Result<ScoreMatrix, ExperimentError> {
    let thresholds = config.validate(registry)?;
    let reference = config.reference.resolve().map_err(|source| ExperimentError::Decode {
        subject: "reference".to_owned(),
        source,
    })?;
    let candidates: Vec<(&String, Value)> = config
        .candidates
        .iter()
        .map(|(id, payload)| {
            payload
                .resolve()
                .map(|v| (id, v))
                .map_err(|source| ExperimentError::Decode {
                    subject: format!("candidate `{id}`"),
                    source,
                })
        })
        .collect::<Result<_, _>>()?;

    let cols = config.metrics.len();
    let cells: Vec<Result<f64, ExperimentError>> = (0..candidates.len() * cols)
        .into_par_iter()
        .map(|cell| {
            let (row, col) = (cell / cols, cell % cols);
            let (id, value) = &candidates[row];
            registry
                .score_values(&config.metrics[col], row, value, &reference)
                .map(|s| s.value())
                .map_err(|source| ExperimentError::Metric {
                    candidate: (*id).clone(),
                    source,
                })
        })
        .collect();
    let scores = cells.into_iter().collect::<Result<Vec<_>, _>>()?;
    ScoreMatrix::new(
        config.candidates.keys().cloned().collect(),
        config.metrics.clone(),
        thresholds,
        scores,
    )
}

/// Paths written by [`write_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportPaths {
    pub csv: PathBuf,
    pub bars: Vec<PathBuf>,
    pub radar: Option<PathBuf>,
}

/// Replaces characters outside `[A-Za-z0-9._-]` so a metric name is safe as
/// a file-name component.
pub fn file_stem(metric: &str) -> String {
    metric
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-') { c } else { '_' })
        .collect()
}

/// Writes `report.csv`, `bar_<metric>.svg` per metric and, with three or
/// more metrics, `radar.svg`. Every document is rendered before the first
/// file is written.
pub fn write_report(matrix: &ScoreMatrix, dir: &Path) -> Result<ReportPaths, ExperimentError> {
    let mut files: Vec<(PathBuf, String)> = vec![(dir.join("report.csv"), to_csv(matrix))];
    for metric in matrix.metrics() {
        files.push((dir.join(format!("bar_{}.svg", file_stem(metric))), render_bar(matrix, metric)?));
    }
    let radar = if matrix.cols() >= 3 {
        let path = dir.join("radar.svg");
        files.push((path.clone(), render_radar(matrix)?));
        Some(path)
    } else {
        None
    };
    let io = |path: &Path| {
        let path = path.to_owned();
        move |source| ExperimentError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io(dir))?;
    for (path, body) in &files {
        fs::write(path, body).map_err(io(path))?;
    }
    Ok(ReportPaths {
        csv: files[0].0.clone(),
        bars: files[1..=matrix.cols()].iter().map(|(p, _)| p.clone()).collect(),
        radar,
    })
}

/// `compare`, then `write_report` into the configured output directory if
/// there is one.
pub fn run(registry: &Registry, config: &ExperimentConfig) -> Result<(ScoreMatrix, Option<ReportPaths>), ExperimentError> {
    let matrix = compare(registry, config)?;
    let paths = match &config.output_dir {
        Some(dir) => Some(write_report(&matrix, dir)?),
        None => None,
    };
    Ok((matrix, paths))
}
