use std::collections::BTreeSet;

use super::ExperimentError;

/// Candidates x metrics table of scores with per-metric thresholds.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    candidates: Vec<String>,
    metrics: Vec<String>,
    thresholds: Vec<f64>,
    scores: Vec<f64>,
}

impl ScoreMatrix {
    /// `scores` is row-major (candidate-major).
    pub fn new(
        candidates: Vec<String>,
        metrics: Vec<String>,
        thresholds: Vec<f64>,
        scores: Vec<f64>,
    ) -> Result<Self, ExperimentError> {
        if candidates.is_empty() {
            return Err(ExperimentError::NoCandidates);
        }
        if metrics.is_empty() {
            return Err(ExperimentError::NoMetrics);
        }
        if let Some(dup) = first_duplicate(&candidates) {
            return Err(ExperimentError::DuplicateCandidate(dup.to_owned()));
        }
        if let Some(dup) = first_duplicate(&metrics) {
            return Err(ExperimentError::DuplicateMetric(dup.to_owned()));
        }
        if thresholds.len() != metrics.len() || scores.len() != candidates.len() * metrics.len() {
            return Err(ExperimentError::Malformed(format!(
                "{} candidates x {} metrics needs {} scores and {} thresholds, got {} and {}",
                candidates.len(),
                metrics.len(),
                candidates.len() * metrics.len(),
                metrics.len(),
                scores.len(),
                thresholds.len()
            )));
        }
        for (metric, &t) in metrics.iter().zip(&thresholds) {
            if !(0.0..=1.0).contains(&t) {
                return Err(ExperimentError::ThresholdOutOfRange {
                    metric: metric.clone(),
                    value: t,
                });
            }
        }
        if let Some(bad) = scores.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(ExperimentError::Malformed(format!("score {bad} is outside [0, 1]")));
        }
        Ok(Self {
            candidates,
            metrics,
            thresholds,
            scores,
        })
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }

    pub fn metrics(&self) -> &[String] {
        &self.metrics
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn rows(&self) -> usize {
        self.candidates.len()
    }

    pub fn cols(&self) -> usize {
        self.metrics.len()
    }

    pub fn score(&self, row: usize, col: usize) -> f64 {
        self.scores[row * self.cols() + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.scores[row * self.cols()..(row + 1) * self.cols()]
    }

    pub fn passes(&self, row: usize, col: usize) -> bool {
        self.score(row, col) >= self.thresholds[col]
    }

    pub fn all_pass(&self) -> bool {
        (0..self.rows()).all(|r| (0..self.cols()).all(|c| self.passes(r, c)))
    }

    pub fn candidate_index(&self, id: &str) -> Option<usize> {
        self.candidates.iter().position(|c| c == id)
    }

    pub fn metric_index(&self, name: &str) -> Option<usize> {
        self.metrics.iter().position(|m| m == name)
    }

    pub fn get(&self, candidate: &str, metric: &str) -> Option<f64> {
        Some(self.score(self.candidate_index(candidate)?, self.metric_index(metric)?))
    }

    /// Keeps the named columns, in the given order.
    pub fn select_metrics<S: AsRef<str>>(&self, names: &[S]) -> Result<ScoreMatrix, ExperimentError> {
        let cols = names
            .iter()
            .map(|n| {
                self.metric_index(n.as_ref())
                    .ok_or_else(|| ExperimentError::UnknownColumn(n.as_ref().to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let scores = (0..self.rows())
            .flat_map(|r| cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.score(r, c))
            .collect();
        ScoreMatrix::new(
            self.candidates.clone(),
            cols.iter().map(|&c| self.metrics[c].clone()).collect(),
            cols.iter().map(|&c| self.thresholds[c]).collect(),
            scores,
        )
    }

    /// Appends the columns of `other`, whose rows must match this matrix's
    /// rows in order.
    pub fn join_columns(&self, other: &ScoreMatrix) -> Result<ScoreMatrix, ExperimentError> {
        if self.candidates != other.candidates {
            return Err(row_mismatch(&self.candidates, &other.candidates));
        }
        let scores = (0..self.rows())
            .flat_map(|r| self.row(r).iter().chain(other.row(r)).copied().collect::<Vec<_>>())
            .collect();
        ScoreMatrix::new(
            self.candidates.clone(),
            self.metrics.iter().chain(&other.metrics).cloned().collect(),
            self.thresholds.iter().chain(&other.thresholds).copied().collect(),
            scores,
        )
    }

    /// Appends the rows of `other`, whose columns and thresholds must match
    /// this matrix's in order.
    pub fn stack_rows(&self, other: &ScoreMatrix) -> Result<ScoreMatrix, ExperimentError> {
        if self.metrics != other.metrics {
            return Err(ExperimentError::ColumnMismatch {
                difference: symmetric_difference(&self.metrics, &other.metrics),
            });
        }
        if self.thresholds != other.thresholds {
            return Err(ExperimentError::Malformed("stacked matrices use different thresholds".into()));
        }
        ScoreMatrix::new(
            self.candidates.iter().chain(&other.candidates).cloned().collect(),
            self.metrics.clone(),
            self.thresholds.clone(),
            self.scores.iter().chain(&other.scores).copied().collect(),
        )
    }
}

fn first_duplicate(items: &[String]) -> Option<&str> {
    let mut seen = BTreeSet::new();
    items.iter().find(|i| !seen.insert(i.as_str())).map(String::as_str)
}

pub(super) fn symmetric_difference(a: &[String], b: &[String]) -> Vec<String> {
    let a: BTreeSet<&String> = a.iter().collect();
    let b: BTreeSet<&String> = b.iter().collect();
    a.symmetric_difference(&b).map(|s| s.to_string()).collect()
}

pub(super) fn row_mismatch(a: &[String], b: &[String]) -> ExperimentError {
    ExperimentError::RowMismatch {
        difference: symmetric_difference(a, b),
    }
}

/// How per-group matrices (for example one per day) combine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregationSpec {
    groups: Vec<String>,
}

impl AggregationSpec {
    /// Cell-wise arithmetic mean over the labelled groups.
    pub fn mean<S: Into<String>>(groups: impl IntoIterator<Item = S>) -> Self {
        Self {
            groups: groups.into_iter().map(Into::into).collect(),
        }
    }

    pub fn groups(&self) -> &[String] {
        &self.groups
    }
}

/// Cell-wise mean of matrices over the same candidates, metrics and
/// thresholds. Rows and columns may appear in any order; the first matrix
/// fixes the output order. Pass flags follow from the averaged scores.
pub fn aggregate(matrices: &[ScoreMatrix], spec: &AggregationSpec) -> Result<ScoreMatrix, ExperimentError> {
    let first = matrices.first().ok_or(ExperimentError::NoGroups)?;
    if spec.groups.len() != matrices.len() {
        return Err(ExperimentError::Malformed(format!(
            "{} group labels for {} matrices",
            spec.groups.len(),
            matrices.len()
        )));
    }
    let mut sums = vec![0.0; first.scores.len()];
    for (label, m) in spec.groups.iter().zip(matrices) {
        let rows = symmetric_difference(&first.candidates, &m.candidates);
        if !rows.is_empty() || m.rows() != first.rows() {
            return Err(ExperimentError::GroupMismatch {
                group: label.clone(),
                source: Box::new(ExperimentError::RowMismatch { difference: rows }),
            });
        }
        let cols = symmetric_difference(&first.metrics, &m.metrics);
        if !cols.is_empty() || m.cols() != first.cols() {
            return Err(ExperimentError::GroupMismatch {
                group: label.clone(),
                source: Box::new(ExperimentError::ColumnMismatch { difference: cols }),
            });
        }
        for (c, metric) in first.metrics.iter().enumerate() {
            let mc = m.metric_index(metric).expect("column sets match");
            if m.thresholds[mc] != first.thresholds[c] {
                return Err(ExperimentError::GroupMismatch {
                    group: label.clone(),
                    source: Box::new(ExperimentError::Malformed(format!(
                        "threshold for `{metric}` differs: {} vs {}",
                        m.thresholds[mc], first.thresholds[c]
                    ))),
                });
            }
            for (r, candidate) in first.candidates.iter().enumerate() {
                let mr = m.candidate_index(candidate).expect("row sets match");
                sums[r * first.cols() + c] += m.score(mr, mc);
            }
        }
    }
    let n = matrices.len() as f64;
    ScoreMatrix::new(
        first.candidates.clone(),
        first.metrics.clone(),
        first.thresholds.clone(),
        sums.into_iter().map(|s| (s / n).clamp(0.0, 1.0)).collect(),
    )
}
