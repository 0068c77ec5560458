//! `candidate,metric,score,threshold,pass` reports.

use indexmap::IndexMap;

use super::{ExperimentError, ScoreMatrix};

pub const CSV_HEADER: [&str; 5] = ["candidate", "metric", "score", "threshold", "pass"];

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

/// One row per cell, candidate-major, six decimals, LF line endings.
pub fn to_csv(matrix: &ScoreMatrix) -> String {
    let mut w = writer();
    w.write_record(CSV_HEADER).expect("in-memory write");
    for (r, candidate) in matrix.candidates().iter().enumerate() {
        for (c, metric) in matrix.metrics().iter().enumerate() {
            w.write_record([
                candidate.as_str(),
                metric.as_str(),
                &format!("{:.6}", matrix.score(r, c)),
                &format!("{:.6}", matrix.thresholds()[c]),
                if matrix.passes(r, c) { "true" } else { "false" },
            ])
            .expect("in-memory write");
        }
    }
    let bytes = w.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("fields are UTF-8")
}

/// Reads a report back into a matrix. Scores and thresholds carry the
/// report's six-decimal precision.
pub fn parse_csv(text: &str) -> Result<ScoreMatrix, ExperimentError> {
    let bad = |line: usize, message: String| ExperimentError::Csv { line, message };
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| bad(1, e.to_string()))?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(bad(1, format!("expected header {}", CSV_HEADER.join(","))));
    }
    let mut cells: IndexMap<String, IndexMap<String, f64>> = IndexMap::new();
    let mut thresholds: IndexMap<String, f64> = IndexMap::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| bad(line, e.to_string()))?;
        let number = |field: usize| -> Result<f64, ExperimentError> {
            record[field]
                .parse::<f64>()
                .map_err(|e| bad(line, format!("{}: {e}", CSV_HEADER[field])))
        };
        let (score, threshold) = (number(2)?, number(3)?);
        if !matches!(&record[4], "true" | "false") {
            return Err(bad(line, format!("pass must be true or false, got `{}`", &record[4])));
        }
        let metric = record[1].to_owned();
        if let Some(&prev) = thresholds.get(&metric) {
            if prev != threshold {
                return Err(bad(line, format!("threshold for `{metric}` changes from {prev} to {threshold}")));
            }
        } else {
            thresholds.insert(metric.clone(), threshold);
        }
        let row = cells.entry(record[0].to_owned()).or_default();
        if row.insert(metric.clone(), score).is_some() {
            return Err(bad(line, format!("duplicate cell ({}, {metric})", &record[0])));
        }
    }
    let metrics: Vec<String> = thresholds.keys().cloned().collect();
    let mut scores = Vec::with_capacity(cells.len() * metrics.len());
    for (candidate, row) in &cells {
        for metric in &metrics {
            let s = row.get(metric).ok_or_else(|| {
                ExperimentError::Malformed(format!("report has no cell for ({candidate}, {metric})"))
            })?;
            scores.push(*s);
        }
    }
    ScoreMatrix::new(cells.keys().cloned().collect(), metrics, thresholds.values().copied().collect(), scores)
}
