//! Command implementations behind the `refscore` binary.

pub mod casestudy;
pub mod manifest;

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use refscore::experiment::{aggregate, compare, write_report, AggregationSpec, ScoreMatrix};
use refscore::{ComparisonPair, Registry};

pub use casestudy::CaseStudy;
pub use manifest::{Manifest, Source};

/// Exit status when every cell passes (or the gate is off).
pub const EXIT_OK: u8 = 0;
/// Exit status when at least one cell falls below its threshold.
pub const EXIT_GATE_FAILED: u8 = 1;
/// Exit status for usage, input and decoding errors.
pub const EXIT_ERROR: u8 = 2;

pub fn cmd_calc(registry: &Registry, metric: &str, candidate: &str, reference: &str) -> Result<f64> {
    let modality = registry.descriptor(metric)?.modality;
    let pair = ComparisonPair::new(
        manifest::argument_payload(modality, candidate).context("candidate")?,
        manifest::argument_payload(modality, reference).context("reference")?,
    );
    Ok(registry.calculate(metric, &pair)?.value())
}

/// Validates the manifest, scores every group, averages groups if there are
/// several, and writes the report. Nothing is written unless scoring
/// succeeds.
pub fn cmd_compare(registry: &Registry, manifest: &Path, out: &Path) -> Result<ScoreMatrix> {
    let plan = Manifest::load(manifest)?.validate(registry)?;
    let mut matrices = Vec::with_capacity(plan.groups.len());
    for (name, config) in &plan.groups {
        let m = compare(registry, config).with_context(|| {
            if name.is_empty() {
                "comparison failed".to_owned()
            } else {
                format!("group `{name}`")
            }
        })?;
        matrices.push(m);
    }
    let matrix = if matrices.len() == 1 {
        matrices.remove(0)
    } else {
        aggregate(&matrices, &AggregationSpec::mean(plan.groups.iter().map(|(n, _)| n.clone())))?
    };
    write_report(&matrix, out)?;
    Ok(matrix)
}

/// Runs both parts of the case study and writes `plan_coherence/` and
/// `modality_quality/` under `out`.
pub fn cmd_casestudy(registry: &Registry, bundle: &Path, out: &Path) -> Result<CaseStudy> {
    let study = casestudy::run(registry, bundle)?;
    write_report(&study.plan_coherence, &out.join("plan_coherence"))?;
    write_report(&study.modality_quality, &out.join("modality_quality"))?;
    Ok(study)
}

pub fn list_metrics(registry: &Registry) -> String {
    let width = registry.names().map(str::len).max().unwrap_or(0);
    let mut out = String::new();
    for d in registry.list_metrics() {
        let _ = writeln!(out, "{:<width$}  {:<10}  {:.2}", d.name, d.modality.as_str(), d.default_threshold);
    }
    out
}

/// Scores to 3 decimals, one row per candidate; failing cells are marked
/// with `*`.
pub fn format_table(matrix: &ScoreMatrix) -> String {
    let first = matrix
        .candidates()
        .iter()
        .map(String::len)
        .chain(["candidate".len()])
        .max()
        .unwrap_or(0);
    let widths: Vec<usize> = matrix.metrics().iter().map(|m| m.len().max(6)).collect();
    let mut out = format!("{:<first$}", "candidate");
    for (m, w) in matrix.metrics().iter().zip(&widths) {
        let _ = write!(out, "  {m:>w$} ");
    }
    out.truncate(out.trim_end().len());
    out.push('\n');
    for (r, candidate) in matrix.candidates().iter().enumerate() {
        let _ = write!(out, "{candidate:<first$}");
        for (c, w) in widths.iter().enumerate() {
            let mark = if matrix.passes(r, c) { ' ' } else { '*' };
            let cell = format!("{:.3}{mark}", matrix.score(r, c));
            let _ = write!(out, "  {cell:>w$}", w = w + 1);
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    out
}
