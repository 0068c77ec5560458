//! Two-part evaluation of multi-modal pipelines.
//!
//! Bundle layout:
//!
//! ```text
//! bundle/
//!   baseline_plan.json
//!   <pipeline>/
//!     plan.json
//!     day<d>/image.png         (or .jpg / .jpeg)
//!     day<d>/reference_image.png
//!     day<d>/audio.wav
//!     day<d>/reference_audio.wav
//! ```
//!
//! Every subdirectory of the bundle is a pipeline. Part one scores each
//! pipeline's plan against the baseline plan; part two scores each
//! pipeline's image and audio against that pipeline's own references. Both
//! are averaged over the baseline's days.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use refscore::experiment::{aggregate, compare, AggregationSpec, ExperimentConfig, ScoreMatrix};
use refscore::{Payload, Registry};
use serde::Deserialize;

pub const PLAN_METRICS: [&str; 5] = ["rougeL", "bertscore", "planning_lcs", "planning_jaccard", "timeseries_dtw"];
pub const MODALITY_METRICS: [&str; 5] = ["ssim", "average_hash", "histogram_match", "audio_snr", "audio_spectrogram"];

const IMAGE_EXTENSIONS: [&str; 3] = ["png", "jpg", "jpeg"];

#[derive(Debug, Clone, Deserialize)]
pub struct TripPlan {
    pub trip_plan: Vec<DayPlan>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct DayPlan {
    pub day: u32,
    pub day_plan_text: String,
    pub day_plan_sequence: String,
    pub day_budget_euros: f64,
    pub image_prompt: String,
    pub audio_script: String,
}

impl TripPlan {
    pub fn load(path: &Path) -> Result<TripPlan> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let plan: TripPlan = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let mut days: Vec<u32> = plan.trip_plan.iter().map(|d| d.day).collect();
        days.sort_unstable();
        ensure!(
            days.windows(2).all(|w| w[0] != w[1]),
            "{}: a day appears more than once",
            path.display()
        );
        ensure!(
            plan.trip_plan.iter().all(|d| d.day_budget_euros.is_finite()),
            "{}: day_budget_euros must be finite",
            path.display()
        );
        Ok(plan)
    }

    fn day(&self, day: u32) -> Option<&DayPlan> {
        self.trip_plan.iter().find(|d| d.day == day)
    }

    /// Budgets keyed `day<d>`, in day order.
    pub fn budget_series(&self) -> String {
        let mut days: Vec<&DayPlan> = self.trip_plan.iter().collect();
        days.sort_by_key(|d| d.day);
        days.iter()
            .map(|d| format!("day{}: {}", d.day, d.day_budget_euros))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[derive(Debug)]
pub struct CaseStudy {
    pub plan_coherence: ScoreMatrix,
    pub modality_quality: ScoreMatrix,
}

struct Pipeline {
    name: String,
    plan: TripPlan,
    days: Vec<DayMedia>,
}

struct DayMedia {
    image: PathBuf,
    reference_image: PathBuf,
    audio: PathBuf,
    reference_audio: PathBuf,
}

fn find_image(dir: &Path, stem: &str) -> Option<PathBuf> {
    IMAGE_EXTENSIONS
        .iter()
        .map(|ext| dir.join(format!("{stem}.{ext}")))
        .find(|p| p.is_file())
}

fn load_pipeline(dir: &Path, name: &str, days: &[u32]) -> Result<Pipeline> {
    let plan_path = dir.join("plan.json");
    ensure!(plan_path.is_file(), "pipeline `{name}`: missing plan.json ({})", plan_path.display());
    let plan = TripPlan::load(&plan_path).with_context(|| format!("pipeline `{name}`"))?;
    let mut media = Vec::with_capacity(days.len());
    for &d in days {
        let day_dir = dir.join(format!("day{d}"));
        let image = |stem: &str| {
            find_image(&day_dir, stem).with_context(|| {
                format!(
                    "pipeline `{name}`: missing day{d}/{stem}.png (also tried .jpg, .jpeg) under {}",
                    dir.display()
                )
            })
        };
        let audio = |stem: &str| {
            let p = day_dir.join(format!("{stem}.wav"));
            if p.is_file() {
                Ok(p)
            } else {
                bail!("pipeline `{name}`: missing day{d}/{stem}.wav ({})", p.display())
            }
        };
        media.push(DayMedia {
            image: image("image")?,
            reference_image: image("reference_image")?,
            audio: audio("audio")?,
            reference_audio: audio("reference_audio")?,
        });
    }
    Ok(Pipeline {
        name: name.to_owned(),
        plan,
        days: media,
    })
}

fn config(reference: Payload, metrics: &[&str]) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(reference);
    c.metrics = metrics.iter().map(|m| m.to_string()).collect();
    c
}

fn plan_day(registry: &Registry, baseline: &DayPlan, pipelines: &[Pipeline], series: &ScoreMatrix) -> Result<ScoreMatrix> {
    let mut text = config(Payload::Text(baseline.day_plan_text.clone()), &PLAN_METRICS[..2]);
    let mut steps = config(Payload::Plan(baseline.day_plan_sequence.clone()), &PLAN_METRICS[2..4]);
    for p in pipelines {
        let day = p.plan.day(baseline.day);
        let t = day.map(|d| d.day_plan_text.clone()).unwrap_or_default();
        let s = day.map(|d| d.day_plan_sequence.clone()).unwrap_or_default();
        text = text.candidate(p.name.clone(), Payload::Text(t));
        steps = steps.candidate(p.name.clone(), Payload::Plan(s));
    }
    let text = compare(registry, &text)?;
    let steps = compare(registry, &steps)?;
    Ok(text.join_columns(&steps)?.join_columns(series)?)
}

fn modality_day(registry: &Registry, pipelines: &[Pipeline], index: usize) -> Result<ScoreMatrix> {
    let mut stacked: Option<ScoreMatrix> = None;
    for p in pipelines {
        let media = &p.days[index];
        let image = config(Payload::ImageFile(media.reference_image.clone()), &MODALITY_METRICS[..3])
            .candidate(p.name.clone(), Payload::ImageFile(media.image.clone()));
        let audio = config(Payload::AudioFile(media.reference_audio.clone()), &MODALITY_METRICS[3..])
            .candidate(p.name.clone(), Payload::AudioFile(media.audio.clone()));
        let row = compare(registry, &image)
            .and_then(|i| Ok(i.join_columns(&compare(registry, &audio)?)?))
            .with_context(|| format!("pipeline `{}`", p.name))?;
        stacked = Some(match stacked {
            None => row,
            Some(m) => m.stack_rows(&row)?,
        });
    }
    Ok(stacked.expect("at least one pipeline"))
}

/// Loads and validates the whole bundle, then scores both parts.
pub fn run(registry: &Registry, bundle: &Path) -> Result<CaseStudy> {
    let baseline_path = bundle.join("baseline_plan.json");
    ensure!(baseline_path.is_file(), "bundle has no baseline_plan.json ({})", baseline_path.display());
    let baseline = TripPlan::load(&baseline_path)?;
    ensure!(!baseline.trip_plan.is_empty(), "baseline plan has no days");
    let mut days: Vec<&DayPlan> = baseline.trip_plan.iter().collect();
    days.sort_by_key(|d| d.day);
    let day_numbers: Vec<u32> = days.iter().map(|d| d.day).collect();

    let mut names: Vec<String> = fs::read_dir(bundle)
        .with_context(|| format!("reading bundle {}", bundle.display()))?
        .filter_map(|e| e.ok())
        .filter(|e| e.path().is_dir())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    ensure!(!names.is_empty(), "bundle {} has no pipeline directories", bundle.display());
    let pipelines = names
        .iter()
        .map(|n| load_pipeline(&bundle.join(n), n, &day_numbers))
        .collect::<Result<Vec<_>>>()?;

    let mut series = config(Payload::Series(baseline.budget_series()), &PLAN_METRICS[4..]);
    for p in &pipelines {
        series = series.candidate(p.name.clone(), Payload::Series(p.plan.budget_series()));
    }
    let series = compare(registry, &series)?;

    let labels: Vec<String> = day_numbers.iter().map(|d| format!("day{d}")).collect();
    let plan_days = days
        .iter()
        .map(|d| plan_day(registry, d, &pipelines, &series).with_context(|| format!("plan coherence, day {}", d.day)))
        .collect::<Result<Vec<_>>>()?;
    let media_days = (0..days.len())
        .map(|i| modality_day(registry, &pipelines, i).with_context(|| format!("modality quality, day {}", day_numbers[i])))
        .collect::<Result<Vec<_>>>()?;
    let spec = AggregationSpec::mean(labels);
    Ok(CaseStudy {
        plan_coherence: aggregate(&plan_days, &spec)?,
        modality_quality: aggregate(&media_days, &spec)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_series_is_day_ordered() {
        let day = |d: u32, b: f64| DayPlan {
            day: d,
            day_plan_text: String::new(),
            day_plan_sequence: String::new(),
            day_budget_euros: b,
            image_prompt: String::new(),
            audio_script: String::new(),
        };
        let plan = TripPlan {
            trip_plan: vec![day(2, 80.5), day(1, 120.0)],
        };
        assert_eq!(plan.budget_series(), "day1: 120, day2: 80.5");
    }
}
