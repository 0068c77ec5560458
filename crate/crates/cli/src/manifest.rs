//! JSON experiment manifests.
//!
//! ```json
//! {
//!   "modality": "text",
//!   "metrics": ["jaccard", "rougeL"],
//!   "thresholds": {"jaccard": 0.6},
//!   "candidates": {"modelA": {"text": "..."}, "modelB": {"path": "b.txt"}},
//!   "reference": {"path": "gold.txt"}
//! }
//! ```
//!
//! Instead of `candidates` and `reference`, a manifest may list `groups`,
//! each with its own `name`, `candidates` and `reference`; the per-group
//! matrices are averaged.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, ensure, Context, Result};
use indexmap::IndexMap;
use refscore::experiment::ExperimentConfig;
use refscore::{Modality, Payload, Registry};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub modality: String,
    pub metrics: Vec<String>,
    #[serde(default)]
    pub thresholds: BTreeMap<String, f64>,
    pub candidates: Option<IndexMap<String, Source>>,
    pub reference: Option<Source>,
    pub groups: Option<Vec<Group>>,
    /// Directory that relative `path` entries are resolved against.
    #[serde(skip)]
    pub base: PathBuf,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Group {
    pub name: String,
    pub candidates: IndexMap<String, Source>,
    pub reference: Source,
}

/// Exactly one of the fields must be present.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Source {
    pub text: Option<String>,
    pub path: Option<PathBuf>,
    pub values: Option<Vec<f64>>,
}

/// A validated manifest: one config per group (a single unnamed group when
/// the manifest has no `groups`).
#[derive(Debug, Clone)]
pub struct Plan {
    pub modality: Modality,
    pub groups: Vec<(String, ExperimentConfig)>,
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Manifest> {
        let text = fs::read_to_string(path).with_context(|| format!("reading manifest {}", path.display()))?;
        let mut manifest = Manifest::parse(&text).with_context(|| format!("manifest {}", path.display()))?;
        manifest.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(manifest)
    }

    pub fn parse(text: &str) -> Result<Manifest> {
        Ok(serde_json::from_str(text)?)
    }

    /// Checks the manifest against the registry and reads any text files it
    /// names. Media files are only checked for existence here; they are
    /// decoded by the experiment run.
    pub fn validate(&self, registry: &Registry) -> Result<Plan> {
        let modality = Modality::parse(&self.modality).ok_or_else(|| {
            let known: Vec<_> = Modality::ALL.iter().map(|m| m.as_str()).collect();
            anyhow!("unknown modality `{}` (expected one of {})", self.modality, known.join(", "))
        })?;
        ensure!(!self.metrics.is_empty(), "`metrics` must list at least one metric");
        let mut seen = BTreeSet::new();
        for metric in &self.metrics {
            ensure!(seen.insert(metric), "metric `{metric}` is listed twice");
            let d = registry.descriptor(metric)?;
            ensure!(
                d.modality == modality,
                "metric `{metric}` takes {} input, but the manifest modality is {modality}",
                d.modality
            );
        }
        for (metric, &t) in &self.thresholds {
            ensure!(seen.contains(metric), "threshold given for `{metric}`, which is not in `metrics`");
            ensure!((0.0..=1.0).contains(&t), "threshold {t} for `{metric}` is outside [0, 1]");
        }

        let groups: Vec<(String, &IndexMap<String, Source>, &Source)> =
            match (&self.candidates, &self.reference, &self.groups) {
                (Some(c), Some(r), None) => vec![(String::new(), c, r)],
                (None, None, Some(groups)) => {
                    ensure!(!groups.is_empty(), "`groups` must not be empty");
                    groups.iter().map(|g| (g.name.clone(), &g.candidates, &g.reference)).collect()
                }
                (_, _, Some(_)) => bail!("use either `groups` or `candidates` with `reference`, not both"),
                (None, _, None) => bail!("missing `candidates`"),
                (_, None, None) => bail!("missing `reference`"),
            };

        let mut names = BTreeSet::new();
        let mut ids: Option<BTreeSet<&String>> = None;
        let mut out = Vec::with_capacity(groups.len());
        for (name, candidates, reference) in groups {
            let label = if name.is_empty() { String::new() } else { format!("group `{name}`: ") };
            if self.groups.is_some() {
                ensure!(!name.trim().is_empty(), "group names must not be empty");
                ensure!(names.insert(name.clone()), "group `{name}` appears twice");
            }
            ensure!(!candidates.is_empty(), "{label}`candidates` must not be empty");
            let these: BTreeSet<&String> = candidates.keys().collect();
            if let Some(first) = &ids {
                ensure!(*first == these, "{label}candidate ids differ from the first group");
            } else {
                ids = Some(these);
            }
            let mut config = ExperimentConfig::new(
                reference
                    .resolve(&self.base).to_payload(modality)
                    .with_context(|| format!("{label}reference"))?,
            );
            for (id, source) in candidates {
                ensure!(!id.trim().is_empty(), "{label}candidate ids must not be empty");
                let payload = source
                    .resolve(&self.base).to_payload(modality)
                    .with_context(|| format!("{label}candidate `{id}`"))?;
                config = config.candidate(id.clone(), payload);
            }
            config.metrics = self.metrics.clone();
            config.thresholds = self.thresholds.clone();
            out.push((name, config));
        }
        Ok(Plan { modality, groups: out })
    }
}

impl Source {
    pub fn text(text: impl Into<String>) -> Source {
        Source {
            text: Some(text.into()),
            ..Source::default()
        }
    }

    pub fn path(path: impl Into<PathBuf>) -> Source {
        Source {
            path: Some(path.into()),
            ..Source::default()
        }
    }

    /// Joins a relative `path` onto `base`.
    pub fn resolve(&self, base: &Path) -> Source {
        let mut out = self.clone();
        if let Some(p) = &self.path {
            out.path = Some(base.join(p));
        }
        out
    }

    pub fn to_payload(&self, modality: Modality) -> Result<Payload> {
        match (&self.text, &self.path, &self.values) {
            (Some(text), None, None) => {
                ensure!(!modality.is_media(), "{modality} input must be given as a `path`");
                Ok(literal(modality, text.clone()))
            }
            (None, Some(path), None) => {
                if modality.is_media() {
                    ensure!(path.is_file(), "no such file: {}", path.display());
                    Ok(media(modality, path.clone()))
                } else {
                    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    Ok(literal(modality, text))
                }
            }
            (None, None, Some(values)) => {
                ensure!(modality == Modality::TimeSeries, "`values` is only allowed for timeseries input");
                ensure!(values.iter().all(|v| v.is_finite()), "`values` must be finite numbers");
                Ok(Payload::SeriesValues(values.clone()))
            }
            _ => bail!("a source needs exactly one of `text`, `path` or `values`"),
        }
    }
}

fn literal(modality: Modality, text: String) -> Payload {
    match modality {
        Modality::Plan => Payload::Plan(text),
        Modality::TimeSeries => Payload::Series(text),
        _ => Payload::Text(text),
    }
}

fn media(modality: Modality, path: PathBuf) -> Payload {
    match modality {
        Modality::Image => Payload::ImageFile(path),
        _ => Payload::AudioFile(path),
    }
}

/// Interprets a command-line argument: an existing file is read (text-like
/// modalities) or decoded (media); anything else is a literal.
pub fn argument_payload(modality: Modality, arg: &str) -> Result<Payload> {
    let path = Path::new(arg);
    if path.is_file() {
        return Source::path(path).to_payload(modality);
    }
    ensure!(!modality.is_media(), "{modality} input must be a file, and `{arg}` is not one");
    Ok(literal(modality, arg.to_owned()))
}
