//! Keyed time series parsed from free text, and the two series metrics.

use indexmap::IndexMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesParseError {
    #[error("value for key `{key}` is not a number: `{value}`")]
    NotANumber { key: String, value: String },
    #[error("entry `{entry}` has no `key: value` separator")]
    MissingSeparator { entry: String },
    #[error("entry `{entry}` has an empty key")]
    EmptyKey { entry: String },
}

/// A repeated key; the later value replaced the earlier one.
#[derive(Debug, Clone, PartialEq)]
pub struct DuplicateKey {
    pub key: String,
    pub replaced: f64,
    pub value: f64,
}

/// Ordered `(key, value)` points with unique keys and finite values.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TimeSeries {
    points: IndexMap<String, f64>,
}

impl TimeSeries {
    /// Keys become `"0"`, `"1"`, ...
    pub fn from_values(values: &[f64]) -> Self {
        Self {
            points: values.iter().enumerate().map(|(i, &v)| (i.to_string(), v)).collect(),
        }
    }

    /// Builds a series from pairs; a repeated key keeps its first position and
    /// takes the last value.
    pub fn from_pairs<K: Into<String>>(pairs: impl IntoIterator<Item = (K, f64)>) -> Self {
        let mut points = IndexMap::new();
        for (k, v) in pairs {
            points.insert(k.into(), v);
        }
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.points.get(key).copied()
    }

    pub fn points(&self) -> impl Iterator<Item = (&str, f64)> {
        self.points.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn values(&self) -> Vec<f64> {
        self.points.values().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedSeries {
    pub series: TimeSeries,
    pub warnings: Vec<DuplicateKey>,
}

/// Signed integer or decimal: `12`, `-3`, `+2.5`, `.5`, `7.`.
fn parse_number(raw: &str) -> Option<f64> {
    let body = raw.strip_prefix(['+', '-']).unwrap_or(raw);
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (body, None),
    };
    let digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    let ok = digits(int) && frac.map_or(true, digits) && (!int.is_empty() || frac.is_some_and(|f| !f.is_empty()));
    if !ok {
        return None;
    }
    raw.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parses `"mon: 120, tue: 135"` or a bare list `"1, 2.5, -3"`. Entries are
/// separated by commas or newlines; one pair of enclosing brackets is
/// ignored. If any entry contains `:`, every entry must be a pair.
pub fn parse_timeseries(text: &str) -> Result<ParsedSeries, SeriesParseError> {
    let mut body = text.trim();
    if let Some(inner) = body.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
        body = inner;
    }
    let entries: Vec<&str> = body
        .split([',', '\n'])
        .map(str::trim)
        .filter(|e| !e.is_empty())
        .collect();
    let keyed = entries.iter().any(|e| e.contains(':'));

    let mut points: IndexMap<String, f64> = IndexMap::new();
    let mut warnings = Vec::new();
    for (index, entry) in entries.iter().enumerate() {
        let (key, raw) = if keyed {
            let (k, v) = entry.split_once(':').ok_or_else(|| SeriesParseError::MissingSeparator {
                entry: entry.to_string(),
            })?;
            let k = k.trim().trim_matches(['"', '\'']).trim();
            if k.is_empty() {
                return Err(SeriesParseError::EmptyKey { entry: entry.to_string() });
            }
            (k.to_owned(), v.trim())
        } else {
            (index.to_string(), *entry)
        };
        let value = parse_number(raw).ok_or_else(|| SeriesParseError::NotANumber {
            key: key.clone(),
            value: raw.to_owned(),
        })?;
        if let Some(replaced) = points.insert(key.clone(), value) {
            warnings.push(DuplicateKey { key, replaced, value });
        }
    }
    Ok(ParsedSeries {
        series: TimeSeries { points },
        warnings,
    })
}

/// Mean per-key agreement over the union of keys.
///
/// A key in both series scores `1 - |c - r| / max(|c|, |r|)` floored at 0
/// (two zeros score 1); a key in only one series scores 0.
pub fn timeseries_element_diff(candidate: &TimeSeries, reference: &TimeSeries) -> f64 {
    let mut keys: Vec<&str> = candidate.points.keys().map(String::as_str).collect();
    keys.extend(reference.points.keys().map(String::as_str).filter(|k| !candidate.points.contains_key(*k)));
    if keys.is_empty() {
        return 1.0;
    }
    let total: f64 = keys
        .iter()
        .map(|k| match (candidate.get(k), reference.get(k)) {
            (Some(c), Some(r)) => key_similarity(c, r),
            _ => 0.0,
        })
        .sum();
    total / keys.len() as f64
}

fn key_similarity(c: f64, r: f64) -> f64 {
    let scale = c.abs().max(r.abs());
    if scale == 0.0 {
        return 1.0;
    }
    (1.0 - (c - r).abs() / scale).max(0.0)
}

/// Cost and cell count of the cheapest monotone warping path between two
/// value sequences, using `|a_i - b_j|` cell costs. Among equally cheap paths
/// the shortest is taken. `None` if either side is empty.
pub fn dtw_path(a: &[f64], b: &[f64]) -> Option<(f64, usize)> {
    if a.is_empty() || b.is_empty() {
        return None;
    }
    let better = |x: (f64, usize), y: (f64, usize)| if y.0 < x.0 || (y.0 == x.0 && y.1 < x.1) { y } else { x };
    let m = b.len();
    let mut prev: Vec<(f64, usize)> = vec![(f64::INFINITY, 0); m];
    let mut cur = prev.clone();
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            let best = if i == 0 && j == 0 {
                (0.0, 0)
            } else {
                let mut best = (f64::INFINITY, usize::MAX);
                if i > 0 {
                    best = better(best, prev[j]);
                    if j > 0 {
                        best = better(best, prev[j - 1]);
                    }
                }
                if j > 0 {
                    best = better(best, cur[j - 1]);
                }
                best
            };
            cur[j] = (best.0 + (x - y).abs(), best.1 + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Some(prev[m - 1])
}

/// `1 / (1 + D / L)` for optimal warping cost `D` over path length `L`.
/// Keys are ignored.
pub fn timeseries_dtw(candidate: &TimeSeries, reference: &TimeSeries) -> f64 {
    match (candidate.is_empty(), reference.is_empty()) {
        (true, true) => return 1.0,
        (true, false) | (false, true) => return 0.0,
        _ => {}
    }
    let (cost, len) = dtw_path(&candidate.values(), &reference.values()).expect("both series nonempty");
    1.0 / (1.0 + cost / len as f64)
}
