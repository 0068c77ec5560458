//! BLEU and ROUGE over token sequences.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::align::lcs_length;

fn ngram_counts(tokens: &[String], n: usize) -> HashMap<&[String], usize> {
    let mut counts = HashMap::new();
    if n > 0 && tokens.len() >= n {
        for gram in tokens.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// Sum over shared n-grams of `min(candidate count, reference count)`.
fn clipped_overlap(candidate: &HashMap<&[String], usize>, reference: &HashMap<&[String], usize>) -> usize {
    candidate
        .iter()
        .map(|(gram, &c)| c.min(reference.get(gram).copied().unwrap_or(0)))
        .sum()
}

const BLEU_ORDER: usize = 4;

/// Sentence BLEU-4 with uniform weights.
///
/// Precisions of order 2 and above with no matches use add-one smoothing on
/// both numerator and denominator; no unigram match gives 0.
pub fn bleu(candidate: &[String], reference: &[String]) -> f64 {
    match (candidate.is_empty(), reference.is_empty()) {
        (true, true) => return 1.0,
        (true, false) | (false, true) => return 0.0,
        _ => {}
    }
    let mut log_sum = 0.0;
    for n in 1..=BLEU_ORDER {
        let cand = ngram_counts(candidate, n);
        let refc = ngram_counts(reference, n);
        let matched = clipped_overlap(&cand, &refc);
        let total = candidate.len().saturating_sub(n - 1);
        let precision = if matched > 0 {
            matched as f64 / total as f64
        } else if n == 1 {
            return 0.0;
        } else {
            1.0 / (total as f64 + 1.0)
        };
        log_sum += precision.ln() / BLEU_ORDER as f64;
    }
    let c = candidate.len() as f64;
    let r = reference.len() as f64;
    let brevity = if c < r { (1.0 - r / c).exp() } else { 1.0 };
    brevity * log_sum.exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RougeVariant {
    Rouge1,
    Rouge2,
    RougeL,
}

impl RougeVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            RougeVariant::Rouge1 => "rouge1",
            RougeVariant::Rouge2 => "rouge2",
            RougeVariant::RougeL => "rougeL",
        }
    }
}

impl fmt::Display for RougeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown ROUGE variant `{0}` (expected rouge1, rouge2 or rougeL)")]
pub struct UnknownRougeVariant(pub String);

impl FromStr for RougeVariant {
    type Err = UnknownRougeVariant;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rouge1" => Ok(RougeVariant::Rouge1),
            "rouge2" => Ok(RougeVariant::Rouge2),
            "rougeL" => Ok(RougeVariant::RougeL),
            other => Err(UnknownRougeVariant(other.to_owned())),
        }
    }
}

fn f1(overlap: usize, candidate_total: usize, reference_total: usize) -> f64 {
    if overlap == 0 {
        return 0.0;
    }
    let p = overlap as f64 / candidate_total as f64;
    let r = overlap as f64 / reference_total as f64;
    2.0 * p * r / (p + r)
}

/// ROUGE F1.
///
/// When neither side has any n-gram of the requested order (for example two
/// one-word texts under rouge2) the score is 1 for equal token sequences and
/// 0 otherwise.
pub fn rouge(candidate: &[String], reference: &[String], variant: RougeVariant) -> f64 {
    match (candidate.is_empty(), reference.is_empty()) {
        (true, true) => return 1.0,
        (true, false) | (false, true) => return 0.0,
        _ => {}
    }
    match variant {
        RougeVariant::Rouge1 | RougeVariant::Rouge2 => {
            let n = if variant == RougeVariant::Rouge1 { 1 } else { 2 };
            let cand_total = candidate.len().saturating_sub(n - 1);
            let ref_total = reference.len().saturating_sub(n - 1);
            if cand_total == 0 && ref_total == 0 {
                return if candidate == reference { 1.0 } else { 0.0 };
            }
            if cand_total == 0 || ref_total == 0 {
                return 0.0;
            }
            let overlap = clipped_overlap(&ngram_counts(candidate, n), &ngram_counts(reference, n));
            f1(overlap, cand_total, ref_total)
        }
        RougeVariant::RougeL => f1(lcs_length(candidate, reference), candidate.len(), reference.len()),
    }
}
