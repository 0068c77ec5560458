//! Bag-of-words similarities: Jaccard, Jensen-Shannon, TF-IDF cosine.

use std::collections::{BTreeMap, BTreeSet};

/// Relative token frequencies. Ordered so that sums over the support are
/// reproducible bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct UnigramDistribution {
    probabilities: BTreeMap<String, f64>,
}

impl UnigramDistribution {
    pub fn from_tokens(tokens: &[String]) -> Self {
        let counts = term_counts(tokens);
        let total = tokens.len() as f64;
        let probabilities = counts
            .into_iter()
            .map(|(token, count)| (token.to_owned(), count as f64 / total))
            .collect();
        Self { probabilities }
    }

    pub fn probability(&self, token: &str) -> f64 {
        self.probabilities.get(token).copied().unwrap_or(0.0)
    }

    pub fn vocabulary(&self) -> impl Iterator<Item = &str> {
        self.probabilities.keys().map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }
}

fn term_counts(tokens: &[String]) -> BTreeMap<&str, usize> {
    let mut counts = BTreeMap::new();
    for token in tokens {
        *counts.entry(token.as_str()).or_insert(0) += 1;
    }
    counts
}

pub fn jaccard(candidate: &[String], reference: &[String]) -> f64 {
    let a: BTreeSet<&str> = candidate.iter().map(String::as_str).collect();
    let b: BTreeSet<&str> = reference.iter().map(String::as_str).collect();
    let union = a.union(&b).count();
    if union == 0 {
        return 1.0;
    }
    a.intersection(&b).count() as f64 / union as f64
}

/// Jensen-Shannon divergence in bits, so it lies in `[0, 1]`.
pub fn js_divergence(p: &UnigramDistribution, q: &UnigramDistribution) -> f64 {
    let support: BTreeSet<&str> = p.vocabulary().chain(q.vocabulary()).collect();
    let (mut kl_p, mut kl_q) = (0.0, 0.0);
    for token in support {
        let (pi, qi) = (p.probability(token), q.probability(token));
        let mi = 0.5 * (pi + qi);
        if pi > 0.0 {
            kl_p += pi * (pi / mi).log2();
        }
        if qi > 0.0 {
            kl_q += qi * (qi / mi).log2();
        }
    }
    0.5 * (kl_p + kl_q)
}

/// `1 - JSD` of the two unigram distributions.
pub fn js_divergence_score(candidate: &[String], reference: &[String]) -> f64 {
    match (candidate.is_empty(), reference.is_empty()) {
        (true, true) => 1.0,
        (true, false) | (false, true) => 0.0,
        _ => {
            let p = UnigramDistribution::from_tokens(candidate);
            let q = UnigramDistribution::from_tokens(reference);
            1.0 - js_divergence(&p, &q)
        }
    }
}

/// Cosine of raw-count TF-IDF vectors, with the two inputs as the whole
/// corpus and smoothed idf `ln((1 + N) / (1 + df)) + 1`.
pub fn cosine_tfidf(candidate: &[String], reference: &[String]) -> f64 {
    match (candidate.is_empty(), reference.is_empty()) {
        (true, true) => return 1.0,
        (true, false) | (false, true) => return 0.0,
        _ => {}
    }
    const DOCS: f64 = 2.0;
    let a = term_counts(candidate);
    let b = term_counts(reference);
    let vocabulary: BTreeSet<&str> = a.keys().chain(b.keys()).copied().collect();
    let (mut dot, mut norm_a, mut norm_b) = (0.0, 0.0, 0.0);
    for term in vocabulary {
        let ca = a.get(term).copied().unwrap_or(0) as f64;
        let cb = b.get(term).copied().unwrap_or(0) as f64;
        let df = f64::from(u8::from(ca > 0.0) + u8::from(cb > 0.0));
        let idf = ((1.0 + DOCS) / (1.0 + df)).ln() + 1.0;
        let (wa, wb) = (ca * idf, cb * idf);
        dot += wa * wb;
        norm_a += wa * wa;
        norm_b += wb * wb;
    }
    if norm_a == 0.0 || norm_b == 0.0 {
        return 0.0;
    }
    dot / (norm_a.sqrt() * norm_b.sqrt())
}
