//! Greedy-matching embedding similarity (BERTScore F1) over a pluggable
//! token embedder.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

#[derive(Debug, Clone, thiserror::Error)]
#[error("{message} (tokens: {})", context.join(" "))]
pub struct EmbeddingError {
    pub message: String,
    pub context: Vec<String>,
}

/// Maps a token sequence to one unit-norm vector per token.
///
/// Implementations must be deterministic and callable from several threads
/// at once.
pub trait EmbeddingProvider: Send + Sync {
    fn dimension(&self) -> usize;

    fn embed(&self, tokens: &[String]) -> Result<Vec<Vec<f64>>, EmbeddingError>;
}

/// Context-free stand-in for a contextual encoder: every token gets a fixed
/// pseudorandom unit vector seeded from a hash of its text.
#[derive(Debug, Clone)]
pub struct HashEmbedding {
    dimension: usize,
}

impl HashEmbedding {
    pub const DEFAULT_DIMENSION: usize = 64;

    /// Panics if `dimension < 8`.
    pub fn new(dimension: usize) -> Self {
        assert!(dimension >= 8, "embedding dimension must be at least 8");
        Self { dimension }
    }

    pub fn vector(&self, token: &str) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(fnv1a(token.as_bytes()));
        loop {
            let v: Vec<f64> = (0..self.dimension).map(|_| StandardNormal.sample(&mut rng)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 {
                return v.into_iter().map(|x| x / norm).collect();
            }
        }
    }
}

impl Default for HashEmbedding {
    fn default() -> Self {
        Self::new(Self::DEFAULT_DIMENSION)
    }
}

impl EmbeddingProvider for HashEmbedding {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn embed(&self, tokens: &[String]) -> Result<Vec<Vec<f64>>, EmbeddingError> {
        Ok(tokens.iter().map(|t| self.vector(t)).collect())
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0100_0000_01b3);
    }
    hash
}

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// BERTScore F1 with greedy matching and cosines clamped to `[0, 1]`;
/// no idf weighting, no baseline rescaling.
pub fn embedding_score(
    candidate: &[String],
    reference: &[String],
    provider: &dyn EmbeddingProvider,
) -> Result<f64, EmbeddingError> {
    match (candidate.is_empty(), reference.is_empty()) {
        (true, true) => return Ok(1.0),
        (true, false) | (false, true) => return Ok(0.0),
        _ => {}
    }
    let cand = embed_checked(provider, candidate)?;
    let refv = embed_checked(provider, reference)?;
    let sim: Vec<Vec<f64>> = cand
        .iter()
        .map(|c| refv.iter().map(|r| cosine(c, r).clamp(0.0, 1.0)).collect())
        .collect();
    let precision = sim
        .iter()
        .map(|row| row.iter().copied().fold(0.0, f64::max))
        .sum::<f64>()
        / cand.len() as f64;
    let recall = (0..refv.len())
        .map(|j| sim.iter().map(|row| row[j]).fold(0.0, f64::max))
        .sum::<f64>()
        / refv.len() as f64;
    if precision + recall == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * precision * recall / (precision + recall))
}

fn embed_checked(provider: &dyn EmbeddingProvider, tokens: &[String]) -> Result<Vec<Vec<f64>>, EmbeddingError> {
    let vectors = provider.embed(tokens).map_err(|mut e| {
        if e.context.is_empty() {
            e.context = tokens.to_vec();
        }
        e
    })?;
    if vectors.len() != tokens.len() {
        return Err(EmbeddingError {
            message: format!("provider returned {} vectors for {} tokens", vectors.len(), tokens.len()),
            context: tokens.to_vec(),
        });
    }
    let dim = provider.dimension();
    if let Some(bad) = vectors.iter().position(|v| v.len() != dim) {
        return Err(EmbeddingError {
            message: format!("vector {bad} has dimension {}, expected {dim}", vectors[bad].len()),
            context: tokens.to_vec(),
        });
    }
    Ok(vectors)
}
