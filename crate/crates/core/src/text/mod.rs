//! Text metrics. Token-based metrics take the output of [`tokenize`];
//! the character-level ones take raw strings.

mod edit;
mod embedding;
mod ngram;
mod overlap;
mod tokenize;

pub use edit::{levenshtein_score, matched_characters, sequence_matcher_score};
pub use embedding::{embedding_score, EmbeddingError, EmbeddingProvider, HashEmbedding};
pub use ngram::{bleu, rouge, RougeVariant, UnknownRougeVariant};
pub use overlap::{cosine_tfidf, jaccard, js_divergence, js_divergence_score, UnigramDistribution};
pub use tokenize::tokenize;
