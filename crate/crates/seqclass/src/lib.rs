//! Binary text-sequence classification with an LSTM trained from scratch.
//!
//! The crate covers the full pipeline for classifying an implicit, domain-specific
//! dimension of a text (e.g. the perspective of a news article, or whether a
//! community question is informational or conversational):
//!
//! - [`corpus`]: JSONL dataset loading, signal composition, tokenization,
//!   vocabulary construction and fixed-length index encoding.
//! - [`embeddings`]: word vectors — random initialization, word2vec-text loading,
//!   and skip-gram negative-sampling pretraining on unlabeled text.
//! - [`lstm`]: the classifier itself — LSTM cell, forward unroll, sigmoid head,
//!   cross-entropy loss, full backpropagation through time, training loop, and
//!   the bidirectional variant.
//! - [`baselines`]: tf-idf features with logistic-regression and multinomial
//!   naive-Bayes classifiers, plus a top-n-gram feature selector.
//! - [`eval`]: per-class recall, rank-based ROC-AUC, stratified k-fold
//!   cross-validation, and per-source output-distribution statistics.
//! - [`persist`]: model and embedding serialization with exact round-trips.
//!
//! All training is deterministic given a seed.

pub mod baselines;
pub mod corpus;
pub mod embeddings;
pub mod eval;
pub mod lstm;
pub mod math;
pub mod persist;

pub use corpus::{Document, EncodedSequence, SignalSpec, Vocabulary};
pub use embeddings::EmbeddingMatrix;
pub use eval::MetricsReport;
pub use lstm::{LstmModel, ModelConfig};
