//! Flag definitions. Every value flag is optional here; defaults and the
//! optional JSON config file are merged in `config::resolve_*`, with explicit
//! flags always winning.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "seqclass",
    version,
    about = "LSTM and baseline classifiers for an implicit binary text dimension"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Pretrain skip-gram negative-sampling embeddings on an unlabeled JSONL dataset
    EmbedTrain(EmbedTrainArgs),
    /// Train the LSTM classifier and write a model file
    Train(TrainArgs),
    /// Evaluate a saved model on a labeled JSONL dataset
    Eval(EvalArgs),
    /// Stratified k-fold cross-validation of the LSTM pipeline
    Cv(CvArgs),
    /// Score documents with a saved model, writing per-document JSONL
    Predict(PredictArgs),
    /// Per-source output statistics over scored documents
    CorpusStats(CorpusStatsArgs),
    /// Train/evaluate a tf-idf or top-n-gram baseline (logreg or naive Bayes)
    Baseline(BaselineArgs),
}

#[derive(clap::Args, Debug)]
pub struct EmbedTrainArgs {
    /// JSONL dataset to pretrain on (labels not required)
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Text fields to use: title | body | title+body | title+body+ba
    #[arg(long)]
    pub signal: Option<String>,
    /// Embedding dimensionality
    #[arg(long)]
    pub dim: Option<usize>,
    /// Context window size
    #[arg(long)]
    pub window: Option<usize>,
    /// Negative samples per (center, context) pair
    #[arg(long)]
    pub negatives: Option<usize>,
    /// Training epochs
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Learning rate
    #[arg(long)]
    pub lr: Option<f64>,
    /// Minimum token count for the vocabulary
    #[arg(long)]
    pub min_count: Option<u64>,
    /// Maximum vocabulary size (specials included)
    #[arg(long)]
    pub max_vocab: Option<usize>,
    /// Output path for word2vec-text vectors
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(clap::Args, Debug)]
pub struct TrainArgs {
    /// Labeled JSONL training dataset
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Text fields to use: title | body | title+body | title+body+ba
    #[arg(long)]
    pub signal: Option<String>,
    /// LSTM memory size H
    #[arg(long)]
    pub hidden: Option<usize>,
    /// Word cutoff (tokens kept from the start; also the unroll depth)
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Mini-batch size
    #[arg(long)]
    pub batch: Option<usize>,
    /// Training epochs
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Learning rate
    #[arg(long)]
    pub lr: Option<f64>,
    /// Optimizer: adam | sgd
    #[arg(long)]
    pub optimizer: Option<String>,
    /// Embedding source: integrated | pretrained:PATH | sgns-train
    #[arg(long)]
    pub embeddings: Option<String>,
    /// Embedding dimensionality
    #[arg(long)]
    pub dim: Option<usize>,
    /// Use the bidirectional architecture
    #[arg(long)]
    pub bidirectional: bool,
    /// Minimum token count for the vocabulary
    #[arg(long)]
    pub min_count: Option<u64>,
    /// Maximum vocabulary size (specials included)
    #[arg(long)]
    pub max_vocab: Option<usize>,
    /// Classification threshold
    #[arg(long)]
    pub threshold: Option<f64>,
    /// SGNS window (sgns-train mode)
    #[arg(long)]
    pub window: Option<usize>,
    /// SGNS negatives (sgns-train mode)
    #[arg(long)]
    pub negatives: Option<usize>,
    /// SGNS epochs (sgns-train mode)
    #[arg(long)]
    pub sgns_epochs: Option<usize>,
    /// SGNS learning rate (sgns-train mode)
    #[arg(long)]
    pub sgns_lr: Option<f64>,
    /// Output path for the model file
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Optional path for the per-epoch loss history JSON
    #[arg(long)]
    pub history: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(clap::Args, Debug)]
pub struct EvalArgs {
    /// Saved model file
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Labeled JSONL dataset to evaluate on
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Signal override (defaults to the signal stored in the model file)
    #[arg(long)]
    pub signal: Option<String>,
    /// Output path for the metrics JSON
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(clap::Args, Debug)]
pub struct CvArgs {
    /// Labeled JSONL dataset
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Text fields to use
    #[arg(long)]
    pub signal: Option<String>,
    /// Number of folds
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub hidden: Option<usize>,
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long)]
    pub batch: Option<usize>,
    #[arg(long)]
    pub epochs: Option<usize>,
    #[arg(long)]
    pub lr: Option<f64>,
    #[arg(long)]
    pub optimizer: Option<String>,
    #[arg(long)]
    pub embeddings: Option<String>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub bidirectional: bool,
    #[arg(long)]
    pub min_count: Option<u64>,
    #[arg(long)]
    pub max_vocab: Option<usize>,
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub negatives: Option<usize>,
    #[arg(long)]
    pub sgns_epochs: Option<usize>,
    #[arg(long)]
    pub sgns_lr: Option<f64>,
    /// Output path for the cross-validation report JSON
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(clap::Args, Debug)]
pub struct PredictArgs {
    /// Saved model file
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// JSONL dataset to score (labels optional)
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Signal override (defaults to the signal stored in the model file)
    #[arg(long)]
    pub signal: Option<String>,
    /// Output path for per-document JSONL
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(clap::Args, Debug)]
pub struct CorpusStatsArgs {
    /// Scored JSONL (objects with "source" and "probability" keys)
    #[arg(long)]
    pub scores: Option<PathBuf>,
    /// Threshold separating the two leanings
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Output path for the per-source statistics JSON
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(clap::Args, Debug)]
pub struct BaselineArgs {
    /// Labeled JSONL training dataset
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Held-out labeled JSONL for train/test evaluation
    #[arg(long)]
    pub test: Option<PathBuf>,
    /// Cross-validate with k folds instead of a held-out set
    #[arg(long)]
    pub k: Option<usize>,
    /// Classifier: logreg | nb
    #[arg(long)]
    pub classifier: Option<String>,
    /// Features: tfidf | harper (binary top-n-gram presence)
    #[arg(long)]
    pub features: Option<String>,
    /// n-grams kept per class in harper mode
    #[arg(long)]
    pub top_k: Option<usize>,
    /// Inverse of the l2 regularization strength (logreg)
    #[arg(long)]
    pub c: Option<f64>,
    /// Maximum solver iterations (logreg)
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Laplace smoothing (naive Bayes)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Text fields to use
    #[arg(long)]
    pub signal: Option<String>,
    /// Output path for the metrics JSON
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(clap::Args, Debug)]
pub struct CommonArgs {
    /// JSON config merged under explicit flags (a run manifest also works)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// RNG seed (falls back to $SEQCLASS_SEED, then 42)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Manifest path (default: "<output>.manifest.json")
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}
