//! Word-vector subsystem: random (integrated) initialization, loading external
//! pretrained vectors in word2vec text format, and skip-gram negative-sampling
//! (SGNS) pretraining on unlabeled text.
//!
//! Pretrained vectors are used as weight initialization only; they stay
//! trainable so the classifier can fine-tune them.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::corpus::{Vocabulary, PAD_INDEX};
use crate::math::{dot, log_sigmoid, sigmoid};

const INIT_RANGE: f64 = 0.05;
const NOISE_POWER: f64 = 0.75;

#[derive(Debug, Error)]
pub enum EmbeddingError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("dimension mismatch: expected {expected}, file has {found} (line {line})")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        line: usize,
    },
    #[error("line {line}: malformed vector line: {message}")]
    MalformedLine { line: usize, message: String },
    #[error("corpus contains no tokens")]
    EmptyCorpus,
    #[error("word {0:?} is not in the vocabulary")]
    UnknownWord(String),
}

/// V×d matrix of word vectors; row r is the vector of vocabulary index r.
/// The PAD row is all-zeros and is never updated.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    data: Vec<f64>,
    vocab_size: usize,
    dim: usize,
    pub trainable: bool,
}

impl EmbeddingMatrix {
    pub fn zeros(vocab_size: usize, dim: usize) -> Self {
        EmbeddingMatrix {
            data: vec![0.0; vocab_size * dim],
            vocab_size,
            dim,
            trainable: true,
        }
    }

    pub fn from_data(vocab_size: usize, dim: usize, data: Vec<f64>, trainable: bool) -> Self {
        assert_eq!(data.len(), vocab_size * dim, "embedding data length mismatch");
        EmbeddingMatrix {
            data,
            vocab_size,
            dim,
            trainable,
        }
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab_size
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }
}

/// SGNS pretraining configuration. `dim` defaults to 300.
#[derive(Debug, Clone, PartialEq)]
pub struct SgnsConfig {
    pub dim: usize,
    pub window: usize,
    pub negatives: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub seed: u64,
}

impl Default for SgnsConfig {
    fn default() -> Self {
        SgnsConfig {
            dim: 300,
            window: 5,
            negatives: 5,
            epochs: 5,
            learning_rate: 0.025,
            seed: 42,
        }
    }
}

impl SgnsConfig {
    pub fn validate(&self) {
        assert!(self.dim >= 1, "dim must be >= 1");
        assert!(self.window >= 1, "window must be >= 1");
        assert!(self.negatives >= 1, "negatives must be >= 1");
        assert!(self.learning_rate > 0.0, "learning_rate must be positive");
    }
}

/// Rows drawn uniformly from [-0.05, 0.05] with a seeded generator; the PAD
/// row stays zero. Deterministic given (vocab, dim, seed).
pub fn init_random(vocab: &Vocabulary, dim: usize, seed: u64) -> EmbeddingMatrix {
    assert!(dim >= 1, "dim must be >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut matrix = EmbeddingMatrix::zeros(vocab.len(), dim);
    for r in 0..vocab.len() {
        if r == PAD_INDEX {
            continue;
        }
        for v in matrix.row_mut(r) {
            *v = rng.gen_range(-INIT_RANGE..INIT_RANGE);
        }
    }
    matrix
}

/// Result of [`load_pretrained`]: the matrix plus how much of the (non-special)
/// vocabulary the file covered.
#[derive(Debug, Clone)]
pub struct PretrainedLoad {
    pub matrix: EmbeddingMatrix,
    /// Fraction of non-special vocabulary tokens found in the file.
    pub coverage: f64,
    pub loaded: usize,
}

/// Loads word2vec-text vectors for in-vocabulary words; vocabulary words absent
/// from the file keep their [`init_random`] rows. The file's optional header
/// line is `"V d"`. The PAD row is never overwritten.
pub fn load_pretrained(
    path: &Path,
    vocab: &Vocabulary,
    dim: usize,
    seed: u64,
) -> Result<PretrainedLoad, EmbeddingError> {
    let file = File::open(path).map_err(|source| EmbeddingError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let reader = BufReader::new(file);
    let mut matrix = init_random(vocab, dim, seed);
    let mut loaded_rows: Vec<bool> = vec![false; vocab.len()];
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| EmbeddingError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if line_no == 1 && fields.len() == 2 {
            if let (Ok(_), Ok(file_dim)) =
                (fields[0].parse::<usize>(), fields[1].parse::<usize>())
            {
                if file_dim != dim {
                    return Err(EmbeddingError::DimensionMismatch {
                        expected: dim,
                        found: file_dim,
                        line: line_no,
                    });
                }
                continue;
            }
        }
        if fields.len() < 2 {
            return Err(EmbeddingError::MalformedLine {
                line: line_no,
                message: "expected a token followed by vector components".into(),
            });
        }
        let token = fields[0];
        let values = &fields[1..];
        if values.len() != dim {
            return Err(EmbeddingError::DimensionMismatch {
                expected: dim,
                found: values.len(),
                line: line_no,
            });
        }
        let Some(index) = vocab.index_of(token) else {
            continue;
        };
        if index == PAD_INDEX {
            continue;
        }
        let row = matrix.row_mut(index);
        for (slot, raw) in row.iter_mut().zip(values) {
            *slot = raw.parse::<f64>().map_err(|e| EmbeddingError::MalformedLine {
                line: line_no,
                message: format!("bad float {raw:?}: {e}"),
            })?;
        }
        loaded_rows[index] = true;
    }
    let total_words = vocab.len() - crate::corpus::NUM_SPECIALS;
    let loaded = loaded_rows
        .iter()
        .enumerate()
        .filter(|&(i, &l)| l && !Vocabulary::is_special_index(i))
        .count();
    let coverage = if total_words == 0 {
        1.0
    } else {
        loaded as f64 / total_words as f64
    };
    Ok(PretrainedLoad {
        matrix,
        coverage,
        loaded,
    })
}

/// Trained input-side vectors plus the mean logistic loss of each epoch.
#[derive(Debug, Clone)]
pub struct SgnsOutcome {
    pub embeddings: EmbeddingMatrix,
    pub epoch_losses: Vec<f64>,
}

// Logistic loss and gradient coefficient for one (center, context) update.
// grad wrt w is g*c and wrt c is g*w.
fn sgns_pair(w: &[f64], c: &[f64], label: f64) -> (f64, f64) {
    let score = dot(w, c);
    let g = sigmoid(score) - label;
    let loss = if label == 1.0 {
        -log_sigmoid(score)
    } else {
        -log_sigmoid(-score)
    };
    (loss, g)
}

// Cumulative unigram^(3/4) table over token indices with nonzero corpus count.
struct NoiseTable {
    indices: Vec<usize>,
    cumulative: Vec<f64>,
    total: f64,
}

impl NoiseTable {
    fn build(counts: &HashMap<usize, u64>) -> NoiseTable {
        let mut entries: Vec<(usize, u64)> =
            counts.iter().map(|(&i, &c)| (i, c)).collect();
        entries.sort_unstable_by_key(|&(i, _)| i);
        let mut indices = Vec::with_capacity(entries.len());
        let mut cumulative = Vec::with_capacity(entries.len());
        let mut total = 0.0;
        for (index, count) in entries {
            total += (count as f64).powf(NOISE_POWER);
            indices.push(index);
            cumulative.push(total);
        }
        NoiseTable {
            indices,
            cumulative,
            total,
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        let u = rng.gen_range(0.0..self.total);
        let pos = self.cumulative.partition_point(|&c| c <= u);
        self.indices[pos.min(self.indices.len() - 1)]
    }
}

/// Skip-gram negative-sampling training over a tokenized corpus.
///
/// For every center word and every context word within `window`, applies one
/// positive logistic update and `negatives` negative updates drawn from the
/// unigram^(3/4) distribution. Returns the input-side matrix. Deterministic
/// given the config seed; with `epochs == 0` the matrix equals its
/// [`init_random`] initialization.
pub fn train_sgns(
    corpus: &[Vec<String>],
    vocab: &Vocabulary,
    config: &SgnsConfig,
) -> Result<SgnsOutcome, EmbeddingError> {
    config.validate();
    let sentences: Vec<Vec<usize>> = corpus
        .iter()
        .map(|doc| doc.iter().map(|t| vocab.encode_token(t)).collect())
        .filter(|s: &Vec<usize>| !s.is_empty())
        .collect();
    if sentences.is_empty() {
        return Err(EmbeddingError::EmptyCorpus);
    }
    let mut counts: HashMap<usize, u64> = HashMap::new();
    for sentence in &sentences {
        for &index in sentence {
            *counts.entry(index).or_insert(0) += 1;
        }
    }
    counts.remove(&PAD_INDEX);
    let noise = NoiseTable::build(&counts);

    let mut input = init_random(vocab, config.dim, config.seed);
    let mut context_side = EmbeddingMatrix::zeros(vocab.len(), config.dim);
    // Separate stream from the init draw so row values match init_random exactly.
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5347_4e53);
    let lr = config.learning_rate;
    let mut epoch_losses = Vec::with_capacity(config.epochs);
    let mut grad_w = vec![0.0; config.dim];

    for _ in 0..config.epochs {
        let mut loss_sum = 0.0;
        let mut updates = 0u64;
        for sentence in &sentences {
            for (t, &center) in sentence.iter().enumerate() {
                let lo = t.saturating_sub(config.window);
                let hi = (t + config.window).min(sentence.len() - 1);
                for ctx_pos in lo..=hi {
                    if ctx_pos == t {
                        continue;
                    }
                    let positive = sentence[ctx_pos];
                    grad_w.iter_mut().for_each(|v| *v = 0.0);
                    // Positive update; grad wrt w accumulated so the center row
                    // moves once per (center, context) pair.
                    {
                        let w = input.row(center);
                        let (loss, g) = sgns_pair(w, context_side.row(positive), 1.0);
                        loss_sum += loss;
                        updates += 1;
                        for (gw, &cv) in grad_w.iter_mut().zip(context_side.row(positive)) {
                            *gw += g * cv;
                        }
                        let w_copy: Vec<f64> = w.to_vec();
                        for (cv, &wv) in context_side.row_mut(positive).iter_mut().zip(&w_copy)
                        {
                            *cv -= lr * g * wv;
                        }
                    }
                    for _ in 0..config.negatives {
                        let negative = noise.sample(&mut rng);
                        let w = input.row(center);
                        let (loss, g) = sgns_pair(w, context_side.row(negative), 0.0);
                        loss_sum += loss;
                        updates += 1;
                        for (gw, &cv) in grad_w.iter_mut().zip(context_side.row(negative)) {
                            *gw += g * cv;
                        }
                        let w_copy: Vec<f64> = w.to_vec();
                        for (cv, &wv) in context_side.row_mut(negative).iter_mut().zip(&w_copy)
                        {
                            *cv -= lr * g * wv;
                        }
                    }
                    for (wv, &gw) in input.row_mut(center).iter_mut().zip(&grad_w) {
                        *wv -= lr * gw;
                    }
                }
            }
        }
        epoch_losses.push(if updates == 0 {
            0.0
        } else {
            loss_sum / updates as f64
        });
    }
    input.trainable = true;
    Ok(SgnsOutcome {
        embeddings: input,
        epoch_losses,
    })
}

fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let na = dot(a, a).sqrt();
    let nb = dot(b, b).sqrt();
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot(a, b) / (na * nb)
    }
}

/// Top-k non-special tokens by cosine similarity to `word`, excluding the query
/// itself; ties break lexicographically.
pub fn cosine_neighbors(
    matrix: &EmbeddingMatrix,
    vocab: &Vocabulary,
    word: &str,
    k: usize,
) -> Result<Vec<(String, f64)>, EmbeddingError> {
    assert!(k >= 1, "k must be >= 1");
    let query = vocab
        .index_of(word)
        .ok_or_else(|| EmbeddingError::UnknownWord(word.to_string()))?;
    let query_row = matrix.row(query);
    let mut scored: Vec<(String, f64)> = (crate::corpus::NUM_SPECIALS..vocab.len())
        .filter(|&i| i != query)
        .map(|i| {
            (
                vocab.token_at(i).unwrap().to_string(),
                cosine(query_row, matrix.row(i)),
            )
        })
        .collect();
    scored.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.0.cmp(&b.0))
    });
    scored.truncate(k);
    Ok(scored)
}
