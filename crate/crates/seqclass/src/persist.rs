//! Model and embedding serialization.
//!
//! A model file is a text header followed by raw numerics, so it is both
//! inspectable and bit-exact:
//!
//! ```text
//! SEQCLASS-MODEL 1\n
//! {manifest JSON: config, vocabulary, array shapes}\n
//! <little-endian f64 arrays in declared order>
//! ```
//!
//! Embeddings interchange as word2vec text (`save_embeddings_text` /
//! `embeddings::load_pretrained`) with 17-significant-digit decimals, which
//! round-trip `f64` exactly.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{SignalSpec, Vocabulary, NUM_SPECIALS};
use crate::embeddings::EmbeddingMatrix;
use crate::lstm::{ClassifierHead, GateParams, LstmModel, LstmParams, ModelConfig};
use crate::math::Mat;

const MAGIC: &str = "SEQCLASS-MODEL";
const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum PersistError {
    #[error("failed to access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("unsupported model file version {found}")]
    Version { found: String },
    #[error("malformed model file: {0}")]
    Malformed(String),
    #[error("model file truncated: expected {expected} payload bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

#[derive(Debug, Serialize, Deserialize)]
struct ArraySpec {
    name: String,
    rows: usize,
    cols: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct VocabManifest {
    tokens: Vec<String>,
    counts: Vec<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ModelManifest {
    format_version: u32,
    kind: String,
    config: ModelConfig,
    signal: Option<SignalSpec>,
    embedding_trainable: bool,
    vocab: VocabManifest,
    arrays: Vec<ArraySpec>,
}

fn array_specs(config: &ModelConfig, vocab_len: usize) -> Vec<ArraySpec> {
    let h = config.hidden_size;
    let d = config.embed_dim;
    let mut specs = vec![ArraySpec {
        name: "embedding".into(),
        rows: vocab_len,
        cols: d,
    }];
    let directions: &[&str] = if config.bidirectional {
        &["fwd", "bwd"]
    } else {
        &["fwd"]
    };
    for dir in directions {
        for gate in ["input", "forget", "output", "candidate"] {
            specs.push(ArraySpec {
                name: format!("{dir}.{gate}.w"),
                rows: h,
                cols: d,
            });
            specs.push(ArraySpec {
                name: format!("{dir}.{gate}.u"),
                rows: h,
                cols: h,
            });
            specs.push(ArraySpec {
                name: format!("{dir}.{gate}.b"),
                rows: h,
                cols: 1,
            });
        }
    }
    let head_len = if config.bidirectional { 2 * h } else { h };
    specs.push(ArraySpec {
        name: "head.w".into(),
        rows: head_len,
        cols: 1,
    });
    specs.push(ArraySpec {
        name: "head.b".into(),
        rows: 1,
        cols: 1,
    });
    specs
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> PersistError + '_ {
    move |source| PersistError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_f64s<W: Write>(writer: &mut W, values: &[f64], path: &Path) -> Result<(), PersistError> {
    for &v in values {
        writer.write_all(&v.to_le_bytes()).map_err(io_err(path))?;
    }
    Ok(())
}

/// Saves the model, its vocabulary, and (optionally) the signal it was trained
/// on. `load_model` restores all parameters bit-identically.
pub fn save_model(
    model: &LstmModel,
    vocab: &Vocabulary,
    signal: Option<SignalSpec>,
    path: &Path,
) -> Result<(), PersistError> {
    if vocab.len() != model.embedding.vocab_size() {
        return Err(PersistError::ShapeMismatch(format!(
            "vocabulary size {} != embedding rows {}",
            vocab.len(),
            model.embedding.vocab_size()
        )));
    }
    let tokens: Vec<String> = vocab
        .tokens()
        .skip(NUM_SPECIALS)
        .map(str::to_string)
        .collect();
    let counts: Vec<u64> = tokens.iter().map(|t| vocab.count_of(t)).collect();
    let manifest = ModelManifest {
        format_version: FORMAT_VERSION,
        kind: "lstm".into(),
        config: model.config.clone(),
        signal,
        embedding_trainable: model.embedding.trainable,
        vocab: VocabManifest { tokens, counts },
        arrays: array_specs(&model.config, vocab.len()),
    };
    let manifest_json =
        serde_json::to_string(&manifest).map_err(|e| PersistError::Malformed(e.to_string()))?;

    let file = File::create(path).map_err(io_err(path))?;
    let mut writer = BufWriter::new(file);
    writeln!(writer, "{MAGIC} {FORMAT_VERSION}").map_err(io_err(path))?;
    writeln!(writer, "{manifest_json}").map_err(io_err(path))?;
    write_f64s(&mut writer, model.embedding.data(), path)?;
    let directions: Vec<&LstmParams> = match &model.backward_params {
        None => vec![&model.params],
        Some(bp) => vec![&model.params, bp],
    };
    for params in directions {
        for gate in params.gates() {
            write_f64s(&mut writer, gate.w.data(), path)?;
            write_f64s(&mut writer, gate.u.data(), path)?;
            write_f64s(&mut writer, &gate.b, path)?;
        }
    }
    write_f64s(&mut writer, &model.head.w, path)?;
    write_f64s(&mut writer, &[model.head.b], path)?;
    writer.flush().map_err(io_err(path))
}

/// A restored model plus the vocabulary and signal stored with it.
#[derive(Debug)]
pub struct LoadedModel {
    pub model: LstmModel,
    pub vocab: Vocabulary,
    pub signal: Option<SignalSpec>,
}

pub fn load_model(path: &Path) -> Result<LoadedModel, PersistError> {
    let mut bytes = Vec::new();
    File::open(path)
        .map_err(io_err(path))?
        .read_to_end(&mut bytes)
        .map_err(io_err(path))?;

    let take_line = |from: usize| -> Result<(String, usize), PersistError> {
        let newline = bytes[from..]
            .iter()
            .position(|&b| b == b'\n')
            .ok_or_else(|| PersistError::Malformed("missing header line".into()))?;
        let line = std::str::from_utf8(&bytes[from..from + newline])
            .map_err(|e| PersistError::Malformed(format!("non-UTF-8 header: {e}")))?;
        Ok((line.to_string(), from + newline + 1))
    };

    let (magic_line, pos) = take_line(0)?;
    let mut magic_fields = magic_line.split_whitespace();
    if magic_fields.next() != Some(MAGIC) {
        return Err(PersistError::Malformed(
            "not a model file (bad magic)".into(),
        ));
    }
    let version = magic_fields.next().unwrap_or("?");
    if version != FORMAT_VERSION.to_string() {
        return Err(PersistError::Version {
            found: version.to_string(),
        });
    }
    let (manifest_line, payload_start) = take_line(pos)?;
    let manifest: ModelManifest = serde_json::from_str(&manifest_line)
        .map_err(|e| PersistError::Malformed(format!("manifest: {e}")))?;
    if manifest.format_version != FORMAT_VERSION {
        return Err(PersistError::Version {
            found: manifest.format_version.to_string(),
        });
    }
    if manifest.kind != "lstm" {
        return Err(PersistError::Malformed(format!(
            "unknown model kind {:?}",
            manifest.kind
        )));
    }
    if manifest.vocab.tokens.len() != manifest.vocab.counts.len() {
        return Err(PersistError::Malformed(
            "vocabulary tokens/counts length mismatch".into(),
        ));
    }
    let vocab_len = manifest.vocab.tokens.len() + NUM_SPECIALS;
    let expected_specs = array_specs(&manifest.config, vocab_len);
    if manifest.arrays.len() != expected_specs.len() {
        return Err(PersistError::Malformed(format!(
            "expected {} arrays, manifest declares {}",
            expected_specs.len(),
            manifest.arrays.len()
        )));
    }
    for (declared, expected) in manifest.arrays.iter().zip(&expected_specs) {
        if declared.name != expected.name
            || declared.rows != expected.rows
            || declared.cols != expected.cols
        {
            return Err(PersistError::ShapeMismatch(format!(
                "array {:?} declared {}x{}, expected {:?} {}x{}",
                declared.name,
                declared.rows,
                declared.cols,
                expected.name,
                expected.rows,
                expected.cols
            )));
        }
    }
    let total_values: usize = expected_specs.iter().map(|s| s.rows * s.cols).sum();
    let payload = &bytes[payload_start..];
    if payload.len() != total_values * 8 {
        return Err(PersistError::Truncated {
            expected: total_values * 8,
            found: payload.len(),
        });
    }
    let mut values = Vec::with_capacity(total_values);
    for chunk in payload.chunks_exact(8) {
        values.push(f64::from_le_bytes(chunk.try_into().unwrap()));
    }

    let mut cursor = 0usize;
    let mut take = |count: usize| -> Vec<f64> {
        let slice = values[cursor..cursor + count].to_vec();
        cursor += count;
        slice
    };
    let config = manifest.config;
    let h = config.hidden_size;
    let d = config.embed_dim;
    let embedding = EmbeddingMatrix::from_data(
        vocab_len,
        d,
        take(vocab_len * d),
        manifest.embedding_trainable,
    );
    let read_direction = |take: &mut dyn FnMut(usize) -> Vec<f64>| -> LstmParams {
        let read_gate = |take: &mut dyn FnMut(usize) -> Vec<f64>| GateParams {
            w: Mat::from_data(h, d, take(h * d)),
            u: Mat::from_data(h, h, take(h * h)),
            b: take(h),
        };
        LstmParams {
            input: read_gate(take),
            forget: read_gate(take),
            output: read_gate(take),
            candidate: read_gate(take),
        }
    };
    let params = read_direction(&mut take);
    let backward_params = config.bidirectional.then(|| read_direction(&mut take));
    let head_len = if config.bidirectional { 2 * h } else { h };
    let head = ClassifierHead {
        w: take(head_len),
        b: take(1)[0],
    };
    debug_assert_eq!(cursor, total_values);

    let mut index_to_token: Vec<String> = vec![
        crate::corpus::PAD_TOKEN.into(),
        crate::corpus::UNK_TOKEN.into(),
        crate::corpus::BOS_TOKEN.into(),
        crate::corpus::EOS_TOKEN.into(),
    ];
    index_to_token.extend(manifest.vocab.tokens.iter().cloned());
    let counts: HashMap<String, u64> = manifest
        .vocab
        .tokens
        .into_iter()
        .zip(manifest.vocab.counts)
        .collect();
    let vocab = Vocabulary::from_parts(index_to_token, counts);
    let model = LstmModel::from_parts(embedding, params, backward_params, head, config)
        .map_err(|e| PersistError::Malformed(e.to_string()))?;
    Ok(LoadedModel {
        model,
        vocab,
        signal: manifest.signal,
    })
}

/// Writes embeddings in word2vec text format: header `"V d"`, then one line
/// per non-special token with 17-significant-digit components.
/// `embeddings::load_pretrained` reproduces the rows bit-for-bit.
pub fn save_embeddings_text(
    matrix: &EmbeddingMatrix,
    vocab: &Vocabulary,
    path: &Path,
) -> Result<(), PersistError> {
    if vocab.len() != matrix.vocab_size() {
        return Err(PersistError::ShapeMismatch(format!(
            "vocabulary size {} != embedding rows {}",
            vocab.len(),
            matrix.vocab_size()
        )));
    }
    let file = File::create(path).map_err(io_err(path))?;
    let mut writer = BufWriter::new(file);
    let words = vocab.len() - NUM_SPECIALS;
    writeln!(writer, "{} {}", words, matrix.dim()).map_err(io_err(path))?;
    for index in NUM_SPECIALS..vocab.len() {
        let token = vocab.token_at(index).unwrap();
        write!(writer, "{token}").map_err(io_err(path))?;
        for &value in matrix.row(index) {
            write!(writer, " {value:.16e}").map_err(io_err(path))?;
        }
        writeln!(writer).map_err(io_err(path))?;
    }
    writer.flush().map_err(io_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{build_vocabulary, encode_sequence};
    use crate::embeddings::{init_random, load_pretrained};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    fn fixture(bidirectional: bool, seed: u64) -> (Vocabulary, LstmModel) {
        let vocab = build_vocabulary(&[toks("alpha beta gamma delta epsilon")], 1, None);
        let config = ModelConfig {
            cutoff: 6,
            hidden_size: 4,
            embed_dim: 3,
            bidirectional,
            batch_size: 2,
            epochs: 1,
            learning_rate: 1e-3,
            optimizer: crate::lstm::OptimizerKind::Adam,
            seed,
            threshold: 0.5,
        };
        let embedding = init_random(&vocab, 3, seed ^ 1);
        let model = LstmModel::random(embedding, &config).unwrap();
        (vocab, model)
    }

    #[test]
    fn model_round_trip_is_bit_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.bin");
        let (vocab, model) = fixture(false, 7);
        save_model(&model, &vocab, Some(SignalSpec::TitleBody), &path).unwrap();
        let loaded = load_model(&path).unwrap();
        assert_eq!(loaded.model.params, model.params);
        assert_eq!(loaded.model.head, model.head);
        assert_eq!(loaded.model.embedding, model.embedding);
        assert_eq!(loaded.model.config, model.config);
        assert_eq!(loaded.signal, Some(SignalSpec::TitleBody));
        assert_eq!(loaded.vocab, vocab);
    }

    #[test]
    fn model_round_trip_preserves_predictions() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.bin");
        let (vocab, model) = fixture(true, 11);
        save_model(&model, &vocab, None, &path).unwrap();
        let loaded = load_model(&path).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(1..6);
            let words: Vec<String> = (0..n)
                .map(|_| {
                    ["alpha", "beta", "gamma", "delta", "epsilon"][rng.gen_range(0..5)]
                        .to_string()
                })
                .collect();
            let seq = encode_sequence(&words, &vocab, 6);
            let original = model.predict_proba(&seq).unwrap();
            let restored = loaded.model.predict_proba(&seq).unwrap();
            assert_eq!(original, restored);
        }
    }

    #[test]
    fn truncated_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.bin");
        let (vocab, model) = fixture(false, 13);
        save_model(&model, &vocab, None, &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() - 9]).unwrap();
        assert!(matches!(
            load_model(&path),
            Err(PersistError::Truncated { .. })
        ));
    }

    #[test]
    fn unknown_version_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.bin");
        std::fs::write(&path, b"SEQCLASS-MODEL 999\n{}\n").unwrap();
        match load_model(&path) {
            Err(PersistError::Version { found }) => assert_eq!(found, "999"),
            other => panic!("expected Version error, got {other:?}"),
        }
    }

    #[test]
    fn garbage_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.bin");
        std::fs::write(&path, b"not a model at all\n").unwrap();
        assert!(matches!(load_model(&path), Err(PersistError::Malformed(_))));
    }

    #[test]
    fn embeddings_text_round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vectors.txt");
        let vocab = build_vocabulary(&[toks("red green blue")], 1, None);
        let matrix = init_random(&vocab, 5, 3);
        save_embeddings_text(&matrix, &vocab, &path).unwrap();
        let loaded = load_pretrained(&path, &vocab, 5, 999).unwrap();
        assert_eq!(loaded.loaded, 3);
        for token in ["red", "green", "blue"] {
            let index = vocab.index_of(token).unwrap();
            assert_eq!(loaded.matrix.row(index), matrix.row(index), "{token}");
        }
    }

    #[test]
    fn embeddings_text_excludes_specials_and_header_matches() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vectors.txt");
        let vocab = build_vocabulary(&[toks("one two")], 1, None);
        let matrix = init_random(&vocab, 2, 4);
        save_embeddings_text(&matrix, &vocab, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "2 2");
        assert_eq!(lines.len(), 3); // header + one line per word
        for line in &lines[1..] {
            let token = line.split_whitespace().next().unwrap();
            assert!(!Vocabulary::is_special_token(token));
        }
    }
}
