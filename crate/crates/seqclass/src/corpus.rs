//! Dataset ingestion, signal composition, tokenization, vocabulary construction,
//! and fixed-length index encoding.
//!
//! Datasets are UTF-8 JSON-lines files, one document per line. The token/index
//! space reserves the first four indices for the special tokens
//! `<pad>`, `<unk>`, `<s>`, `</s>`.

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const PAD_TOKEN: &str = "<pad>";
pub const UNK_TOKEN: &str = "<unk>";
pub const BOS_TOKEN: &str = "<s>";
pub const EOS_TOKEN: &str = "</s>";

pub const PAD_INDEX: usize = 0;
pub const UNK_INDEX: usize = 1;
pub const BOS_INDEX: usize = 2;
pub const EOS_INDEX: usize = 3;

/// Number of reserved special tokens at the bottom of the index space.
pub const NUM_SPECIALS: usize = 4;

const SPECIAL_TOKENS: [&str; NUM_SPECIALS] = [PAD_TOKEN, UNK_TOKEN, BOS_TOKEN, EOS_TOKEN];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
    #[error("line {line}: invalid label {value} (expected 0 or 1)")]
    InvalidLabel { line: usize, value: i64 },
}

/// One labeled or unlabeled text instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best_answer: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

/// Which document fields are concatenated into the classification signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignalSpec {
    Title,
    Body,
    TitleBody,
    TitleBodyBestAnswer,
}

impl SignalSpec {
    /// Parses the CLI flag form: `title | body | title+body | title+body+ba`.
    pub fn parse_flag(s: &str) -> Option<SignalSpec> {
        match s {
            "title" => Some(SignalSpec::Title),
            "body" => Some(SignalSpec::Body),
            "title+body" => Some(SignalSpec::TitleBody),
            "title+body+ba" => Some(SignalSpec::TitleBodyBestAnswer),
            _ => None,
        }
    }

    pub fn flag_name(&self) -> &'static str {
        match self {
            SignalSpec::Title => "title",
            SignalSpec::Body => "body",
            SignalSpec::TitleBody => "title+body",
            SignalSpec::TitleBodyBestAnswer => "title+body+ba",
        }
    }
}

impl fmt::Display for SignalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.flag_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetFormat {
    Jsonl,
}

// Schema as found on disk; label range is validated after parsing so that a
// bad value reports as InvalidLabel rather than a generic JSON error.
#[derive(Deserialize)]
struct RawDocument {
    id: String,
    title: String,
    #[serde(default)]
    body: Option<String>,
    #[serde(default)]
    best_answer: Option<String>,
    #[serde(default)]
    label: Option<i64>,
    #[serde(default)]
    source: Option<String>,
}

/// Loads a JSONL dataset, returning documents in file order.
///
/// Blank lines are rejected; every error names the 1-based line number.
pub fn load_dataset(path: &Path, format: DatasetFormat) -> Result<Vec<Document>, CorpusError> {
    let DatasetFormat::Jsonl = format;
    let file = File::open(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let reader = BufReader::new(file);
    let mut docs = Vec::new();
    let mut seen_ids: HashMap<String, usize> = HashMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| CorpusError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let raw: RawDocument =
            serde_json::from_str(&line).map_err(|e| CorpusError::Schema {
                line: line_no,
                message: e.to_string(),
            })?;
        if raw.id.is_empty() {
            return Err(CorpusError::Schema {
                line: line_no,
                message: "id must be nonempty".into(),
            });
        }
        if let Some(prev) = seen_ids.insert(raw.id.clone(), line_no) {
            return Err(CorpusError::Schema {
                line: line_no,
                message: format!("duplicate id {:?} (first seen on line {prev})", raw.id),
            });
        }
        let label = match raw.label {
            None => None,
            Some(v @ (0 | 1)) => Some(v as u8),
            Some(v) => return Err(CorpusError::InvalidLabel { line: line_no, value: v }),
        };
        if raw.title.is_empty() && raw.body.as_deref().unwrap_or("").is_empty() {
            return Err(CorpusError::Schema {
                line: line_no,
                message: "title may be empty only if body is nonempty".into(),
            });
        }
        docs.push(Document {
            id: raw.id,
            title: raw.title,
            body: raw.body,
            best_answer: raw.best_answer,
            label,
            source: raw.source,
        });
    }
    Ok(docs)
}

/// Concatenates the fields selected by `spec` with single spaces.
/// Missing or empty components contribute nothing.
pub fn compose_signal(doc: &Document, spec: SignalSpec) -> String {
    let body = doc.body.as_deref().unwrap_or("");
    let best = doc.best_answer.as_deref().unwrap_or("");
    let parts: &[&str] = match spec {
        SignalSpec::Title => &[&doc.title],
        SignalSpec::Body => &[body],
        SignalSpec::TitleBody => &[&doc.title, body],
        SignalSpec::TitleBodyBestAnswer => &[&doc.title, body, best],
    };
    parts
        .iter()
        .copied()
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Lowercases and tokenizes `text`, wrapping each sentence as `<s> ... </s>`.
///
/// Tokens are maximal runs of letters/digits or single punctuation marks.
/// A sentence ends after `.`, `?` or `!` followed by whitespace or end of text;
/// the terminator stays inside its sentence.
pub fn tokenize(text: &str) -> Vec<String> {
    let lower = text.to_lowercase();
    let chars: Vec<char> = lower.chars().collect();
    let mut sentences: Vec<Vec<String>> = Vec::new();
    let mut current: Vec<String> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_alphanumeric() {
            let mut tok = String::new();
            while i < chars.len() && chars[i].is_alphanumeric() {
                tok.push(chars[i]);
                i += 1;
            }
            current.push(tok);
        } else {
            current.push(c.to_string());
            let terminal = matches!(c, '.' | '?' | '!');
            let boundary = terminal
                && chars.get(i + 1).map_or(true, |next| next.is_whitespace());
            if boundary {
                sentences.push(std::mem::take(&mut current));
            }
            i += 1;
        }
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    let mut out = Vec::new();
    for sentence in sentences {
        out.push(BOS_TOKEN.to_string());
        out.extend(sentence);
        out.push(EOS_TOKEN.to_string());
    }
    out
}

/// Bijective token↔index mapping with counts; specials occupy indices 0..4.
#[derive(Debug, Clone, PartialEq)]
pub struct Vocabulary {
    token_to_index: HashMap<String, usize>,
    index_to_token: Vec<String>,
    counts: HashMap<String, u64>,
}

impl Vocabulary {
    pub(crate) fn from_parts(
        index_to_token: Vec<String>,
        counts: HashMap<String, u64>,
    ) -> Vocabulary {
        debug_assert!(index_to_token.len() >= NUM_SPECIALS);
        debug_assert_eq!(&index_to_token[..NUM_SPECIALS], &SPECIAL_TOKENS);
        let token_to_index = index_to_token
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Vocabulary {
            token_to_index,
            index_to_token,
            counts,
        }
    }

    /// Total number of indices, specials included.
    pub fn len(&self) -> usize {
        self.index_to_token.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index_to_token.is_empty()
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.token_to_index.get(token).copied()
    }

    /// Index of `token`, falling back to `<unk>`.
    pub fn encode_token(&self, token: &str) -> usize {
        self.index_of(token).unwrap_or(UNK_INDEX)
    }

    pub fn token_at(&self, index: usize) -> Option<&str> {
        self.index_to_token.get(index).map(String::as_str)
    }

    pub fn count_of(&self, token: &str) -> u64 {
        self.counts.get(token).copied().unwrap_or(0)
    }

    /// Tokens in index order, specials first.
    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.index_to_token.iter().map(String::as_str)
    }

    pub fn is_special_index(index: usize) -> bool {
        index < NUM_SPECIALS
    }

    pub fn is_special_token(token: &str) -> bool {
        SPECIAL_TOKENS.contains(&token)
    }
}

/// Builds a vocabulary from tokenized documents.
///
/// Tokens with count >= `min_count` are kept, ranked by count descending with
/// lexicographic tie-breaking, truncated to `max_size - 4` when `max_size` is
/// given, and prepended with the four specials. Special tokens appearing in the
/// corpus (e.g. from [`tokenize`]) are skipped — they already hold fixed indices.
pub fn build_vocabulary(
    corpus: &[Vec<String>],
    min_count: u64,
    max_size: Option<usize>,
) -> Vocabulary {
    assert!(min_count >= 1, "min_count must be >= 1");
    let mut counts: HashMap<String, u64> = HashMap::new();
    for doc in corpus {
        for token in doc {
            if Vocabulary::is_special_token(token) {
                continue;
            }
            *counts.entry(token.to_lowercase()).or_insert(0) += 1;
        }
    }
    let mut ranked: Vec<(String, u64)> = counts
        .into_iter()
        .filter(|(_, c)| *c >= min_count)
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    if let Some(max) = max_size {
        ranked.truncate(max.saturating_sub(NUM_SPECIALS));
    }
    let mut index_to_token: Vec<String> =
        SPECIAL_TOKENS.iter().map(|s| s.to_string()).collect();
    let mut kept_counts = HashMap::new();
    for (token, count) in ranked {
        index_to_token.push(token.clone());
        kept_counts.insert(token, count);
    }
    Vocabulary::from_parts(index_to_token, kept_counts)
}

/// A fixed-length index encoding of a token sequence.
///
/// Shorter sequences are left-padded so the final position is the last real
/// word; longer ones keep their first `cutoff` tokens.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedSequence {
    pub indices: Vec<usize>,
    pub mask: Vec<bool>,
    /// Final index where `mask` is true; `None` for an all-PAD encoding.
    pub last_real_position: Option<usize>,
}

impl EncodedSequence {
    pub fn cutoff(&self) -> usize {
        self.indices.len()
    }

    pub fn real_token_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }
}

/// Encodes `tokens` against `vocab` at the given cutoff. Unknown tokens map to
/// `<unk>`; truncation drops tokens from the end.
pub fn encode_sequence(tokens: &[String], vocab: &Vocabulary, cutoff: usize) -> EncodedSequence {
    assert!(cutoff >= 1, "cutoff must be >= 1");
    let n_real = tokens.len().min(cutoff);
    let pad = cutoff - n_real;
    let mut indices = vec![PAD_INDEX; pad];
    indices.extend(tokens[..n_real].iter().map(|t| vocab.encode_token(t)));
    let mut mask = vec![false; pad];
    mask.extend(std::iter::repeat(true).take(n_real));
    let last_real_position = if n_real > 0 { Some(cutoff - 1) } else { None };
    EncodedSequence {
        indices,
        mask,
        last_real_position,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::io::Write;

    fn write_jsonl(lines: &[&str]) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        for line in lines {
            writeln!(f, "{line}").unwrap();
        }
        f.flush().unwrap();
        f
    }

    #[test]
    fn load_single_line_maps_fields() {
        let f = write_jsonl(&[r#"{"id":"a","title":"x","label":1}"#]);
        let docs = load_dataset(f.path(), DatasetFormat::Jsonl).unwrap();
        assert_eq!(docs.len(), 1);
        assert_eq!(docs[0].id, "a");
        assert_eq!(docs[0].title, "x");
        assert_eq!(docs[0].label, Some(1));
        assert_eq!(docs[0].body, None);
    }

    #[test]
    fn load_empty_file_yields_empty_sequence() {
        let f = write_jsonl(&[]);
        let docs = load_dataset(f.path(), DatasetFormat::Jsonl).unwrap();
        assert!(docs.is_empty());
    }

    #[test]
    fn load_invalid_label_reports_line() {
        let f = write_jsonl(&[r#"{"id":"a","title":"x","label":2}"#]);
        match load_dataset(f.path(), DatasetFormat::Jsonl) {
            Err(CorpusError::InvalidLabel { line: 1, value: 2 }) => {}
            other => panic!("expected InvalidLabel on line 1, got {other:?}"),
        }
    }

    #[test]
    fn load_missing_title_is_schema_error() {
        let f = write_jsonl(&[r#"{"id":"a"}"#]);
        match load_dataset(f.path(), DatasetFormat::Jsonl) {
            Err(CorpusError::Schema { line: 1, .. }) => {}
            other => panic!("expected Schema error on line 1, got {other:?}"),
        }
    }

    #[test]
    fn load_duplicate_id_is_schema_error() {
        let f = write_jsonl(&[
            r#"{"id":"a","title":"x"}"#,
            r#"{"id":"a","title":"y"}"#,
        ]);
        match load_dataset(f.path(), DatasetFormat::Jsonl) {
            Err(CorpusError::Schema { line: 2, .. }) => {}
            other => panic!("expected Schema error on line 2, got {other:?}"),
        }
    }

    #[test]
    fn load_empty_title_requires_body() {
        let f = write_jsonl(&[r#"{"id":"a","title":""}"#]);
        assert!(load_dataset(f.path(), DatasetFormat::Jsonl).is_err());
        let f = write_jsonl(&[r#"{"id":"a","title":"","body":"b"}"#]);
        assert!(load_dataset(f.path(), DatasetFormat::Jsonl).is_ok());
    }

    #[test]
    fn load_ignores_unknown_keys() {
        let f = write_jsonl(&[r#"{"id":"a","title":"x","extra":42}"#]);
        assert!(load_dataset(f.path(), DatasetFormat::Jsonl).is_ok());
    }

    fn doc(title: &str, body: Option<&str>, best: Option<&str>) -> Document {
        Document {
            id: "d".into(),
            title: title.into(),
            body: body.map(String::from),
            best_answer: best.map(String::from),
            label: None,
            source: None,
        }
    }

    #[test]
    fn compose_title_body_joins_with_space() {
        assert_eq!(
            compose_signal(&doc("t", Some("b"), None), SignalSpec::TitleBody),
            "t b"
        );
    }

    #[test]
    fn compose_missing_body_contributes_nothing() {
        assert_eq!(
            compose_signal(&doc("t", None, None), SignalSpec::TitleBody),
            "t"
        );
    }

    #[test]
    fn compose_full_cqa_signal() {
        assert_eq!(
            compose_signal(
                &doc("t", Some("d"), Some("ba")),
                SignalSpec::TitleBodyBestAnswer
            ),
            "t d ba"
        );
    }

    #[test]
    fn compose_empty_title_has_no_leading_space() {
        assert_eq!(
            compose_signal(&doc("", Some("b"), None), SignalSpec::TitleBody),
            "b"
        );
    }

    #[test]
    fn tokenize_wraps_sentence_with_specials() {
        assert_eq!(
            tokenize("Hello World!"),
            vec![BOS_TOKEN, "hello", "world", "!", EOS_TOKEN]
        );
    }

    #[test]
    fn tokenize_empty_text() {
        assert!(tokenize("").is_empty());
        assert!(tokenize("   ").is_empty());
    }

    #[test]
    fn tokenize_splits_sentences() {
        // Hand-applied rule: boundary after terminal punctuation + whitespace/end.
        assert_eq!(
            tokenize("A. B?"),
            vec![BOS_TOKEN, "a", ".", EOS_TOKEN, BOS_TOKEN, "b", "?", EOS_TOKEN]
        );
    }

    #[test]
    fn tokenize_unterminated_text_is_one_sentence() {
        assert_eq!(
            tokenize("no end here"),
            vec![BOS_TOKEN, "no", "end", "here", EOS_TOKEN]
        );
    }

    #[test]
    fn tokenize_punctuation_runs_split_per_char() {
        assert_eq!(
            tokenize("a--b"),
            vec![BOS_TOKEN, "a", "-", "-", "b", EOS_TOKEN]
        );
    }

    #[test]
    fn tokenize_inner_period_is_not_boundary() {
        assert_eq!(
            tokenize("v1.2 ok"),
            vec![BOS_TOKEN, "v1", ".", "2", "ok", EOS_TOKEN]
        );
    }

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn vocabulary_ranks_by_count_then_token() {
        let vocab = build_vocabulary(&[toks("a a b")], 1, None);
        assert_eq!(vocab.index_of("a"), Some(4));
        assert_eq!(vocab.index_of("b"), Some(5));
        assert_eq!(vocab.index_of(PAD_TOKEN), Some(PAD_INDEX));
        assert_eq!(vocab.index_of(EOS_TOKEN), Some(EOS_INDEX));
        assert_eq!(vocab.count_of("a"), 2);
    }

    #[test]
    fn vocabulary_min_count_drops_rare_tokens() {
        let vocab = build_vocabulary(&[toks("a a b")], 2, None);
        assert_eq!(vocab.index_of("b"), None);
        assert_eq!(vocab.encode_token("b"), UNK_INDEX);
    }

    #[test]
    fn vocabulary_ties_break_lexicographically() {
        let vocab = build_vocabulary(&[toks("y y y x x x")], 1, None);
        assert_eq!(vocab.index_of("x"), Some(4));
        assert_eq!(vocab.index_of("y"), Some(5));
    }

    #[test]
    fn vocabulary_max_size_truncates() {
        let vocab = build_vocabulary(&[toks("a a a b b c")], 1, Some(6));
        assert_eq!(vocab.len(), 6);
        assert_eq!(vocab.index_of("c"), None);
    }

    #[test]
    fn vocabulary_skips_special_tokens_in_corpus() {
        let vocab = build_vocabulary(&[tokenize("Hi there.")], 1, None);
        assert_eq!(vocab.index_of(BOS_TOKEN), Some(BOS_INDEX));
        // Specials not duplicated past index 3.
        assert_eq!(vocab.len(), NUM_SPECIALS + 3); // hi, there, "."
    }

    #[test]
    fn encode_truncates_from_the_end() {
        let vocab = build_vocabulary(&[toks("t1 t2 t3 t4 t5 t6 t7")], 1, None);
        let tokens = toks("t1 t2 t3 t4 t5 t6 t7");
        let enc = encode_sequence(&tokens, &vocab, 5);
        assert_eq!(enc.indices.len(), 5);
        assert!(enc.mask.iter().all(|&m| m));
        assert_eq!(
            enc.indices,
            ["t1", "t2", "t3", "t4", "t5"]
                .iter()
                .map(|t| vocab.index_of(t).unwrap())
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn encode_left_pads_short_sequences() {
        let vocab = build_vocabulary(&[toks("t1 t2 t3")], 1, None);
        let enc = encode_sequence(&toks("t1 t2 t3"), &vocab, 5);
        assert_eq!(enc.indices[..2], [PAD_INDEX, PAD_INDEX]);
        assert_eq!(enc.mask, vec![false, false, true, true, true]);
        assert_eq!(enc.last_real_position, Some(4));
    }

    #[test]
    fn encode_maps_unknown_to_unk() {
        let vocab = build_vocabulary(&[toks("a")], 1, None);
        let enc = encode_sequence(&toks("a zzz"), &vocab, 2);
        assert_eq!(enc.indices[1], UNK_INDEX);
        assert!(enc.mask[1]);
    }

    #[test]
    fn encode_empty_tokens_is_all_pad() {
        let vocab = build_vocabulary(&[toks("a")], 1, None);
        let enc = encode_sequence(&[], &vocab, 3);
        assert_eq!(enc.indices, vec![PAD_INDEX; 3]);
        assert_eq!(enc.last_real_position, None);
        assert_eq!(enc.real_token_count(), 0);
    }

    proptest! {
        #[test]
        fn vocab_token_index_bijection(
            docs in proptest::collection::vec(
                proptest::collection::vec("[a-z]{1,6}", 0..20),
                1..8,
            )
        ) {
            let vocab = build_vocabulary(&docs, 1, None);
            for idx in 0..vocab.len() {
                let token = vocab.token_at(idx).unwrap();
                prop_assert_eq!(vocab.index_of(token), Some(idx));
            }
        }

        #[test]
        fn encode_mask_is_zero_block_then_one_block(
            tokens in proptest::collection::vec("[a-z]{1,4}", 0..30),
            cutoff in 1usize..40,
        ) {
            let vocab = build_vocabulary(&[tokens.clone()], 1, None);
            let enc = encode_sequence(&tokens, &vocab, cutoff);
            prop_assert_eq!(enc.indices.len(), cutoff);
            prop_assert_eq!(enc.mask.len(), cutoff);
            let first_real = enc.mask.iter().position(|&m| m);
            match first_real {
                None => prop_assert!(enc.mask.iter().all(|&m| !m)),
                Some(p) => {
                    prop_assert!(enc.mask[..p].iter().all(|&m| !m));
                    prop_assert!(enc.mask[p..].iter().all(|&m| m));
                    prop_assert_eq!(enc.last_real_position, Some(cutoff - 1));
                }
            }
        }

        #[test]
        fn tokenize_idempotent_under_lowercasing(
            text in "[ -~àéÎΣß]{0,60}"
        ) {
            prop_assert_eq!(tokenize(&text.to_lowercase()), tokenize(&text));
        }

        #[test]
        fn title_body_signal_extends_title_signal(
            title in "[a-zA-Z ]{1,20}",
            body in proptest::option::of("[a-zA-Z ]{0,20}"),
        ) {
            let d = Document {
                id: "x".into(),
                title: title.clone(),
                body: body.clone(),
                best_answer: None,
                label: None,
                source: None,
            };
            let t = compose_signal(&d, SignalSpec::Title);
            let tb = compose_signal(&d, SignalSpec::TitleBody);
            prop_assert!(tb.starts_with(&t));
        }
    }
}
