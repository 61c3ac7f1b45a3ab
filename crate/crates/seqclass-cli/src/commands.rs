//! Subcommand implementations tying the library pipeline together.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use seqclass::baselines::{
    fit_tfidf, predict_linear, predict_nb, select_top_ngrams, train_logistic, train_nb,
    transform_tfidf, SparseVector,
};
use seqclass::corpus::{
    build_vocabulary, compose_signal, load_dataset, tokenize, DatasetFormat, Document,
    SignalSpec, Vocabulary,
};
use seqclass::embeddings::{init_random, load_pretrained, train_sgns, EmbeddingMatrix, SgnsConfig};
use seqclass::eval::{corpus_output_stats, cross_validate, metrics_report, OutputStats};
use seqclass::lstm::{classify, ModelConfig, OptimizerKind};
use seqclass::persist::{load_model, save_embeddings_text, save_model};

use crate::args::{
    BaselineArgs, Cli, Command, CorpusStatsArgs, CvArgs, EmbedTrainArgs, EvalArgs, PredictArgs,
    TrainArgs,
};
use crate::config::{
    input_digest, require, resolve_seed, write_manifest, ConfigFile, RunManifest,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

fn data<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Data(e.to_string())
}

macro_rules! data_from {
    ($($ty:ty),*) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::Data(e.to_string())
            }
        })*
    };
}

data_from!(
    seqclass::corpus::CorpusError,
    seqclass::embeddings::EmbeddingError,
    seqclass::lstm::LstmError,
    seqclass::eval::EvalError,
    seqclass::baselines::BaselineError,
    seqclass::persist::PersistError
);

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::EmbedTrain(args) => run_embed_train(args),
        Command::Train(args) => run_train(args),
        Command::Eval(args) => run_eval(args),
        Command::Cv(args) => run_cv(args),
        Command::Predict(args) => run_predict(args),
        Command::CorpusStats(args) => run_corpus_stats(args),
        Command::Baseline(args) => run_baseline(args),
    }
}

fn parse_signal(raw: &str) -> Result<SignalSpec, CliError> {
    SignalSpec::parse_flag(raw).ok_or_else(|| {
        CliError::Usage(format!(
            "invalid signal {raw:?} (expected title | body | title+body | title+body+ba)"
        ))
    })
}

#[derive(Debug, Clone)]
enum EmbeddingMode {
    Integrated,
    Pretrained(PathBuf),
    SgnsTrain,
}

impl EmbeddingMode {
    fn parse(raw: &str) -> Result<EmbeddingMode, CliError> {
        match raw {
            "integrated" => Ok(EmbeddingMode::Integrated),
            "sgns-train" => Ok(EmbeddingMode::SgnsTrain),
            other => match other.strip_prefix("pretrained:") {
                Some(path) if !path.is_empty() => {
                    Ok(EmbeddingMode::Pretrained(PathBuf::from(path)))
                }
                _ => Err(CliError::Usage(format!(
                    "invalid embeddings mode {other:?} (expected integrated | pretrained:PATH | sgns-train)"
                ))),
            },
        }
    }

    fn flag_value(&self) -> String {
        match self {
            EmbeddingMode::Integrated => "integrated".into(),
            EmbeddingMode::Pretrained(p) => format!("pretrained:{}", p.display()),
            EmbeddingMode::SgnsTrain => "sgns-train".into(),
        }
    }
}

fn parse_optimizer(raw: &str) -> Result<OptimizerKind, CliError> {
    raw.parse().map_err(CliError::Usage)
}

fn tokenized_signals(docs: &[Document], signal: SignalSpec) -> Vec<Vec<String>> {
    docs.iter()
        .map(|d| tokenize(&compose_signal(d, signal)))
        .collect()
}

// Baselines see plain word/punctuation tokens, not the sentence markers.
fn content_tokens(docs: &[Document], signal: SignalSpec) -> Vec<Vec<String>> {
    tokenized_signals(docs, signal)
        .into_iter()
        .map(|tokens| {
            tokens
                .into_iter()
                .filter(|t| !Vocabulary::is_special_token(t))
                .collect()
        })
        .collect()
}

fn labels_of(docs: &[Document]) -> Result<Vec<u8>, CliError> {
    docs.iter()
        .map(|d| {
            d.label
                .ok_or_else(|| CliError::Data(format!("document {:?} has no label", d.id)))
        })
        .collect()
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<String, CliError> {
    let text = serde_json::to_string_pretty(value).map_err(data)?;
    fs::write(path, text.clone() + "\n")
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))?;
    Ok(text)
}

// ---------- embed-train ----------

// Shared SGNS knobs between embed-train and the sgns-train embedding mode.
struct SgnsKnobs {
    window: usize,
    negatives: usize,
    epochs: usize,
    lr: f64,
}

fn run_embed_train(args: EmbedTrainArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(args.common.config.as_deref())?;
    let seed = resolve_seed(args.common.seed, &cfg)?;
    let dataset = require(args.dataset.or(cfg.path("dataset")?), "dataset")?;
    let signal_raw = args
        .signal
        .or(cfg.string("signal")?)
        .unwrap_or_else(|| "title".into());
    let signal = parse_signal(&signal_raw)?;
    let dim = args.dim.or(cfg.usize("dim")?).unwrap_or(300);
    let window = args.window.or(cfg.usize("window")?).unwrap_or(5);
    let negatives = args.negatives.or(cfg.usize("negatives")?).unwrap_or(5);
    let epochs = args.epochs.or(cfg.usize("epochs")?).unwrap_or(5);
    let lr = args.lr.or(cfg.f64("lr")?).unwrap_or(0.025);
    let min_count = args.min_count.or(cfg.u64("min_count")?).unwrap_or(1);
    let max_vocab = args.max_vocab.or(cfg.usize("max_vocab")?);
    let output = require(args.output.or(cfg.path("output")?), "output")?;

    let docs = load_dataset(&dataset, DatasetFormat::Jsonl)?;
    let tokenized = tokenized_signals(&docs, signal);
    let vocab = build_vocabulary(&tokenized, min_count, max_vocab);
    let sgns_config = SgnsConfig {
        dim,
        window,
        negatives,
        epochs,
        learning_rate: lr,
        seed,
    };
    let outcome = train_sgns(&tokenized, &vocab, &sgns_config)?;
    save_embeddings_text(&outcome.embeddings, &vocab, &output)?;

    let manifest = RunManifest {
        command: "embed-train".into(),
        args: json!({
            "dataset": dataset.display().to_string(),
            "signal": signal.flag_name(),
            "dim": dim,
            "window": window,
            "negatives": negatives,
            "epochs": epochs,
            "lr": lr,
            "min_count": min_count,
            "max_vocab": max_vocab,
            "seed": seed,
            "output": output.display().to_string(),
        }),
        inputs: vec![input_digest("dataset", &dataset)?],
        outputs: vec![output.display().to_string()],
    };
    write_manifest(args.common.manifest.as_deref(), &output, &manifest)?;
    println!(
        "trained {}-dim embeddings for {} words over {} epochs -> {}",
        dim,
        vocab.len() - seqclass::corpus::NUM_SPECIALS,
        epochs,
        output.display()
    );
    if let (Some(first), Some(last)) = (outcome.epoch_losses.first(), outcome.epoch_losses.last())
    {
        println!("mean loss: first epoch {first:.6}, last epoch {last:.6}");
    }
    Ok(())
}

// ---------- train ----------

struct TrainSettings {
    dataset: PathBuf,
    signal: SignalSpec,
    hidden: usize,
    cutoff: usize,
    batch: usize,
    epochs: usize,
    lr: f64,
    optimizer: OptimizerKind,
    mode: EmbeddingMode,
    dim: usize,
    bidirectional: bool,
    min_count: u64,
    max_vocab: Option<usize>,
    threshold: f64,
    sgns: SgnsKnobs,
    seed: u64,
}

impl TrainSettings {
    fn model_config(&self) -> ModelConfig {
        ModelConfig {
            cutoff: self.cutoff,
            hidden_size: self.hidden,
            embed_dim: self.dim,
            bidirectional: self.bidirectional,
            batch_size: self.batch,
            epochs: self.epochs,
            learning_rate: self.lr,
            optimizer: self.optimizer,
            seed: self.seed,
            threshold: self.threshold,
        }
    }

    fn sgns_config(&self) -> SgnsConfig {
        SgnsConfig {
            dim: self.dim,
            window: self.sgns.window,
            negatives: self.sgns.negatives,
            epochs: self.sgns.epochs,
            learning_rate: self.sgns.lr,
            seed: self.seed,
        }
    }

    fn args_json(&self) -> serde_json::Value {
        json!({
            "dataset": self.dataset.display().to_string(),
            "signal": self.signal.flag_name(),
            "hidden": self.hidden,
            "cutoff": self.cutoff,
            "batch": self.batch,
            "epochs": self.epochs,
            "lr": self.lr,
            "optimizer": self.optimizer.to_string(),
            "embeddings": self.mode.flag_value(),
            "dim": self.dim,
            "bidirectional": self.bidirectional,
            "min_count": self.min_count,
            "max_vocab": self.max_vocab,
            "threshold": self.threshold,
            "window": self.sgns.window,
            "negatives": self.sgns.negatives,
            "sgns_epochs": self.sgns.epochs,
            "sgns_lr": self.sgns.lr,
            "seed": self.seed,
        })
    }

    // Vocabulary + embedding for a training subset, honoring the mode.
    fn prepare_embedding(
        &self,
        tokenized: &[Vec<String>],
        vocab: &Vocabulary,
        verbose: bool,
    ) -> Result<EmbeddingMatrix, CliError> {
        match &self.mode {
            EmbeddingMode::Integrated => Ok(init_random(vocab, self.dim, self.seed)),
            EmbeddingMode::Pretrained(path) => {
                let loaded = load_pretrained(path, vocab, self.dim, self.seed)?;
                if verbose {
                    eprintln!(
                        "pretrained vectors: {} loaded, coverage {:.3}",
                        loaded.loaded, loaded.coverage
                    );
                }
                Ok(loaded.matrix)
            }
            EmbeddingMode::SgnsTrain => {
                Ok(train_sgns(tokenized, vocab, &self.sgns_config())?.embeddings)
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn resolve_train_settings(
    cfg: &ConfigFile,
    seed: u64,
    dataset: Option<PathBuf>,
    signal: Option<String>,
    hidden: Option<usize>,
    cutoff: Option<usize>,
    batch: Option<usize>,
    epochs: Option<usize>,
    lr: Option<f64>,
    optimizer: Option<String>,
    embeddings: Option<String>,
    dim: Option<usize>,
    bidirectional: bool,
    min_count: Option<u64>,
    max_vocab: Option<usize>,
    threshold: Option<f64>,
    window: Option<usize>,
    negatives: Option<usize>,
    sgns_epochs: Option<usize>,
    sgns_lr: Option<f64>,
) -> Result<TrainSettings, CliError> {
    let dataset = require(dataset.or(cfg.path("dataset")?), "dataset")?;
    let signal_raw = require(signal.or(cfg.string("signal")?), "signal")?;
    let optimizer_raw = optimizer
        .or(cfg.string("optimizer")?)
        .unwrap_or_else(|| "adam".into());
    let mode_raw = embeddings
        .or(cfg.string("embeddings")?)
        .unwrap_or_else(|| "integrated".into());
    Ok(TrainSettings {
        dataset,
        signal: parse_signal(&signal_raw)?,
        hidden: hidden.or(cfg.usize("hidden")?).unwrap_or(300),
        cutoff: cutoff.or(cfg.usize("cutoff")?).unwrap_or(300),
        batch: batch.or(cfg.usize("batch")?).unwrap_or(100),
        epochs: epochs.or(cfg.usize("epochs")?).unwrap_or(5),
        lr: lr.or(cfg.f64("lr")?).unwrap_or(1e-3),
        optimizer: parse_optimizer(&optimizer_raw)?,
        mode: EmbeddingMode::parse(&mode_raw)?,
        dim: dim.or(cfg.usize("dim")?).unwrap_or(300),
        bidirectional: bidirectional || cfg.bool("bidirectional")?.unwrap_or(false),
        min_count: min_count.or(cfg.u64("min_count")?).unwrap_or(1),
        max_vocab: max_vocab.or(cfg.usize("max_vocab")?),
        threshold: threshold.or(cfg.f64("threshold")?).unwrap_or(0.5),
        sgns: SgnsKnobs {
            window: window.or(cfg.usize("window")?).unwrap_or(5),
            negatives: negatives.or(cfg.usize("negatives")?).unwrap_or(5),
            epochs: sgns_epochs.or(cfg.usize("sgns_epochs")?).unwrap_or(5),
            lr: sgns_lr.or(cfg.f64("sgns_lr")?).unwrap_or(0.025),
        },
        seed,
    })
}

fn run_train(args: TrainArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(args.common.config.as_deref())?;
    let seed = resolve_seed(args.common.seed, &cfg)?;
    let output = require(args.output.or(cfg.path("output")?), "output")?;
    let history_path = args.history.or(cfg.path("history")?);
    let settings = resolve_train_settings(
        &cfg,
        seed,
        args.dataset,
        args.signal,
        args.hidden,
        args.cutoff,
        args.batch,
        args.epochs,
        args.lr,
        args.optimizer,
        args.embeddings,
        args.dim,
        args.bidirectional,
        args.min_count,
        args.max_vocab,
        args.threshold,
        args.window,
        args.negatives,
        args.sgns_epochs,
        args.sgns_lr,
    )?;

    let docs = load_dataset(&settings.dataset, DatasetFormat::Jsonl)?;
    let tokenized = tokenized_signals(&docs, settings.signal);
    let vocab = build_vocabulary(&tokenized, settings.min_count, settings.max_vocab);
    let mut inputs = vec![input_digest("dataset", &settings.dataset)?];
    if let EmbeddingMode::Pretrained(path) = &settings.mode {
        inputs.push(input_digest("embeddings", path)?);
    }
    let embedding = settings.prepare_embedding(&tokenized, &vocab, true)?;
    let outcome = seqclass::lstm::train(
        &docs,
        settings.signal,
        &vocab,
        embedding,
        &settings.model_config(),
    )?;
    save_model(&outcome.model, &vocab, Some(settings.signal), &output)?;

    let mut args_json = settings.args_json();
    args_json["output"] = json!(output.display().to_string());
    args_json["history"] = json!(history_path.as_ref().map(|p| p.display().to_string()));
    let mut outputs = vec![output.display().to_string()];
    if let Some(history) = &history_path {
        write_json(history, &json!({ "epoch_losses": outcome.epoch_losses }))?;
        outputs.push(history.display().to_string());
    }
    let manifest = RunManifest {
        command: "train".into(),
        args: args_json,
        inputs,
        outputs,
    };
    write_manifest(args.common.manifest.as_deref(), &output, &manifest)?;
    println!(
        "trained on {} documents ({} epochs); final epoch loss {:.6} -> {}",
        docs.len(),
        settings.epochs,
        outcome.epoch_losses.last().copied().unwrap_or(f64::NAN),
        output.display()
    );
    Ok(())
}

// ---------- eval ----------

fn resolve_eval_signal(
    flag: Option<String>,
    cfg: &ConfigFile,
    stored: Option<SignalSpec>,
) -> Result<SignalSpec, CliError> {
    let raw = match flag {
        Some(raw) => Some(raw),
        None => cfg.string("signal")?,
    };
    match raw {
        Some(raw) => parse_signal(&raw),
        None => stored.ok_or_else(|| {
            CliError::Usage("--signal required: the model file does not record one".into())
        }),
    }
}

fn run_eval(args: EvalArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(args.common.config.as_deref())?;
    let model_path = require(args.model.or(cfg.path("model")?), "model")?;
    let dataset = require(args.dataset.or(cfg.path("dataset")?), "dataset")?;
    let output = require(args.output.or(cfg.path("output")?), "output")?;

    let loaded = load_model(&model_path)?;
    let signal = resolve_eval_signal(args.signal, &cfg, loaded.signal)?;
    let docs = load_dataset(&dataset, DatasetFormat::Jsonl)?;
    let labels = labels_of(&docs)?;
    let mut scores = Vec::with_capacity(docs.len());
    let mut classes = Vec::with_capacity(docs.len());
    for doc in &docs {
        let (p, c) = loaded.model.predict(doc, signal, &loaded.vocab)?;
        scores.push(p);
        classes.push(c);
    }
    let report = metrics_report(&scores, &classes, &labels)?;
    let text = write_json(&output, &report)?;
    println!("{text}");

    let manifest = RunManifest {
        command: "eval".into(),
        args: json!({
            "model": model_path.display().to_string(),
            "dataset": dataset.display().to_string(),
            "signal": signal.flag_name(),
            "output": output.display().to_string(),
        }),
        inputs: vec![
            input_digest("model", &model_path)?,
            input_digest("dataset", &dataset)?,
        ],
        outputs: vec![output.display().to_string()],
    };
    write_manifest(args.common.manifest.as_deref(), &output, &manifest)?;
    Ok(())
}

// ---------- cv ----------

fn run_cv(args: CvArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(args.common.config.as_deref())?;
    let seed = resolve_seed(args.common.seed, &cfg)?;
    let output = require(args.output.or(cfg.path("output")?), "output")?;
    let k = args.k.or(cfg.usize("k")?).unwrap_or(5);
    let settings = resolve_train_settings(
        &cfg,
        seed,
        args.dataset,
        args.signal,
        args.hidden,
        args.cutoff,
        args.batch,
        args.epochs,
        args.lr,
        args.optimizer,
        args.embeddings,
        args.dim,
        args.bidirectional,
        args.min_count,
        args.max_vocab,
        args.threshold,
        args.window,
        args.negatives,
        args.sgns_epochs,
        args.sgns_lr,
    )?;

    let docs = load_dataset(&settings.dataset, DatasetFormat::Jsonl)?;
    let mut inputs = vec![input_digest("dataset", &settings.dataset)?];
    if let EmbeddingMode::Pretrained(path) = &settings.mode {
        inputs.push(input_digest("embeddings", path)?);
    }
    let trainer = |train_docs: &[Document],
                   test_docs: &[Document]|
     -> Result<Vec<(f64, u8)>, Box<dyn std::error::Error + Send + Sync>> {
        let tokenized = tokenized_signals(train_docs, settings.signal);
        let vocab = build_vocabulary(&tokenized, settings.min_count, settings.max_vocab);
        let embedding = match settings.prepare_embedding(&tokenized, &vocab, false) {
            Ok(m) => m,
            Err(CliError::Usage(m)) | Err(CliError::Data(m)) => return Err(m.into()),
        };
        let outcome = seqclass::lstm::train(
            train_docs,
            settings.signal,
            &vocab,
            embedding,
            &settings.model_config(),
        )?;
        test_docs
            .iter()
            .map(|d| {
                outcome
                    .model
                    .predict(d, settings.signal, &vocab)
                    .map_err(Into::into)
            })
            .collect()
    };
    let report = cross_validate(trainer, &docs, k, seed)?;
    let text = write_json(&output, &report)?;
    println!("{text}");

    let mut args_json = settings.args_json();
    args_json["k"] = json!(k);
    args_json["output"] = json!(output.display().to_string());
    let manifest = RunManifest {
        command: "cv".into(),
        args: args_json,
        inputs,
        outputs: vec![output.display().to_string()],
    };
    write_manifest(args.common.manifest.as_deref(), &output, &manifest)?;
    Ok(())
}

// ---------- predict ----------

#[derive(Serialize)]
struct PredictionRecord<'a> {
    id: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<u8>,
    probability: f64,
    class: u8,
}

fn run_predict(args: PredictArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(args.common.config.as_deref())?;
    let model_path = require(args.model.or(cfg.path("model")?), "model")?;
    let dataset = require(args.dataset.or(cfg.path("dataset")?), "dataset")?;
    let output = require(args.output.or(cfg.path("output")?), "output")?;

    let loaded = load_model(&model_path)?;
    let signal = resolve_eval_signal(args.signal, &cfg, loaded.signal)?;
    let docs = load_dataset(&dataset, DatasetFormat::Jsonl)?;
    let file = fs::File::create(&output)
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", output.display())))?;
    let mut writer = BufWriter::new(file);
    for doc in &docs {
        let (probability, class) = loaded.model.predict(doc, signal, &loaded.vocab)?;
        let record = PredictionRecord {
            id: &doc.id,
            source: doc.source.as_deref(),
            label: doc.label,
            probability,
            class,
        };
        let line = serde_json::to_string(&record).map_err(data)?;
        writeln!(writer, "{line}").map_err(data)?;
    }
    writer.flush().map_err(data)?;

    let manifest = RunManifest {
        command: "predict".into(),
        args: json!({
            "model": model_path.display().to_string(),
            "dataset": dataset.display().to_string(),
            "signal": signal.flag_name(),
            "output": output.display().to_string(),
        }),
        inputs: vec![
            input_digest("model", &model_path)?,
            input_digest("dataset", &dataset)?,
        ],
        outputs: vec![output.display().to_string()],
    };
    write_manifest(args.common.manifest.as_deref(), &output, &manifest)?;
    println!("scored {} documents -> {}", docs.len(), output.display());
    Ok(())
}

// ---------- corpus-stats ----------

#[derive(Deserialize)]
struct ScoreRecord {
    source: Option<String>,
    probability: Option<f64>,
}

#[derive(Serialize)]
struct CorpusStatsReport {
    threshold: f64,
    sources: std::collections::BTreeMap<String, OutputStats>,
}

fn run_corpus_stats(args: CorpusStatsArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(args.common.config.as_deref())?;
    let scores_path = require(args.scores.or(cfg.path("scores")?), "scores")?;
    let threshold = args.threshold.or(cfg.f64("threshold")?).unwrap_or(0.5);
    let output = require(args.output.or(cfg.path("output")?), "output")?;

    let file = fs::File::open(&scores_path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", scores_path.display())))?;
    let mut scored = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(data)?;
        let record: ScoreRecord = serde_json::from_str(&line)
            .map_err(|e| CliError::Data(format!("line {line_no}: {e}")))?;
        let source = record
            .source
            .ok_or_else(|| CliError::Data(format!("line {line_no}: missing \"source\"")))?;
        let probability = record
            .probability
            .ok_or_else(|| CliError::Data(format!("line {line_no}: missing \"probability\"")))?;
        scored.push((source, probability));
    }
    let sources = corpus_output_stats(&scored, threshold)?;
    let report = CorpusStatsReport { threshold, sources };
    let text = write_json(&output, &report)?;
    println!("{text}");

    let manifest = RunManifest {
        command: "corpus-stats".into(),
        args: json!({
            "scores": scores_path.display().to_string(),
            "threshold": threshold,
            "output": output.display().to_string(),
        }),
        inputs: vec![input_digest("scores", &scores_path)?],
        outputs: vec![output.display().to_string()],
    };
    write_manifest(args.common.manifest.as_deref(), &output, &manifest)?;
    Ok(())
}

// ---------- baseline ----------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BaselineClassifier {
    Logreg,
    Nb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BaselineFeatures {
    Tfidf,
    Harper,
}

struct BaselineSettings {
    classifier: BaselineClassifier,
    features: BaselineFeatures,
    top_k: usize,
    c: f64,
    max_iter: usize,
    alpha: f64,
    signal: SignalSpec,
}

impl BaselineSettings {
    fn fit_predict(
        &self,
        train_docs: &[Document],
        test_docs: &[Document],
    ) -> Result<Vec<(f64, u8)>, CliError> {
        let train_tokens = content_tokens(train_docs, self.signal);
        let train_labels = labels_of(train_docs)?;
        let featurize: Box<dyn Fn(&[String]) -> SparseVector> = match self.features {
            BaselineFeatures::Tfidf => {
                let model = fit_tfidf(&train_tokens)?;
                Box::new(move |doc| transform_tfidf(&model, doc))
            }
            BaselineFeatures::Harper => {
                let selected = select_top_ngrams(&train_tokens, &train_labels, self.top_k)?;
                Box::new(move |doc| selected.featurize(doc))
            }
        };
        let x_train: Vec<SparseVector> = train_tokens.iter().map(|t| featurize(t)).collect();
        let score: Box<dyn Fn(&SparseVector) -> f64> = match self.classifier {
            BaselineClassifier::Logreg => {
                let model = train_logistic(&x_train, &train_labels, self.c, self.max_iter)?;
                Box::new(move |x| predict_linear(&model, x))
            }
            BaselineClassifier::Nb => {
                let model = train_nb(&x_train, &train_labels, self.alpha)?;
                Box::new(move |x| predict_nb(&model, x))
            }
        };
        Ok(content_tokens(test_docs, self.signal)
            .iter()
            .map(|tokens| {
                let p = score(&featurize(tokens));
                (p, classify(p, 0.5))
            })
            .collect())
    }
}

fn run_baseline(args: BaselineArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(args.common.config.as_deref())?;
    let seed = resolve_seed(args.common.seed, &cfg)?;
    let dataset = require(args.dataset.or(cfg.path("dataset")?), "dataset")?;
    let signal_raw = require(args.signal.or(cfg.string("signal")?), "signal")?;
    let test = args.test.or(cfg.path("test")?);
    let k = args.k.or(cfg.usize("k")?);
    let classifier_raw = args
        .classifier
        .or(cfg.string("classifier")?)
        .unwrap_or_else(|| "logreg".into());
    let features_raw = args
        .features
        .or(cfg.string("features")?)
        .unwrap_or_else(|| "tfidf".into());
    let output = require(args.output.or(cfg.path("output")?), "output")?;
    if test.is_some() && k.is_some() {
        return Err(CliError::Usage(
            "--test and --k are mutually exclusive".into(),
        ));
    }
    let settings = BaselineSettings {
        classifier: match classifier_raw.as_str() {
            "logreg" => BaselineClassifier::Logreg,
            "nb" => BaselineClassifier::Nb,
            other => {
                return Err(CliError::Usage(format!(
                    "invalid classifier {other:?} (expected logreg | nb)"
                )))
            }
        },
        features: match features_raw.as_str() {
            "tfidf" => BaselineFeatures::Tfidf,
            "harper" => BaselineFeatures::Harper,
            other => {
                return Err(CliError::Usage(format!(
                    "invalid features {other:?} (expected tfidf | harper)"
                )))
            }
        },
        top_k: args.top_k.or(cfg.usize("top_k")?).unwrap_or(500),
        c: args.c.or(cfg.f64("c")?).unwrap_or(1.0),
        max_iter: args.max_iter.or(cfg.usize("max_iter")?).unwrap_or(100),
        alpha: args.alpha.or(cfg.f64("alpha")?).unwrap_or(1.0),
        signal: parse_signal(&signal_raw)?,
    };

    let docs = load_dataset(&dataset, DatasetFormat::Jsonl)?;
    let mut inputs = vec![input_digest("dataset", &dataset)?];
    let text = match &test {
        Some(test_path) => {
            inputs.push(input_digest("test", test_path)?);
            let test_docs = load_dataset(test_path, DatasetFormat::Jsonl)?;
            let labels = labels_of(&test_docs)?;
            let predictions = settings.fit_predict(&docs, &test_docs)?;
            let scores: Vec<f64> = predictions.iter().map(|&(s, _)| s).collect();
            let classes: Vec<u8> = predictions.iter().map(|&(_, c)| c).collect();
            let report = metrics_report(&scores, &classes, &labels)?;
            write_json(&output, &report)?
        }
        None => {
            let folds = k.unwrap_or(5);
            let report = cross_validate(
                |train_docs, test_docs| {
                    settings
                        .fit_predict(train_docs, test_docs)
                        .map_err(|e| match e {
                            CliError::Usage(m) | CliError::Data(m) => m.into(),
                        })
                },
                &docs,
                folds,
                seed,
            )?;
            write_json(&output, &report)?
        }
    };
    println!("{text}");

    let manifest = RunManifest {
        command: "baseline".into(),
        args: json!({
            "dataset": dataset.display().to_string(),
            "test": test.as_ref().map(|p| p.display().to_string()),
            "k": k,
            "classifier": classifier_raw,
            "features": features_raw,
            "top_k": settings.top_k,
            "c": settings.c,
            "max_iter": settings.max_iter,
            "alpha": settings.alpha,
            "signal": settings.signal.flag_name(),
            "seed": seed,
            "output": output.display().to_string(),
        }),
        inputs,
        outputs: vec![output.display().to_string()],
    };
    write_manifest(args.common.manifest.as_deref(), &output, &manifest)?;
    Ok(())
}
