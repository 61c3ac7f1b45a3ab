//! The LSTM classifier: cell, forward unroll, scalar sigmoid head, binary
//! cross-entropy loss, backpropagation through time, training loop, and the
//! bidirectional variant.
//!
//! Gate equations (no peepholes), per timestep:
//!
//! ```text
//! i = σ(W_i x + U_i h_prev + b_i)      f = σ(W_f x + U_f h_prev + b_f)
//! o = σ(W_o x + U_o h_prev + b_o)      g = tanh(W_c x + U_c h_prev + b_c)
//! c = f ⊙ c_prev + i ⊙ g               h = o ⊙ tanh(c)
//! ```
//!
//! Only the state after the last real token feeds the head:
//! `p = σ(w·h_final + b)`. Sequences are left-padded, and PAD positions carry
//! the state through unchanged, so the final unrolled position is always the
//! last real word and padding depth never affects the output.

mod train;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{compose_signal, encode_sequence, tokenize, Document, EncodedSequence,
                    SignalSpec, Vocabulary};
use crate::embeddings::EmbeddingMatrix;
use crate::math::{dot, sigmoid, Mat};

pub use train::{train, TrainOutcome};
pub(crate) use train::ParamLayout;

const BCE_EPSILON: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum LstmError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("sequence contains no real tokens (all PAD)")]
    AllPadSequence,
    #[error("document {id:?} encodes to an all-PAD sequence")]
    AllPadDocument { id: String },
    #[error("forward cache is stale: model parameters changed since forward")]
    StaleCache,
    #[error("finite-difference step must be positive, got {0}")]
    InvalidDelta(f64),
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("document {id:?} has no label")]
    UnlabeledDocument { id: String },
}

/// Weights for one gate: input projection `w` (H×d), recurrent projection `u`
/// (H×H), and bias `b` (H).
#[derive(Debug, Clone, PartialEq)]
pub struct GateParams {
    pub w: Mat,
    pub u: Mat,
    pub b: Vec<f64>,
}

impl GateParams {
    fn zeros(hidden: usize, input_dim: usize) -> Self {
        GateParams {
            w: Mat::zeros(hidden, input_dim),
            u: Mat::zeros(hidden, hidden),
            b: vec![0.0; hidden],
        }
    }

    fn check_shapes(&self, hidden: usize, input_dim: usize) -> Result<(), LstmError> {
        if self.w.rows() != hidden
            || self.w.cols() != input_dim
            || self.u.rows() != hidden
            || self.u.cols() != hidden
            || self.b.len() != hidden
        {
            return Err(LstmError::ShapeMismatch(format!(
                "gate shapes inconsistent with H={hidden}, d={input_dim}"
            )));
        }
        Ok(())
    }
}

/// Parameters of one LSTM direction: the four gates.
#[derive(Debug, Clone, PartialEq)]
pub struct LstmParams {
    pub input: GateParams,
    pub forget: GateParams,
    pub output: GateParams,
    pub candidate: GateParams,
}

impl LstmParams {
    pub fn zeros(hidden: usize, input_dim: usize) -> Self {
        LstmParams {
            input: GateParams::zeros(hidden, input_dim),
            forget: GateParams::zeros(hidden, input_dim),
            output: GateParams::zeros(hidden, input_dim),
            candidate: GateParams::zeros(hidden, input_dim),
        }
    }

    pub fn hidden_size(&self) -> usize {
        self.input.w.rows()
    }

    pub fn input_dim(&self) -> usize {
        self.input.w.cols()
    }

    pub fn gates(&self) -> [&GateParams; 4] {
        [&self.input, &self.forget, &self.output, &self.candidate]
    }

    pub fn gates_mut(&mut self) -> [&mut GateParams; 4] {
        [
            &mut self.input,
            &mut self.forget,
            &mut self.output,
            &mut self.candidate,
        ]
    }

    fn check_shapes(&self, hidden: usize, input_dim: usize) -> Result<(), LstmError> {
        for gate in self.gates() {
            gate.check_shapes(hidden, input_dim)?;
        }
        Ok(())
    }
}

/// Scalar head: `p = σ(w·h + b)`; `w` has length H (2H when bidirectional).
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierHead {
    pub w: Vec<f64>,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimizerKind {
    Sgd,
    Adam,
}

impl fmt::Display for OptimizerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OptimizerKind::Sgd => f.write_str("sgd"),
            OptimizerKind::Adam => f.write_str("adam"),
        }
    }
}

impl std::str::FromStr for OptimizerKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sgd" => Ok(OptimizerKind::Sgd),
            "adam" => Ok(OptimizerKind::Adam),
            other => Err(format!("unknown optimizer {other:?} (expected sgd or adam)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub cutoff: usize,
    pub hidden_size: usize,
    pub embed_dim: usize,
    pub bidirectional: bool,
    pub batch_size: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub optimizer: OptimizerKind,
    pub seed: u64,
    pub threshold: f64,
}

impl ModelConfig {
    /// A config with the common defaults: unidirectional, batch 100, adam at
    /// 1e-3, threshold 0.5.
    pub fn new(cutoff: usize, hidden_size: usize, embed_dim: usize) -> Self {
        ModelConfig {
            cutoff,
            hidden_size,
            embed_dim,
            bidirectional: false,
            batch_size: 100,
            epochs: 10,
            learning_rate: 1e-3,
            optimizer: OptimizerKind::Adam,
            seed: 42,
            threshold: 0.5,
        }
    }

    pub fn validate(&self) -> Result<(), LstmError> {
        if self.cutoff < 1 {
            return Err(LstmError::InvalidConfig("cutoff must be >= 1".into()));
        }
        if self.hidden_size < 1 {
            return Err(LstmError::InvalidConfig("hidden_size must be >= 1".into()));
        }
        if self.embed_dim < 1 {
            return Err(LstmError::InvalidConfig("embed_dim must be >= 1".into()));
        }
        if self.batch_size < 1 {
            return Err(LstmError::InvalidConfig("batch_size must be >= 1".into()));
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(LstmError::InvalidConfig(
                "threshold must lie strictly between 0 and 1".into(),
            ));
        }
        if self.learning_rate <= 0.0 {
            return Err(LstmError::InvalidConfig(
                "learning_rate must be positive".into(),
            ));
        }
        Ok(())
    }

    fn head_len(&self) -> usize {
        if self.bidirectional {
            2 * self.hidden_size
        } else {
            self.hidden_size
        }
    }
}

/// The classifier: embedding, one or two LSTM directions, scalar head.
#[derive(Debug, Clone, PartialEq)]
pub struct LstmModel {
    pub embedding: EmbeddingMatrix,
    pub params: LstmParams,
    pub backward_params: Option<LstmParams>,
    pub head: ClassifierHead,
    pub config: ModelConfig,
    version: u64,
}

impl LstmModel {
    pub fn from_parts(
        embedding: EmbeddingMatrix,
        params: LstmParams,
        backward_params: Option<LstmParams>,
        head: ClassifierHead,
        config: ModelConfig,
    ) -> Result<Self, LstmError> {
        config.validate()?;
        if embedding.dim() != config.embed_dim {
            return Err(LstmError::ShapeMismatch(format!(
                "embedding dim {} != config embed_dim {}",
                embedding.dim(),
                config.embed_dim
            )));
        }
        params.check_shapes(config.hidden_size, config.embed_dim)?;
        if config.bidirectional != backward_params.is_some() {
            return Err(LstmError::ShapeMismatch(
                "backward parameters must be present iff bidirectional".into(),
            ));
        }
        if let Some(bp) = &backward_params {
            bp.check_shapes(config.hidden_size, config.embed_dim)?;
        }
        if head.w.len() != config.head_len() {
            return Err(LstmError::ShapeMismatch(format!(
                "head length {} != expected {}",
                head.w.len(),
                config.head_len()
            )));
        }
        Ok(LstmModel {
            embedding,
            params,
            backward_params,
            head,
            config,
            version: 0,
        })
    }

    /// Training initialization: gate weights uniform in
    /// ±sqrt(6/(fan_in+fan_out)), forget bias 1.0, other biases and the head
    /// zero. Deterministic from `config.seed`.
    pub fn init(embedding: EmbeddingMatrix, config: &ModelConfig) -> Result<Self, LstmError> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
        let h = config.hidden_size;
        let d = config.embed_dim;
        let w_limit = (6.0 / (d + h) as f64).sqrt();
        let u_limit = (6.0 / (h + h) as f64).sqrt();
        let make_params = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut params = LstmParams::zeros(h, d);
            for gate in params.gates_mut() {
                gate.w = Mat::from_fn(h, d, || rng.gen_range(-w_limit..w_limit));
                gate.u = Mat::from_fn(h, h, || rng.gen_range(-u_limit..u_limit));
            }
            params.forget.b.iter_mut().for_each(|b| *b = 1.0);
            params
        };
        let params = make_params(&mut rng);
        let backward_params = config.bidirectional.then(|| make_params(&mut rng));
        let head = ClassifierHead {
            w: vec![0.0; config.head_len()],
            b: 0.0,
        };
        LstmModel::from_parts(embedding, params, backward_params, head, config.clone())
    }

    /// Fully random model (head included, uniform ±0.5) for verification
    /// harnesses and round-trip tests. Deterministic from `config.seed`.
    pub fn random(embedding: EmbeddingMatrix, config: &ModelConfig) -> Result<Self, LstmError> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
        let h = config.hidden_size;
        let d = config.embed_dim;
        let make_params = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut params = LstmParams::zeros(h, d);
            for gate in params.gates_mut() {
                gate.w = Mat::from_fn(h, d, || rng.gen_range(-0.5..0.5));
                gate.u = Mat::from_fn(h, h, || rng.gen_range(-0.5..0.5));
                gate.b.iter_mut().for_each(|b| *b = rng.gen_range(-0.5..0.5));
            }
            params
        };
        let params = make_params(&mut rng);
        let backward_params = config.bidirectional.then(|| make_params(&mut rng));
        let head = ClassifierHead {
            w: (0..config.head_len())
                .map(|_| rng.gen_range(-0.5..0.5))
                .collect(),
            b: rng.gen_range(-0.5..0.5),
        };
        LstmModel::from_parts(embedding, params, backward_params, head, config.clone())
    }

    pub fn version(&self) -> u64 {
        self.version
    }

    pub(crate) fn bump_version(&mut self) {
        self.version += 1;
    }

    fn direction_params(&self) -> Vec<&LstmParams> {
        match &self.backward_params {
            None => vec![&self.params],
            Some(bp) => vec![&self.params, bp],
        }
    }

    /// Runs the model in its configured direction mode.
    pub fn infer(&self, seq: &EncodedSequence) -> Result<(f64, ForwardCache), LstmError> {
        if self.config.bidirectional {
            forward_bidirectional(seq, self)
        } else {
            forward(seq, self)
        }
    }

    pub fn predict_proba(&self, seq: &EncodedSequence) -> Result<f64, LstmError> {
        Ok(self.infer(seq)?.0)
    }

    /// Classifies a document: class 1 iff probability strictly exceeds the
    /// configured threshold.
    pub fn predict(
        &self,
        doc: &Document,
        signal: SignalSpec,
        vocab: &Vocabulary,
    ) -> Result<(f64, u8), LstmError> {
        let tokens = tokenize(&compose_signal(doc, signal));
        let seq = encode_sequence(&tokens, vocab, self.config.cutoff);
        let probability = match self.predict_proba(&seq) {
            Err(LstmError::AllPadSequence) => {
                return Err(LstmError::AllPadDocument { id: doc.id.clone() })
            }
            other => other?,
        };
        Ok((probability, classify(probability, self.config.threshold)))
    }
}

/// Strict-threshold class rule: 1 iff `probability > threshold`.
pub fn classify(probability: f64, threshold: f64) -> u8 {
    u8::from(probability > threshold)
}

/// Per-timestep activations retained for backpropagation.
#[derive(Debug, Clone)]
pub struct StepCache {
    pub token_index: usize,
    pub masked: bool,
    pub x: Vec<f64>,
    pub i: Vec<f64>,
    pub f: Vec<f64>,
    pub o: Vec<f64>,
    pub g: Vec<f64>,
    pub c: Vec<f64>,
    pub h: Vec<f64>,
    pub tanh_c: Vec<f64>,
    pub c_prev: Vec<f64>,
    pub h_prev: Vec<f64>,
}

/// Unroll record for one direction; `steps.len()` equals the cutoff.
#[derive(Debug, Clone)]
pub struct DirectionCache {
    pub steps: Vec<StepCache>,
    pub final_h: Vec<f64>,
}

/// Everything [`backward`] needs: one direction cache (two when
/// bidirectional), the head output, and the model version it was computed on.
#[derive(Debug, Clone)]
pub struct ForwardCache {
    pub directions: Vec<DirectionCache>,
    pub probability: f64,
    pub logit: f64,
    version: u64,
}

/// One LSTM cell evaluation.
#[derive(Debug, Clone)]
pub struct CellStep {
    pub h: Vec<f64>,
    pub c: Vec<f64>,
    pub i: Vec<f64>,
    pub f: Vec<f64>,
    pub o: Vec<f64>,
    pub g: Vec<f64>,
    pub tanh_c: Vec<f64>,
}

/// Evaluates the gate equations for one timestep.
pub fn cell_step(
    x: &[f64],
    h_prev: &[f64],
    c_prev: &[f64],
    params: &LstmParams,
) -> Result<CellStep, LstmError> {
    let hidden = params.hidden_size();
    if x.len() != params.input_dim() || h_prev.len() != hidden || c_prev.len() != hidden {
        return Err(LstmError::ShapeMismatch(format!(
            "cell_step inputs (x={}, h={}, c={}) inconsistent with H={}, d={}",
            x.len(),
            h_prev.len(),
            c_prev.len(),
            hidden,
            params.input_dim()
        )));
    }
    let preact = |gate: &GateParams| {
        let mut a = gate.b.clone();
        gate.w.matvec_add(x, &mut a);
        gate.u.matvec_add(h_prev, &mut a);
        a
    };
    let i: Vec<f64> = preact(&params.input).into_iter().map(sigmoid).collect();
    let f: Vec<f64> = preact(&params.forget).into_iter().map(sigmoid).collect();
    let o: Vec<f64> = preact(&params.output).into_iter().map(sigmoid).collect();
    let g: Vec<f64> = preact(&params.candidate)
        .into_iter()
        .map(f64::tanh)
        .collect();
    let c: Vec<f64> = (0..hidden)
        .map(|j| f[j] * c_prev[j] + i[j] * g[j])
        .collect();
    let tanh_c: Vec<f64> = c.iter().map(|&v| v.tanh()).collect();
    let h: Vec<f64> = (0..hidden).map(|j| o[j] * tanh_c[j]).collect();
    Ok(CellStep {
        h,
        c,
        i,
        f,
        o,
        g,
        tanh_c,
    })
}

// Unrolls one direction over the sequence. Masked (PAD) positions carry the
// state through unchanged, so a left-padded prefix leaves the zero initial
// state untouched and the final position holds the last real token's state.
fn run_direction(
    seq: &EncodedSequence,
    params: &LstmParams,
    embedding: &EmbeddingMatrix,
) -> Result<DirectionCache, LstmError> {
    let hidden = params.hidden_size();
    let mut h = vec![0.0; hidden];
    let mut c = vec![0.0; hidden];
    let mut steps = Vec::with_capacity(seq.indices.len());
    for (t, &token_index) in seq.indices.iter().enumerate() {
        if !seq.mask[t] {
            steps.push(StepCache {
                token_index,
                masked: true,
                x: Vec::new(),
                i: Vec::new(),
                f: Vec::new(),
                o: Vec::new(),
                g: Vec::new(),
                c: c.clone(),
                h: h.clone(),
                tanh_c: Vec::new(),
                c_prev: Vec::new(),
                h_prev: Vec::new(),
            });
            continue;
        }
        let x = embedding.row(token_index).to_vec();
        let out = cell_step(&x, &h, &c, params)?;
        steps.push(StepCache {
            token_index,
            masked: false,
            x,
            i: out.i,
            f: out.f,
            o: out.o,
            g: out.g,
            c: out.c.clone(),
            h: out.h.clone(),
            tanh_c: out.tanh_c,
            c_prev: std::mem::replace(&mut c, out.c),
            h_prev: std::mem::replace(&mut h, out.h),
        });
    }
    Ok(DirectionCache {
        steps,
        final_h: h,
    })
}

fn check_sequence(seq: &EncodedSequence, model: &LstmModel) -> Result<(), LstmError> {
    if seq.indices.len() != model.config.cutoff || seq.mask.len() != model.config.cutoff {
        return Err(LstmError::ShapeMismatch(format!(
            "sequence length {} != configured cutoff {}",
            seq.indices.len(),
            model.config.cutoff
        )));
    }
    if !seq.mask.iter().any(|&m| m) {
        return Err(LstmError::AllPadSequence);
    }
    Ok(())
}

/// Forward pass of the unidirectional model: zero initial state, unroll over
/// all cutoff positions, then `p = σ(w·h_final + b)`.
pub fn forward(seq: &EncodedSequence, model: &LstmModel) -> Result<(f64, ForwardCache), LstmError> {
    if model.config.bidirectional {
        return Err(LstmError::InvalidConfig(
            "model is bidirectional; use forward_bidirectional".into(),
        ));
    }
    check_sequence(seq, model)?;
    let direction = run_direction(seq, &model.params, &model.embedding)?;
    let logit = dot(&model.head.w, &direction.final_h) + model.head.b;
    let probability = sigmoid(logit);
    Ok((
        probability,
        ForwardCache {
            directions: vec![direction],
            probability,
            logit,
            version: model.version,
        },
    ))
}

// The backward direction sees the reversed real-token subsequence, left-padded
// to the same cutoff.
fn reverse_real(seq: &EncodedSequence) -> EncodedSequence {
    let real: Vec<usize> = seq
        .indices
        .iter()
        .zip(&seq.mask)
        .filter(|&(_, &m)| m)
        .map(|(&i, _)| i)
        .collect();
    let cutoff = seq.indices.len();
    let pad = cutoff - real.len();
    let mut indices = vec![crate::corpus::PAD_INDEX; pad];
    indices.extend(real.iter().rev());
    let mut mask = vec![false; pad];
    mask.extend(std::iter::repeat(true).take(real.len()));
    EncodedSequence {
        indices,
        mask,
        last_real_position: seq.last_real_position,
    }
}

/// Forward pass of the bidirectional model: final states of both directions
/// are concatenated `[h_fwd; h_bwd]` before the head.
pub fn forward_bidirectional(
    seq: &EncodedSequence,
    model: &LstmModel,
) -> Result<(f64, ForwardCache), LstmError> {
    let Some(backward_params) = &model.backward_params else {
        return Err(LstmError::InvalidConfig(
            "model is unidirectional; use forward".into(),
        ));
    };
    check_sequence(seq, model)?;
    let fwd = run_direction(seq, &model.params, &model.embedding)?;
    let reversed = reverse_real(seq);
    let bwd = run_direction(&reversed, backward_params, &model.embedding)?;
    let hidden = model.config.hidden_size;
    let logit = dot(&model.head.w[..hidden], &fwd.final_h)
        + dot(&model.head.w[hidden..], &bwd.final_h)
        + model.head.b;
    let probability = sigmoid(logit);
    Ok((
        probability,
        ForwardCache {
            directions: vec![fwd, bwd],
            probability,
            logit,
            version: model.version,
        },
    ))
}

/// Binary cross-entropy with the probability clamped to [1e-12, 1-1e-12].
pub fn bce_loss(probability: f64, label: u8) -> f64 {
    let p = probability.clamp(BCE_EPSILON, 1.0 - BCE_EPSILON);
    let y = f64::from(label);
    -(y * p.ln() + (1.0 - y) * (1.0 - p).ln())
}

/// Gradients of `bce_loss ∘ forward` with respect to every trainable
/// parameter. Embedding gradients are kept per touched row.
#[derive(Debug, Clone)]
pub struct Gradients {
    pub head_w: Vec<f64>,
    pub head_b: f64,
    pub directions: Vec<LstmParams>,
    pub embedding: HashMap<usize, Vec<f64>>,
}

/// Exact backpropagation through time over all timesteps, including through
/// the embedding lookup. The cache must come from a forward pass on the same
/// parameter state.
pub fn backward(
    cache: &ForwardCache,
    label: u8,
    model: &LstmModel,
) -> Result<Gradients, LstmError> {
    if cache.version != model.version {
        return Err(LstmError::StaleCache);
    }
    let hidden = model.config.hidden_size;
    let d = model.config.embed_dim;
    let dz = cache.probability - f64::from(label);

    let mut head_w = vec![0.0; model.head.w.len()];
    for (dir_idx, direction) in cache.directions.iter().enumerate() {
        let seg = &direction.final_h;
        for (j, &hj) in seg.iter().enumerate() {
            head_w[dir_idx * hidden + j] = dz * hj;
        }
    }
    let head_b = dz;

    let mut direction_grads = Vec::new();
    let mut embedding_grads: HashMap<usize, Vec<f64>> = HashMap::new();
    let params_by_dir = model.direction_params();

    for (dir_idx, direction) in cache.directions.iter().enumerate() {
        let params = params_by_dir[dir_idx];
        let mut grads = LstmParams::zeros(hidden, d);
        let mut dh: Vec<f64> = model.head.w[dir_idx * hidden..(dir_idx + 1) * hidden]
            .iter()
            .map(|&w| dz * w)
            .collect();
        let mut dc = vec![0.0; hidden];
        for step in direction.steps.iter().rev() {
            if step.masked {
                // State carried through unchanged; so is its gradient.
                continue;
            }
            let mut da_i = vec![0.0; hidden];
            let mut da_f = vec![0.0; hidden];
            let mut da_o = vec![0.0; hidden];
            let mut da_g = vec![0.0; hidden];
            for j in 0..hidden {
                let dct = dc[j] + dh[j] * step.o[j] * (1.0 - step.tanh_c[j] * step.tanh_c[j]);
                da_o[j] = dh[j] * step.tanh_c[j] * step.o[j] * (1.0 - step.o[j]);
                da_f[j] = dct * step.c_prev[j] * step.f[j] * (1.0 - step.f[j]);
                da_i[j] = dct * step.g[j] * step.i[j] * (1.0 - step.i[j]);
                da_g[j] = dct * step.i[j] * (1.0 - step.g[j] * step.g[j]);
                dc[j] = dct * step.f[j];
            }
            let mut dx = vec![0.0; d];
            let mut dh_prev = vec![0.0; hidden];
            for (gate_grads, gate_params, da) in [
                (&mut grads.input, &params.input, &da_i),
                (&mut grads.forget, &params.forget, &da_f),
                (&mut grads.output, &params.output, &da_o),
                (&mut grads.candidate, &params.candidate, &da_g),
            ] {
                gate_grads.w.outer_add(da, &step.x);
                gate_grads.u.outer_add(da, &step.h_prev);
                for (b, &v) in gate_grads.b.iter_mut().zip(da) {
                    *b += v;
                }
                gate_params.w.matvec_t_add(da, &mut dx);
                gate_params.u.matvec_t_add(da, &mut dh_prev);
            }
            let row = embedding_grads
                .entry(step.token_index)
                .or_insert_with(|| vec![0.0; d]);
            for (r, &v) in row.iter_mut().zip(&dx) {
                *r += v;
            }
            dh = dh_prev;
        }
        direction_grads.push(grads);
    }
    Ok(Gradients {
        head_w,
        head_b,
        directions: direction_grads,
        embedding: embedding_grads,
    })
}

/// Maximum relative error between analytic and central-finite-difference
/// gradients over every trainable parameter:
/// `|analytic - numeric| / max(|analytic|, |numeric|, 1e-8)`.
pub fn grad_check(
    model: &LstmModel,
    seq: &EncodedSequence,
    label: u8,
    delta: f64,
) -> Result<f64, LstmError> {
    if !(delta > 0.0) {
        return Err(LstmError::InvalidDelta(delta));
    }
    let (_, cache) = model.infer(seq)?;
    let grads = backward(&cache, label, model)?;
    let layout = ParamLayout::of(model);
    let analytic = {
        let mut flat = vec![0.0; layout.len()];
        layout.add_grads(&grads, &mut flat, 1.0);
        flat
    };
    let base = layout.collect(model);
    let mut work = model.clone();
    let mut probe = base.clone();
    let mut max_rel: f64 = 0.0;
    for k in 0..base.len() {
        probe[k] = base[k] + delta;
        layout.apply(&mut work, &probe);
        let loss_plus = bce_loss(work.predict_proba(seq)?, label);
        probe[k] = base[k] - delta;
        layout.apply(&mut work, &probe);
        let loss_minus = bce_loss(work.predict_proba(seq)?, label);
        probe[k] = base[k];
        let numeric = (loss_plus - loss_minus) / (2.0 * delta);
        let rel = (analytic[k] - numeric).abs()
            / analytic[k].abs().max(numeric.abs()).max(1e-8);
        max_rel = max_rel.max(rel);
    }
    Ok(max_rel)
}
