//! Mini-batch training: seeded shuffling, averaged gradients, global-norm
//! clipping, and the SGD/Adam update rules.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{compose_signal, encode_sequence, tokenize, Document, SignalSpec, Vocabulary};
use crate::embeddings::EmbeddingMatrix;

use super::{backward, bce_loss, Gradients, LstmError, LstmModel, ModelConfig, OptimizerKind};

const GRAD_CLIP_NORM: f64 = 5.0;
const ADAM_BETA1: f64 = 0.9;
const ADAM_BETA2: f64 = 0.999;
const ADAM_EPSILON: f64 = 1e-8;
// Keeps the shuffle stream distinct from the parameter-init stream.
const SHUFFLE_SALT: u64 = 0x7368_7566;

/// Flat ordering over every trainable parameter: embedding rows (when
/// trainable), then per direction the gates i, f, o, c as (W, U, b), then the
/// head. Gradient flattening, optimizer state, and finite-difference probing
/// all share this layout.
pub(crate) struct ParamLayout {
    include_embedding: bool,
    vocab_size: usize,
    dim: usize,
    hidden: usize,
    directions: usize,
    head_len: usize,
}

impl ParamLayout {
    pub(crate) fn of(model: &LstmModel) -> ParamLayout {
        ParamLayout {
            include_embedding: model.embedding.trainable,
            vocab_size: model.embedding.vocab_size(),
            dim: model.config.embed_dim,
            hidden: model.config.hidden_size,
            directions: if model.config.bidirectional { 2 } else { 1 },
            head_len: model.head.w.len(),
        }
    }

    fn embedding_len(&self) -> usize {
        if self.include_embedding {
            self.vocab_size * self.dim
        } else {
            0
        }
    }

    fn direction_len(&self) -> usize {
        4 * (self.hidden * self.dim + self.hidden * self.hidden + self.hidden)
    }

    pub(crate) fn len(&self) -> usize {
        self.embedding_len() + self.directions * self.direction_len() + self.head_len + 1
    }

    pub(crate) fn collect(&self, model: &LstmModel) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        if self.include_embedding {
            out.extend_from_slice(model.embedding.data());
        }
        let dirs: Vec<&super::LstmParams> = match &model.backward_params {
            None => vec![&model.params],
            Some(bp) => vec![&model.params, bp],
        };
        for params in dirs {
            for gate in params.gates() {
                out.extend_from_slice(gate.w.data());
                out.extend_from_slice(gate.u.data());
                out.extend_from_slice(&gate.b);
            }
        }
        out.extend_from_slice(&model.head.w);
        out.push(model.head.b);
        debug_assert_eq!(out.len(), self.len());
        out
    }

    pub(crate) fn apply(&self, model: &mut LstmModel, flat: &[f64]) {
        debug_assert_eq!(flat.len(), self.len());
        let mut pos = 0;
        if self.include_embedding {
            let n = self.vocab_size * self.dim;
            model.embedding.data_mut().copy_from_slice(&flat[..n]);
            pos = n;
        }
        let mut dirs: Vec<&mut super::LstmParams> = Vec::new();
        dirs.push(&mut model.params);
        if let Some(bp) = model.backward_params.as_mut() {
            dirs.push(bp);
        }
        for params in dirs {
            for gate in params.gates_mut() {
                let wn = gate.w.data().len();
                gate.w.data_mut().copy_from_slice(&flat[pos..pos + wn]);
                pos += wn;
                let un = gate.u.data().len();
                gate.u.data_mut().copy_from_slice(&flat[pos..pos + un]);
                pos += un;
                let bn = gate.b.len();
                gate.b.copy_from_slice(&flat[pos..pos + bn]);
                pos += bn;
            }
        }
        model.head.w.copy_from_slice(&flat[pos..pos + self.head_len]);
        pos += self.head_len;
        model.head.b = flat[pos];
        model.bump_version();
    }

    /// `out += scale * grads`, in layout order.
    pub(crate) fn add_grads(&self, grads: &Gradients, out: &mut [f64], scale: f64) {
        debug_assert_eq!(out.len(), self.len());
        if self.include_embedding {
            for (&row, grad) in &grads.embedding {
                let base = row * self.dim;
                for (j, &g) in grad.iter().enumerate() {
                    out[base + j] += scale * g;
                }
            }
        }
        let mut pos = self.embedding_len();
        for params in &grads.directions {
            for gate in params.gates() {
                for &g in gate.w.data() {
                    out[pos] += scale * g;
                    pos += 1;
                }
                for &g in gate.u.data() {
                    out[pos] += scale * g;
                    pos += 1;
                }
                for &g in &gate.b {
                    out[pos] += scale * g;
                    pos += 1;
                }
            }
        }
        for &g in &grads.head_w {
            out[pos] += scale * g;
            pos += 1;
        }
        out[pos] += scale * grads.head_b;
    }
}

fn clip_global_norm(grad: &mut [f64], max_norm: f64) {
    let norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
    if norm > max_norm {
        let scale = max_norm / norm;
        grad.iter_mut().for_each(|g| *g *= scale);
    }
}

enum OptimizerState {
    Sgd,
    Adam { m: Vec<f64>, v: Vec<f64>, t: u64 },
}

impl OptimizerState {
    fn new(kind: OptimizerKind, len: usize) -> OptimizerState {
        match kind {
            OptimizerKind::Sgd => OptimizerState::Sgd,
            OptimizerKind::Adam => OptimizerState::Adam {
                m: vec![0.0; len],
                v: vec![0.0; len],
                t: 0,
            },
        }
    }

    fn step(&mut self, lr: f64, grad: &[f64], params: &mut [f64]) {
        match self {
            OptimizerState::Sgd => {
                for (p, &g) in params.iter_mut().zip(grad) {
                    *p -= lr * g;
                }
            }
            OptimizerState::Adam { m, v, t } => {
                *t += 1;
                let bc1 = 1.0 - ADAM_BETA1.powi(*t as i32);
                let bc2 = 1.0 - ADAM_BETA2.powi(*t as i32);
                for k in 0..params.len() {
                    m[k] = ADAM_BETA1 * m[k] + (1.0 - ADAM_BETA1) * grad[k];
                    v[k] = ADAM_BETA2 * v[k] + (1.0 - ADAM_BETA2) * grad[k] * grad[k];
                    let m_hat = m[k] / bc1;
                    let v_hat = v[k] / bc2;
                    params[k] -= lr * m_hat / (v_hat.sqrt() + ADAM_EPSILON);
                }
            }
        }
    }
}

/// A trained model and the mean loss of each epoch.
#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub model: LstmModel,
    pub epoch_losses: Vec<f64>,
}

/// Trains an LSTM classifier on labeled documents.
///
/// Shuffles per epoch with a seeded generator, groups into mini-batches of
/// `batch_size` (final partial batch kept), averages gradients over each
/// batch, clips their global norm at 5.0, and applies the configured
/// optimizer. Deterministic given the seed. No dropout anywhere.
pub fn train(
    dataset: &[Document],
    signal: SignalSpec,
    vocab: &Vocabulary,
    embedding: EmbeddingMatrix,
    config: &ModelConfig,
) -> Result<TrainOutcome, LstmError> {
    config.validate()?;
    if dataset.is_empty() {
        return Err(LstmError::EmptyDataset);
    }
    if embedding.dim() != config.embed_dim {
        return Err(LstmError::ShapeMismatch(format!(
            "embedding dim {} != config embed_dim {}",
            embedding.dim(),
            config.embed_dim
        )));
    }
    if embedding.vocab_size() != vocab.len() {
        return Err(LstmError::ShapeMismatch(format!(
            "embedding rows {} != vocabulary size {}",
            embedding.vocab_size(),
            vocab.len()
        )));
    }
    let mut examples = Vec::with_capacity(dataset.len());
    for doc in dataset {
        let label = doc.label.ok_or_else(|| LstmError::UnlabeledDocument {
            id: doc.id.clone(),
        })?;
        let tokens = tokenize(&compose_signal(doc, signal));
        let seq = encode_sequence(&tokens, vocab, config.cutoff);
        if seq.last_real_position.is_none() {
            return Err(LstmError::AllPadDocument { id: doc.id.clone() });
        }
        examples.push((seq, label));
    }

    let mut model = LstmModel::init(embedding, config)?;
    let layout = ParamLayout::of(&model);
    let mut params_flat = layout.collect(&model);
    let mut grad_flat = vec![0.0; layout.len()];
    let mut optimizer = OptimizerState::new(config.optimizer, layout.len());
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ SHUFFLE_SALT);
    let mut order: Vec<usize> = (0..examples.len()).collect();
    let mut epoch_losses = Vec::with_capacity(config.epochs);

    for _ in 0..config.epochs {
        order.shuffle(&mut rng);
        let mut loss_sum = 0.0;
        for batch in order.chunks(config.batch_size) {
            grad_flat.iter_mut().for_each(|g| *g = 0.0);
            for &idx in batch {
                let (seq, label) = &examples[idx];
                let (probability, cache) = model.infer(seq)?;
                loss_sum += bce_loss(probability, *label);
                let grads = backward(&cache, *label, &model)?;
                layout.add_grads(&grads, &mut grad_flat, 1.0);
            }
            let inv = 1.0 / batch.len() as f64;
            grad_flat.iter_mut().for_each(|g| *g *= inv);
            clip_global_norm(&mut grad_flat, GRAD_CLIP_NORM);
            optimizer.step(config.learning_rate, &grad_flat, &mut params_flat);
            layout.apply(&mut model, &params_flat);
        }
        epoch_losses.push(loss_sum / examples.len() as f64);
    }
    Ok(TrainOutcome {
        model,
        epoch_losses,
    })
}
