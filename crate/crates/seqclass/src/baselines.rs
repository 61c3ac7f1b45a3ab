//! Classical baselines: tf-idf features, logistic regression, multinomial
//! naive Bayes, and the top-n-gram title feature selector.
//!
//! The logistic solver is deterministic full-batch gradient descent with a
//! backtracking line search; the objective is convex so only the iteration
//! count depends on the solver.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::math::{sigmoid, softplus};

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("features and labels differ in length ({x} vs {y})")]
    LengthMismatch { x: usize, y: usize },
    #[error("training data must contain both classes")]
    SingleClass,
    #[error("negative count {value} at feature {index}")]
    NegativeCount { index: usize, value: f64 },
    #[error("sparse vector invalid: {0}")]
    InvalidSparseVector(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Sparse feature vector: (index, value) pairs with strictly increasing
/// indices and nonzero finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector(Vec<(usize, f64)>);

impl SparseVector {
    pub fn new(entries: Vec<(usize, f64)>) -> Result<Self, BaselineError> {
        for window in entries.windows(2) {
            if window[0].0 >= window[1].0 {
                return Err(BaselineError::InvalidSparseVector(
                    "indices must be strictly increasing".into(),
                ));
            }
        }
        for &(index, value) in &entries {
            if value == 0.0 || !value.is_finite() {
                return Err(BaselineError::InvalidSparseVector(format!(
                    "value at index {index} must be nonzero and finite, got {value}"
                )));
            }
        }
        Ok(SparseVector(entries))
    }

    pub fn empty() -> Self {
        SparseVector(Vec::new())
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|&(i, _)| i)
    }

    /// Dot product against a dense weight vector; indices beyond it contribute 0.
    pub fn dot_dense(&self, dense: &[f64]) -> f64 {
        self.0
            .iter()
            .filter(|&&(i, _)| i < dense.len())
            .map(|&(i, v)| v * dense[i])
            .sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.0.iter().map(|&(_, v)| v * v).sum::<f64>().sqrt()
    }
}

/// Fitted tf-idf vocabulary: term → column plus smoothed idf weights.
#[derive(Debug, Clone)]
pub struct TfidfModel {
    term_index: HashMap<String, usize>,
    idf: Vec<f64>,
}

impl TfidfModel {
    pub fn term_count(&self) -> usize {
        self.idf.len()
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.term_index.get(term).copied()
    }

    pub fn idf_of(&self, term: &str) -> Option<f64> {
        self.index_of(term).map(|i| self.idf[i])
    }
}

/// Fits tf-idf over tokenized documents: `idf(t) = ln((1+N)/(1+df(t))) + 1`,
/// vocabulary = all corpus terms, columns in lexicographic term order.
pub fn fit_tfidf(corpus: &[Vec<String>]) -> Result<TfidfModel, BaselineError> {
    if corpus.is_empty() {
        return Err(BaselineError::EmptyCorpus);
    }
    let n = corpus.len() as f64;
    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for doc in corpus {
        let unique: BTreeSet<&str> = doc.iter().map(String::as_str).collect();
        for term in unique {
            *df.entry(term).or_insert(0) += 1;
        }
    }
    let mut term_index = HashMap::with_capacity(df.len());
    let mut idf = Vec::with_capacity(df.len());
    for (column, (term, count)) in df.into_iter().enumerate() {
        term_index.insert(term.to_string(), column);
        idf.push(((1.0 + n) / (1.0 + count as f64)).ln() + 1.0);
    }
    Ok(TfidfModel { term_index, idf })
}

/// Transforms a tokenized document: `count(t) × idf(t)`, then l2-normalized.
/// Terms unseen at fit time are dropped.
pub fn transform_tfidf(model: &TfidfModel, doc: &[String]) -> SparseVector {
    let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
    for term in doc {
        if let Some(column) = model.index_of(term) {
            *counts.entry(column).or_insert(0.0) += 1.0;
        }
    }
    let mut entries: Vec<(usize, f64)> = counts
        .into_iter()
        .map(|(column, count)| (column, count * model.idf[column]))
        .collect();
    let norm = entries.iter().map(|&(_, v)| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        entries.iter_mut().for_each(|(_, v)| *v /= norm);
    }
    SparseVector(entries)
}

/// Logistic-regression weights.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
}

fn infer_dim(x: &[SparseVector]) -> usize {
    x.iter()
        .filter_map(SparseVector::max_index)
        .max()
        .map_or(0, |m| m + 1)
}

fn check_labels(x_len: usize, y: &[u8]) -> Result<(), BaselineError> {
    if x_len != y.len() {
        return Err(BaselineError::LengthMismatch {
            x: x_len,
            y: y.len(),
        });
    }
    if !(y.contains(&0) && y.contains(&1)) {
        return Err(BaselineError::SingleClass);
    }
    Ok(())
}

/// Minimizes `mean BCE + ‖w‖²/(2·C·N)` with full-batch gradient descent and a
/// backtracking (Armijo) line search. Stops at `max_iter` iterations or when
/// the gradient norm drops below 1e-6.
pub fn train_logistic(
    x: &[SparseVector],
    y: &[u8],
    l2_inverse_strength: f64,
    max_iter: usize,
) -> Result<LinearModel, BaselineError> {
    train_logistic_with_history(x, y, l2_inverse_strength, max_iter).map(|(m, _)| m)
}

/// As [`train_logistic`], also returning the objective value at every
/// iteration (non-increasing by the line-search guarantee).
pub fn train_logistic_with_history(
    x: &[SparseVector],
    y: &[u8],
    l2_inverse_strength: f64,
    max_iter: usize,
) -> Result<(LinearModel, Vec<f64>), BaselineError> {
    check_labels(x.len(), y)?;
    if x.len() < 2 {
        return Err(BaselineError::InvalidParameter(
            "need at least two examples".into(),
        ));
    }
    if l2_inverse_strength <= 0.0 {
        return Err(BaselineError::InvalidParameter(
            "l2 inverse strength must be positive".into(),
        ));
    }
    let n = x.len() as f64;
    let dim = infer_dim(x);
    let reg = 1.0 / (l2_inverse_strength * n);

    let objective = |w: &[f64], b: f64| -> f64 {
        let data: f64 = x
            .iter()
            .zip(y)
            .map(|(xi, &yi)| {
                let z = xi.dot_dense(w) + b;
                softplus(z) - f64::from(yi) * z
            })
            .sum();
        let penalty: f64 = w.iter().map(|v| v * v).sum::<f64>() * reg / 2.0;
        data / n + penalty
    };
    let gradient = |w: &[f64], b: f64| -> (Vec<f64>, f64) {
        let mut gw = vec![0.0; dim];
        let mut gb = 0.0;
        for (xi, &yi) in x.iter().zip(y) {
            let residual = sigmoid(xi.dot_dense(w) + b) - f64::from(yi);
            for &(index, value) in xi.entries() {
                gw[index] += residual * value;
            }
            gb += residual;
        }
        for (g, &wv) in gw.iter_mut().zip(w) {
            *g = *g / n + reg * wv;
        }
        (gw, gb / n)
    };

    let mut w = vec![0.0; dim];
    let mut b = 0.0;
    let mut history = vec![objective(&w, b)];
    for _ in 0..max_iter {
        let (gw, gb) = gradient(&w, b);
        let grad_sq: f64 = gw.iter().map(|g| g * g).sum::<f64>() + gb * gb;
        if grad_sq.sqrt() < 1e-6 {
            break;
        }
        let current = *history.last().unwrap();
        let mut eta = 1.0;
        let mut stepped = false;
        for _ in 0..60 {
            let w_next: Vec<f64> = w.iter().zip(&gw).map(|(wv, g)| wv - eta * g).collect();
            let b_next = b - eta * gb;
            let next = objective(&w_next, b_next);
            if next <= current - 1e-4 * eta * grad_sq {
                w = w_next;
                b = b_next;
                history.push(next);
                stepped = true;
                break;
            }
            eta *= 0.5;
        }
        if !stepped {
            break;
        }
    }
    Ok((LinearModel { weights: w, bias: b }, history))
}

/// `σ(w·x + b)`.
pub fn predict_linear(model: &LinearModel, x: &SparseVector) -> f64 {
    sigmoid(x.dot_dense(&model.weights) + model.bias)
}

/// Multinomial naive Bayes with Laplace smoothing. Rows of
/// `exp(log_likelihood)` sum to 1 per class.
#[derive(Debug, Clone)]
pub struct NbModel {
    pub log_priors: [f64; 2],
    pub log_likelihood: [Vec<f64>; 2],
}

/// Fits multinomial NB on (possibly fractional) nonnegative count vectors.
pub fn train_nb(x: &[SparseVector], y: &[u8], alpha: f64) -> Result<NbModel, BaselineError> {
    check_labels(x.len(), y)?;
    if alpha <= 0.0 {
        return Err(BaselineError::InvalidParameter(
            "alpha must be positive".into(),
        ));
    }
    for xi in x {
        for &(index, value) in xi.entries() {
            if value < 0.0 {
                return Err(BaselineError::NegativeCount { index, value });
            }
        }
    }
    let dim = infer_dim(x);
    let mut term_sums = [vec![0.0; dim], vec![0.0; dim]];
    let mut doc_counts = [0usize; 2];
    for (xi, &yi) in x.iter().zip(y) {
        let class = yi as usize;
        doc_counts[class] += 1;
        for &(index, value) in xi.entries() {
            term_sums[class][index] += value;
        }
    }
    let n = x.len() as f64;
    let log_priors = [
        (doc_counts[0] as f64 / n).ln(),
        (doc_counts[1] as f64 / n).ln(),
    ];
    let log_likelihood = term_sums.map(|sums| {
        let total: f64 = sums.iter().sum();
        let denom = total + alpha * dim as f64;
        sums.iter().map(|&s| ((s + alpha) / denom).ln()).collect()
    });
    Ok(NbModel {
        log_priors,
        log_likelihood,
    })
}

/// Posterior probability of class 1 under the model, via log-sum-exp.
/// Features unseen at training time are ignored.
pub fn predict_nb(model: &NbModel, x: &SparseVector) -> f64 {
    let log_posterior = |class: usize| -> f64 {
        let lik = &model.log_likelihood[class];
        model.log_priors[class]
            + x.entries()
                .iter()
                .filter(|&&(i, _)| i < lik.len())
                .map(|&(i, v)| v * lik[i])
                .sum::<f64>()
    };
    let lp0 = log_posterior(0);
    let lp1 = log_posterior(1);
    let max = lp0.max(lp1);
    let log_z = max + ((lp0 - max).exp() + (lp1 - max).exp()).ln();
    (lp1 - log_z).exp()
}

/// Union of the k most frequent unigrams+bigrams per class, with a binary
/// presence featurizer. Ties break lexicographically.
#[derive(Debug, Clone)]
pub struct NgramFeatures {
    ngrams: Vec<String>,
    index: HashMap<String, usize>,
}

impl NgramFeatures {
    /// Selected n-grams in lexicographic order (these are the columns).
    pub fn ngrams(&self) -> &[String] {
        &self.ngrams
    }

    pub fn len(&self) -> usize {
        self.ngrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ngrams.is_empty()
    }

    /// Binary-presence encoding of a tokenized document.
    pub fn featurize(&self, doc: &[String]) -> SparseVector {
        let mut present: BTreeSet<usize> = BTreeSet::new();
        for gram in doc_ngrams(doc) {
            if let Some(&column) = self.index.get(&gram) {
                present.insert(column);
            }
        }
        SparseVector(present.into_iter().map(|c| (c, 1.0)).collect())
    }
}

fn doc_ngrams(doc: &[String]) -> Vec<String> {
    let mut grams: Vec<String> = doc.to_vec();
    grams.extend(doc.windows(2).map(|pair| format!("{} {}", pair[0], pair[1])));
    grams
}

/// Selects the `k` most common unigrams or bigrams per class and returns their
/// union as a feature map.
pub fn select_top_ngrams(
    corpus: &[Vec<String>],
    labels: &[u8],
    k: usize,
) -> Result<NgramFeatures, BaselineError> {
    assert!(k >= 1, "k must be >= 1");
    if corpus.len() != labels.len() {
        return Err(BaselineError::LengthMismatch {
            x: corpus.len(),
            y: labels.len(),
        });
    }
    let mut class_counts: [BTreeMap<String, u64>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for (doc, &label) in corpus.iter().zip(labels) {
        let counts = &mut class_counts[label as usize];
        for gram in doc_ngrams(doc) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    let mut union: BTreeSet<String> = BTreeSet::new();
    for counts in class_counts {
        let mut ranked: Vec<(String, u64)> = counts.into_iter().collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        union.extend(ranked.into_iter().take(k).map(|(gram, _)| gram));
    }
    let ngrams: Vec<String> = union.into_iter().collect();
    let index = ngrams
        .iter()
        .enumerate()
        .map(|(i, g)| (g.clone(), i))
        .collect();
    Ok(NgramFeatures { ngrams, index })
}
