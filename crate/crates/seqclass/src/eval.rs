//! Metrics and experiment protocol: per-class recall, rank-based ROC-AUC,
//! stratified k-fold cross-validation, and output-distribution statistics
//! grouped by source.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::corpus::Document;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("predictions and labels differ in length ({predictions} vs {labels})")]
    LengthMismatch { predictions: usize, labels: usize },
    #[error("label {0} is absent from the data")]
    MissingClass(u8),
    #[error("labels must be 0 or 1, found {0}")]
    InvalidLabel(u8),
    #[error("k must be >= 2, got {0}")]
    InvalidK(usize),
    #[error("k = {k} exceeds the count of class {label} ({count})")]
    KExceedsClassCount { k: usize, label: u8, count: usize },
    #[error("document {id:?} has no label")]
    UnlabeledDocument { id: String },
    #[error("score group is empty")]
    EmptyGroup,
    #[error("trainer returned {got} predictions for {expected} test documents")]
    PredictionCount { expected: usize, got: usize },
    #[error("trainer failed: {0}")]
    Trainer(#[source] Box<dyn std::error::Error + Send + Sync>),
}

/// Per-class recall and AUC over one evaluation set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub class1_recall: f64,
    pub class2_recall: f64,
    pub auc: f64,
    pub n: usize,
}

fn check_both_classes(labels: &[u8]) -> Result<(), EvalError> {
    for &label in labels {
        if label > 1 {
            return Err(EvalError::InvalidLabel(label));
        }
    }
    for class in [1u8, 0u8] {
        if !labels.contains(&class) {
            return Err(EvalError::MissingClass(class));
        }
    }
    Ok(())
}

/// Class-1 recall (over label 1) and class-2 recall (over label 0).
pub fn class_recalls(predictions: &[u8], labels: &[u8]) -> Result<(f64, f64), EvalError> {
    if predictions.len() != labels.len() {
        return Err(EvalError::LengthMismatch {
            predictions: predictions.len(),
            labels: labels.len(),
        });
    }
    check_both_classes(labels)?;
    let mut correct = [0usize; 2];
    let mut total = [0usize; 2];
    for (&pred, &label) in predictions.iter().zip(labels) {
        total[label as usize] += 1;
        if pred == label {
            correct[label as usize] += 1;
        }
    }
    Ok((
        correct[1] as f64 / total[1] as f64,
        correct[0] as f64 / total[0] as f64,
    ))
}

/// Rank-based (Mann-Whitney) ROC-AUC; tied positive-negative pairs count 0.5.
pub fn roc_auc(scores: &[f64], labels: &[u8]) -> Result<f64, EvalError> {
    if scores.len() != labels.len() {
        return Err(EvalError::LengthMismatch {
            predictions: scores.len(),
            labels: labels.len(),
        });
    }
    check_both_classes(labels)?;
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    // Average 1-based ranks over tied groups, then sum positive ranks.
    let mut positive_rank_sum = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        let mean_rank = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            if labels[idx] == 1 {
                positive_rank_sum += mean_rank;
            }
        }
        start = end;
    }
    let n_pos = labels.iter().filter(|&&y| y == 1).count() as f64;
    let n_neg = labels.len() as f64 - n_pos;
    Ok((positive_rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg))
}

/// Bundles recalls and AUC over one prediction set.
pub fn metrics_report(
    scores: &[f64],
    classes: &[u8],
    labels: &[u8],
) -> Result<MetricsReport, EvalError> {
    let (class1_recall, class2_recall) = class_recalls(classes, labels)?;
    let auc = roc_auc(scores, labels)?;
    Ok(MetricsReport {
        class1_recall,
        class2_recall,
        auc,
        n: labels.len(),
    })
}

/// Stratified fold assignment: document id → fold index in `[0, k)`.
#[derive(Debug, Clone)]
pub struct FoldPlan {
    ids: Vec<String>,
    assignments: Vec<usize>,
    by_id: HashMap<String, usize>,
    k: usize,
}

impl FoldPlan {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Fold of the i-th input document.
    pub fn fold_of_index(&self, index: usize) -> usize {
        self.assignments[index]
    }

    pub fn fold_of_id(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignments.len())
            .filter(|&i| self.assignments[i] == fold)
            .collect()
    }

    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignments.len())
            .filter(|&i| self.assignments[i] != fold)
            .collect()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in &self.assignments {
            sizes[f] += 1;
        }
        sizes
    }
}

/// Stratified k-fold split: within each class, shuffle by seed and deal
/// round-robin. The dealing position carries across classes so total fold
/// sizes also stay within one of each other.
pub fn kfold_split(
    ids: &[String],
    labels: &[u8],
    k: usize,
    seed: u64,
) -> Result<FoldPlan, EvalError> {
    if ids.len() != labels.len() {
        return Err(EvalError::LengthMismatch {
            predictions: ids.len(),
            labels: labels.len(),
        });
    }
    if k < 2 {
        return Err(EvalError::InvalidK(k));
    }
    check_both_classes(labels)?;
    for class in [0u8, 1u8] {
        let count = labels.iter().filter(|&&y| y == class).count();
        if k > count {
            return Err(EvalError::KExceedsClassCount {
                k,
                label: class,
                count,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignments = vec![0usize; ids.len()];
    let mut next_fold = 0usize;
    for class in [0u8, 1u8] {
        let mut members: Vec<usize> = (0..ids.len()).filter(|&i| labels[i] == class).collect();
        members.shuffle(&mut rng);
        for index in members {
            assignments[index] = next_fold;
            next_fold = (next_fold + 1) % k;
        }
    }
    let by_id = ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.clone(), assignments[i]))
        .collect();
    Ok(FoldPlan {
        ids: ids.to_vec(),
        assignments,
        by_id,
        k,
    })
}

/// Mean or population standard deviation of the three metrics across folds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricSummary {
    pub class1_recall: f64,
    pub class2_recall: f64,
    pub auc: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CvReport {
    pub per_fold: Vec<MetricsReport>,
    pub mean: MetricSummary,
    pub std: MetricSummary,
}

fn population_mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let variance = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, variance.sqrt())
}

/// Runs stratified k-fold cross-validation.
///
/// For each fold the trainer receives (train docs, test docs) and must return
/// one `(score, class)` per test document, in order. No tuning happens inside
/// folds; the per-metric spread is the population standard deviation.
pub fn cross_validate<F>(
    mut trainer: F,
    dataset: &[Document],
    k: usize,
    seed: u64,
) -> Result<CvReport, EvalError>
where
    F: FnMut(
        &[Document],
        &[Document],
    ) -> Result<Vec<(f64, u8)>, Box<dyn std::error::Error + Send + Sync>>,
{
    let ids: Vec<String> = dataset.iter().map(|d| d.id.clone()).collect();
    let labels: Vec<u8> = dataset
        .iter()
        .map(|d| {
            d.label.ok_or_else(|| EvalError::UnlabeledDocument {
                id: d.id.clone(),
            })
        })
        .collect::<Result<_, _>>()?;
    let plan = kfold_split(&ids, &labels, k, seed)?;
    let mut per_fold = Vec::with_capacity(k);
    for fold in 0..k {
        let train: Vec<Document> = plan
            .train_indices(fold)
            .into_iter()
            .map(|i| dataset[i].clone())
            .collect();
        let test_indices = plan.test_indices(fold);
        let test: Vec<Document> = test_indices.iter().map(|&i| dataset[i].clone()).collect();
        let predictions = trainer(&train, &test).map_err(EvalError::Trainer)?;
        if predictions.len() != test.len() {
            return Err(EvalError::PredictionCount {
                expected: test.len(),
                got: predictions.len(),
            });
        }
        let scores: Vec<f64> = predictions.iter().map(|&(s, _)| s).collect();
        let classes: Vec<u8> = predictions.iter().map(|&(_, c)| c).collect();
        let fold_labels: Vec<u8> = test_indices.iter().map(|&i| labels[i]).collect();
        per_fold.push(metrics_report(&scores, &classes, &fold_labels)?);
    }
    let summarize = |extract: fn(&MetricsReport) -> f64| {
        let values: Vec<f64> = per_fold.iter().map(extract).collect();
        population_mean_std(&values)
    };
    let (c1_mean, c1_std) = summarize(|m| m.class1_recall);
    let (c2_mean, c2_std) = summarize(|m| m.class2_recall);
    let (auc_mean, auc_std) = summarize(|m| m.auc);
    Ok(CvReport {
        per_fold,
        mean: MetricSummary {
            class1_recall: c1_mean,
            class2_recall: c2_mean,
            auc: auc_mean,
        },
        std: MetricSummary {
            class1_recall: c1_std,
            class2_recall: c2_std,
            auc: auc_std,
        },
    })
}

/// Distribution of classifier outputs within one group. Scores exactly at the
/// threshold are reported in their own bucket.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputStats {
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    pub std: f64,
    pub n_below: usize,
    pub n_above: usize,
    pub n_at: usize,
    pub frac_below: f64,
    pub frac_above: f64,
    pub frac_at: f64,
}

/// Count, mean, median (midpoint for even counts), population std, and the
/// strictly-below / strictly-above / at-threshold split.
pub fn output_stats(scores: &[f64], threshold: f64) -> Result<OutputStats, EvalError> {
    if scores.is_empty() {
        return Err(EvalError::EmptyGroup);
    }
    let n = scores.len();
    let (mean, std) = population_mean_std(scores);
    let mut sorted = scores.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    let n_below = scores.iter().filter(|&&s| s < threshold).count();
    let n_above = scores.iter().filter(|&&s| s > threshold).count();
    let n_at = n - n_below - n_above;
    Ok(OutputStats {
        count: n,
        mean,
        median,
        std,
        n_below,
        n_above,
        n_at,
        frac_below: n_below as f64 / n as f64,
        frac_above: n_above as f64 / n as f64,
        frac_at: n_at as f64 / n as f64,
    })
}

/// Per-source output statistics over `(source, score)` pairs.
pub fn corpus_output_stats(
    scored: &[(String, f64)],
    threshold: f64,
) -> Result<BTreeMap<String, OutputStats>, EvalError> {
    let mut groups: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for (source, score) in scored {
        groups.entry(source).or_default().push(*score);
    }
    groups
        .into_iter()
        .map(|(source, scores)| Ok((source.to_string(), output_stats(&scores, threshold)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn recalls_hand_confusion() {
        let (c1, c2) = class_recalls(&[1, 1, 0, 0], &[1, 0, 1, 0]).unwrap();
        assert_eq!((c1, c2), (0.5, 0.5));
    }

    #[test]
    fn recalls_perfect_and_degenerate_predictions() {
        assert_eq!(class_recalls(&[1, 0, 1], &[1, 0, 1]).unwrap(), (1.0, 1.0));
        assert_eq!(class_recalls(&[1, 1, 1], &[1, 0, 1]).unwrap(), (1.0, 0.0));
    }

    #[test]
    fn recalls_require_both_classes() {
        assert!(matches!(
            class_recalls(&[1, 1], &[1, 1]),
            Err(EvalError::MissingClass(0))
        ));
        assert!(matches!(
            class_recalls(&[1], &[1, 0]),
            Err(EvalError::LengthMismatch { .. })
        ));
    }

    // O(n²) pairwise oracle: P(score_pos > score_neg) + 0.5 P(tie).
    fn auc_pairwise(scores: &[f64], labels: &[u8]) -> f64 {
        let mut wins = 0.0;
        let mut pairs = 0.0;
        for (i, &si) in scores.iter().enumerate() {
            if labels[i] != 1 {
                continue;
            }
            for (j, &sj) in scores.iter().enumerate() {
                if labels[j] != 0 {
                    continue;
                }
                pairs += 1.0;
                if si > sj {
                    wins += 1.0;
                } else if si == sj {
                    wins += 0.5;
                }
            }
        }
        wins / pairs
    }

    #[test]
    fn auc_perfect_separation() {
        let auc = roc_auc(&[0.9, 0.8, 0.3, 0.1], &[1, 1, 0, 0]).unwrap();
        assert_eq!(auc, 1.0);
    }

    #[test]
    fn auc_all_ties_is_half() {
        let auc = roc_auc(&[0.4, 0.4, 0.4, 0.4], &[1, 0, 1, 0]).unwrap();
        assert_eq!(auc, 0.5);
    }

    #[test]
    fn auc_matches_pairwise_oracle_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..300 {
            let n = rng.gen_range(2..60);
            // Coarse grid of scores so ties actually occur.
            let scores: Vec<f64> = (0..n)
                .map(|_| f64::from(rng.gen_range(0..10)) / 10.0)
                .collect();
            let mut labels: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2) as u8).collect();
            labels[0] = 1;
            labels[n - 1] = 0;
            let fast = roc_auc(&scores, &labels).unwrap();
            let slow = auc_pairwise(&scores, &labels);
            assert!((fast - slow).abs() < 1e-12, "fast {fast} slow {slow}");
        }
    }

    #[test]
    fn auc_complement_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..100 {
            let n = rng.gen_range(4..40);
            let scores: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let mut labels: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2) as u8).collect();
            labels[0] = 1;
            labels[1] = 0;
            let flipped: Vec<u8> = labels.iter().map(|&y| 1 - y).collect();
            let a = roc_auc(&scores, &labels).unwrap();
            let b = roc_auc(&scores, &flipped).unwrap();
            assert!((a + b - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn auc_invariant_under_strictly_increasing_transforms() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let n = rng.gen_range(4..40);
            let scores: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(-5..5))).collect();
            let mut labels: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2) as u8).collect();
            labels[0] = 1;
            labels[1] = 0;
            let base = roc_auc(&scores, &labels).unwrap();
            let affine: Vec<f64> = scores.iter().map(|&s| 2.5 * s + 7.0).collect();
            let squashed: Vec<f64> = scores.iter().map(|&s| crate::math::sigmoid(s)).collect();
            assert!((roc_auc(&affine, &labels).unwrap() - base).abs() < 1e-12);
            assert!((roc_auc(&squashed, &labels).unwrap() - base).abs() < 1e-12);
        }
    }

    fn ids(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("id{i}")).collect()
    }

    #[test]
    fn kfold_balanced_ten_in_five_folds() {
        let labels: Vec<u8> = (0..10).map(|i| (i % 2) as u8).collect();
        let plan = kfold_split(&ids(10), &labels, 5, 3).unwrap();
        assert_eq!(plan.fold_sizes(), vec![2; 5]);
        for fold in 0..5 {
            let classes: Vec<u8> = plan.test_indices(fold).iter().map(|&i| labels[i]).collect();
            assert_eq!(classes.iter().filter(|&&c| c == 1).count(), 1);
        }
    }

    #[test]
    fn kfold_is_deterministic() {
        let labels: Vec<u8> = (0..20).map(|i| (i % 2) as u8).collect();
        let a = kfold_split(&ids(20), &labels, 4, 9).unwrap();
        let b = kfold_split(&ids(20), &labels, 4, 9).unwrap();
        assert_eq!(a.assignments, b.assignments);
        let c = kfold_split(&ids(20), &labels, 4, 10).unwrap();
        assert_ne!(a.assignments, c.assignments);
    }

    #[test]
    fn kfold_partitions_and_balances_random_settings() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for trial in 0..100 {
            let k = rng.gen_range(2..6);
            let n1 = rng.gen_range(k..30);
            let n0 = rng.gen_range(k..30);
            let mut labels = vec![1u8; n1];
            labels.extend(vec![0u8; n0]);
            let plan = kfold_split(&ids(n1 + n0), &labels, k, trial).unwrap();
            let sizes = plan.fold_sizes();
            assert_eq!(sizes.iter().sum::<usize>(), n1 + n0);
            assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
            for class in [0u8, 1u8] {
                let per_fold: Vec<usize> = (0..k)
                    .map(|f| {
                        plan.test_indices(f)
                            .iter()
                            .filter(|&&i| labels[i] == class)
                            .count()
                    })
                    .collect();
                assert!(
                    per_fold.iter().max().unwrap() - per_fold.iter().min().unwrap() <= 1,
                    "class {class} spread {per_fold:?}"
                );
            }
        }
    }

    #[test]
    fn kfold_rejects_k_beyond_class_count() {
        let labels = vec![1, 1, 1, 0];
        assert!(matches!(
            kfold_split(&ids(4), &labels, 2, 0),
            Err(EvalError::KExceedsClassCount { label: 0, .. })
        ));
        assert!(matches!(
            kfold_split(&ids(4), &labels, 1, 0),
            Err(EvalError::InvalidK(1))
        ));
    }

    fn labeled_docs(n: usize) -> Vec<Document> {
        (0..n)
            .map(|i| Document {
                id: format!("d{i}"),
                title: format!("title {i}"),
                body: None,
                best_answer: None,
                label: Some((i % 2) as u8),
                source: None,
            })
            .collect()
    }

    #[test]
    fn cross_validate_constant_scorer_has_half_auc() {
        let docs = labeled_docs(20);
        let report = cross_validate(
            |_train, test| Ok(test.iter().map(|_| (0.5, 0u8)).collect()),
            &docs,
            5,
            1,
        )
        .unwrap();
        assert_eq!(report.mean.auc, 0.5);
        assert_eq!(report.std.auc, 0.0);
    }

    #[test]
    fn cross_validate_oracle_trainer_is_perfect() {
        let docs = labeled_docs(20);
        let report = cross_validate(
            |_train, test| {
                Ok(test
                    .iter()
                    .map(|d| (f64::from(d.label.unwrap()), d.label.unwrap()))
                    .collect())
            },
            &docs,
            5,
            2,
        )
        .unwrap();
        assert_eq!(report.mean.class1_recall, 1.0);
        assert_eq!(report.mean.class2_recall, 1.0);
        assert_eq!(report.mean.auc, 1.0);
        assert_eq!(report.std.class1_recall, 0.0);
    }

    #[test]
    fn cross_validate_tests_each_document_exactly_once() {
        let docs = labeled_docs(23);
        let mut seen: Vec<String> = Vec::new();
        let _ = cross_validate(
            |train, test| {
                assert_eq!(train.len() + test.len(), 23);
                seen.extend(test.iter().map(|d| d.id.clone()));
                Ok(test.iter().map(|_| (0.5, 0u8)).collect())
            },
            &docs,
            4,
            3,
        )
        .unwrap();
        seen.sort();
        let mut expected: Vec<String> = docs.iter().map(|d| d.id.clone()).collect();
        expected.sort();
        assert_eq!(seen, expected);
    }

    #[test]
    fn cross_validate_propagates_trainer_errors() {
        let docs = labeled_docs(8);
        let result = cross_validate(|_t, _e| Err("boom".into()), &docs, 2, 0);
        assert!(matches!(result, Err(EvalError::Trainer(_))));
    }

    #[test]
    fn fold_aggregate_mean_and_std() {
        let (mean, std) = population_mean_std(&[0.8, 0.9]);
        assert!((mean - 0.85).abs() < 1e-12);
        assert!((std - 0.05).abs() < 1e-12);
    }

    #[test]
    fn output_stats_two_points() {
        let stats = output_stats(&[0.2, 0.6], 0.5).unwrap();
        assert!((stats.mean - 0.4).abs() < 1e-12);
        assert!((stats.median - 0.4).abs() < 1e-12);
        assert_eq!((stats.n_below, stats.n_above, stats.n_at), (1, 1, 0));
    }

    #[test]
    fn output_stats_at_threshold_bucket() {
        let stats = output_stats(&[0.5, 0.5, 0.5], 0.5).unwrap();
        assert_eq!((stats.n_below, stats.n_above, stats.n_at), (0, 0, 3));
        assert_eq!(stats.frac_at, 1.0);
    }

    #[test]
    fn output_stats_matches_independent_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let n = rng.gen_range(1..50);
            let scores: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let stats = output_stats(&scores, 0.5).unwrap();
            // Second route: E[x²] − μ² for the variance, full sort for the median.
            let mean = scores.iter().sum::<f64>() / n as f64;
            let var = scores.iter().map(|s| s * s).sum::<f64>() / n as f64 - mean * mean;
            let mut sorted = scores.clone();
            sorted.sort_by(f64::total_cmp);
            let median = if n % 2 == 1 {
                sorted[n / 2]
            } else {
                0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
            };
            assert!((stats.mean - mean).abs() < 1e-12);
            assert!((stats.std - var.max(0.0).sqrt()).abs() < 1e-9);
            assert!((stats.median - median).abs() < 1e-12);
            let fr = stats.frac_below + stats.frac_above + stats.frac_at;
            assert!((fr - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn corpus_stats_groups_by_source() {
        let scored = vec![
            ("bbc".to_string(), 0.1),
            ("fox".to_string(), 0.8),
            ("bbc".to_string(), 0.3),
        ];
        let stats = corpus_output_stats(&scored, 0.5).unwrap();
        assert_eq!(stats.len(), 2);
        assert_eq!(stats["bbc"].count, 2);
        assert!((stats["bbc"].mean - 0.2).abs() < 1e-12);
        assert_eq!(stats["fox"].n_above, 1);
    }

    #[test]
    fn output_stats_rejects_empty_group() {
        assert!(matches!(output_stats(&[], 0.5), Err(EvalError::EmptyGroup)));
    }
}
