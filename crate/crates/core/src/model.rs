//! Binary logistic-regression classifier with the evaluation metrics and
//! the fixed train/test protocol.
//!
//! Training is full-batch gradient descent on the L2-regularized logistic
//! loss. The learning rate halves whenever a step would increase the
//! loss, so the recorded loss sequence is non-increasing; every halving is
//! counted in the fitted model.

use crate::catalog::{extract_all, profile_distance_ids};
use crate::corpus::TextSample;
use crate::misc::{NgramProfileStore, ProfileError};
use crate::resources::ResourceBundle;
use crate::selection::{FeatureMatrix, SelectionError};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error(transparent)]
    Selection(#[from] SelectionError),
    #[error("every requested feature was dropped (constant on the training data)")]
    EmptyModel,
    #[error("training loss became non-finite at epoch {epoch}")]
    NonFiniteLoss { epoch: usize },
    #[error(transparent)]
    Profiles(#[from] ProfileError),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed model line")]
    Malformed { path: String, line: usize },
}

/// Gradient-descent hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperParams {
    pub learning_rate: f64,
    pub l2: f64,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for HyperParams {
    fn default() -> Self {
        HyperParams {
            learning_rate: 0.1,
            l2: 1e-3,
            epochs: 500,
            seed: 42,
        }
    }
}

/// Per-feature mean and standard deviation computed on training data only.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizationStats {
    pub means: Vec<f64>,
    pub sds: Vec<f64>,
}

/// A fitted classifier: retained features, training statistics, weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub feature_ids: Vec<String>,
    pub stats: StandardizationStats,
    pub weights: Vec<f64>,
    pub bias: f64,
    pub hyper: HyperParams,
    pub halvings: usize,
}

/// Confusion counts and the derived metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub tp: usize,
    pub fp: usize,
    pub fn_count: usize,
    pub tn: usize,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Guard conditions hit while computing metrics, e.g.
    /// `precision_undefined` or `leakage_warning`.
    pub flags: Vec<String>,
}

impl ClassificationReport {
    /// Metrics from confusion counts: accuracy (TN+TP)/N, precision
    /// TP/(TP+FP), recall TP/(TP+FN), F1 = 2 p r / (p + r). Undefined
    /// ratios are reported as 0 with a flag.
    pub fn from_counts(tp: usize, fp: usize, fn_count: usize, tn: usize) -> ClassificationReport {
        let n = tp + fp + fn_count + tn;
        let mut flags = Vec::new();
        let accuracy = if n == 0 {
            flags.push("accuracy_undefined".to_string());
            0.0
        } else {
            (tn + tp) as f64 / n as f64
        };
        let precision = if tp + fp == 0 {
            flags.push("precision_undefined".to_string());
            0.0
        } else {
            tp as f64 / (tp + fp) as f64
        };
        let recall = if tp + fn_count == 0 {
            flags.push("recall_undefined".to_string());
            0.0
        } else {
            tp as f64 / (tp + fn_count) as f64
        };
        let f1 = if precision + recall == 0.0 {
            flags.push("f1_undefined".to_string());
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        ClassificationReport {
            tp,
            fp,
            fn_count,
            tn,
            accuracy,
            precision,
            recall,
            f1,
            flags,
        }
    }
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Average logistic loss plus L2 penalty (bias unregularized).
pub fn logistic_loss(rows: &[Vec<f64>], labels: &[bool], w: &[f64], b: f64, l2: f64) -> f64 {
    let n = rows.len() as f64;
    let data: f64 = rows
        .iter()
        .zip(labels)
        .map(|(x, &y)| {
            let z: f64 = x.iter().zip(w).map(|(xi, wi)| xi * wi).sum::<f64>() + b;
            // stable form of -y z + ln(1 + e^z)
            z.max(0.0) - if y { z } else { 0.0 } + (-z.abs()).exp().ln_1p()
        })
        .sum();
    data / n + 0.5 * l2 * w.iter().map(|wi| wi * wi).sum::<f64>()
}

/// Analytic gradient of [`logistic_loss`] in (weights, bias).
pub fn logistic_gradient(
    rows: &[Vec<f64>],
    labels: &[bool],
    w: &[f64],
    b: f64,
    l2: f64,
) -> (Vec<f64>, f64) {
    let n = rows.len() as f64;
    let mut gw = vec![0.0f64; w.len()];
    let mut gb = 0.0f64;
    for (x, &y) in rows.iter().zip(labels) {
        let z: f64 = x.iter().zip(w).map(|(xi, wi)| xi * wi).sum::<f64>() + b;
        let err = sigmoid(z) - if y { 1.0 } else { 0.0 };
        for (g, xi) in gw.iter_mut().zip(x) {
            *g += err * xi;
        }
        gb += err;
    }
    for (g, wi) in gw.iter_mut().zip(w) {
        *g = *g / n + l2 * wi;
    }
    (gw, gb / n)
}

/// Fit weights on a standardized matrix. Deterministic given the
/// hyperparameters; weights start at zero.
pub fn fit(
    rows: &[Vec<f64>],
    labels: &[bool],
    hyper: &HyperParams,
) -> Result<(Vec<f64>, f64, usize), ModelError> {
    let n_features = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut w = vec![0.0f64; n_features];
    let mut b = 0.0f64;
    let mut lr = hyper.learning_rate;
    let mut halvings = 0usize;
    let mut loss = logistic_loss(rows, labels, &w, b, hyper.l2);
    if !loss.is_finite() {
        return Err(ModelError::NonFiniteLoss { epoch: 0 });
    }
    'epochs: for epoch in 0..hyper.epochs {
        let (gw, gb) = logistic_gradient(rows, labels, &w, b, hyper.l2);
        loop {
            let cand_w: Vec<f64> = w.iter().zip(&gw).map(|(wi, gi)| wi - lr * gi).collect();
            let cand_b = b - lr * gb;
            let cand_loss = logistic_loss(rows, labels, &cand_w, cand_b, hyper.l2);
            if cand_loss.is_finite() && cand_loss <= loss {
                w = cand_w;
                b = cand_b;
                loss = cand_loss;
                break;
            }
            if !cand_loss.is_finite() && lr <= f64::MIN_POSITIVE {
                return Err(ModelError::NonFiniteLoss { epoch });
            }
            lr *= 0.5;
            halvings += 1;
            if lr < 1e-15 {
                break 'epochs; // converged to numeric resolution
            }
        }
    }
    Ok((w, b, halvings))
}

impl Model {
    /// Predicted positive-class probabilities for a matrix. Missing values
    /// impute with the training means; columns standardize with the
    /// training statistics.
    pub fn predict_proba(&self, matrix: &FeatureMatrix) -> Result<Vec<f64>, ModelError> {
        let sub = matrix.subset(&self.feature_ids)?;
        Ok(sub
            .rows
            .iter()
            .map(|row| {
                let z: f64 = row
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let raw = v.unwrap_or(self.stats.means[j]);
                        let x = (raw - self.stats.means[j]) / self.stats.sds[j];
                        x * self.weights[j]
                    })
                    .sum::<f64>()
                    + self.bias;
                sigmoid(z)
            })
            .collect())
    }

    /// Classify at threshold 0.5 and score against the matrix labels.
    pub fn evaluate(&self, matrix: &FeatureMatrix) -> Result<ClassificationReport, ModelError> {
        let probs = self.predict_proba(matrix)?;
        let labels = matrix.binary_labels()?;
        let (mut tp, mut fp, mut fn_count, mut tn) = (0usize, 0usize, 0usize, 0usize);
        for (p, y) in probs.iter().zip(labels) {
            match (*p >= 0.5, y) {
                (true, true) => tp += 1,
                (true, false) => fp += 1,
                (false, true) => fn_count += 1,
                (false, false) => tn += 1,
            }
        }
        Ok(ClassificationReport::from_counts(tp, fp, fn_count, tn))
    }

    /// Persist as a plain-text file; byte-stable for identical models.
    pub fn save(&self, path: &Path) -> Result<(), ModelError> {
        let mut out = String::from("lexfeat-model v1\n");
        let _ = writeln!(out, "learning_rate = {:?}", self.hyper.learning_rate);
        let _ = writeln!(out, "l2 = {:?}", self.hyper.l2);
        let _ = writeln!(out, "epochs = {}", self.hyper.epochs);
        let _ = writeln!(out, "seed = {}", self.hyper.seed);
        let _ = writeln!(out, "halvings = {}", self.halvings);
        let _ = writeln!(out, "bias = {:?}", self.bias);
        out.push_str("#features\n");
        for (j, id) in self.feature_ids.iter().enumerate() {
            let _ = writeln!(
                out,
                "{id}\t{:?}\t{:?}\t{:?}",
                self.stats.means[j], self.stats.sds[j], self.weights[j]
            );
        }
        std::fs::write(path, out).map_err(|e| ModelError::Io {
            path: path.display().to_string(),
            source: e,
        })
    }

    pub fn load(path: &Path) -> Result<Model, ModelError> {
        let text = std::fs::read_to_string(path).map_err(|e| ModelError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let bad = |line: usize| ModelError::Malformed {
            path: path.display().to_string(),
            line,
        };
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "lexfeat-model v1")) => {}
            _ => return Err(bad(1)),
        }
        let mut hyper = HyperParams::default();
        let mut halvings = 0usize;
        let mut bias = 0.0f64;
        let mut feature_ids = Vec::new();
        let mut means = Vec::new();
        let mut sds = Vec::new();
        let mut weights = Vec::new();
        let mut in_features = false;
        for (lineno, line) in lines {
            if line.is_empty() {
                continue;
            }
            if line == "#features" {
                in_features = true;
                continue;
            }
            if in_features {
                let parts: Vec<&str> = line.split('\t').collect();
                if parts.len() != 4 {
                    return Err(bad(lineno + 1));
                }
                feature_ids.push(parts[0].to_string());
                means.push(parts[1].parse().map_err(|_| bad(lineno + 1))?);
                sds.push(parts[2].parse().map_err(|_| bad(lineno + 1))?);
                weights.push(parts[3].parse().map_err(|_| bad(lineno + 1))?);
            } else {
                let Some((key, value)) = line.split_once('=') else {
                    return Err(bad(lineno + 1));
                };
                let (key, value) = (key.trim(), value.trim());
                match key {
                    "learning_rate" => hyper.learning_rate = value.parse().map_err(|_| bad(lineno + 1))?,
                    "l2" => hyper.l2 = value.parse().map_err(|_| bad(lineno + 1))?,
                    "epochs" => hyper.epochs = value.parse().map_err(|_| bad(lineno + 1))?,
                    "seed" => hyper.seed = value.parse().map_err(|_| bad(lineno + 1))?,
                    "halvings" => halvings = value.parse().map_err(|_| bad(lineno + 1))?,
                    "bias" => bias = value.parse().map_err(|_| bad(lineno + 1))?,
                    _ => return Err(bad(lineno + 1)),
                }
            }
        }
        Ok(Model {
            feature_ids,
            stats: StandardizationStats { means, sds },
            weights,
            bias,
            hyper,
            halvings,
        })
    }
}

/// Outcome of one protocol run.
#[derive(Debug, Clone)]
pub struct ProtocolOutcome {
    pub report: ClassificationReport,
    pub model: Model,
    /// Features removed for zero training variance.
    pub dropped_features: Vec<String>,
    /// Resolved configuration, for exact reruns.
    pub resolved: Vec<(String, String)>,
}

/// Train on one matrix and evaluate on another: impute and standardize on
/// training statistics only, drop zero-variance features, fit, score.
pub fn run_protocol(
    train: &FeatureMatrix,
    test: &FeatureMatrix,
    subset: &[String],
    hyper: &HyperParams,
) -> Result<ProtocolOutcome, ModelError> {
    let train = train.labeled_only().subset(subset)?;
    let test = test.labeled_only().subset(subset)?;
    let train_labels = train.binary_labels()?;

    let leakage = train
        .sample_ids
        .iter()
        .any(|id| test.sample_ids.contains(id));

    let means = train.column_means();
    let dense = train.imputed_with(&means);
    let n = dense.len() as f64;
    let sds: Vec<f64> = (0..subset.len())
        .map(|j| {
            let var = dense.iter().map(|r| (r[j] - means[j]).powi(2)).sum::<f64>() / n;
            var.sqrt()
        })
        .collect();

    let kept: Vec<usize> = (0..subset.len()).filter(|&j| sds[j] > 0.0).collect();
    let dropped: Vec<String> = (0..subset.len())
        .filter(|j| !kept.contains(j))
        .map(|j| subset[j].clone())
        .collect();
    if kept.is_empty() {
        return Err(ModelError::EmptyModel);
    }

    let standardized: Vec<Vec<f64>> = dense
        .iter()
        .map(|row| {
            kept.iter()
                .map(|&j| (row[j] - means[j]) / sds[j])
                .collect()
        })
        .collect();
    let (weights, bias, halvings) = fit(&standardized, &train_labels, hyper)?;

    let model = Model {
        feature_ids: kept.iter().map(|&j| subset[j].clone()).collect(),
        stats: StandardizationStats {
            means: kept.iter().map(|&j| means[j]).collect(),
            sds: kept.iter().map(|&j| sds[j]).collect(),
        },
        weights,
        bias,
        hyper: *hyper,
        halvings,
    };

    let mut report = model.evaluate(&test)?;
    if leakage {
        report.flags.push("leakage_warning".to_string());
    }
    let resolved = vec![
        ("learning_rate".to_string(), format!("{:?}", hyper.learning_rate)),
        ("l2".to_string(), format!("{:?}", hyper.l2)),
        ("epochs".to_string(), hyper.epochs.to_string()),
        ("seed".to_string(), hyper.seed.to_string()),
        ("features".to_string(), model.feature_ids.join(",")),
        ("dropped".to_string(), dropped.join(",")),
    ];
    Ok(ProtocolOutcome {
        report,
        model,
        dropped_features: dropped,
        resolved,
    })
}

/// Extract features for a corpus in parallel, sample order preserved.
pub fn extract_matrix(samples: &[TextSample], bundle: &ResourceBundle) -> FeatureMatrix {
    let vectors: Vec<_> = samples
        .par_iter()
        .map(|s| extract_all(s, bundle))
        .collect();
    FeatureMatrix::from_vectors(&vectors)
}

/// The fixed-split protocol on corpora: when the feature subset includes
/// profile distances, the group profiles are rebuilt from the training
/// corpus so the test corpus never leaks into them.
pub fn protocol_fixed_split(
    train: &[TextSample],
    test: &[TextSample],
    bundle: &ResourceBundle,
    subset: &[String],
    hyper: &HyperParams,
) -> Result<ProtocolOutcome, ModelError> {
    let needs_profiles = profile_distance_ids()
        .iter()
        .any(|id| subset.iter().any(|s| s == id));
    let rebuilt;
    let bundle = if needs_profiles {
        let mut b = bundle.clone();
        b.profiles = Some(NgramProfileStore::build(train)?);
        rebuilt = b;
        &rebuilt
    } else {
        bundle
    };
    let train_m = extract_matrix(train, bundle);
    let test_m = extract_matrix(test, bundle);
    run_protocol(&train_m, &test_m, subset, hyper)
}
