//! Feature ranking: one-way ANOVA F, chi-square on scaled values,
//! information gain over equal-frequency bins, and reliefF.

use crate::catalog::{FeatureValue, FeatureVector, CATALOG};
use crate::corpus::Label;
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SelectionError {
    #[error("labels must contain both classes")]
    MissingClass,
    #[error("reliefF needs at least {needed} samples per class, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("unknown feature id `{0}`")]
    UnknownFeature(String),
}

/// Samples-by-features matrix with a missing-value mask.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub feature_ids: Vec<String>,
    pub sample_ids: Vec<String>,
    pub labels: Vec<Label>,
    /// Row-major values; `None` marks a missing entry.
    pub rows: Vec<Vec<Option<f64>>>,
}

impl FeatureMatrix {
    /// Assemble extracted vectors into a matrix, columns in catalog order.
    pub fn from_vectors(vectors: &[FeatureVector]) -> FeatureMatrix {
        let feature_ids: Vec<String> = CATALOG.iter().map(|d| d.id.to_string()).collect();
        let mut sample_ids = Vec::with_capacity(vectors.len());
        let mut labels = Vec::with_capacity(vectors.len());
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            sample_ids.push(v.sample_id.clone());
            labels.push(v.label);
            rows.push(
                CATALOG
                    .iter()
                    .map(|d| match v.values.get(d.id) {
                        Some(FeatureValue::Value(x)) => Some(*x),
                        _ => None,
                    })
                    .collect(),
            );
        }
        FeatureMatrix {
            feature_ids,
            sample_ids,
            labels,
            rows,
        }
    }

    pub fn n_samples(&self) -> usize {
        self.rows.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_ids.len()
    }

    /// Keep only rows with a binary label.
    pub fn labeled_only(&self) -> FeatureMatrix {
        let keep: Vec<usize> = (0..self.rows.len())
            .filter(|&i| self.labels[i] != Label::Unlabeled)
            .collect();
        FeatureMatrix {
            feature_ids: self.feature_ids.clone(),
            sample_ids: keep.iter().map(|&i| self.sample_ids[i].clone()).collect(),
            labels: keep.iter().map(|&i| self.labels[i]).collect(),
            rows: keep.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    /// Column subset in the requested order.
    pub fn subset(&self, ids: &[String]) -> Result<FeatureMatrix, SelectionError> {
        let idx: Vec<usize> = ids
            .iter()
            .map(|id| {
                self.feature_ids
                    .iter()
                    .position(|f| f == id)
                    .ok_or_else(|| SelectionError::UnknownFeature(id.clone()))
            })
            .collect::<Result<_, _>>()?;
        Ok(FeatureMatrix {
            feature_ids: ids.to_vec(),
            sample_ids: self.sample_ids.clone(),
            labels: self.labels.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| idx.iter().map(|&j| r[j]).collect())
                .collect(),
        })
    }

    /// Column means over present entries; all-missing columns get 0.
    pub fn column_means(&self) -> Vec<f64> {
        let mut means = vec![0.0f64; self.n_features()];
        for (j, mean) in means.iter_mut().enumerate() {
            let mut sum = 0.0;
            let mut count = 0usize;
            for row in &self.rows {
                if let Some(v) = row[j] {
                    sum += v;
                    count += 1;
                }
            }
            if count > 0 {
                *mean = sum / count as f64;
            }
        }
        means
    }

    /// Dense matrix with missing entries replaced by the given column
    /// means (training-set means under the fixed-split protocol).
    pub fn imputed_with(&self, means: &[f64]) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| v.unwrap_or(means[j]))
                    .collect()
            })
            .collect()
    }

    pub fn binary_labels(&self) -> Result<Vec<bool>, SelectionError> {
        let labels: Vec<bool> = self.labels.iter().map(|l| *l == Label::Positive).collect();
        let pos = labels.iter().filter(|&&b| b).count();
        if pos == 0 || pos == labels.len() || labels.is_empty() {
            return Err(SelectionError::MissingClass);
        }
        Ok(labels)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SelectionMethod {
    Anova,
    Chi2,
    InfoGain,
    ReliefF,
}

impl SelectionMethod {
    pub const ALL: [SelectionMethod; 4] = [
        SelectionMethod::Anova,
        SelectionMethod::Chi2,
        SelectionMethod::InfoGain,
        SelectionMethod::ReliefF,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SelectionMethod::Anova => "anova",
            SelectionMethod::Chi2 => "chi2",
            SelectionMethod::InfoGain => "info_gain",
            SelectionMethod::ReliefF => "relieff",
        }
    }

    pub fn parse(s: &str) -> Option<SelectionMethod> {
        Some(match s {
            "anova" => SelectionMethod::Anova,
            "chi2" => SelectionMethod::Chi2,
            "info_gain" => SelectionMethod::InfoGain,
            "relieff" => SelectionMethod::ReliefF,
            _ => return None,
        })
    }
}

/// Knobs left open by the adopted methods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionConfig {
    pub relieff_k: usize,
    pub info_gain_bins: usize,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        SelectionConfig {
            relieff_k: 10,
            info_gain_bins: 10,
        }
    }
}

/// Ordered feature ids with scores, one per selection method.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedFeatureList {
    pub method: SelectionMethod,
    /// (feature id, score), score descending then id ascending.
    pub entries: Vec<(String, f64)>,
}

impl RankedFeatureList {
    pub fn top(&self, k: usize) -> Vec<String> {
        self.entries.iter().take(k).map(|(id, _)| id.clone()).collect()
    }
}

/// One-way ANOVA F-statistic of one column against binary labels.
/// Zero within-class variance with differing means yields the infinity
/// sentinel, which outranks every finite score.
pub fn anova_f(column: &[f64], labels: &[bool]) -> f64 {
    let (mut s0, mut s1, mut n0, mut n1) = (0.0f64, 0.0f64, 0usize, 0usize);
    for (&v, &l) in column.iter().zip(labels) {
        if l {
            s1 += v;
            n1 += 1;
        } else {
            s0 += v;
            n0 += 1;
        }
    }
    debug_assert!(n0 > 0 && n1 > 0);
    let m0 = s0 / n0 as f64;
    let m1 = s1 / n1 as f64;
    let grand = (s0 + s1) / (n0 + n1) as f64;
    let ss_between = n0 as f64 * (m0 - grand).powi(2) + n1 as f64 * (m1 - grand).powi(2);
    let ss_within: f64 = column
        .iter()
        .zip(labels)
        .map(|(&v, &l)| {
            let m = if l { m1 } else { m0 };
            (v - m).powi(2)
        })
        .sum();
    let df2 = (n0 + n1).saturating_sub(2);
    if ss_within == 0.0 || df2 == 0 {
        return if ss_between > 0.0 { f64::INFINITY } else { 0.0 };
    }
    ss_between / (ss_within / df2 as f64)
}

fn min_max_scaled(column: &[f64]) -> Vec<f64> {
    let min = column.iter().copied().fold(f64::INFINITY, f64::min);
    let max = column.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max <= min {
        return vec![0.0; column.len()];
    }
    column.iter().map(|&v| (v - min) / (max - min)).collect()
}

/// Chi-square association of one column: per-class sums of min-max-scaled
/// values against class-size-proportional expectations.
pub fn chi2_score(column: &[f64], labels: &[bool]) -> f64 {
    let scaled = min_max_scaled(column);
    let (mut obs0, mut obs1, mut n0, mut n1) = (0.0f64, 0.0f64, 0usize, 0usize);
    for (&v, &l) in scaled.iter().zip(labels) {
        if l {
            obs1 += v;
            n1 += 1;
        } else {
            obs0 += v;
            n0 += 1;
        }
    }
    let total = obs0 + obs1;
    if total == 0.0 {
        return 0.0;
    }
    let n = (n0 + n1) as f64;
    let mut stat = 0.0;
    for (obs, count) in [(obs0, n0), (obs1, n1)] {
        let expected = total * count as f64 / n;
        if expected > 0.0 {
            stat += (obs - expected).powi(2) / expected;
        }
    }
    stat
}

fn entropy_bits(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    -counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total as f64;
            p * p.log2()
        })
        .sum::<f64>()
}

/// Bin assignment over equal-frequency cut points. Identical values always
/// share a bin.
fn equal_frequency_bins(column: &[f64], bins: usize) -> Vec<usize> {
    let n = column.len();
    let mut sorted: Vec<f64> = column.to_vec();
    sorted.sort_by(f64::total_cmp);
    let edges: Vec<f64> = (1..bins)
        .map(|i| sorted[(i * n / bins).min(n - 1)])
        .collect();
    column
        .iter()
        .map(|&v| edges.iter().filter(|&&e| e < v).count())
        .collect()
}

/// Information gain of the label from the binned column, in bits.
pub fn info_gain(column: &[f64], labels: &[bool], bins: usize) -> f64 {
    let n = column.len();
    debug_assert!(n > 0 && bins >= 2);
    let assignment = equal_frequency_bins(column, bins);
    let n_bins = assignment.iter().copied().max().unwrap_or(0) + 1;
    let mut per_bin = vec![[0usize; 2]; n_bins];
    let mut label_counts = [0usize; 2];
    for (&b, &l) in assignment.iter().zip(labels) {
        per_bin[b][l as usize] += 1;
        label_counts[l as usize] += 1;
    }
    let h_label = entropy_bits(&label_counts);
    let h_cond: f64 = per_bin
        .iter()
        .map(|bin| {
            let size = bin[0] + bin[1];
            size as f64 / n as f64 * entropy_bits(bin)
        })
        .sum();
    (h_label - h_cond).max(0.0)
}

/// Standard reliefF with Manhattan distance on [0,1]-scaled features,
/// using every sample; k clamps to the smaller class size minus one.
pub fn relieff(
    rows: &[Vec<f64>],
    labels: &[bool],
    k_neighbors: usize,
) -> Result<Vec<f64>, SelectionError> {
    let m = rows.len();
    let n_features = rows.first().map(|r| r.len()).unwrap_or(0);
    let n_pos = labels.iter().filter(|&&l| l).count();
    let n_neg = m - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(SelectionError::MissingClass);
    }
    let k = k_neighbors.min(n_pos.min(n_neg).saturating_sub(1));
    if k < 1 {
        return Err(SelectionError::InsufficientSamples {
            needed: 2,
            got: n_pos.min(n_neg),
        });
    }

    // scale features to [0,1] so diffs are comparable
    let mut scaled: Vec<Vec<f64>> = vec![vec![0.0; n_features]; m];
    for j in 0..n_features {
        let col: Vec<f64> = rows.iter().map(|r| r[j]).collect();
        for (i, v) in min_max_scaled(&col).into_iter().enumerate() {
            scaled[i][j] = v;
        }
    }

    let prior_pos = n_pos as f64 / m as f64;
    let prior_neg = n_neg as f64 / m as f64;
    let mut weights = vec![0.0f64; n_features];
    let norm = (m * k) as f64;

    for i in 0..m {
        let mut neighbors: Vec<(f64, usize)> = (0..m)
            .filter(|&j| j != i)
            .map(|j| {
                let d: f64 = scaled[i]
                    .iter()
                    .zip(&scaled[j])
                    .map(|(a, b)| (a - b).abs())
                    .sum();
                (d, j)
            })
            .collect();
        neighbors.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let hits: Vec<usize> = neighbors
            .iter()
            .filter(|&&(_, j)| labels[j] == labels[i])
            .take(k)
            .map(|&(_, j)| j)
            .collect();
        let misses: Vec<usize> = neighbors
            .iter()
            .filter(|&&(_, j)| labels[j] != labels[i])
            .take(k)
            .map(|&(_, j)| j)
            .collect();
        let miss_prior = if labels[i] { prior_neg } else { prior_pos };
        for (j, w) in weights.iter_mut().enumerate() {
            for &h in &hits {
                *w -= (scaled[i][j] - scaled[h][j]).abs() / norm;
            }
            for &mi in &misses {
                *w += miss_prior * (scaled[i][j] - scaled[mi][j]).abs() / norm;
            }
        }
    }
    Ok(weights)
}

/// Rank every feature of an imputed matrix with one method.
pub fn rank_features(
    feature_ids: &[String],
    dense: &[Vec<f64>],
    labels: &[bool],
    method: SelectionMethod,
    cfg: &SelectionConfig,
) -> Result<RankedFeatureList, SelectionError> {
    let n_features = feature_ids.len();
    let scores: Vec<f64> = match method {
        SelectionMethod::ReliefF => relieff(dense, labels, cfg.relieff_k)?,
        _ => (0..n_features)
            .map(|j| {
                let col: Vec<f64> = dense.iter().map(|r| r[j]).collect();
                match method {
                    SelectionMethod::Anova => anova_f(&col, labels),
                    SelectionMethod::Chi2 => chi2_score(&col, labels),
                    SelectionMethod::InfoGain => info_gain(&col, labels, cfg.info_gain_bins),
                    SelectionMethod::ReliefF => unreachable!(),
                }
            })
            .collect(),
    };
    let mut entries: Vec<(String, f64)> = feature_ids
        .iter()
        .cloned()
        .zip(scores)
        .collect();
    entries.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    Ok(RankedFeatureList { method, entries })
}

/// Union of the top prefixes of several ranked lists.
pub fn top_union(lists: &[RankedFeatureList], cut_lengths: &[usize]) -> BTreeSet<String> {
    debug_assert_eq!(lists.len(), cut_lengths.len());
    let mut out = BTreeSet::new();
    for (list, &cut) in lists.iter().zip(cut_lengths) {
        out.extend(list.top(cut));
    }
    out
}
