//! TTR-family diversity extended to word n-grams.
//!
//! N-grams never cross utterance boundaries: transcript utterances are
//! independent productions.

use crate::catalog::{FeatureResult, MissingReason};
use crate::corpus::TextSample;
use std::collections::HashSet;

/// Totals of overlapping word n-grams of one order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NgramDistribution {
    pub n: usize,
    pub total: usize,
    pub distinct: usize,
}

/// Count overlapping n-grams within utterances; `None` when no utterance
/// is long enough.
pub fn ngram_distribution(sample: &TextSample, n: usize) -> Option<NgramDistribution> {
    debug_assert!((2..=4).contains(&n));
    let mut total = 0usize;
    let mut distinct: HashSet<String> = HashSet::new();
    for utt in &sample.utterances {
        let words: Vec<&str> = utt
            .iter()
            .filter(|t| !t.is_punct)
            .map(|t| t.lower.as_str())
            .collect();
        if words.len() < n {
            continue;
        }
        for gram in words.windows(n) {
            total += 1;
            distinct.insert(gram.join(" "));
        }
    }
    if total == 0 {
        None
    } else {
        Some(NgramDistribution {
            n,
            total,
            distinct: distinct.len(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NgramMeasure {
    Ttr,
    Cttr,
    Gttr,
}

/// One n-gram diversity measure; missing when the sample has no n-gram of
/// that order.
pub fn ngram_diversity(sample: &TextSample, n: usize, measure: NgramMeasure) -> FeatureResult {
    let Some(dist) = ngram_distribution(sample, n) else {
        return Err(MissingReason::TooShort);
    };
    let d = dist.distinct as f64;
    let t = dist.total as f64;
    Ok(match measure {
        NgramMeasure::Ttr => 100.0 * d / t,
        NgramMeasure::Cttr => 100.0 * d / t.sqrt(),
        NgramMeasure::Gttr => 100.0 * d / (2.0 * t).sqrt(),
    })
}

/// All nine n-gram diversity features of one sample.
pub fn all_ngram_features(sample: &TextSample) -> Vec<(&'static str, FeatureResult)> {
    let ids: [(&'static str, usize, NgramMeasure); 9] = [
        ("big_ttr", 2, NgramMeasure::Ttr),
        ("big_cttr", 2, NgramMeasure::Cttr),
        ("big_gttr", 2, NgramMeasure::Gttr),
        ("trig_ttr", 3, NgramMeasure::Ttr),
        ("trig_cttr", 3, NgramMeasure::Cttr),
        ("trig_gttr", 3, NgramMeasure::Gttr),
        ("frg_ttr", 4, NgramMeasure::Ttr),
        ("frg_cttr", 4, NgramMeasure::Cttr),
        ("frg_gttr", 4, NgramMeasure::Gttr),
    ];
    ids.into_iter()
        .map(|(id, n, m)| (id, ngram_diversity(sample, n, m)))
        .collect()
}
