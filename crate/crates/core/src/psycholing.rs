//! Psycholinguistic norms averaged over the noun tokens of a sample.
//!
//! Averages are token-weighted: a noun occurring twice contributes its
//! norm twice. Absent attributes are excluded from their mean rather than
//! imputed as zero.

use crate::catalog::{FeatureResult, MissingReason};
use crate::corpus::{tags, TextSample};
use crate::resources::{PsycholinguisticDB, PSYCH_ATTRS};

/// The eleven attribute means plus the in-database noun ratio.
pub fn psych_features(
    sample: &TextSample,
    db: Option<&PsycholinguisticDB>,
) -> Vec<(&'static str, FeatureResult)> {
    let ids: [&'static str; 12] = [
        "kf_freq",
        "kf_ncats",
        "kf_nsamp",
        "tl_freq",
        "brown",
        "familiarity",
        "concreteness",
        "imageability",
        "colorado",
        "paivio",
        "age_aquis",
        "rt_nouns",
    ];
    debug_assert_eq!(&ids[..11], &PSYCH_ATTRS[..]);

    let Some(db) = db else {
        return ids
            .iter()
            .map(|id| (*id, Err(MissingReason::ResourceAbsent)))
            .collect();
    };

    let nouns: Vec<&str> = sample
        .tokens()
        .filter(|t| tags::is_noun(&t.pos))
        .map(|t| t.lower.as_str())
        .collect();
    if nouns.is_empty() {
        return ids
            .iter()
            .map(|id| (*id, Err(MissingReason::NoNouns)))
            .collect();
    }

    let mut sums = [0.0f64; 11];
    let mut counts = [0usize; 11];
    let mut found = 0usize;
    for noun in &nouns {
        if let Some(rec) = db.get(noun) {
            found += 1;
            for (i, v) in rec.values.iter().enumerate() {
                if let Some(v) = v {
                    sums[i] += v;
                    counts[i] += 1;
                }
            }
        }
    }

    let mut out: Vec<(&'static str, FeatureResult)> = (0..11)
        .map(|i| {
            let r = if counts[i] == 0 {
                Err(MissingReason::NoCoverage)
            } else {
                Ok(sums[i] / counts[i] as f64)
            };
            (ids[i], r)
        })
        .collect();
    out.push(("rt_nouns", Ok(found as f64 / nouns.len() as f64)));
    out
}
