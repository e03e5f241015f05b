//! Experiment orchestration: per-group classification, continuous
//! feature-subset search, and the input-length sweep.

use crate::catalog::{group_ids, profile_distance_ids, FeatureGroup};
use crate::corpus::{truncate, TextSample};
use crate::model::{protocol_fixed_split, run_protocol, HyperParams, ModelError, ProtocolOutcome};
use crate::resources::ResourceBundle;
use crate::selection::{
    rank_features, FeatureMatrix, RankedFeatureList, SelectionConfig, SelectionError,
    SelectionMethod,
};
use rayon::prelude::*;

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error("unknown group `{0}` (misc is split into misc1 and misc2)")]
    UnknownGroup(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Selection(#[from] SelectionError),
}

/// Feature ids of a comparison group. The miscellaneous family is split:
/// `misc1` keeps the n-gram profile distances, `misc2` drops them.
pub fn group_feature_ids(name: &str) -> Result<Vec<String>, ExperimentError> {
    let to_owned = |ids: Vec<&'static str>| ids.into_iter().map(String::from).collect();
    match name {
        "misc1" => Ok(to_owned(group_ids(FeatureGroup::Misc))),
        "misc2" => {
            let profile: Vec<&str> = profile_distance_ids();
            Ok(group_ids(FeatureGroup::Misc)
                .into_iter()
                .filter(|id| !profile.contains(id))
                .map(String::from)
                .collect())
        }
        "misc" => Err(ExperimentError::UnknownGroup(name.to_string())),
        other => match FeatureGroup::parse(other) {
            Some(g) => Ok(to_owned(group_ids(g))),
            None => Err(ExperimentError::UnknownGroup(name.to_string())),
        },
    }
}

/// One fixed-split protocol run per feature group.
pub fn group_comparison(
    train: &[TextSample],
    test: &[TextSample],
    bundle: &ResourceBundle,
    groups: &[String],
    hyper: &HyperParams,
) -> Result<Vec<(String, ProtocolOutcome)>, ExperimentError> {
    let mut out = Vec::with_capacity(groups.len());
    for group in groups {
        let ids = group_feature_ids(group)?;
        let outcome = protocol_fixed_split(train, test, bundle, &ids, hyper)?;
        out.push((group.clone(), outcome));
    }
    Ok(out)
}

/// One point of a search or sweep curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    /// Prefix length k, or input-length limit L.
    pub x: usize,
    pub f1: f64,
    pub accuracy: f64,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub method: SelectionMethod,
    pub ranking: RankedFeatureList,
    pub curve: Vec<CurvePoint>,
    pub best: CurvePoint,
}

/// Rank features on the training matrix, then run the protocol on every
/// top-k prefix. Profile-distance features are excluded from the search.
/// Ties on F1 resolve to the smallest k.
pub fn subset_search(
    train: &FeatureMatrix,
    test: &FeatureMatrix,
    method: SelectionMethod,
    sel_cfg: &SelectionConfig,
    hyper: &HyperParams,
) -> Result<SearchResult, ExperimentError> {
    let profile: Vec<&str> = profile_distance_ids();
    let searchable: Vec<String> = train
        .feature_ids
        .iter()
        .filter(|id| !profile.contains(&id.as_str()))
        .cloned()
        .collect();
    let train_l = train.labeled_only().subset(&searchable)?;
    let labels = train_l.binary_labels()?;
    let means = train_l.column_means();
    let dense = train_l.imputed_with(&means);
    let ranking = rank_features(&searchable, &dense, &labels, method, sel_cfg)?;

    let points: Vec<Result<CurvePoint, ExperimentError>> = (1..=ranking.entries.len())
        .into_par_iter()
        .map(|k| {
            let subset = ranking.top(k);
            let outcome = run_protocol(train, test, &subset, hyper)?;
            Ok(CurvePoint {
                x: k,
                f1: outcome.report.f1,
                accuracy: outcome.report.accuracy,
            })
        })
        .collect();
    let curve: Vec<CurvePoint> = points.into_iter().collect::<Result<_, _>>()?;
    let best = *curve
        .iter()
        .max_by(|a, b| a.f1.total_cmp(&b.f1).then(b.x.cmp(&a.x)))
        .expect("curve is non-empty");
    Ok(SearchResult {
        method,
        ranking,
        curve,
        best,
    })
}

/// The default token-length grid: 5 to 225 inclusive, step 1.
pub fn default_lengths() -> Vec<usize> {
    (5..=225).collect()
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub curve: Vec<CurvePoint>,
    pub best: CurvePoint,
}

/// Re-run the fixed-split protocol at each input-length limit: both
/// corpora are truncated, features re-extracted, the model re-trained.
/// Ties on F1 resolve to the smallest length.
pub fn length_sweep(
    train: &[TextSample],
    test: &[TextSample],
    bundle: &ResourceBundle,
    subset: &[String],
    lengths: &[usize],
    hyper: &HyperParams,
) -> Result<SweepResult, ExperimentError> {
    assert!(!lengths.is_empty() && lengths.windows(2).all(|w| w[0] < w[1]));
    let points: Vec<Result<CurvePoint, ExperimentError>> = lengths
        .par_iter()
        .map(|&limit| {
            let train_cut: Vec<TextSample> = train.iter().map(|s| truncate(s, limit)).collect();
            let test_cut: Vec<TextSample> = test.iter().map(|s| truncate(s, limit)).collect();
            let outcome = protocol_fixed_split(&train_cut, &test_cut, bundle, subset, hyper)?;
            Ok(CurvePoint {
                x: limit,
                f1: outcome.report.f1,
                accuracy: outcome.report.accuracy,
            })
        })
        .collect();
    let curve: Vec<CurvePoint> = points.into_iter().collect::<Result<_, _>>()?;
    let best = *curve
        .iter()
        .max_by(|a, b| a.f1.total_cmp(&b.f1).then(b.x.cmp(&a.x)))
        .expect("curve is non-empty");
    Ok(SweepResult { curve, best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::CATALOG;
    use crate::corpus::Label;

    #[test]
    fn group_names_resolve_to_catalog_subsets() {
        let misc1 = group_feature_ids("misc1").unwrap();
        let misc2 = group_feature_ids("misc2").unwrap();
        assert_eq!(misc1.len(), 16);
        assert_eq!(misc2.len(), 10);
        assert!(misc2.iter().all(|id| !id.starts_with("dist_big")));
        assert_eq!(group_feature_ids("diversity").unwrap().len(), 20);
        assert!(matches!(
            group_feature_ids("misc"),
            Err(ExperimentError::UnknownGroup(_))
        ));
        assert!(matches!(
            group_feature_ids("nonsense"),
            Err(ExperimentError::UnknownGroup(_))
        ));
        let all: usize = [
            "density",
            "diversity",
            "focus_pmi",
            "ngram_diversity",
            "sophistication",
            "specificity",
            "psycholinguistic",
            "misc1",
        ]
        .iter()
        .map(|g| group_feature_ids(g).unwrap().len())
        .sum();
        assert_eq!(all, CATALOG.len());
    }

    fn toy_matrices() -> (FeatureMatrix, FeatureMatrix) {
        // feature 0 informative, feature 1 constant-ish noise
        let mk = |seed: u64, n: usize| {
            let mut rows = Vec::new();
            let mut labels = Vec::new();
            for i in 0..n {
                let pos = i % 2 == 0;
                let wobble = ((i as f64 + seed as f64) * 0.77).sin() * 0.05;
                rows.push(vec![
                    Some(if pos { 1.0 } else { -1.0 } + wobble),
                    Some(((i as f64 * 13.7 + seed as f64).sin() * 10.0).fract()),
                ]);
                labels.push(if pos { Label::Positive } else { Label::Control });
            }
            FeatureMatrix {
                feature_ids: vec!["informative".to_string(), "noise".to_string()],
                sample_ids: (0..n).map(|i| format!("s{seed}_{i}")).collect(),
                labels,
                rows,
            }
        };
        (mk(0, 24), mk(100, 12))
    }

    #[test]
    fn subset_search_prefers_the_informative_prefix() {
        let (train, test) = toy_matrices();
        let r = subset_search(
            &train,
            &test,
            SelectionMethod::Anova,
            &SelectionConfig::default(),
            &HyperParams::default(),
        )
        .unwrap();
        assert_eq!(r.curve.len(), 2);
        assert_eq!(r.best.x, 1);
        assert_eq!(r.ranking.entries[0].0, "informative");
        assert_eq!(r.best.f1, 1.0);
    }

    #[test]
    fn search_at_full_length_equals_direct_protocol() {
        let (train, test) = toy_matrices();
        let r = subset_search(
            &train,
            &test,
            SelectionMethod::InfoGain,
            &SelectionConfig::default(),
            &HyperParams::default(),
        )
        .unwrap();
        let all_ids = r.ranking.top(r.ranking.entries.len());
        let direct = run_protocol(&train, &test, &all_ids, &HyperParams::default()).unwrap();
        let last = r.curve.last().unwrap();
        assert_eq!(last.f1, direct.report.f1);
        assert_eq!(last.accuracy, direct.report.accuracy);
    }

    #[test]
    fn default_length_grid_has_221_points() {
        let lengths = default_lengths();
        assert_eq!(lengths.len(), 221);
        assert_eq!(*lengths.first().unwrap(), 5);
        assert_eq!(*lengths.last().unwrap(), 225);
    }
}
