//! The authoritative feature registry.
//!
//! Every feature the toolkit computes is declared here once, with its
//! group, the resources it depends on, and a short description. Column
//! order in all interchange files is the catalog order.

use crate::corpus::TextSample;
use crate::resources::ResourceBundle;
use crate::{density, diversity, misc, ngram_diversity, psycholing, semantic, sophistication};
use std::collections::BTreeMap;

/// Feature families, mirroring the structure of the extraction modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FeatureGroup {
    Density,
    Diversity,
    FocusPmi,
    NgramDiversity,
    Sophistication,
    Specificity,
    Psycholinguistic,
    Misc,
}

impl FeatureGroup {
    pub fn as_str(&self) -> &'static str {
        match self {
            FeatureGroup::Density => "density",
            FeatureGroup::Diversity => "diversity",
            FeatureGroup::FocusPmi => "focus_pmi",
            FeatureGroup::NgramDiversity => "ngram_diversity",
            FeatureGroup::Sophistication => "sophistication",
            FeatureGroup::Specificity => "specificity",
            FeatureGroup::Psycholinguistic => "psycholinguistic",
            FeatureGroup::Misc => "misc",
        }
    }

    pub fn parse(s: &str) -> Option<FeatureGroup> {
        Some(match s {
            "density" => FeatureGroup::Density,
            "diversity" => FeatureGroup::Diversity,
            "focus_pmi" => FeatureGroup::FocusPmi,
            "ngram_diversity" => FeatureGroup::NgramDiversity,
            "sophistication" => FeatureGroup::Sophistication,
            "specificity" => FeatureGroup::Specificity,
            "psycholinguistic" => FeatureGroup::Psycholinguistic,
            "misc" => FeatureGroup::Misc,
            _ => return None,
        })
    }
}

/// Why a feature value is absent for a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MissingReason {
    /// A required resource was not loaded.
    ResourceAbsent,
    /// The sample is too short for the measure to exist.
    TooShort,
    /// A count in the denominator was zero.
    ZeroDenominator,
    /// The formula hits a mathematical singularity on this input.
    Singularity,
    /// The factor-based measure degenerates (no complete or partial factor).
    Degenerate,
    /// Fewer than two keywords resolve to senses.
    NoSenses,
    /// No content word remains after stop-word removal.
    NoContent,
    /// No token carries the attribute being averaged.
    NoCoverage,
    /// The sample contains no noun.
    NoNouns,
    /// No eligible pair exists for a pairwise measure.
    NoPairs,
}

impl MissingReason {
    pub fn code(&self) -> &'static str {
        match self {
            MissingReason::ResourceAbsent => "resource_absent",
            MissingReason::TooShort => "too_short",
            MissingReason::ZeroDenominator => "zero_denominator",
            MissingReason::Singularity => "singularity",
            MissingReason::Degenerate => "degenerate",
            MissingReason::NoSenses => "no_senses",
            MissingReason::NoContent => "no_content",
            MissingReason::NoCoverage => "no_coverage",
            MissingReason::NoNouns => "no_nouns",
            MissingReason::NoPairs => "no_pairs",
        }
    }
}

/// Outcome of one feature on one sample.
pub type FeatureResult = Result<f64, MissingReason>;

/// A present-or-missing feature value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FeatureValue {
    Value(f64),
    Missing(MissingReason),
}

impl FeatureValue {
    pub fn value(&self) -> Option<f64> {
        match self {
            FeatureValue::Value(v) => Some(*v),
            FeatureValue::Missing(_) => None,
        }
    }
}

impl From<FeatureResult> for FeatureValue {
    fn from(r: FeatureResult) -> FeatureValue {
        match r {
            Ok(v) => FeatureValue::Value(v),
            Err(reason) => FeatureValue::Missing(reason),
        }
    }
}

/// Static declaration of one feature.
#[derive(Debug, Clone, Copy)]
pub struct FeatureDef {
    pub id: &'static str,
    pub group: FeatureGroup,
    /// Resource names this feature needs; absent resources make the value
    /// missing rather than failing extraction.
    pub requires: &'static [&'static str],
    pub description: &'static str,
}

use FeatureGroup::*;

macro_rules! feat {
    ($id:literal, $group:expr, [$($req:literal),*], $desc:literal) => {
        FeatureDef {
            id: $id,
            group: $group,
            requires: &[$($req),*],
            description: $desc,
        }
    };
}

/// The full feature catalog, in stable column order.
pub const CATALOG: &[FeatureDef] = &[
    // density
    feat!("ld1", Density, [], "lexical density, broad lexical-word policy"),
    feat!("ld2", Density, ["adverb_exceptions"], "lexical density, strict lexical-word policy"),
    feat!("wfi", Density, [], "summed within-sample counts of functional words over N"),
    feat!("fwr", Density, [], "functional word ratio (complement of ld1)"),
    feat!("rt_adj", Density, [], "adjective tokens over N"),
    feat!("rt_nn", Density, [], "noun tokens over N"),
    feat!("rt_vb", Density, [], "verb tokens over N"),
    feat!("rt_prep", Density, [], "preposition tokens over N"),
    feat!("rt_adv", Density, [], "adverb tokens over N"),
    feat!("nvr", Density, [], "noun-to-verb ratio"),
    feat!("anr", Density, [], "adjective-to-noun ratio"),
    // diversity
    feat!("ndw", Diversity, [], "number of different words (types)"),
    feat!("ttr", Diversity, [], "type-token ratio x100"),
    feat!("gttr", Diversity, [], "Guiraud transformation: 100 V / sqrt(2N)"),
    feat!("cttr", Diversity, [], "Carroll transformation: 100 V / sqrt(N)"),
    feat!("mattr_v1", Diversity, [], "moving-average TTR, 10-word window, stride 5"),
    feat!("mattr_v2", Diversity, [], "moving-average TTR, window N/10, stride half-window"),
    feat!("mtld", Diversity, [], "mean factor length at running-TTR threshold 0.72, bidirectional"),
    feat!("hdd", Diversity, [], "expected type coverage of a 42-token draw without replacement"),
    feat!("herdan", Diversity, [], "log V / log N"),
    feat!("brunet", Diversity, [], "N^(V^-0.165)"),
    feat!("summer", Diversity, [], "log log V / log log N"),
    feat!("uber", Diversity, [], "(log N)^2 / (log N - log V)"),
    feat!("yule_k", Diversity, [], "10^4 (sum r^2 V_r - N) / N^2"),
    feat!("sichel", Diversity, [], "100 (1 - N / (V log N))"),
    feat!("maas", Diversity, [], "(log N - log V) / (log N)^2"),
    feat!("maas_log", Diversity, [], "log V / sqrt(1 - log V / log N)"),
    feat!("honore_v1", Diversity, [], "N / sqrt(V1 / V)"),
    feat!("honore_v2", Diversity, [], "100 log N / (1 - V/N)"),
    feat!("honore_v3", Diversity, [], "N / sqrt(V)"),
    feat!("entropy", Diversity, [], "Shannon entropy of the word distribution, bits"),
    // focus and PMI
    feat!("dist_path", FocusPmi, ["stopwords", "senses"], "mean consecutive-keyword path similarity"),
    feat!("dist_wup", FocusPmi, ["stopwords", "senses"], "mean consecutive-keyword Wu-Palmer similarity"),
    feat!("dist_lch", FocusPmi, ["stopwords", "senses"], "mean consecutive-keyword Leacock-Chodorow similarity"),
    feat!("avg_glv50", FocusPmi, ["stopwords", "embeddings.glove50"], "mean consecutive-keyword cosine, 50-dim vectors"),
    feat!("avg_glv100", FocusPmi, ["stopwords", "embeddings.glove100"], "mean consecutive-keyword cosine, 100-dim vectors"),
    feat!("avg_glv200", FocusPmi, ["stopwords", "embeddings.glove200"], "mean consecutive-keyword cosine, 200-dim vectors"),
    feat!("avg_glv300", FocusPmi, ["stopwords", "embeddings.glove300"], "mean consecutive-keyword cosine, 300-dim vectors"),
    feat!("avg_w2v300", FocusPmi, ["stopwords", "embeddings.w2v300"], "mean consecutive-keyword cosine, second-family 300-dim vectors"),
    feat!("pmi", FocusPmi, ["stopwords"], "mean pointwise mutual information of co-occurring content-word pairs"),
    feat!("pmi_glv50", FocusPmi, ["stopwords", "embeddings.glove50"], "mean vector-PMI of content-word pairs, 50-dim"),
    feat!("pmi_glv100", FocusPmi, ["stopwords", "embeddings.glove100"], "mean vector-PMI of content-word pairs, 100-dim"),
    feat!("pmi_glv300", FocusPmi, ["stopwords", "embeddings.glove300"], "mean vector-PMI of content-word pairs, 300-dim"),
    feat!("pmi_w2v300", FocusPmi, ["stopwords", "embeddings.w2v300"], "mean vector-PMI of content-word pairs, second family"),
    // n-gram diversity
    feat!("big_ttr", NgramDiversity, [], "TTR over bigrams"),
    feat!("big_cttr", NgramDiversity, [], "Carroll TTR over bigrams"),
    feat!("big_gttr", NgramDiversity, [], "Guiraud TTR over bigrams"),
    feat!("trig_ttr", NgramDiversity, [], "TTR over trigrams"),
    feat!("trig_cttr", NgramDiversity, [], "Carroll TTR over trigrams"),
    feat!("trig_gttr", NgramDiversity, [], "Guiraud TTR over trigrams"),
    feat!("frg_ttr", NgramDiversity, [], "TTR over fourgrams"),
    feat!("frg_cttr", NgramDiversity, [], "Carroll TTR over fourgrams"),
    feat!("frg_gttr", NgramDiversity, [], "Guiraud TTR over fourgrams"),
    // sophistication
    feat!("soph", Sophistication, ["stopwords", "frequency"], "share of content words with frequency rank above 3000"),
    feat!("cls", Sophistication, ["stopwords", "frequency"], "mean corpus frequency of content words"),
    feat!("vsm", Sophistication, ["frequent_verbs"], "sophisticated verbs over verbs"),
    feat!("vsm_sq", Sophistication, ["frequent_verbs"], "sophisticated verbs over sqrt(2 x verbs)"),
    feat!("gap_vb", Sophistication, ["gap_verbs"], "general all-purpose verbs over verbs"),
    feat!("rt_irreg_vb", Sophistication, ["irregular_verbs"], "irregular verbs over verbs"),
    feat!("hlr", Sophistication, [], "hapax legomena over N"),
    // specificity
    feat!("depth_know", Specificity, ["uwl"], "share of tokens whose stem is in the specialized-word lexicon"),
    feat!("rt_one_meaning", Specificity, ["stopwords", "senses"], "monosemic content words over content words"),
    feat!("rt_meaning_words", Specificity, ["stopwords", "senses"], "total senses of content words over content words"),
    feat!("rt_abbrev", Specificity, ["abbreviations"], "abbreviation tokens over N"),
    feat!("rt_hypo", Specificity, ["stopwords", "senses"], "first-sense hyponym counts over content words"),
    // psycholinguistic
    feat!("kf_freq", Psycholinguistic, ["psycholing"], "mean written-frequency norm over noun tokens"),
    feat!("kf_ncats", Psycholinguistic, ["psycholing"], "mean category-count norm over noun tokens"),
    feat!("kf_nsamp", Psycholinguistic, ["psycholing"], "mean sample-count norm over noun tokens"),
    feat!("tl_freq", Psycholinguistic, ["psycholing"], "mean Thorndike-Lorge frequency over noun tokens"),
    feat!("brown", Psycholinguistic, ["psycholing"], "mean verbal-frequency norm over noun tokens"),
    feat!("familiarity", Psycholinguistic, ["psycholing"], "mean familiarity rating over noun tokens"),
    feat!("concreteness", Psycholinguistic, ["psycholing"], "mean concreteness rating over noun tokens"),
    feat!("imageability", Psycholinguistic, ["psycholing"], "mean imageability rating over noun tokens"),
    feat!("colorado", Psycholinguistic, ["psycholing"], "mean meaningfulness rating, Colorado norms"),
    feat!("paivio", Psycholinguistic, ["psycholing"], "mean meaningfulness rating, Paivio norms"),
    feat!("age_aquis", Psycholinguistic, ["psycholing"], "mean age-of-acquisition rating over noun tokens"),
    feat!("rt_nouns", Psycholinguistic, ["psycholing"], "share of noun tokens found in the norms database"),
    // miscellaneous
    feat!("disc_wrd", Misc, ["connectors"], "discourse connectors over N"),
    feat!("disc_sent", Misc, ["connectors"], "discourse connectors over S"),
    feat!("disc_arg_wrd", Misc, ["arg_connectors"], "argumentative connectors over N"),
    feat!("disc_arg_sent", Misc, ["arg_connectors"], "argumentative connectors over S"),
    feat!("senti_blob", Misc, ["stopwords", "sentiment.pattern"], "mean pattern-lexicon polarity of content words"),
    feat!("senti_vader", Misc, ["stopwords", "sentiment.valence"], "mean valence-lexicon polarity of content words"),
    feat!("senti_wordnet", Misc, ["stopwords", "sentiment.synset"], "mean synset-lexicon polarity of content words"),
    feat!("fog", Misc, [], "0.4 N/S + 100 complex/N"),
    feat!("spache", Misc, [], "0.4121 N/S + 0.082 unfamiliar/N + 0.659"),
    feat!("dale_chall", Misc, ["dale_chall"], "0.1579 difficult/N + 0.0496 N/S"),
    feat!("dist_big_ct", Misc, ["profiles"], "rank-order distance to the control bigram profile"),
    feat!("dist_big_dem", Misc, ["profiles"], "rank-order distance to the impaired bigram profile"),
    feat!("dist_trig_ct", Misc, ["profiles"], "rank-order distance to the control trigram profile"),
    feat!("dist_trig_dem", Misc, ["profiles"], "rank-order distance to the impaired trigram profile"),
    feat!("dist_fourg_ct", Misc, ["profiles"], "rank-order distance to the control fourgram profile"),
    feat!("dist_fourg_dem", Misc, ["profiles"], "rank-order distance to the impaired fourgram profile"),
];

/// Look up a feature definition by id.
pub fn feature_def(id: &str) -> Option<&'static FeatureDef> {
    CATALOG.iter().find(|d| d.id == id)
}

/// Ids of every feature in one group, catalog order.
pub fn group_ids(group: FeatureGroup) -> Vec<&'static str> {
    CATALOG
        .iter()
        .filter(|d| d.group == group)
        .map(|d| d.id)
        .collect()
}

/// Ids of the n-gram profile-distance features.
pub fn profile_distance_ids() -> Vec<&'static str> {
    CATALOG
        .iter()
        .filter(|d| d.requires.contains(&"profiles"))
        .map(|d| d.id)
        .collect()
}

/// Named real-valued features of one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub sample_id: String,
    pub label: crate::corpus::Label,
    /// Values keyed by feature id; the key set equals the catalog.
    pub values: BTreeMap<&'static str, FeatureValue>,
}

impl FeatureVector {
    pub fn get(&self, id: &str) -> Option<FeatureValue> {
        self.values.get(id).copied()
    }
}

/// Extract every catalog feature for one sample.
///
/// Pure in `(sample, bundle)`: absent resources and guard conditions
/// produce tagged missing values, never errors.
pub fn extract_all(sample: &TextSample, bundle: &ResourceBundle) -> FeatureVector {
    let mut values: BTreeMap<&'static str, FeatureValue> = BTreeMap::new();
    let mut put = |pairs: Vec<(&'static str, FeatureResult)>| {
        for (id, r) in pairs {
            if let Ok(v) = r {
                debug_assert!(v.is_finite(), "{id} produced a non-finite value");
            }
            values.insert(id, r.into());
        }
    };

    put(density::density_features(
        sample,
        bundle.adverb_exceptions.as_ref(),
    ));
    put(diversity::diversity_features(sample));
    put(semantic::focus_pmi_features(sample, bundle));
    put(ngram_diversity::all_ngram_features(sample));
    put(sophistication::sophistication_features(sample, bundle));
    put(semantic::specificity_features(sample, bundle));
    put(psycholing::psych_features(
        sample,
        bundle.psycholing.as_ref(),
    ));
    put(misc::misc_features(sample, bundle));

    debug_assert_eq!(values.len(), CATALOG.len(), "feature coverage mismatch");
    FeatureVector {
        sample_id: sample.id.clone(),
        label: sample.label,
        values,
    }
}
