//! Miscellaneous lexical features: discourse-connector rates, lexicon
//! sentiment averages, readability scores, and rank-order distances to
//! corpus-level n-gram profiles.

use crate::catalog::{FeatureResult, MissingReason};
use crate::corpus::{Label, TextSample};
use crate::resources::{ResourceBundle, SentimentLexicon, WordList};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

/// Profile length cutoff and out-of-profile penalty of the rank-order
/// distance.
pub const PROFILE_CUTOFF: usize = 300;

/// Top-K word n-grams of one order, ranked by frequency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NgramProfile {
    pub n: usize,
    /// N-grams in rank order (rank 1 first).
    pub ordered: Vec<String>,
    ranks: HashMap<String, usize>,
}

impl NgramProfile {
    /// Build from token sequences, ranking n-grams by frequency, breaking
    /// ties lexicographically, and truncating to the profile cutoff.
    /// N-grams never cross utterance boundaries.
    pub fn build(samples: &[&TextSample], n: usize) -> NgramProfile {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for sample in samples {
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
                    *counts.entry(gram.join(" ")).or_insert(0) += 1;
                }
            }
        }
        let mut items: Vec<(String, usize)> = counts.into_iter().collect();
        // frequency descending, then lexicographic ascending (BTreeMap
        // order already gives the lexicographic part for stable sort)
        items.sort_by_key(|&(_, count)| std::cmp::Reverse(count));
        items.truncate(PROFILE_CUTOFF);
        let ordered: Vec<String> = items.into_iter().map(|(g, _)| g).collect();
        let ranks = ordered
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i + 1))
            .collect();
        NgramProfile { n, ordered, ranks }
    }

    pub fn rank(&self, gram: &str) -> Option<usize> {
        self.ranks.get(gram).copied()
    }

    pub fn len(&self) -> usize {
        self.ordered.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordered.is_empty()
    }
}

/// Rank-order (out-of-place) distance from a text profile to a group
/// profile: each text n-gram adds the absolute rank displacement, or the
/// cutoff when it is absent from the group profile.
pub fn profile_distance(text: &NgramProfile, group: &NgramProfile) -> f64 {
    debug_assert_eq!(text.n, group.n);
    let mut delta = 0usize;
    for (i, gram) in text.ordered.iter().enumerate() {
        match group.rank(gram) {
            Some(r) => delta += r.abs_diff(i + 1),
            None => delta += PROFILE_CUTOFF,
        }
    }
    delta as f64
}

#[derive(Debug, thiserror::Error)]
pub enum ProfileError {
    #[error("label `{0}` has no sample")]
    InsufficientData(&'static str),
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed profile line")]
    Malformed { path: String, line: usize },
}

/// The six group profiles: impaired and control, for n in {2, 3, 4}.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NgramProfileStore {
    profiles: BTreeMap<(Label, usize), NgramProfile>,
}

impl NgramProfileStore {
    /// Build all six profiles from a labeled training corpus. Unlabeled
    /// samples are ignored; each class must be represented.
    pub fn build(corpus: &[TextSample]) -> Result<NgramProfileStore, ProfileError> {
        let mut store = NgramProfileStore::default();
        for label in [Label::Positive, Label::Control] {
            let group: Vec<&TextSample> = corpus.iter().filter(|s| s.label == label).collect();
            if group.is_empty() {
                return Err(ProfileError::InsufficientData(label.as_str()));
            }
            for n in 2..=4 {
                store
                    .profiles
                    .insert((label, n), NgramProfile::build(&group, n));
            }
        }
        Ok(store)
    }

    pub fn get(&self, label: Label, n: usize) -> Option<&NgramProfile> {
        self.profiles.get(&(label, n))
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    /// Persist as one `<label>_<n>.tsv` per profile, `n<TAB>rank<TAB>ngram`
    /// per line.
    pub fn save_dir(&self, dir: &Path) -> Result<(), ProfileError> {
        let io = |p: &Path, e: std::io::Error| ProfileError::Io {
            path: p.display().to_string(),
            source: e,
        };
        std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
        for ((label, n), profile) in &self.profiles {
            let path = dir.join(format!("{}_{n}.tsv", label.as_str()));
            let mut out = String::new();
            for (i, gram) in profile.ordered.iter().enumerate() {
                let _ = writeln!(out, "{n}\t{}\t{gram}", i + 1);
            }
            std::fs::write(&path, out).map_err(|e| io(&path, e))?;
        }
        Ok(())
    }

    /// Load every `<label>_<n>.tsv` present in a directory.
    pub fn load_dir(dir: &Path) -> Result<NgramProfileStore, ProfileError> {
        let mut store = NgramProfileStore::default();
        for label in [Label::Positive, Label::Control] {
            for n in 2..=4usize {
                let path = dir.join(format!("{}_{n}.tsv", label.as_str()));
                if !path.exists() {
                    continue;
                }
                let text = std::fs::read_to_string(&path).map_err(|e| ProfileError::Io {
                    path: path.display().to_string(),
                    source: e,
                })?;
                let mut ordered = Vec::new();
                for (lineno, line) in text.lines().enumerate() {
                    if line.trim().is_empty() {
                        continue;
                    }
                    let parts: Vec<&str> = line.splitn(3, '\t').collect();
                    let ok = parts.len() == 3
                        && parts[0].parse::<usize>().is_ok_and(|v| v == n)
                        && parts[1].parse::<usize>().is_ok_and(|v| v == ordered.len() + 1);
                    if !ok {
                        return Err(ProfileError::Malformed {
                            path: path.display().to_string(),
                            line: lineno + 1,
                        });
                    }
                    ordered.push(parts[2].to_string());
                }
                let ranks = ordered
                    .iter()
                    .enumerate()
                    .map(|(i, g)| (g.clone(), i + 1))
                    .collect();
                store.profiles.insert(
                    (label, n),
                    NgramProfile { n, ordered, ranks },
                );
            }
        }
        Ok(store)
    }
}

/// Connector rates over words and over utterances.
pub fn discourse_features(
    sample: &TextSample,
    connectors: Option<&WordList>,
    arg_connectors: Option<&WordList>,
) -> Vec<(&'static str, FeatureResult)> {
    let n = sample.n_tokens() as f64;
    let s = sample.n_utterances() as f64;
    let rate = |list: Option<&WordList>| -> (FeatureResult, FeatureResult) {
        match list {
            None => (
                Err(MissingReason::ResourceAbsent),
                Err(MissingReason::ResourceAbsent),
            ),
            Some(list) => {
                let c = sample.tokens().filter(|t| list.contains(&t.lower)).count() as f64;
                (Ok(c / n), Ok(c / s))
            }
        }
    };
    let (disc_wrd, disc_sent) = rate(connectors);
    let (disc_arg_wrd, disc_arg_sent) = rate(arg_connectors);
    vec![
        ("disc_wrd", disc_wrd),
        ("disc_sent", disc_sent),
        ("disc_arg_wrd", disc_arg_wrd),
        ("disc_arg_sent", disc_arg_sent),
    ]
}

/// Mean polarity of content words; words outside the lexicon count as
/// neutral.
pub fn sentiment_mean(
    sample: &TextSample,
    stopwords: &WordList,
    lexicon: &SentimentLexicon,
) -> FeatureResult {
    let mut sum = 0.0f64;
    let mut count = 0usize;
    for t in sample.tokens() {
        if !stopwords.contains(&t.lower) {
            sum += lexicon.polarity(&t.lower);
            count += 1;
        }
    }
    if count == 0 {
        Err(MissingReason::NoContent)
    } else {
        Ok(sum / count as f64)
    }
}

/// The three readability formulas, exactly as adopted.
pub fn readability_features(
    sample: &TextSample,
    dale_chall_list: Option<&WordList>,
) -> Vec<(&'static str, FeatureResult)> {
    let n = sample.n_tokens() as f64;
    let s = sample.n_utterances() as f64;
    let complex = sample.tokens().filter(|t| t.syllables >= 3).count() as f64;
    let fog = 0.4 * n / s + 100.0 * complex / n;
    let spache = 0.4121 * n / s + 0.082 * complex / n + 0.659;
    let dale_chall = match dale_chall_list {
        None => Err(MissingReason::ResourceAbsent),
        Some(list) => {
            let difficult = sample.tokens().filter(|t| !list.contains(&t.lower)).count() as f64;
            Ok(0.1579 * difficult / n + 0.0496 * n / s)
        }
    };
    vec![
        ("fog", Ok(fog)),
        ("spache", Ok(spache)),
        ("dale_chall", dale_chall),
    ]
}

/// Distances from the sample's own n-gram profiles to the stored group
/// profiles.
pub fn profile_features(
    sample: &TextSample,
    store: Option<&NgramProfileStore>,
) -> Vec<(&'static str, FeatureResult)> {
    let ids: [(&'static str, Label, usize); 6] = [
        ("dist_big_ct", Label::Control, 2),
        ("dist_big_dem", Label::Positive, 2),
        ("dist_trig_ct", Label::Control, 3),
        ("dist_trig_dem", Label::Positive, 3),
        ("dist_fourg_ct", Label::Control, 4),
        ("dist_fourg_dem", Label::Positive, 4),
    ];
    let Some(store) = store else {
        return ids
            .iter()
            .map(|(id, _, _)| (*id, Err(MissingReason::ResourceAbsent)))
            .collect();
    };
    let own: BTreeMap<usize, NgramProfile> = (2..=4)
        .map(|n| (n, NgramProfile::build(&[sample], n)))
        .collect();
    ids.iter()
        .map(|(id, label, n)| {
            let text = &own[n];
            if text.is_empty() {
                return (*id, Err(MissingReason::TooShort));
            }
            match store.get(*label, *n) {
                None => (*id, Err(MissingReason::ResourceAbsent)),
                Some(group) => (*id, Ok(profile_distance(text, group))),
            }
        })
        .collect()
}

/// Every miscellaneous feature of one sample.
pub fn misc_features(
    sample: &TextSample,
    bundle: &ResourceBundle,
) -> Vec<(&'static str, FeatureResult)> {
    let mut out = discourse_features(
        sample,
        bundle.connectors.as_ref(),
        bundle.arg_connectors.as_ref(),
    );
    let senti = |lexicon: Option<&SentimentLexicon>| match (bundle.stopwords.as_ref(), lexicon) {
        (Some(stopwords), Some(lex)) => sentiment_mean(sample, stopwords, lex),
        _ => Err(MissingReason::ResourceAbsent),
    };
    out.push(("senti_blob", senti(bundle.sentiment_pattern.as_ref())));
    out.push(("senti_vader", senti(bundle.sentiment_valence.as_ref())));
    out.push(("senti_wordnet", senti(bundle.sentiment_synset.as_ref())));
    out.extend(readability_features(sample, bundle.dale_chall.as_ref()));
    out.extend(profile_features(sample, bundle.profiles.as_ref()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resources::MatchMode;
    use crate::testutil::{noun_sample, sample_from_tagged};

    fn list(words: &[&str]) -> WordList {
        WordList::from_members("w", MatchMode::Exact, words.iter().map(|s| s.to_string()))
    }

    #[test]
    fn discourse_counting() {
        let s = sample_from_tagged(&[&[("and", "CC"), ("so", "RB"), ("but", "CC")]]);
        let conn = list(&["and", "so", "but", "also", "then"]);
        let arg = list(&["but", "therefore", "hence"]);
        let f = discourse_features(&s, Some(&conn), Some(&arg));
        let get = |id: &str| f.iter().find(|(i, _)| *i == id).unwrap().1;
        assert_eq!(get("disc_wrd"), Ok(1.0));
        assert_eq!(get("disc_arg_wrd"), Ok(1.0 / 3.0));
        assert_eq!(get("disc_sent"), Ok(3.0));
    }

    #[test]
    fn discourse_rates_over_multiple_utterances() {
        let s = sample_from_tagged(&[
            &[("and", "CC"), ("a", "DT"), ("b", "NN"), ("c", "NN"), ("d", "NN")],
            &[("so", "RB"), ("e", "NN"), ("f", "NN"), ("g", "NN"), ("h", "NN")],
        ]);
        let conn = list(&["and", "so"]);
        let f = discourse_features(&s, Some(&conn), None);
        let get = |id: &str| f.iter().find(|(i, _)| *i == id).unwrap().1;
        assert_eq!(get("disc_wrd"), Ok(0.2));
        assert_eq!(get("disc_sent"), Ok(1.0));
        assert_eq!(get("disc_arg_wrd"), Err(MissingReason::ResourceAbsent));
    }

    #[test]
    fn sentiment_averages() {
        let stop = list(&["the"]);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.tsv");
        std::fs::write(&path, "good\t0.5\nnice\t0.1\n").unwrap();
        let lex = crate::resources::load_sentiment(
            &path,
            crate::resources::SentimentKind::PatternPolarity,
        )
        .unwrap();
        // polarities {0.5, 0.1, 0} -> 0.2
        let s = noun_sample(&["good", "nice", "jar"]);
        let v = sentiment_mean(&s, &stop, &lex).unwrap();
        assert!((v - 0.2).abs() < 1e-12);
        // symmetric polarities cancel
        std::fs::write(&path, "good\t1.0\nbad\t-1.0\n").unwrap();
        let lex2 = crate::resources::load_sentiment(
            &path,
            crate::resources::SentimentKind::PatternPolarity,
        )
        .unwrap();
        let s2 = noun_sample(&["good", "bad"]);
        assert_eq!(sentiment_mean(&s2, &stop, &lex2), Ok(0.0));
        // all stopwords -> no content
        let s3 = noun_sample(&["the", "the"]);
        assert_eq!(
            sentiment_mean(&s3, &stop, &lex2),
            Err(MissingReason::NoContent)
        );
    }

    #[test]
    fn readability_printed_formulas() {
        // N=10, S=1, no complex words -> fog = 4.0
        let words: Vec<&str> = vec!["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"];
        let s = noun_sample(&words);
        let f = readability_features(&s, Some(&list(&words)));
        let get = |id: &str| f.iter().find(|(i, _)| *i == id).unwrap().1;
        assert_eq!(get("fog"), Ok(4.0));
        // N=10, S=2, zero difficult -> dcs = 0.0496 * 5
        let two = sample_from_tagged(&[
            &[("a", "NN"), ("b", "NN"), ("c", "NN"), ("d", "NN"), ("e", "NN")],
            &[("f", "NN"), ("g", "NN"), ("h", "NN"), ("i", "NN"), ("j", "NN")],
        ]);
        let f2 = readability_features(&two, Some(&list(&words)));
        let get2 = |id: &str| f2.iter().find(|(i, _)| *i == id).unwrap().1;
        assert_eq!(get2("dale_chall"), Ok(0.0496 * 5.0));
        // N=10, S=2, three trisyllabic words
        let three = sample_from_tagged(&[
            &[
                ("banana", "NN"),
                ("elephant", "NN"),
                ("remember", "NN"),
                ("d", "NN"),
                ("e", "NN"),
            ],
            &[("f", "NN"), ("g", "NN"), ("h", "NN"), ("i", "NN"), ("j", "NN")],
        ]);
        let f3 = readability_features(&three, None);
        let get3 = |id: &str| f3.iter().find(|(i, _)| *i == id).unwrap().1;
        let spache = get3("spache").unwrap();
        assert!((spache - (0.4121 * 5.0 + 0.082 * 0.3 + 0.659)).abs() < 1e-12);
        assert_eq!(get3("dale_chall"), Err(MissingReason::ResourceAbsent));
    }

    #[test]
    fn profile_build_ranks_by_frequency_then_lexicographic() {
        let a = noun_sample(&["the", "boy", "the", "boy", "a", "jar"]);
        let p = NgramProfile::build(&[&a], 2);
        // "the boy" occurs twice, others once
        assert_eq!(p.rank("the boy"), Some(1));
        // ties: "a jar" < "boy a" < "boy the" lexicographically
        assert_eq!(p.rank("a jar"), Some(2));
        assert_eq!(p.rank("boy a"), Some(3));
        assert_eq!(p.rank("boy the"), Some(4));
    }

    #[test]
    fn profile_distance_hand_cases() {
        let a = noun_sample(&["x", "y", "x", "y"]);
        let p = NgramProfile::build(&[&a], 2);
        assert_eq!(profile_distance(&p, &p), 0.0);
        // text [xy(1), yx(2)] vs group [yx(1), xy(2)] -> 1 + 1
        let b = noun_sample(&["y", "x", "y", "x"]);
        let q = NgramProfile::build(&[&b], 2);
        assert_eq!(profile_distance(&p, &q), 2.0);
        // disjoint: every gram pays the cutoff
        let c = noun_sample(&["p", "q", "r"]);
        let r = NgramProfile::build(&[&c], 2);
        assert_eq!(profile_distance(&r, &p), (2 * PROFILE_CUTOFF) as f64);
    }

    #[test]
    fn store_roundtrip_and_label_requirements() {
        let mut pos = noun_sample(&["go", "go", "go", "jar"]);
        pos.label = Label::Positive;
        pos.id = "p1".into();
        let mut ctl = noun_sample(&["boy", "washes", "dish", "well"]);
        ctl.label = Label::Control;
        ctl.id = "c1".into();
        let store = NgramProfileStore::build(&[pos.clone(), ctl]).unwrap();
        assert_eq!(store.len(), 6);
        let dir = tempfile::tempdir().unwrap();
        store.save_dir(dir.path()).unwrap();
        let loaded = NgramProfileStore::load_dir(dir.path()).unwrap();
        assert_eq!(store, loaded);
        // a corpus that lacks one class cannot build profiles
        assert!(NgramProfileStore::build(&[pos]).is_err());
    }

    #[test]
    fn identical_corpora_for_both_labels_give_identical_profiles() {
        let mut pos = noun_sample(&["the", "boy", "falls"]);
        pos.label = Label::Positive;
        let mut ctl = noun_sample(&["the", "boy", "falls"]);
        ctl.label = Label::Control;
        let store = NgramProfileStore::build(&[pos, ctl]).unwrap();
        for n in 2..=3 {
            assert_eq!(store.get(Label::Positive, n), store.get(Label::Control, n));
        }
    }
}
