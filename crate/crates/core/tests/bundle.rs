//! Integration checks of resource loading against the bundled fixtures.

use lexfeat_core::catalog::{extract_all, FeatureValue, MissingReason};
use lexfeat_core::corpus::{read_corpus_dir, Label, PosTaggerContract};
use lexfeat_core::resources::load_bundle;
use std::path::{Path, PathBuf};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn fixture_bundle_loads_every_store() {
    let dir = fixtures().join("resources");
    let loaded = load_bundle(&dir, &dir.join("manifest.txt")).unwrap();
    let names: Vec<&str> = loaded
        .report
        .entries
        .iter()
        .map(|(n, _)| n.as_str())
        .collect();
    for expected in [
        "frequency",
        "stopwords",
        "uwl",
        "dale_chall",
        "frequent_verbs",
        "gap_verbs",
        "irregular_verbs",
        "connectors",
        "arg_connectors",
        "abbreviations",
        "adverb_exceptions",
        "psycholing",
        "senses",
        "embeddings.glove50",
        "embeddings.glove100",
        "embeddings.glove200",
        "embeddings.glove300",
        "embeddings.w2v300",
        "sentiment.pattern",
        "sentiment.valence",
        "sentiment.synset",
        "profiles",
    ] {
        assert!(names.contains(&expected), "missing {expected}");
    }
    assert!(loaded.tagger.is_some());
    // frequency lookups are total and stem-matched on the real fixture
    let freq = loaded.bundle.frequency.as_ref().unwrap();
    assert!(freq.rank("cookies") == freq.rank("cookie"));
    assert_eq!(freq.rank("absolutely-not-a-word"), freq.size() as u32 + 1);
    assert!(freq.frequency("absolutely-not-a-word") > 0.0);
    // embedding stores expose the declared dimensions
    for (name, dim) in [("glove50", 50), ("glove100", 100), ("glove300", 300)] {
        let store = loaded.bundle.embedding(name).unwrap();
        assert_eq!(store.dimension, dim);
        assert_eq!(store.vector("cookie").unwrap().len(), dim);
    }
}

#[test]
fn loading_twice_gives_identical_reports() {
    let dir = fixtures().join("resources");
    let a = load_bundle(&dir, &dir.join("manifest.txt")).unwrap();
    let b = load_bundle(&dir, &dir.join("manifest.txt")).unwrap();
    assert_eq!(a.report.entries, b.report.entries);
}

#[test]
fn none_manifest_value_disables_only_dependent_features() {
    let dir = fixtures().join("resources");
    let original = std::fs::read_to_string(dir.join("manifest.txt")).unwrap();
    let edited: String = original
        .lines()
        .map(|l| {
            if l.starts_with("embeddings.glove50") {
                "embeddings.glove50 = none".to_string()
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    let tmp = tempfile::tempdir().unwrap();
    let manifest = tmp.path().join("manifest.txt");
    std::fs::write(&manifest, edited).unwrap();

    let loaded = load_bundle(&dir, &manifest).unwrap();
    assert!(loaded.bundle.embedding("glove50").is_none());
    assert!(loaded.bundle.embedding("glove100").is_some());

    let corpus = read_corpus_dir(
        &fixtures().join("corpus"),
        loaded.tagger.as_ref().map(|t| t as &dyn PosTaggerContract),
    )
    .unwrap();
    let sample = corpus.iter().find(|s| s.id == "memory_ctl_01").unwrap();
    let fv = extract_all(sample, &loaded.bundle);
    assert_eq!(
        fv.get("avg_glv50").unwrap(),
        FeatureValue::Missing(MissingReason::ResourceAbsent)
    );
    assert_eq!(
        fv.get("pmi_glv50").unwrap(),
        FeatureValue::Missing(MissingReason::ResourceAbsent)
    );
    // everything not depending on the disabled store still computes
    assert!(matches!(fv.get("avg_glv100").unwrap(), FeatureValue::Value(_)));
    assert!(matches!(fv.get("ttr").unwrap(), FeatureValue::Value(_)));
}

#[test]
fn shipped_tagger_tags_the_demo_corpus_sensibly() {
    let dir = fixtures().join("resources");
    let loaded = load_bundle(&dir, &dir.join("manifest.txt")).unwrap();
    let tagger = loaded.tagger.as_ref().unwrap();
    let tags = tagger.tag(&["the", "boy", "climbs", "on", "the", "stool"]);
    assert_eq!(tags, ["DT", "NN", "VBZ", "IN", "DT", "NN"]);

    let corpus = read_corpus_dir(
        &fixtures().join("corpus"),
        Some(tagger as &dyn PosTaggerContract),
    )
    .unwrap();
    assert_eq!(corpus.len(), 6);
    let labels: Vec<Label> = corpus.iter().map(|s| s.label).collect();
    assert_eq!(labels.iter().filter(|&&l| l == Label::Positive).count(), 3);
    // the chat transcript kept only participant tiers
    let cha = corpus.iter().find(|s| s.id == "memory_pos_02").unwrap();
    assert!(cha.tokens().all(|t| t.lower != "investigator"));
    assert!(cha.tokens().any(|t| t.lower == "jar"));
    assert!(cha.n_utterances() >= 4);
}
