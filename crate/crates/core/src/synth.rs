//! Deterministic synthetic corpus generator.
//!
//! The bundled corpus substitutes for restricted clinical data: two classes
//! of picture-description-style samples with controlled differences. The
//! impaired class draws from a small noun pool with heavy repetition (low
//! diversity) and prefers general all-purpose verbs; the control class
//! draws from a broad vocabulary with few repetitions. Every sample is
//! emitted both as plain text and as a pre-tagged CoNLL sidecar, so the
//! pipeline never depends on tagger quality.

use crate::corpus::{sample_from_conll, Label, TextSample};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::path::Path;

const CONTROL_NOUNS: &[&str] = &[
    "cookie", "jar", "boy", "girl", "mother", "sister", "window", "curtain", "kitchen", "sink",
    "water", "plate", "dish", "cup", "stool", "chair", "counter", "garden", "towel", "apron",
    "floor", "cabinet", "shelf", "faucet", "lady", "child", "hand", "morning", "weather",
    "neighbor", "basket", "napkin", "spoon", "bowl", "bread", "butter", "table", "door", "yard",
    "summer",
];

const IMPAIRED_NOUNS: &[&str] = &["cookie", "jar", "boy", "thing", "water"];

const CONTENT_VERBS: &[&str] = &[
    "washes", "climbs", "reaches", "spills", "falls", "steals", "laughs", "smiles", "watches",
    "dries", "points", "stands", "wobbles", "overflows", "grabs", "hands", "asks", "helps",
];

const GAP_VERBS: &[&str] = &["goes", "makes", "does", "gets", "takes"];

const ADJECTIVES: &[&str] = &[
    "little", "tall", "small", "happy", "wet", "dirty", "full", "empty", "high", "open", "nice",
    "warm",
];

const CONNECTORS: &[&str] = &["and", "so", "then"];
const PREPOSITIONS: &[&str] = &["on", "in", "near", "behind"];
const FILLERS: &[&str] = &["uh", "um"];

fn tag_of(word: &str) -> &'static str {
    match word {
        "the" | "a" => "DT",
        "and" => "CC",
        "so" | "then" | "there" => "RB",
        "on" | "in" | "near" | "behind" => "IN",
        "uh" | "um" => "UH",
        "she" | "he" | "it" => "PRP",
        w if CONTENT_VERBS.contains(&w) || GAP_VERBS.contains(&w) => "VBZ",
        w if ADJECTIVES.contains(&w) => "JJ",
        _ => "NN",
    }
}

/// Tuning knobs of the generator.
#[derive(Debug, Clone, Copy)]
pub struct SynthConfig {
    pub n_train_per_class: usize,
    pub n_test_per_class: usize,
    pub seed: u64,
    /// When set, the class-discriminative vocabulary appears only in the
    /// first this-many tokens; the rest of every sample is drawn from a
    /// shared neutral pool.
    pub signal_tokens: Option<usize>,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            n_train_per_class: 30,
            n_test_per_class: 15,
            seed: 20240416,
            signal_tokens: None,
        }
    }
}

/// A generated document: plain text plus the matching pre-tagged sidecar.
#[derive(Debug, Clone)]
pub struct SynthDoc {
    pub id: String,
    pub label: Label,
    pub text: String,
    pub conll: String,
}

impl SynthDoc {
    pub fn to_sample(&self) -> TextSample {
        sample_from_conll(&self.id, self.label, &self.conll)
            .expect("generated sidecars are well-formed")
    }
}

struct ClassProfile {
    nouns: &'static [&'static str],
    gap_prob: f64,
    filler_prob: f64,
    adj_prob: f64,
    connector_prob: f64,
    target_tokens: (usize, usize),
}

fn profile(label: Label) -> ClassProfile {
    match label {
        Label::Control => ClassProfile {
            nouns: CONTROL_NOUNS,
            gap_prob: 0.08,
            filler_prob: 0.03,
            adj_prob: 0.45,
            connector_prob: 0.35,
            target_tokens: (70, 150),
        },
        _ => ClassProfile {
            nouns: IMPAIRED_NOUNS,
            gap_prob: 0.8,
            filler_prob: 0.3,
            adj_prob: 0.1,
            connector_prob: 0.1,
            target_tokens: (55, 130),
        },
    }
}

fn pick<'a>(rng: &mut ChaCha8Rng, pool: &[&'a str]) -> &'a str {
    pool[rng.gen_range(0..pool.len())]
}

/// One utterance of (word, tag) pairs, terminator excluded.
fn gen_utterance(rng: &mut ChaCha8Rng, p: &ClassProfile, neutral: bool) -> Vec<&'static str> {
    let nouns = if neutral { CONTROL_NOUNS } else { p.nouns };
    let gap_prob = if neutral { 0.15 } else { p.gap_prob };
    let mut words: Vec<&'static str> = Vec::new();
    if rng.gen_bool(p.connector_prob) {
        words.push(pick(rng, CONNECTORS));
    }
    if rng.gen_bool(p.filler_prob) {
        words.push(pick(rng, FILLERS));
    }
    words.push("the");
    if rng.gen_bool(p.adj_prob) {
        words.push(pick(rng, ADJECTIVES));
    }
    words.push(pick(rng, nouns));
    let verb = if rng.gen_bool(gap_prob) {
        pick(rng, GAP_VERBS)
    } else {
        pick(rng, CONTENT_VERBS)
    };
    words.push(verb);
    match rng.gen_range(0..3u8) {
        0 => {
            words.push("the");
            words.push(pick(rng, nouns));
        }
        1 => {
            words.push("the");
            words.push(pick(rng, nouns));
            words.push(pick(rng, PREPOSITIONS));
            words.push("the");
            words.push(pick(rng, nouns));
        }
        _ => {}
    }
    words
}

fn gen_doc(id: &str, label: Label, seed: u64, signal_tokens: Option<usize>) -> SynthDoc {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = profile(label);
    let target = rng.gen_range(p.target_tokens.0..=p.target_tokens.1);
    let mut text = String::new();
    let mut conll = String::new();
    let mut produced = 0usize;
    while produced < target {
        let neutral = signal_tokens.is_some_and(|cut| produced >= cut);
        let words = gen_utterance(&mut rng, &p, neutral);
        for (i, w) in words.iter().enumerate() {
            if i > 0 {
                text.push(' ');
            }
            text.push_str(w);
            let _ = writeln!(conll, "{w}\t{}", tag_of(w));
        }
        text.push_str(". ");
        conll.push_str(".\t.\n\n");
        produced += words.len();
    }
    SynthDoc {
        id: id.to_string(),
        label,
        text: text.trim_end().to_string(),
        conll,
    }
}

/// Generate the train and test corpora. Deterministic in the config.
pub fn generate(config: &SynthConfig) -> (Vec<SynthDoc>, Vec<SynthDoc>) {
    let gen_split = |prefix: &str, per_class: usize, salt: u64| -> Vec<SynthDoc> {
        let mut docs = Vec::with_capacity(2 * per_class);
        for i in 0..per_class {
            for (label, tag) in [(Label::Positive, "pos"), (Label::Control, "ctl")] {
                let id = format!("{prefix}_{tag}_{i:03}");
                let seed = config
                    .seed
                    .wrapping_mul(0x9e3779b97f4a7c15)
                    .wrapping_add(salt)
                    .wrapping_add(i as u64 * 2 + (label == Label::Positive) as u64);
                docs.push(gen_doc(&id, label, seed, config.signal_tokens));
            }
        }
        docs.sort_by(|a, b| a.id.cmp(&b.id));
        docs
    };
    let train = gen_split("train", config.n_train_per_class, 0x5eed);
    let test = gen_split("test", config.n_test_per_class, 0x7e57);
    (train, test)
}

/// Ingest generated documents through their pre-tagged sidecars.
pub fn to_samples(docs: &[SynthDoc]) -> Vec<TextSample> {
    docs.iter().map(|d| d.to_sample()).collect()
}

/// Materialize a corpus directory: `<id>.txt`, `<id>.conll`, `labels.tsv`.
pub fn write_corpus(dir: &Path, docs: &[SynthDoc]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut labels = String::new();
    for doc in docs {
        std::fs::write(dir.join(format!("{}.txt", doc.id)), &doc.text)?;
        std::fs::write(dir.join(format!("{}.conll", doc.id)), &doc.conll)?;
        let _ = writeln!(labels, "{}\t{}", doc.id, doc.label.as_str());
    }
    std::fs::write(dir.join("labels.tsv"), labels)
}
