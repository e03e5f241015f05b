//! Part-of-speech tagging contract and the default averaged-perceptron
//! implementation.
//!
//! The tagger is pluggable: anything that maps a token sequence to one tag
//! per token satisfies [`PosTagger`]. The shipped implementation is an
//! averaged perceptron trained offline and persisted as a plain-text model
//! file, so taggging never depends on an external runtime. Pre-tagged
//! CoNLL sidecars bypass the tagger entirely (see the corpus module).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

/// Penn Treebank tagset accepted for word tokens, plus the punctuation
/// tags the tokenizer assigns itself.
pub const TAGSET: &[&str] = &[
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD", "NN", "NNP", "NNPS",
    "NNS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS", "RP", "SYM", "TO", "UH", "VB", "VBD",
    "VBG", "VBN", "VBP", "VBZ", "WDT", "WP", "WP$", "WRB", ".", ",", ":", "(", ")", "``", "''",
    "#", "$",
];

/// Maps a sentence of word tokens to exactly one tag per token.
pub trait PosTagger {
    fn tag(&self, words: &[&str]) -> Vec<String>;
}

#[derive(Debug, thiserror::Error)]
pub enum TaggerModelError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{line}: malformed tagger model line")]
    Malformed { path: String, line: usize },
}

const START: [&str; 2] = ["-START-", "-START2-"];
const END: [&str; 2] = ["-END-", "-END2-"];

#[derive(Debug, Clone, Default)]
struct WeightRec {
    weight: f64,
    total: f64,
    ts: u64,
}

/// Averaged-perceptron part-of-speech tagger.
#[derive(Debug, Clone, Default)]
pub struct PerceptronTagger {
    weights: BTreeMap<String, BTreeMap<String, f64>>,
    tagdict: BTreeMap<String, String>,
    classes: Vec<String>,
}

fn normalize(word: &str) -> String {
    if word.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        if word.len() == 4 && word.chars().all(|c| c.is_ascii_digit()) {
            "!YEAR".to_string()
        } else {
            "!DIGITS".to_string()
        }
    } else {
        word.to_lowercase()
    }
}

fn suffix(word: &str) -> &str {
    let n = word.chars().count();
    if n <= 3 {
        word
    } else {
        let cut = word.char_indices().nth(n - 3).map(|(i, _)| i).unwrap_or(0);
        &word[cut..]
    }
}

fn features(
    i: usize,
    word: &str,
    context: &[String],
    prev: &str,
    prev2: &str,
) -> Vec<String> {
    // context is padded with two START and two END markers
    let ctx = |k: usize| context[k].as_str();
    let i = i + 2;
    let mut f = Vec::with_capacity(14);
    f.push("bias".to_string());
    f.push(format!("i suffix {}", suffix(word)));
    f.push(format!("i pref1 {}", word.chars().next().unwrap_or('_')));
    f.push(format!("i-1 tag {prev}"));
    f.push(format!("i-2 tag {prev2}"));
    f.push(format!("i tag+i-2 tag {prev} {prev2}"));
    f.push(format!("i word {}", ctx(i)));
    f.push(format!("i-1 tag+i word {prev} {}", ctx(i)));
    f.push(format!("i-1 word {}", ctx(i - 1)));
    f.push(format!("i-1 suffix {}", suffix(ctx(i - 1))));
    f.push(format!("i-2 word {}", ctx(i - 2)));
    f.push(format!("i+1 word {}", ctx(i + 1)));
    f.push(format!("i+1 suffix {}", suffix(ctx(i + 1))));
    f.push(format!("i+2 word {}", ctx(i + 2)));
    f
}

impl PerceptronTagger {
    fn predict(&self, feats: &[String]) -> String {
        let mut scores: BTreeMap<&str, f64> = BTreeMap::new();
        for f in feats {
            if let Some(per_tag) = self.weights.get(f) {
                for (tag, w) in per_tag {
                    *scores.entry(tag.as_str()).or_insert(0.0) += w;
                }
            }
        }
        self.classes
            .iter()
            .map(|c| (scores.get(c.as_str()).copied().unwrap_or(0.0), c))
            .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(b.1.cmp(a.1)))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| "NN".to_string())
    }

    /// Train on tagged sentences. Deterministic given `seed`.
    pub fn train(sentences: &[(Vec<String>, Vec<String>)], iterations: usize, seed: u64) -> Self {
        let mut tagger = PerceptronTagger::default();
        tagger.build_tagdict(sentences);
        let mut classes: Vec<String> = sentences
            .iter()
            .flat_map(|(_, tags)| tags.iter().cloned())
            .collect();
        classes.sort();
        classes.dedup();
        tagger.classes = classes;

        let mut recs: BTreeMap<String, BTreeMap<String, WeightRec>> = BTreeMap::new();
        let mut now = 0u64;
        let mut order: Vec<usize> = (0..sentences.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        for _ in 0..iterations {
            order.shuffle(&mut rng);
            for &si in &order {
                let (words, tags) = &sentences[si];
                let context = padded_context(words);
                let mut prev = START[0].to_string();
                let mut prev2 = START[1].to_string();
                for (i, word) in words.iter().enumerate() {
                    let truth = &tags[i];
                    let guess = match tagger.tagdict.get(&normalize(word)) {
                        Some(t) => t.clone(),
                        None => {
                            now += 1;
                            let feats = features(i, &normalize(word), &context, &prev, &prev2);
                            let guess = predict_raw(&recs, &tagger.classes, &feats);
                            if &guess != truth {
                                for f in &feats {
                                    let per_tag = recs.entry(f.clone()).or_default();
                                    upd(per_tag.entry(truth.clone()).or_default(), 1.0, now);
                                    upd(per_tag.entry(guess.clone()).or_default(), -1.0, now);
                                }
                            }
                            guess
                        }
                    };
                    prev2 = std::mem::replace(&mut prev, guess);
                }
            }
        }

        // average the accumulated weights
        for (feat, per_tag) in recs {
            for (tag, mut rec) in per_tag {
                rec.total += (now - rec.ts) as f64 * rec.weight;
                let avg = rec.total / now.max(1) as f64;
                if avg.abs() > 1e-12 {
                    tagger
                        .weights
                        .entry(feat.clone())
                        .or_default()
                        .insert(tag, avg);
                }
            }
        }
        tagger
    }

    fn build_tagdict(&mut self, sentences: &[(Vec<String>, Vec<String>)]) {
        let mut counts: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
        for (words, tags) in sentences {
            for (w, t) in words.iter().zip(tags) {
                *counts
                    .entry(normalize(w))
                    .or_default()
                    .entry(t.clone())
                    .or_insert(0) += 1;
            }
        }
        for (word, per_tag) in counts {
            let n: usize = per_tag.values().sum();
            let (tag, mode) = per_tag
                .iter()
                .max_by_key(|(t, c)| (**c, std::cmp::Reverse(t.as_str())))
                .map(|(t, c)| (t.clone(), *c))
                .unwrap();
            if n >= 5 && mode as f64 / n as f64 >= 0.97 {
                self.tagdict.insert(word, tag);
            }
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), TaggerModelError> {
        let mut out = String::from("lexfeat-tagger v1\n#classes\n");
        for c in &self.classes {
            out.push_str(c);
            out.push('\n');
        }
        out.push_str("#tagdict\n");
        for (w, t) in &self.tagdict {
            let _ = writeln!(out, "{w}\t{t}");
        }
        out.push_str("#weights\n");
        for (f, per_tag) in &self.weights {
            for (t, w) in per_tag {
                let _ = writeln!(out, "{f}\t{t}\t{w:?}");
            }
        }
        std::fs::write(path, out).map_err(|e| TaggerModelError::Io {
            path: path.display().to_string(),
            source: e,
        })
    }

    pub fn load(path: &Path) -> Result<Self, TaggerModelError> {
        let text = std::fs::read_to_string(path).map_err(|e| TaggerModelError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let malformed = |line: usize| TaggerModelError::Malformed {
            path: path.display().to_string(),
            line,
        };
        let mut tagger = PerceptronTagger::default();
        let mut section = "";
        for (lineno, line) in text.lines().enumerate() {
            if lineno == 0 {
                if line != "lexfeat-tagger v1" {
                    return Err(malformed(1));
                }
                continue;
            }
            if let Some(name) = line.strip_prefix('#') {
                section = match name {
                    "classes" => "classes",
                    "tagdict" => "tagdict",
                    "weights" => "weights",
                    _ => return Err(malformed(lineno + 1)),
                };
                continue;
            }
            if line.is_empty() {
                continue;
            }
            match section {
                "classes" => tagger.classes.push(line.to_string()),
                "tagdict" => {
                    let mut p = line.splitn(2, '\t');
                    let (w, t) = (p.next().unwrap_or(""), p.next().unwrap_or(""));
                    if w.is_empty() || t.is_empty() {
                        return Err(malformed(lineno + 1));
                    }
                    tagger.tagdict.insert(w.to_string(), t.to_string());
                }
                "weights" => {
                    let parts: Vec<&str> = line.split('\t').collect();
                    if parts.len() != 3 {
                        return Err(malformed(lineno + 1));
                    }
                    let w: f64 = parts[2].parse().map_err(|_| malformed(lineno + 1))?;
                    tagger
                        .weights
                        .entry(parts[0].to_string())
                        .or_default()
                        .insert(parts[1].to_string(), w);
                }
                _ => return Err(malformed(lineno + 1)),
            }
        }
        Ok(tagger)
    }
}

fn padded_context(words: &[String]) -> Vec<String> {
    let mut ctx = Vec::with_capacity(words.len() + 4);
    ctx.push(START[0].to_string());
    ctx.push(START[1].to_string());
    ctx.extend(words.iter().map(|w| normalize(w)));
    ctx.push(END[0].to_string());
    ctx.push(END[1].to_string());
    ctx
}

fn upd(rec: &mut WeightRec, delta: f64, now: u64) {
    rec.total += (now - rec.ts) as f64 * rec.weight;
    rec.ts = now;
    rec.weight += delta;
}

fn predict_raw(
    recs: &BTreeMap<String, BTreeMap<String, WeightRec>>,
    classes: &[String],
    feats: &[String],
) -> String {
    let mut scores: BTreeMap<&str, f64> = BTreeMap::new();
    for f in feats {
        if let Some(per_tag) = recs.get(f) {
            for (tag, rec) in per_tag {
                *scores.entry(tag.as_str()).or_insert(0.0) += rec.weight;
            }
        }
    }
    classes
        .iter()
        .map(|c| (scores.get(c.as_str()).copied().unwrap_or(0.0), c))
        .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(b.1.cmp(a.1)))
        .map(|(_, c)| c.clone())
        .unwrap_or_else(|| "NN".to_string())
}

impl PosTagger for PerceptronTagger {
    fn tag(&self, words: &[&str]) -> Vec<String> {
        let owned: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        let context = padded_context(&owned);
        let mut prev = START[0].to_string();
        let mut prev2 = START[1].to_string();
        let mut out = Vec::with_capacity(words.len());
        for (i, word) in owned.iter().enumerate() {
            let norm = normalize(word);
            let tag = match self.tagdict.get(&norm) {
                Some(t) => t.clone(),
                None => {
                    let feats = features(i, &norm, &context, &prev, &prev2);
                    self.predict(&feats)
                }
            };
            prev2 = std::mem::replace(&mut prev, tag.clone());
            out.push(tag);
        }
        out
    }
}

#[cfg(test)]
pub(crate) fn lexicon_tagger_for_tests() -> impl PosTagger {
    struct LexTagger(std::collections::HashMap<&'static str, &'static str>);
    impl PosTagger for LexTagger {
        fn tag(&self, words: &[&str]) -> Vec<String> {
            words
                .iter()
                .map(|w| {
                    let lower = w.to_lowercase();
                    self.0
                        .get(lower.as_str())
                        .map(|t| t.to_string())
                        .unwrap_or_else(|| {
                            if lower.ends_with('s') && lower.len() > 2 {
                                "VBZ".to_string()
                            } else {
                                "NN".to_string()
                            }
                        })
                })
                .collect()
        }
    }
    let pairs: &[(&str, &str)] = &[
        ("the", "DT"),
        ("a", "DT"),
        ("an", "DT"),
        ("boy", "NN"),
        ("girl", "NN"),
        ("cookie", "NN"),
        ("jar", "NN"),
        ("water", "NN"),
        ("mother", "NN"),
        ("he", "PRP"),
        ("she", "PRP"),
        ("it", "PRP"),
        ("falls", "VBZ"),
        ("laughs", "VBZ"),
        ("spills", "VBZ"),
        ("steals", "VBZ"),
        ("fell", "VBD"),
        ("on", "IN"),
        ("in", "IN"),
        ("and", "CC"),
        ("uh", "UH"),
        ("um", "UH"),
        ("here", "RB"),
    ];
    LexTagger(pairs.iter().copied().collect())
}
