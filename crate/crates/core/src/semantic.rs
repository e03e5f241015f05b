//! Keyword focus, pointwise mutual information, and lexical specificity.
//!
//! Keywords come from RAKE: the token stream is split at stop words and
//! punctuation into candidate phrases, each word is scored by
//! degree/frequency over the phrase co-occurrence graph, and a phrase
//! scores the sum of its member word scores.

use crate::catalog::{FeatureResult, MissingReason};
use crate::corpus::TextSample;
use crate::resources::{EmbeddingStore, ResourceBundle, SenseInventory, SenseMetric, WordList};
use std::collections::{BTreeMap, HashMap, HashSet};

/// A candidate keyword phrase with its RAKE score.
#[derive(Debug, Clone, PartialEq)]
pub struct Keyword {
    /// Member words, lowercased, in phrase order.
    pub words: Vec<String>,
    pub score: f64,
}

impl Keyword {
    pub fn text(&self) -> String {
        self.words.join(" ")
    }

    /// Head word of the phrase (its final member).
    pub fn head(&self) -> &str {
        self.words.last().expect("phrases are non-empty")
    }
}

/// RAKE keyword extraction. Returns unique phrases ordered by first
/// occurrence; empty when every token is a stop word.
pub fn extract_keywords(sample: &TextSample, stopwords: &WordList) -> Vec<Keyword> {
    let mut phrases: Vec<Vec<String>> = Vec::new();
    for utt in &sample.utterances {
        let mut cur: Vec<String> = Vec::new();
        for tok in utt {
            if tok.is_punct || stopwords.contains(&tok.lower) {
                if !cur.is_empty() {
                    phrases.push(std::mem::take(&mut cur));
                }
            } else {
                cur.push(tok.lower.clone());
            }
        }
        if !cur.is_empty() {
            phrases.push(cur);
        }
    }
    if phrases.is_empty() {
        return Vec::new();
    }

    // word scores: degree / frequency over the phrase co-occurrence graph,
    // degree counting the full phrase length per occurrence
    let mut freq: HashMap<String, f64> = HashMap::new();
    let mut degree: HashMap<String, f64> = HashMap::new();
    for phrase in &phrases {
        let len = phrase.len() as f64;
        for w in phrase {
            *freq.entry(w.clone()).or_insert(0.0) += 1.0;
            *degree.entry(w.clone()).or_insert(0.0) += len;
        }
    }

    let mut seen: HashSet<String> = HashSet::new();
    let mut out = Vec::new();
    for phrase in phrases {
        let text = phrase.join(" ");
        if !seen.insert(text) {
            continue;
        }
        let score = phrase
            .iter()
            .map(|w| degree[w.as_str()] / freq[w.as_str()])
            .sum();
        out.push(Keyword {
            words: phrase,
            score,
        });
    }
    out
}

/// Mean pairwise sense similarity between consecutive keywords.
///
/// Multiword keywords are looked up by their head word; a keyword resolves
/// when its head has at least one sense. Pair similarity is the maximum of
/// the metric over all sense pairs.
pub fn focus_wordnet(
    keywords: &[Keyword],
    inventory: &SenseInventory,
    metric: SenseMetric,
) -> FeatureResult {
    let resolved: Vec<&Keyword> = keywords
        .iter()
        .filter(|k| !inventory.senses(k.head()).is_empty())
        .collect();
    if resolved.len() < 2 {
        return Err(MissingReason::NoSenses);
    }
    let mut sims = Vec::new();
    for pair in resolved.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let mut best: Option<f64> = None;
        for sa in inventory.senses(a.head()) {
            for sb in inventory.senses(b.head()) {
                if let Some(s) = inventory.similarity(&sa.synset, &sb.synset, metric) {
                    best = Some(best.map_or(s, |b: f64| b.max(s)));
                }
            }
        }
        if let Some(s) = best {
            sims.push(s);
        }
    }
    if sims.is_empty() {
        return Err(MissingReason::NoSenses);
    }
    Ok(sims.iter().sum::<f64>() / sims.len() as f64)
}

fn cosine(a: &[f64], b: &[f64]) -> Option<f64> {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        None
    } else {
        Some(dot / (na * nb))
    }
}

/// Mean of member-word vectors; words outside the store are skipped.
fn keyword_vector(keyword: &Keyword, store: &EmbeddingStore) -> Option<Vec<f64>> {
    let mut acc = vec![0.0f64; store.dimension];
    let mut found = 0usize;
    for w in &keyword.words {
        if let Some(v) = store.vector(w) {
            for (a, &x) in acc.iter_mut().zip(v) {
                *a += x as f64;
            }
            found += 1;
        }
    }
    if found == 0 {
        return None;
    }
    for a in &mut acc {
        *a /= found as f64;
    }
    Some(acc)
}

/// Mean cosine between consecutive keyword vectors.
pub fn focus_embedding(keywords: &[Keyword], store: &EmbeddingStore) -> FeatureResult {
    let vectors: Vec<Vec<f64>> = keywords
        .iter()
        .filter_map(|k| keyword_vector(k, store))
        .collect();
    if vectors.len() < 2 {
        return Err(MissingReason::NoPairs);
    }
    let sims: Vec<f64> = vectors
        .windows(2)
        .filter_map(|p| cosine(&p[0], &p[1]))
        .collect();
    if sims.is_empty() {
        return Err(MissingReason::NoPairs);
    }
    Ok(sims.iter().sum::<f64>() / sims.len() as f64)
}

/// Content-word occurrence statistics shared by the PMI measures.
struct ContentStats {
    /// Content tokens in order (lowercased).
    tokens: Vec<String>,
    /// Occurrence count per type.
    counts: HashMap<String, usize>,
}

fn content_stats(sample: &TextSample, stopwords: &WordList) -> ContentStats {
    let tokens: Vec<String> = sample
        .tokens()
        .filter(|t| !stopwords.contains(&t.lower))
        .map(|t| t.lower.clone())
        .collect();
    let mut counts = HashMap::new();
    for t in &tokens {
        *counts.entry(t.clone()).or_insert(0) += 1;
    }
    ContentStats { tokens, counts }
}

const PMI_WINDOW: usize = 5;

/// Count, for every unordered type pair, the number of sliding windows
/// containing both types. Texts shorter than one window form one window.
/// Ordered map so downstream float accumulation is run-deterministic.
fn cooccurrence_windows(tokens: &[String]) -> (usize, BTreeMap<(String, String), usize>) {
    let n = tokens.len();
    let window = PMI_WINDOW.min(n);
    let n_windows = n - window + 1;
    let mut cooc: BTreeMap<(String, String), usize> = BTreeMap::new();
    for start in 0..n_windows {
        let mut present: Vec<&str> = tokens[start..start + window]
            .iter()
            .map(|s| s.as_str())
            .collect();
        present.sort_unstable();
        present.dedup();
        for i in 0..present.len() {
            for j in i + 1..present.len() {
                *cooc
                    .entry((present[i].to_string(), present[j].to_string()))
                    .or_insert(0) += 1;
            }
        }
    }
    (n_windows, cooc)
}

/// Mean PMI over distinct co-occurring content-word pairs. Probabilities
/// are token frequencies; joint probability is the share of 5-token
/// sliding windows containing both words.
pub fn pmi_words(sample: &TextSample, stopwords: &WordList) -> FeatureResult {
    let stats = content_stats(sample, stopwords);
    if stats.counts.len() < 2 {
        return Err(MissingReason::NoPairs);
    }
    let n = stats.tokens.len() as f64;
    let (n_windows, cooc) = cooccurrence_windows(&stats.tokens);
    if cooc.is_empty() {
        return Err(MissingReason::NoPairs);
    }
    let mut sum = 0.0f64;
    for ((x, y), &w) in &cooc {
        let p_xy = w as f64 / n_windows as f64;
        let p_x = stats.counts[x] as f64 / n;
        let p_y = stats.counts[y] as f64 / n;
        sum += (p_xy / (p_x * p_y)).log2();
    }
    Ok(sum / cooc.len() as f64)
}

/// Vector extension of PMI: the joint probability is replaced by the
/// cosine of the two word vectors; non-positive cosines are skipped
/// because their logarithm is undefined.
pub fn pmi_embedding(
    sample: &TextSample,
    stopwords: &WordList,
    store: &EmbeddingStore,
) -> FeatureResult {
    let stats = content_stats(sample, stopwords);
    if stats.counts.len() < 2 {
        return Err(MissingReason::NoPairs);
    }
    let n = stats.tokens.len() as f64;
    let mut types: Vec<&String> = stats.counts.keys().collect();
    types.sort_unstable();
    let mut sum = 0.0f64;
    let mut pairs = 0usize;
    for i in 0..types.len() {
        let Some(vx) = store.vector(types[i]) else {
            continue;
        };
        let vx: Vec<f64> = vx.iter().map(|&v| v as f64).collect();
        for ty in types.iter().skip(i + 1) {
            let Some(vy) = store.vector(ty) else { continue };
            let vy: Vec<f64> = vy.iter().map(|&v| v as f64).collect();
            let Some(cos) = cosine(&vx, &vy) else { continue };
            if cos <= 0.0 {
                continue;
            }
            let p_x = stats.counts[types[i]] as f64 / n;
            let p_y = stats.counts[*ty] as f64 / n;
            sum += (cos / (p_x * p_y)).log2();
            pairs += 1;
        }
    }
    if pairs == 0 {
        Err(MissingReason::NoPairs)
    } else {
        Ok(sum / pairs as f64)
    }
}

/// The focus and PMI feature family of one sample.
pub fn focus_pmi_features(
    sample: &TextSample,
    bundle: &ResourceBundle,
) -> Vec<(&'static str, FeatureResult)> {
    let absent = Err(MissingReason::ResourceAbsent);
    let Some(stopwords) = bundle.stopwords.as_ref() else {
        return vec![
            ("dist_path", absent),
            ("dist_wup", absent),
            ("dist_lch", absent),
            ("avg_glv50", absent),
            ("avg_glv100", absent),
            ("avg_glv200", absent),
            ("avg_glv300", absent),
            ("avg_w2v300", absent),
            ("pmi", absent),
            ("pmi_glv50", absent),
            ("pmi_glv100", absent),
            ("pmi_glv300", absent),
            ("pmi_w2v300", absent),
        ];
    };
    let keywords = extract_keywords(sample, stopwords);
    let wordnet = |metric| match bundle.senses.as_ref() {
        None => absent,
        Some(inv) => focus_wordnet(&keywords, inv, metric),
    };
    let avg = |store: &str| match bundle.embedding(store) {
        None => absent,
        Some(s) => focus_embedding(&keywords, s),
    };
    let pmi_emb = |store: &str| match bundle.embedding(store) {
        None => absent,
        Some(s) => pmi_embedding(sample, stopwords, s),
    };
    vec![
        ("dist_path", wordnet(SenseMetric::Path)),
        ("dist_wup", wordnet(SenseMetric::Wup)),
        ("dist_lch", wordnet(SenseMetric::Lch)),
        ("avg_glv50", avg("glove50")),
        ("avg_glv100", avg("glove100")),
        ("avg_glv200", avg("glove200")),
        ("avg_glv300", avg("glove300")),
        ("avg_w2v300", avg("w2v300")),
        ("pmi", pmi_words(sample, stopwords)),
        ("pmi_glv50", pmi_emb("glove50")),
        ("pmi_glv100", pmi_emb("glove100")),
        ("pmi_glv300", pmi_emb("glove300")),
        ("pmi_w2v300", pmi_emb("w2v300")),
    ]
}

/// The specificity feature family of one sample.
pub fn specificity_features(
    sample: &TextSample,
    bundle: &ResourceBundle,
) -> Vec<(&'static str, FeatureResult)> {
    let absent = Err(MissingReason::ResourceAbsent);
    let n = sample.n_tokens() as f64;

    let depth_know = match bundle.uwl.as_ref() {
        None => absent,
        Some(uwl) => Ok(sample.tokens().filter(|t| uwl.contains(&t.lower)).count() as f64 / n),
    };
    let rt_abbrev = match bundle.abbreviations.as_ref() {
        None => absent,
        Some(list) => Ok(sample.tokens().filter(|t| list.contains(&t.lower)).count() as f64 / n),
    };

    let polysemy = match (bundle.stopwords.as_ref(), bundle.senses.as_ref()) {
        (Some(stopwords), Some(inv)) => {
            let content: Vec<&str> = sample
                .tokens()
                .filter(|t| !stopwords.contains(&t.lower))
                .map(|t| t.lower.as_str())
                .collect();
            if content.is_empty() {
                let missing = Err(MissingReason::NoContent);
                [missing, missing, missing]
            } else {
                let nc = content.len() as f64;
                let mono = content
                    .iter()
                    .filter(|w| inv.senses(w).len() == 1)
                    .count() as f64;
                let meanings: f64 = content.iter().map(|w| inv.senses(w).len() as f64).sum();
                let hyponyms: f64 = content
                    .iter()
                    .filter_map(|w| inv.senses(w).first())
                    .map(|s| s.hyponyms as f64)
                    .sum();
                [Ok(mono / nc), Ok(meanings / nc), Ok(hyponyms / nc)]
            }
        }
        _ => [absent, absent, absent],
    };
    let [rt_one_meaning, rt_meaning_words, rt_hypo] = polysemy;

    vec![
        ("depth_know", depth_know),
        ("rt_one_meaning", rt_one_meaning),
        ("rt_meaning_words", rt_meaning_words),
        ("rt_abbrev", rt_abbrev),
        ("rt_hypo", rt_hypo),
    ]
}
