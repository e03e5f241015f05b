//! Transcript ingestion: normalization, tokenization, tagging, and
//! utterance segmentation of raw documents into [`TextSample`]s.

pub mod tagger;

use crate::stem::stem;
use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use tagger::{PosTagger, TAGSET};

/// Class label of a language sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// Impaired group (the positive class of the classifier).
    Positive,
    Control,
    Unlabeled,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Positive => "positive",
            Label::Control => "control",
            Label::Unlabeled => "unlabeled",
        }
    }

    pub fn parse(s: &str) -> Option<Label> {
        match s {
            "positive" => Some(Label::Positive),
            "control" => Some(Label::Control),
            "unlabeled" => Some(Label::Unlabeled),
            _ => None,
        }
    }
}

/// Source layout of a raw document body.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceFormat {
    /// Free text; utterances split on `.?!` and newlines.
    Plain,
    /// Minimal CHAT transcript support: only `*PAR:` tiers are kept.
    ChatMinimal,
}

/// An unprocessed document as read from disk.
#[derive(Debug, Clone)]
pub struct RawDocument {
    pub id: String,
    pub body: String,
    pub label: Label,
    pub source_format: SourceFormat,
}

/// One token of a sample. Punctuation tokens are kept in the utterance
/// sequence but excluded from every feature count.
#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub surface: String,
    pub lower: String,
    pub stem: String,
    pub pos: String,
    pub syllables: u32,
    pub is_punct: bool,
}

/// A tokenized, tagged, utterance-segmented language sample.
#[derive(Debug, Clone, PartialEq)]
pub struct TextSample {
    pub id: String,
    pub label: Label,
    /// Utterances in source order; each holds its word and punctuation tokens.
    pub utterances: Vec<Vec<Token>>,
}

impl TextSample {
    /// Flattened non-punctuation tokens, utterance order preserved.
    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.utterances.iter().flatten().filter(|t| !t.is_punct)
    }

    /// N: the number of word (non-punctuation) tokens.
    pub fn n_tokens(&self) -> usize {
        self.tokens().count()
    }

    /// S: the number of utterances.
    pub fn n_utterances(&self) -> usize {
        self.utterances.len()
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum IngestError {
    #[error("no usable text after stripping")]
    EmptyAfterStripping,
    #[error("tagger returned {got} tags for {expected} tokens")]
    TaggerFailure { expected: usize, got: usize },
    #[error("tag `{tag}` is not in the declared tagset")]
    UnknownTag { tag: String },
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Ingest {
        path: String,
        source: IngestError,
    },
    #[error("{path}:{line}: malformed CoNLL line")]
    MalformedConll { path: String, line: usize },
    #[error("{path}:{line}: unknown label `{label}`")]
    BadLabel {
        path: String,
        line: usize,
        label: String,
    },
    #[error("{path}: no tagger configured and no .conll sidecar present")]
    MissingTagger { path: String },
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '\'' || c == '-'
}

/// Split raw utterance text into (surface, is_punct) pieces. Words are
/// maximal runs of alphanumeric characters with internal apostrophes and
/// hyphens; every other non-space character becomes its own punctuation
/// token.
fn tokenize(text: &str) -> Vec<(String, bool)> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_alphanumeric() {
            let mut j = i + 1;
            while j < chars.len() && is_word_char(chars[j]) {
                j += 1;
            }
            // trim trailing apostrophes/hyphens back into punctuation
            let mut end = j;
            while end > i + 1 && !chars[end - 1].is_alphanumeric() {
                end -= 1;
            }
            out.push((chars[i..end].iter().collect(), false));
            for &c in &chars[end..j] {
                out.push((c.to_string(), true));
            }
            i = j;
        } else {
            out.push((c.to_string(), true));
            i += 1;
        }
    }
    out
}

fn punct_tag(surface: &str) -> &'static str {
    match surface {
        "." | "!" | "?" => ".",
        "," => ",",
        ";" | ":" | "-" => ":",
        "(" | "[" | "{" => "(",
        ")" | "]" | "}" => ")",
        "`" => "``",
        "'" | "\"" | "\u{2019}" | "\u{201c}" | "\u{201d}" => "''",
        "#" => "#",
        "$" => "$",
        _ => "SYM",
    }
}

/// Heuristic syllable count: vowel groups (a, e, i, o, u, y) minus a silent
/// trailing `e`, except in `-Cle` endings where the final `e` is voiced.
/// Floors at 1; input without alphabetic characters counts as 1.
pub fn count_syllables(word: &str) -> u32 {
    let letters: Vec<char> = word
        .chars()
        .flat_map(|c| c.to_lowercase())
        .filter(|c| c.is_alphabetic())
        .collect();
    if letters.is_empty() {
        return 1;
    }
    let is_vowel = |c: char| matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y');
    let mut groups = 0u32;
    let mut prev_vowel = false;
    for &c in &letters {
        let v = is_vowel(c);
        if v && !prev_vowel {
            groups += 1;
        }
        prev_vowel = v;
    }
    let n = letters.len();
    if n >= 2 && letters[n - 1] == 'e' && !is_vowel(letters[n - 2]) {
        let voiced_cle = letters[n - 2] == 'l' && n >= 3 && !is_vowel(letters[n - 3]);
        if !voiced_cle && groups > 1 {
            groups -= 1;
        }
    }
    groups.max(1)
}

/// Strip `[...]` annotation groups from a CHAT line (non-nested).
fn strip_brackets(line: &str) -> String {
    let mut out = String::with_capacity(line.len());
    let mut depth = 0usize;
    for c in line.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            _ if depth == 0 => out.push(c),
            _ => {}
        }
    }
    out
}

/// Extract raw utterance strings according to the source format.
fn split_utterances(body: &str, format: SourceFormat) -> Vec<String> {
    match format {
        SourceFormat::Plain => {
            let mut utts = Vec::new();
            let mut cur = String::new();
            for c in body.chars() {
                match c {
                    '.' | '?' | '!' => {
                        cur.push(c);
                        utts.push(std::mem::take(&mut cur));
                    }
                    '\n' => utts.push(std::mem::take(&mut cur)),
                    _ => cur.push(c),
                }
            }
            if !cur.trim().is_empty() {
                utts.push(cur);
            }
            utts
        }
        SourceFormat::ChatMinimal => body
            .lines()
            .filter_map(|line| {
                let line = line.trim_start();
                let rest = line.strip_prefix("*PAR:")?;
                let rest = strip_brackets(rest);
                let kept: Vec<&str> = rest
                    .split_whitespace()
                    .filter(|w| !w.starts_with('&') && !w.starts_with('+'))
                    .collect();
                Some(kept.join(" "))
            })
            .collect(),
    }
}

/// Ingest a raw document into a [`TextSample`].
///
/// Empty utterances and utterances without any word token are dropped;
/// every surviving token is lowercased, stemmed, syllable-counted, and
/// tagged by `tagger` one utterance at a time.
pub fn ingest(document: &RawDocument, tagger: &dyn PosTagger) -> Result<TextSample, IngestError> {
    if document.body.trim().is_empty() {
        return Err(IngestError::EmptyAfterStripping);
    }
    let raw_utts = split_utterances(&document.body, document.source_format);
    let mut utterances: Vec<Vec<(String, bool)>> = raw_utts
        .iter()
        .map(|u| tokenize(u))
        .filter(|toks| toks.iter().any(|(_, p)| !p))
        .collect();
    if utterances.is_empty() {
        return Err(IngestError::EmptyAfterStripping);
    }

    let mut out = Vec::with_capacity(utterances.len());
    for utt in utterances.drain(..) {
        let surfaces: Vec<&str> = utt.iter().map(|(s, _)| s.as_str()).collect();
        let word_surfaces: Vec<&str> = utt
            .iter()
            .filter(|(_, p)| !p)
            .map(|(s, _)| s.as_str())
            .collect();
        let tags = tagger.tag(&word_surfaces);
        if tags.len() != word_surfaces.len() {
            return Err(IngestError::TaggerFailure {
                expected: word_surfaces.len(),
                got: tags.len(),
            });
        }
        let mut tag_iter = tags.into_iter();
        let mut tokens = Vec::with_capacity(surfaces.len());
        for (surface, is_punct) in utt {
            let token = if is_punct {
                make_token(surface, punct_tag_owned, true)?
            } else {
                let tag = tag_iter.next().expect("length checked above");
                if !TAGSET.contains(&tag.as_str()) {
                    return Err(IngestError::UnknownTag { tag });
                }
                make_token(surface, move |_| tag.clone(), false)?
            };
            tokens.push(token);
        }
        out.push(tokens);
    }

    Ok(TextSample {
        id: document.id.clone(),
        label: document.label,
        utterances: out,
    })
}

fn punct_tag_owned(surface: &str) -> String {
    punct_tag(surface).to_string()
}

fn make_token<F: FnOnce(&str) -> String>(
    surface: String,
    tag_of: F,
    is_punct: bool,
) -> Result<Token, IngestError> {
    let lower = surface.to_lowercase();
    let pos = tag_of(&surface);
    let stem = if is_punct { lower.clone() } else { stem(&lower) };
    let syllables = if is_punct { 1 } else { count_syllables(&lower) };
    Ok(Token {
        surface,
        lower,
        stem,
        pos,
        syllables,
        is_punct,
    })
}

/// Keep the first `max_tokens` word tokens of a sample, re-deriving
/// utterance boundaries. Samples with fewer than `max_tokens` word tokens
/// are returned unchanged.
pub fn truncate(sample: &TextSample, max_tokens: usize) -> TextSample {
    assert!(max_tokens >= 1, "max_tokens must be positive");
    if sample.n_tokens() < max_tokens {
        return sample.clone();
    }
    let mut kept = 0usize;
    let mut utterances = Vec::new();
    for utt in &sample.utterances {
        let words_here = utt.iter().filter(|t| !t.is_punct).count();
        if kept + words_here <= max_tokens {
            utterances.push(utt.clone());
            kept += words_here;
        } else {
            // the limit falls inside this utterance: stop at the last needed word
            let need = max_tokens - kept;
            let mut cur = Vec::new();
            let mut taken = 0usize;
            for tok in utt {
                cur.push(tok.clone());
                if !tok.is_punct {
                    taken += 1;
                    if taken == need {
                        break;
                    }
                }
            }
            utterances.push(cur);
            kept = max_tokens;
        }
        if kept == max_tokens {
            break;
        }
    }
    TextSample {
        id: sample.id.clone(),
        label: sample.label,
        utterances,
    }
}

/// Parse a CoNLL-style sidecar (`token<TAB>tag` per line, blank line
/// between utterances) into a sample, bypassing the tagger.
pub fn sample_from_conll(id: &str, label: Label, text: &str) -> Result<TextSample, CorpusError> {
    let mut utterances: Vec<Vec<Token>> = Vec::new();
    let mut cur: Vec<Token> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            if cur.iter().any(|t| !t.is_punct) {
                utterances.push(std::mem::take(&mut cur));
            } else {
                cur.clear();
            }
            continue;
        }
        let mut parts = line.splitn(2, '\t');
        let (surface, tag) = match (parts.next(), parts.next()) {
            (Some(s), Some(t)) if !s.is_empty() && !t.is_empty() => (s, t.trim()),
            _ => {
                return Err(CorpusError::MalformedConll {
                    path: id.to_string(),
                    line: lineno + 1,
                })
            }
        };
        let is_punct = !surface.chars().any(|c| c.is_alphanumeric());
        if !is_punct && !TAGSET.contains(&tag) {
            return Err(CorpusError::Ingest {
                path: id.to_string(),
                source: IngestError::UnknownTag {
                    tag: tag.to_string(),
                },
            });
        }
        let tag = tag.to_string();
        let token = make_token(surface.to_string(), |_| tag, is_punct)
            .expect("token construction is infallible");
        cur.push(token);
    }
    if cur.iter().any(|t| !t.is_punct) {
        utterances.push(cur);
    }
    if utterances.is_empty() {
        return Err(CorpusError::Ingest {
            path: id.to_string(),
            source: IngestError::EmptyAfterStripping,
        });
    }
    Ok(TextSample {
        id: id.to_string(),
        label,
        utterances,
    })
}

/// Read every document in a corpus directory, sorted by id.
///
/// `.txt` files are plain text, `.cha` files are minimal CHAT; a sidecar
/// `<id>.conll` bypasses the tagger. Labels come from an optional
/// `labels.tsv` (`id<TAB>label` per line); absent entries are unlabeled.
pub fn read_corpus_dir(
    dir: &Path,
    tagger: Option<&dyn PosTagger>,
) -> Result<Vec<TextSample>, CorpusError> {
    let io_err = |path: &Path, e: std::io::Error| CorpusError::Io {
        path: path.display().to_string(),
        source: e,
    };

    let labels = read_labels(dir)?;
    let mut docs: BTreeMap<String, (Option<SourceFormat>, bool)> = BTreeMap::new();
    for entry in fs::read_dir(dir).map_err(|e| io_err(dir, e))? {
        let entry = entry.map_err(|e| io_err(dir, e))?;
        let path = entry.path();
        let (Some(id), Some(ext)) = (
            path.file_stem().and_then(|s| s.to_str()),
            path.extension().and_then(|s| s.to_str()),
        ) else {
            continue;
        };
        let slot = docs.entry(id.to_string()).or_insert((None, false));
        match ext {
            "txt" => slot.0 = Some(SourceFormat::Plain),
            "cha" => slot.0 = Some(SourceFormat::ChatMinimal),
            "conll" => slot.1 = true,
            _ => {}
        }
    }

    let mut samples = Vec::new();
    for (id, (format, has_conll)) in docs {
        let label = labels.get(&id).copied().unwrap_or(Label::Unlabeled);
        if has_conll {
            let path = dir.join(format!("{id}.conll"));
            let text = fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
            samples.push(sample_from_conll(&id, label, &text)?);
            continue;
        }
        let Some(format) = format else { continue };
        let ext = match format {
            SourceFormat::Plain => "txt",
            SourceFormat::ChatMinimal => "cha",
        };
        let path = dir.join(format!("{id}.{ext}"));
        let body = fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
        let Some(tagger) = tagger else {
            return Err(CorpusError::MissingTagger {
                path: path.display().to_string(),
            });
        };
        let doc = RawDocument {
            id: id.clone(),
            body,
            label,
            source_format: format,
        };
        samples.push(ingest(&doc, tagger).map_err(|e| CorpusError::Ingest {
            path: path.display().to_string(),
            source: e,
        })?);
    }
    Ok(samples)
}

fn read_labels(dir: &Path) -> Result<BTreeMap<String, Label>, CorpusError> {
    let path = dir.join("labels.tsv");
    let mut out = BTreeMap::new();
    if !path.exists() {
        return Ok(out);
    }
    let text = fs::read_to_string(&path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.splitn(2, '\t');
        let (id, label) = (parts.next().unwrap_or(""), parts.next().unwrap_or(""));
        let Some(label) = Label::parse(label.trim()) else {
            return Err(CorpusError::BadLabel {
                path: path.display().to_string(),
                line: lineno + 1,
                label: label.to_string(),
            });
        };
        out.insert(id.to_string(), label);
    }
    Ok(out)
}

/// Lightweight tag-class predicates shared by the feature modules.
pub mod tags {
    pub fn is_noun(tag: &str) -> bool {
        matches!(tag, "NN" | "NNS" | "NNP" | "NNPS")
    }
    pub fn is_verb(tag: &str) -> bool {
        matches!(tag, "VB" | "VBD" | "VBG" | "VBN" | "VBP" | "VBZ")
    }
    pub fn is_adjective(tag: &str) -> bool {
        matches!(tag, "JJ" | "JJR" | "JJS")
    }
    pub fn is_adverb(tag: &str) -> bool {
        matches!(tag, "RB" | "RBR" | "RBS")
    }
    pub fn is_preposition(tag: &str) -> bool {
        tag == "IN"
    }
}

pub use tagger::{PerceptronTagger, PosTagger as PosTaggerContract};

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
