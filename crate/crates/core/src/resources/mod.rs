//! Loading and serving lexical resources as immutable lookup stores.
//!
//! All resources are plain text so that fixture-scale files can live in the
//! repository; full-scale resources use the same formats. A manifest file
//! (`key = path` lines, paths relative to the resource directory) names
//! every store by role. A required key may be given the literal value
//! `none` to declare the store intentionally absent, which disables only
//! the features depending on it.

pub mod senses;

use crate::corpus::tagger::{PerceptronTagger, TaggerModelError};
use crate::misc::NgramProfileStore;
use crate::stem::stem;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

pub use senses::{PairMetrics, Sense, SenseInventory, SenseMetric};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("missing resource `{0}`")]
    MissingResource(String),
    #[error("{file}:{line}: {msg}")]
    MalformedLine {
        file: String,
        line: usize,
        msg: String,
    },
    #[error("{file}:{line}: expected {expected} vector components, got {got}")]
    DimensionMismatch {
        file: String,
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Tagger(#[from] TaggerModelError),
}

/// Word ranks and corpus frequencies, keyed by stem.
///
/// Unlisted words fall back to rank `size + 1` and half the minimum listed
/// frequency, so every lookup is total.
#[derive(Debug, Clone)]
pub struct FrequencyList {
    map: HashMap<String, (u32, f64)>,
    size: usize,
    min_freq: f64,
}

impl FrequencyList {
    /// Rank of `word` after stemming; `size + 1` when unlisted.
    pub fn rank(&self, word: &str) -> u32 {
        match self.map.get(&stem(word)) {
            Some(&(rank, _)) => rank,
            None => self.size as u32 + 1,
        }
    }

    /// Corpus frequency of `word` after stemming; half the minimum listed
    /// frequency when unlisted.
    pub fn frequency(&self, word: &str) -> f64 {
        match self.map.get(&stem(word)) {
            Some(&(_, f)) => f,
            None => self.min_freq * 0.5,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

/// How a word list matches tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchMode {
    /// Exact match on the lowercased form.
    Exact,
    /// Match on stems (used by the specialized-word lexicon).
    Stem,
}

#[derive(Debug, Clone)]
pub struct WordList {
    pub name: String,
    mode: MatchMode,
    members: HashSet<String>,
}

impl WordList {
    pub fn from_members<I: IntoIterator<Item = String>>(
        name: &str,
        mode: MatchMode,
        members: I,
    ) -> WordList {
        let members = members
            .into_iter()
            .map(|w| match mode {
                MatchMode::Exact => w.to_lowercase(),
                MatchMode::Stem => stem(&w),
            })
            .collect();
        WordList {
            name: name.to_string(),
            mode,
            members,
        }
    }

    /// Membership test for a lowercased token.
    pub fn contains(&self, lower: &str) -> bool {
        match self.mode {
            MatchMode::Exact => self.members.contains(lower),
            MatchMode::Stem => self.members.contains(&stem(lower)),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The eleven psycholinguistic attributes, in CSV column order.
pub const PSYCH_ATTRS: [&str; 11] = [
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
];

/// Per-word record of psycholinguistic norms; absent attributes are
/// distinguishable from zero (zero in the source data means absent and is
/// converted on load).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PsychRecord {
    pub values: [Option<f64>; 11],
}

#[derive(Debug, Clone, Default)]
pub struct PsycholinguisticDB {
    map: HashMap<String, PsychRecord>,
}

impl PsycholinguisticDB {
    pub fn get(&self, lower: &str) -> Option<&PsychRecord> {
        self.map.get(lower)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// (min, max) of one attribute over the whole database.
    pub fn attr_range(&self, attr: usize) -> Option<(f64, f64)> {
        let mut range: Option<(f64, f64)> = None;
        for rec in self.map.values() {
            if let Some(v) = rec.values[attr] {
                range = Some(match range {
                    None => (v, v),
                    Some((lo, hi)) => (lo.min(v), hi.max(v)),
                });
            }
        }
        range
    }
}

/// Fixed-dimension word vectors.
#[derive(Debug, Clone)]
pub struct EmbeddingStore {
    pub name: String,
    pub dimension: usize,
    map: HashMap<String, Vec<f32>>,
}

impl EmbeddingStore {
    pub fn vector(&self, lower: &str) -> Option<&[f32]> {
        self.map.get(lower).map(|v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(|s| s.as_str())
    }
}

/// The three lexicon-based sentiment flavors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SentimentKind {
    PatternPolarity,
    ValenceRules,
    SynsetPolarity,
}

#[derive(Debug, Clone)]
pub struct SentimentLexicon {
    pub kind: SentimentKind,
    map: HashMap<String, f64>,
}

impl SentimentLexicon {
    /// Polarity in [-1, 1]; 0 for words outside the lexicon.
    pub fn polarity(&self, lower: &str) -> f64 {
        self.map.get(lower).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Names of the required embedding stores with their dimensions.
pub const EMBEDDING_STORES: [(&str, usize); 5] = [
    ("glove50", 50),
    ("glove100", 100),
    ("glove200", 200),
    ("glove300", 300),
    ("w2v300", 300),
];

/// Immutable post-load collection of every lexical resource.
///
/// Every member is optional: a manifest entry of `none` leaves the store
/// absent and the catalog emits the dependent features as missing.
#[derive(Debug, Clone, Default)]
pub struct ResourceBundle {
    pub frequency: Option<FrequencyList>,
    pub stopwords: Option<WordList>,
    pub uwl: Option<WordList>,
    pub dale_chall: Option<WordList>,
    pub frequent_verbs: Option<WordList>,
    pub gap_verbs: Option<WordList>,
    pub irregular_verbs: Option<WordList>,
    pub connectors: Option<WordList>,
    pub arg_connectors: Option<WordList>,
    pub abbreviations: Option<WordList>,
    pub adverb_exceptions: Option<WordList>,
    pub psycholing: Option<PsycholinguisticDB>,
    pub senses: Option<SenseInventory>,
    pub embeddings: BTreeMap<String, EmbeddingStore>,
    pub sentiment_pattern: Option<SentimentLexicon>,
    pub sentiment_valence: Option<SentimentLexicon>,
    pub sentiment_synset: Option<SentimentLexicon>,
    pub profiles: Option<NgramProfileStore>,
}

impl ResourceBundle {
    pub fn embedding(&self, name: &str) -> Option<&EmbeddingStore> {
        self.embeddings.get(name)
    }

    /// True when the named resource is present in the bundle.
    pub fn has(&self, resource: &str) -> bool {
        match resource {
            "frequency" => self.frequency.is_some(),
            "stopwords" => self.stopwords.is_some(),
            "uwl" => self.uwl.is_some(),
            "dale_chall" => self.dale_chall.is_some(),
            "frequent_verbs" => self.frequent_verbs.is_some(),
            "gap_verbs" => self.gap_verbs.is_some(),
            "irregular_verbs" => self.irregular_verbs.is_some(),
            "connectors" => self.connectors.is_some(),
            "arg_connectors" => self.arg_connectors.is_some(),
            "abbreviations" => self.abbreviations.is_some(),
            "adverb_exceptions" => self.adverb_exceptions.is_some(),
            "psycholing" => self.psycholing.is_some(),
            "senses" => self.senses.is_some(),
            "sentiment.pattern" => self.sentiment_pattern.is_some(),
            "sentiment.valence" => self.sentiment_valence.is_some(),
            "sentiment.synset" => self.sentiment_synset.is_some(),
            "profiles" => self.profiles.is_some(),
            name => match name.strip_prefix("embeddings.") {
                Some(store) => self.embeddings.contains_key(store),
                None => false,
            },
        }
    }
}

/// Per-resource entry counts produced while loading.
#[derive(Debug, Clone, Default)]
pub struct LoadReport {
    pub entries: Vec<(String, usize)>,
}

/// A loaded bundle together with the optional tagger model and report.
#[derive(Debug)]
pub struct LoadedResources {
    pub bundle: ResourceBundle,
    pub tagger: Option<PerceptronTagger>,
    pub report: LoadReport,
}

const REQUIRED_KEYS: [&str; 23] = [
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
    "sense_pairs",
    "embeddings.glove50",
    "embeddings.glove100",
    "embeddings.glove200",
    "embeddings.glove300",
    "embeddings.w2v300",
    "sentiment.pattern",
    "sentiment.valence",
    "sentiment.synset",
    "tagger",
];

/// Parse a `key = value` manifest file. `#` starts a comment.
pub fn parse_manifest(path: &Path) -> Result<BTreeMap<String, String>, LoadError> {
    let text = fs::read_to_string(path).map_err(|e| LoadError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(LoadError::MalformedLine {
                file: path.display().to_string(),
                line: lineno + 1,
                msg: "expected `key = value`".to_string(),
            });
        };
        out.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

/// Load every store named by the manifest into an immutable bundle.
///
/// The manifest must name each required resource; the literal value `none`
/// declares a store intentionally absent. Paths are relative to `dir`.
pub fn load_bundle(dir: &Path, manifest_path: &Path) -> Result<LoadedResources, LoadError> {
    let manifest = parse_manifest(manifest_path)?;
    let resolve = |key: &str| -> Result<Option<PathBuf>, LoadError> {
        match manifest.get(key) {
            None => {
                if REQUIRED_KEYS.contains(&key) {
                    Err(LoadError::MissingResource(key.to_string()))
                } else {
                    Ok(None)
                }
            }
            Some(v) if v == "none" => Ok(None),
            Some(v) => {
                let path = dir.join(v);
                if !path.exists() {
                    return Err(LoadError::MissingResource(format!(
                        "{key} ({})",
                        path.display()
                    )));
                }
                Ok(Some(path))
            }
        }
    };

    let mut report = LoadReport::default();
    let mut note = |name: &str, n: usize| report.entries.push((name.to_string(), n));

    let mut bundle = ResourceBundle::default();

    if let Some(p) = resolve("frequency")? {
        let f = load_frequency(&p)?;
        note("frequency", f.size());
        bundle.frequency = Some(f);
    }
    let word_list = |key: &str, mode: MatchMode| -> Result<Option<WordList>, LoadError> {
        match resolve(key)? {
            None => Ok(None),
            Some(p) => {
                let wl = load_word_list(&p, key, mode)?;
                Ok(Some(wl))
            }
        }
    };
    for (key, mode, slot) in [
        ("stopwords", MatchMode::Exact, 0usize),
        ("uwl", MatchMode::Stem, 1),
        ("dale_chall", MatchMode::Exact, 2),
        ("frequent_verbs", MatchMode::Exact, 3),
        ("gap_verbs", MatchMode::Exact, 4),
        ("irregular_verbs", MatchMode::Exact, 5),
        ("connectors", MatchMode::Exact, 6),
        ("arg_connectors", MatchMode::Exact, 7),
        ("abbreviations", MatchMode::Exact, 8),
        ("adverb_exceptions", MatchMode::Exact, 9),
    ] {
        if let Some(wl) = word_list(key, mode)? {
            note(key, wl.len());
            match slot {
                0 => bundle.stopwords = Some(wl),
                1 => bundle.uwl = Some(wl),
                2 => bundle.dale_chall = Some(wl),
                3 => bundle.frequent_verbs = Some(wl),
                4 => bundle.gap_verbs = Some(wl),
                5 => bundle.irregular_verbs = Some(wl),
                6 => bundle.connectors = Some(wl),
                7 => bundle.arg_connectors = Some(wl),
                8 => bundle.abbreviations = Some(wl),
                _ => bundle.adverb_exceptions = Some(wl),
            }
        }
    }

    if let Some(p) = resolve("psycholing")? {
        let db = load_psycholing(&p)?;
        note("psycholing", db.len());
        bundle.psycholing = Some(db);
    }

    if let Some(p) = resolve("senses")? {
        let senses = load_senses(&p)?;
        let pairs = match resolve("sense_pairs")? {
            Some(pp) => load_sense_pairs(&pp)?,
            None => HashMap::new(),
        };
        let hypernyms = match resolve("sense_hypernyms")? {
            Some(hp) => load_hypernyms(&hp)?,
            None => HashMap::new(),
        };
        let inv = SenseInventory::new(senses, pairs, hypernyms);
        note("senses", inv.n_words());
        bundle.senses = Some(inv);
    }

    for (name, dim) in EMBEDDING_STORES {
        let key = format!("embeddings.{name}");
        if let Some(p) = resolve(&key)? {
            let store = load_embeddings(&p, name, dim)?;
            note(&key, store.len());
            bundle.embeddings.insert(name.to_string(), store);
        }
    }

    for (key, kind) in [
        ("sentiment.pattern", SentimentKind::PatternPolarity),
        ("sentiment.valence", SentimentKind::ValenceRules),
        ("sentiment.synset", SentimentKind::SynsetPolarity),
    ] {
        if let Some(p) = resolve(key)? {
            let lex = load_sentiment(&p, kind)?;
            note(key, lex.len());
            match kind {
                SentimentKind::PatternPolarity => bundle.sentiment_pattern = Some(lex),
                SentimentKind::ValenceRules => bundle.sentiment_valence = Some(lex),
                SentimentKind::SynsetPolarity => bundle.sentiment_synset = Some(lex),
            }
        }
    }

    if let Some(p) = resolve("profiles")? {
        let store = NgramProfileStore::load_dir(&p).map_err(|e| LoadError::MalformedLine {
            file: p.display().to_string(),
            line: 0,
            msg: e.to_string(),
        })?;
        note("profiles", store.len());
        bundle.profiles = Some(store);
    }

    let tagger = match resolve("tagger")? {
        Some(p) => Some(PerceptronTagger::load(&p)?),
        None => None,
    };

    Ok(LoadedResources {
        bundle,
        tagger,
        report,
    })
}

fn read_lines(path: &Path) -> Result<Vec<String>, LoadError> {
    let text = fs::read_to_string(path).map_err(|e| LoadError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    Ok(text.lines().map(|l| l.to_string()).collect())
}

fn malformed(path: &Path, line: usize, msg: impl Into<String>) -> LoadError {
    LoadError::MalformedLine {
        file: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

/// `rank<TAB>word<TAB>frequency` per line. Entries are keyed by stem; when
/// two listed words share a stem the lower rank wins.
pub fn load_frequency(path: &Path) -> Result<FrequencyList, LoadError> {
    let mut map: HashMap<String, (u32, f64)> = HashMap::new();
    let mut seen_ranks = HashSet::new();
    let mut min_freq = f64::INFINITY;
    let mut size = 0usize;
    for (lineno, line) in read_lines(path)?.iter().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split('\t').collect();
        if parts.len() != 3 {
            return Err(malformed(path, lineno + 1, "expected rank\\tword\\tfrequency"));
        }
        let rank: u32 = parts[0]
            .parse()
            .map_err(|_| malformed(path, lineno + 1, "bad rank"))?;
        if rank == 0 || !seen_ranks.insert(rank) {
            return Err(malformed(path, lineno + 1, "ranks must be unique positive"));
        }
        let freq: f64 = parts[2]
            .parse()
            .map_err(|_| malformed(path, lineno + 1, "bad frequency"))?;
        size += 1;
        min_freq = min_freq.min(freq);
        let key = stem(parts[1]);
        match map.get(&key) {
            Some(&(r, _)) if r <= rank => {}
            _ => {
                map.insert(key, (rank, freq));
            }
        }
    }
    if size == 0 {
        return Err(malformed(path, 0, "empty frequency list"));
    }
    Ok(FrequencyList {
        map,
        size,
        min_freq,
    })
}

/// One word per line; `#` starts a comment.
pub fn load_word_list(path: &Path, name: &str, mode: MatchMode) -> Result<WordList, LoadError> {
    let mut members = Vec::new();
    for line in read_lines(path)? {
        let w = line.split('#').next().unwrap_or("").trim();
        if !w.is_empty() {
            members.push(w.to_string());
        }
    }
    if members.is_empty() {
        return Err(malformed(path, 0, "empty word list"));
    }
    Ok(WordList::from_members(name, mode, members))
}

/// CSV with header `word,kf_freq,...`; empty cells and zeros mean absent.
pub fn load_psycholing(path: &Path) -> Result<PsycholinguisticDB, LoadError> {
    let lines = read_lines(path)?;
    let expected_header = format!("word,{}", PSYCH_ATTRS.join(","));
    let Some(header) = lines.first() else {
        return Err(malformed(path, 0, "empty file"));
    };
    if header.trim() != expected_header {
        return Err(malformed(path, 1, format!("header must be `{expected_header}`")));
    }
    let mut map = HashMap::new();
    for (lineno, line) in lines.iter().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 12 {
            return Err(malformed(path, lineno + 1, "expected 12 cells"));
        }
        let mut rec = PsychRecord::default();
        let mut any = false;
        for (i, cell) in cells[1..].iter().enumerate() {
            let cell = cell.trim();
            if cell.is_empty() {
                continue;
            }
            let v: f64 = cell
                .parse()
                .map_err(|_| malformed(path, lineno + 1, "bad number"))?;
            if v < 0.0 {
                return Err(malformed(path, lineno + 1, "attributes must be non-negative"));
            }
            if v > 0.0 {
                rec.values[i] = Some(v);
                any = true;
            }
        }
        if !any {
            return Err(malformed(path, lineno + 1, "record has no attribute present"));
        }
        map.insert(cells[0].trim().to_lowercase(), rec);
    }
    Ok(PsycholinguisticDB { map })
}

/// `word<TAB>synset<TAB>depth<TAB>hyponym_count` per line.
fn load_senses(path: &Path) -> Result<HashMap<String, Vec<Sense>>, LoadError> {
    let mut map: HashMap<String, Vec<Sense>> = HashMap::new();
    for (lineno, line) in read_lines(path)?.iter().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split('\t').collect();
        if parts.len() != 4 {
            return Err(malformed(path, lineno + 1, "expected 4 fields"));
        }
        let depth: u32 = parts[2]
            .parse()
            .map_err(|_| malformed(path, lineno + 1, "bad depth"))?;
        let hyponyms: u32 = parts[3]
            .parse()
            .map_err(|_| malformed(path, lineno + 1, "bad hyponym count"))?;
        map.entry(parts[0].to_lowercase()).or_default().push(Sense {
            synset: parts[1].to_string(),
            depth,
            hyponyms,
        });
    }
    Ok(map)
}

/// `synset_a<TAB>synset_b<TAB>path<TAB>wup<TAB>lch` per line.
fn load_sense_pairs(path: &Path) -> Result<HashMap<(String, String), PairMetrics>, LoadError> {
    let mut map = HashMap::new();
    for (lineno, line) in read_lines(path)?.iter().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split('\t').collect();
        if parts.len() != 5 {
            return Err(malformed(path, lineno + 1, "expected 5 fields"));
        }
        let nums: Vec<f64> = parts[2..]
            .iter()
            .map(|s| s.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| malformed(path, lineno + 1, "bad metric value"))?;
        let m = PairMetrics {
            path: nums[0],
            wup: nums[1],
            lch: nums[2],
        };
        if !(m.path > 0.0 && m.path <= 1.0 && m.wup > 0.0 && m.wup <= 1.0 && m.lch > 0.0) {
            return Err(malformed(path, lineno + 1, "metric out of range"));
        }
        let key = if parts[0] <= parts[1] {
            (parts[0].to_string(), parts[1].to_string())
        } else {
            (parts[1].to_string(), parts[0].to_string())
        };
        map.insert(key, m);
    }
    Ok(map)
}

/// `synset_child<TAB>synset_parent` per line.
fn load_hypernyms(path: &Path) -> Result<HashMap<String, Vec<String>>, LoadError> {
    let mut map: HashMap<String, Vec<String>> = HashMap::new();
    for (lineno, line) in read_lines(path)?.iter().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((child, parent)) = line.split_once('\t') else {
            return Err(malformed(path, lineno + 1, "expected child\\tparent"));
        };
        map.entry(child.to_string())
            .or_default()
            .push(parent.to_string());
    }
    Ok(map)
}

/// `word v1 v2 ... vD`, space-separated.
pub fn load_embeddings(path: &Path, name: &str, dimension: usize) -> Result<EmbeddingStore, LoadError> {
    let mut map = HashMap::new();
    for (lineno, line) in read_lines(path)?.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let Some(word) = it.next() else { continue };
        let vec: Vec<f32> = it
            .map(|s| s.parse::<f32>())
            .collect::<Result<_, _>>()
            .map_err(|_| malformed(path, lineno + 1, "bad vector component"))?;
        if vec.len() != dimension {
            return Err(LoadError::DimensionMismatch {
                file: path.display().to_string(),
                line: lineno + 1,
                expected: dimension,
                got: vec.len(),
            });
        }
        if vec.iter().all(|&v| v == 0.0) {
            return Err(malformed(path, lineno + 1, "zero-norm vector"));
        }
        map.insert(word.to_lowercase(), vec);
    }
    Ok(EmbeddingStore {
        name: name.to_string(),
        dimension,
        map,
    })
}

/// `word<TAB>polarity` per line; polarities clamp to [-1, 1].
pub fn load_sentiment(path: &Path, kind: SentimentKind) -> Result<SentimentLexicon, LoadError> {
    let mut map = HashMap::new();
    for (lineno, line) in read_lines(path)?.iter().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((word, value)) = line.split_once('\t') else {
            return Err(malformed(path, lineno + 1, "expected word\\tpolarity"));
        };
        let v: f64 = value
            .trim()
            .parse()
            .map_err(|_| malformed(path, lineno + 1, "bad polarity"))?;
        map.insert(word.to_lowercase(), v.clamp(-1.0, 1.0));
    }
    Ok(SentimentLexicon { kind, map })
}
