//! Lexical sophistication: rare-word rates, mean corpus frequency, verb
//! sophistication, light-verb and irregular-verb rates, and the hapax
//! legomena ratio.

use crate::catalog::{FeatureResult, MissingReason};
use crate::corpus::{tags, TextSample};
use crate::diversity::TypeDistribution;
use crate::resources::ResourceBundle;

/// Frequency rank above which a word counts as sophisticated.
pub const SOPH_RANK_THRESHOLD: u32 = 3000;

/// Irregular base-form table: inflected form -> lemma. Covers the common
/// English irregular verbs; regular forms fall through to suffix rules.
const IRREGULAR_FORMS: &[(&str, &str)] = &[
    ("am", "be"),
    ("is", "be"),
    ("are", "be"),
    ("was", "be"),
    ("were", "be"),
    ("been", "be"),
    ("being", "be"),
    ("has", "have"),
    ("had", "have"),
    ("having", "have"),
    ("does", "do"),
    ("did", "do"),
    ("done", "do"),
    ("doing", "do"),
    ("goes", "go"),
    ("went", "go"),
    ("gone", "go"),
    ("going", "go"),
    ("made", "make"),
    ("making", "make"),
    ("got", "get"),
    ("gotten", "get"),
    ("getting", "get"),
    ("took", "take"),
    ("taken", "take"),
    ("taking", "take"),
    ("gave", "give"),
    ("given", "give"),
    ("giving", "give"),
    ("saw", "see"),
    ("seen", "see"),
    ("seeing", "see"),
    ("came", "come"),
    ("coming", "come"),
    ("ran", "run"),
    ("running", "run"),
    ("fell", "fall"),
    ("fallen", "fall"),
    ("falling", "fall"),
    ("stood", "stand"),
    ("standing", "stand"),
    ("stole", "steal"),
    ("stolen", "steal"),
    ("stealing", "steal"),
    ("ate", "eat"),
    ("eaten", "eat"),
    ("eating", "eat"),
    ("said", "say"),
    ("saying", "say"),
    ("thought", "think"),
    ("thinking", "think"),
    ("knew", "know"),
    ("known", "know"),
    ("knowing", "know"),
    ("found", "find"),
    ("finding", "find"),
    ("broke", "break"),
    ("broken", "break"),
    ("breaking", "break"),
    ("put", "put"),
    ("putting", "put"),
    ("sat", "sit"),
    ("sitting", "sit"),
    ("told", "tell"),
    ("telling", "tell"),
    ("let", "let"),
    ("letting", "let"),
];

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

/// Uninflected form of a verb: irregular table first, then suffix
/// stripping for regular conjugation.
pub fn verb_lemma(lower: &str) -> String {
    if let Some((_, lemma)) = IRREGULAR_FORMS.iter().find(|(form, _)| *form == lower) {
        return lemma.to_string();
    }
    let chars: Vec<char> = lower.chars().collect();
    let n = chars.len();
    let ends = |suf: &str| lower.ends_with(suf);
    // -ies -> -y (carries), -es after sibilant -> drop es (washes),
    // -s -> drop s (falls), -ied -> -y, -ed -> drop (doubling undone),
    // -ing -> drop (doubling undone)
    if ends("ies") && n > 4 {
        return format!("{}y", &lower[..n - 3]);
    }
    if (ends("ches") || ends("shes") || ends("sses") || ends("xes") || ends("zes")) && n > 4 {
        return lower[..n - 2].to_string();
    }
    if ends("s") && !ends("ss") && n > 3 {
        return lower[..n - 1].to_string();
    }
    if ends("ied") && n > 4 {
        return format!("{}y", &lower[..n - 3]);
    }
    for (suf, cut) in [("ed", 2usize), ("ing", 3usize)] {
        if ends(suf) && n > cut + 1 {
            let stem: Vec<char> = chars[..n - cut].to_vec();
            let m = stem.len();
            // undo consonant doubling: stopped -> stop
            if m >= 3 && stem[m - 1] == stem[m - 2] && !is_vowel(stem[m - 1]) && stem[m - 1] != 'l'
            {
                return stem[..m - 1].iter().collect();
            }
            // restore silent e: climbed stays climb, smiled -> smile
            let s: String = stem.iter().collect();
            if m >= 2 && !is_vowel(stem[m - 1]) && is_vowel(stem[m - 2]) && stem[m - 1] != 'w'
                && stem[m - 2] != 'a'
                && m >= 4
                && !is_vowel(stem[m - 3])
            {
                return format!("{s}e");
            }
            return s;
        }
    }
    lower.to_string()
}

/// Verb tokens of a sample with derived counts.
#[derive(Debug, Clone, Default)]
pub struct VerbInventory {
    pub total: usize,
    pub sophisticated: usize,
    pub gap: usize,
    pub irregular: usize,
}

/// All sophistication features of one sample.
pub fn sophistication_features(
    sample: &TextSample,
    bundle: &ResourceBundle,
) -> Vec<(&'static str, FeatureResult)> {
    let absent = Err(MissingReason::ResourceAbsent);
    let n = sample.n_tokens() as f64;

    // hapax legomena over all word tokens
    let dist = TypeDistribution::from_tokens(sample.tokens().map(|t| t.lower.as_str()));
    let hlr = Ok(dist.singletons() as f64 / n);

    // content words after stop-word removal, for soph and cls
    let (soph, cls) = match (bundle.stopwords.as_ref(), bundle.frequency.as_ref()) {
        (Some(stopwords), Some(freq)) => {
            let content: Vec<&str> = sample
                .tokens()
                .filter(|t| !stopwords.contains(&t.lower))
                .map(|t| t.lower.as_str())
                .collect();
            if content.is_empty() {
                (Err(MissingReason::NoContent), Err(MissingReason::NoContent))
            } else {
                let nc = content.len() as f64;
                let rare = content
                    .iter()
                    .filter(|w| freq.rank(w) > SOPH_RANK_THRESHOLD)
                    .count() as f64;
                let freq_sum: f64 = content.iter().map(|w| freq.frequency(w)).sum();
                (Ok(rare / nc), Ok(freq_sum / nc))
            }
        }
        _ => (absent, absent),
    };

    // verb-based measures
    let verbs: Vec<String> = sample
        .tokens()
        .filter(|t| tags::is_verb(&t.pos))
        .map(|t| verb_lemma(&t.lower))
        .collect();
    let verb_ratio = |count: Option<usize>| -> FeatureResult {
        match count {
            None => absent,
            Some(_) if verbs.is_empty() => Err(MissingReason::ZeroDenominator),
            Some(c) => Ok(c as f64 / verbs.len() as f64),
        }
    };
    let soph_verbs = bundle
        .frequent_verbs
        .as_ref()
        .map(|list| verbs.iter().filter(|v| !list.contains(v)).count());
    let vsm = verb_ratio(soph_verbs);
    let vsm_sq = match (soph_verbs, verbs.len()) {
        (None, _) => absent,
        (Some(_), 0) => Err(MissingReason::ZeroDenominator),
        (Some(c), v) => Ok(c as f64 / (2.0 * v as f64).sqrt()),
    };
    let gap_vb = verb_ratio(
        bundle
            .gap_verbs
            .as_ref()
            .map(|list| verbs.iter().filter(|v| list.contains(v)).count()),
    );
    let rt_irreg_vb = verb_ratio(
        bundle
            .irregular_verbs
            .as_ref()
            .map(|list| verbs.iter().filter(|v| list.contains(v)).count()),
    );

    vec![
        ("soph", soph),
        ("cls", cls),
        ("vsm", vsm),
        ("vsm_sq", vsm_sq),
        ("gap_vb", gap_vb),
        ("rt_irreg_vb", rt_irreg_vb),
        ("hlr", hlr),
    ]
}
