//! Lexical density features: the share of content words, part-of-speech
//! ratios, and category-to-category ratios.

use crate::catalog::{FeatureResult, MissingReason};
use crate::corpus::{tags, TextSample};
use crate::resources::WordList;
use std::collections::HashMap;

/// Verb surface forms of *have*/*be* that the stricter lexical policy
/// excludes from the lexical class.
const HAVE_BE_FORMS: [&str; 12] = [
    "have", "has", "had", "having", "be", "am", "is", "are", "was", "were", "been", "being",
];

/// Broad lexical-word predicate: all verbs including modals, all adverbs,
/// all adjectives, nouns, and proper nouns.
pub fn is_ld1_lexical(tag: &str) -> bool {
    tags::is_noun(tag)
        || tags::is_adjective(tag)
        || tags::is_adverb(tag)
        || tags::is_verb(tag)
        || tag == "MD"
}

/// Strict lexical-word predicate: nouns and adjectives, comparative and
/// superlative adverbs, verbs except modals and *have*/*be* forms, and
/// plain adverbs only when `-ly`-formed or on the adjective-formed
/// exception list.
pub fn is_ld2_lexical(tag: &str, lower: &str, adverb_exceptions: &WordList) -> bool {
    tags::is_noun(tag)
        || tags::is_adjective(tag)
        || matches!(tag, "RBR" | "RBS")
        || (tags::is_verb(tag) && !HAVE_BE_FORMS.contains(&lower))
        || (tag == "RB" && (lower.ends_with("ly") || adverb_exceptions.contains(lower)))
}

/// Compute all density features of one sample.
pub fn density_features(
    sample: &TextSample,
    adverb_exceptions: Option<&WordList>,
) -> Vec<(&'static str, FeatureResult)> {
    let tokens: Vec<(&str, &str)> = sample
        .tokens()
        .map(|t| (t.pos.as_str(), t.lower.as_str()))
        .collect();
    let n = tokens.len() as f64;
    debug_assert!(n >= 1.0);

    let mut lex1 = 0usize;
    let mut lex2 = 0usize;
    let mut adj = 0usize;
    let mut noun = 0usize;
    let mut verb = 0usize;
    let mut prep = 0usize;
    let mut adv = 0usize;
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for &(tag, lower) in &tokens {
        *counts.entry(lower).or_insert(0) += 1;
        if is_ld1_lexical(tag) {
            lex1 += 1;
        }
        if let Some(exceptions) = adverb_exceptions {
            if is_ld2_lexical(tag, lower, exceptions) {
                lex2 += 1;
            }
        }
        if tags::is_adjective(tag) {
            adj += 1;
        }
        if tags::is_noun(tag) {
            noun += 1;
        }
        if tags::is_verb(tag) {
            verb += 1;
        }
        if tags::is_preposition(tag) {
            prep += 1;
        }
        if tags::is_adverb(tag) {
            adv += 1;
        }
    }

    let ld1 = lex1 as f64 / n;
    // complement of the same partition, so fwr + ld1 is exactly one
    let fwr = 1.0 - ld1;
    let wfi = tokens
        .iter()
        .filter(|(tag, _)| !is_ld1_lexical(tag))
        .map(|(_, lower)| counts[lower] as f64)
        .sum::<f64>()
        / n;
    let ratio = |num: usize, den: usize| -> FeatureResult {
        if den == 0 {
            Err(MissingReason::ZeroDenominator)
        } else {
            Ok(num as f64 / den as f64)
        }
    };

    vec![
        ("ld1", Ok(ld1)),
        (
            "ld2",
            match adverb_exceptions {
                Some(_) => Ok(lex2 as f64 / n),
                None => Err(MissingReason::ResourceAbsent),
            },
        ),
        ("wfi", Ok(wfi)),
        ("fwr", Ok(fwr)),
        ("rt_adj", Ok(adj as f64 / n)),
        ("rt_nn", Ok(noun as f64 / n)),
        ("rt_vb", Ok(verb as f64 / n)),
        ("rt_prep", Ok(prep as f64 / n)),
        ("rt_adv", Ok(adv as f64 / n)),
        ("nvr", ratio(noun, verb)),
        ("anr", ratio(adj, noun)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resources::MatchMode;
    use crate::testutil::sample_from_tagged;

    fn exceptions() -> WordList {
        WordList::from_members(
            "adverb_exceptions",
            MatchMode::Exact,
            ["half", "late", "low", "fast", "hard", "early"]
                .map(String::from),
        )
    }

    fn get(features: &[(&'static str, FeatureResult)], id: &str) -> FeatureResult {
        features.iter().find(|(i, _)| *i == id).unwrap().1
    }

    #[test]
    fn counting_rules_on_a_four_token_sample() {
        let s = sample_from_tagged(&[&[("the", "DT"), ("boy", "NN"), ("falls", "VBZ"), ("water", "NN")]]);
        let f = density_features(&s, Some(&exceptions()));
        assert_eq!(get(&f, "ld1"), Ok(0.75));
        assert_eq!(get(&f, "rt_nn"), Ok(0.5));
        assert_eq!(get(&f, "rt_vb"), Ok(0.25));
        assert_eq!(get(&f, "nvr"), Ok(2.0));
        assert_eq!(get(&f, "anr"), Ok(0.0));
        assert_eq!(get(&f, "fwr"), Ok(0.25));
    }

    #[test]
    fn all_functional_sample() {
        let s = sample_from_tagged(&[&[("the", "DT"), ("a", "DT"), ("an", "DT")]]);
        let f = density_features(&s, Some(&exceptions()));
        assert_eq!(get(&f, "ld1"), Ok(0.0));
        assert_eq!(get(&f, "fwr"), Ok(1.0));
        assert_eq!(get(&f, "nvr"), Err(MissingReason::ZeroDenominator));
    }

    #[test]
    fn anr_defined_with_zero_verbs() {
        let s = sample_from_tagged(&[&[("boy", "NN"), ("tall", "JJ")]]);
        let f = density_features(&s, Some(&exceptions()));
        assert_eq!(get(&f, "anr"), Ok(1.0));
        assert_eq!(get(&f, "nvr"), Err(MissingReason::ZeroDenominator));
    }

    #[test]
    fn ld2_policy_is_a_subset_of_ld1() {
        // modal, have-form, -ly adverb, exception adverb, plain adverb
        let s = sample_from_tagged(&[&[
            ("can", "MD"),
            ("is", "VBZ"),
            ("quickly", "RB"),
            ("fast", "RB"),
            ("soon", "RB"),
            ("boy", "NN"),
        ]]);
        let f = density_features(&s, Some(&exceptions()));
        // LD1 counts everything here as lexical
        assert_eq!(get(&f, "ld1"), Ok(1.0));
        // LD2 drops the modal, the have/be form, and the plain adverb
        assert_eq!(get(&f, "ld2"), Ok(0.5));
    }

    #[test]
    fn wfi_counts_within_sample_occurrences_of_functional_words() {
        // "the" occurs twice (functional), each occurrence contributes 2
        let s = sample_from_tagged(&[&[
            ("the", "DT"),
            ("boy", "NN"),
            ("the", "DT"),
            ("jar", "NN"),
        ]]);
        let f = density_features(&s, Some(&exceptions()));
        assert_eq!(get(&f, "wfi"), Ok((2.0 + 2.0) / 4.0));
    }

    #[test]
    fn ld2_missing_without_exception_list() {
        let s = sample_from_tagged(&[&[("boy", "NN")]]);
        let f = density_features(&s, None);
        assert_eq!(get(&f, "ld2"), Err(MissingReason::ResourceAbsent));
        assert_eq!(get(&f, "ld1"), Ok(1.0));
    }
}
