//! Helpers shared by unit tests.

use crate::corpus::{count_syllables, Label, TextSample, Token};
use crate::stem::stem;

/// Build a sample directly from `(word, tag)` utterances. Words whose
/// surface has no alphanumeric character become punctuation tokens.
pub fn sample_from_tagged(utterances: &[&[(&str, &str)]]) -> TextSample {
    let utts = utterances
        .iter()
        .map(|utt| {
            utt.iter()
                .map(|(surface, tag)| {
                    let is_punct = !surface.chars().any(|c| c.is_alphanumeric());
                    let lower = surface.to_lowercase();
                    Token {
                        surface: surface.to_string(),
                        lower: lower.clone(),
                        stem: if is_punct { lower.clone() } else { stem(&lower) },
                        pos: tag.to_string(),
                        syllables: if is_punct { 1 } else { count_syllables(&lower) },
                        is_punct,
                    }
                })
                .collect()
        })
        .collect();
    TextSample {
        id: "test".to_string(),
        label: Label::Unlabeled,
        utterances: utts,
    }
}

/// Single-utterance sample of plain nouns, one per word.
pub fn noun_sample(words: &[&str]) -> TextSample {
    let tagged: Vec<(&str, &str)> = words.iter().map(|w| (*w, "NN")).collect();
    sample_from_tagged(&[&tagged])
}
