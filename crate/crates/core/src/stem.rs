//! Shared word-stem normalization.
//!
//! A single Snowball (Porter2) English stemmer instance is used everywhere a
//! stem is needed — token stems, frequency-list keys, and stem-matched word
//! lists — so lookups always agree with how resources were indexed.

use rust_stemmers::{Algorithm, Stemmer};
use std::sync::OnceLock;

fn stemmer() -> &'static Stemmer {
    static STEMMER: OnceLock<Stemmer> = OnceLock::new();
    STEMMER.get_or_init(|| Stemmer::create(Algorithm::English))
}

/// Stem of the lowercased form of `word`.
pub fn stem(word: &str) -> String {
    let lower = word.to_lowercase();
    stemmer().stem(&lower).into_owned()
}
