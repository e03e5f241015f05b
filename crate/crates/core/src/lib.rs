//! Lexical complexity analysis for clinical language samples.
//!
//! The crate ingests transcripts or plain text, computes a catalog of
//! lexical features (density, diversity, keyword focus and PMI, n-gram
//! diversity, sophistication, specificity, psycholinguistic norms, and
//! miscellaneous discourse/sentiment/readability/profile-distance
//! measures), ranks features with four selection methods, and trains a
//! logistic-regression classifier separating impaired from control
//! samples. The experiment layer reproduces the fixed-split protocol,
//! per-group comparison, continuous feature-subset search, and the
//! input-length sweep.

pub mod catalog;
pub mod corpus;
pub mod density;
pub mod diversity;
pub mod experiment;
pub mod interchange;
pub mod misc;
pub mod model;
pub mod ngram_diversity;
pub mod psycholing;
pub mod resources;
pub mod selection;
pub mod semantic;
pub mod sophistication;
pub mod stem;
pub mod synth;
#[cfg(test)]
pub(crate) mod testutil;

pub use catalog::{extract_all, FeatureGroup, FeatureValue, FeatureVector, MissingReason};
pub use corpus::{Label, RawDocument, TextSample, Token};
pub use resources::ResourceBundle;
