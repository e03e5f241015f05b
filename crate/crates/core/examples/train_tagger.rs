//! Regenerate the shipped tagger model from the bundled seed data.
//!
//! Training data is the hand-tagged seed file plus the pre-tagged output
//! of the synthetic corpus generator, so the tagger covers the bundled
//! vocabulary. Deterministic: rerunning reproduces the model byte for
//! byte.
//!
//! Usage: cargo run -p lexfeat-core --example train_tagger -- \
//!            fixtures/tagger/seed.conll fixtures/resources/tagger.model

use lexfeat_core::corpus::{PerceptronTagger, PosTaggerContract};
use lexfeat_core::synth::{generate, SynthConfig};
use std::path::Path;

type Sentence = (Vec<String>, Vec<String>);

fn parse_conll_sentences(text: &str) -> Vec<Sentence> {
    let mut out = Vec::new();
    let mut words = Vec::new();
    let mut tags = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            if !words.is_empty() {
                out.push((std::mem::take(&mut words), std::mem::take(&mut tags)));
            }
            continue;
        }
        let Some((w, t)) = line.split_once('\t') else {
            panic!("malformed seed line: {line}");
        };
        if w.chars().any(|c| c.is_alphanumeric()) {
            words.push(w.to_string());
            tags.push(t.trim().to_string());
        }
    }
    if !words.is_empty() {
        out.push((words, tags));
    }
    out
}

fn main() {
    let mut args = std::env::args().skip(1);
    let seed_path = args.next().expect("usage: train_tagger <seed.conll> <out.model>");
    let out_path = args.next().expect("usage: train_tagger <seed.conll> <out.model>");

    let seed_text = std::fs::read_to_string(&seed_path).expect("read seed file");
    let mut sentences = parse_conll_sentences(&seed_text);

    let (train_docs, _) = generate(&SynthConfig::default());
    for doc in &train_docs {
        sentences.extend(parse_conll_sentences(&doc.conll));
    }

    let tagger = PerceptronTagger::train(&sentences, 8, 42);

    let mut correct = 0usize;
    let mut total = 0usize;
    for (words, tags) in &sentences {
        let refs: Vec<&str> = words.iter().map(|s| s.as_str()).collect();
        for (got, want) in tagger.tag(&refs).iter().zip(tags) {
            total += 1;
            correct += (got == want) as usize;
        }
    }
    println!(
        "trained on {} sentences; training-set accuracy {:.4}",
        sentences.len(),
        correct as f64 / total as f64
    );

    tagger.save(Path::new(&out_path)).expect("save model");
    println!("model written to {out_path}");
}
