//! Seeded generator for schema-compatible synthetic corpora.
//!
//! Every document receives exactly `round(mean_tags * n)` tags in total, so the
//! per-document mean tag count is the requested mean up to rounding.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{default_registry, CategoryId, Corpus, Document, Sentence, NUM_CATEGORIES, SCHEMA_VERSION};

#[derive(Debug, Error, PartialEq)]
pub enum SynthError {
    #[error("impossible tag distribution: {0}")]
    Distribution(String),
    #[error("document {0} must contain at least one sentence")]
    EmptyDocument(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentPlan {
    pub id: String,
    pub title: String,
    pub sentences: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub documents: Vec<DocumentPlan>,
    pub mean_tags: f64,
    pub min_tags: usize,
    pub max_tags: usize,
    /// Chance that a single-tag sentence is tagged only as blank.
    pub blank_rate: f64,
    pub seed: u64,
}

/// The four texts of the reference study with their sentence counts.
pub fn default_documents() -> Vec<DocumentPlan> {
    [
        ("goethe", "Goethe, The Metamorphosis of Plants", 382),
        ("dc1", "De Candolle, text 1", 374),
        ("dc2", "De Candolle, text 2", 800),
        ("dc3", "De Candolle, text 3", 79),
    ]
    .into_iter()
    .map(|(id, title, sentences)| DocumentPlan {
        id: id.into(),
        title: title.into(),
        sentences,
    })
    .collect()
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            documents: default_documents(),
            mean_tags: 3.0,
            min_tags: 1,
            max_tags: 5,
            blank_rate: 0.15,
            seed: 0,
        }
    }
}

impl SynthSpec {
    pub fn check(&self) -> Result<(), SynthError> {
        let content = NUM_CATEGORIES - 1;
        let bad = |m: String| Err(SynthError::Distribution(m));
        if self.min_tags < 1 {
            return bad("min_tags must be at least 1".into());
        }
        if self.min_tags > self.max_tags {
            return bad(format!("min_tags {} exceeds max_tags {}", self.min_tags, self.max_tags));
        }
        if self.max_tags > content {
            return bad(format!(
                "max_tags {} exceeds the {content} content categories",
                self.max_tags
            ));
        }
        if !(self.mean_tags >= self.min_tags as f64 && self.mean_tags <= self.max_tags as f64) {
            return bad(format!(
                "mean_tags {} outside [{}, {}]",
                self.mean_tags, self.min_tags, self.max_tags
            ));
        }
        if !(0.0..=1.0).contains(&self.blank_rate) {
            return bad(format!("blank_rate {} outside [0, 1]", self.blank_rate));
        }
        if let Some(d) = self.documents.iter().find(|d| d.sentences == 0) {
            return Err(SynthError::EmptyDocument(d.id.clone()));
        }
        Ok(())
    }
}

/// Per-sentence tag counts in `[min, max]` summing to `round(mean * n)`.
fn tag_counts(n: usize, spec: &SynthSpec, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let (lo, hi) = (spec.min_tags, spec.max_tags);
    let target = ((spec.mean_tags * n as f64).round() as usize).clamp(lo * n, hi * n);
    let mut counts: Vec<usize> = if hi == lo {
        vec![lo; n]
    } else {
        let p = ((spec.mean_tags - lo as f64) / (hi - lo) as f64).clamp(0.0, 1.0);
        let binomial = Binomial::new((hi - lo) as u64, p).expect("p is a probability");
        (0..n).map(|_| lo + binomial.sample(rng) as usize).collect()
    };
    let mut total: usize = counts.iter().sum();
    while total < target {
        let i = rng.random_range(0..n);
        if counts[i] < hi {
            counts[i] += 1;
            total += 1;
        }
    }
    while total > target {
        let i = rng.random_range(0..n);
        if counts[i] > lo {
            counts[i] -= 1;
            total -= 1;
        }
    }
    counts
}

/// Draws `k` distinct content categories with probability proportional to
/// `weights`, one at a time.
fn draw_tags(k: usize, weights: &[f64], rng: &mut ChaCha8Rng) -> Vec<CategoryId> {
    let mut w = weights.to_vec();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let total: f64 = w.iter().sum();
        let mut u = rng.random::<f64>() * total;
        let mut pick = w.iter().rposition(|&x| x > 0.0).expect("enough categories remain");
        for (i, &x) in w.iter().enumerate() {
            if x > 0.0 && u < x {
                pick = i;
                break;
            }
            u -= x;
        }
        w[pick] = 0.0;
        out.push(CategoryId::from_index(pick).expect("content category"));
    }
    out.sort_unstable();
    out
}

const SUBJECTS: &[&str] = &[
    "the leaf",
    "the stem",
    "the flower",
    "the seed",
    "nature",
    "the botanist",
    "the genus",
    "the root",
    "the calyx",
    "the island flora",
    "the observer",
    "the family",
];
const VERBS: &[&str] = &[
    "develops into",
    "resembles",
    "is classified with",
    "depends upon",
    "transforms",
    "reveals",
    "is distinguished from",
    "anticipates",
];
const OBJECTS: &[&str] = &[
    "a hidden law",
    "the petals",
    "its neighbours",
    "the primitive type",
    "a common origin",
    "the soil",
    "each organ",
    "the whole plant",
    "the order of beings",
];

fn sentence_text(rng: &mut ChaCha8Rng) -> String {
    let s = SUBJECTS.choose(rng).expect("non-empty");
    let v = VERBS.choose(rng).expect("non-empty");
    let o = OBJECTS.choose(rng).expect("non-empty");
    let mut text = format!("{s} {v} {o}.");
    text[..1].make_ascii_uppercase();
    text
}

pub fn synthesize(spec: &SynthSpec) -> Result<Corpus, SynthError> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let spread = Normal::new(0.0f64, 0.9).expect("valid normal");
    let mut documents = Vec::with_capacity(spec.documents.len());
    for plan in &spec.documents {
        // Each document favours its own mix of content categories.
        let weights: Vec<f64> = (0..NUM_CATEGORIES - 1).map(|_| spread.sample(&mut rng).exp()).collect();
        let counts = tag_counts(plan.sentences, spec, &mut rng);
        let sentences = counts
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let tags = if k == 1 && rng.random_bool(spec.blank_rate) {
                    vec![CategoryId::BLANK]
                } else {
                    draw_tags(k, &weights, &mut rng)
                };
                Sentence {
                    id: format!("s{:04}", i + 1),
                    index: i,
                    text: sentence_text(&mut rng),
                    tags,
                    source_index: None,
                }
            })
            .collect();
        documents.push(Document {
            id: plan.id.clone(),
            title: plan.title.clone(),
            sentences,
        });
    }
    Ok(Corpus {
        schema_version: SCHEMA_VERSION,
        categories: default_registry(),
        documents,
    })
}
