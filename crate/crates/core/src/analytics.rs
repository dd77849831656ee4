//! Tag statistics over documents: frequencies, co-occurrence, exact tag
//! combination counts, bar-chart summaries and inter-annotator agreement.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{CategoryId, Document, NUM_CATEGORIES};

#[derive(Debug, Error, PartialEq)]
pub enum AnalyticsError {
    #[error("unknown category id {0}")]
    UnknownCategory(u8),
    #[error("combination query must name at least one category")]
    EmptyCombination,
    #[error("sentence ids differ between annotations: {0}")]
    SentenceMismatch(String),
}

/// Number of sentences carrying each category. Every category of the scheme
/// is present in the map, absent ones with count zero.
pub fn tag_frequencies(doc: &Document) -> BTreeMap<CategoryId, usize> {
    let mut counts: BTreeMap<CategoryId, usize> = CategoryId::all().map(|c| (c, 0)).collect();
    for s in &doc.sentences {
        for t in &s.tags {
            *counts.entry(*t).or_default() += 1;
        }
    }
    counts
}

/// Symmetric category co-occurrence counts. Entry `(i, j)` counts sentences
/// carrying both categories; the diagonal holds plain frequencies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoOccurrenceMatrix {
    pub document_id: String,
    pub n: usize,
    pub counts: Vec<Vec<u32>>,
}

impl CoOccurrenceMatrix {
    pub fn zeros(document_id: impl Into<String>) -> Self {
        Self {
            document_id: document_id.into(),
            n: NUM_CATEGORIES,
            counts: vec![vec![0; NUM_CATEGORIES]; NUM_CATEGORIES],
        }
    }

    pub fn get(&self, a: CategoryId, b: CategoryId) -> u32 {
        self.counts[a.index()][b.index()]
    }

    pub fn max(&self) -> u32 {
        self.counts.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.counts[i][j] == self.counts[j][i]))
    }
}

pub fn cooccurrence(doc: &Document) -> CoOccurrenceMatrix {
    let mut m = CoOccurrenceMatrix::zeros(doc.id.clone());
    for s in &doc.sentences {
        for (k, a) in s.tags.iter().enumerate() {
            m.counts[a.index()][a.index()] += 1;
            for b in &s.tags[k + 1..] {
                m.counts[a.index()][b.index()] += 1;
                m.counts[b.index()][a.index()] += 1;
            }
        }
    }
    m
}

/// How a combination query matches a sentence's tag set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CombinationMatch {
    /// The tag set equals the query.
    #[default]
    Exact,
    /// The tag set contains the query.
    Superset,
}

/// Counts sentences matching a tag combination. The count includes the
/// sentence the query was taken from, if any.
pub fn combination_count(doc: &Document, tags: &[CategoryId], mode: CombinationMatch) -> Result<usize, AnalyticsError> {
    if tags.is_empty() {
        return Err(AnalyticsError::EmptyCombination);
    }
    if let Some(bad) = tags.iter().find(|t| !t.is_valid()) {
        return Err(AnalyticsError::UnknownCategory(bad.get()));
    }
    let mut query = tags.to_vec();
    query.sort_unstable();
    query.dedup();
    let count = doc
        .sentences
        .iter()
        .filter(|s| match mode {
            CombinationMatch::Exact => s.tags == query,
            CombinationMatch::Superset => query.iter().all(|t| s.has_tag(*t)),
        })
        .count();
    Ok(count)
}

/// Distinct tag combinations with their multiplicities, ordered
/// lexicographically by tag ids.
pub fn distinct_combinations(doc: &Document) -> BTreeMap<Vec<CategoryId>, usize> {
    let mut out = BTreeMap::new();
    for s in &doc.sentences {
        let mut tags = s.tags.clone();
        tags.sort_unstable();
        *out.entry(tags).or_default() += 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryCount {
    pub category: CategoryId,
    pub count: usize,
    pub proportion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentSummary {
    pub document_id: String,
    pub sentence_count: usize,
    pub per_category: Vec<CategoryCount>,
}

pub fn summarize(doc: &Document) -> DocumentSummary {
    let n = doc.sentences.len();
    let per_category = tag_frequencies(doc)
        .into_iter()
        .map(|(category, count)| CategoryCount {
            category,
            count,
            proportion: if n == 0 { 0.0 } else { count as f64 / n as f64 },
        })
        .collect();
    DocumentSummary {
        document_id: doc.id.clone(),
        sentence_count: n,
        per_category,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceAgreement {
    pub sentence_id: String,
    pub jaccard: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategoryAgreement {
    pub category: CategoryId,
    pub observed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub per_sentence_jaccard: Vec<SentenceAgreement>,
    pub mean_jaccard: f64,
    pub per_category: Vec<CategoryAgreement>,
}

/// Jaccard index as a reduced fraction; an empty union counts as `1/1`.
fn overlap(a: &[CategoryId], b: &[CategoryId]) -> (usize, usize) {
    let inter = a.iter().filter(|t| b.contains(t)).count();
    let union = a.len() + b.len() - inter;
    if union == 0 {
        return (1, 1);
    }
    let (mut x, mut y) = (inter, union);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    (inter / x, union / x)
}

/// Compares two annotations of the same sentences. Sentences are matched by
/// id and reported in the order of `a`. Empty documents agree vacuously.
pub fn agreement(a: &Document, b: &Document) -> Result<AgreementReport, AnalyticsError> {
    let other: HashMap<&str, &[CategoryId]> = b.sentences.iter().map(|s| (s.id.as_str(), s.tags.as_slice())).collect();
    if a.sentences.len() != b.sentences.len() || other.len() != b.sentences.len() {
        return Err(AnalyticsError::SentenceMismatch(format!(
            "{} vs {} sentences",
            a.sentences.len(),
            b.sentences.len()
        )));
    }

    let mut per_sentence = Vec::with_capacity(a.sentences.len());
    let mut fractions: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut agree = [0usize; NUM_CATEGORIES];
    for s in &a.sentences {
        let theirs = other
            .get(s.id.as_str())
            .ok_or_else(|| AnalyticsError::SentenceMismatch(format!("{} missing from second annotation", s.id)))?;
        let (inter, union) = overlap(&s.tags, theirs);
        *fractions.entry((inter, union)).or_default() += 1;
        per_sentence.push(SentenceAgreement {
            sentence_id: s.id.clone(),
            jaccard: inter as f64 / union as f64,
        });
        for c in CategoryId::all() {
            if s.tags.contains(&c) == theirs.contains(&c) {
                agree[c.index()] += 1;
            }
        }
    }

    let n = per_sentence.len();
    let mean_jaccard = if n == 0 {
        1.0
    } else {
        // Weighting each distinct fraction by its share keeps uniform
        // inputs exact, e.g. all sentences at 1/3 give exactly 1.0 / 3.0.
        fractions
            .iter()
            .map(|(&(inter, union), &count)| (count as f64 / n as f64) * (inter as f64 / union as f64))
            .sum()
    };
    let per_category = CategoryId::all()
        .map(|c| CategoryAgreement {
            category: c,
            observed: if n == 0 {
                1.0
            } else {
                agree[c.index()] as f64 / n as f64
            },
        })
        .collect();
    Ok(AgreementReport {
        per_sentence_jaccard: per_sentence,
        mean_jaccard,
        per_category,
    })
}
