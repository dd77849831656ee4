//! Corpus data model, canonical JSON format, validation and filtering.
//!
//! A corpus is a set of documents, each an ordered list of sentences carrying
//! a non-empty set of category tags drawn from a fixed 17-entry scheme.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Number of categories in the annotation scheme.
pub const NUM_CATEGORIES: usize = 17;

/// Schema version written by [`serialize_corpus`].
pub const SCHEMA_VERSION: u32 = 1;

/// Tag counts above this are reported as warnings.
pub const MAX_TAGS_WARN: usize = 5;

/// Identifier of a category, `1..=17`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CategoryId(u8);

impl CategoryId {
    pub const BLANK: CategoryId = CategoryId(17);

    pub fn new(id: u8) -> Option<Self> {
        (1..=NUM_CATEGORIES as u8).contains(&id).then_some(Self(id))
    }

    /// Builds an id from a zero-based vector component index.
    pub fn from_index(index: usize) -> Option<Self> {
        u8::try_from(index + 1).ok().and_then(Self::new)
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Zero-based component index. Only meaningful for in-range ids.
    pub fn index(self) -> usize {
        usize::from(self.0).saturating_sub(1)
    }

    pub fn is_valid(self) -> bool {
        Self::new(self.0).is_some()
    }

    /// All ids of the scheme in ascending order.
    pub fn all() -> impl Iterator<Item = CategoryId> {
        (1..=NUM_CATEGORIES as u8).map(CategoryId)
    }
}

impl fmt::Display for CategoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Category {
    pub id: CategoryId,
    pub key: String,
    pub label: String,
    pub color: String,
}

const DEFAULT_CATEGORIES: [(&str, &str, &str); NUM_CATEGORIES] = [
    ("romantic", "Romantic", "#E6194B"),
    ("classical", "Classical", "#4363D8"),
    ("empirical", "Empirical", "#3CB44B"),
    ("inductive", "Inductive", "#F58231"),
    ("deductive", "Deductive", "#911EB4"),
    ("rational", "Rational or Speculative", "#42D4F4"),
    ("methodological", "Methodological", "#F032E6"),
    ("historical", "Historical or Descriptive", "#9A6324"),
    ("philosophical", "Philosophical", "#469990"),
    ("analogical", "Analogical", "#BFEF45"),
    ("metaphorical", "Metaphorical or Visual", "#FFE119"),
    ("agency", "Metaphors attributing agency to nature", "#800000"),
    ("classificatory", "Classificatory", "#000075"),
    ("numerical", "Numerical", "#808000"),
    ("future", "Future researches or Utility", "#FABED4"),
    ("goals", "Research goals or Directions", "#DCBEFF"),
    ("blank", "Blank statements", "#A9A9A9"),
];

/// The default 17-category registry.
pub fn default_registry() -> Vec<Category> {
    DEFAULT_CATEGORIES
        .iter()
        .zip(CategoryId::all())
        .map(|(&(key, label, color), id)| Category {
            id,
            key: key.to_string(),
            label: label.to_string(),
            color: color.to_string(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub id: String,
    pub index: usize,
    pub text: String,
    pub tags: Vec<CategoryId>,
    /// Position in the unfiltered document; set by [`apply_filter`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_index: Option<usize>,
}

impl Sentence {
    pub fn has_tag(&self, c: CategoryId) -> bool {
        self.tags.binary_search(&c).is_ok()
    }

    /// Index in the original document, before any filtering.
    pub fn original_index(&self) -> usize {
        self.source_index.unwrap_or(self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub title: String,
    pub sentences: Vec<Sentence>,
}

impl Document {
    pub fn sentence(&self, id: &str) -> Option<&Sentence> {
        self.sentences.iter().find(|s| s.id == id)
    }

    pub fn total_tags(&self) -> usize {
        self.sentences.iter().map(|s| s.tags.len()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub schema_version: u32,
    pub categories: Vec<Category>,
    pub documents: Vec<Document>,
}

impl Corpus {
    pub fn document(&self, id: &str) -> Option<&Document> {
        self.documents.iter().find(|d| d.id == id)
    }

    pub fn category(&self, id: CategoryId) -> Option<&Category> {
        self.categories.iter().find(|c| c.id == id)
    }

    /// Resolves a category by key (`"blank"`) or numeric id (`"17"`).
    pub fn resolve_category(&self, token: &str) -> Option<CategoryId> {
        let token = token.trim();
        if let Ok(n) = token.parse::<u8>() {
            return CategoryId::new(n).filter(|id| self.category(*id).is_some());
        }
        let lower = token.to_ascii_lowercase();
        self.categories.iter().find(|c| c.key == lower).map(|c| c.id)
    }

    /// Sorts every tag set ascending.
    pub fn canonicalize(&mut self) {
        for s in self.documents.iter_mut().flat_map(|d| d.sentences.iter_mut()) {
            s.tags.sort_unstable();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    UnsupportedSchemaVersion,
    CategoryIdOutOfRange,
    DuplicateCategoryId,
    DuplicateCategoryKey,
    InvalidCategoryKey,
    DuplicateDocumentId,
    DuplicateSentenceId,
    NonContiguousIndex,
    EmptyTags,
    DuplicateTag,
    UnknownCategory,
    TooManyTags,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::UnsupportedSchemaVersion => "unsupported_schema_version",
            Rule::CategoryIdOutOfRange => "category_id_out_of_range",
            Rule::DuplicateCategoryId => "duplicate_category_id",
            Rule::DuplicateCategoryKey => "duplicate_category_key",
            Rule::InvalidCategoryKey => "invalid_category_key",
            Rule::DuplicateDocumentId => "duplicate_document_id",
            Rule::DuplicateSentenceId => "duplicate_sentence_id",
            Rule::NonContiguousIndex => "non_contiguous_index",
            Rule::EmptyTags => "empty_tags",
            Rule::DuplicateTag => "duplicate_tag",
            Rule::UnknownCategory => "unknown_category",
            Rule::TooManyTags => "too_many_tags",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub rule: Rule,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub document_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sentence_id: Option<String>,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rule)?;
        if let Some(d) = &self.document_id {
            write!(f, " document {d}")?;
        }
        if let Some(s) = &self.sentence_id {
            write!(f, " sentence {s}")?;
        }
        write!(f, ": {}", self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentStats {
    pub document_id: String,
    pub title: String,
    pub sentence_count: usize,
    pub mean_tags: f64,
    pub min_tags: usize,
    pub max_tags: usize,
}

impl DocumentStats {
    pub fn of(doc: &Document) -> Self {
        let counts = doc.sentences.iter().map(|s| s.tags.len());
        let n = doc.sentences.len();
        let total: usize = counts.clone().sum();
        Self {
            document_id: doc.id.clone(),
            title: doc.title.clone(),
            sentence_count: n,
            mean_tags: if n == 0 { 0.0 } else { total as f64 / n as f64 },
            min_tags: counts.clone().min().unwrap_or(0),
            max_tags: counts.max().unwrap_or(0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub errors: Vec<Finding>,
    pub warnings: Vec<Finding>,
    pub stats: Vec<DocumentStats>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("validation failed with {} error(s); first: {}", .0.len(), .0[0])]
    Validation(Vec<Finding>),
    #[error("unknown category id {0}")]
    UnknownCategory(u8),
    #[error("invalid filter: {0}")]
    InvalidFilter(String),
}

/// Checks every structural invariant and computes per-document tag statistics.
pub fn validate(corpus: &Corpus) -> ValidationReport {
    let mut errors = Vec::new();
    let mut warnings = Vec::new();
    let finding = |rule, doc: Option<&str>, sentence: Option<&str>, message: String| Finding {
        rule,
        document_id: doc.map(str::to_string),
        sentence_id: sentence.map(str::to_string),
        message,
    };

    if corpus.schema_version != SCHEMA_VERSION {
        errors.push(finding(
            Rule::UnsupportedSchemaVersion,
            None,
            None,
            format!("schema_version {} (expected {SCHEMA_VERSION})", corpus.schema_version),
        ));
    }

    let mut registered = HashSet::new();
    let mut keys = HashSet::new();
    for c in &corpus.categories {
        if !c.id.is_valid() {
            errors.push(finding(
                Rule::CategoryIdOutOfRange,
                None,
                None,
                format!("category id {} outside 1..={NUM_CATEGORIES}", c.id),
            ));
        }
        if !registered.insert(c.id) {
            errors.push(finding(
                Rule::DuplicateCategoryId,
                None,
                None,
                format!("category id {}", c.id),
            ));
        }
        let key_ok = !c.key.is_empty() && c.key.chars().all(|ch| !ch.is_whitespace() && !ch.is_uppercase());
        if !key_ok {
            errors.push(finding(
                Rule::InvalidCategoryKey,
                None,
                None,
                format!("key {:?} must be non-empty lowercase without whitespace", c.key),
            ));
        }
        if !keys.insert(c.key.as_str()) {
            errors.push(finding(
                Rule::DuplicateCategoryKey,
                None,
                None,
                format!("key {:?}", c.key),
            ));
        }
    }

    let mut doc_ids = HashSet::new();
    for doc in &corpus.documents {
        let d = Some(doc.id.as_str());
        if !doc_ids.insert(doc.id.as_str()) {
            errors.push(finding(
                Rule::DuplicateDocumentId,
                d,
                None,
                format!("document id {:?}", doc.id),
            ));
        }
        let mut sentence_ids = HashSet::new();
        for (pos, s) in doc.sentences.iter().enumerate() {
            let sid = Some(s.id.as_str());
            if !sentence_ids.insert(s.id.as_str()) {
                errors.push(finding(
                    Rule::DuplicateSentenceId,
                    d,
                    sid,
                    "sentence id repeated".into(),
                ));
            }
            if s.index != pos {
                errors.push(finding(
                    Rule::NonContiguousIndex,
                    d,
                    sid,
                    format!("index {} at position {pos}", s.index),
                ));
            }
            if s.tags.is_empty() {
                errors.push(finding(Rule::EmptyTags, d, sid, "sentence carries no tags".into()));
            }
            let mut seen = HashSet::new();
            for &t in &s.tags {
                if !seen.insert(t) {
                    errors.push(finding(Rule::DuplicateTag, d, sid, format!("tag {t} repeated")));
                }
                if !registered.contains(&t) || !t.is_valid() {
                    errors.push(finding(
                        Rule::UnknownCategory,
                        d,
                        sid,
                        format!("tag {t} is not registered"),
                    ));
                }
            }
            if s.tags.len() > MAX_TAGS_WARN {
                warnings.push(finding(
                    Rule::TooManyTags,
                    d,
                    sid,
                    format!("{} tags (more than {MAX_TAGS_WARN})", s.tags.len()),
                ));
            }
        }
    }

    ValidationReport {
        errors,
        warnings,
        stats: corpus.documents.iter().map(DocumentStats::of).collect(),
    }
}

/// Parses and validates a corpus. Tag arrays are normalized to ascending order.
pub fn parse_corpus(bytes: &[u8]) -> Result<Corpus, CorpusError> {
    let mut corpus: Corpus = serde_json::from_slice(bytes).map_err(|e| CorpusError::MalformedInput(e.to_string()))?;
    let report = validate(&corpus);
    if !report.is_ok() {
        return Err(CorpusError::Validation(report.errors));
    }
    corpus.canonicalize();
    Ok(corpus)
}

/// Canonical serialization: keys in declaration order, tag arrays ascending.
pub fn serialize_corpus(corpus: &Corpus) -> String {
    let mut canonical = corpus.clone();
    canonical.canonicalize();
    serde_json::to_string(&canonical).expect("corpus serialization is infallible")
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterSpec {
    pub exclude_categories: BTreeSet<CategoryId>,
    pub include_only_categories: Option<BTreeSet<CategoryId>>,
    /// Half-open `[start, end)` interval over original sentence indices.
    pub sentence_range: Option<[usize; 2]>,
}

impl FilterSpec {
    pub fn is_empty(&self) -> bool {
        self.exclude_categories.is_empty() && self.include_only_categories.is_none() && self.sentence_range.is_none()
    }

    pub fn exclude(ids: impl IntoIterator<Item = CategoryId>) -> Self {
        Self {
            exclude_categories: ids.into_iter().collect(),
            ..Self::default()
        }
    }

    /// Builds a filter from comma-separated category tokens (keys or ids) and
    /// a `start,end` range, as used by query strings and command-line flags.
    pub fn from_tokens(
        corpus: &Corpus,
        exclude: Option<&str>,
        include: Option<&str>,
        range: Option<&str>,
    ) -> Result<Self, CorpusError> {
        let categories = |list: &str| -> Result<BTreeSet<CategoryId>, CorpusError> {
            list.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    corpus
                        .resolve_category(t)
                        .ok_or_else(|| CorpusError::InvalidFilter(format!("unknown category {t:?}")))
                })
                .collect()
        };
        let sentence_range = match range {
            None => None,
            Some(r) => {
                let parts: Vec<&str> = r.split(',').map(str::trim).collect();
                let bounds: Option<Vec<usize>> = parts.iter().map(|p| p.parse().ok()).collect();
                match bounds.as_deref() {
                    Some(&[start, end]) => Some([start, end]),
                    _ => return Err(CorpusError::InvalidFilter(format!("range {r:?} is not start,end"))),
                }
            }
        };
        let spec = Self {
            exclude_categories: exclude.map(categories).transpose()?.unwrap_or_default(),
            include_only_categories: include.map(categories).transpose()?,
            sentence_range,
        };
        spec.check(Some(&corpus.categories))?;
        Ok(spec)
    }

    fn referenced(&self) -> impl Iterator<Item = CategoryId> + '_ {
        self.exclude_categories
            .iter()
            .chain(self.include_only_categories.iter().flatten())
            .copied()
    }

    /// Checks the filter against the scheme, or a registry when given.
    pub fn check(&self, registry: Option<&[Category]>) -> Result<(), CorpusError> {
        for id in self.referenced() {
            let known = match registry {
                Some(cats) => cats.iter().any(|c| c.id == id),
                None => id.is_valid(),
            };
            if !known {
                return Err(CorpusError::UnknownCategory(id.get()));
            }
        }
        if let Some(include) = &self.include_only_categories {
            if let Some(both) = include.intersection(&self.exclude_categories).next() {
                return Err(CorpusError::InvalidFilter(format!(
                    "category {both} is both excluded and included"
                )));
            }
        }
        if let Some([start, end]) = self.sentence_range {
            if start > end {
                return Err(CorpusError::InvalidFilter(format!(
                    "range start {start} exceeds end {end}"
                )));
            }
        }
        Ok(())
    }
}

/// Restricts a document to a sentence range and a category subset.
///
/// Excluded categories are stripped from every tag set and sentences left
/// without tags are dropped. Survivors are re-indexed from zero and keep
/// their original position in `source_index`. The range applies to original
/// positions, which makes the operation idempotent.
pub fn apply_filter(doc: &Document, spec: &FilterSpec) -> Result<Document, CorpusError> {
    spec.check(None)?;
    if spec.is_empty() {
        return Ok(doc.clone());
    }
    let in_range = |s: &Sentence| match spec.sentence_range {
        Some([start, end]) => (start..end).contains(&s.original_index()),
        None => true,
    };
    let keep_tag = |t: &CategoryId| {
        !spec.exclude_categories.contains(t) && spec.include_only_categories.as_ref().is_none_or(|inc| inc.contains(t))
    };

    let sentences = doc
        .sentences
        .iter()
        .filter(|s| in_range(s))
        .filter_map(|s| {
            let tags: Vec<CategoryId> = s.tags.iter().copied().filter(keep_tag).collect();
            (!tags.is_empty()).then(|| Sentence {
                id: s.id.clone(),
                index: 0,
                text: s.text.clone(),
                tags,
                source_index: Some(s.original_index()),
            })
        })
        .enumerate()
        .map(|(i, mut s)| {
            s.index = i;
            s
        })
        .collect();

    Ok(Document {
        id: doc.id.clone(),
        title: doc.title.clone(),
        sentences,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(id: u8) -> CategoryId {
        CategoryId::new(id).unwrap()
    }

    fn sentence(i: usize, tags: &[u8]) -> Sentence {
        Sentence {
            id: format!("s{i:04}"),
            index: i,
            text: format!("Sentence {i}."),
            tags: tags.iter().map(|&t| CategoryId(t)).collect(),
            source_index: None,
        }
    }

    fn corpus_of(sentences: Vec<Sentence>) -> Corpus {
        Corpus {
            schema_version: 1,
            categories: default_registry(),
            documents: vec![Document {
                id: "doc".into(),
                title: "Doc".into(),
                sentences,
            }],
        }
    }

    #[test]
    fn registry_is_contiguous_with_unique_keys() {
        let reg = default_registry();
        assert_eq!(reg.len(), NUM_CATEGORIES);
        for (i, c) in reg.iter().enumerate() {
            assert_eq!(c.id.get() as usize, i + 1);
            assert!(c.key.chars().all(|ch| ch.is_ascii_lowercase()));
            assert!(c.color.starts_with('#') && c.color.len() == 7);
        }
        let keys: HashSet<_> = reg.iter().map(|c| &c.key).collect();
        let colors: HashSet<_> = reg.iter().map(|c| &c.color).collect();
        assert_eq!(keys.len(), NUM_CATEGORIES);
        assert_eq!(colors.len(), NUM_CATEGORIES);
        assert_eq!(reg[16].key, "blank");
        assert_eq!(reg[16].id, CategoryId::BLANK);
    }

    #[test]
    fn parses_minimal_corpus() {
        let json = r##"{"schema_version":1,"categories":[{"id":3,"key":"empirical","label":"Empirical","color":"#3CB44B"}],"documents":[{"id":"d","title":"D","sentences":[{"id":"s1","index":0,"text":"x","tags":[3]}]}]}"##;
        let corpus = parse_corpus(json.as_bytes()).unwrap();
        assert_eq!(corpus.documents.len(), 1);
        assert_eq!(corpus.documents[0].sentences.len(), 1);
        assert_eq!(corpus.documents[0].sentences[0].tags, vec![cat(3)]);
        assert_eq!(serialize_corpus(&corpus), json);
    }

    #[test]
    fn parse_sorts_tags() {
        let mut c = corpus_of(vec![sentence(0, &[5, 1, 3])]);
        let json = serde_json::to_string(&c).unwrap();
        let parsed = parse_corpus(json.as_bytes()).unwrap();
        c.canonicalize();
        assert_eq!(parsed, c);
        assert_eq!(parsed.documents[0].sentences[0].tags, vec![cat(1), cat(3), cat(5)]);
    }

    #[test]
    fn empty_tags_is_a_validation_error() {
        let json = serialize_corpus(&corpus_of(vec![sentence(0, &[1]), sentence(1, &[])]));
        match parse_corpus(json.as_bytes()) {
            Err(CorpusError::Validation(findings)) => {
                assert_eq!(findings.len(), 1);
                assert_eq!(findings[0].rule, Rule::EmptyTags);
                assert_eq!(findings[0].sentence_id.as_deref(), Some("s0001"));
                assert!(findings[0].to_string().contains("empty_tags"));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_json_is_rejected() {
        assert!(matches!(parse_corpus(b"{"), Err(CorpusError::MalformedInput(_))));
        assert!(matches!(parse_corpus(b""), Err(CorpusError::MalformedInput(_))));
        assert!(matches!(
            parse_corpus(br#"{"schema_version":1,"categories":[]}"#),
            Err(CorpusError::MalformedInput(_))
        ));
    }

    #[test]
    fn duplicate_sentence_id_is_one_error() {
        let mut s1 = sentence(1, &[2]);
        s1.id = "s0000".into();
        let report = validate(&corpus_of(vec![sentence(0, &[1]), s1]));
        assert_eq!(report.errors.len(), 1);
        assert_eq!(report.errors[0].rule, Rule::DuplicateSentenceId);
    }

    #[test]
    fn six_tags_warn_but_do_not_fail() {
        let report = validate(&corpus_of(vec![sentence(0, &[1, 2, 3, 4, 5, 6])]));
        assert!(report.errors.is_empty());
        assert_eq!(report.warnings.len(), 1);
        assert_eq!(report.warnings[0].rule, Rule::TooManyTags);
    }

    #[test]
    fn structural_errors_are_reported() {
        let mut bad_index = sentence(1, &[1]);
        bad_index.index = 5;
        let report = validate(&corpus_of(vec![sentence(0, &[1, 1]), bad_index, sentence(2, &[18])]));
        let rules: Vec<_> = report.errors.iter().map(|f| f.rule).collect();
        assert_eq!(
            rules,
            vec![Rule::DuplicateTag, Rule::NonContiguousIndex, Rule::UnknownCategory]
        );

        let mut c = corpus_of(vec![sentence(0, &[1])]);
        c.categories.pop();
        c.documents[0].sentences[0].tags = vec![CategoryId::BLANK];
        assert_eq!(validate(&c).errors[0].rule, Rule::UnknownCategory);
    }

    #[test]
    fn stats_report_mean_min_max() {
        let report = validate(&corpus_of(vec![
            sentence(0, &[1]),
            sentence(1, &[1, 2, 3]),
            sentence(2, &[1, 2, 3, 4, 5]),
        ]));
        let st = &report.stats[0];
        assert_eq!(st.sentence_count, 3);
        assert_eq!(st.mean_tags, 3.0);
        assert_eq!((st.min_tags, st.max_tags), (1, 5));
    }

    #[test]
    fn resolve_category_accepts_keys_and_ids() {
        let c = corpus_of(vec![]);
        assert_eq!(c.resolve_category("blank"), Some(CategoryId::BLANK));
        assert_eq!(c.resolve_category("Blank"), Some(CategoryId::BLANK));
        assert_eq!(c.resolve_category("3"), Some(cat(3)));
        assert_eq!(c.resolve_category("18"), None);
        assert_eq!(c.resolve_category("nope"), None);
    }

    #[test]
    fn empty_filter_is_identity() {
        let doc = corpus_of(vec![sentence(0, &[1, 17]), sentence(1, &[17])])
            .documents
            .remove(0);
        assert_eq!(apply_filter(&doc, &FilterSpec::default()).unwrap(), doc);
    }

    #[test]
    fn excluding_blank_drops_blank_only_sentences() {
        let doc = corpus_of(vec![sentence(0, &[1, 17]), sentence(1, &[17]), sentence(2, &[3, 4])])
            .documents
            .remove(0);
        let out = apply_filter(&doc, &FilterSpec::exclude([CategoryId::BLANK])).unwrap();
        assert_eq!(out.sentences.len(), 2);
        assert_eq!(out.sentences[0].tags, vec![cat(1)]);
        assert_eq!(out.sentences[1].id, "s0002");
        assert_eq!(out.sentences[1].index, 1);
        assert_eq!(out.sentences[1].source_index, Some(2));
        assert_eq!(out.sentences[1].tags, vec![cat(3), cat(4)]);
    }

    #[test]
    fn range_restricts_sentences() {
        let doc = corpus_of((0..79).map(|i| sentence(i, &[1])).collect())
            .documents
            .remove(0);
        let spec = FilterSpec {
            sentence_range: Some([0, 10]),
            ..FilterSpec::default()
        };
        let out = apply_filter(&doc, &spec).unwrap();
        assert_eq!(out.sentences.len(), 10);
        assert_eq!(apply_filter(&out, &spec).unwrap(), out);
    }

    #[test]
    fn include_only_restricts_tags() {
        let doc = corpus_of(vec![sentence(0, &[1, 2]), sentence(1, &[3])])
            .documents
            .remove(0);
        let spec = FilterSpec {
            include_only_categories: Some([cat(2)].into()),
            ..FilterSpec::default()
        };
        let out = apply_filter(&doc, &spec).unwrap();
        assert_eq!(out.sentences.len(), 1);
        assert_eq!(out.sentences[0].tags, vec![cat(2)]);
    }

    #[test]
    fn invalid_filters_are_rejected() {
        let doc = corpus_of(vec![sentence(0, &[1])]).documents.remove(0);
        let unknown = FilterSpec::exclude([CategoryId(40)]);
        assert!(matches!(
            apply_filter(&doc, &unknown),
            Err(CorpusError::UnknownCategory(40))
        ));
        let overlap = FilterSpec {
            exclude_categories: [cat(1)].into(),
            include_only_categories: Some([cat(1)].into()),
            sentence_range: None,
        };
        assert!(matches!(
            apply_filter(&doc, &overlap),
            Err(CorpusError::InvalidFilter(_))
        ));
        let backwards = FilterSpec {
            sentence_range: Some([5, 2]),
            ..FilterSpec::default()
        };
        assert!(matches!(
            apply_filter(&doc, &backwards),
            Err(CorpusError::InvalidFilter(_))
        ));

        let mut reg = default_registry();
        reg.pop();
        assert!(FilterSpec::exclude([CategoryId::BLANK]).check(Some(&reg)).is_err());
    }

    #[test]
    fn filters_from_tokens() {
        let corpus = corpus_of(vec![sentence(0, &[1])]);
        let spec = FilterSpec::from_tokens(&corpus, Some("blank, 3"), Some("romantic"), Some("2,10")).unwrap();
        assert_eq!(spec.exclude_categories, [CategoryId::BLANK, cat(3)].into());
        assert_eq!(spec.include_only_categories, Some([cat(1)].into()));
        assert_eq!(spec.sentence_range, Some([2, 10]));
        assert!(FilterSpec::from_tokens(&corpus, None, None, None).unwrap().is_empty());
        assert!(FilterSpec::from_tokens(&corpus, Some("nope"), None, None).is_err());
        assert!(FilterSpec::from_tokens(&corpus, Some("99"), None, None).is_err());
        assert!(FilterSpec::from_tokens(&corpus, None, None, Some("4")).is_err());
        assert!(FilterSpec::from_tokens(&corpus, None, None, Some("9,4")).is_err());
    }
}
