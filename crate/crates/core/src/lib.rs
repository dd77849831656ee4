//! Analytics and layout engine for sentence corpora annotated with categories
//! from a fixed 17-entry scheme.
//!
//! The pipeline runs from a validated [`corpus::Corpus`] through tag
//! statistics ([`analytics`]) and a t-SNE embedding of tag vectors
//! ([`embedding`]) to view geometry ([`layout`]) and SVG output ([`svg`]).

pub mod analytics;
pub mod corpus;
pub mod embedding;
pub mod layout;
pub mod svg;
pub mod synth;

pub use analytics::{
    agreement, combination_count, cooccurrence, summarize, tag_frequencies, AgreementReport, CoOccurrenceMatrix,
    CombinationMatch, DocumentSummary,
};
pub use corpus::{
    apply_filter, default_registry, parse_corpus, serialize_corpus, validate, Category, CategoryId, Corpus,
    CorpusError, Document, FilterSpec, Sentence, ValidationReport, NUM_CATEGORIES,
};
pub use embedding::{tsne_embed, vectorize, EmbeddingConfig, EmbeddingError, EmbeddingResult, Metric, TagVector};
pub use layout::{
    graph_layout, matrix_layout, waffle_layout, EdgeStrategy, GraphLayout, GraphParams, LayoutError, MatrixLayout,
    MatrixOrder, Normalization, WaffleConfig, WaffleLayout,
};
