//! Layout requests: parsing, default resolution, cache keys and computation.

use nearby_core::layout::{GraphParams, MatrixOrder, Normalization, WaffleConfig};
use nearby_core::{
    apply_filter, cooccurrence, graph_layout, matrix_layout, waffle_layout, Corpus, Document, EmbeddingConfig,
    FilterSpec, LayoutError,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::ApiError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum View {
    Graph,
    Matrix,
    Waffle,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MatrixParams {
    pub normalization: Normalization,
    pub order: MatrixOrder,
}

/// Body of `POST /api/texts/{id}/layout`. Sub-objects stay untyped until the
/// view is known so that shape errors there map to 422 rather than 400.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLayoutRequest {
    view: View,
    #[serde(default)]
    filter: Value,
    #[serde(default)]
    embedding_config: Value,
    #[serde(default)]
    layout_params: Value,
    #[serde(default)]
    seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "view", content = "params", rename_all = "snake_case")]
pub enum ViewParams {
    Graph {
        embedding: EmbeddingConfig,
        layout: GraphParams,
    },
    Matrix(MatrixParams),
    Waffle(WaffleConfig),
}

/// A layout request with every default filled in. Its canonical JSON
/// serialization is the cache key.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayoutRequest {
    pub document_id: String,
    pub filter: FilterSpec,
    pub params: ViewParams,
    pub seed: u64,
}

fn typed<T: for<'de> Deserialize<'de> + Default>(value: Value) -> Result<T, serde_json::Error> {
    if value.is_null() {
        Ok(T::default())
    } else {
        serde_json::from_value(value)
    }
}

impl LayoutRequest {
    pub fn parse(document_id: &str, body: &[u8]) -> Result<Self, ApiError> {
        let raw: RawLayoutRequest = serde_json::from_slice(body).map_err(ApiError::malformed_body)?;
        let filter: FilterSpec = typed(raw.filter).map_err(ApiError::invalid_filter)?;
        let params = match raw.view {
            View::Graph => {
                let mut embedding: EmbeddingConfig = typed(raw.embedding_config).map_err(ApiError::invalid_config)?;
                let mut layout: GraphParams = typed(raw.layout_params).map_err(ApiError::invalid_config)?;
                embedding.seed = raw.seed;
                layout.deoverlap.seed = raw.seed;
                embedding.validate().map_err(ApiError::invalid_config)?;
                layout.validate().map_err(ApiError::invalid_config)?;
                ViewParams::Graph { embedding, layout }
            }
            View::Matrix => ViewParams::Matrix(typed(raw.layout_params).map_err(ApiError::invalid_config)?),
            View::Waffle => ViewParams::Waffle(typed(raw.layout_params).map_err(ApiError::invalid_config)?),
        };
        Ok(Self {
            document_id: document_id.to_string(),
            filter,
            params,
            seed: raw.seed,
        })
    }

    pub fn view(&self) -> View {
        match self.params {
            ViewParams::Graph { .. } => View::Graph,
            ViewParams::Matrix(_) => View::Matrix,
            ViewParams::Waffle(_) => View::Waffle,
        }
    }

    pub fn cache_key(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("request serialization is infallible");
        hex::encode(Sha256::digest(&canonical))
    }

    /// Resolves the document and filter against the corpus.
    pub fn filtered_document(&self, corpus: &Corpus) -> Result<Document, ApiError> {
        let doc = corpus
            .document(&self.document_id)
            .ok_or_else(|| ApiError::unknown_document(&self.document_id))?;
        filter_document(corpus, doc, &self.filter)
    }

    /// Computes the JSON payload for an already filtered document.
    pub fn render(&self, doc: &Document) -> Result<Vec<u8>, ApiError> {
        let to_json = |r: Result<Vec<u8>, serde_json::Error>| r.map_err(ApiError::internal);
        match &self.params {
            ViewParams::Graph { embedding, layout } => {
                let g = graph_layout(doc, embedding, layout).map_err(layout_error)?;
                to_json(serde_json::to_vec(&g))
            }
            ViewParams::Matrix(p) => {
                let m = matrix_layout(&cooccurrence(doc), p.normalization, p.order);
                to_json(serde_json::to_vec(&m))
            }
            ViewParams::Waffle(cfg) => {
                let w = waffle_layout(doc, cfg).map_err(layout_error)?;
                to_json(serde_json::to_vec(&w))
            }
        }
    }
}

pub fn filter_document(corpus: &Corpus, doc: &Document, filter: &FilterSpec) -> Result<Document, ApiError> {
    filter
        .check(Some(&corpus.categories))
        .map_err(ApiError::invalid_filter)?;
    apply_filter(doc, filter).map_err(ApiError::invalid_filter)
}

fn layout_error(e: LayoutError) -> ApiError {
    ApiError::invalid_config(e)
}
