//! HTTP API over a single, immutable corpus snapshot.
//!
//! Layouts are computed on first request and kept in memory, keyed by the
//! hash of the fully resolved request.

pub mod cache;
pub mod error;
pub mod request;

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::rejection::QueryRejection;
use axum::extract::{Path as UrlPath, Query, State};
use axum::http::{header, Uri};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use nearby_core::{combination_count, parse_corpus, summarize, Category, CombinationMatch, Corpus, DocumentSummary};
use serde::Serialize;
use tower_http::services::ServeDir;

pub use cache::LayoutCache;
pub use error::{ApiError, ErrorBody};
pub use request::{LayoutRequest, View};

pub const DEFAULT_PORT: u16 = 8080;

#[derive(Debug, Clone)]
pub struct AppState {
    pub corpus: Arc<Corpus>,
    pub cache: Arc<LayoutCache>,
}

impl AppState {
    pub fn new(corpus: Corpus) -> Self {
        Self {
            corpus: Arc::new(corpus),
            cache: Arc::new(LayoutCache::new()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TextInfo {
    pub id: String,
    pub title: String,
    pub sentence_count: usize,
}

#[derive(Debug, Serialize)]
pub struct TextList {
    pub categories: Vec<Category>,
    pub texts: Vec<TextInfo>,
}

#[derive(Debug, Serialize)]
pub struct SentenceDetail {
    pub id: String,
    pub index: usize,
    pub text: String,
    pub tags: Vec<nearby_core::CategoryId>,
    pub combination_count: usize,
}

async fn list_texts(State(state): State<AppState>) -> Json<TextList> {
    let corpus = &state.corpus;
    Json(TextList {
        categories: corpus.categories.clone(),
        texts: corpus
            .documents
            .iter()
            .map(|d| TextInfo {
                id: d.id.clone(),
                title: d.title.clone(),
                sentence_count: d.sentences.len(),
            })
            .collect(),
    })
}

async fn summary(
    State(state): State<AppState>,
    UrlPath(id): UrlPath<String>,
    query: Result<Query<HashMap<String, String>>, QueryRejection>,
) -> Result<Json<DocumentSummary>, ApiError> {
    let corpus = &state.corpus;
    let doc = corpus.document(&id).ok_or_else(|| ApiError::unknown_document(&id))?;
    let Query(params) = query.map_err(ApiError::invalid_filter)?;
    if let Some(unknown) = params
        .keys()
        .find(|k| !matches!(k.as_str(), "exclude" | "include" | "range"))
    {
        return Err(ApiError::invalid_filter(format!("unknown query parameter {unknown:?}")));
    }
    let get = |k: &str| params.get(k).map(String::as_str);
    let filter = nearby_core::FilterSpec::from_tokens(corpus, get("exclude"), get("include"), get("range"))
        .map_err(ApiError::invalid_filter)?;
    let filtered = request::filter_document(corpus, doc, &filter)?;
    Ok(Json(summarize(&filtered)))
}

async fn sentence(
    State(state): State<AppState>,
    UrlPath((id, sid)): UrlPath<(String, String)>,
) -> Result<Json<SentenceDetail>, ApiError> {
    let doc = state
        .corpus
        .document(&id)
        .ok_or_else(|| ApiError::unknown_document(&id))?;
    let s = doc
        .sentence(&sid)
        .ok_or_else(|| ApiError::unknown_sentence(&id, &sid))?;
    let count = if s.tags.is_empty() {
        0
    } else {
        combination_count(doc, &s.tags, CombinationMatch::Exact).map_err(ApiError::internal)?
    };
    Ok(Json(SentenceDetail {
        id: s.id.clone(),
        index: s.index,
        text: s.text.clone(),
        tags: s.tags.clone(),
        combination_count: count,
    }))
}

async fn layout(State(state): State<AppState>, UrlPath(id): UrlPath<String>, body: Bytes) -> Response {
    match compute_layout(&state, &id, &body).await {
        Ok(payload) => ([(header::CONTENT_TYPE, "application/json")], payload).into_response(),
        Err(e) => e.into_response(),
    }
}

/// Resolves, looks up and if necessary computes a layout payload.
pub async fn compute_layout(state: &AppState, document_id: &str, body: &[u8]) -> Result<Bytes, ApiError> {
    if state.corpus.document(document_id).is_none() {
        return Err(ApiError::unknown_document(document_id));
    }
    let req = LayoutRequest::parse(document_id, body)?;
    let key = req.cache_key();
    if let Some(hit) = state.cache.get(&key) {
        tracing::debug!(%key, "layout cache hit");
        return Ok(hit);
    }
    let doc = req.filtered_document(&state.corpus)?;
    let payload = tokio::task::spawn_blocking(move || req.render(&doc))
        .await
        .map_err(ApiError::internal)??;
    tracing::debug!(%key, bytes = payload.len(), "layout computed");
    Ok(state.cache.insert(key, Bytes::from(payload)))
}

async fn healthz() -> &'static str {
    "ok"
}

async fn not_found(uri: Uri) -> ApiError {
    ApiError::not_found(uri.path())
}

/// The API routes. With a static directory, unmatched paths are served from
/// it instead of returning the 404 envelope.
pub fn router(state: AppState, static_dir: Option<&Path>) -> Router {
    let api = Router::new()
        .route("/api/texts", get(list_texts))
        .route("/api/texts/{id}/summary", get(summary))
        .route("/api/texts/{id}/sentences/{sid}", get(sentence))
        .route("/api/texts/{id}/layout", post(layout))
        .route("/api/{*rest}", get(not_found).post(not_found))
        .route("/healthz", get(healthz))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.fallback(not_found),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ServeError {
    #[error("cannot read corpus {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid corpus {path}: {source}")]
    Corpus {
        path: PathBuf,
        source: nearby_core::CorpusError,
    },
}

pub fn load_corpus(path: &Path) -> Result<Corpus, ServeError> {
    let bytes = std::fs::read(path).map_err(|source| ServeError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_corpus(&bytes).map_err(|source| ServeError::Corpus {
        path: path.to_path_buf(),
        source,
    })
}

/// Serves the API for `corpus` on all interfaces until ctrl-c.
pub async fn serve(corpus: Corpus, port: u16, static_dir: Option<PathBuf>) -> std::io::Result<()> {
    tracing::info!(documents = corpus.documents.len(), "corpus loaded");
    let app = router(AppState::new(corpus), static_dir.as_deref());
    let addr = SocketAddr::from(([0, 0, 0, 0], port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(%addr, "listening");
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
