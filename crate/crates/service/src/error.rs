use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;

/// Uniform error envelope: `{"code", "message", "detail"}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorBody {
    pub code: &'static str,
    pub message: String,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApiError {
    pub status: StatusCode,
    pub body: ErrorBody,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>, detail: Option<String>) -> Self {
        Self {
            status,
            body: ErrorBody {
                code,
                message: message.into(),
                detail,
            },
        }
    }

    pub fn unknown_document(id: &str) -> Self {
        Self::new(
            StatusCode::NOT_FOUND,
            "unknown_document",
            format!("no document with id {id:?}"),
            None,
        )
    }

    pub fn unknown_sentence(doc: &str, id: &str) -> Self {
        Self::new(
            StatusCode::NOT_FOUND,
            "unknown_sentence",
            format!("document {doc:?} has no sentence {id:?}"),
            None,
        )
    }

    pub fn not_found(path: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not_found", format!("no route for {path}"), None)
    }

    pub fn invalid_filter(detail: impl ToString) -> Self {
        Self::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            "invalid_filter",
            "filter rejected",
            Some(detail.to_string()),
        )
    }

    pub fn invalid_config(detail: impl ToString) -> Self {
        Self::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            "invalid_config",
            "configuration rejected",
            Some(detail.to_string()),
        )
    }

    pub fn malformed_body(detail: impl ToString) -> Self {
        Self::new(
            StatusCode::BAD_REQUEST,
            "malformed_body",
            "request body is not a valid layout request",
            Some(detail.to_string()),
        )
    }

    pub fn internal(detail: impl ToString) -> Self {
        Self::new(
            StatusCode::INTERNAL_SERVER_ERROR,
            "internal",
            "layout computation failed",
            Some(detail.to_string()),
        )
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}
