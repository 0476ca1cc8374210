//! Local HTTP endpoint around the engine.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::EngineConfig;
use crate::geometry::Size;
use crate::metrics::ConstraintReport;
use crate::model::spec::chart_spec_from_value;
use crate::operators::OperatorLogEntry;
use crate::pipeline::{generalize, PipelineError};
use crate::render::render;

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GeneralizeRequest {
    pub spec: Value,
    pub width: f64,
    pub height: f64,
    #[serde(default)]
    pub config_overrides: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneralizeResponse {
    pub svg: String,
    pub log: Vec<OperatorLogEntry>,
    pub report: ConstraintReport,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ServiceError {
    #[serde(skip)]
    pub status: u16,
    pub error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

impl ServiceError {
    fn bad_request(path: Option<String>, error: impl Into<String>) -> Self {
        Self {
            status: 400,
            error: error.into(),
            path,
        }
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}

/// Handles one `/generalize` body. Pure apart from timing.
pub fn handle_generalize(body: &[u8], base: &EngineConfig) -> Result<GeneralizeResponse, ServiceError> {
    if body.iter().all(|b| b.is_ascii_whitespace()) {
        return Err(ServiceError::bad_request(None, "request body is empty"));
    }
    let de = &mut serde_json::Deserializer::from_slice(body);
    let request: GeneralizeRequest = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        ServiceError::bad_request(Some(path), e.into_inner().to_string())
    })?;
    let spec = chart_spec_from_value(request.spec).map_err(|e| {
        let path = if e.path.is_empty() || e.path == "." {
            "spec".to_string()
        } else {
            format!("spec.{}", e.path)
        };
        ServiceError::bad_request(Some(path), e.kind.to_string())
    })?;
    let config = match &request.config_overrides {
        Some(overrides) => base.with_overrides(overrides).map_err(|e| {
            ServiceError::bad_request(Some("configOverrides".into()), e.to_string())
        })?,
        None => *base,
    };
    let chart = generalize(&spec, Size::new(request.width, request.height), &config).map_err(|e| match e {
        PipelineError::Spec(s) => ServiceError::bad_request(Some(format!("spec.{}", s.path)), s.kind.to_string()),
        other => ServiceError {
            status: 422,
            error: other.to_string(),
            path: None,
        },
    })?;
    Ok(GeneralizeResponse {
        svg: render(&chart),
        elapsed_ms: chart.elapsed_ms,
        log: chart.log,
        report: chart.report,
    })
}

async fn generalize_route(State(config): State<Arc<EngineConfig>>, body: Bytes) -> Response {
    let result = tokio::task::spawn_blocking(move || handle_generalize(&body, &config)).await;
    match result {
        Ok(Ok(resp)) => Json(resp).into_response(),
        Ok(Err(e)) => e.into_response(),
        Err(join) => ServiceError {
            status: 500,
            error: join.to_string(),
            path: None,
        }
        .into_response(),
    }
}

async fn health() -> &'static str {
    "ok"
}

pub fn router(config: EngineConfig) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/generalize", post(generalize_route))
        .with_state(Arc::new(config))
}

pub async fn serve(addr: SocketAddr, config: EngineConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(config)).await
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn body(v: Value) -> Vec<u8> {
        serde_json::to_vec(&v).unwrap()
    }

    fn spec() -> Value {
        json!({"series": [{"name": "a", "points": [{"x": 0, "y": 1}, {"x": 1, "y": 3}, {"x": 2, "y": 2}]}]})
    }

    #[test]
    fn empty_body_is_bad_request() {
        assert_eq!(handle_generalize(b"", &EngineConfig::default()).unwrap_err().status, 400);
    }

    #[test]
    fn malformed_spec_reports_path() {
        let bad = json!({"spec": {"series": [{"name": "a", "points": [{"x": 0, "y": "high"}]}]}, "width": 100, "height": 100});
        let err = handle_generalize(&body(bad), &EngineConfig::default()).unwrap_err();
        assert_eq!(err.status, 400);
        assert_eq!(err.path.as_deref(), Some("spec.series[0].points[0].y"));
    }

    #[test]
    fn missing_width_reports_path() {
        let err = handle_generalize(&body(json!({"spec": spec(), "height": 10})), &EngineConfig::default()).unwrap_err();
        assert_eq!(err.status, 400);
    }

    #[test]
    fn tiny_target_is_unprocessable() {
        let err = handle_generalize(&body(json!({"spec": spec(), "width": 1, "height": 1})), &EngineConfig::default())
            .unwrap_err();
        assert_eq!(err.status, 422);
    }

    #[test]
    fn overrides_apply() {
        let ok = handle_generalize(
            &body(json!({"spec": spec(), "width": 300, "height": 200, "configOverrides": {"seed": 4}})),
            &EngineConfig::default(),
        );
        assert!(ok.is_ok());
        let bad = handle_generalize(
            &body(json!({"spec": spec(), "width": 300, "height": 200, "configOverrides": {"bogus": 1}})),
            &EngineConfig::default(),
        )
        .unwrap_err();
        assert_eq!(bad.path.as_deref(), Some("configOverrides"));
    }
}
