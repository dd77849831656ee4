use axum::body::{Body, Bytes};
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use nearby_core::synth::{synthesize, DocumentPlan, SynthSpec};
use nearby_core::{apply_filter, summarize, CategoryId, Corpus, FilterSpec, GraphLayout, WaffleLayout};
use nearby_service::{router, AppState};
use serde_json::{json, Value};
use tower::ServiceExt;

fn corpus() -> Corpus {
    let plan = |id: &str, sentences| DocumentPlan {
        id: id.into(),
        title: id.to_uppercase(),
        sentences,
    };
    synthesize(&SynthSpec {
        documents: vec![plan("small", 60), plan("tiny", 3)],
        seed: 5,
        ..SynthSpec::default()
    })
    .unwrap()
}

fn app() -> (Router, Corpus) {
    let c = corpus();
    (router(AppState::new(c.clone()), None), c)
}

async fn send(app: &Router, req: Request<Body>) -> (StatusCode, Bytes) {
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    (status, resp.into_body().collect().await.unwrap().to_bytes())
}

async fn get(app: &Router, uri: &str) -> (StatusCode, Value) {
    let (status, body) = send(app, Request::get(uri).body(Body::empty()).unwrap()).await;
    (status, serde_json::from_slice(&body).unwrap_or(Value::Null))
}

async fn post(app: &Router, uri: &str, body: impl Into<Body>) -> (StatusCode, Bytes) {
    let req = Request::post(uri)
        .header("content-type", "application/json")
        .body(body.into())
        .unwrap();
    send(app, req).await
}

#[tokio::test]
async fn lists_texts_with_category_metadata() {
    let (app, c) = app();
    let (status, body) = get(&app, "/api/texts").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["texts"].as_array().unwrap().len(), 2);
    assert_eq!(body["texts"][0]["sentence_count"], 60);
    assert_eq!(body["categories"].as_array().unwrap().len(), 17);
    assert_eq!(body["categories"][16]["color"], c.categories[16].color.as_str());
    let (status, _) = get(&app, "/healthz").await;
    assert_eq!(status, StatusCode::OK);
}

#[tokio::test]
async fn summary_matches_filter_composition() {
    let (app, c) = app();
    let doc = c.document("small").unwrap();
    let cases = [
        ("", FilterSpec::default()),
        ("?exclude=blank", FilterSpec::exclude([CategoryId::BLANK])),
        (
            "?exclude=1,empirical&range=10,40",
            FilterSpec {
                exclude_categories: [CategoryId::new(1).unwrap(), CategoryId::new(3).unwrap()].into(),
                sentence_range: Some([10, 40]),
                ..FilterSpec::default()
            },
        ),
        (
            "?include=2,3,4",
            FilterSpec {
                include_only_categories: Some((2..=4).map(|i| CategoryId::new(i).unwrap()).collect()),
                ..FilterSpec::default()
            },
        ),
    ];
    for (query, spec) in cases {
        let (status, body) = get(&app, &format!("/api/texts/small/summary{query}")).await;
        assert_eq!(status, StatusCode::OK, "{query}");
        let expected = serde_json::to_value(summarize(&apply_filter(doc, &spec).unwrap())).unwrap();
        assert_eq!(body, expected, "{query}");
    }
    let (_, body) = get(&app, "/api/texts/small/summary?exclude=blank").await;
    assert_eq!(body["per_category"][16]["count"], 0);
}

#[tokio::test]
async fn sentence_details_count_exact_combinations() {
    let (app, c) = app();
    let doc = c.document("small").unwrap();
    for s in doc.sentences.iter().step_by(7) {
        let (status, body) = get(&app, &format!("/api/texts/small/sentences/{}", s.id)).await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(body["text"], s.text.as_str());
        assert_eq!(body["tags"], serde_json::to_value(&s.tags).unwrap());
        let brute = doc.sentences.iter().filter(|o| o.tags == s.tags).count();
        assert_eq!(body["combination_count"], brute);
    }
}

#[tokio::test]
async fn error_envelopes() {
    let (app, _) = app();
    let (status, body) = get(&app, "/api/texts/nope/summary").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["code"], "unknown_document");
    assert!(body["message"].is_string());

    let (status, body) = get(&app, "/api/texts/small/sentences/s9999").await;
    assert_eq!(
        (status, body["code"].as_str()),
        (StatusCode::NOT_FOUND, Some("unknown_sentence"))
    );

    let (status, body) = get(&app, "/api/texts/small/summary?exclude=bogus").await;
    assert_eq!(
        (status, body["code"].as_str()),
        (StatusCode::UNPROCESSABLE_ENTITY, Some("invalid_filter"))
    );
    let (status, _) = get(&app, "/api/texts/small/summary?range=5,1").await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);

    let (status, body) = get(&app, "/api/nothing").await;
    assert_eq!(
        (status, body["code"].as_str()),
        (StatusCode::NOT_FOUND, Some("not_found"))
    );

    let (status, body) = post(&app, "/api/texts/nope/layout", r#"{"view":"matrix"}"#).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(
        serde_json::from_slice::<Value>(&body).unwrap()["code"],
        "unknown_document"
    );

    let (status, body) = post(&app, "/api/texts/small/layout", "{oops").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(
        serde_json::from_slice::<Value>(&body).unwrap()["code"],
        "malformed_body"
    );

    let bad_filter = json!({"view": "waffle", "filter": {"exclude_categories": [99]}});
    let (status, body) = post(&app, "/api/texts/small/layout", bad_filter.to_string()).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(
        serde_json::from_slice::<Value>(&body).unwrap()["code"],
        "invalid_filter"
    );

    let bad_config = json!({"view": "graph", "embedding_config": {"iterations": 0}});
    let (status, body) = post(&app, "/api/texts/small/layout", bad_config.to_string()).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(
        serde_json::from_slice::<Value>(&body).unwrap()["code"],
        "invalid_config"
    );
}

#[tokio::test]
async fn layouts_are_byte_identical_across_cache_states() {
    let c = corpus();
    let warm = router(AppState::new(c.clone()), None);
    let body = json!({
        "view": "graph",
        "filter": {"exclude_categories": [17]},
        "embedding_config": {"iterations": 300},
        "seed": 42
    })
    .to_string();
    let (s1, first) = post(&warm, "/api/texts/small/layout", body.clone()).await;
    let (s2, second) = post(&warm, "/api/texts/small/layout", body.clone()).await;
    let cold = router(AppState::new(c.clone()), None);
    let (s3, third) = post(&cold, "/api/texts/small/layout", body).await;
    assert_eq!((s1, s2, s3), (StatusCode::OK, StatusCode::OK, StatusCode::OK));
    assert_eq!(first, second);
    assert_eq!(first, third);

    let graph: GraphLayout = serde_json::from_slice(&first).unwrap();
    let doc = c.document("small").unwrap();
    for node in &graph.nodes {
        let original = doc.sentence(&node.sentence_id).unwrap();
        assert_ne!(original.tags, vec![CategoryId::BLANK]);
        assert!(node.tag_dots.iter().all(|d| d.category != CategoryId::BLANK));
    }
}

#[tokio::test]
async fn every_view_renders_including_tiny_documents() {
    let (app, c) = app();
    for doc in ["small", "tiny"] {
        for view in ["graph", "matrix", "waffle"] {
            let body = json!({"view": view, "embedding_config": {"iterations": 200}}).to_string();
            let (status, payload) = post(&app, &format!("/api/texts/{doc}/layout"), body).await;
            assert_eq!(
                status,
                StatusCode::OK,
                "{doc} {view}: {}",
                String::from_utf8_lossy(&payload)
            );
        }
    }
    let (_, payload) = post(&app, "/api/texts/small/layout", r#"{"view":"waffle"}"#).await;
    let waffle: WaffleLayout = serde_json::from_slice(&payload).unwrap();
    assert_eq!(waffle.cell_count(), c.document("small").unwrap().total_tags());
}
