use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nearby_core::synth::{synthesize, DocumentPlan, SynthSpec};
use nearby_core::{serialize_corpus, Corpus};
use serde_json::Value;
use tempfile::TempDir;

fn nearby(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nearby"))
        .args(args)
        .env_remove("NEARBY_CORPUS")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn small_corpus() -> Corpus {
    synthesize(&SynthSpec {
        documents: vec![DocumentPlan {
            id: "small".into(),
            title: "Small".into(),
            sentences: 40,
        }],
        seed: 9,
        ..SynthSpec::default()
    })
    .unwrap()
}

fn write(dir: &TempDir, name: &str, content: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, content).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.json", &serialize_corpus(&small_corpus()));
    let out = nearby(&["validate", s(&good)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("small"));

    let mut bad: Value = serde_json::from_str(&serialize_corpus(&small_corpus())).unwrap();
    bad["documents"][0]["sentences"][3]["tags"] = Value::Array(vec![]);
    let bad = write(&dir, "bad.json", &bad.to_string());
    let out = nearby(&["validate", s(&bad)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("empty_tags"));

    let out = nearby(&["--format", "json", "validate", s(&bad)]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["errors"][0]["rule"], "empty_tags");

    let garbage = write(&dir, "garbage.json", "{not json");
    assert_eq!(code(&nearby(&["validate", s(&garbage)])), 1);
    assert_eq!(code(&nearby(&["validate", s(&dir.path().join("missing.json"))])), 3);
    assert_eq!(code(&nearby(&["validate"])), 2);
    assert_eq!(code(&nearby(&["--bogus", "validate"])), 2);

    let out = nearby(&["--corpus", s(&good), "--format", "json", "stats"]);
    let stats: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(stats[0]["sentence_count"], 40);
}

#[test]
fn synth_defaults_and_determinism() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(code(&nearby(&["--seed", "7", "synth", "--out", s(&a)])), 0);
    assert_eq!(code(&nearby(&["--seed", "7", "synth", "--out", s(&b)])), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let corpus: Corpus = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    let sizes: Vec<usize> = corpus.documents.iter().map(|d| d.sentences.len()).collect();
    assert_eq!(sizes, [382, 374, 800, 79]);
    assert!(corpus
        .documents
        .iter()
        .flat_map(|d| &d.sentences)
        .all(|s| (1..=5).contains(&s.tags.len())));
    assert_eq!(code(&nearby(&["validate", s(&a)])), 0);

    let out = nearby(&["synth", "--sizes", "10,20", "--max-tags", "3"]);
    let corpus: Corpus = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(corpus.documents.len(), 2);
    assert_eq!(corpus.documents[1].sentences.len(), 20);

    assert_eq!(code(&nearby(&["synth", "--mean-tags", "9"])), 2);
    assert_eq!(code(&nearby(&["synth", "--min-tags", "4", "--max-tags", "2"])), 2);
    assert_eq!(code(&nearby(&["synth", "--sizes", "10,0"])), 2);
}

#[test]
fn exports() {
    let dir = TempDir::new().unwrap();
    let corpus = small_corpus();
    let path = write(&dir, "c.json", &serialize_corpus(&corpus));
    let c = s(&path);

    let g1 = dir.path().join("g1.svg");
    let g2 = dir.path().join("g2.svg");
    for out in [&g1, &g2] {
        let o = nearby(&[
            "--corpus",
            c,
            "--seed",
            "42",
            "export",
            "--document",
            "small",
            "--view",
            "graph",
            "--exclude",
            "blank",
            "--iterations",
            "300",
            "--out",
            s(out),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let svg = std::fs::read_to_string(&g1).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&g2).unwrap());
    assert!(svg.starts_with("<svg"));

    let o = nearby(&["--corpus", c, "export", "--document", "small", "--view", "waffle"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o).matches(r#"class="cell""#).count(),
        corpus.documents[0].total_tags()
    );

    let o = nearby(&[
        "--corpus",
        c,
        "--format",
        "json",
        "export",
        "--document",
        "small",
        "--view",
        "matrix",
        "--normalize",
        "conditional",
        "--order",
        "frequency",
    ]);
    assert_eq!(code(&o), 0);
    let m: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(m["normalization"], "conditional");
    for row in m["values"].as_array().unwrap() {
        assert!(row.as_array().unwrap().iter().all(|v| v.as_f64().unwrap() <= 1.0));
    }

    let usage = |extra: &[&str]| {
        let mut args = vec!["--corpus", c, "export", "--document", "small"];
        args.extend_from_slice(extra);
        code(&nearby(&args))
    };
    assert_eq!(usage(&["--view", "pie"]), 2);
    assert_eq!(usage(&["--view", "graph", "--exclude", "nonsense"]), 2);
    assert_eq!(usage(&["--view", "graph", "--perplexity", "-3"]), 2);
    assert_eq!(
        code(&nearby(&[
            "--corpus",
            c,
            "export",
            "--document",
            "nope",
            "--view",
            "matrix"
        ])),
        2
    );
    let unwritable = dir.path().join("no/such/dir/out.svg");
    assert_eq!(usage(&["--view", "matrix", "--out", s(&unwritable)]), 3);
}

fn annotated(tags: &[&[u8]]) -> String {
    let sentences: Vec<Value> = tags
        .iter()
        .enumerate()
        .map(|(i, t)| serde_json::json!({"id": format!("s{i}"), "index": i, "text": "x", "tags": t}))
        .collect();
    let categories = serde_json::to_value(nearby_core::default_registry()).unwrap();
    serde_json::json!({
        "schema_version": 1,
        "categories": categories,
        "documents": [{"id": "d", "title": "D", "sentences": sentences}]
    })
    .to_string()
}

#[test]
fn agreement_reports() {
    let dir = TempDir::new().unwrap();
    let ab = write(&dir, "ab.json", &annotated(&[&[1u8, 2][..]; 6]));
    let ac = write(&dir, "ac.json", &annotated(&[&[1u8, 3][..]; 6]));
    let de = write(&dir, "de.json", &annotated(&[&[4u8, 5][..]; 6]));
    let short = write(&dir, "short.json", &annotated(&[&[1u8, 2][..]; 5]));

    let o = nearby(&["agreement", s(&ab), s(&ab)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("1.000"));
    assert!(stdout(&nearby(&["agreement", s(&ab), s(&de)])).contains("0.000"));
    assert!(stdout(&nearby(&["agreement", s(&ab), s(&ac)])).contains("0.333"));

    let o = nearby(&["--format", "json", "agreement", s(&ab), s(&ac)]);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r[0]["mean_jaccard"].as_f64().unwrap(), 1.0 / 3.0);

    assert_eq!(code(&nearby(&["agreement", s(&ab), s(&short)])), 1);
}
