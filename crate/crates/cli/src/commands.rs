use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use nearby_core::corpus::{validate as check_corpus, DocumentStats};
use nearby_core::synth::{default_documents, synthesize, DocumentPlan, SynthSpec};
use nearby_core::{
    agreement as compare, apply_filter, cooccurrence, graph_layout, matrix_layout, parse_corpus, serialize_corpus, svg,
    waffle_layout, AgreementReport, Corpus, CorpusError, EmbeddingConfig, FilterSpec, GraphParams, WaffleConfig,
};
use serde::Serialize;

use crate::table::Table;
use crate::{ExportArgs, Format, SynthArgs, ViewArg};

/// A command failure with its process exit code.
#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Usage(String),
    Io(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Validation(m) | Failure::Usage(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, content).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| Failure::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization is infallible");
    s.push('\n');
    s
}

fn no_svg(format: Format) -> Result<(), Failure> {
    match format {
        Format::Svg => Err(Failure::Usage("--format svg only applies to export".into())),
        _ => Ok(()),
    }
}

pub fn load(path: &Path) -> Result<Corpus, Failure> {
    parse_corpus(&read(path)?).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn stats_table(stats: &[DocumentStats]) -> String {
    let mut t = Table::new(["document", "sentences", "mean tags", "min", "max"]);
    for s in stats {
        t.row([
            s.document_id.clone(),
            s.sentence_count.to_string(),
            format!("{:.3}", s.mean_tags),
            s.min_tags.to_string(),
            s.max_tags.to_string(),
        ]);
    }
    t.render()
}

pub fn validate(path: &Path, format: Format, stats_only: bool) -> Result<(), Failure> {
    no_svg(format)?;
    let bytes = read(path)?;
    let corpus: Corpus = serde_json::from_slice(&bytes)
        .map_err(|e| Failure::Validation(format!("{}: malformed corpus: {e}", path.display())))?;
    let report = check_corpus(&corpus);
    let text = match (format, stats_only) {
        (Format::Json, true) => json(&report.stats),
        (Format::Json, false) => json(&report),
        (_, true) => stats_table(&report.stats),
        (_, false) => {
            let mut out = stats_table(&report.stats);
            for e in &report.errors {
                out.push_str(&format!("error {e}\n"));
            }
            for w in &report.warnings {
                out.push_str(&format!("warning {w}\n"));
            }
            out.push_str(&format!(
                "{} error(s), {} warning(s)\n",
                report.errors.len(),
                report.warnings.len()
            ));
            out
        }
    };
    write_output(None, &text)?;
    if report.is_ok() {
        Ok(())
    } else {
        Err(Failure::Validation(format!("{} failed validation", path.display())))
    }
}

pub fn export(path: &Path, args: &ExportArgs, format: Format, seed: u64) -> Result<(), Failure> {
    let corpus = load(path)?;
    let doc = corpus
        .document(&args.document)
        .ok_or_else(|| Failure::Usage(format!("no document {:?} in {}", args.document, path.display())))?;
    let filter = FilterSpec::from_tokens(
        &corpus,
        args.exclude.as_deref(),
        args.include.as_deref(),
        args.range.as_deref(),
    )
    .map_err(|e| Failure::Usage(e.to_string()))?;
    let doc = apply_filter(doc, &filter).map_err(|e: CorpusError| Failure::Usage(e.to_string()))?;
    let as_json = format == Format::Json;
    let usage = |e: &dyn fmt::Display| Failure::Usage(e.to_string());

    let text = match args.view {
        ViewArg::Graph => {
            let mut embedding = EmbeddingConfig {
                seed,
                ..EmbeddingConfig::default()
            };
            if let Some(p) = args.perplexity {
                embedding.perplexity = p;
            }
            if let Some(i) = args.iterations {
                embedding.iterations = i;
            }
            let mut params = GraphParams {
                edge_strategy: args.edges.into(),
                ..GraphParams::default()
            };
            params.deoverlap.seed = seed;
            let layout = graph_layout(&doc, &embedding, &params).map_err(|e| usage(&e))?;
            if as_json {
                json(&layout)
            } else {
                svg::graph_svg(&layout, &corpus.categories)
            }
        }
        ViewArg::Matrix => {
            let layout = matrix_layout(&cooccurrence(&doc), args.normalize.into(), args.order.into());
            if as_json {
                json(&layout)
            } else {
                svg::matrix_svg(&layout, &corpus.categories)
            }
        }
        ViewArg::Waffle => {
            let layout = waffle_layout(&doc, &WaffleConfig::default()).map_err(|e| usage(&e))?;
            if as_json {
                json(&layout)
            } else {
                svg::waffle_svg(&layout, &corpus.categories)
            }
        }
    };
    write_output(args.out.as_deref(), &text)
}

#[derive(Debug, Serialize)]
struct DocumentAgreement {
    document_id: String,
    #[serde(flatten)]
    report: AgreementReport,
}

pub fn agreement(path_a: &Path, path_b: &Path, format: Format) -> Result<(), Failure> {
    no_svg(format)?;
    let (a, b) = (load(path_a)?, load(path_b)?);
    let ids = |c: &Corpus| c.documents.iter().map(|d| d.id.clone()).collect::<Vec<_>>();
    let (mut ids_a, mut ids_b) = (ids(&a), ids(&b));
    ids_a.sort();
    ids_b.sort();
    if ids_a != ids_b {
        return Err(Failure::Validation(format!(
            "document ids differ: {ids_a:?} vs {ids_b:?}"
        )));
    }
    let mut reports = Vec::new();
    for doc in &a.documents {
        let other = b.document(&doc.id).expect("ids checked above");
        let report = compare(doc, other).map_err(|e| Failure::Validation(format!("document {}: {e}", doc.id)))?;
        reports.push(DocumentAgreement {
            document_id: doc.id.clone(),
            report,
        });
    }

    let text = if format == Format::Json {
        json(&reports)
    } else {
        let mut summary = Table::new(["document", "sentences", "mean jaccard"]);
        for r in &reports {
            summary.row([
                r.document_id.clone(),
                r.report.per_sentence_jaccard.len().to_string(),
                format!("{:.3}", r.report.mean_jaccard),
            ]);
        }
        let mut header = vec!["category".to_string()];
        header.extend(reports.iter().map(|r| r.document_id.clone()));
        let mut per_category = Table::new(header);
        for c in &a.categories {
            let mut row = vec![c.key.clone()];
            for r in &reports {
                let observed = r
                    .report
                    .per_category
                    .iter()
                    .find(|x| x.category == c.id)
                    .map_or(1.0, |x| x.observed);
                row.push(format!("{observed:.3}"));
            }
            per_category.row(row);
        }
        format!("{}\n{}", summary.render(), per_category.render())
    };
    write_output(None, &text)
}

pub fn synth(args: &SynthArgs, format: Format, seed: u64) -> Result<(), Failure> {
    no_svg(format)?;
    let documents = match &args.sizes {
        None => default_documents(),
        Some(sizes) => {
            if sizes.is_empty() || sizes.contains(&0) {
                return Err(Failure::Usage("--sizes must list positive sentence counts".into()));
            }
            let defaults = default_documents();
            if sizes.len() == defaults.len() {
                defaults
                    .into_iter()
                    .zip(sizes)
                    .map(|(plan, &sentences)| DocumentPlan { sentences, ..plan })
                    .collect()
            } else {
                sizes
                    .iter()
                    .enumerate()
                    .map(|(i, &sentences)| DocumentPlan {
                        id: format!("text{}", i + 1),
                        title: format!("Synthetic text {}", i + 1),
                        sentences,
                    })
                    .collect()
            }
        }
    };
    let spec = SynthSpec {
        documents,
        mean_tags: args.mean_tags,
        min_tags: args.min_tags,
        max_tags: args.max_tags,
        blank_rate: args.blank_rate,
        seed,
    };
    let corpus = synthesize(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut text = serialize_corpus(&corpus);
    text.push('\n');
    write_output(args.out.as_deref(), &text)
}

pub fn serve(path: PathBuf, port: u16, static_dir: Option<PathBuf>) -> Result<(), Failure> {
    let corpus = load(&path)?;
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .with_writer(std::io::stderr)
        .init();
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Io(e.to_string()))?;
    runtime
        .block_on(nearby_service::serve(corpus, port, static_dir))
        .map_err(|e| Failure::Io(format!("server failed: {e}")))
}
