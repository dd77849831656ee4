//! Geometry for the three document views: the glyph graph, the co-occurrence
//! heatmap and the reading-order waffle.

mod deoverlap;
mod edges;
mod glyph;
mod matrix;
mod waffle;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use deoverlap::{deoverlap, max_overlap_depth, DeoverlapParams, Deoverlapped};
pub use edges::{category_edges, euclidean_mst, EdgeMap, EdgeStrategy};
pub use glyph::{glyph_spec, Glyph, TagDot, DOT_ORBIT, HAIRLINE, MAX_DOT};
pub use matrix::{matrix_layout, MatrixLayout, MatrixOrder, Normalization};
pub use waffle::{waffle_layout, WaffleBlock, WaffleCell, WaffleConfig, WaffleLayout};

use crate::corpus::Document;
use crate::embedding::{tsne_embed, vectorize, EmbeddingConfig, EmbeddingError};

#[derive(Debug, Error, PartialEq)]
pub enum LayoutError {
    #[error("invalid layout configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Bounds {
    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlyphNode {
    pub sentence_id: String,
    pub anchor: [f64; 2],
    pub position: [f64; 2],
    pub ring_radius: f64,
    pub tag_dots: Vec<TagDot>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphLayout {
    pub document_id: String,
    pub nodes: Vec<GlyphNode>,
    pub edge_strategy: EdgeStrategy,
    pub edges: EdgeMap,
    pub bounds: Bounds,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GraphParams {
    pub ring_radius: f64,
    /// Anchors are scaled so the larger side of their bounding box spans
    /// `spread * 2 * ring_radius * sqrt(n)`.
    pub spread: f64,
    pub edge_strategy: EdgeStrategy,
    pub deoverlap: DeoverlapParams,
}

impl Default for GraphParams {
    fn default() -> Self {
        Self {
            ring_radius: 10.0,
            spread: 3.0,
            edge_strategy: EdgeStrategy::Mst,
            deoverlap: DeoverlapParams {
                padding: 2.0,
                ..DeoverlapParams::default()
            },
        }
    }
}

impl GraphParams {
    pub fn validate(&self) -> Result<(), LayoutError> {
        let p = &self.deoverlap;
        let ok = self.ring_radius.is_finite()
            && self.ring_radius > 0.0
            && self.spread.is_finite()
            && self.spread > 0.0
            && p.padding.is_finite()
            && p.padding >= 0.0
            && p.anchor_strength.is_finite()
            && (0.0..=1.0).contains(&p.anchor_strength)
            && p.convergence_epsilon.is_none_or(|e| e.is_finite() && e >= 0.0);
        if ok {
            Ok(())
        } else {
            Err(LayoutError::Config(format!("invalid graph parameters: {self:?}")))
        }
    }
}

/// Scales anchors about their bounding-box centre to the requested extent.
fn scale_anchors(raw: &[[f64; 2]], extent: f64) -> Vec<[f64; 2]> {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in raw {
        for c in 0..2 {
            lo[c] = lo[c].min(p[c]);
            hi[c] = hi[c].max(p[c]);
        }
    }
    let side = (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let scale = if side > 0.0 { extent / side } else { 1.0 };
    let centre = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
    raw.iter()
        .map(|p| [(p[0] - centre[0]) * scale, (p[1] - centre[1]) * scale])
        .collect()
}

/// Embeds a document, removes glyph overlap and connects shared categories.
///
/// Documents with fewer than four sentences skip the embedding and start all
/// glyphs at the origin. The perplexity is capped at `(n - 1) / 3`.
pub fn graph_layout(
    doc: &Document,
    embedding: &EmbeddingConfig,
    params: &GraphParams,
) -> Result<GraphLayout, LayoutError> {
    params.validate()?;
    embedding.validate()?;
    let n = doc.sentences.len();
    let raw = if n >= 4 {
        let mut config = embedding.clone();
        config.perplexity = config.perplexity.min(EmbeddingConfig::perplexity_cap(n));
        tsne_embed(&vectorize(doc), &config)?.positions
    } else {
        vec![[0.0, 0.0]; n]
    };
    let r = params.ring_radius;
    let anchors = scale_anchors(&raw, params.spread * 2.0 * r * (n as f64).sqrt());
    let radii = vec![r; n];
    let positions = deoverlap(&anchors, &radii, &params.deoverlap).positions;
    let edges = category_edges(doc, &positions, params.edge_strategy);

    let mut bounds = Bounds {
        min_x: 0.0,
        min_y: 0.0,
        max_x: 0.0,
        max_y: 0.0,
    };
    if n > 0 {
        bounds = Bounds {
            min_x: f64::INFINITY,
            min_y: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            max_y: f64::NEG_INFINITY,
        };
        for p in &positions {
            bounds.min_x = bounds.min_x.min(p[0] - r);
            bounds.min_y = bounds.min_y.min(p[1] - r);
            bounds.max_x = bounds.max_x.max(p[0] + r);
            bounds.max_y = bounds.max_y.max(p[1] + r);
        }
    }

    let nodes = doc
        .sentences
        .iter()
        .zip(anchors.iter().zip(&positions))
        .map(|(s, (&anchor, &position))| GlyphNode {
            sentence_id: s.id.clone(),
            anchor,
            position,
            ring_radius: r,
            tag_dots: glyph_spec(s, r).tag_dots,
        })
        .collect();

    Ok(GraphLayout {
        document_id: doc.id.clone(),
        nodes,
        edge_strategy: params.edge_strategy,
        edges,
        bounds,
    })
}
