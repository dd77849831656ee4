//! Standalone SVG rendering of the three views.
//!
//! Output is plain text assembled with `write!`; coordinates are printed with
//! two decimals, so equal layouts produce byte-identical files.

use std::fmt::Write;

use crate::corpus::{Category, CategoryId};
use crate::layout::{GraphLayout, MatrixLayout, WaffleLayout};

const FALLBACK_COLOR: &str = "#888888";
const RING_STROKE: &str = "#9E9E9E";
const MARGIN: f64 = 20.0;

fn color(categories: &[Category], id: CategoryId) -> &str {
    categories
        .iter()
        .find(|c| c.id == id)
        .map_or(FALLBACK_COLOR, |c| c.color.as_str())
}

fn label(categories: &[Category], id: CategoryId) -> String {
    categories
        .iter()
        .find(|c| c.id == id)
        .map_or_else(|| id.to_string(), |c| c.label.clone())
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(ch),
        }
    }
    out
}

fn header(out: &mut String, x: f64, y: f64, w: f64, h: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x:.2} {y:.2} {w:.2} {h:.2}" width="{w:.2}" height="{h:.2}">"#
    );
}

pub fn graph_svg(layout: &GraphLayout, categories: &[Category]) -> String {
    let b = &layout.bounds;
    let mut out = String::new();
    header(
        &mut out,
        b.min_x - MARGIN,
        b.min_y - MARGIN,
        b.width() + 2.0 * MARGIN,
        b.height() + 2.0 * MARGIN,
    );
    let _ = writeln!(out, r#"<title>{}</title>"#, escape(&layout.document_id));
    let position = |id: &str| layout.nodes.iter().find(|n| n.sentence_id == id).map(|n| n.position);
    for (cat, edges) in &layout.edges {
        let _ = writeln!(
            out,
            r#"<g class="edges" data-category="{cat}" stroke="{}" stroke-opacity="0.45" stroke-width="1.5">"#,
            color(categories, *cat)
        );
        for (a, b) in edges {
            if let (Some(p), Some(q)) = (position(a), position(b)) {
                let _ = writeln!(
                    out,
                    r#"<line class="edge" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
                    p[0], p[1], q[0], q[1]
                );
            }
        }
        out.push_str("</g>\n");
    }
    for node in &layout.nodes {
        let _ = writeln!(
            out,
            r#"<g class="node" data-sentence="{}" transform="translate({:.2},{:.2})">"#,
            escape(&node.sentence_id),
            node.position[0],
            node.position[1]
        );
        let _ = writeln!(
            out,
            r#"<circle class="ring" r="{:.2}" fill="white" stroke="{RING_STROKE}" stroke-width="1.5"/>"#,
            node.ring_radius
        );
        for dot in &node.tag_dots {
            let _ = writeln!(
                out,
                r#"<circle class="tag" data-category="{}" cx="{:.2}" cy="{:.2}" r="{:.2}" fill="{}"/>"#,
                dot.category,
                dot.dx,
                dot.dy,
                dot.radius,
                color(categories, dot.category)
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

pub fn waffle_svg(layout: &WaffleLayout, categories: &[Category]) -> String {
    let mut out = String::new();
    header(
        &mut out,
        -MARGIN,
        -MARGIN,
        layout.width + 2.0 * MARGIN,
        layout.height + 2.0 * MARGIN,
    );
    let _ = writeln!(out, r#"<title>{}</title>"#, escape(&layout.document_id));
    for block in layout.blocks() {
        let _ = writeln!(
            out,
            r#"<g class="sentence" data-sentence="{}">"#,
            escape(&block.sentence_id)
        );
        for cell in &block.cells {
            let _ = writeln!(
                out,
                r#"<rect class="cell" data-category="{}" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                cell.category,
                cell.x,
                cell.y,
                cell.cell_size,
                cell.cell_size,
                color(categories, cell.category)
            );
        }
        let _ = writeln!(
            out,
            r##"<rect class="block" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#444444" stroke-width="1"/>"##,
            block.x, block.y, block.width, block.height
        );
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// White to dark blue.
fn sequential(v: f64) -> String {
    let v = v.clamp(0.0, 1.0);
    let lerp = |a: f64, b: f64| (a + (b - a) * v).round() as u8;
    format!(
        "#{:02X}{:02X}{:02X}",
        lerp(255.0, 8.0),
        lerp(255.0, 48.0),
        lerp(255.0, 107.0)
    )
}

pub fn matrix_svg(layout: &MatrixLayout, categories: &[Category]) -> String {
    const CELL: f64 = 24.0;
    const LABEL: f64 = 190.0;
    let n = layout.order.len() as f64;
    let side = LABEL + n * CELL;
    let mut out = String::new();
    header(&mut out, -MARGIN, -MARGIN, side + 2.0 * MARGIN, side + 2.0 * MARGIN);
    let _ = writeln!(out, r#"<title>{}</title>"#, escape(&layout.document_id));
    for (k, &cat) in layout.order.iter().enumerate() {
        let mid = LABEL + (k as f64 + 0.5) * CELL;
        let name = escape(&label(categories, cat));
        let swatch = color(categories, cat);
        let _ = writeln!(
            out,
            r#"<text class="row-label" x="{:.2}" y="{mid:.2}" text-anchor="end" dominant-baseline="middle" font-size="11" fill="{swatch}">{name}</text>"#,
            LABEL - 6.0
        );
        let _ = writeln!(
            out,
            r#"<text class="col-label" transform="translate({mid:.2},{:.2}) rotate(-60)" font-size="11" fill="{swatch}">{name}</text>"#,
            LABEL - 6.0
        );
    }
    for (r, row) in layout.values.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            let _ = writeln!(
                out,
                r##"<rect class="cell" data-row="{}" data-col="{}" data-count="{}" x="{:.2}" y="{:.2}" width="{CELL:.2}" height="{CELL:.2}" fill="{}" stroke="#FFFFFF" stroke-width="0.5"><title>{:.4}</title></rect>"##,
                layout.order[r],
                layout.order[c],
                layout.counts[r][c],
                LABEL + c as f64 * CELL,
                LABEL + r as f64 * CELL,
                sequential(v),
                v
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::CoOccurrenceMatrix;
    use crate::corpus::{default_registry, Document, Sentence};
    use crate::layout::{matrix_layout, waffle_layout, MatrixOrder, Normalization, WaffleConfig};

    #[test]
    fn waffle_cells_and_escaping() {
        let doc = Document {
            id: "a<b".into(),
            title: String::new(),
            sentences: vec![Sentence {
                id: "s&1".into(),
                index: 0,
                text: String::new(),
                tags: vec![CategoryId::new(1).unwrap(), CategoryId::new(3).unwrap()],
                source_index: None,
            }],
        };
        let svg = waffle_svg(
            &waffle_layout(&doc, &WaffleConfig::default()).unwrap(),
            &default_registry(),
        );
        assert_eq!(svg.matches(r#"class="cell""#).count(), 2);
        assert!(svg.contains("a&lt;b"));
        assert!(svg.contains("s&amp;1"));
        assert!(svg.contains("#E6194B"));
    }

    #[test]
    fn matrix_has_full_grid() {
        let m = CoOccurrenceMatrix::zeros("d");
        let svg = matrix_svg(
            &matrix_layout(&m, Normalization::RawMax, MatrixOrder::Id),
            &default_registry(),
        );
        assert_eq!(svg.matches(r#"class="cell""#).count(), 17 * 17);
        assert!(svg.contains("#FFFFFF"));
        assert_eq!(sequential(1.0), "#08306B");
    }
}
