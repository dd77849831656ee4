//! Reading-order waffle: one block of equal cells per sentence, packed
//! greedily into rows.

use serde::{Deserialize, Serialize};

use super::LayoutError;
use crate::corpus::{CategoryId, Document};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WaffleConfig {
    pub cell_size: f64,
    pub row_width: f64,
    /// Space between neighbouring blocks and between rows.
    pub gutter: f64,
}

impl Default for WaffleConfig {
    fn default() -> Self {
        Self {
            cell_size: 12.0,
            row_width: 600.0,
            gutter: 4.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaffleCell {
    pub category: CategoryId,
    pub x: f64,
    pub y: f64,
    pub cell_size: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaffleBlock {
    pub sentence_id: String,
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
    pub cells: Vec<WaffleCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaffleLayout {
    pub document_id: String,
    pub cell_size: f64,
    pub width: f64,
    pub height: f64,
    pub rows: Vec<Vec<WaffleBlock>>,
}

impl WaffleLayout {
    pub fn blocks(&self) -> impl Iterator<Item = &WaffleBlock> {
        self.rows.iter().flatten()
    }

    pub fn cell_count(&self) -> usize {
        self.blocks().map(|b| b.cells.len()).sum()
    }
}

pub fn waffle_layout(doc: &Document, config: &WaffleConfig) -> Result<WaffleLayout, LayoutError> {
    let WaffleConfig {
        cell_size,
        row_width,
        gutter,
    } = *config;
    if !(cell_size > 0.0 && row_width > 0.0 && gutter >= 0.0) || !(cell_size + row_width + gutter).is_finite() {
        return Err(LayoutError::Config(format!(
            "cell_size {cell_size} and row_width {row_width} must be positive, gutter {gutter} non-negative"
        )));
    }

    let mut rows: Vec<Vec<WaffleBlock>> = Vec::new();
    let mut current: Vec<WaffleBlock> = Vec::new();
    let mut x = 0.0;
    for s in &doc.sentences {
        let width = s.tags.len() as f64 * cell_size;
        if width > row_width {
            return Err(LayoutError::Config(format!(
                "sentence {} needs width {width} but rows are {row_width} wide",
                s.id
            )));
        }
        if !current.is_empty() && x + width > row_width {
            rows.push(std::mem::take(&mut current));
            x = 0.0;
        }
        let y = rows.len() as f64 * (cell_size + gutter);
        let mut tags = s.tags.clone();
        tags.sort_unstable();
        let cells = tags
            .into_iter()
            .enumerate()
            .map(|(k, category)| WaffleCell {
                category,
                x: x + k as f64 * cell_size,
                y,
                cell_size,
            })
            .collect();
        current.push(WaffleBlock {
            sentence_id: s.id.clone(),
            x,
            y,
            width,
            height: cell_size,
            cells,
        });
        x += width + gutter;
    }
    if !current.is_empty() {
        rows.push(current);
    }
    let height = if rows.is_empty() {
        0.0
    } else {
        rows.len() as f64 * (cell_size + gutter) - gutter
    };
    Ok(WaffleLayout {
        document_id: doc.id.clone(),
        cell_size,
        width: row_width,
        height,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Sentence;

    fn doc(counts: &[u8]) -> Document {
        Document {
            id: "d".into(),
            title: String::new(),
            sentences: counts
                .iter()
                .enumerate()
                .map(|(i, &k)| Sentence {
                    id: format!("s{i}"),
                    index: i,
                    text: String::new(),
                    tags: (1..=k).rev().map(|t| CategoryId::new(t).unwrap()).collect(),
                    source_index: None,
                })
                .collect(),
        }
    }

    #[test]
    fn block_widths_follow_tag_counts() {
        let w = waffle_layout(&doc(&[2, 3, 1]), &WaffleConfig::default()).unwrap();
        assert_eq!(w.cell_count(), 6);
        let widths: Vec<f64> = w.blocks().map(|b| b.width).collect();
        assert_eq!(widths, vec![24.0, 36.0, 12.0]);
        let first = &w.rows[0][0];
        assert_eq!(first.cells[0].category.get(), 1);
        assert_eq!(first.cells[1].x - first.cells[0].x, 12.0);
    }

    #[test]
    fn wraps_greedily() {
        let cfg = WaffleConfig {
            cell_size: 10.0,
            row_width: 45.0,
            gutter: 5.0,
        };
        let w = waffle_layout(&doc(&[2, 2, 2]), &cfg).unwrap();
        assert_eq!(w.rows.len(), 2);
        assert_eq!(w.rows[0].len(), 2);
        assert_eq!(w.rows[1][0].sentence_id, "s2");
        assert_eq!(w.rows[1][0].y, 15.0);
        assert_eq!(w.height, 25.0);
    }

    #[test]
    fn rejects_blocks_wider_than_row() {
        let cfg = WaffleConfig {
            cell_size: 10.0,
            row_width: 25.0,
            gutter: 0.0,
        };
        assert!(matches!(waffle_layout(&doc(&[3]), &cfg), Err(LayoutError::Config(_))));
        let zero = WaffleConfig {
            cell_size: 0.0,
            ..WaffleConfig::default()
        };
        assert!(waffle_layout(&doc(&[1]), &zero).is_err());
    }
}
