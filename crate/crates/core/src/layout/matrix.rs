//! Heatmap geometry for co-occurrence matrices.

use serde::{Deserialize, Serialize};

use crate::analytics::CoOccurrenceMatrix;
use crate::corpus::CategoryId;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// Counts divided by the largest count.
    #[default]
    RawMax,
    /// Row `i` divided by the frequency of category `i`; not symmetric.
    Conditional,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixOrder {
    #[default]
    Id,
    /// Descending frequency, ties by id.
    Frequency,
}

/// Values and counts are indexed by display position: `values[r][c]`
/// pairs `order[r]` with `order[c]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixLayout {
    pub document_id: String,
    pub order: Vec<CategoryId>,
    pub normalization: Normalization,
    pub values: Vec<Vec<f64>>,
    pub counts: Vec<Vec<u32>>,
}

pub fn matrix_layout(m: &CoOccurrenceMatrix, normalization: Normalization, order: MatrixOrder) -> MatrixLayout {
    let mut ids: Vec<CategoryId> = CategoryId::all().take(m.n).collect();
    if order == MatrixOrder::Frequency {
        ids.sort_by_key(|c| (std::cmp::Reverse(m.get(*c, *c)), *c));
    }
    let max = m.max();
    let ratio = |num: u32, den: u32| if den == 0 { 0.0 } else { f64::from(num) / f64::from(den) };
    let values = ids
        .iter()
        .map(|&r| {
            ids.iter()
                .map(|&c| match normalization {
                    Normalization::RawMax => ratio(m.get(r, c), max),
                    Normalization::Conditional => ratio(m.get(r, c), m.get(r, r)),
                })
                .collect()
        })
        .collect();
    let counts = ids
        .iter()
        .map(|&r| ids.iter().map(|&c| m.get(r, c)).collect())
        .collect();
    MatrixLayout {
        document_id: m.document_id.clone(),
        order: ids,
        normalization,
        values,
        counts,
    }
}
