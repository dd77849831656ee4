//! Per-category connective edges between glyphs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{CategoryId, Document};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeStrategy {
    /// Euclidean minimum spanning tree over the category's members.
    #[default]
    Mst,
    /// Every pair of members.
    Complete,
}

pub type EdgeMap = BTreeMap<CategoryId, Vec<(String, String)>>;

/// Prim's algorithm on the complete Euclidean graph. Edges are returned as
/// `(parent, child)` index pairs in insertion order; ties break toward the
/// lower index.
pub fn euclidean_mst(points: &[[f64; 2]]) -> Vec<(usize, usize)> {
    let n = points.len();
    if n < 2 {
        return Vec::new();
    }
    let dist2 = |a: usize, b: usize| {
        let dx = points[a][0] - points[b][0];
        let dy = points[a][1] - points[b][1];
        dx * dx + dy * dy
    };
    let mut in_tree = vec![false; n];
    let mut best: Vec<f64> = (0..n).map(|j| dist2(0, j)).collect();
    let mut parent = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);
    in_tree[0] = true;
    for _ in 1..n {
        let mut next = usize::MAX;
        for j in 0..n {
            if !in_tree[j] && (next == usize::MAX || best[j] < best[next]) {
                next = j;
            }
        }
        in_tree[next] = true;
        edges.push((parent[next], next));
        for j in 0..n {
            if !in_tree[j] {
                let d = dist2(next, j);
                if d < best[j] {
                    best[j] = d;
                    parent[j] = next;
                }
            }
        }
    }
    edges
}

/// Connects the sentences sharing each category. Endpoints are sentence ids
/// with the earlier sentence first; categories with fewer than two members
/// are omitted.
pub fn category_edges(doc: &Document, positions: &[[f64; 2]], strategy: EdgeStrategy) -> EdgeMap {
    assert_eq!(doc.sentences.len(), positions.len(), "one position per sentence");
    let mut out = EdgeMap::new();
    for c in CategoryId::all() {
        let members: Vec<usize> = (0..doc.sentences.len())
            .filter(|&i| doc.sentences[i].has_tag(c))
            .collect();
        if members.len() < 2 {
            continue;
        }
        let pairs: Vec<(usize, usize)> = match strategy {
            EdgeStrategy::Complete => members
                .iter()
                .enumerate()
                .flat_map(|(k, &a)| members[k + 1..].iter().map(move |&b| (a, b)))
                .collect(),
            EdgeStrategy::Mst => {
                let pts: Vec<[f64; 2]> = members.iter().map(|&i| positions[i]).collect();
                euclidean_mst(&pts)
                    .into_iter()
                    .map(|(a, b)| (members[a].min(members[b]), members[a].max(members[b])))
                    .collect()
            }
        };
        out.insert(
            c,
            pairs
                .into_iter()
                .map(|(a, b)| (doc.sentences[a].id.clone(), doc.sentences[b].id.clone()))
                .collect(),
        );
    }
    out
}
