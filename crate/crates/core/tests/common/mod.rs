#![allow(dead_code)]

use nearby_core::{CategoryId, Document, Sentence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cat(id: u8) -> CategoryId {
    CategoryId::new(id).unwrap()
}

pub fn doc_from(tag_sets: &[Vec<u8>]) -> Document {
    Document {
        id: "doc".into(),
        title: "Doc".into(),
        sentences: tag_sets
            .iter()
            .enumerate()
            .map(|(i, tags)| {
                let mut tags: Vec<CategoryId> = tags.iter().map(|&t| cat(t)).collect();
                tags.sort_unstable();
                Sentence {
                    id: format!("s{:04}", i + 1),
                    index: i,
                    text: format!("Sentence number {i}."),
                    tags,
                    source_index: None,
                }
            })
            .collect(),
    }
}

/// Random tag sets of 1..=max_tags distinct categories out of 1..=17.
pub fn random_tag_sets(rng: &mut ChaCha8Rng, n: usize, max_tags: usize) -> Vec<Vec<u8>> {
    (0..n)
        .map(|_| {
            let k = rng.random_range(1..=max_tags);
            let mut ids: Vec<u8> = (1..=17).collect();
            for i in 0..k {
                let j = rng.random_range(i..17);
                ids.swap(i, j);
            }
            let mut t = ids[..k].to_vec();
            t.sort_unstable();
            t
        })
        .collect()
}

pub fn random_doc(rng: &mut ChaCha8Rng, n: usize) -> Document {
    let sets = random_tag_sets(rng, n, 5);
    doc_from(&sets)
}
