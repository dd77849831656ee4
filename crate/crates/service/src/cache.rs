//! In-memory layout cache keyed by canonical request hash.

use std::time::SystemTime;

use axum::body::Bytes;
use dashmap::DashMap;

#[derive(Debug, Clone)]
pub struct CacheEntry {
    pub key: String,
    pub payload: Bytes,
    pub created_at: SystemTime,
}

#[derive(Debug, Default)]
pub struct LayoutCache {
    entries: DashMap<String, CacheEntry>,
}

impl LayoutCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &str) -> Option<Bytes> {
        self.entries.get(key).map(|e| e.payload.clone())
    }

    /// Stores a payload unless one is already present, and returns the stored
    /// payload. Concurrent misses may both compute; results are identical.
    pub fn insert(&self, key: String, payload: Bytes) -> Bytes {
        self.entries
            .entry(key.clone())
            .or_insert_with(|| CacheEntry {
                key,
                payload,
                created_at: SystemTime::now(),
            })
            .payload
            .clone()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
