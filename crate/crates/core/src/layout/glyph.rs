//! Ring-and-dots glyph geometry for one sentence.

use serde::{Deserialize, Serialize};

use crate::corpus::{CategoryId, Sentence};

/// Dot centres sit on a circle of this fraction of the ring radius.
pub const DOT_ORBIT: f64 = 0.55;
/// Upper bound on dot radius as a fraction of the ring radius.
pub const MAX_DOT: f64 = 0.3;
/// Gap kept between neighbouring dots, as a fraction of the ring radius.
pub const HAIRLINE: f64 = 0.02;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TagDot {
    pub category: CategoryId,
    pub dx: f64,
    pub dy: f64,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Glyph {
    pub ring_radius: f64,
    pub tag_dots: Vec<TagDot>,
}

/// Places `k` tag dots on a regular `k`-gon starting at twelve o'clock and
/// proceeding clockwise in ascending category order; one tag sits centred.
pub fn glyph_spec(sentence: &Sentence, ring_radius: f64) -> Glyph {
    let mut tags = sentence.tags.clone();
    tags.sort_unstable();
    let k = tags.len();
    let orbit = DOT_ORBIT * ring_radius;
    let radius = if k <= 1 {
        MAX_DOT * ring_radius
    } else {
        let chord = 2.0 * orbit * (std::f64::consts::PI / k as f64).sin();
        (MAX_DOT * ring_radius).min(chord / 2.0 - HAIRLINE * ring_radius)
    };
    let tag_dots = tags
        .into_iter()
        .enumerate()
        .map(|(i, category)| {
            let (dx, dy) = if k == 1 {
                (0.0, 0.0)
            } else {
                // Screen coordinates: y grows downward, so +angle is clockwise.
                let angle = -std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * i as f64 / k as f64;
                (orbit * angle.cos(), orbit * angle.sin())
            };
            TagDot {
                category,
                dx,
                dy,
                radius,
            }
        })
        .collect();
    Glyph { ring_radius, tag_dots }
}
