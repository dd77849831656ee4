//! Force-directed removal of overlaps between circular glyphs.
//!
//! Each step pulls every node toward its anchor with a linear spring, then
//! projects overlapping pairs apart in index order. Coincident pairs are split
//! along a direction drawn from the seeded generator, so duplicated anchors fan
//! out reproducibly. A final spring-free pass removes remaining overlap.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Relative slack, in units of the smallest radius, accepted by the final pass.
const FINAL_SLACK: f64 = 1e-3;
const FINAL_MAX_SWEEPS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeoverlapParams {
    pub anchor_strength: f64,
    pub padding: f64,
    pub max_iterations: usize,
    /// Stop once no node moves farther than this in one step. Defaults to
    /// `1e-3` times the largest radius.
    pub convergence_epsilon: Option<f64>,
    /// Collision sweeps per step.
    pub collision_sweeps: usize,
    pub seed: u64,
}

impl Default for DeoverlapParams {
    fn default() -> Self {
        Self {
            anchor_strength: 0.1,
            padding: 0.0,
            max_iterations: 500,
            convergence_epsilon: None,
            collision_sweeps: 2,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deoverlapped {
    pub positions: Vec<[f64; 2]>,
    pub iterations: usize,
    pub converged: bool,
}

/// Largest `r_i + r_j - |p_i - p_j|` over all pairs, or zero when nothing overlaps.
pub fn max_overlap_depth(positions: &[[f64; 2]], radii: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            let d = (positions[i][0] - positions[j][0]).hypot(positions[i][1] - positions[j][1]);
            worst = worst.max(radii[i] + radii[j] - d);
        }
    }
    worst
}

/// One Gauss-Seidel sweep; returns the largest remaining separation deficit seen.
fn collide(pos: &mut [[f64; 2]], radii: &[f64], padding: f64, rng: &mut ChaCha8Rng) -> f64 {
    let n = pos.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            let target = radii[i] + radii[j] + padding;
            let dx = pos[j][0] - pos[i][0];
            if dx.abs() >= target {
                continue;
            }
            let dy = pos[j][1] - pos[i][1];
            if dy.abs() >= target {
                continue;
            }
            let d2 = dx * dx + dy * dy;
            if d2 >= target * target {
                continue;
            }
            let d = d2.sqrt();
            let (ux, uy) = if d > 1e-9 * target {
                (dx / d, dy / d)
            } else {
                let angle = rng.random::<f64>() * std::f64::consts::TAU;
                (angle.cos(), angle.sin())
            };
            let deficit = target - d;
            worst = worst.max(deficit);
            let push = 0.5 * deficit;
            pos[i][0] -= ux * push;
            pos[i][1] -= uy * push;
            pos[j][0] += ux * push;
            pos[j][1] += uy * push;
        }
    }
    worst
}

pub fn deoverlap(anchors: &[[f64; 2]], radii: &[f64], params: &DeoverlapParams) -> Deoverlapped {
    assert_eq!(anchors.len(), radii.len(), "one radius per anchor");
    let n = anchors.len();
    let max_r = radii.iter().copied().fold(0.0, f64::max);
    let min_r = radii.iter().copied().fold(f64::INFINITY, f64::min);
    let epsilon = params.convergence_epsilon.unwrap_or(1e-3 * max_r);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut pos = anchors.to_vec();
    let mut prev = pos.clone();

    let mut iterations = 0;
    let mut converged = n < 2;
    while !converged && iterations < params.max_iterations {
        prev.copy_from_slice(&pos);
        for (p, a) in pos.iter_mut().zip(anchors) {
            p[0] += params.anchor_strength * (a[0] - p[0]);
            p[1] += params.anchor_strength * (a[1] - p[1]);
        }
        for _ in 0..params.collision_sweeps.max(1) {
            if collide(&mut pos, radii, params.padding, &mut rng) == 0.0 {
                break;
            }
        }
        iterations += 1;
        let moved = pos
            .iter()
            .zip(&prev)
            .map(|(a, b)| (a[0] - b[0]).hypot(a[1] - b[1]))
            .fold(0.0, f64::max);
        converged = moved < epsilon;
    }

    if n >= 2 {
        let slack = FINAL_SLACK * min_r;
        for _ in 0..FINAL_MAX_SWEEPS {
            if collide(&mut pos, radii, params.padding, &mut rng) <= slack {
                break;
            }
        }
    }

    Deoverlapped {
        positions: pos,
        iterations,
        converged,
    }
}
