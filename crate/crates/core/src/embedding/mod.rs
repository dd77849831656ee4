//! Exact t-SNE embedding of sentence tag vectors into the plane.
//!
//! Sentences with identical tag sets are collapsed into one point carrying
//! their multiplicity. Affinities, the objective and its gradient are all
//! evaluated over distinct combinations with weights, and the per-sentence
//! result is expanded back afterwards; identical sentences therefore share
//! an anchor, and the layout stage fans them out.

mod affinity;
mod objective;

use std::collections::BTreeMap;

use ndarray::Array2;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use affinity::{
    conditional_affinities, conditional_affinities_weighted, pairwise_distances, symmetrize, symmetrize_weighted,
    Metric, MAX_BISECTION_STEPS, PERPLEXITY_TOLERANCE, P_FLOOR,
};
pub use objective::{kl_divergence, kl_divergence_weighted, tsne_gradient, tsne_gradient_weighted, Q_FLOOR};

use crate::corpus::{CategoryId, Document, NUM_CATEGORIES};

/// Iterations between KL samples in [`EmbeddingResult::kl_trace`].
pub const KL_SAMPLE_INTERVAL: usize = 50;
/// Standard deviation of the initial Gaussian positions.
pub const INITIAL_SCALE: f64 = 1e-4;
const MIN_GAIN: f64 = 0.01;

#[derive(Debug, Error, PartialEq)]
pub enum EmbeddingError {
    #[error("invalid embedding configuration: {0}")]
    Config(String),
    #[error("need at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Binary presence vector of a sentence's tags; component `i` is category `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TagVector {
    pub sentence_id: String,
    pub components: [u8; NUM_CATEGORIES],
}

impl TagVector {
    pub fn tags(&self) -> Vec<CategoryId> {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 1)
            .filter_map(|(i, _)| CategoryId::from_index(i))
            .collect()
    }
}

pub fn vectorize(doc: &Document) -> Vec<TagVector> {
    doc.sentences
        .iter()
        .map(|s| {
            let mut components = [0u8; NUM_CATEGORIES];
            for t in &s.tags {
                components[t.index()] = 1;
            }
            TagVector {
                sentence_id: s.id.clone(),
                components,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EmbeddingConfig {
    pub perplexity: f64,
    pub iterations: usize,
    pub learning_rate: f64,
    pub initial_momentum: f64,
    pub final_momentum: f64,
    pub momentum_switch_iteration: usize,
    pub early_exaggeration: f64,
    pub exaggeration_iterations: usize,
    pub metric: Metric,
    pub seed: u64,
}

impl Default for EmbeddingConfig {
    fn default() -> Self {
        Self {
            perplexity: 30.0,
            iterations: 1000,
            learning_rate: 200.0,
            initial_momentum: 0.5,
            final_momentum: 0.8,
            momentum_switch_iteration: 250,
            early_exaggeration: 12.0,
            exaggeration_iterations: 250,
            metric: Metric::Euclidean,
            seed: 0,
        }
    }
}

impl EmbeddingConfig {
    pub fn validate(&self) -> Result<(), EmbeddingError> {
        let bad = |msg: String| Err(EmbeddingError::Config(msg));
        if !(self.perplexity.is_finite() && self.perplexity > 0.0) {
            return bad(format!("perplexity {} must be positive", self.perplexity));
        }
        if self.iterations == 0 {
            return bad("iterations must be positive".into());
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return bad(format!("learning_rate {} must be positive", self.learning_rate));
        }
        for m in [self.initial_momentum, self.final_momentum] {
            if !(0.0..1.0).contains(&m) {
                return bad(format!("momentum {m} must lie in [0, 1)"));
            }
        }
        if !(self.early_exaggeration.is_finite() && self.early_exaggeration >= 1.0) {
            return bad(format!(
                "early_exaggeration {} must be at least 1",
                self.early_exaggeration
            ));
        }
        Ok(())
    }

    /// Largest perplexity used for `n` points.
    pub fn perplexity_cap(n: usize) -> f64 {
        (n as f64 - 1.0) / 3.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingResult {
    /// One `[x, y]` row per input vector, in input order.
    pub positions: Vec<[f64; 2]>,
    /// KL divergence after every [`KL_SAMPLE_INTERVAL`] iterations, plus the
    /// final value when the iteration count is not a multiple of it.
    pub kl_trace: Vec<f64>,
    /// Configuration echo with the effective (clamped) perplexity.
    pub config: EmbeddingConfig,
}

impl EmbeddingResult {
    /// KL value recorded after `iteration` iterations, if sampled.
    pub fn kl_at(&self, iteration: usize) -> Option<f64> {
        if iteration == 0 || iteration % KL_SAMPLE_INTERVAL != 0 {
            return None;
        }
        self.kl_trace.get(iteration / KL_SAMPLE_INTERVAL - 1).copied()
    }

    pub fn final_kl(&self) -> Option<f64> {
        self.kl_trace.last().copied()
    }
}

/// Distinct tag combinations in lexicographic order, with multiplicities and
/// each input's group.
struct Collapsed {
    points: Vec<TagVector>,
    weights: Vec<f64>,
    group_of: Vec<usize>,
}

fn collapse(vectors: &[TagVector]) -> Collapsed {
    let mut groups: BTreeMap<Vec<CategoryId>, (usize, [u8; NUM_CATEGORIES])> = BTreeMap::new();
    for v in vectors {
        groups.entry(v.tags()).or_insert((0, v.components)).0 += 1;
    }
    let slot: BTreeMap<&Vec<CategoryId>, usize> = groups.keys().enumerate().map(|(i, k)| (k, i)).collect();
    let group_of = vectors.iter().map(|v| slot[&v.tags()]).collect();
    let (points, weights) = groups
        .values()
        .map(|&(count, components)| {
            (
                TagVector {
                    sentence_id: String::new(),
                    components,
                },
                count as f64,
            )
        })
        .unzip();
    Collapsed {
        points,
        weights,
        group_of,
    }
}

/// Embeds tag vectors into the plane, deterministically for a given seed.
pub fn tsne_embed(vectors: &[TagVector], config: &EmbeddingConfig) -> Result<EmbeddingResult, EmbeddingError> {
    config.validate()?;
    let n = vectors.len();
    if n < 4 {
        return Err(EmbeddingError::TooFewPoints { min: 4, got: n });
    }
    if config.perplexity >= n as f64 {
        return Err(EmbeddingError::Config(format!(
            "perplexity {} must be below the number of points {n}",
            config.perplexity
        )));
    }
    let mut echo = config.clone();
    echo.perplexity = config.perplexity.min(EmbeddingConfig::perplexity_cap(n));

    let collapsed = collapse(vectors);
    let k = collapsed.points.len();
    let samples = config.iterations.div_ceil(KL_SAMPLE_INTERVAL);
    if k == 1 {
        return Ok(EmbeddingResult {
            positions: vec![[0.0, 0.0]; n],
            kl_trace: vec![0.0; samples],
            config: echo,
        });
    }

    let weights = &collapsed.weights;
    let distances = pairwise_distances(&collapsed.points, config.metric);
    let conditional = conditional_affinities_weighted(&distances, weights, echo.perplexity)?;
    let p = symmetrize_weighted(&conditional, weights);
    let exaggerated = &p * config.early_exaggeration;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut y = Array2::from_shape_simple_fn((k, 2), || {
        let z: f64 = StandardNormal.sample(&mut rng);
        z * INITIAL_SCALE
    });
    let mut update = Array2::<f64>::zeros((k, 2));
    let mut gains = Array2::<f64>::ones((k, 2));
    let mut kl_trace = Vec::with_capacity(samples);

    for it in 0..config.iterations {
        let target = if it < config.exaggeration_iterations {
            &exaggerated
        } else {
            &p
        };
        let momentum = if it < config.momentum_switch_iteration {
            config.initial_momentum
        } else {
            config.final_momentum
        };
        let grad = tsne_gradient_weighted(target, &y, weights);
        for ((g, u), gain) in grad.iter().zip(update.iter_mut()).zip(gains.iter_mut()) {
            *gain = if (*g > 0.0) != (*u > 0.0) {
                *gain + 0.2
            } else {
                *gain * 0.8
            };
            *gain = gain.max(MIN_GAIN);
            *u = momentum * *u - config.learning_rate * *gain * g;
        }
        y += &update;
        recenter(&mut y);

        let done = it + 1;
        if done % KL_SAMPLE_INTERVAL == 0 || done == config.iterations {
            kl_trace.push(kl_divergence_weighted(&p, &y, weights));
        }
    }

    let positions = collapsed.group_of.iter().map(|&g| [y[[g, 0]], y[[g, 1]]]).collect();
    Ok(EmbeddingResult {
        positions,
        kl_trace,
        config: echo,
    })
}

fn recenter(y: &mut Array2<f64>) {
    let k = y.nrows() as f64;
    for c in 0..2 {
        let mean = y.column(c).sum() / k;
        y.column_mut(c).mapv_inplace(|v| v - mean);
    }
}
