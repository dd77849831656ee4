//! High-dimensional affinities: pairwise distances, per-point Gaussian
//! bandwidth calibration and symmetrization into joint probabilities.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use super::{EmbeddingError, TagVector};

/// Floor applied to off-diagonal joint probabilities.
pub const P_FLOOR: f64 = 1e-12;
/// Allowed deviation of the achieved perplexity from the target.
pub const PERPLEXITY_TOLERANCE: f64 = 1e-5;
/// Maximum bisection steps per row.
pub const MAX_BISECTION_STEPS: usize = 200;
/// Bisection keeps going well past the public tolerance; it is cheap.
const SEARCH_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// Euclidean distance; on binary vectors, the square root of the Hamming distance.
    #[default]
    Euclidean,
    /// One minus the Jaccard index of the tag sets.
    Jaccard,
}

fn distance(a: &[u8], b: &[u8], metric: Metric) -> f64 {
    match metric {
        Metric::Euclidean => {
            let sq: u32 = a
                .iter()
                .zip(b)
                .map(|(&x, &y)| {
                    let d = i32::from(x) - i32::from(y);
                    (d * d) as u32
                })
                .sum();
            f64::from(sq).sqrt()
        }
        Metric::Jaccard => {
            let inter = a.iter().zip(b).filter(|(&x, &y)| x == 1 && y == 1).count();
            let union = a.iter().zip(b).filter(|(&x, &y)| x == 1 || y == 1).count();
            if union == 0 {
                0.0
            } else {
                1.0 - inter as f64 / union as f64
            }
        }
    }
}

/// Symmetric distance matrix with a zero diagonal.
pub fn pairwise_distances(vectors: &[TagVector], metric: Metric) -> Array2<f64> {
    let n = vectors.len();
    let mut d = Array2::zeros((n, n));
    for i in 0..n {
        for j in i + 1..n {
            let v = distance(&vectors[i].components, &vectors[j].components, metric);
            d[[i, j]] = v;
            d[[j, i]] = v;
        }
    }
    d
}

/// Row-conditional Gaussian affinities `p(j|i)` with each row's bandwidth
/// chosen so that its perplexity matches `perplexity`.
pub fn conditional_affinities(distances: &Array2<f64>, perplexity: f64) -> Result<Array2<f64>, EmbeddingError> {
    let ones = vec![1.0; distances.nrows()];
    conditional_affinities_weighted(distances, &ones, perplexity)
}

/// Conditional affinities over distinct points standing in for `weights[j]`
/// identical copies each. Row `i` is the distribution over the other distinct
/// points, and its perplexity is measured over the expanded copies, so unit
/// weights reduce to the ordinary computation.
pub fn conditional_affinities_weighted(
    distances: &Array2<f64>,
    weights: &[f64],
    perplexity: f64,
) -> Result<Array2<f64>, EmbeddingError> {
    let n = distances.nrows();
    if distances.ncols() != n || weights.len() != n {
        return Err(EmbeddingError::Shape(format!(
            "{}x{} distances with {} weights",
            n,
            distances.ncols(),
            weights.len()
        )));
    }
    if !(perplexity.is_finite() && perplexity > 0.0) {
        return Err(EmbeddingError::Config(format!(
            "perplexity {perplexity} must be positive"
        )));
    }
    let total: f64 = weights.iter().sum();
    if perplexity >= total {
        return Err(EmbeddingError::Config(format!(
            "perplexity {perplexity} must be below the number of points {total}"
        )));
    }

    let mut p = Array2::zeros((n, n));
    let mut row = vec![0.0; n];
    for i in 0..n {
        calibrate_row(distances, weights, i, perplexity, &mut row);
        for j in 0..n {
            p[[i, j]] = row[j];
        }
    }
    Ok(p)
}

/// Writes row `i`'s probabilities into `out` and returns the final precision.
fn calibrate_row(distances: &Array2<f64>, weights: &[f64], i: usize, perplexity: f64, out: &mut [f64]) -> f64 {
    let n = distances.nrows();
    out.iter_mut().for_each(|v| *v = 0.0);
    if n < 2 {
        return 0.0;
    }
    let sq: Vec<f64> = (0..n).map(|j| distances[[i, j]] * distances[[i, j]]).collect();
    let min_sq = (0..n).filter(|&j| j != i).map(|j| sq[j]).fold(f64::INFINITY, f64::min);
    let max_sq = (0..n).filter(|&j| j != i).map(|j| sq[j]).fold(0.0, f64::max);

    // Every other point coincides with this one: fall back to uniform.
    if max_sq == 0.0 {
        let others: f64 = (0..n).filter(|&j| j != i).map(|j| weights[j]).sum();
        for j in (0..n).filter(|&j| j != i) {
            out[j] = weights[j] / others;
        }
        return 0.0;
    }

    let target = perplexity;
    let mut beta = 1.0;
    let mut lo = 0.0;
    let mut hi = f64::INFINITY;
    for _ in 0..MAX_BISECTION_STEPS {
        let entropy = fill_row(&sq, weights, i, min_sq, beta, out);
        let achieved = entropy.exp();
        if (achieved - target).abs() <= SEARCH_TOLERANCE {
            break;
        }
        if achieved > target {
            lo = beta;
            beta = if hi.is_finite() { 0.5 * (lo + hi) } else { beta * 2.0 };
        } else {
            hi = beta;
            beta = 0.5 * (lo + hi);
        }
    }
    fill_row(&sq, weights, i, min_sq, beta, out);
    beta
}

/// Fills a normalized row for precision `beta` and returns its entropy in
/// nats, counting each distinct point's mass as spread over its copies.
fn fill_row(sq: &[f64], weights: &[f64], i: usize, min_sq: f64, beta: f64, out: &mut [f64]) -> f64 {
    let mut sum = 0.0;
    for (j, v) in out.iter_mut().enumerate() {
        *v = if j == i {
            0.0
        } else {
            weights[j] * (-beta * (sq[j] - min_sq)).exp()
        };
        sum += *v;
    }
    let mut entropy = 0.0;
    for (j, v) in out.iter_mut().enumerate() {
        *v /= sum;
        if *v > 0.0 && j != i {
            entropy -= *v * (*v / weights[j]).ln();
        }
    }
    entropy
}

/// Joint probabilities `p_ij = (p(j|i) + p(i|j)) / 2n`, floored off the diagonal.
pub fn symmetrize(conditional: &Array2<f64>) -> Array2<f64> {
    let ones = vec![1.0; conditional.nrows()];
    symmetrize_weighted(conditional, &ones)
}

/// Joint probabilities between distinct points carrying multiplicities:
/// `P_ab = (m_a p(b|a) + m_b p(a|b)) / 2N` with `N = sum(m)`.
pub fn symmetrize_weighted(conditional: &Array2<f64>, weights: &[f64]) -> Array2<f64> {
    let n = conditional.nrows();
    let total: f64 = weights.iter().sum();
    let mut p = Array2::zeros((n, n));
    for i in 0..n {
        for j in i + 1..n {
            let v = (weights[i] * conditional[[i, j]] + weights[j] * conditional[[j, i]]) / (2.0 * total);
            let v = v.max(P_FLOOR);
            p[[i, j]] = v;
            p[[j, i]] = v;
        }
    }
    p
}
