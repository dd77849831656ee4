//! KL divergence between joint affinities and the Student-t kernel of a 2D
//! configuration, and its exact gradient.

use ndarray::Array2;

/// Floor applied to low-dimensional probabilities inside the logarithm.
pub const Q_FLOOR: f64 = 1e-12;

fn kernel(y: &Array2<f64>, i: usize, j: usize) -> f64 {
    let dx = y[[i, 0]] - y[[j, 0]];
    let dy = y[[i, 1]] - y[[j, 1]];
    1.0 / (1.0 + dx * dx + dy * dy)
}

/// Pairwise kernel values `(1 + |y_i - y_j|^2)^-1` (zero diagonal) and the
/// normalizer `sum_{i != j} w_i w_j k_ij`.
fn kernel_matrix(y: &Array2<f64>, weights: &[f64]) -> (Array2<f64>, f64) {
    let n = y.nrows();
    let mut k = Array2::zeros((n, n));
    let mut z = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let v = kernel(y, i, j);
            k[[i, j]] = v;
            k[[j, i]] = v;
            z += 2.0 * weights[i] * weights[j] * v;
        }
    }
    (k, z)
}

/// Exact gradient of `KL(P || Q)` with respect to the 2D positions.
pub fn tsne_gradient(p: &Array2<f64>, y: &Array2<f64>) -> Array2<f64> {
    tsne_gradient_weighted(p, y, &vec![1.0; y.nrows()])
}

/// Gradient when row `a` of `y` stands for `weights[a]` coincident copies;
/// `Q_ab = w_a w_b k_ab / Z`. Unit weights give the ordinary gradient
/// `4 sum_j (p_ij - q_ij) k_ij (y_i - y_j)`.
pub fn tsne_gradient_weighted(p: &Array2<f64>, y: &Array2<f64>, weights: &[f64]) -> Array2<f64> {
    let n = y.nrows();
    let (k, z) = kernel_matrix(y, weights);
    let mut grad = Array2::zeros((n, 2));
    if z <= 0.0 {
        return grad;
    }
    for i in 0..n {
        let (mut gx, mut gy) = (0.0, 0.0);
        for j in 0..n {
            if i == j {
                continue;
            }
            let kij = k[[i, j]];
            let q = weights[i] * weights[j] * kij / z;
            let f = (p[[i, j]] - q) * kij;
            gx += f * (y[[i, 0]] - y[[j, 0]]);
            gy += f * (y[[i, 1]] - y[[j, 1]]);
        }
        grad[[i, 0]] = 4.0 * gx;
        grad[[i, 1]] = 4.0 * gy;
    }
    grad
}

/// `sum_{i != j} p_ij ln(p_ij / q_ij)`, with `q` floored.
pub fn kl_divergence(p: &Array2<f64>, y: &Array2<f64>) -> f64 {
    kl_divergence_weighted(p, y, &vec![1.0; y.nrows()])
}

pub fn kl_divergence_weighted(p: &Array2<f64>, y: &Array2<f64>, weights: &[f64]) -> f64 {
    let n = y.nrows();
    let (k, z) = kernel_matrix(y, weights);
    let mut kl = 0.0;
    for i in 0..n {
        for j in 0..n {
            let pij = p[[i, j]];
            if i == j || pij <= 0.0 {
                continue;
            }
            let q = if z > 0.0 {
                weights[i] * weights[j] * k[[i, j]] / z
            } else {
                0.0
            };
            kl += pij * (pij / q.max(Q_FLOOR)).ln();
        }
    }
    kl.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::arr2;

    #[test]
    fn coincident_points_with_uniform_p_have_zero_gradient() {
        let n = 5;
        let p = Array2::from_shape_fn((n, n), |(i, j)| if i == j { 0.0 } else { 1.0 / 20.0 });
        let y = Array2::from_elem((n, 2), 0.7);
        assert!(tsne_gradient(&p, &y).iter().all(|&g| g == 0.0));
        // Q is uniform as well, so the divergence vanishes.
        assert!(kl_divergence(&p, &y) < 1e-15);
    }

    #[test]
    fn translation_invariant() {
        let p = arr2(&[[0.0, 0.2, 0.1], [0.2, 0.0, 0.2], [0.1, 0.2, 0.0]]);
        let y = arr2(&[[0.0, 1.0], [2.0, -1.0], [0.5, 0.5]]);
        let shifted = &y + &arr2(&[[3.0, -7.0]]);
        let a = tsne_gradient(&p, &y);
        let b = tsne_gradient(&p, &shifted);
        for (x, z) in a.iter().zip(b.iter()) {
            assert!((x - z).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_when_q_equals_p() {
        let y = arr2(&[[0.0, 0.0], [1.0, 0.0], [0.0, 2.0], [1.5, 1.5]]);
        let n = y.nrows();
        let mut q = Array2::zeros((n, n));
        let mut z = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    q[[i, j]] = kernel(&y, i, j);
                    z += q[[i, j]];
                }
            }
        }
        q /= z;
        assert!(kl_divergence(&q, &y).abs() < 1e-14);
        assert!(tsne_gradient(&q, &y).iter().all(|g| g.abs() < 1e-14));
    }
}
