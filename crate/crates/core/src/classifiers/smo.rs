//! RBF-kernel SVM trained with simplified sequential minimal optimization.

use crate::corpus::Label;
use crate::features::SparseVector;
use crate::rng::SplitMix64;

use super::{check_training_set, KernelSVMModel, TrainConfig, TrainError};

// Consecutive violation-free sweeps required to declare convergence, and a
// hard cap on total sweeps. n <= 5000 examples is the practical limit: the
// kernel matrix is materialized.
const CLEAN_SWEEPS: usize = 5;
const MAX_SWEEPS: usize = 2000;
const MIN_STEP: f64 = 1e-5;
const SV_CUTOFF: f64 = 1e-12;

fn rbf(gamma: f64, a: &SparseVector, b: &SparseVector) -> f64 {
    (-gamma * a.squared_distance(b)).exp()
}

/// sklearn-style `scale` heuristic: `1 / (dim * variance)` where the
/// variance is taken over every cell of the dense design matrix.
pub fn scale_gamma(x: &[SparseVector], dim: usize) -> f64 {
    let cells = (x.len() * dim) as f64;
    if cells == 0.0 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for xi in x {
        for (_, v) in xi.iter() {
            sum += v;
            sum_sq += v * v;
        }
    }
    let mean = sum / cells;
    let var = sum_sq / cells - mean * mean;
    if var <= 0.0 {
        1.0
    } else {
        1.0 / (dim as f64 * var)
    }
}

/// Solve the soft-margin dual with the RBF kernel via simplified SMO.
///
/// Inputs are L2-normalized before kernel evaluation (stored support
/// vectors are the normalized copies, and prediction normalizes incoming
/// vectors the same way): document vectors at different feature scales
/// otherwise collapse the RBF into a near-constant or near-identity matrix.
///
/// Terminates when [`CLEAN_SWEEPS`] consecutive sweeps find no KKT violation
/// beyond `cfg.tolerance`; hitting the sweep cap instead returns the model
/// with `converged = false`.
#[allow(clippy::needless_range_loop)]
pub fn train_kernel_svm(
    x: &[SparseVector],
    y: &[Label],
    dim: usize,
    cfg: &TrainConfig,
) -> Result<KernelSVMModel, TrainError> {
    check_training_set(x, y)?;
    let x: Vec<SparseVector> = x.iter().map(|v| v.l2_normalized()).collect();
    let n = x.len();
    let c = cfg.c;
    let tol = cfg.tolerance;
    let signs: Vec<f64> = y.iter().map(|l| l.to_sign()).collect();

    let kernel: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| rbf(cfg.gamma, &x[i], &x[j])).collect())
        .collect();

    let mut alpha = vec![0.0f64; n];
    let mut bias = 0.0f64;
    // f[k] = sum_j alpha_j y_j K[j][k], maintained incrementally.
    let mut f = vec![0.0f64; n];
    let mut rng = SplitMix64::new(cfg.seed);

    let mut clean = 0;
    let mut sweeps = 0;
    while clean < CLEAN_SWEEPS && sweeps < MAX_SWEEPS {
        let mut changed = 0;
        for i in 0..n {
            let e_i = f[i] + bias - signs[i];
            let r_i = e_i * signs[i];
            if !((r_i < -tol && alpha[i] < c) || (r_i > tol && alpha[i] > 0.0)) {
                continue;
            }
            // Random partner, as in the simplified variant.
            let mut j = rng.next_below(n - 1);
            if j >= i {
                j += 1;
            }
            let e_j = f[j] + bias - signs[j];

            let (ai_old, aj_old) = (alpha[i], alpha[j]);
            let (lo, hi) = if signs[i] != signs[j] {
                ((aj_old - ai_old).max(0.0), (c + aj_old - ai_old).min(c))
            } else {
                ((ai_old + aj_old - c).max(0.0), (ai_old + aj_old).min(c))
            };
            if lo >= hi {
                continue;
            }
            let eta = 2.0 * kernel[i][j] - kernel[i][i] - kernel[j][j];
            if eta >= 0.0 {
                continue;
            }
            let mut aj_new = aj_old - signs[j] * (e_i - e_j) / eta;
            aj_new = aj_new.clamp(lo, hi);
            if (aj_new - aj_old).abs() < MIN_STEP {
                continue;
            }
            let ai_new = ai_old + signs[i] * signs[j] * (aj_old - aj_new);

            let b1 = bias
                - e_i
                - signs[i] * (ai_new - ai_old) * kernel[i][i]
                - signs[j] * (aj_new - aj_old) * kernel[i][j];
            let b2 = bias
                - e_j
                - signs[i] * (ai_new - ai_old) * kernel[i][j]
                - signs[j] * (aj_new - aj_old) * kernel[j][j];
            bias = if ai_new > 0.0 && ai_new < c {
                b1
            } else if aj_new > 0.0 && aj_new < c {
                b2
            } else {
                (b1 + b2) / 2.0
            };

            let delta_i = (ai_new - ai_old) * signs[i];
            let delta_j = (aj_new - aj_old) * signs[j];
            for k in 0..n {
                f[k] += delta_i * kernel[i][k] + delta_j * kernel[j][k];
            }
            alpha[i] = ai_new;
            alpha[j] = aj_new;
            changed += 1;
        }
        clean = if changed == 0 { clean + 1 } else { 0 };
        sweeps += 1;
    }

    let mut support_vectors = Vec::new();
    let mut alphas = Vec::new();
    for i in 0..n {
        if alpha[i] > SV_CUTOFF {
            support_vectors.push(x[i].clone());
            alphas.push(alpha[i] * signs[i]);
        }
    }

    Ok(KernelSVMModel {
        support_vectors,
        alphas,
        bias,
        gamma: cfg.gamma,
        c,
        dim,
        converged: clean >= CLEAN_SWEEPS,
    })
}
