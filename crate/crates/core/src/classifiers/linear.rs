//! SGD-family linear trainers: passive-aggressive (PA-I), logistic
//! regression, and hinge-loss linear SVM.

use crate::corpus::Label;
use crate::features::SparseVector;
use crate::rng::SplitMix64;

use super::{check_training_set, LinearKind, LinearModel, TrainConfig, TrainError};

fn epoch_order(n: usize, rng: &mut SplitMix64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    order
}

/// PA-I online updates: `tau = min(C, loss / (||x||^2 + 1))`, the +1 being
/// the implicit bias feature.
pub fn train_passive_aggressive(
    x: &[SparseVector],
    y: &[Label],
    dim: usize,
    cfg: &TrainConfig,
) -> Result<LinearModel, TrainError> {
    check_training_set(x, y)?;
    let mut w = vec![0.0; dim];
    let mut b = 0.0;
    let mut rng = SplitMix64::new(cfg.seed);
    for _epoch in 0..cfg.epochs {
        for i in epoch_order(x.len(), &mut rng) {
            let yi = y[i].to_sign();
            let margin = yi * (x[i].dot_dense(&w) + b);
            let loss = (1.0 - margin).max(0.0);
            if loss > 0.0 {
                let tau = cfg.c.min(loss / (x[i].norm_sq() + 1.0));
                for (col, v) in x[i].iter() {
                    w[col] += tau * yi * v;
                }
                b += tau * yi;
            }
        }
    }
    Ok(LinearModel {
        weights: w,
        bias: b,
        kind: LinearKind::PassiveAggressive,
    })
}

fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

fn log1p_exp(t: f64) -> f64 {
    // ln(1 + e^t) without overflow
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

/// Mean log-loss plus `(l2/2)||w||^2` (bias unregularized).
pub fn logistic_objective(x: &[SparseVector], y: &[Label], w: &[f64], b: f64, l2: f64) -> f64 {
    let n = x.len() as f64;
    let loss: f64 = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| log1p_exp(-yi.to_sign() * (xi.dot_dense(w) + b)))
        .sum();
    loss / n + 0.5 * l2 * w.iter().map(|v| v * v).sum::<f64>()
}

/// Analytic gradient of [`logistic_objective`]; returns `(grad_w, grad_b)`.
pub fn logistic_gradient(
    x: &[SparseVector],
    y: &[Label],
    w: &[f64],
    b: f64,
    l2: f64,
) -> (Vec<f64>, f64) {
    let n = x.len() as f64;
    let mut gw = vec![0.0; w.len()];
    let mut gb = 0.0;
    for (xi, yi) in x.iter().zip(y) {
        let s = yi.to_sign();
        let g = sigmoid(-s * (xi.dot_dense(w) + b));
        for (col, v) in xi.iter() {
            gw[col] -= s * g * v / n;
        }
        gb -= s * g / n;
    }
    for (gwj, wj) in gw.iter_mut().zip(w) {
        *gwj += l2 * wj;
    }
    (gw, gb)
}

/// Per-example SGD on the regularized log-loss.
///
/// The step is normalized by `||x||^2 + 1` (the +1 covering the implicit
/// bias feature), so each update moves the example's margin by about
/// `learning_rate * gradient` regardless of feature magnitude. Raw counts
/// and TF-IDF weights differ by orders of magnitude; a fixed step cannot
/// serve both.
pub fn train_logistic(
    x: &[SparseVector],
    y: &[Label],
    dim: usize,
    cfg: &TrainConfig,
) -> Result<LinearModel, TrainError> {
    check_training_set(x, y)?;
    let mut w = vec![0.0; dim];
    let mut b = 0.0;
    let mut rng = SplitMix64::new(cfg.seed);
    for _epoch in 0..cfg.epochs {
        for i in epoch_order(x.len(), &mut rng) {
            let yi = y[i].to_sign();
            let g = sigmoid(-yi * (x[i].dot_dense(&w) + b));
            let eta = cfg.learning_rate / (x[i].norm_sq() + 1.0);
            let decay = 1.0 - eta * cfg.l2;
            for wj in w.iter_mut() {
                *wj *= decay;
            }
            let step = eta * yi * g;
            for (col, v) in x[i].iter() {
                w[col] += step * v;
            }
            b += step;
        }
    }
    Ok(LinearModel {
        weights: w,
        bias: b,
        kind: LinearKind::Logistic,
    })
}

/// `(l2/2)||w||^2` plus mean hinge loss.
pub fn svm_objective(x: &[SparseVector], y: &[Label], w: &[f64], b: f64, l2: f64) -> f64 {
    let n = x.len() as f64;
    let hinge: f64 = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| (1.0 - yi.to_sign() * (xi.dot_dense(w) + b)).max(0.0))
        .sum();
    0.5 * l2 * w.iter().map(|v| v * v).sum::<f64>() + hinge / n
}

/// Subgradient SGD on the regularized hinge loss; when an example's margin
/// is at least 1 the step only applies the weight decay. Steps are
/// norm-adaptive like [`train_logistic`]'s.
pub fn train_linear_svm(
    x: &[SparseVector],
    y: &[Label],
    dim: usize,
    cfg: &TrainConfig,
) -> Result<LinearModel, TrainError> {
    check_training_set(x, y)?;
    let mut w = vec![0.0; dim];
    let mut b = 0.0;
    let mut rng = SplitMix64::new(cfg.seed);
    for _epoch in 0..cfg.epochs {
        for i in epoch_order(x.len(), &mut rng) {
            let yi = y[i].to_sign();
            let margin = yi * (x[i].dot_dense(&w) + b);
            let eta = cfg.learning_rate / (x[i].norm_sq() + 1.0);
            let decay = 1.0 - eta * cfg.l2;
            for wj in w.iter_mut() {
                *wj *= decay;
            }
            if margin < 1.0 {
                let step = eta * yi;
                for (col, v) in x[i].iter() {
                    w[col] += step * v;
                }
                b += step;
            }
        }
    }
    Ok(LinearModel {
        weights: w,
        bias: b,
        kind: LinearKind::LinearSvm,
    })
}
