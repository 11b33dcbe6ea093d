//! The five classifiers: passive-aggressive, logistic regression, linear
//! SVM, multinomial naive Bayes, and RBF-kernel SVM.
//!
//! All margin-based models use the encoding +1 = Deceptive, -1 = Truthful.
//! Training is single-threaded and deterministic: identical inputs and
//! config produce bit-identical models.

mod linear;
mod nb;
mod smo;

pub use linear::{
    logistic_gradient, logistic_objective, svm_objective, train_linear_svm, train_logistic,
    train_passive_aggressive,
};
pub use nb::train_multinomial_nb;
pub use smo::{scale_gamma, train_kernel_svm};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::Label;
use crate::features::SparseVector;

/// Hyperparameters shared by all trainers; each model reads what it needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub l2: f64,
    /// Aggressiveness cap for PA, box constraint for the kernel SVM.
    pub c: f64,
    /// Laplace smoothing for naive Bayes.
    pub alpha: f64,
    /// RBF kernel width.
    pub gamma: f64,
    pub seed: u64,
    /// KKT violation tolerance for SMO.
    pub tolerance: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 5,
            learning_rate: 0.1,
            l2: 1e-4,
            c: 1.0,
            alpha: 1.0,
            gamma: 1.0,
            seed: 0,
            tolerance: 1e-3,
        }
    }
}

#[derive(Debug, Error)]
pub enum TrainError {
    #[error("empty training set")]
    EmptyTrainingSet,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("class {0:?} has no training examples")]
    EmptyClass(Label),
    #[error("row {row} has a negative feature value; naive Bayes needs nonnegative inputs")]
    NegativeFeature { row: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LinearKind {
    Logistic,
    LinearSvm,
    PassiveAggressive,
}

/// Dense-weight linear decision function `w . x + b`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub kind: LinearKind,
}

impl LinearModel {
    pub fn dimension(&self) -> usize {
        self.weights.len()
    }
}

/// Class order used for naive-Bayes arrays: `[Truthful, Deceptive]`.
pub const CLASS_ORDER: [Label; 2] = [Label::Truthful, Label::Deceptive];

/// Multinomial naive Bayes parameters in log space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NBModel {
    /// Indexed by [`CLASS_ORDER`].
    pub log_prior: [f64; 2],
    /// Per class, per column: smoothed log term likelihood.
    pub log_likelihood: [Vec<f64>; 2],
    pub alpha: f64,
}

impl NBModel {
    pub fn dimension(&self) -> usize {
        self.log_likelihood[0].len()
    }

    fn class_score(&self, class: usize, x: &SparseVector) -> f64 {
        self.log_prior[class]
            + x.iter()
                .map(|(col, v)| v * self.log_likelihood[class][col])
                .sum::<f64>()
    }
}

/// RBF-kernel SVM in dual form; `alphas[i]` stores the signed `alpha_i * y_i`
/// and `support_vectors` hold L2-normalized training inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelSVMModel {
    pub support_vectors: Vec<SparseVector>,
    pub alphas: Vec<f64>,
    pub bias: f64,
    pub gamma: f64,
    pub c: f64,
    pub dim: usize,
    /// False when SMO hit its sweep cap before meeting the KKT tolerance.
    pub converged: bool,
}

impl KernelSVMModel {
    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn kernel(&self, a: &SparseVector, b: &SparseVector) -> f64 {
        (-self.gamma * a.squared_distance(b)).exp()
    }
}

/// Any trained classifier; unified predict/decision surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Classifier {
    Linear(LinearModel),
    NaiveBayes(NBModel),
    Kernel(KernelSVMModel),
}

impl Classifier {
    pub fn dimension(&self) -> usize {
        match self {
            Classifier::Linear(m) => m.dimension(),
            Classifier::NaiveBayes(m) => m.dimension(),
            Classifier::Kernel(m) => m.dimension(),
        }
    }

    /// Raw score: `w.x + b` for linear models, `sum alpha_i y_i K(s_i, x) + b`
    /// for the kernel model, and the Deceptive-minus-Truthful log odds for
    /// naive Bayes. Positive scores mean Deceptive.
    pub fn decision_function(&self, x: &SparseVector) -> Result<f64, TrainError> {
        if x.width() > self.dimension() {
            return Err(TrainError::DimensionMismatch(format!(
                "input has width {} but model dimension is {}",
                x.width(),
                self.dimension()
            )));
        }
        Ok(match self {
            Classifier::Linear(m) => x.dot_dense(&m.weights) + m.bias,
            Classifier::NaiveBayes(m) => m.class_score(1, x) - m.class_score(0, x),
            Classifier::Kernel(m) => {
                // Support vectors are stored L2-normalized; incoming vectors
                // get the same treatment.
                let x = x.l2_normalized();
                m.support_vectors
                    .iter()
                    .zip(&m.alphas)
                    .map(|(sv, &a)| a * m.kernel(sv, &x))
                    .sum::<f64>()
                    + m.bias
            }
        })
    }

    /// Score-sign prediction; an exact zero resolves to Deceptive.
    pub fn predict(&self, x: &SparseVector) -> Result<Label, TrainError> {
        Ok(Label::from_sign(self.decision_function(x)?))
    }
}

/// Free-function forms mirroring the model-agnostic call sites.
pub fn decision_function(model: &Classifier, x: &SparseVector) -> Result<f64, TrainError> {
    model.decision_function(x)
}

pub fn predict(model: &Classifier, x: &SparseVector) -> Result<Label, TrainError> {
    model.predict(x)
}

pub(crate) fn check_training_set(x: &[SparseVector], y: &[Label]) -> Result<(), TrainError> {
    if x.is_empty() {
        return Err(TrainError::EmptyTrainingSet);
    }
    if x.len() != y.len() {
        return Err(TrainError::DimensionMismatch(format!(
            "{} examples but {} labels",
            x.len(),
            y.len()
        )));
    }
    Ok(())
}
