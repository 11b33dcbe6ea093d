//! Multinomial naive Bayes with Laplace smoothing.

use crate::corpus::Label;
use crate::features::SparseVector;

use super::{check_training_set, NBModel, TrainConfig, TrainError, CLASS_ORDER};

/// Fit class priors and smoothed term likelihoods from count vectors.
///
/// Nonnegative fractional values (TF-IDF weights) are accepted as soft
/// counts; negative values are rejected.
#[allow(clippy::needless_range_loop)]
pub fn train_multinomial_nb(
    x: &[SparseVector],
    y: &[Label],
    dim: usize,
    cfg: &TrainConfig,
) -> Result<NBModel, TrainError> {
    check_training_set(x, y)?;
    for (row, xi) in x.iter().enumerate() {
        if xi.iter().any(|(_, v)| v < 0.0) {
            return Err(TrainError::NegativeFeature { row });
        }
        if xi.width() > dim {
            return Err(TrainError::DimensionMismatch(format!(
                "row {row} has width {} but dimension is {dim}",
                xi.width()
            )));
        }
    }

    let mut class_n = [0usize; 2];
    let mut term_counts = [vec![0.0f64; dim], vec![0.0f64; dim]];
    for (xi, yi) in x.iter().zip(y) {
        let c = CLASS_ORDER.iter().position(|l| l == yi).unwrap();
        class_n[c] += 1;
        for (col, v) in xi.iter() {
            term_counts[c][col] += v;
        }
    }
    for (c, label) in CLASS_ORDER.iter().enumerate() {
        if class_n[c] == 0 {
            return Err(TrainError::EmptyClass(*label));
        }
    }

    let n = x.len() as f64;
    let log_prior = [(class_n[0] as f64 / n).ln(), (class_n[1] as f64 / n).ln()];
    let alpha = cfg.alpha;
    let log_likelihood = term_counts.map(|counts| {
        let total: f64 = counts.iter().sum();
        let denom = total + alpha * dim as f64;
        counts
            .iter()
            .map(|&c| ((c + alpha) / denom).ln())
            .collect::<Vec<f64>>()
    });

    Ok(NBModel {
        log_prior,
        log_likelihood,
        alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::Classifier;

    fn sv(entries: &[(usize, f64)]) -> SparseVector {
        SparseVector::from_entries(entries.iter().copied())
    }

    #[test]
    fn balanced_priors() {
        let xs = [
            sv(&[(0, 1.0)]),
            sv(&[(0, 1.0)]),
            sv(&[(1, 1.0)]),
            sv(&[(1, 1.0)]),
        ];
        let ys = [
            Label::Truthful,
            Label::Truthful,
            Label::Deceptive,
            Label::Deceptive,
        ];
        let m = train_multinomial_nb(&xs, &ys, 2, &TrainConfig::default()).unwrap();
        assert!((m.log_prior[0] - 0.5f64.ln()).abs() < 1e-12);
        assert!((m.log_prior[1] - 0.5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn hand_enumerated_two_class_corpus() {
        // Class A (Truthful): tokens ["x","x"]; class B (Deceptive): ["y"].
        // Columns: x=0, y=1; alpha=1, V=2.
        // P(x|A) = (2+1)/(2+2) = 0.75, P(y|A) = 1/4,
        // P(x|B) = (0+1)/(1+2) = 1/3, P(y|B) = 2/3.
        let xs = [sv(&[(0, 2.0)]), sv(&[(1, 1.0)])];
        let ys = [Label::Truthful, Label::Deceptive];
        let m = train_multinomial_nb(&xs, &ys, 2, &TrainConfig::default()).unwrap();

        assert!((m.log_likelihood[0][0].exp() - 0.75).abs() < 1e-12);
        assert!((m.log_likelihood[0][1].exp() - 0.25).abs() < 1e-12);
        assert!((m.log_likelihood[1][0].exp() - 1.0 / 3.0).abs() < 1e-12);
        assert!((m.log_likelihood[1][1].exp() - 2.0 / 3.0).abs() < 1e-12);

        // predict(["x"]) = class A (Truthful).
        let clf = Classifier::NaiveBayes(m);
        assert_eq!(clf.predict(&sv(&[(0, 1.0)])).unwrap(), Label::Truthful);
    }

    #[test]
    fn likelihoods_normalize_per_class() {
        let xs = [
            sv(&[(0, 3.0), (2, 1.0)]),
            sv(&[(1, 2.0)]),
            sv(&[(0, 1.0), (1, 1.0), (2, 5.0)]),
            sv(&[(2, 2.0)]),
        ];
        let ys = [
            Label::Truthful,
            Label::Deceptive,
            Label::Truthful,
            Label::Deceptive,
        ];
        let m = train_multinomial_nb(&xs, &ys, 3, &TrainConfig::default()).unwrap();
        for c in 0..2 {
            let sum: f64 = m.log_likelihood[c].iter().map(|l| l.exp()).sum();
            assert!((sum - 1.0).abs() < 1e-9, "class {c} sums to {sum}");
        }
    }

    #[test]
    fn empty_vector_falls_back_to_prior() {
        // 1 truthful vs 3 deceptive: prior favors Deceptive.
        let xs = [
            sv(&[(0, 1.0)]),
            sv(&[(1, 1.0)]),
            sv(&[(1, 1.0)]),
            sv(&[(1, 1.0)]),
        ];
        let ys = [
            Label::Truthful,
            Label::Deceptive,
            Label::Deceptive,
            Label::Deceptive,
        ];
        let m = train_multinomial_nb(&xs, &ys, 2, &TrainConfig::default()).unwrap();
        let clf = Classifier::NaiveBayes(m);
        assert_eq!(clf.predict(&SparseVector::new()).unwrap(), Label::Deceptive);

        // Balanced priors and empty input: exact tie resolves to Deceptive.
        let xs2 = [sv(&[(0, 1.0)]), sv(&[(0, 1.0)])];
        let ys2 = [Label::Truthful, Label::Deceptive];
        let m2 = train_multinomial_nb(&xs2, &ys2, 2, &TrainConfig::default()).unwrap();
        let clf2 = Classifier::NaiveBayes(m2);
        assert_eq!(clf2.decision_function(&SparseVector::new()).unwrap(), 0.0);
        assert_eq!(
            clf2.predict(&SparseVector::new()).unwrap(),
            Label::Deceptive
        );
    }

    #[test]
    fn one_class_corpus_rejected() {
        let xs = [sv(&[(0, 1.0)]), sv(&[(1, 1.0)])];
        let ys = [Label::Truthful, Label::Truthful];
        assert!(matches!(
            train_multinomial_nb(&xs, &ys, 2, &TrainConfig::default()),
            Err(TrainError::EmptyClass(Label::Deceptive))
        ));
    }

    #[test]
    fn negative_features_rejected() {
        let xs = [sv(&[(0, 1.0)]), sv(&[(0, -0.5)])];
        let ys = [Label::Truthful, Label::Deceptive];
        assert!(matches!(
            train_multinomial_nb(&xs, &ys, 1, &TrainConfig::default()),
            Err(TrainError::NegativeFeature { row: 1 })
        ));
    }
}
