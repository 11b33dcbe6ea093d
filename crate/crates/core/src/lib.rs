//! Deceptive-review detection toolkit.
//!
//! The pipeline: load a labeled review corpus, preprocess text into lemma
//! tokens, build n-gram Count or TF-IDF features capped at `max_features`,
//! train one of five classifiers, and evaluate under hold-out or k-fold
//! protocols. Synonym-replacement augmentation expands training data
//! without ever touching the test split.
//!
//! ```
//! use veridict::corpus::{Corpus, Review, Label, SplitConfig};
//! use veridict::eval::{evaluate_holdout, ClassifierKind, ExperimentConfig, Protocol, Resources};
//! use veridict::features::{FeatureConfig, FeatureMode, NgramRange};
//!
//! let reviews = (0..20)
//!     .map(|i| {
//!         if i % 2 == 0 {
//!             Review::new(i, format!("quiet room fair price number {i}"), Label::Truthful)
//!         } else {
//!             Review::new(i, format!("amazing wonderful luxury palace {i}"), Label::Deceptive)
//!         }
//!     })
//!     .collect();
//! let corpus = Corpus::new(reviews);
//! let cfg = ExperimentConfig::new(
//!     FeatureConfig::new(NgramRange::new(1, 2).unwrap(), 1000, FeatureMode::TfIdf),
//!     ClassifierKind::PassiveAggressive,
//!     SplitConfig::default(),
//!     Protocol::HoldOut,
//! );
//! let report = evaluate_holdout(&corpus, &cfg, &Resources::default()).unwrap();
//! assert!(report.accuracy >= 0.5);
//! ```

pub mod augment;
pub mod bundle;
pub mod classifiers;
pub mod cli;
pub mod corpus;
pub mod eval;
pub mod features;
pub mod rng;
pub mod textprep;

pub use bundle::{load_model, save_model, ModelBundle};
pub use corpus::{load_csv, Corpus, Label, Review, SplitConfig};
pub use eval::{evaluate_holdout, evaluate_kfold, sweep, ClassifierKind, EvalReport, Protocol};
pub use features::{FeatureConfig, FeatureMode, NgramRange};
