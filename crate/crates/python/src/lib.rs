//! Python bindings: corpus loading and splits, text preprocessing,
//! experiment evaluation, augmentation, and trained-model inference.

use std::path::PathBuf;
use std::sync::OnceLock;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use veridict::augment::{augment_corpus, load_lexicon, AugmentConfig, SynonymLexicon};
use veridict::bundle::{load_model as load_bundle, save_model, ModelBundle, Provenance};
use veridict::corpus::{self, Corpus, SplitConfig};
use veridict::eval::{evaluate, fit_full, ClassifierKind, ExperimentConfig, Protocol, Resources};
use veridict::features::{FeatureConfig, FeatureMode, NgramRange};
use veridict::textprep;

fn resources() -> &'static Resources {
    static RESOURCES: OnceLock<Resources> = OnceLock::new();
    RESOURCES.get_or_init(Resources::default)
}

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn io_err(e: impl std::fmt::Display) -> PyErr {
    PyIOError::new_err(e.to_string())
}

fn parse_kind(s: &str) -> PyResult<ClassifierKind> {
    ClassifierKind::parse(s)
        .ok_or_else(|| value_err(format!("unknown classifier `{s}` (lr|lsvm|pa|nb|svm)")))
}

fn parse_mode(s: &str) -> PyResult<FeatureMode> {
    match s.to_ascii_lowercase().as_str() {
        "count" | "bow" => Ok(FeatureMode::Count),
        "tfidf" | "tf-idf" => Ok(FeatureMode::TfIdf),
        _ => Err(value_err(format!(
            "unknown feature mode `{s}` (count|tfidf)"
        ))),
    }
}

fn parse_protocol(s: &str) -> PyResult<Protocol> {
    Protocol::parse(s).ok_or_else(|| value_err(format!("unknown protocol `{s}` (holdout|kfold)")))
}

/// A labeled review collection.
#[pyclass(name = "Corpus")]
#[derive(Clone)]
struct PyCorpus {
    inner: Corpus,
}

#[pymethods]
impl PyCorpus {
    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        let c = self.inner.label_counts();
        format!(
            "Corpus(n={}, truthful={}, deceptive={})",
            self.inner.len(),
            c.get(&corpus::Label::Truthful).copied().unwrap_or(0),
            c.get(&corpus::Label::Deceptive).copied().unwrap_or(0),
        )
    }

    /// Per-label counts as `{"truthful": n, "deceptive": m}`.
    fn label_counts<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (label, count) in self.inner.label_counts() {
            d.set_item(label.as_str(), count)?;
        }
        Ok(d)
    }

    /// One review as a dict.
    fn review<'py>(&self, py: Python<'py>, index: usize) -> PyResult<Bound<'py, PyDict>> {
        let r = self
            .inner
            .reviews()
            .get(index)
            .ok_or_else(|| value_err(format!("index {index} out of range")))?;
        let d = PyDict::new(py);
        d.set_item("id", r.id)?;
        d.set_item("text", &r.text)?;
        d.set_item("label", r.label.as_str())?;
        d.set_item("polarity", r.polarity.map(|p| p.as_str()))?;
        d.set_item("hotel", r.hotel.as_deref())?;
        d.set_item("source", r.source.as_deref())?;
        d.set_item("parent_id", r.parent_id)?;
        Ok(d)
    }

    /// Deterministic stratified hold-out split.
    #[pyo3(signature = (test_fraction=0.2, seed=0, stratified=true))]
    fn train_test_split(
        &self,
        test_fraction: f64,
        seed: u64,
        stratified: bool,
    ) -> PyResult<(PyCorpus, PyCorpus)> {
        let cfg = SplitConfig {
            test_fraction,
            seed,
            stratified,
            ..Default::default()
        };
        let (train, test) = corpus::train_test_split(&self.inner, &cfg).map_err(value_err)?;
        Ok((PyCorpus { inner: train }, PyCorpus { inner: test }))
    }

    /// Deterministic stratified k-fold partition: list of (train, test).
    #[pyo3(signature = (k=5, seed=0, stratified=true))]
    fn kfold(&self, k: usize, seed: u64, stratified: bool) -> PyResult<Vec<(PyCorpus, PyCorpus)>> {
        let cfg = SplitConfig {
            k,
            seed,
            stratified,
            ..Default::default()
        };
        Ok(corpus::kfold_split(&self.inner, &cfg)
            .map_err(value_err)?
            .into_iter()
            .map(|(train, test)| (PyCorpus { inner: train }, PyCorpus { inner: test }))
            .collect())
    }
}

/// Load the review CSV (`deceptive` and `text` columns required).
#[pyfunction]
fn load_csv(path: PathBuf) -> PyResult<PyCorpus> {
    Ok(PyCorpus {
        inner: corpus::load_csv(path).map_err(io_err)?,
    })
}

/// Lowercase, strip URLs and punctuation, collapse whitespace.
#[pyfunction]
fn normalize(text: &str) -> String {
    textprep::normalize(text)
}

/// Full preprocessing pipeline: lemma tokens with stop words removed.
#[pyfunction]
fn preprocess(text: &str) -> Vec<String> {
    let res = resources();
    textprep::preprocess_text(text, &res.stoplist, &res.lemmas)
}

#[allow(clippy::too_many_arguments)]
fn build_config(
    classifier: &str,
    features: &str,
    ngram: (usize, usize),
    max_features: usize,
    protocol: &str,
    seed: u64,
    test_fraction: f64,
    k: usize,
    gamma: Option<f64>,
    augment_n: Option<usize>,
) -> PyResult<ExperimentConfig> {
    let range = NgramRange::new(ngram.0, ngram.1).map_err(value_err)?;
    let mut cfg = ExperimentConfig::new(
        FeatureConfig::new(range, max_features, parse_mode(features)?),
        parse_kind(classifier)?,
        SplitConfig {
            test_fraction,
            k,
            seed,
            stratified: true,
        },
        parse_protocol(protocol)?,
    );
    if let Some(g) = gamma {
        cfg.train.gamma = g;
        cfg.auto_gamma = false;
    }
    if let Some(n) = augment_n {
        cfg.augment = Some(AugmentConfig::new(n, 0.1, seed).map_err(value_err)?);
    }
    Ok(cfg)
}

/// Run one experiment; returns a dict with accuracy, confusion matrix,
/// optional per-fold accuracies, and the seed.
#[pyfunction]
#[pyo3(signature = (corpus, classifier="pa", features="tfidf", ngram=(1, 3),
                    max_features=11000, protocol="holdout", seed=0,
                    test_fraction=0.2, k=5, gamma=None, augment_n=None))]
#[allow(clippy::too_many_arguments)]
fn evaluate_experiment<'py>(
    py: Python<'py>,
    corpus: &PyCorpus,
    classifier: &str,
    features: &str,
    ngram: (usize, usize),
    max_features: usize,
    protocol: &str,
    seed: u64,
    test_fraction: f64,
    k: usize,
    gamma: Option<f64>,
    augment_n: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = build_config(
        classifier,
        features,
        ngram,
        max_features,
        protocol,
        seed,
        test_fraction,
        k,
        gamma,
        augment_n,
    )?;
    let report = evaluate(&corpus.inner, &cfg, resources()).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("accuracy", report.accuracy)?;
    d.set_item("seed", report.seed)?;
    d.set_item("classifier", classifier)?;
    d.set_item("features", features)?;
    d.set_item("protocol", protocol)?;
    let confusion = PyList::new(
        py,
        report
            .confusion
            .iter()
            .map(|row| PyList::new(py, row.iter()).unwrap()),
    )?;
    d.set_item("confusion", confusion)?;
    d.set_item("per_fold", report.per_fold)?;
    d.set_item("wall_time_s", report.wall_time_s)?;
    Ok(d)
}

/// Synonym-replacement augmentation: originals plus `n` seeded copies per
/// review. Pass the training split only.
#[pyfunction]
#[pyo3(signature = (corpus, n=10, fraction=0.1, seed=0, lexicon_path=None))]
fn augment(
    corpus: &PyCorpus,
    n: usize,
    fraction: f64,
    seed: u64,
    lexicon_path: Option<PathBuf>,
) -> PyResult<PyCorpus> {
    let cfg = AugmentConfig::new(n, fraction, seed).map_err(value_err)?;
    let lexicon = match lexicon_path {
        Some(p) => load_lexicon(p).map_err(io_err)?,
        None => SynonymLexicon::builtin(),
    };
    Ok(PyCorpus {
        inner: augment_corpus(&corpus.inner, &lexicon, &cfg),
    })
}

/// A trained pipeline (features + classifier) ready for inference.
#[pyclass(name = "Model")]
struct PyModel {
    bundle: ModelBundle,
}

#[pymethods]
impl PyModel {
    /// Predict "deceptive" or "truthful" for raw review text.
    fn predict(&self, text: &str) -> PyResult<&'static str> {
        self.bundle
            .predict_text(text, resources())
            .map(|l| l.as_str())
            .map_err(value_err)
    }

    /// Raw decision score; positive means deceptive.
    fn decision(&self, text: &str) -> PyResult<f64> {
        self.bundle
            .decision_text(text, resources())
            .map_err(value_err)
    }

    /// Persist as a versioned, checksummed JSON bundle.
    fn save(&self, path: PathBuf) -> PyResult<()> {
        save_model(&self.bundle, path).map_err(io_err)
    }

    #[getter]
    fn vocabulary_size(&self) -> usize {
        self.bundle.extractor.dimension()
    }

    fn __repr__(&self) -> String {
        format!(
            "Model(features={}, vocabulary={})",
            self.bundle.feature.mode.as_str(),
            self.bundle.extractor.dimension()
        )
    }
}

/// Train on the full given corpus and return the model.
#[pyfunction]
#[pyo3(signature = (corpus, classifier="pa", features="tfidf", ngram=(1, 3),
                    max_features=11000, seed=0, gamma=None))]
#[allow(clippy::too_many_arguments)]
fn train(
    corpus: &PyCorpus,
    classifier: &str,
    features: &str,
    ngram: (usize, usize),
    max_features: usize,
    seed: u64,
    gamma: Option<f64>,
) -> PyResult<PyModel> {
    let cfg = build_config(
        classifier,
        features,
        ngram,
        max_features,
        "holdout",
        seed,
        0.2,
        5,
        gamma,
        None,
    )?;
    let (extractor, classifier) = fit_full(&corpus.inner, &cfg, resources()).map_err(value_err)?;
    Ok(PyModel {
        bundle: ModelBundle {
            feature: cfg.feature,
            extractor,
            classifier,
            train_seed: seed,
            provenance: Provenance {
                corpus_sha256: None,
                created_unix: ModelBundle::now_unix(),
            },
        },
    })
}

/// Load a model bundle saved by `Model.save` or the CLI.
#[pyfunction]
fn load_model(path: PathBuf) -> PyResult<PyModel> {
    Ok(PyModel {
        bundle: load_bundle(path).map_err(io_err)?,
    })
}

#[pymodule]
fn veridict_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCorpus>()?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(load_csv, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(preprocess, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(augment, m)?)?;
    m.add_function(wrap_pyfunction!(train, m)?)?;
    m.add_function(wrap_pyfunction!(load_model, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
