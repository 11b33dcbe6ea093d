//! End-to-end experiment harness: split, preprocess, fit features on the
//! training part only, train, predict, and report.
//!
//! Hold-out and k-fold protocols produce [`EvalReport`]s; [`sweep`] runs a
//! feature/classifier grid on one shared split so rows are comparable.

use std::collections::HashSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::augment::{augment_corpus, AugmentConfig, SynonymLexicon};
use crate::classifiers::{
    scale_gamma, train_kernel_svm, train_linear_svm, train_logistic, train_multinomial_nb,
    train_passive_aggressive, Classifier, TrainConfig, TrainError,
};
use crate::corpus::{kfold_split, train_test_split, Corpus, CorpusError, Label, SplitConfig};
use crate::features::{
    FeatureConfig, FeatureError, FeatureExtractor, FeatureMode, NgramRange, SparseVector,
};
use crate::textprep::{preprocess, Document, LemmaDictionary, StopwordList};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassifierKind {
    Logistic,
    LinearSvm,
    PassiveAggressive,
    NaiveBayes,
    KernelSvm,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 5] = [
        ClassifierKind::Logistic,
        ClassifierKind::LinearSvm,
        ClassifierKind::PassiveAggressive,
        ClassifierKind::NaiveBayes,
        ClassifierKind::KernelSvm,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClassifierKind::Logistic => "lr",
            ClassifierKind::LinearSvm => "lsvm",
            ClassifierKind::PassiveAggressive => "pa",
            ClassifierKind::NaiveBayes => "nb",
            ClassifierKind::KernelSvm => "svm",
        }
    }

    pub fn parse(s: &str) -> Option<ClassifierKind> {
        Some(match s.to_ascii_lowercase().as_str() {
            "lr" => ClassifierKind::Logistic,
            "lsvm" => ClassifierKind::LinearSvm,
            "pa" => ClassifierKind::PassiveAggressive,
            "nb" => ClassifierKind::NaiveBayes,
            "svm" => ClassifierKind::KernelSvm,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Protocol {
    HoldOut,
    KFold,
}

impl Protocol {
    pub fn as_str(&self) -> &'static str {
        match self {
            Protocol::HoldOut => "holdout",
            Protocol::KFold => "kfold",
        }
    }

    pub fn parse(s: &str) -> Option<Protocol> {
        Some(match s.to_ascii_lowercase().as_str() {
            "holdout" => Protocol::HoldOut,
            "kfold" => Protocol::KFold,
            _ => return None,
        })
    }
}

/// Everything one experiment needs; fully serializable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub feature: FeatureConfig,
    pub classifier: ClassifierKind,
    pub train: TrainConfig,
    /// Kernel SVM only: replace `train.gamma` with the scale heuristic
    /// computed on the fitted training matrix.
    pub auto_gamma: bool,
    pub split: SplitConfig,
    pub protocol: Protocol,
    /// Applied to the training part only, after splitting.
    pub augment: Option<AugmentConfig>,
}

impl ExperimentConfig {
    pub fn new(
        feature: FeatureConfig,
        classifier: ClassifierKind,
        split: SplitConfig,
        protocol: Protocol,
    ) -> ExperimentConfig {
        // Experiments run the SGD models to effective convergence; the bare
        // TrainConfig default (5 epochs) underfits weak-signal TF-IDF data.
        let train = TrainConfig {
            seed: split.seed,
            epochs: 30,
            ..Default::default()
        };
        ExperimentConfig {
            feature,
            classifier,
            train,
            auto_gamma: true,
            split,
            protocol,
            augment: None,
        }
    }
}

/// Shared immutable preprocessing/augmentation resources.
pub struct Resources {
    pub stoplist: StopwordList,
    pub lemmas: LemmaDictionary,
    pub lexicon: SynonymLexicon,
}

impl Default for Resources {
    fn default() -> Self {
        Resources {
            stoplist: StopwordList::builtin(),
            lemmas: LemmaDictionary::builtin(),
            lexicon: SynonymLexicon::builtin(),
        }
    }
}

/// Confusion matrix indexed `[truth][prediction]` with 0 = Truthful,
/// 1 = Deceptive.
pub type Confusion = [[usize; 2]; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub config: ExperimentConfig,
    pub accuracy: f64,
    pub per_fold: Option<Vec<f64>>,
    pub confusion: Confusion,
    pub wall_time_s: f64,
    pub seed: u64,
    /// Digest of the fitted vocabulary and IDF; identical digests certify
    /// identical fitted features (leakage checks).
    pub feature_fingerprint: u64,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("prediction and truth lists differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("empty input")]
    EmptyInput,
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error(transparent)]
    Train(#[from] TrainError),
    #[error("augmented review {id} has parent {parent} inside the test split")]
    AugmentLeak { id: usize, parent: usize },
}

/// Fraction of matching positions.
pub fn accuracy(predictions: &[Label], truth: &[Label]) -> Result<f64, EvalError> {
    if predictions.len() != truth.len() {
        return Err(EvalError::LengthMismatch(predictions.len(), truth.len()));
    }
    if predictions.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let matches = predictions
        .iter()
        .zip(truth)
        .filter(|(p, t)| p == t)
        .count();
    Ok(matches as f64 / truth.len() as f64)
}

/// Train the requested classifier kind on prepared vectors.
pub fn train_classifier(
    kind: ClassifierKind,
    x: &[SparseVector],
    y: &[Label],
    dim: usize,
    cfg: &TrainConfig,
) -> Result<Classifier, TrainError> {
    Ok(match kind {
        ClassifierKind::Logistic => Classifier::Linear(train_logistic(x, y, dim, cfg)?),
        ClassifierKind::LinearSvm => Classifier::Linear(train_linear_svm(x, y, dim, cfg)?),
        ClassifierKind::PassiveAggressive => {
            Classifier::Linear(train_passive_aggressive(x, y, dim, cfg)?)
        }
        ClassifierKind::NaiveBayes => Classifier::NaiveBayes(train_multinomial_nb(x, y, dim, cfg)?),
        ClassifierKind::KernelSvm => Classifier::Kernel(train_kernel_svm(x, y, dim, cfg)?),
    })
}

fn preprocess_corpus(corpus: &Corpus, res: &Resources) -> Vec<Document> {
    corpus
        .reviews()
        .iter()
        .map(|r| preprocess(r, &res.stoplist, &res.lemmas))
        .collect()
}

fn labels_of(corpus: &Corpus) -> Vec<Label> {
    corpus.reviews().iter().map(|r| r.label).collect()
}

/// Digest of the fitted features: terms, document frequencies, corpus size,
/// and IDF bit patterns.
pub fn feature_fingerprint(extractor: &FeatureExtractor) -> u64 {
    let mut hasher = Sha256::new();
    let vocab = extractor.vocabulary();
    for term in vocab.terms() {
        hasher.update(term.as_bytes());
        hasher.update([0u8]);
    }
    for col in 0..vocab.len() {
        hasher.update((vocab.doc_freq(col) as u64).to_le_bytes());
    }
    hasher.update((vocab.n_docs() as u64).to_le_bytes());
    if let Some(idf) = extractor.idf() {
        for v in idf {
            hasher.update(v.to_bits().to_le_bytes());
        }
    }
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

struct CellOutcome {
    accuracy: f64,
    confusion: Confusion,
    fingerprint: u64,
}

/// Per-row conditioning between vectorizer and classifier: TF-IDF vectors
/// are L2-normalized (their raw norms are tiny and classifier bias terms
/// would otherwise swamp the feature signal); raw counts pass through.
/// Purely per-document, so it cannot leak test statistics.
pub fn condition(v: SparseVector, mode: FeatureMode) -> SparseVector {
    match mode {
        FeatureMode::TfIdf => v.l2_normalized(),
        FeatureMode::Count => v,
    }
}

/// Fit features on the training documents only, train, score the test set.
#[allow(clippy::too_many_arguments)]
fn run_cell(
    train_docs: &[Document],
    y_train: &[Label],
    test_docs: &[Document],
    y_test: &[Label],
    feature: &FeatureConfig,
    kind: ClassifierKind,
    train_cfg: &TrainConfig,
    auto_gamma: bool,
) -> Result<CellOutcome, EvalError> {
    let extractor = FeatureExtractor::fit(train_docs, feature)?;
    let dim = extractor.dimension();
    let x_train: Vec<SparseVector> = train_docs
        .iter()
        .map(|d| condition(extractor.transform(d), feature.mode))
        .collect();
    let x_test: Vec<SparseVector> = test_docs
        .iter()
        .map(|d| condition(extractor.transform(d), feature.mode))
        .collect();

    let mut cfg = *train_cfg;
    if kind == ClassifierKind::KernelSvm && auto_gamma {
        // The kernel SVM sees L2-normalized vectors; match the heuristic.
        let normed: Vec<SparseVector> = x_train.iter().map(|v| v.l2_normalized()).collect();
        cfg.gamma = scale_gamma(&normed, dim);
    }
    let model = train_classifier(kind, &x_train, y_train, dim, &cfg)?;

    let mut confusion = [[0usize; 2]; 2];
    let mut predictions = Vec::with_capacity(x_test.len());
    for x in &x_test {
        predictions.push(model.predict(x)?);
    }
    for (p, t) in predictions.iter().zip(y_test) {
        let ti = usize::from(*t == Label::Deceptive);
        let pi = usize::from(*p == Label::Deceptive);
        confusion[ti][pi] += 1;
    }
    Ok(CellOutcome {
        accuracy: accuracy(&predictions, y_test)?,
        confusion,
        fingerprint: feature_fingerprint(&extractor),
    })
}

fn maybe_augment(
    train: Corpus,
    test: &Corpus,
    cfg: &ExperimentConfig,
    res: &Resources,
) -> Result<Corpus, EvalError> {
    let Some(aug) = &cfg.augment else {
        return Ok(train);
    };
    let augmented = augment_corpus(&train, &res.lexicon, aug);
    let test_ids: HashSet<usize> = test.ids().into_iter().collect();
    for r in augmented.reviews() {
        if let Some(parent) = r.parent_id {
            if test_ids.contains(&parent) {
                return Err(EvalError::AugmentLeak { id: r.id, parent });
            }
        }
    }
    Ok(augmented)
}

/// One stratified hold-out experiment.
pub fn evaluate_holdout(
    corpus: &Corpus,
    cfg: &ExperimentConfig,
    res: &Resources,
) -> Result<EvalReport, EvalError> {
    let started = Instant::now();
    let (train, test) = train_test_split(corpus, &cfg.split)?;
    let train = maybe_augment(train, &test, cfg, res)?;
    let outcome = run_cell(
        &preprocess_corpus(&train, res),
        &labels_of(&train),
        &preprocess_corpus(&test, res),
        &labels_of(&test),
        &cfg.feature,
        cfg.classifier,
        &cfg.train,
        cfg.auto_gamma,
    )?;
    Ok(EvalReport {
        config: cfg.clone(),
        accuracy: outcome.accuracy,
        per_fold: None,
        confusion: outcome.confusion,
        wall_time_s: started.elapsed().as_secs_f64(),
        seed: cfg.split.seed,
        feature_fingerprint: outcome.fingerprint,
    })
}

/// k-fold cross-validation; features and model are refit per fold and the
/// reported accuracy is the arithmetic fold mean. The confusion matrix is
/// summed across folds.
pub fn evaluate_kfold(
    corpus: &Corpus,
    cfg: &ExperimentConfig,
    res: &Resources,
) -> Result<EvalReport, EvalError> {
    let started = Instant::now();
    let folds = kfold_split(corpus, &cfg.split)?;
    let mut per_fold = Vec::with_capacity(folds.len());
    let mut confusion = [[0usize; 2]; 2];
    let mut hasher = Sha256::new();
    for (train, test) in folds {
        let train = maybe_augment(train, &test, cfg, res)?;
        let outcome = run_cell(
            &preprocess_corpus(&train, res),
            &labels_of(&train),
            &preprocess_corpus(&test, res),
            &labels_of(&test),
            &cfg.feature,
            cfg.classifier,
            &cfg.train,
            cfg.auto_gamma,
        )?;
        per_fold.push(outcome.accuracy);
        for (row, outcome_row) in confusion.iter_mut().zip(&outcome.confusion) {
            for (cell, add) in row.iter_mut().zip(outcome_row) {
                *cell += add;
            }
        }
        hasher.update(outcome.fingerprint.to_le_bytes());
    }
    let mean = per_fold.iter().sum::<f64>() / per_fold.len() as f64;
    let digest = hasher.finalize();
    Ok(EvalReport {
        config: cfg.clone(),
        accuracy: mean,
        per_fold: Some(per_fold),
        confusion,
        wall_time_s: started.elapsed().as_secs_f64(),
        seed: cfg.split.seed,
        feature_fingerprint: u64::from_le_bytes(digest[..8].try_into().unwrap()),
    })
}

/// Dispatch on the configured protocol.
pub fn evaluate(
    corpus: &Corpus,
    cfg: &ExperimentConfig,
    res: &Resources,
) -> Result<EvalReport, EvalError> {
    match cfg.protocol {
        Protocol::HoldOut => evaluate_holdout(corpus, cfg, res),
        Protocol::KFold => evaluate_kfold(corpus, cfg, res),
    }
}

/// Train on the full corpus (no held-out part); used for model export.
pub fn fit_full(
    corpus: &Corpus,
    cfg: &ExperimentConfig,
    res: &Resources,
) -> Result<(FeatureExtractor, Classifier), EvalError> {
    let docs = preprocess_corpus(corpus, res);
    let extractor = FeatureExtractor::fit(&docs, &cfg.feature)?;
    let dim = extractor.dimension();
    let x: Vec<SparseVector> = docs
        .iter()
        .map(|d| condition(extractor.transform(d), cfg.feature.mode))
        .collect();
    let mut tcfg = cfg.train;
    if cfg.classifier == ClassifierKind::KernelSvm && cfg.auto_gamma {
        let normed: Vec<SparseVector> = x.iter().map(|v| v.l2_normalized()).collect();
        tcfg.gamma = scale_gamma(&normed, dim);
    }
    let model = train_classifier(cfg.classifier, &x, &labels_of(corpus), dim, &tcfg)?;
    Ok((extractor, model))
}

/// Grid axes for the hyperparameter sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub ranges: Vec<NgramRange>,
    pub max_features: Vec<usize>,
    pub modes: Vec<FeatureMode>,
    pub classifiers: Vec<ClassifierKind>,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid {
            ranges: [(1, 1), (1, 2), (1, 3), (1, 4)]
                .iter()
                .map(|&(lo, hi)| NgramRange::new(lo, hi).unwrap())
                .collect(),
            max_features: vec![1000, 5000, 11000, 20000, 35000, 50000],
            modes: vec![FeatureMode::Count, FeatureMode::TfIdf],
            classifiers: ClassifierKind::ALL.to_vec(),
        }
    }
}

impl SweepGrid {
    pub fn cells(&self) -> usize {
        self.ranges.len() * self.max_features.len() * self.modes.len() * self.classifiers.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub feature: FeatureConfig,
    pub classifier: ClassifierKind,
    pub protocol: Protocol,
    /// None when the cell failed; `error` then carries the reason.
    pub accuracy: Option<f64>,
    pub error: Option<String>,
    pub wall_time_s: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn best(&self) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.accuracy.is_some())
    }
}

/// Evaluate every grid cell on one shared hold-out split (same seed), so
/// rows are directly comparable. Failed cells become rows with an error
/// string; the sweep continues. Rows come back sorted by accuracy
/// descending, failures last.
pub fn sweep(
    corpus: &Corpus,
    grid: &SweepGrid,
    split: &SplitConfig,
    train_cfg: &TrainConfig,
    res: &Resources,
) -> Result<SweepResult, EvalError> {
    let (train, test) = train_test_split(corpus, split)?;
    let train_docs = preprocess_corpus(&train, res);
    let test_docs = preprocess_corpus(&test, res);
    let y_train = labels_of(&train);
    let y_test = labels_of(&test);

    let mut rows = Vec::with_capacity(grid.cells());
    for &range in &grid.ranges {
        for &max_features in &grid.max_features {
            for &mode in &grid.modes {
                let feature = FeatureConfig::new(range, max_features, mode);
                for &kind in &grid.classifiers {
                    let started = Instant::now();
                    let outcome = run_cell(
                        &train_docs,
                        &y_train,
                        &test_docs,
                        &y_test,
                        &feature,
                        kind,
                        train_cfg,
                        true,
                    );
                    let wall_time_s = started.elapsed().as_secs_f64();
                    rows.push(match outcome {
                        Ok(cell) => SweepRow {
                            feature,
                            classifier: kind,
                            protocol: Protocol::HoldOut,
                            accuracy: Some(cell.accuracy),
                            error: None,
                            wall_time_s,
                            seed: split.seed,
                        },
                        Err(e) => SweepRow {
                            feature,
                            classifier: kind,
                            protocol: Protocol::HoldOut,
                            accuracy: None,
                            error: Some(e.to_string()),
                            wall_time_s,
                            seed: split.seed,
                        },
                    });
                }
            }
        }
    }
    rows.sort_by(|a, b| match (a.accuracy, b.accuracy) {
        (Some(x), Some(y)) => y.partial_cmp(&x).unwrap(),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
    Ok(SweepResult { rows })
}

pub const REPORT_CSV_HEADER: &str =
    "classifier,feature_mode,ngram_lo,ngram_hi,max_features,protocol,accuracy,seed,wall_time_s";

/// Wall time is written at one-decimal precision so reruns of a seeded
/// experiment produce byte-identical CSVs.
fn csv_row(
    classifier: ClassifierKind,
    feature: &FeatureConfig,
    protocol: Protocol,
    accuracy: Option<f64>,
    seed: u64,
    wall_time_s: f64,
) -> String {
    let acc = match accuracy {
        Some(a) => format!("{a:.6}"),
        None => "NaN".to_string(),
    };
    format!(
        "{},{},{},{},{},{},{},{},{:.1}",
        classifier.as_str(),
        feature.mode.as_str(),
        feature.range.lo(),
        feature.range.hi(),
        feature.max_features,
        protocol.as_str(),
        acc,
        seed,
        wall_time_s
    )
}

pub fn report_csv(reports: &[EvalReport]) -> String {
    let mut out = String::from(REPORT_CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&csv_row(
            r.config.classifier,
            &r.config.feature,
            r.config.protocol,
            Some(r.accuracy),
            r.seed,
            r.wall_time_s,
        ));
        out.push('\n');
    }
    out
}

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from(REPORT_CSV_HEADER);
    out.push('\n');
    for r in &result.rows {
        out.push_str(&csv_row(
            r.classifier,
            &r.feature,
            r.protocol,
            r.accuracy,
            r.seed,
            r.wall_time_s,
        ));
        out.push('\n');
    }
    out
}

/// Static prior-work reference rows for the comparison table.
pub const BASELINES: [(&str, &str, f64); 2] = [
    ("svm (ott et al.)", "liwc+bigram", 0.89),
    ("lsvm (ahmed et al.)", "tfidf", 0.90),
];

/// Baselines plus the given `(classifier, features, accuracy)` entries,
/// sorted by accuracy ascending so the best row prints last.
pub fn comparison_rows_from(ours: Vec<(String, String, f64)>) -> Vec<(String, String, f64)> {
    let mut rows: Vec<(String, String, f64)> = BASELINES
        .iter()
        .map(|&(name, feat, acc)| (name.to_string(), feat.to_string(), acc))
        .collect();
    rows.extend(ours);
    rows.sort_by(|a, b| a.2.partial_cmp(&b.2).unwrap());
    rows
}

/// Comparison rows for in-memory reports.
pub fn comparison_rows(reports: &[EvalReport]) -> Vec<(String, String, f64)> {
    comparison_rows_from(
        reports
            .iter()
            .map(|r| {
                (
                    format!("{} (ours)", r.config.classifier.as_str()),
                    format!(
                        "{} ({},{})",
                        r.config.feature.mode.as_str(),
                        r.config.feature.range.lo(),
                        r.config.feature.range.hi()
                    ),
                    r.accuracy,
                )
            })
            .collect(),
    )
}

/// Plain-text table over already-assembled comparison rows.
pub fn format_comparison(rows: &[(String, String, f64)]) -> String {
    let name_w = rows.iter().map(|r| r.0.len()).max().unwrap_or(10).max(10);
    let feat_w = rows.iter().map(|r| r.1.len()).max().unwrap_or(8).max(8);
    let mut out = format!(
        "{:<name_w$}  {:<feat_w$}  accuracy\n",
        "classifier", "features"
    );
    out.push_str(&"-".repeat(name_w + feat_w + 12));
    out.push('\n');
    for (name, feat, acc) in rows {
        out.push_str(&format!("{name:<name_w$}  {feat:<feat_w$}  {acc:>7.3}\n"));
    }
    out
}

/// Plain-text comparison table for in-memory reports.
pub fn comparison_report(reports: &[EvalReport]) -> String {
    format_comparison(&comparison_rows(reports))
}

/// Self-contained 800x400 SVG bar chart, one bar per row, grouped by
/// protocol, with value labels.
pub fn render_svg(rows: &[(String, Protocol, f64)]) -> String {
    const W: f64 = 800.0;
    const H: f64 = 400.0;
    const MARGIN_L: f64 = 60.0;
    const MARGIN_B: f64 = 70.0;
    const MARGIN_T: f64 = 30.0;
    let plot_h = H - MARGIN_B - MARGIN_T;
    let plot_w = W - MARGIN_L - 20.0;

    let mut sorted: Vec<&(String, Protocol, f64)> = rows.iter().collect();
    sorted.sort_by_key(|r| r.1.as_str());

    let n = sorted.len().max(1) as f64;
    let slot = plot_w / n;
    let bar_w = (slot * 0.7).min(80.0);

    let mut svg = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    svg.push_str(r#"<rect width="100%" height="100%" fill="white"/>"#);
    // y axis and gridlines at 0.25 steps
    for i in 0..=4 {
        let frac = i as f64 / 4.0;
        let y = MARGIN_T + plot_h * (1.0 - frac);
        svg.push_str(&format!(
            r##"<line x1="{MARGIN_L}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#ddd"/>"##,
            MARGIN_L + plot_w
        ));
        svg.push_str(&format!(
            r##"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="end" fill="#444">{frac:.2}</text>"##,
            MARGIN_L - 6.0,
            y + 4.0
        ));
    }
    for (i, (label, protocol, acc)) in sorted.iter().enumerate() {
        let x = MARGIN_L + i as f64 * slot + (slot - bar_w) / 2.0;
        let h = plot_h * acc.clamp(0.0, 1.0);
        let y = MARGIN_T + plot_h - h;
        let fill = match protocol {
            Protocol::HoldOut => "#4878a8",
            Protocol::KFold => "#d08449",
        };
        svg.push_str(&format!(
            r#"<rect x="{x:.1}" y="{y:.1}" width="{bar_w:.1}" height="{h:.1}" fill="{fill}"/>"#
        ));
        svg.push_str(&format!(
            r##"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="middle" fill="#222">{acc:.3}</text>"##,
            x + bar_w / 2.0,
            y - 4.0
        ));
        svg.push_str(&format!(
            r##"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="middle" fill="#222" transform="rotate(30 {:.1} {:.1})">{} [{}]</text>"##,
            x + bar_w / 2.0,
            MARGIN_T + plot_h + 16.0,
            x + bar_w / 2.0,
            MARGIN_T + plot_h + 16.0,
            label,
            protocol.as_str()
        ));
    }
    svg.push_str("</svg>");
    svg
}
