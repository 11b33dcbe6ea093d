//! N-gram vocabulary construction and sparse vectorization.
//!
//! A vocabulary is fit on training documents only; column ids are assigned
//! in lexicographic n-gram order after a corpus-frequency cut at
//! `max_features`. Count mode emits raw occurrence counts, TF-IDF mode
//! emits `(count / total ngrams in doc) * ln(N / df)`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::textprep::Document;

/// Inclusive n-gram order range; all orders `lo..=hi` are extracted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NgramRange {
    lo: usize,
    hi: usize,
}

impl NgramRange {
    pub fn new(lo: usize, hi: usize) -> Result<NgramRange, FeatureError> {
        if lo < 1 || lo > hi || hi > 5 {
            return Err(FeatureError::BadRange { lo, hi });
        }
        Ok(NgramRange { lo, hi })
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeatureMode {
    Count,
    TfIdf,
}

impl FeatureMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            FeatureMode::Count => "count",
            FeatureMode::TfIdf => "tfidf",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureConfig {
    pub range: NgramRange,
    pub max_features: usize,
    pub mode: FeatureMode,
    /// Off by default: `ln((1+N)/(1+df)) + 1` instead of `ln(N/df)`.
    pub smooth_idf: bool,
}

impl FeatureConfig {
    pub fn new(range: NgramRange, max_features: usize, mode: FeatureMode) -> FeatureConfig {
        FeatureConfig {
            range,
            max_features,
            mode,
            smooth_idf: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("ngram range ({lo},{hi}) invalid: need 1 <= lo <= hi <= 5")]
    BadRange { lo: usize, hi: usize },
    #[error("max_features must be >= 1")]
    BadMaxFeatures,
    #[error("no ngrams could be extracted from any document")]
    EmptyVocabulary,
}

/// Sparse feature vector: column -> nonzero value.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SparseVector {
    entries: BTreeMap<usize, f64>,
}

impl SparseVector {
    pub fn new() -> SparseVector {
        SparseVector::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (usize, f64)>) -> SparseVector {
        let mut v = SparseVector::new();
        for (col, val) in entries {
            v.set(col, val);
        }
        v
    }

    /// Insert a value; zeros are never stored.
    pub fn set(&mut self, col: usize, value: f64) {
        if value != 0.0 {
            self.entries.insert(col, value);
        } else {
            self.entries.remove(&col);
        }
    }

    pub fn add(&mut self, col: usize, delta: f64) {
        let v = self.entries.entry(col).or_insert(0.0);
        *v += delta;
        if *v == 0.0 {
            self.entries.remove(&col);
        }
    }

    pub fn get(&self, col: usize) -> f64 {
        self.entries.get(&col).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().map(|(&c, &v)| (c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest column index plus one, or 0 when empty.
    pub fn width(&self) -> usize {
        self.entries.keys().next_back().map_or(0, |&c| c + 1)
    }

    pub fn dot_dense(&self, dense: &[f64]) -> f64 {
        self.iter().map(|(c, v)| v * dense[c]).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.iter().map(|(_, v)| v * v).sum()
    }

    /// Unit-norm copy; the zero vector stays zero.
    pub fn l2_normalized(&self) -> SparseVector {
        let norm = self.norm_sq().sqrt();
        if norm == 0.0 {
            return self.clone();
        }
        SparseVector {
            entries: self.entries.iter().map(|(&c, &v)| (c, v / norm)).collect(),
        }
    }

    pub fn squared_distance(&self, other: &SparseVector) -> f64 {
        let mut sum = 0.0;
        let mut a = self.entries.iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((&ca, &va)), Some((&cb, &vb))) => {
                    if ca == cb {
                        let d = va - vb;
                        sum += d * d;
                        a.next();
                        b.next();
                    } else if ca < cb {
                        sum += va * va;
                        a.next();
                    } else {
                        sum += vb * vb;
                        b.next();
                    }
                }
                (Some((_, &va)), None) => {
                    sum += va * va;
                    a.next();
                }
                (None, Some((_, &vb))) => {
                    sum += vb * vb;
                    b.next();
                }
                (None, None) => return sum,
            }
        }
    }
}

/// N-gram to column map with document frequencies from the fitting corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vocabulary {
    /// Terms in lexicographic order; position is the column id.
    terms: Vec<String>,
    #[serde(skip)]
    index: HashMap<String, usize>,
    /// Document frequency per column.
    doc_freq: Vec<usize>,
    n_docs: usize,
}

impl Vocabulary {
    fn new(terms: Vec<String>, doc_freq: Vec<usize>, n_docs: usize) -> Vocabulary {
        let index = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Vocabulary {
            terms,
            index,
            doc_freq,
            n_docs,
        }
    }

    /// Rebuild the term index after deserialization.
    pub fn rebuild_index(&mut self) {
        self.index = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn column(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, col: usize) -> &str {
        &self.terms[col]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn doc_freq(&self, col: usize) -> usize {
        self.doc_freq[col]
    }

    pub fn n_docs(&self) -> usize {
        self.n_docs
    }
}

/// Vocabulary plus per-column inverse document frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TfIdfModel {
    pub vocab: Vocabulary,
    pub idf: Vec<f64>,
}

/// All contiguous n-token windows for each order in the range, tokens joined
/// by single spaces, in (order, position) order.
pub fn extract_ngrams(doc: &Document, range: NgramRange) -> Vec<String> {
    let tokens = &doc.tokens;
    let mut out = Vec::new();
    for n in range.lo()..=range.hi() {
        if tokens.len() < n {
            break;
        }
        for window in tokens.windows(n) {
            out.push(window.join(" "));
        }
    }
    out
}

/// Fit a vocabulary: rank ngrams by total corpus frequency (ties broken
/// lexicographically), keep the top `max_features`, then reassign column
/// ids in lexicographic order.
pub fn build_vocabulary(
    docs: &[Document],
    cfg: &FeatureConfig,
) -> Result<Vocabulary, FeatureError> {
    if cfg.max_features == 0 {
        return Err(FeatureError::BadMaxFeatures);
    }
    let mut corpus_freq: HashMap<String, usize> = HashMap::new();
    let mut doc_freq: HashMap<String, usize> = HashMap::new();
    for doc in docs {
        let ngrams = extract_ngrams(doc, cfg.range);
        let mut seen: HashMap<&str, bool> = HashMap::new();
        for g in &ngrams {
            *corpus_freq.entry(g.clone()).or_insert(0) += 1;
            seen.entry(g).or_insert(true);
        }
        for g in seen.into_keys() {
            *doc_freq.entry(g.to_string()).or_insert(0) += 1;
        }
    }
    if corpus_freq.is_empty() {
        return Err(FeatureError::EmptyVocabulary);
    }

    let mut ranked: Vec<(String, usize)> = corpus_freq.into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(cfg.max_features);

    let mut terms: Vec<String> = ranked.into_iter().map(|(t, _)| t).collect();
    terms.sort_unstable();
    let df = terms.iter().map(|t| doc_freq[t]).collect();
    Ok(Vocabulary::new(terms, df, docs.len()))
}

/// Raw occurrence counts over the vocabulary; OOV ngrams are ignored.
pub fn count_vectorize(doc: &Document, vocab: &Vocabulary, range: NgramRange) -> SparseVector {
    let mut v = SparseVector::new();
    for g in extract_ngrams(doc, range) {
        if let Some(col) = vocab.column(&g) {
            v.add(col, 1.0);
        }
    }
    v
}

/// Fit a TF-IDF model on training documents: vocabulary plus
/// `idf = ln(n_docs / df)` per column (smoothed variant when configured).
pub fn fit_tfidf(docs: &[Document], cfg: &FeatureConfig) -> Result<TfIdfModel, FeatureError> {
    let vocab = build_vocabulary(docs, cfg)?;
    let n = vocab.n_docs() as f64;
    let idf = (0..vocab.len())
        .map(|c| {
            let df = vocab.doc_freq(c) as f64;
            if cfg.smooth_idf {
                ((1.0 + n) / (1.0 + df)).ln() + 1.0
            } else {
                (n / df).ln()
            }
        })
        .collect();
    Ok(TfIdfModel { vocab, idf })
}

/// TF-IDF weighting: `(count / total extracted ngrams) * idf`, zero products
/// omitted. The TF denominator counts all extracted ngrams, in-vocabulary
/// or not, so TF sums to 1 on fully in-vocabulary documents.
pub fn tfidf_vectorize(doc: &Document, model: &TfIdfModel, range: NgramRange) -> SparseVector {
    let ngrams = extract_ngrams(doc, range);
    let total = ngrams.len() as f64;
    let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
    for g in &ngrams {
        if let Some(col) = model.vocab.column(g) {
            *counts.entry(col).or_insert(0.0) += 1.0;
        }
    }
    let mut v = SparseVector::new();
    for (col, count) in counts {
        v.set(col, (count / total) * model.idf[col]);
    }
    v
}

/// A fitted feature extractor: vocabulary for Count mode, vocabulary plus
/// IDF for TF-IDF mode. Fitting only ever sees training documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FeatureExtractor {
    Count {
        vocab: Vocabulary,
        range: NgramRange,
    },
    TfIdf {
        model: TfIdfModel,
        range: NgramRange,
    },
}

impl FeatureExtractor {
    pub fn fit(docs: &[Document], cfg: &FeatureConfig) -> Result<FeatureExtractor, FeatureError> {
        Ok(match cfg.mode {
            FeatureMode::Count => FeatureExtractor::Count {
                vocab: build_vocabulary(docs, cfg)?,
                range: cfg.range,
            },
            FeatureMode::TfIdf => FeatureExtractor::TfIdf {
                model: fit_tfidf(docs, cfg)?,
                range: cfg.range,
            },
        })
    }

    pub fn transform(&self, doc: &Document) -> SparseVector {
        match self {
            FeatureExtractor::Count { vocab, range } => count_vectorize(doc, vocab, *range),
            FeatureExtractor::TfIdf { model, range } => tfidf_vectorize(doc, model, *range),
        }
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        match self {
            FeatureExtractor::Count { vocab, .. } => vocab,
            FeatureExtractor::TfIdf { model, .. } => &model.vocab,
        }
    }

    pub fn idf(&self) -> Option<&[f64]> {
        match self {
            FeatureExtractor::Count { .. } => None,
            FeatureExtractor::TfIdf { model, .. } => Some(&model.idf),
        }
    }

    pub fn dimension(&self) -> usize {
        self.vocabulary().len()
    }

    pub fn rebuild_index(&mut self) {
        match self {
            FeatureExtractor::Count { vocab, .. } => vocab.rebuild_index(),
            FeatureExtractor::TfIdf { model, .. } => model.vocab.rebuild_index(),
        }
    }
}
