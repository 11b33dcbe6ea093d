//! Corpus ingestion and deterministic train/test partitioning.
//!
//! The input format is the Deceptive Opinion Spam CSV schema:
//! `deceptive,hotel,polarity,source,text`, matched by header name in any
//! column order. Splits are pure functions of `(corpus, config)`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::SplitMix64;

/// Review class. `Deceptive` is the positive class throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    Truthful,
    Deceptive,
}

impl Label {
    pub fn parse(s: &str) -> Option<Label> {
        match s.trim().to_ascii_lowercase().as_str() {
            "truthful" => Some(Label::Truthful),
            "deceptive" => Some(Label::Deceptive),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Truthful => "truthful",
            Label::Deceptive => "deceptive",
        }
    }

    /// Margin encoding: +1 deceptive, -1 truthful.
    pub fn to_sign(self) -> f64 {
        match self {
            Label::Deceptive => 1.0,
            Label::Truthful => -1.0,
        }
    }

    pub fn from_sign(s: f64) -> Label {
        // Exactly-zero scores resolve to Deceptive (documented tie-break).
        if s >= 0.0 {
            Label::Deceptive
        } else {
            Label::Truthful
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn parse(s: &str) -> Option<Polarity> {
        match s.trim().to_ascii_lowercase().as_str() {
            "positive" => Some(Polarity::Positive),
            "negative" => Some(Polarity::Negative),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
        }
    }
}

/// One labeled review. `parent_id` is set on augmentation copies only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Review {
    pub id: usize,
    pub text: String,
    pub label: Label,
    pub polarity: Option<Polarity>,
    pub hotel: Option<String>,
    pub source: Option<String>,
    pub parent_id: Option<usize>,
}

impl Review {
    pub fn new(id: usize, text: impl Into<String>, label: Label) -> Review {
        Review {
            id,
            text: text.into(),
            label,
            polarity: None,
            hotel: None,
            source: None,
            parent_id: None,
        }
    }
}

/// An ordered collection of reviews with cached per-label counts.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    reviews: Vec<Review>,
    label_counts: BTreeMap<Label, usize>,
}

impl Corpus {
    pub fn new(reviews: Vec<Review>) -> Corpus {
        debug_assert!(
            {
                let mut ids: Vec<usize> = reviews.iter().map(|r| r.id).collect();
                ids.sort_unstable();
                ids.windows(2).all(|w| w[0] != w[1])
            },
            "review ids must be unique"
        );
        let mut label_counts = BTreeMap::new();
        for r in &reviews {
            *label_counts.entry(r.label).or_insert(0) += 1;
        }
        Corpus {
            reviews,
            label_counts,
        }
    }

    pub fn reviews(&self) -> &[Review] {
        &self.reviews
    }

    pub fn len(&self) -> usize {
        self.reviews.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reviews.is_empty()
    }

    pub fn label_counts(&self) -> &BTreeMap<Label, usize> {
        &self.label_counts
    }

    pub fn count(&self, label: Label) -> usize {
        self.label_counts.get(&label).copied().unwrap_or(0)
    }

    pub fn ids(&self) -> Vec<usize> {
        self.reviews.iter().map(|r| r.id).collect()
    }
}

/// Hold-out and k-fold split parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitConfig {
    pub test_fraction: f64,
    pub k: usize,
    pub seed: u64,
    pub stratified: bool,
}

impl Default for SplitConfig {
    fn default() -> Self {
        SplitConfig {
            test_fraction: 0.2,
            k: 5,
            seed: 0,
            stratified: true,
        }
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("missing required column `{0}` in CSV header")]
    MissingColumn(&'static str),
    #[error("row {row}: unparseable label `{value}`")]
    BadLabel { row: usize, value: String },
    #[error("row {row}: review text is empty")]
    EmptyText { row: usize },
    #[error("CSV contains no data rows")]
    EmptyCorpus,
    #[error("test_fraction {0} outside (0, 1)")]
    BadFraction(f64),
    #[error("class {label:?} has {count} members, too few to stratify at fraction {fraction}")]
    TooSmallClass {
        label: Label,
        count: usize,
        fraction: f64,
    },
    #[error("k = {k} invalid for corpus of {n} reviews (need 2 <= k <= n)")]
    BadK { k: usize, n: usize },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Load a corpus from a CSV file with `deceptive` and `text` columns.
///
/// Ids are assigned by data-row order starting at 0. A `parent_id` column,
/// if present, is read back (augmented corpora re-ingest losslessly).
pub fn load_csv(path: impl AsRef<Path>) -> Result<Corpus, CorpusError> {
    let mut reader = csv::Reader::from_path(path.as_ref())?;
    let headers = reader.headers()?.clone();
    let col = |name: &'static str| headers.iter().position(|h| h.trim() == name);

    let label_col = col("deceptive").ok_or(CorpusError::MissingColumn("deceptive"))?;
    let text_col = col("text").ok_or(CorpusError::MissingColumn("text"))?;
    let hotel_col = col("hotel");
    let polarity_col = col("polarity");
    let source_col = col("source");
    let parent_col = col("parent_id");

    let mut reviews = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let get = |i: usize| record.get(i).unwrap_or("");

        let raw_label = get(label_col);
        let label = Label::parse(raw_label).ok_or_else(|| CorpusError::BadLabel {
            row,
            value: raw_label.to_string(),
        })?;
        let text = get(text_col).trim().to_string();
        if text.is_empty() {
            return Err(CorpusError::EmptyText { row });
        }
        let opt = |s: &str| {
            let t = s.trim();
            (!t.is_empty()).then(|| t.to_string())
        };
        reviews.push(Review {
            id: row,
            text,
            label,
            polarity: polarity_col.and_then(|i| Polarity::parse(get(i))),
            hotel: hotel_col.and_then(|i| opt(get(i))),
            source: source_col.and_then(|i| opt(get(i))),
            parent_id: parent_col.and_then(|i| get(i).trim().parse().ok()),
        });
    }
    if reviews.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    Ok(Corpus::new(reviews))
}

/// Serialize a corpus back to the ingestion schema, with `parent_id`
/// appended so augmented corpora round-trip through [`load_csv`].
pub fn to_csv_string(corpus: &Corpus) -> Result<String, CorpusError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record([
        "deceptive",
        "hotel",
        "polarity",
        "source",
        "text",
        "parent_id",
    ])?;
    for r in corpus.reviews() {
        writer.write_record([
            r.label.as_str(),
            r.hotel.as_deref().unwrap_or(""),
            r.polarity.map(|p| p.as_str()).unwrap_or(""),
            r.source.as_deref().unwrap_or(""),
            &r.text,
            &r.parent_id.map(|p| p.to_string()).unwrap_or_default(),
        ])?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CorpusError::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
}

fn by_class(corpus: &Corpus) -> BTreeMap<Label, Vec<usize>> {
    let mut classes: BTreeMap<Label, Vec<usize>> = BTreeMap::new();
    for (i, r) in corpus.reviews().iter().enumerate() {
        classes.entry(r.label).or_default().push(i);
    }
    classes
}

fn subcorpus(corpus: &Corpus, mut positions: Vec<usize>) -> Corpus {
    // Canonical order: ascending id, so a partition is fully determined by
    // its id set regardless of shuffle internals.
    positions.sort_unstable_by_key(|&i| corpus.reviews()[i].id);
    Corpus::new(
        positions
            .into_iter()
            .map(|i| corpus.reviews()[i].clone())
            .collect(),
    )
}

/// Largest-remainder apportionment of `total` across per-class ideals.
fn apportion(ideals: &[(Label, f64)], total: usize) -> Vec<(Label, usize)> {
    let mut out: Vec<(Label, usize, f64)> = ideals
        .iter()
        .map(|&(l, ideal)| (l, ideal.floor() as usize, ideal - ideal.floor()))
        .collect();
    let assigned: usize = out.iter().map(|x| x.1).sum();
    let mut order: Vec<usize> = (0..out.len()).collect();
    order.sort_by(|&a, &b| {
        out[b]
            .2
            .partial_cmp(&out[a].2)
            .unwrap()
            .then(out[a].0.cmp(&out[b].0))
    });
    for idx in order.into_iter().cycle() {
        if out.iter().map(|x| x.1).sum::<usize>() >= total {
            break;
        }
        out[idx].1 += 1;
    }
    debug_assert!(assigned <= total);
    out.into_iter().map(|(l, n, _)| (l, n)).collect()
}

/// Deterministic (seeded) hold-out split.
///
/// `|test| = round(test_fraction * N)`; in stratified mode each class keeps
/// its ratio within one review.
pub fn train_test_split(
    corpus: &Corpus,
    cfg: &SplitConfig,
) -> Result<(Corpus, Corpus), CorpusError> {
    if !(cfg.test_fraction > 0.0 && cfg.test_fraction < 1.0) {
        return Err(CorpusError::BadFraction(cfg.test_fraction));
    }
    if corpus.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let n = corpus.len();
    let n_test = (cfg.test_fraction * n as f64).round() as usize;
    let mut rng = SplitMix64::new(cfg.seed);

    let (test_pos, train_pos) = if cfg.stratified {
        let classes = by_class(corpus);
        for (&label, members) in &classes {
            if (members.len() as f64) < 1.0 / cfg.test_fraction {
                return Err(CorpusError::TooSmallClass {
                    label,
                    count: members.len(),
                    fraction: cfg.test_fraction,
                });
            }
        }
        let ideals: Vec<(Label, f64)> = classes
            .iter()
            .map(|(&l, m)| (l, cfg.test_fraction * m.len() as f64))
            .collect();
        let quota: BTreeMap<Label, usize> = apportion(&ideals, n_test).into_iter().collect();

        let mut test = Vec::new();
        let mut train = Vec::new();
        for (label, mut members) in classes {
            rng.shuffle(&mut members);
            let t = quota[&label];
            test.extend_from_slice(&members[..t]);
            train.extend_from_slice(&members[t..]);
        }
        (test, train)
    } else {
        let mut all: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut all);
        let test = all[..n_test].to_vec();
        let train = all[n_test..].to_vec();
        (test, train)
    };

    Ok((subcorpus(corpus, train_pos), subcorpus(corpus, test_pos)))
}

/// Deterministic (seeded) k-fold partition; returns `(train, test)` per fold.
///
/// Test folds are pairwise disjoint and jointly exhaustive; fold sizes differ
/// by at most one; stratified mode keeps each class balanced per fold.
pub fn kfold_split(
    corpus: &Corpus,
    cfg: &SplitConfig,
) -> Result<Vec<(Corpus, Corpus)>, CorpusError> {
    let n = corpus.len();
    if cfg.k < 2 || cfg.k > n {
        return Err(CorpusError::BadK { k: cfg.k, n });
    }
    let k = cfg.k;
    let mut rng = SplitMix64::new(cfg.seed);
    let mut fold_members: Vec<Vec<usize>> = vec![Vec::new(); k];

    if cfg.stratified {
        // Extra (n_c mod k) members rotate across folds between classes so
        // overall fold sizes stay within one of each other.
        let mut extra_offset = 0usize;
        #[allow(clippy::needless_range_loop)]
        for (_, mut members) in by_class(corpus) {
            rng.shuffle(&mut members);
            let q = members.len() / k;
            let r = members.len() % k;
            let mut cursor = 0;
            for i in 0..k {
                let bonus = ((i + k - extra_offset) % k < r) as usize;
                let take = q + bonus;
                fold_members[i].extend_from_slice(&members[cursor..cursor + take]);
                cursor += take;
            }
            extra_offset = (extra_offset + r) % k;
        }
    } else {
        let mut all: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut all);
        let q = n / k;
        let r = n % k;
        let mut cursor = 0;
        for (i, fold) in fold_members.iter_mut().enumerate() {
            let take = q + (i < r) as usize;
            fold.extend_from_slice(&all[cursor..cursor + take]);
            cursor += take;
        }
    }

    Ok(fold_members
        .into_iter()
        .map(|test_pos| {
            let in_test: std::collections::HashSet<usize> = test_pos.iter().copied().collect();
            let train_pos: Vec<usize> = (0..n).filter(|i| !in_test.contains(i)).collect();
            (subcorpus(corpus, train_pos), subcorpus(corpus, test_pos))
        })
        .collect())
}
