//! Synonym-replacement augmentation for training data.
//!
//! Each review yields `n_aug` copies; per copy, a seeded fraction of the
//! tokens with lexicon entries is swapped for random synonyms. Labels and
//! metadata are preserved, copies reference their parent id, and the draw
//! stream depends only on `(seed, review id, copy index)`, so corpus-level
//! parallelism cannot change outputs. Augment the train split only; feeding
//! the test split here defeats the evaluation.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{Corpus, Review};
use crate::rng::SplitMix64;
use crate::textprep::StopwordList;

const BUILTIN_SYNONYMS: &str = include_str!("../data/synonyms.tsv");

#[derive(Debug, Error)]
pub enum AugmentError {
    #[error("lexicon line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("n_aug must be >= 1")]
    BadNAug,
    #[error("replace_fraction {0} outside (0, 1]")]
    BadFraction(f64),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Headword to synonym candidates, all lowercase.
#[derive(Debug, Clone, Default)]
pub struct SynonymLexicon {
    synonyms: HashMap<String, Vec<String>>,
}

impl SynonymLexicon {
    /// The ~3000-headword lexicon shipped with the crate.
    pub fn builtin() -> SynonymLexicon {
        Self::parse(BUILTIN_SYNONYMS).expect("builtin synonym lexicon is valid")
    }

    pub fn empty() -> SynonymLexicon {
        SynonymLexicon::default()
    }

    pub fn len(&self) -> usize {
        self.synonyms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synonyms.is_empty()
    }

    pub fn get(&self, headword: &str) -> Option<&[String]> {
        self.synonyms.get(headword).map(|v| v.as_slice())
    }

    fn parse(content: &str) -> Result<SynonymLexicon, AugmentError> {
        let mut synonyms: HashMap<String, Vec<String>> = HashMap::new();
        for (i, raw) in content.lines().enumerate() {
            let line = raw.trim_end();
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| AugmentError::ParseError {
                line: i + 1,
                message,
            };
            let (head, rest) = line
                .split_once('\t')
                .ok_or_else(|| err("expected `headword<TAB>syn1,syn2,...`".to_string()))?;
            let head = head.trim().to_lowercase();
            if head.is_empty() {
                return Err(err("empty headword".to_string()));
            }
            let mut syns = Vec::new();
            for s in rest.split(',') {
                let s = s.trim().to_lowercase();
                if s.is_empty() {
                    return Err(err("empty synonym".to_string()));
                }
                if s == head {
                    return Err(err(format!("`{head}` lists itself as a synonym")));
                }
                if !syns.contains(&s) {
                    syns.push(s);
                }
            }
            if syns.is_empty() {
                return Err(err("no synonyms listed".to_string()));
            }
            synonyms.entry(head).or_default().extend(syns);
        }
        Ok(SynonymLexicon { synonyms })
    }
}

/// Parse a `headword<TAB>syn1,syn2,...` TSV; `#` comments ignored. An empty
/// file yields an empty lexicon (augmentation becomes pure duplication).
pub fn load_lexicon(path: impl AsRef<Path>) -> Result<SynonymLexicon, AugmentError> {
    SynonymLexicon::parse(&std::fs::read_to_string(path)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AugmentConfig {
    /// Copies generated per review.
    pub n_aug: usize,
    /// Fraction of eligible tokens replaced per copy (ceil applied).
    pub replace_fraction: f64,
    pub seed: u64,
}

impl AugmentConfig {
    pub fn new(n_aug: usize, replace_fraction: f64, seed: u64) -> Result<Self, AugmentError> {
        if n_aug == 0 {
            return Err(AugmentError::BadNAug);
        }
        if !(replace_fraction > 0.0 && replace_fraction <= 1.0) {
            return Err(AugmentError::BadFraction(replace_fraction));
        }
        Ok(AugmentConfig {
            n_aug,
            replace_fraction,
            seed,
        })
    }
}

impl Default for AugmentConfig {
    fn default() -> Self {
        AugmentConfig {
            n_aug: 10,
            replace_fraction: 0.1,
            seed: 0,
        }
    }
}

/// Produce `n_aug` copies of one review with ids `base_id..base_id + n_aug`.
///
/// A whitespace token is eligible when its lowercased form has a lexicon
/// entry and is not a stop word; punctuation-glued tokens simply fail the
/// lookup. Reviews with no eligible tokens come back as verbatim copies.
pub fn augment_review(
    review: &Review,
    lexicon: &SynonymLexicon,
    cfg: &AugmentConfig,
    stoplist: &StopwordList,
    base_id: usize,
) -> Vec<Review> {
    let tokens: Vec<&str> = review.text.split_whitespace().collect();
    let eligible: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| {
            let key = t.to_lowercase();
            !stoplist.contains(&key) && lexicon.get(&key).is_some()
        })
        .map(|(i, _)| i)
        .collect();

    (0..cfg.n_aug)
        .map(|copy| {
            let mut out = review.clone();
            out.id = base_id + copy;
            out.parent_id = Some(review.id);
            if !eligible.is_empty() {
                let mut rng = SplitMix64::stream(cfg.seed, &[review.id as u64, copy as u64]);
                let n_replace = (cfg.replace_fraction * eligible.len() as f64).ceil() as usize;
                let n_replace = n_replace.clamp(1, eligible.len());
                let mut replaced: Vec<String> = tokens.iter().map(|t| t.to_string()).collect();
                for pick in rng.sample_indices(eligible.len(), n_replace) {
                    let pos = eligible[pick];
                    let key = tokens[pos].to_lowercase();
                    let candidates = lexicon.get(&key).expect("eligible token has entry");
                    replaced[pos] = candidates[rng.next_below(candidates.len())].clone();
                }
                out.text = replaced.join(" ");
            }
            out
        })
        .collect()
}

/// Originals plus all copies: `|output| = |train| * (1 + n_aug)` exactly,
/// with the label ratio preserved. Copy ids start after the largest input id
/// and are laid out by (review position, copy index).
pub fn augment_corpus(train: &Corpus, lexicon: &SynonymLexicon, cfg: &AugmentConfig) -> Corpus {
    let stoplist = StopwordList::builtin();
    let next_id = train.reviews().iter().map(|r| r.id + 1).max().unwrap_or(0);
    let mut out = train.reviews().to_vec();
    for (pos, review) in train.reviews().iter().enumerate() {
        let base = next_id + pos * cfg.n_aug;
        out.extend(augment_review(review, lexicon, cfg, &stoplist, base));
    }
    Corpus::new(out)
}
