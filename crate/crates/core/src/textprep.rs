//! Text normalization, tokenization, stop-word removal, and lemmatization.
//!
//! The full pipeline is `normalize -> tokenize -> remove_stopwords ->
//! lemmatize`; every emitted token matches `[a-z0-9]+`. The stop-word list
//! and lemma tables ship with the crate and are the single source of truth
//! for reproducibility; custom files in the same formats can be loaded
//! instead.

use std::collections::{HashMap, HashSet};
use std::path::Path;
use std::sync::LazyLock;

use regex::Regex;
use thiserror::Error;

use crate::corpus::Review;

const BUILTIN_STOPWORDS: &str = include_str!("../data/stopwords.txt");
const BUILTIN_EXCEPTIONS: &str = include_str!("../data/lemma_exceptions.tsv");
const BUILTIN_SUFFIX_RULES: &str = include_str!("../data/suffix_rules.tsv");

static URL_RE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?:https?://|www\.)\S*").unwrap());

/// Preprocessed token sequence for one review.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub review_id: usize,
    pub tokens: Vec<String>,
}

#[derive(Debug, Error)]
pub enum TextPrepError {
    #[error("stop-word list is empty")]
    EmptyStopwords,
    #[error("{file} line {line}: {message}")]
    ParseError {
        file: String,
        line: usize,
        message: String,
    },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Lowercase stop words, loaded once and shared.
#[derive(Debug, Clone)]
pub struct StopwordList {
    words: HashSet<String>,
}

impl StopwordList {
    /// The list shipped with the crate (~150 English function words).
    pub fn builtin() -> StopwordList {
        Self::parse(BUILTIN_STOPWORDS).expect("builtin stop-word list is valid")
    }

    /// Load from a UTF-8 file, one word per line, `#` comments ignored.
    pub fn from_file(path: impl AsRef<Path>) -> Result<StopwordList, TextPrepError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn parse(content: &str) -> Result<StopwordList, TextPrepError> {
        let words: HashSet<String> = content
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        if words.is_empty() {
            return Err(TextPrepError::EmptyStopwords);
        }
        Ok(StopwordList { words })
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// One suffix-rewrite rule; applies when the suffix matches and the stem
/// keeps at least `min_stem_len` characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixRule {
    pub suffix: String,
    pub replacement: String,
    pub min_stem_len: usize,
}

/// Exceptions table plus ordered suffix rules; first matching rule wins.
#[derive(Debug, Clone)]
pub struct LemmaDictionary {
    exceptions: HashMap<String, String>,
    suffix_rules: Vec<SuffixRule>,
}

impl LemmaDictionary {
    pub fn builtin() -> LemmaDictionary {
        Self::parse(BUILTIN_EXCEPTIONS, BUILTIN_SUFFIX_RULES, "builtin")
            .expect("builtin lemma tables are valid")
    }

    /// Load exceptions (`surface<TAB>lemma`) and rules
    /// (`suffix<TAB>replacement<TAB>min_stem_len`) from TSV files.
    pub fn from_files(
        exceptions: impl AsRef<Path>,
        rules: impl AsRef<Path>,
    ) -> Result<LemmaDictionary, TextPrepError> {
        let name = exceptions.as_ref().display().to_string();
        Self::parse(
            &std::fs::read_to_string(&exceptions)?,
            &std::fs::read_to_string(&rules)?,
            &name,
        )
    }

    fn parse(
        exceptions_tsv: &str,
        rules_tsv: &str,
        file: &str,
    ) -> Result<LemmaDictionary, TextPrepError> {
        let mut exceptions = HashMap::new();
        for (i, line) in exceptions_tsv.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split('\t');
            let (surface, lemma) = match (parts.next(), parts.next()) {
                (Some(s), Some(l)) if !s.is_empty() && !l.is_empty() => (s, l),
                _ => {
                    return Err(TextPrepError::ParseError {
                        file: file.to_string(),
                        line: i + 1,
                        message: "expected `surface<TAB>lemma`".to_string(),
                    })
                }
            };
            exceptions.insert(surface.to_lowercase(), lemma.to_lowercase());
        }

        let mut suffix_rules = Vec::new();
        for (i, line) in rules_tsv.lines().enumerate() {
            let line = line.trim_end_matches(['\r', '\n']);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split('\t').collect();
            if parts.len() != 3 || parts[0].is_empty() {
                return Err(TextPrepError::ParseError {
                    file: file.to_string(),
                    line: i + 1,
                    message: "expected `suffix<TAB>replacement<TAB>min_stem_len`".to_string(),
                });
            }
            let min_stem_len = parts[2]
                .trim()
                .parse()
                .map_err(|_| TextPrepError::ParseError {
                    file: file.to_string(),
                    line: i + 1,
                    message: format!("bad min_stem_len `{}`", parts[2]),
                })?;
            suffix_rules.push(SuffixRule {
                suffix: parts[0].to_lowercase(),
                replacement: parts[1].to_lowercase(),
                min_stem_len,
            });
        }

        Ok(LemmaDictionary {
            exceptions,
            suffix_rules,
        })
    }
}

/// Fold common accented Latin letters to ASCII; everything else that is not
/// `[a-z0-9]` or whitespace becomes a space downstream.
fn fold_char(c: char) -> Option<&'static str> {
    Some(match c {
        'à' | 'á' | 'â' | 'ã' | 'ä' | 'å' | 'ā' => "a",
        'è' | 'é' | 'ê' | 'ë' | 'ē' => "e",
        'ì' | 'í' | 'î' | 'ï' | 'ī' => "i",
        'ò' | 'ó' | 'ô' | 'õ' | 'ö' | 'ō' => "o",
        'ù' | 'ú' | 'û' | 'ü' | 'ū' => "u",
        'ç' => "c",
        'ñ' => "n",
        'ý' | 'ÿ' => "y",
        'æ' => "ae",
        'œ' => "oe",
        'ß' => "ss",
        _ => return None,
    })
}

/// Lowercase, strip URLs, map everything outside `[a-z0-9]` to spaces, and
/// collapse whitespace.
pub fn normalize(text: &str) -> String {
    let lowered = text.to_lowercase();
    let without_urls = URL_RE.replace_all(&lowered, " ");

    let mut cleaned = String::with_capacity(without_urls.len());
    for c in without_urls.chars() {
        match c {
            'a'..='z' | '0'..='9' => cleaned.push(c),
            c if c.is_whitespace() => cleaned.push(' '),
            c => match fold_char(c) {
                Some(ascii) => cleaned.push_str(ascii),
                None => cleaned.push(' '),
            },
        }
    }
    let mut out = String::with_capacity(cleaned.len());
    for word in cleaned.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

/// Split normalized text on whitespace.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_string).collect()
}

/// Drop tokens present in the stop list, preserving order.
pub fn remove_stopwords(tokens: Vec<String>, stoplist: &StopwordList) -> Vec<String> {
    tokens
        .into_iter()
        .filter(|t| !stoplist.contains(t))
        .collect()
}

/// Map a token to its lemma.
///
/// Each pass consults the exceptions table first, then applies the first
/// suffix rule whose suffix matches with a long-enough stem. Passes repeat
/// until the token stops changing, so stacked inflections (`mornings` ->
/// `morning` -> `morn`) reduce fully and the result is always a fixed
/// point of the pipeline.
pub fn lemmatize(token: &str, dict: &LemmaDictionary) -> String {
    let mut current = token.to_string();
    for _ in 0..8 {
        let next = lemmatize_once(&current, dict);
        if next == current {
            break;
        }
        current = next;
    }
    current
}

fn lemmatize_once(token: &str, dict: &LemmaDictionary) -> String {
    if let Some(lemma) = dict.exceptions.get(token) {
        return lemma.clone();
    }
    for rule in &dict.suffix_rules {
        if let Some(stem) = token.strip_suffix(rule.suffix.as_str()) {
            if stem.chars().count() >= rule.min_stem_len {
                let candidate = format!("{stem}{}", rule.replacement);
                if candidate.is_empty() {
                    return token.to_string();
                }
                return candidate;
            }
        }
    }
    token.to_string()
}

/// Full preprocessing pipeline for one review.
///
/// Lemmas that land on a stop word are dropped too, so the output never
/// intersects the stop list.
pub fn preprocess(review: &Review, stoplist: &StopwordList, dict: &LemmaDictionary) -> Document {
    Document {
        review_id: review.id,
        tokens: preprocess_text(&review.text, stoplist, dict),
    }
}

/// Same pipeline on a bare string.
pub fn preprocess_text(text: &str, stoplist: &StopwordList, dict: &LemmaDictionary) -> Vec<String> {
    let survivors = remove_stopwords(tokenize(&normalize(text)), stoplist);
    survivors
        .iter()
        .map(|t| lemmatize(t, dict))
        .filter(|lemma| !stoplist.contains(lemma))
        .collect()
}
