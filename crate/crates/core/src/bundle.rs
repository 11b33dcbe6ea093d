//! Versioned, checksummed model persistence.
//!
//! A bundle is a single self-describing JSON document: an envelope carrying
//! the format version and a SHA-256 checksum of the canonicalized payload.
//! Floats survive the round trip exactly (shortest round-trip decimal), so
//! a reloaded model predicts identically.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::classifiers::{Classifier, TrainError};
use crate::corpus::Label;
use crate::eval::Resources;
use crate::features::{FeatureConfig, FeatureExtractor};
use crate::textprep::{preprocess_text, Document};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("unsupported model format version {found} (this build reads <= {supported})")]
    VersionMismatch { found: u32, supported: u32 },
    #[error("model file is corrupt: {0}")]
    CorruptFile(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// SHA-256 of the training CSV bytes, when known.
    pub corpus_sha256: Option<String>,
    pub created_unix: u64,
}

/// A trained pipeline: feature extractor plus classifier, with enough
/// metadata to reproduce the run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelBundle {
    pub feature: FeatureConfig,
    pub extractor: FeatureExtractor,
    pub classifier: Classifier,
    pub train_seed: u64,
    pub provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    format_version: u32,
    checksum: String,
    payload: Value,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Canonical payload bytes: JSON via `Value`, which sorts object keys, so
/// the checksum is stable across serialize/parse cycles.
fn canonical_json(payload: &Value) -> String {
    serde_json::to_string(payload).expect("value serializes")
}

impl ModelBundle {
    pub fn now_unix() -> u64 {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> Result<String, BundleError> {
        let payload = serde_json::to_value(self)?;
        let canonical = canonical_json(&payload);
        let envelope = Envelope {
            format_version: FORMAT_VERSION,
            checksum: sha256_hex(canonical.as_bytes()),
            payload,
        };
        Ok(serde_json::to_string_pretty(&envelope)?)
    }

    pub fn from_json(text: &str) -> Result<ModelBundle, BundleError> {
        let envelope: Envelope =
            serde_json::from_str(text).map_err(|e| BundleError::CorruptFile(e.to_string()))?;
        if envelope.format_version > FORMAT_VERSION {
            return Err(BundleError::VersionMismatch {
                found: envelope.format_version,
                supported: FORMAT_VERSION,
            });
        }
        let canonical = canonical_json(&envelope.payload);
        let checksum = sha256_hex(canonical.as_bytes());
        if checksum != envelope.checksum {
            return Err(BundleError::CorruptFile(format!(
                "checksum mismatch: stored {} computed {}",
                envelope.checksum, checksum
            )));
        }
        let mut bundle: ModelBundle = serde_json::from_value(envelope.payload)?;
        bundle.extractor.rebuild_index();
        Ok(bundle)
    }

    /// Vectorize a preprocessed document with the bundled extractor,
    /// applying the same per-row conditioning the training harness used.
    pub fn transform(&self, doc: &Document) -> crate::features::SparseVector {
        crate::eval::condition(self.extractor.transform(doc), self.feature.mode)
    }

    /// Full inference on raw text: preprocess, vectorize, predict.
    pub fn predict_text(&self, text: &str, res: &Resources) -> Result<Label, TrainError> {
        let doc = Document {
            review_id: 0,
            tokens: preprocess_text(text, &res.stoplist, &res.lemmas),
        };
        self.classifier.predict(&self.transform(&doc))
    }

    pub fn decision_text(&self, text: &str, res: &Resources) -> Result<f64, TrainError> {
        let doc = Document {
            review_id: 0,
            tokens: preprocess_text(text, &res.stoplist, &res.lemmas),
        };
        self.classifier.decision_function(&self.transform(&doc))
    }
}

/// Write-temp-then-rename so readers never observe partial files.
pub fn atomic_write(path: impl AsRef<Path>, bytes: &[u8]) -> std::io::Result<()> {
    let path = path.as_ref();
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => tempfile::NamedTempFile::new_in(d)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    std::fs::write(tmp.path(), bytes)?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn save_model(bundle: &ModelBundle, path: impl AsRef<Path>) -> Result<(), BundleError> {
    let json = bundle.to_json()?;
    atomic_write(path, json.as_bytes())?;
    Ok(())
}

pub fn load_model(path: impl AsRef<Path>) -> Result<ModelBundle, BundleError> {
    ModelBundle::from_json(&std::fs::read_to_string(path)?)
}
