//! The newform dataset file: one JSON document with exact integer
//! coefficients over the power basis of each coefficient field.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use quintic_core::eliminate::{load_records, NewformRecord, RawNewform, CHAR_LABEL};

pub const SCHEMA_VERSION: u32 = 1;

/// Overrides the bundled dataset when `--dataset` is not given.
pub const DATASET_ENV: &str = "QUINTIC_DATASET";

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Invalid(#[from] quintic_core::Error),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetFile {
    pub schema_version: u32,
    #[serde(rename = "char")]
    pub char_label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    pub forms: Vec<FormEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub id: String,
    pub level: u64,
    pub weight: u32,
    #[serde(rename = "char")]
    pub char_label: String,
    pub field_poly: Vec<i64>,
    pub i_embed: Vec<i64>,
    #[serde(default = "one")]
    pub denominator: i64,
    pub cm_disc: Option<i64>,
    pub conj_class_size: u32,
    pub an: Vec<Vec<i64>>,
}

fn one() -> i64 {
    1
}

impl From<FormEntry> for RawNewform {
    fn from(f: FormEntry) -> Self {
        RawNewform {
            id: f.id,
            level: f.level,
            weight: f.weight,
            char_label: f.char_label,
            field_poly: f.field_poly,
            i_embed: f.i_embed,
            denominator: f.denominator,
            cm_disc: f.cm_disc,
            conj_class_size: f.conj_class_size,
            an: f.an,
        }
    }
}

/// Parses and schema-checks a dataset document.
pub fn parse_dataset(text: &str) -> Result<Vec<RawNewform>, DatasetError> {
    let file: DatasetFile = serde_json::from_str(text).map_err(|e| DatasetError::Schema(e.to_string()))?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(DatasetError::Schema(format!(
            "schema_version {} (expected {SCHEMA_VERSION})",
            file.schema_version
        )));
    }
    if file.char_label != CHAR_LABEL {
        return Err(DatasetError::Schema(format!("character {} (expected {CHAR_LABEL})", file.char_label)));
    }
    Ok(file.forms.into_iter().map(RawNewform::from).collect())
}

/// Reads, parses and validates every record; the census is checked
/// separately so that a mismatch can be reported rather than raised.
pub fn load_newforms(path: &Path) -> Result<Vec<NewformRecord>, DatasetError> {
    let text = fs::read_to_string(path).map_err(|source| DatasetError::Io { path: path.to_owned(), source })?;
    Ok(load_records(&parse_dataset(&text)?)?)
}

/// The dataset shipped with the crate.
pub fn bundled_dataset() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join("newforms.json")
}

/// Flag, then environment, then the bundled file.
pub fn resolve_dataset(flag: Option<&Path>) -> PathBuf {
    flag.map(Path::to_owned)
        .or_else(|| std::env::var_os(DATASET_ENV).map(PathBuf::from))
        .unwrap_or_else(bundled_dataset)
}
