//! The workspace document: a versioned JSON file holding a field, algebras,
//! bimodules, modules, triangular contexts, triples, maps and declared
//! injective dimensions.
//!
//! Scalars are strings in lowest terms (`"3"`, `"-1/2"`), matrices are
//! lists of rows with entries separated by single spaces. Keys are emitted
//! in sorted order so that `emit(parse(text)) == text` for canonical files.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub const FORMAT_TAG: &str = "trimat-workspace";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub cols: usize,
    pub data: Vec<String>,
    pub rows: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    /// `products[i][j]` is `e_i e_j` in the basis.
    pub products: Vec<Vec<String>>,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDoc {
    pub dim: usize,
    pub left: String,
    /// `L(e_i)` for the basis of the left algebra.
    pub left_action: Vec<MatrixDoc>,
    pub right: String,
    /// `R(f_j)` for the basis of the right algebra.
    pub right_action: Vec<MatrixDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub action: Vec<MatrixDoc>,
    pub algebra: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangularDoc {
    pub a: String,
    pub b: String,
    pub m: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDoc {
    pub context: String,
    /// `φ: M ⊗_B Y → X` on the canonical basis of the tensor product.
    pub phi: MatrixDoc,
    pub x: String,
    pub y: String,
}

/// A module map (`matrix`) or a triple map (`f`, `g`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixDoc>,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceDoc {
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraDoc>,
    #[serde(default)]
    pub bimodules: BTreeMap<String, BimoduleDoc>,
    pub field: String,
    pub format: String,
    /// Declared injective dimensions, keyed by algebra or context name.
    #[serde(default)]
    pub injdims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapDoc>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDoc>,
    #[serde(default)]
    pub triangulars: BTreeMap<String, TriangularDoc>,
    #[serde(default)]
    pub triples: BTreeMap<String, TripleDoc>,
    pub version: u32,
}

impl WorkspaceDoc {
    pub fn new(field: &str) -> Self {
        WorkspaceDoc {
            algebras: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            field: field.to_string(),
            format: FORMAT_TAG.to_string(),
            injdims: BTreeMap::new(),
            maps: BTreeMap::new(),
            modules: BTreeMap::new(),
            triangulars: BTreeMap::new(),
            triples: BTreeMap::new(),
            version: FORMAT_VERSION,
        }
    }
}

/// A syntax or schema error with its position in the text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at line {}, column {}: {}", self.line, self.column, self.expected)
    }
}

impl std::error::Error for ParseError {}

pub fn parse(text: &str) -> Result<WorkspaceDoc, ParseError> {
    let doc: WorkspaceDoc = serde_json::from_str(text).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        expected: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    })?;
    if doc.format != FORMAT_TAG {
        return Err(ParseError { line: 1, column: 1, expected: format!("`format` to be \"{FORMAT_TAG}\"") });
    }
    if doc.version != FORMAT_VERSION {
        return Err(ParseError { line: 1, column: 1, expected: format!("`version` {FORMAT_VERSION}") });
    }
    Ok(doc)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn emit(doc: &WorkspaceDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
