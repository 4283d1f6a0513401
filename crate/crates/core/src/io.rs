//! JSON file formats. Vertex indices in files are 1-based; the library is
//! 0-based, and the conversion happens here only.
//!
//! Integers with magnitude at most `2^53 - 1` are written as JSON numbers and
//! larger ones as decimal strings. Both forms are accepted on input.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{ArithmeticalStructure, GraphError, Multigraph};
use crate::linalg::IntegerMatrix;
use crate::verify::{PropertyId, Witness, WitnessInput};

const SAFE_MAX: i64 = (1 << 53) - 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl FormatError {
    /// 2 for unreadable or malformed files, 3 for well-formed files with
    /// invalid content.
    pub fn exit_code(&self) -> i32 {
        match self {
            FormatError::Io { .. } | FormatError::Parse(_) => 2,
            FormatError::Invalid(_) => 3,
        }
    }
}

impl From<GraphError> for FormatError {
    fn from(e: GraphError) -> Self {
        FormatError::Invalid(e.to_string())
    }
}

/// A [`BigInt`] with the number-or-string JSON encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) if x.abs() <= SAFE_MAX => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = JsonInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

fn wrap(xs: &[BigInt]) -> Vec<JsonInt> {
    xs.iter().cloned().map(JsonInt).collect()
}

fn unwrap(xs: Vec<JsonInt>) -> Vec<BigInt> {
    xs.into_iter().map(|x| x.0).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    /// `[i, j, multiplicity]`, 1-based.
    pub edges: Vec<(usize, usize, JsonInt)>,
}

impl GraphFile {
    pub fn from_graph(g: &Multigraph) -> Self {
        Self {
            n: g.n(),
            edges: g
                .edges()
                .into_iter()
                .map(|(i, j, m)| (i + 1, j + 1, JsonInt(m)))
                .collect(),
        }
    }

    /// Duplicate pairs are summed.
    pub fn to_graph(&self) -> Result<Multigraph, FormatError> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, j, m) in &self.edges {
            let (i, j) = (*i, *j);
            if i == 0 || j == 0 || i > self.n || j > self.n {
                return Err(FormatError::Invalid(format!(
                    "edge [{i}, {j}] outside vertices 1..={}",
                    self.n
                )));
            }
            if i == j {
                return Err(FormatError::Invalid(format!("loop at vertex {i}")));
            }
            if !m.0.is_positive() {
                return Err(FormatError::Invalid(format!(
                    "edge [{i}, {j}] has multiplicity {}",
                    m.0
                )));
            }
            edges.push((i - 1, j - 1, m.0.clone()));
        }
        Ok(Multigraph::from_edges(self.n, edges)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub d: Vec<JsonInt>,
    pub r: Vec<JsonInt>,
}

impl StructureFile {
    pub fn from_structure(s: &ArithmeticalStructure) -> Self {
        Self {
            d: wrap(s.d()),
            r: wrap(s.r()),
        }
    }

    pub fn to_structure(&self, g: &Multigraph) -> Result<ArithmeticalStructure, FormatError> {
        let d = unwrap(self.d.clone());
        let r = unwrap(self.r.clone());
        ArithmeticalStructure::new(g, d, r)
            .map_err(|e| FormatError::Invalid(GraphError::from(e).to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: Vec<Vec<JsonInt>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &IntegerMatrix) -> Self {
        Self {
            rows: m.to_rows().iter().map(|r| wrap(r)).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<IntegerMatrix, FormatError> {
        let rows: Vec<Vec<BigInt>> = self.rows.iter().cloned().map(unwrap).collect();
        IntegerMatrix::from_rows(rows).map_err(|e| FormatError::Invalid(e.to_string()))
    }
}

/// A failing check with everything needed to re-run it. Matrix witnesses set
/// `matrix`; operation witnesses set `graph`, `structure` and `vertex`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub property_id: PropertyId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureFile>,
    /// 1-based.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(default)]
    pub values: BTreeMap<String, Vec<JsonInt>>,
}

impl WitnessFile {
    pub fn from_witness(w: &Witness) -> Self {
        let mut file = Self {
            property_id: w.property,
            k: w.k,
            case: w.case,
            matrix: None,
            graph: None,
            structure: None,
            vertex: None,
            values: w.values.iter().map(|(k, v)| (k.clone(), wrap(v))).collect(),
        };
        match &w.input {
            WitnessInput::Matrix(m) => file.matrix = Some(MatrixFile::from_matrix(m)),
            WitnessInput::Operation {
                graph,
                structure,
                vertex,
            } => {
                file.graph = Some(GraphFile::from_graph(graph));
                file.structure = Some(StructureFile::from_structure(structure));
                file.vertex = Some(vertex + 1);
            }
        }
        file
    }

    pub fn to_witness(&self) -> Result<Witness, FormatError> {
        let input = match (&self.matrix, &self.graph, &self.structure, self.vertex) {
            (Some(m), None, None, None) => WitnessInput::Matrix(m.to_matrix()?),
            (None, Some(g), Some(s), Some(v)) => {
                let graph = g.to_graph()?;
                if v == 0 || v > graph.n() {
                    return Err(FormatError::Invalid(format!(
                        "vertex {v} outside 1..={}",
                        graph.n()
                    )));
                }
                let structure = s.to_structure(&graph)?;
                WitnessInput::Operation {
                    graph,
                    structure,
                    vertex: v - 1,
                }
            }
            _ => {
                return Err(FormatError::Invalid(
                    "witness needs either a matrix or a graph, structure and vertex".into(),
                ))
            }
        };
        Ok(Witness {
            property: self.property_id,
            input,
            k: self.k,
            values: self
                .values
                .iter()
                .map(|(k, v)| (k.clone(), unwrap(v.clone())))
                .collect(),
            case: self.case,
        })
    }
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

pub fn graph_to_json(g: &Multigraph) -> String {
    to_pretty(&GraphFile::from_graph(g))
}

pub fn graph_from_json(text: &str) -> Result<Multigraph, FormatError> {
    serde_json::from_str::<GraphFile>(text)?.to_graph()
}

pub fn structure_to_json(s: &ArithmeticalStructure) -> String {
    to_pretty(&StructureFile::from_structure(s))
}

/// Parses and validates against `g`.
pub fn structure_from_json(
    text: &str,
    g: &Multigraph,
) -> Result<ArithmeticalStructure, FormatError> {
    serde_json::from_str::<StructureFile>(text)?.to_structure(g)
}

pub fn matrix_to_json(m: &IntegerMatrix) -> String {
    to_pretty(&MatrixFile::from_matrix(m))
}

pub fn matrix_from_json(text: &str) -> Result<IntegerMatrix, FormatError> {
    serde_json::from_str::<MatrixFile>(text)?.to_matrix()
}

pub fn witness_to_json(w: &Witness) -> String {
    to_pretty(&WitnessFile::from_witness(w))
}

pub fn witness_from_json(text: &str) -> Result<Witness, FormatError> {
    serde_json::from_str::<WitnessFile>(text)?.to_witness()
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FormatError> {
    let mut body = text.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    fs::write(path, body).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_graph(path: &Path) -> Result<Multigraph, FormatError> {
    graph_from_json(&read_text(path)?)
}

pub fn read_structure(path: &Path, g: &Multigraph) -> Result<ArithmeticalStructure, FormatError> {
    structure_from_json(&read_text(path)?, g)
}

/// Writes one file per witness into `dir`, creating it if needed. Names are
/// `case<index>_<PROPERTY>.json`, or `witness<position>_<PROPERTY>.json`
/// without a case index.
pub fn archive_witnesses(witnesses: &[Witness], dir: &Path) -> Result<Vec<PathBuf>, FormatError> {
    fs::create_dir_all(dir).map_err(|source| FormatError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut paths = Vec::with_capacity(witnesses.len());
    for (pos, w) in witnesses.iter().enumerate() {
        let stem = match w.case {
            Some(c) => format!("case{c:06}"),
            None => format!("witness{pos:06}"),
        };
        let path = dir.join(format!("{stem}_{}.json", w.property));
        write_text(&path, &witness_to_json(w))?;
        paths.push(path);
    }
    Ok(paths)
}
