//! Text embedding files: a `<rows> <dim>` header, then `<label> <v1> ... <vd>`
//! per row. Values are written with 17 significant digits so they read back
//! bit-exact.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use super::EmbeddingMatrix;
use crate::graph::{NodeId, SymbolTable};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EmbeddingFormatError {
    #[error("missing header line")]
    MissingHeader,
    #[error("line 1: header must be `<rows> <dim>`, found {0:?}")]
    BadHeader(String),
    #[error("header declares {declared} rows but the file has {found}")]
    RowCount { declared: usize, found: usize },
    #[error("line {line}: expected a label and {expected} values, found {found} fields")]
    Columns {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: invalid value {value:?}")]
    BadValue { line: usize, value: String },
    #[error("line {line}: duplicate label {label:?}")]
    DuplicateLabel { line: usize, label: String },
    #[error("{rows} labels supplied for a matrix with {expected} rows")]
    LabelCount { rows: usize, expected: usize },
}

/// Labeled node vectors as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeEmbeddings {
    pub labels: Vec<String>,
    pub dim: usize,
    /// Row-major, `labels.len() * dim` values.
    pub values: Vec<f64>,
}

impl NodeEmbeddings {
    pub fn from_matrix(m: &EmbeddingMatrix, symbols: &SymbolTable) -> Result<Self, EmbeddingFormatError> {
        if symbols.len() != m.rows() {
            return Err(EmbeddingFormatError::LabelCount {
                rows: symbols.len(),
                expected: m.rows(),
            });
        }
        Ok(NodeEmbeddings {
            labels: symbols.iter().map(|(_, l)| l.to_owned()).collect(),
            dim: m.dim(),
            values: m.input_vectors().to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.labels.len(), self.dim);
        for (i, label) in self.labels.iter().enumerate() {
            out.push_str(label);
            for v in self.row(i) {
                let _ = write!(out, " {v:.16e}");
            }
            out.push('\n');
        }
        out
    }
}

/// Writes the input vectors of `m`, labeling row `i` with node `i`'s label.
pub fn save_embeddings(m: &EmbeddingMatrix, symbols: &SymbolTable) -> Result<String, EmbeddingFormatError> {
    Ok(NodeEmbeddings::from_matrix(m, symbols)?.to_text())
}

pub fn load_embeddings(text: &str) -> Result<NodeEmbeddings, EmbeddingFormatError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(EmbeddingFormatError::MissingHeader)?;
    let bad_header = || EmbeddingFormatError::BadHeader(header.to_owned());
    let mut fields = header.split_whitespace();
    let rows: usize = fields.next().and_then(|f| f.parse().ok()).ok_or_else(bad_header)?;
    let dim: usize = fields.next().and_then(|f| f.parse().ok()).ok_or_else(bad_header)?;
    if fields.next().is_some() {
        return Err(bad_header());
    }

    let mut labels = Vec::new();
    let mut seen = HashSet::new();
    // Cap the reservation; the header is untrusted.
    let mut values = Vec::with_capacity(rows.saturating_mul(dim).min(1 << 20));
    for (i, line) in lines {
        let line_no = i + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != dim + 1 {
            return Err(EmbeddingFormatError::Columns {
                line: line_no,
                expected: dim,
                found: fields.len(),
            });
        }
        for f in &fields[1..] {
            let v: f64 = f.parse().map_err(|_| EmbeddingFormatError::BadValue {
                line: line_no,
                value: (*f).to_owned(),
            })?;
            if !v.is_finite() {
                return Err(EmbeddingFormatError::BadValue {
                    line: line_no,
                    value: (*f).to_owned(),
                });
            }
            values.push(v);
        }
        if !seen.insert(fields[0]) {
            return Err(EmbeddingFormatError::DuplicateLabel {
                line: line_no,
                label: fields[0].to_owned(),
            });
        }
        labels.push(fields[0].to_owned());
    }
    if labels.len() != rows {
        return Err(EmbeddingFormatError::RowCount {
            declared: rows,
            found: labels.len(),
        });
    }
    Ok(NodeEmbeddings { labels, dim, values })
}

impl NodeEmbeddings {
    /// Row index of `label`, by linear scan.
    pub fn position(&self, label: &str) -> Option<NodeId> {
        self.labels.iter().position(|l| l == label).map(|i| NodeId(i as u32))
    }
}
