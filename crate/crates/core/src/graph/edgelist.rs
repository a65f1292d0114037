//! Line-oriented edge-list format.
//!
//! ```text
//! # comment
//! I <u> <v> <start> <end>   interval edge, start < end
//! P <u> <v> <t>             time-point edge
//! S <u> <v>                 persistent edge
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::{GraphError, InputTemporalGraph};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("unknown record type {0:?} (expected I, P or S)")]
    UnknownRecord(String),
    #[error("record {tag} takes {expected} fields, found {found}")]
    Arity {
        tag: char,
        expected: usize,
        found: usize,
    },
    #[error("invalid time {0:?}")]
    BadNumber(String),
    #[error("time {0:?} is not finite")]
    NonFinite(String),
    #[error("interval start {start} must be less than end {end}")]
    EmptyInterval { start: f64, end: f64 },
}

fn parse_time(tok: &str) -> Result<f64, ParseErrorKind> {
    let t: f64 = tok
        .parse()
        .map_err(|_| ParseErrorKind::BadNumber(tok.to_owned()))?;
    if t.is_finite() {
        Ok(t)
    } else {
        Err(ParseErrorKind::NonFinite(tok.to_owned()))
    }
}

fn parse_record(g: &mut InputTemporalGraph, fields: &[&str]) -> Result<(), ParseErrorKind> {
    let (tag, expected) = match fields[0] {
        "I" => ('I', 5),
        "P" => ('P', 4),
        "S" => ('S', 3),
        other => return Err(ParseErrorKind::UnknownRecord(other.to_owned())),
    };
    if fields.len() != expected {
        return Err(ParseErrorKind::Arity {
            tag,
            expected,
            found: fields.len(),
        });
    }
    // Validate numbers before interning so a bad line leaves no stray labels.
    let times = fields[3..]
        .iter()
        .map(|t| parse_time(t))
        .collect::<Result<Vec<_>, _>>()?;
    if tag == 'I' && times[0] >= times[1] {
        return Err(ParseErrorKind::EmptyInterval {
            start: times[0],
            end: times[1],
        });
    }
    let u = g.add_node(fields[1]);
    let v = g.add_node(fields[2]);
    let added = match tag {
        'I' => g.add_interval_edge(u, v, times[0], times[1]),
        'P' => g.add_point_edge(u, v, times[0]),
        _ => g.add_persist_edge(u, v),
    };
    added.map_err(|e| match e {
        GraphError::InvalidInterval { start, end } => ParseErrorKind::EmptyInterval { start, end },
        other => unreachable!("validated record rejected: {other}"),
    })
}

/// Parses an edge-list document. Labels are interned in first-seen order and
/// repeated records are kept as distinct edges.
pub fn parse_input(text: &str) -> Result<InputTemporalGraph, ParseError> {
    let mut g = InputTemporalGraph::new();
    let mut fields = Vec::with_capacity(5);
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        fields.clear();
        fields.extend(trimmed.split_whitespace());
        parse_record(&mut g, &fields).map_err(|kind| ParseError { line: i + 1, kind })?;
    }
    Ok(g)
}

/// Serializes `g` in the edge-list format. Nodes without edges cannot be
/// represented and are dropped.
pub fn write_edge_list(g: &InputTemporalGraph) -> String {
    let sym = g.symbols();
    let label = |n| sym.label(n).expect("edge endpoint in symbol table");
    let mut out = String::new();
    for e in g.interval_edges() {
        let _ = writeln!(
            out,
            "I {} {} {} {}",
            label(e.u),
            label(e.v),
            e.interval.start(),
            e.interval.end()
        );
    }
    for e in g.point_edges() {
        let _ = writeln!(out, "P {} {} {}", label(e.u), label(e.v), e.t);
    }
    for e in g.persist_edges() {
        let _ = writeln!(out, "S {} {}", label(e.u), label(e.v));
    }
    out
}
