//! SVG scatter plots of 2-D embeddings, colored by a labels CSV.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::datagen::Color;
use crate::embedding::NodeEmbeddings;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelsError {
    #[error("missing `label,color` header")]
    MissingHeader,
    #[error("line {line}: expected `label,color`, found {found:?}")]
    Malformed { line: usize, found: String },
    #[error("line {line}: unknown color {color:?}")]
    UnknownColor { line: usize, color: String },
    #[error("line {line}: duplicate label {label:?}")]
    DuplicateLabel { line: usize, label: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlotError {
    #[error("scatter plots need 2-dimensional embeddings, got dimension {0}")]
    Dimension(usize),
}

/// Parses `label,color` rows. The header is required; blank lines are skipped.
pub fn parse_labels(text: &str) -> Result<HashMap<String, Color>, LabelsError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == "label,color" => {}
        _ => return Err(LabelsError::MissingHeader),
    }
    let mut out = HashMap::new();
    for (i, line) in lines {
        let line_no = i + 1;
        let mut parts = line.trim().split(',');
        let (Some(label), Some(color), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(LabelsError::Malformed {
                line: line_no,
                found: line.to_owned(),
            });
        };
        let (label, color) = (label.trim(), color.trim());
        if label.is_empty() {
            return Err(LabelsError::Malformed {
                line: line_no,
                found: line.to_owned(),
            });
        }
        let color: Color = color.parse().map_err(|_| LabelsError::UnknownColor {
            line: line_no,
            color: color.to_owned(),
        })?;
        if out.insert(label.to_owned(), color).is_some() {
            return Err(LabelsError::DuplicateLabel {
                line: line_no,
                label: label.to_owned(),
            });
        }
    }
    Ok(out)
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 640.0;
const PAD: f64 = 40.0;

fn fill(color: Option<Color>) -> &'static str {
    match color {
        Some(Color::Red) => "#d62728",
        Some(Color::Blue) => "#1f77b4",
        Some(Color::Yellow) => "#e6b800",
        None => "#888888",
    }
}

/// Range of `vals` widened by 5% on each side; a degenerate range becomes
/// a unit-wide one around its value.
fn axis_range(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let span = hi - lo;
    if span > 0.0 {
        (lo - 0.05 * span, hi + 0.05 * span)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

/// One circle per row of `emb`, in row order.
pub fn emit_scatter(emb: &NodeEmbeddings, labels: &HashMap<String, Color>) -> Result<String, PlotError> {
    if emb.dim != 2 {
        return Err(PlotError::Dimension(emb.dim));
    }
    let (x0, x1) = axis_range((0..emb.len()).map(|i| emb.row(i)[0]));
    let (y0, y1) = axis_range((0..emb.len()).map(|i| emb.row(i)[1]));
    let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * PAD);
    // SVG y grows downward.
    let sy = |y: f64| HEIGHT - PAD - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * PAD);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<g id="axes" stroke="black" stroke-width="1"><line x1="{PAD}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{PAD}" y1="{PAD}" x2="{PAD}" y2="{b}"/></g>"#,
        b = HEIGHT - PAD,
        r = WIDTH - PAD,
    );
    let _ = writeln!(
        s,
        r#"<g font-family="sans-serif" font-size="11"><text x="{PAD}" y="{ty}">{x0:.4}</text><text x="{r}" y="{ty}" text-anchor="end">{x1:.4}</text><text x="{tx}" y="{b}" text-anchor="end">{y0:.4}</text><text x="{tx}" y="{PAD}" text-anchor="end">{y1:.4}</text></g>"#,
        ty = HEIGHT - PAD + 16.0,
        r = WIDTH - PAD,
        tx = PAD - 4.0,
        b = HEIGHT - PAD,
    );
    let _ = writeln!(s, r#"<g id="points" stroke="black" stroke-width="0.3">"#);
    for (i, label) in emb.labels.iter().enumerate() {
        let row = emb.row(i);
        let _ = writeln!(
            s,
            r#"<circle class="marker" cx="{:.3}" cy="{:.3}" r="4" fill="{}"><title>{}</title></circle>"#,
            sx(row[0]),
            sy(row[1]),
            fill(labels.get(label).copied()),
            escape(label),
        );
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '&' => out.push_str("&amp;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn emb(rows: &[(&str, f64, f64)]) -> NodeEmbeddings {
        NodeEmbeddings {
            labels: rows.iter().map(|r| r.0.to_owned()).collect(),
            dim: 2,
            values: rows.iter().flat_map(|r| [r.1, r.2]).collect(),
        }
    }

    #[test]
    fn three_points() {
        let e = emb(&[("a", 0.0, 0.0), ("b", 1.0, 2.0), ("c", -1.0, 0.5)]);
        let labels = parse_labels("label,color\na,red\nb,blue\n").unwrap();
        let svg = emit_scatter(&e, &labels).unwrap();
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.contains("#d62728") && svg.contains("#1f77b4") && svg.contains("#888888"));
        assert_eq!(svg, emit_scatter(&e, &labels).unwrap());
    }

    #[test]
    fn points_stay_inside_margins() {
        let e = emb(&[("a", -3.0, 10.0), ("b", 5.0, -2.0)]);
        let svg = emit_scatter(&e, &HashMap::new()).unwrap();
        for part in svg.split("cx=\"").skip(1) {
            let x: f64 = part.split('"').next().unwrap().parse().unwrap();
            assert!(x > PAD && x < WIDTH - PAD);
        }
    }

    #[test]
    fn empty_embedding_gives_axes() {
        let e = NodeEmbeddings {
            labels: vec![],
            dim: 2,
            values: vec![],
        };
        let svg = emit_scatter(&e, &HashMap::new()).unwrap();
        assert!(svg.contains("<svg") && svg.contains("id=\"axes\"") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<circle").count(), 0);
    }

    #[test]
    fn wrong_dimension() {
        let e = NodeEmbeddings {
            labels: vec!["a".into()],
            dim: 3,
            values: vec![0.0; 3],
        };
        assert_eq!(emit_scatter(&e, &HashMap::new()), Err(PlotError::Dimension(3)));
    }

    #[test]
    fn labels_escaped() {
        let e = emb(&[("<a&b>", 0.0, 0.0)]);
        let svg = emit_scatter(&e, &HashMap::new()).unwrap();
        assert!(svg.contains("&lt;a&amp;b&gt;"));
    }

    #[test]
    fn labels_parse_errors() {
        assert_eq!(parse_labels(""), Err(LabelsError::MissingHeader));
        assert_eq!(parse_labels("a,red\n"), Err(LabelsError::MissingHeader));
        assert!(matches!(parse_labels("label,color\na\n"), Err(LabelsError::Malformed { line: 2, .. })));
        assert!(matches!(
            parse_labels("label,color\na,red,x\n"),
            Err(LabelsError::Malformed { .. })
        ));
        assert!(matches!(
            parse_labels("label,color\na,green\n"),
            Err(LabelsError::UnknownColor { .. })
        ));
        assert!(matches!(
            parse_labels("label,color\na,red\na,blue\n"),
            Err(LabelsError::DuplicateLabel { line: 3, .. })
        ));
    }

    #[test]
    fn labels_round_trip_with_datagen_writer() {
        use crate::datagen::labels_csv;
        let csv = labels_csv(&[((0, 0), Color::Red), ((5, -1), Color::Yellow)]);
        let m = parse_labels(&csv).unwrap();
        assert_eq!(m["c0_0"], Color::Red);
        assert_eq!(m["c5_-1"], Color::Yellow);
    }
}
