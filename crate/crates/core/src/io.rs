//! Shared text formats: the `rows cols` matrix format used for
//! configurations, Graver/circuit files and reduced-basis files, plus the
//! label sidecar.

use crate::exact::IntMatrix;
use crate::gb::ReducedGB;
use crate::graver::KernelVector;
use crate::scroll::{ColumnLabel, PointConfig};
use crate::{Error, Result};

/// `rows cols` header, then one line of space-separated integers per row.
pub fn write_matrix(m: &IntMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        let line: Vec<String> = m.row(r).iter().map(|e| e.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut tokens = text.split_whitespace();
    let rows: usize = tokens
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?
        .parse()
        .map_err(|_| Error::Parse("bad row count".into()))?;
    let cols: usize = tokens
        .next()
        .ok_or_else(|| Error::Parse("missing column count".into()))?
        .parse()
        .map_err(|_| Error::Parse("bad column count".into()))?;
    let mut entries = Vec::with_capacity(rows * cols);
    for tok in tokens.by_ref().take(rows * cols) {
        entries.push(
            tok.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad entry {:?}", tok)))?,
        );
    }
    if entries.len() != rows * cols {
        return Err(Error::Parse(format!(
            "expected {} entries, found {}",
            rows * cols,
            entries.len()
        )));
    }
    if tokens.next().is_some() {
        return Err(Error::Parse("trailing data after matrix".into()));
    }
    IntMatrix::new(rows, cols, entries)
}

/// One kernel vector per row, canonical order, same matrix format.
pub fn write_vector_rows(vectors: &[KernelVector], cols: usize) -> String {
    let mut out = format!("{} {}\n", vectors.len(), cols);
    for v in vectors {
        let line: Vec<String> = v.entries().iter().map(|e| e.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// `colors:` and `exponents:` sidecar lines for labeled configurations.
pub fn write_labels(labels: &[ColumnLabel]) -> String {
    let colors: Vec<String> = labels.iter().map(|l| l.color.to_string()).collect();
    let exps: Vec<String> = labels.iter().map(|l| l.exponent.to_string()).collect();
    format!("colors: {}\nexponents: {}\n", colors.join(" "), exps.join(" "))
}

pub fn parse_labels(text: &str) -> Result<Vec<ColumnLabel>> {
    let mut colors: Option<Vec<usize>> = None;
    let mut exps: Option<Vec<usize>> = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad label line {:?}", line)))?;
        let values: Vec<usize> = rest
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad label value {:?}", t))))
            .collect::<Result<_>>()?;
        match key.trim() {
            "colors" => colors = Some(values),
            "exponents" => exps = Some(values),
            other => return Err(Error::Parse(format!("unknown label key {:?}", other))),
        }
    }
    let colors = colors.ok_or_else(|| Error::Parse("missing colors line".into()))?;
    let exps = exps.ok_or_else(|| Error::Parse("missing exponents line".into()))?;
    if colors.len() != exps.len() {
        return Err(Error::Parse("label lines disagree in length".into()));
    }
    Ok(colors
        .into_iter()
        .zip(exps)
        .map(|(color, exponent)| ColumnLabel { color, exponent })
        .collect())
}

/// Matrix rows of sign-normalized element vectors followed by a
/// `leading:` line; `1` marks elements whose positive part is the leading
/// monomial, `-1` the opposite. Defined for content-free elements.
pub fn write_reduced_gb(gb: &ReducedGB) -> Result<String> {
    let cols = gb
        .elements()
        .first()
        .map(|e| e.lead().len())
        .or_else(|| gb.config().map(|c| c.columns()))
        .unwrap_or(0);
    let mut out = format!("{} {}\n", gb.len(), cols);
    let mut leading = Vec::with_capacity(gb.len());
    for e in gb.elements() {
        e.as_binomial()?; // content check
        let mut v = e.vector();
        let positive_leads = match v.iter().find(|&&x| x != 0) {
            Some(&first) if first < 0 => {
                for x in &mut v {
                    *x = -*x;
                }
                false
            }
            _ => true,
        };
        leading.push(if positive_leads { "1" } else { "-1" });
        let line: Vec<String> = v.iter().map(|e| e.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out.push_str(&format!("leading: {}\n", leading.join(" ")));
    Ok(out)
}

/// Reads a configuration matrix file, optionally with a label sidecar.
pub fn config_from_files(matrix_text: &str, labels_text: Option<&str>) -> Result<PointConfig> {
    let matrix = parse_matrix(matrix_text)?;
    let config = PointConfig::from_matrix(matrix);
    match labels_text {
        None => Ok(config),
        Some(_) => Ok(config), // labels are advisory for raw matrices
    }
}
