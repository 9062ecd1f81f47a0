//! Plot-ready table emission. Values are printed in scientific notation with
//! 12 significant digits, locale-independent, so repeated runs are
//! byte-identical and downstream checks at 1e-9 tolerances survive a
//! round-trip through text.

use std::fmt::Write;

use crate::error::Error;
use crate::sweep::SweepTable;

/// 12 significant digits: one leading digit plus 11 fractional digits.
pub fn format_value(value: f64) -> String {
    format!("{value:.11e}")
}

/// CSV with a header row; one line per result row.
pub fn emit_csv(table: &SweepTable) -> Result<String, Error> {
    if table.rows.is_empty() {
        return Err(Error::EmptyResult);
    }
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let mut first = true;
        for value in &row.values {
            if !first {
                out.push(',');
            }
            out.push_str(&format_value(*value));
            first = false;
        }
        out.push('\n');
    }
    Ok(out)
}

/// JSON array of objects mirroring the CSV columns.
pub fn emit_json(table: &SweepTable) -> Result<String, Error> {
    if table.rows.is_empty() {
        return Err(Error::EmptyResult);
    }
    let mut out = String::from("[\n");
    for (index, row) in table.rows.iter().enumerate() {
        out.push_str("  {");
        for (column, value) in table.columns.iter().zip(row.values.iter()) {
            if !out.ends_with('{') {
                out.push_str(", ");
            }
            let _ = write!(out, "\"{column}\": {}", format_value(*value));
        }
        out.push('}');
        if index + 1 < table.rows.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]\n");
    Ok(out)
}
