//! Visibility curves as CSV: fixed header, LF line endings, every number in
//! its shortest round-trip decimal form.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use qclock_core::{VisibilityCurve, VisibilityRow};

use crate::error::CliError;

pub const HEADER: &str =
    "sweep_value,delta_tau_s,visibility,phase_rad,p_plus,p_minus,distinguishability";

/// Shortest decimal that parses back to `x`. Plain notation for magnitudes in
/// `[1e-5, 1e16)`, exponent notation otherwise; zero of either sign is `0`.
pub fn format_number(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".to_string()
    } else if (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn row_line(row: &VisibilityRow) -> String {
    let d = row
        .distinguishability
        .map(format_number)
        .unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{}\n",
        format_number(row.sweep_value),
        format_number(row.delta_tau),
        format_number(row.visibility),
        format_number(row.phase),
        format_number(row.p_plus),
        format_number(row.p_minus),
        d
    )
}

/// Writes the curve and returns the number of bytes written.
pub fn write_csv<W: Write>(curve: &VisibilityCurve, mut out: W) -> io::Result<usize> {
    let mut written = 0;
    let header = format!("{HEADER}\n");
    out.write_all(header.as_bytes())?;
    written += header.len();
    for row in &curve.rows {
        let line = row_line(row);
        out.write_all(line.as_bytes())?;
        written += line.len();
    }
    out.flush()?;
    Ok(written)
}

pub fn to_csv_string(curve: &VisibilityCurve) -> String {
    let mut buf = Vec::new();
    write_csv(curve, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// Writes the curve to `path`, reporting failures together with the path.
pub fn emit_csv(curve: &VisibilityCurve, path: &Path) -> Result<usize, CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    write_csv(curve, BufWriter::new(file)).map_err(io_err)
}

/// Reads rows back from CSV text produced by [`write_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<VisibilityRow>, String> {
    let mut lines = text.split('\n');
    if lines.next() != Some(HEADER) {
        return Err("missing or unexpected header".into());
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(format!(
                "row {}: expected 7 fields, got {}",
                i + 1,
                fields.len()
            ));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|e| format!("row {}: {e}", i + 1));
        rows.push(VisibilityRow {
            sweep_value: num(fields[0])?,
            delta_tau: num(fields[1])?,
            visibility: num(fields[2])?,
            phase: num(fields[3])?,
            p_plus: num(fields[4])?,
            p_minus: num(fields[5])?,
            distinguishability: if fields[6].is_empty() {
                None
            } else {
                Some(num(fields[6])?)
            },
        });
    }
    Ok(rows)
}
