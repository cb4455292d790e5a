//! Failure-mode register ingestion.
//!
//! CSV with the exact header `component, failure_mode, severity,
//! occurrence, detection` (case-insensitive, any column order rejected —
//! the header must match positionally). Lines starting with `#` are
//! comments. Ratings must be integer literals in 1..=10.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fmea::FailureModeRecord;

const EXPECTED_HEADER: [&str; 5] =
    ["component", "failure_mode", "severity", "occurrence", "detection"];

/// Load a register file. Errors cite the file line and column.
pub fn load_register(path: impl AsRef<Path>) -> Result<Vec<FailureModeRecord>> {
    let text = fs::read_to_string(path)?;
    parse_register(&text)
}

/// Parse register text (see module docs for the format).
pub fn parse_register(text: &str) -> Result<Vec<FailureModeRecord>> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());

    {
        let headers = reader.headers().map_err(|e| Error::RegisterFormat {
            message: format!("unreadable header: {e}"),
        })?;
        if headers.len() != EXPECTED_HEADER.len() {
            return Err(Error::RegisterFormat {
                message: format!(
                    "expected {} columns ({}), found {}",
                    EXPECTED_HEADER.len(),
                    EXPECTED_HEADER.join(", "),
                    headers.len()
                ),
            });
        }
        for (got, want) in headers.iter().zip(EXPECTED_HEADER) {
            if !got.eq_ignore_ascii_case(want) {
                return Err(Error::RegisterFormat {
                    message: format!("expected column '{want}', found '{got}'"),
                });
            }
        }
    }

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::RegisterFormat { message: e.to_string() })?;
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        if row.len() != EXPECTED_HEADER.len() {
            return Err(Error::RegisterRow {
                row: line,
                column: "-".into(),
                message: format!("expected {} fields, found {}", EXPECTED_HEADER.len(), row.len()),
            });
        }
        let rating = |idx: usize| -> Result<i64> {
            let raw = row.get(idx).unwrap_or("");
            raw.parse::<i64>().map_err(|_| Error::RegisterRow {
                row: line,
                column: EXPECTED_HEADER[idx].into(),
                message: format!("'{raw}' is not an integer"),
            })
        };
        let check = |idx: usize, value: i64| -> Result<u8> {
            if (1..=10).contains(&value) {
                Ok(value as u8)
            } else {
                Err(Error::RegisterRow {
                    row: line,
                    column: EXPECTED_HEADER[idx].into(),
                    message: format!("rating {value} outside 1..=10"),
                })
            }
        };
        records.push(FailureModeRecord {
            component: row.get(0).unwrap_or("").to_string(),
            failure_mode: row.get(1).unwrap_or("").to_string(),
            severity: check(2, rating(2)?)?,
            occurrence: check(3, rating(3)?)?,
            detection: check(4, rating(4)?)?,
        });
    }
    if records.is_empty() {
        return Err(Error::EmptyRegister);
    }
    Ok(records)
}
