//! Report rendering and re-parsing.
//!
//! A report is the assessment table sorted by traditional rank, followed
//! by a comparison summary (Spearman correlation and the groups of records
//! that share one traditional RPN). Two formats: a padded text table for
//! humans and CSV for tooling. F-RPN is printed with one decimal place,
//! Spearman with four. Rendering is byte-deterministic.

use crate::error::{Error, Result};
use crate::fmea::{RankingComparison, RiskAssessment};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::ReportParse {
                line: 0,
                message: format!("unknown format '{other}' (expected text or csv)"),
            }),
        }
    }
}

const CSV_HEADER: [&str; 7] =
    ["component", "failure_mode", "t_rpn", "f_rpn", "t_rank", "f_rank", "rank_delta"];

fn sorted_by_t_rank(assessments: &[RiskAssessment]) -> Vec<&RiskAssessment> {
    let mut rows: Vec<&RiskAssessment> = assessments.iter().collect();
    rows.sort_by_key(|a| a.t_rank);
    rows
}

/// Render a report in the requested format.
pub fn render_report(
    assessments: &[RiskAssessment],
    comparison: &RankingComparison,
    format: ReportFormat,
) -> Result<String> {
    if assessments.is_empty() {
        return Err(Error::EmptyRegister);
    }
    Ok(match format {
        ReportFormat::Text => render_text(assessments, comparison),
        ReportFormat::Csv => render_csv(assessments, comparison),
    })
}

fn render_text(assessments: &[RiskAssessment], comparison: &RankingComparison) -> String {
    let rows = sorted_by_t_rank(assessments);
    let mut table: Vec<[String; 7]> = vec![CSV_HEADER.map(str::to_string)];
    for a in &rows {
        table.push([
            a.record.component.clone(),
            a.record.failure_mode.clone(),
            a.t_rpn.to_string(),
            format!("{:.1}", a.f_rpn),
            a.t_rank.to_string(),
            a.f_rank.to_string(),
            (a.t_rank as i64 - a.f_rank as i64).to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..7)
        .map(|c| table.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &table {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            if c < 2 {
                line.push_str(&format!("{cell:<width$}", width = widths[c]));
            } else {
                line.push_str(&format!("{cell:>width$}", width = widths[c]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push('\n');
    out.push_str(&format!("Spearman rank correlation: {:.4}\n", comparison.spearman));
    if comparison.equal_trpn_groups.is_empty() {
        out.push_str("Equal T-RPN groups: none\n");
    } else {
        out.push_str("Equal T-RPN groups:\n");
        for group in &comparison.equal_trpn_groups {
            let members: Vec<String> = group
                .members
                .iter()
                .map(|(r, f)| format!("{}/{} (F-RPN {:.1})", r.component, r.failure_mode, f))
                .collect();
            out.push_str(&format!("  T-RPN {}: {}\n", group.t_rpn, members.join(", ")));
        }
    }
    out
}

fn render_csv(assessments: &[RiskAssessment], comparison: &RankingComparison) -> String {
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for a in sorted_by_t_rank(assessments) {
        writer
            .write_record([
                a.record.component.as_str(),
                a.record.failure_mode.as_str(),
                &a.t_rpn.to_string(),
                &format!("{:.1}", a.f_rpn),
                &a.t_rank.to_string(),
                &a.f_rank.to_string(),
                &(a.t_rank as i64 - a.f_rank as i64).to_string(),
            ])
            .expect("in-memory write");
    }
    let mut out = String::from_utf8(writer.into_inner().expect("in-memory flush"))
        .expect("csv output is utf-8");
    out.push_str(&format!("# spearman {:.4}\n", comparison.spearman));
    for group in &comparison.equal_trpn_groups {
        let members: Vec<String> = group
            .members
            .iter()
            .map(|(r, f)| format!("{}/{}={:.1}", r.component, r.failure_mode, f))
            .collect();
        out.push_str(&format!("# equal_t_rpn {}: {}\n", group.t_rpn, members.join("; ")));
    }
    out
}

/// One data row recovered from a CSV report.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub component: String,
    pub failure_mode: String,
    pub t_rpn: u32,
    pub f_rpn: f64,
    pub t_rank: usize,
    pub f_rank: usize,
    pub rank_delta: i64,
}

/// A CSV report read back in.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedReport {
    pub rows: Vec<ReportRow>,
    pub spearman: Option<f64>,
}

/// Parse a CSV-format report produced by [`render_report`].
pub fn parse_csv_report(text: &str) -> Result<ParsedReport> {
    let mut table = String::new();
    let mut spearman = None;
    for (idx, line) in text.lines().enumerate() {
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(value) = rest.strip_prefix("spearman") {
                spearman =
                    Some(value.trim().parse::<f64>().map_err(|_| Error::ReportParse {
                        line: idx + 1,
                        message: format!("bad spearman value '{}'", value.trim()),
                    })?);
            }
            continue;
        }
        table.push_str(line);
        table.push('\n');
    }

    let mut reader = csv::ReaderBuilder::new().from_reader(table.as_bytes());
    {
        let headers = reader.headers().map_err(|e| Error::ReportParse {
            line: 1,
            message: format!("unreadable header: {e}"),
        })?;
        let got: Vec<&str> = headers.iter().collect();
        if got != CSV_HEADER {
            return Err(Error::ReportParse {
                line: 1,
                message: format!("unexpected header: {}", got.join(",")),
            });
        }
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::ReportParse { line: 0, message: e.to_string() })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        let field = |i: usize| record.get(i).unwrap_or("");
        let parse_num = |i: usize| -> Result<f64> {
            field(i).parse::<f64>().map_err(|_| Error::ReportParse {
                line,
                message: format!("'{}' in column {} is not a number", field(i), CSV_HEADER[i]),
            })
        };
        rows.push(ReportRow {
            component: field(0).to_string(),
            failure_mode: field(1).to_string(),
            t_rpn: parse_num(2)? as u32,
            f_rpn: parse_num(3)?,
            t_rank: parse_num(4)? as usize,
            f_rank: parse_num(5)? as usize,
            rank_delta: parse_num(6)? as i64,
        });
    }
    if rows.is_empty() {
        return Err(Error::ReportParse { line: 0, message: "report has no data rows".into() });
    }
    Ok(ParsedReport { rows, spearman })
}
