//! Report rendering: the JSON document and an aligned text table.

use std::fmt::Write as _;

use crate::error::Result;
use crate::harness::MutationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn emit_report(report: &MutationReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Text => to_text(report),
    }
}

pub fn to_json(report: &MutationReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn parse_report(text: &str) -> Result<MutationReport> {
    Ok(serde_json::from_str(text)?)
}

pub fn to_text(report: &MutationReport) -> String {
    let headers = ["ID", "OPERATOR", "TARGET", "VERDICT", "FAILED TESTS"];
    let rows: Vec<[String; 5]> = report
        .mutants
        .iter()
        .map(|m| {
            [
                m.id.clone(),
                m.operator.clone(),
                m.target.clone(),
                m.verdict.name().to_string(),
                if m.failed_tests.is_empty() { "-".to_string() } else { m.failed_tests.join(", ") },
            ]
        })
        .collect();
    let mut widths = headers.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }

    let mut out = String::new();
    let _ = writeln!(out, "run: {}  sut: {}", report.run, report.sut);
    let line = |cells: [&str; 5]| {
        let mut s = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i + 1 == cells.len() {
                s.push_str(cell);
            } else {
                let _ = write!(s, "{:<width$}  ", cell, width = widths[i]);
            }
        }
        s
    };
    let _ = writeln!(out, "{}", line(headers));
    for row in &rows {
        let cells = [&*row[0], &*row[1], &*row[2], &*row[3], &*row[4]];
        let _ = writeln!(out, "{}", line(cells));
    }
    let _ = writeln!(out, "killed: {}/{}  survived: {}", report.killed, report.total, report.survived);
    let _ = writeln!(out, "mutation score: {:.2}", report.score);
    out
}
