//! Report emission: canonical key-sorted JSON, and a one-row-per-law CSV.

use std::io::Write;
use std::path::Path;

use crate::error::Result;
use crate::fuzz::suite::{ReportFormat, SuiteReport};

/// Canonical JSON: every object key-sorted, floats in shortest
/// round-trippable decimal form. Two runs with the same config differ only
/// in `wall_time_ms`.
pub fn report_to_json(report: &SuiteReport) -> Result<String> {
    let value = serde_json::to_value(report)?;
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    Ok(text)
}

pub fn report_from_json(text: &str) -> Result<SuiteReport> {
    Ok(serde_json::from_str(text)?)
}

/// One row per law: `law_id,trials,failures,worst_margin`. Float formatting
/// is shortest round-trip, so parsing the column back is bit-exact.
pub fn report_to_csv(report: &SuiteReport) -> String {
    let mut out = String::from("law_id,trials,failures,worst_margin\n");
    for (law_id, summary) in &report.per_law {
        out.push_str(&format!(
            "{},{},{},{}\n",
            law_id, summary.trials, summary.failures, summary.worst_margin
        ));
    }
    out
}

pub fn render_report(report: &SuiteReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => report_to_json(report),
        ReportFormat::Csv => Ok(report_to_csv(report)),
    }
}

/// Writes the rendered report to a file.
pub fn emit_report(report: &SuiteReport, format: ReportFormat, path: &Path) -> Result<()> {
    let text = render_report(report, format)?;
    let mut file = std::fs::File::create(path)?;
    file.write_all(text.as_bytes())?;
    Ok(())
}
