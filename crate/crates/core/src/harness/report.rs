use std::io::Write;

use serde::Serialize;

use super::property_l::LinkProbeReport;
use crate::error::{Error, Result};

/// Fixed CSV column order for sweep records.
pub const CSV_COLUMNS: [&str; 7] = ["a1", "a2", "b1", "b2", "defined", "value", "method_agree"];

/// One JSON object per sample, then the aggregate object with `"kind": "aggregate"`.
pub fn write_jsonl(report: &LinkProbeReport, mut out: impl Write) -> Result<()> {
    for record in &report.records {
        writeln!(out, "{}", to_json(record)?)?;
    }
    let mut agg = serde_json::to_value(&report.aggregate).map_err(json_error)?;
    if let serde_json::Value::Object(map) = &mut agg {
        map.insert("kind".into(), "aggregate".into());
    }
    writeln!(out, "{agg}")?;
    Ok(())
}

/// Sample records as CSV with [`CSV_COLUMNS`]; undefined cells are empty.
pub fn write_csv(report: &LinkProbeReport, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS).map_err(csv_error)?;
    for r in &report.records {
        let opt = |v: Option<String>| v.unwrap_or_default();
        w.write_record([
            r.a[0].to_string(),
            r.a[1].to_string(),
            r.b[0].to_string(),
            r.b[1].to_string(),
            r.defined.to_string(),
            opt(r.value.map(|v| v.to_string())),
            opt(r.method_agree.map(|v| v.to_string())),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Single-line JSON.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string(value).map_err(json_error)
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Io(e.to_string())
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}
