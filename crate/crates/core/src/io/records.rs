//! JSON records written by the command-line tool.
//!
//! Every record is an object carrying `format` and `record` keys. Keys are
//! emitted in sorted order, so equal records are equal bytes.

use crate::enumerate::{CampaignReport, REPORT_FORMAT};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

pub const RECORD_FORMAT: &str = "fgl-record/1";

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("not JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format tag {0:?}")]
    Format(String),
}

/// Wraps `body` (an object) with the format tag and record kind.
pub fn record(kind: &str, body: Value) -> Value {
    let mut v = match body {
        Value::Object(m) => Value::Object(m),
        other => json!({ "value": other }),
    };
    v["format"] = json!(RECORD_FORMAT);
    v["record"] = json!(kind);
    v
}

pub fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("record types serialize")
}

/// Pretty-printed with sorted keys and a final newline.
pub fn render(v: &Value) -> String {
    // Value objects are ordered maps, so key order is already sorted
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn write_report(r: &CampaignReport) -> String {
    render(&to_value(r))
}

pub fn read_report(text: &str) -> Result<CampaignReport, RecordError> {
    let v: Value = serde_json::from_str(text)?;
    let tag = v.get("format").and_then(Value::as_str).unwrap_or_default();
    if tag != REPORT_FORMAT {
        return Err(RecordError::Format(tag.to_string()));
    }
    Ok(serde_json::from_value(v)?)
}
