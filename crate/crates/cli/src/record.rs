use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use motivic_core::ring::ClassJson;
use motivic_core::MotivicClass;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitCode {
    Success = 0,
    Usage = 1,
    Parse = 2,
    Computation = 3,
    Mismatch = 4,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

/// One command's outcome, printed as JSON with `--json` and as aligned
/// `key: value` lines otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub input: String,
    pub result: Value,
    pub status: Status,
    pub diagnostics: Vec<String>,
}

impl OutputRecord {
    pub fn ok(command: impl Into<String>, input: impl Into<String>, result: Value) -> Self {
        Self {
            command: command.into(),
            input: input.into(),
            result,
            status: Status::Ok,
            diagnostics: Vec::new(),
        }
    }

    pub fn error(command: impl Into<String>, input: impl Into<String>, diagnostics: Vec<String>) -> Self {
        debug_assert!(!diagnostics.is_empty());
        Self {
            command: command.into(),
            input: input.into(),
            result: Value::Null,
            status: Status::Error,
            diagnostics,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    /// Plain rendering. `normalize` and `modl` print just the class; other
    /// commands print one `key: value` line per result field.
    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        if self.status == Status::Error {
            for d in &self.diagnostics {
                let _ = writeln!(out, "{d}");
            }
            if self.result.is_null() {
                return out;
            }
        }
        match &self.result {
            Value::Object(map) if map.len() == 1 && map.contains_key("class") => {
                let _ = writeln!(out, "{}", plain_value(&map["class"]));
            }
            Value::Object(map) => write_fields(&mut out, map, ""),
            Value::Array(items) => {
                for item in items {
                    if let Ok(rec) = serde_json::from_value::<OutputRecord>(item.clone()) {
                        let _ = writeln!(out, "> {} {}", rec.command, rec.input);
                        out.push_str(&rec.to_plain());
                    }
                }
            }
            Value::Null => {}
            other => {
                let _ = writeln!(out, "{}", plain_value(other));
            }
        }
        out
    }
}

fn write_fields(out: &mut String, map: &Map<String, Value>, indent: &str) {
    for (key, value) in map {
        match value {
            Value::Object(inner) if !is_class(value) => {
                let _ = writeln!(out, "{indent}{key}:");
                write_fields(out, inner, &format!("{indent}  "));
            }
            Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                let _ = writeln!(out, "{indent}{key}:");
                for item in items {
                    let line: Vec<String> = item
                        .as_object()
                        .into_iter()
                        .flatten()
                        .map(|(k, v)| format!("{k}={}", plain_value(v)))
                        .collect();
                    let _ = writeln!(out, "{indent}  {}", line.join(" "));
                }
            }
            _ => {
                let _ = writeln!(out, "{indent}{key}: {}", plain_value(value));
            }
        }
    }
}

fn is_class(v: &Value) -> bool {
    v.as_object().is_some_and(|m| m.contains_key("text") && m.contains_key("terms"))
}

fn plain_value(v: &Value) -> String {
    match v {
        Value::Null => "none".to_string(),
        Value::String(s) => s.clone(),
        Value::Object(m) if is_class(v) => m["text"].as_str().unwrap_or_default().to_string(),
        Value::Array(items) => items.iter().map(plain_value).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

/// A class as `{"text": "L + 1", "terms": [...]}`: the canonical text next to
/// the structured form.
pub fn class_value(c: &MotivicClass) -> Value {
    let terms = serde_json::to_value(ClassJson::from(c)).expect("class serializes");
    json!({ "text": c.to_string(), "terms": terms["terms"] })
}

pub fn optional_class(c: Option<&MotivicClass>) -> Value {
    c.map_or(Value::Null, class_value)
}
