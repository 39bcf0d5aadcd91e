use std::fs;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn csv_field(v: &Value) -> Option<String> {
    let s = match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Array(_) | Value::Object(_) => return None,
    };
    if s.contains([',', '"', '\n']) {
        Some(format!("\"{}\"", s.replace('"', "\"\"")))
    } else {
        Some(s)
    }
}

/// Header and value row over the top-level scalar fields; nested values are dropped.
pub fn to_csv(value: &Value) -> String {
    let Some(obj) = value.as_object() else {
        return csv_field(value).map(|s| s + "\n").unwrap_or_default();
    };
    let (keys, vals): (Vec<String>, Vec<String>) = obj
        .iter()
        .filter_map(|(k, v)| csv_field(v).map(|s| (k.clone(), s)))
        .unzip();
    format!("{}\n{}\n", keys.join(","), vals.join(","))
}

pub fn render<T: Serialize>(report: &T, format: Format) -> io::Result<String> {
    let value = serde_json::to_value(report)?;
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&value)? + "\n",
        Format::Csv => to_csv(&value),
    })
}

pub fn emit<T: Serialize>(report: &T, format: Format, out: Option<&Path>) -> io::Result<()> {
    let text = render(report, format)?;
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}
