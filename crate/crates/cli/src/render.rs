//! Plain-text rendering of command results. Everything shown is read from
//! the JSON result.

use std::fmt::Write as _;

use serde_json::{Map, Value};

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object()) && a.iter().all(|x| !x.is_array() || scalar(x).is_some()) => {
            let parts: Vec<String> = a.iter().map(|x| scalar(x).unwrap_or_default()).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        Value::Object(o) if o.len() == 1 => {
            let (k, x) = o.iter().next().unwrap();
            scalar(x).map(|s| format!("{k} {s}"))
        }
        _ => None,
    }
}

/// Objects sharing one key set, each with scalar fields, shown as a table.
fn table(items: &[Value]) -> Option<Vec<Vec<String>>> {
    let first = items.first()?.as_object()?;
    let keys: Vec<&String> = first.keys().collect();
    let mut rows = vec![keys.iter().map(|k| k.to_string()).collect::<Vec<_>>()];
    for it in items {
        let o = it.as_object()?;
        if o.len() != keys.len() {
            return None;
        }
        let row = keys
            .iter()
            .map(|k| o.get(*k).and_then(scalar))
            .collect::<Option<Vec<String>>>()?;
        rows.push(row);
    }
    Some(rows)
}

fn write_table(out: &mut String, indent: usize, rows: &[Vec<String>]) {
    let widths: Vec<usize> = (0..rows[0].len())
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{:indent$}{}", "", cells.join("  ").trim_end());
    }
}

fn write_object(out: &mut String, indent: usize, o: &Map<String, Value>) {
    for (k, v) in o {
        write_field(out, indent, k, v);
    }
}

fn write_field(out: &mut String, indent: usize, key: &str, v: &Value) {
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{:indent$}{key}: {s}", "");
        return;
    }
    let _ = writeln!(out, "{:indent$}{key}:", "");
    match v {
        Value::Object(o) => write_object(out, indent + 2, o),
        Value::Array(a) => match table(a) {
            Some(rows) => write_table(out, indent + 2, &rows),
            None => {
                for (i, x) in a.iter().enumerate() {
                    write_field(out, indent + 2, &format!("[{i}]"), x);
                }
            }
        },
        _ => {}
    }
}

/// One block per command result, as produced by
/// [`Report::to_json`](crate::run::Report::to_json).
pub fn render_report(v: &Value) -> String {
    let mut out = String::new();
    for item in v.as_array().into_iter().flatten() {
        let line = item["line"].as_u64().unwrap_or(0);
        if let Some(e) = item.get("error") {
            let _ = writeln!(out, "error: {}", e.as_str().unwrap_or_default());
            continue;
        }
        let _ = writeln!(
            out,
            "[{line}] {} ({})",
            item["command"].as_str().unwrap_or_default(),
            item["status"].as_str().unwrap_or_default()
        );
        match &item["result"] {
            Value::Object(o) => write_object(&mut out, 2, o),
            other => write_field(&mut out, 2, "result", other),
        }
    }
    out
}
