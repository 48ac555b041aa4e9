//! The JSON report document and its text rendering.

use serde::Serialize;
use serde_json::{Map, Number, Value};

/// Version of the report layout.
pub const SCHEMA_VERSION: &str = "1.0.0";

/// One report: the echoed inputs, the results and free-form diagnostics.
pub struct Report {
    pub subcommand: &'static str,
    pub inputs: Map<String, Value>,
    pub results: Value,
    pub diagnostics: Vec<String>,
}

impl Report {
    pub fn new(subcommand: &'static str) -> Self {
        Report {
            subcommand,
            inputs: Map::new(),
            results: Value::Null,
            diagnostics: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, v: impl Serialize) {
        self.inputs.insert(key.to_string(), to_value(v));
    }

    pub fn input_opt<T: Serialize>(&mut self, key: &str, v: Option<T>) {
        if let Some(v) = v {
            self.input(key, v);
        }
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.diagnostics.push(msg.into());
    }

    pub fn to_json(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        doc.insert("subcommand".into(), Value::from(self.subcommand));
        doc.insert("inputs".into(), Value::Object(self.inputs.clone()));
        doc.insert("results".into(), self.results.clone());
        doc.insert(
            "diagnostics".into(),
            Value::Array(
                self.diagnostics
                    .iter()
                    .map(|d| Value::from(d.as_str()))
                    .collect(),
            ),
        );
        Value::Object(doc)
    }

    pub fn render(&self, pretty: bool) -> String {
        let doc = self.to_json();
        if pretty {
            let mut out = String::new();
            render_text(&doc, 0, &mut out);
            out
        } else {
            doc.to_string()
        }
    }
}

/// Serializes `v` with every floating value rewritten to 17 significant digits.
pub fn to_value(v: impl Serialize) -> Value {
    let mut value = serde_json::to_value(v).expect("report values serialize");
    normalize(&mut value);
    value
}

/// `v` as a JSON number with 17 significant digits, or `null` if not finite.
pub fn number(v: f64) -> Value {
    if v.is_finite() {
        let n: Number = serde_json::from_str(&format!("{v:.16e}")).expect("valid number literal");
        Value::Number(n)
    } else {
        Value::Null
    }
}

fn normalize(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            *v = number(n.as_f64().expect("finite float"));
        }
        Value::Array(items) => items.iter_mut().for_each(normalize),
        Value::Object(map) => map.values_mut().for_each(normalize),
        _ => {}
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                if is_scalar(item) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar_text(item)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(item, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{pad}(none)\n"));
            }
            for item in items {
                if is_scalar(item) {
                    out.push_str(&format!("{pad}- {}\n", scalar_text(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(item, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => format!("{f}"),
            _ => n.to_string(),
        },
        other => other.to_string(),
    }
}
