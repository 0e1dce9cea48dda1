use std::fmt::Write as _;

use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

enum Block {
    Line(Vec<(String, Value)>),
    Table {
        name: String,
        columns: Vec<String>,
        rows: Vec<Vec<Value>>,
    },
    Text {
        name: String,
        body: String,
    },
}

/// A command result, rendered either as text lines or as one JSON object
/// holding the same fields.
pub struct Output {
    command: &'static str,
    blocks: Vec<Block>,
    pub failed: bool,
}

impl Output {
    pub fn new(command: &'static str) -> Output {
        Output {
            command,
            blocks: Vec::new(),
            failed: false,
        }
    }

    /// One text line of `key: value` pairs.
    pub fn line<K: Into<String>>(&mut self, fields: Vec<(K, Value)>) -> &mut Self {
        self.blocks.push(Block::Line(
            fields.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        ));
        self
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.line(vec![(key, value.into())])
    }

    pub fn table(&mut self, name: &str, columns: &[&str], rows: Vec<Vec<Value>>) -> &mut Self {
        self.blocks.push(Block::Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        });
        self
    }

    /// Verbatim multi-line text, e.g. a grid.
    pub fn text(&mut self, name: &str, body: String) -> &mut Self {
        self.blocks.push(Block::Text {
            name: name.into(),
            body,
        });
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for b in &self.blocks {
            match b {
                Block::Line(fields) => {
                    let parts: Vec<String> = fields
                        .iter()
                        .map(|(k, v)| format!("{k}: {}", plain(v)))
                        .collect();
                    writeln!(out, "{}", parts.join(", ")).unwrap();
                }
                Block::Table { columns, rows, .. } => {
                    writeln!(out, "{}", columns.join(" ")).unwrap();
                    for r in rows {
                        let cells: Vec<String> = r.iter().map(plain).collect();
                        writeln!(out, "{}", cells.join(" ")).unwrap();
                    }
                }
                Block::Text { body, .. } => out.push_str(body),
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("schema_version".into(), SCHEMA_VERSION.into());
        obj.insert("command".into(), self.command.into());
        for b in &self.blocks {
            match b {
                Block::Line(fields) => {
                    for (k, v) in fields {
                        obj.insert(k.clone(), v.clone());
                    }
                }
                Block::Table {
                    name,
                    columns,
                    rows,
                } => {
                    let rows = rows
                        .iter()
                        .map(|r| {
                            Value::Object(columns.iter().cloned().zip(r.iter().cloned()).collect())
                        })
                        .collect();
                    obj.insert(name.clone(), Value::Array(rows));
                }
                Block::Text { name, body } => {
                    obj.insert(name.clone(), body.clone().into());
                }
            }
        }
        let mut s =
            serde_json::to_string_pretty(&Value::Object(obj)).expect("json values serialize");
        s.push('\n');
        s
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) if s.is_empty() => "ε".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) if items.is_empty() => "none".into(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}
