use std::fs;
use std::path::Path;

use anyhow::Context;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Top-level JSON object every command emits: schema, tool version, command
/// and seed, followed by the command's own fields.
pub fn envelope(command: &str, seed: u64, body: impl Serialize) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(1));
    out.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    out.insert("command".into(), json!(command));
    out.insert("seed".into(), json!(seed));
    match serde_json::to_value(body).expect("reports serialize") {
        Value::Object(fields) => out.extend(fields),
        other => {
            out.insert("result".into(), other);
        }
    }
    Value::Object(out)
}

pub fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).unwrap());
}

pub fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

pub fn read_file(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
