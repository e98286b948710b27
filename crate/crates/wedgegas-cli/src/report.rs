//! Report emission: CSV tables and JSON documents with a shared meta block.
//! CSV numbers carry 17 significant digits so every double round-trips
//! losslessly; JSON uses serde_json's shortest round-trip encoding.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use crate::config::Settings;
use crate::CliError;

/// 17 significant digits: lossless for f64.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn meta(command: &str, settings: &Settings) -> Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "seed": settings.mc_seed,
        "config": settings.echo(),
    })
}

pub fn json_document(command: &str, settings: &Settings, data: Value) -> String {
    let doc = json!({ "meta": meta(command, settings), "data": data });
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

pub fn csv_table(header: &str, rows: &[Vec<f64>]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(header);
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| fmt_num(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Write to the configured path, or stdout when no path is set.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Config(format!("cannot write '{}': {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| CliError::Numerical(format!("cannot write to stdout: {e}")))
        }
    }
}
