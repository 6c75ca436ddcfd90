//! Deterministic CSV and JSON rendering of tabular datasets.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::config::Format;
use crate::error::CliError;

pub const SERIES_COLUMNS: [&str; 9] = ["t", "P", "C", "s11", "s22", "s33", "s44", "re_s32", "im_s32"];
pub const STEADY_COLUMNS: [&str; 5] = ["theta", "t_mean", "t_diff", "P_ss", "C_ss"];

/// Column-named rows plus ordered `key: value` metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    pub meta: Vec<(String, String)>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new(), meta: Vec::new() }
    }

    pub fn push_meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.meta.push((key.into(), value.to_string()));
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut text = serde_json::to_string_pretty(&self.to_json()).expect("finite values");
                text.push('\n');
                text
            }
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format_number(*x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let rows: Vec<Value> = self.rows.iter().map(|r| self.record(r)).collect();
        json!({ "meta": meta, "rows": rows })
    }

    pub fn record(&self, row: &[f64]) -> Value {
        let map: Map<String, Value> = self.columns.iter().zip(row).map(|(c, x)| (c.to_string(), json!(x))).collect();
        Value::Object(map)
    }
}

/// Shortest representation that round-trips, so repeated runs are byte-identical.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:?}")
    }
}

/// SHA-256 of the canonical JSON form of a configuration.
pub fn config_hash<T: Serialize>(config: &T) -> String {
    let canonical = serde_json::to_string(config).expect("configuration serialises");
    Sha256::digest(canonical.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes to `path`, or to standard output when `None`.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|source| io_error(parent, source))?;
            }
            std::fs::write(p, text).map_err(|source| io_error(p, source))
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            match lock.write_all(text.as_bytes()) {
                // A closed pipe (`dimer ... | head`) is the reader's choice, not an error.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r.map_err(|source| io_error(Path::new("<stdout>"), source)),
            }
        }
    }
}

fn io_error(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io { path: path.display().to_string(), source }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["t", "P"]);
        t.push_meta("config_hash", "abc");
        t.rows.push(vec![0.0, 0.0]);
        t.rows.push(vec![0.5, 0.125]);
        t
    }

    #[test]
    fn csv_layout() {
        let csv = sample().render(Format::Csv);
        assert_eq!(csv, "# config_hash: abc\nt,P\n0,0\n0.5,0.125\n");
    }

    #[test]
    fn json_mirrors_columns() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["meta"]["config_hash"], "abc");
        assert_eq!(v["rows"][1]["P"], 0.125);
        let keys: Vec<&String> = v["rows"][0].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["t", "P"]);
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = config_hash(&json!({"xi": 5.0}));
        assert_eq!(a, config_hash(&json!({"xi": 5.0})));
        assert_ne!(a, config_hash(&json!({"xi": 5.000001})));
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn number_format_round_trips() {
        for x in [1e-300, 0.1, 1.0 / 3.0, 12345.678, -2.5e-7] {
            assert_eq!(format_number(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_number(-0.0), "0");
    }
}
