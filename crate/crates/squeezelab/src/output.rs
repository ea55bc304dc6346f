use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;
use squeezelab_core::fock::FockState;

use crate::error::{CliError, Result};

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(io_err(dir))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(io_err(path))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    write_text(path, &text)
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(io_err(path))
}

/// Rows of a two-column numeric CSV. A non-numeric first row is taken as a
/// header; `#` starts a comment line.
pub fn read_two_columns(path: &Path) -> Result<Vec<(f64, f64)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|source| CliError::Csv {
            path: path.to_path_buf(),
            source,
        })?;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|source| CliError::Csv {
            path: path.to_path_buf(),
            source,
        })?;
        if record.len() != 2 {
            return Err(CliError::validation(format!(
                "{}: line {} has {} columns, expected 2",
                path.display(),
                i + 1,
                record.len()
            )));
        }
        let parsed = (record[0].parse::<f64>(), record[1].parse::<f64>());
        match parsed {
            (Ok(x), Ok(y)) => rows.push((x, y)),
            _ if i == 0 => continue,
            _ => {
                return Err(CliError::validation(format!(
                    "{}: line {} is not numeric",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(rows)
}

/// Debug dump of a dense state: per-mode dimensions and every amplitude
/// above `1e-15` keyed by its occupation tuple `"n1,n2,…"`.
#[derive(Debug, Serialize)]
pub struct StateDump {
    pub schema: u32,
    pub dims: Vec<usize>,
    pub amplitudes: BTreeMap<String, [f64; 2]>,
}

pub fn state_dump(state: &FockState) -> StateDump {
    let amplitudes = state
        .iter()
        .filter(|(_, a)| a.norm() > 1e-15)
        .map(|(occ, a)| {
            let key: Vec<String> = occ.as_slice().iter().map(u32::to_string).collect();
            (key.join(","), [a.re, a.im])
        })
        .collect();
    StateDump {
        schema: crate::config::SCHEMA,
        dims: state.dims().to_vec(),
        amplitudes,
    }
}
