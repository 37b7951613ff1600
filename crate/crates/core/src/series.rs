//! Time series and datasets with deterministic CSV and JSON writers.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Column-named samples. The first column is conventionally `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl TimeSeries {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        Self { columns: columns.iter().map(|c| c.as_ref().to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::DimensionMismatch { expected: self.columns.len(), found: row.len() });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.index_of(name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Appends the columns of `other` (same length) with a name prefix.
    pub fn hstack(&mut self, other: &TimeSeries, prefix: &str) -> Result<()> {
        if other.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        self.columns.extend(other.columns.iter().map(|c| format!("{prefix}{c}")));
        for (row, extra) in self.rows.iter_mut().zip(&other.rows) {
            row.extend_from_slice(extra);
        }
        Ok(())
    }

    /// Appends rows of `other`, which must have identical columns.
    pub fn vstack(&mut self, other: TimeSeries) -> Result<()> {
        if other.columns != self.columns {
            return Err(Error::Config("cannot stack series with different columns".into()));
        }
        self.rows.extend(other.rows);
        Ok(())
    }
}

pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// A series plus scenario metadata. JSON object keys serialize sorted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub scenario: String,
    pub version: String,
    pub parameters: Map<String, Value>,
    pub notes: Vec<String>,
    pub series: TimeSeries,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub summary: Map<String, Value>,
}

impl Dataset {
    pub fn new(scenario: &str, parameters: Map<String, Value>, series: TimeSeries) -> Self {
        Self {
            scenario: scenario.to_string(),
            version: VERSION.to_string(),
            parameters,
            notes: Vec::new(),
            series,
            summary: Map::new(),
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.notes.push(note.to_string());
        self
    }

    pub fn with_summary(mut self, key: &str, value: Value) -> Self {
        self.summary.insert(key.to_string(), value);
        self
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# ergokit {} scenario={}", self.version, self.scenario);
        let _ = writeln!(out, "{}", self.series.columns.join(","));
        for row in &self.series.rows {
            let cells: Vec<String> = row.iter().map(|&x| fmt_num(x)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("dataset serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn render(self, ds: &Dataset) -> String {
        match self {
            Format::Csv => ds.to_csv(),
            Format::Json => ds.to_json(),
        }
    }
}

/// Writes through a sibling temporary file and renames, so a failed run
/// never leaves a partial output behind.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => std::path::PathBuf::from("."),
    };
    let name = path.file_name().ok_or_else(|| Error::Config(format!("invalid output path {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = (|| -> std::io::Result<()> {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result.map_err(Error::from)
}
