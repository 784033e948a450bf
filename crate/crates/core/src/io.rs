//! Flat-file loading and writing in the UCR classification-archive layout,
//! plus CSV emission for reports.
//!
//! A record line is `label, v1, v2, ...` with comma or whitespace
//! separators (both archive vintages occur in the wild, so the loader
//! accepts either). A line starting with `#t` carries explicit timestamps
//! for the record on the following line; plain archive files load
//! unchanged and get 1-based index timestamps.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::classify::LabeledDataset;
use crate::series::{SeriesError, TimeSeries};

/// Environment variable naming the dataset root directory.
pub const DATA_ROOT_ENV: &str = "ELASTIKA_DATA";

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{path}: file contains no records")]
    EmptyFile { path: String },
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: {source}")]
    BadSeries {
        line: usize,
        #[source]
        source: SeriesError,
    },
    #[error("dataset {name} not found under {root}")]
    DatasetNotFound { name: String, root: String },
}

/// One record of a UCR-style file: a class label, the sample values, and
/// optionally explicit timestamps from a `#t` sidecar line.
#[derive(Debug, Clone, PartialEq)]
pub struct UcrRecord {
    pub label: String,
    pub values: Vec<f64>,
    pub stamps: Option<Vec<f64>>,
}

impl UcrRecord {
    /// The record as a 1-D series; absent timestamps default to the
    /// 1-based sample index.
    pub fn to_series(&self) -> Result<TimeSeries, SeriesError> {
        match &self.stamps {
            Some(stamps) => TimeSeries::univariate_with_stamps(&self.values, stamps),
            None => TimeSeries::univariate(&self.values),
        }
    }
}

/// Loads every record of a UCR-style file, in file order.
pub fn load_ucr(path: impl AsRef<Path>) -> Result<Vec<UcrRecord>, IoError> {
    let path = path.as_ref();
    let file = fs::File::open(path)?;
    let records = read_ucr(BufReader::new(file))?;
    if records.is_empty() {
        return Err(IoError::EmptyFile { path: path.display().to_string() });
    }
    Ok(records)
}

/// Loads UCR records from any reader. An empty input yields an empty list;
/// file-level emptiness is reported by [`load_ucr`].
pub fn read_ucr<R: Read>(reader: BufReader<R>) -> Result<Vec<UcrRecord>, IoError> {
    let mut records = Vec::new();
    let mut pending_stamps: Option<(usize, Vec<f64>)> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("#t") {
            let stamps = parse_numbers(rest, line_no)?;
            if stamps.is_empty() {
                return Err(IoError::MalformedLine {
                    line: line_no,
                    reason: "timestamp line carries no values".into(),
                });
            }
            if pending_stamps.is_some() {
                return Err(IoError::MalformedLine {
                    line: line_no,
                    reason: "two timestamp lines in a row".into(),
                });
            }
            pending_stamps = Some((line_no, stamps));
            continue;
        }
        if trimmed.starts_with('#') {
            continue;
        }

        let mut fields = split_fields(trimmed);
        let label = fields
            .next()
            .ok_or_else(|| IoError::MalformedLine { line: line_no, reason: "blank record".into() })?
            .to_string();
        let values: Vec<f64> = fields
            .map(|tok| {
                tok.parse::<f64>().map_err(|_| IoError::MalformedLine {
                    line: line_no,
                    reason: format!("cannot parse value {tok:?}"),
                })
            })
            .collect::<Result<_, _>>()?;
        if values.is_empty() {
            return Err(IoError::MalformedLine {
                line: line_no,
                reason: "record has a label but no values".into(),
            });
        }
        let stamps = match pending_stamps.take() {
            Some((stamp_line, stamps)) => {
                if stamps.len() != values.len() {
                    return Err(IoError::MalformedLine {
                        line: stamp_line,
                        reason: format!("{} timestamps for {} values", stamps.len(), values.len()),
                    });
                }
                Some(stamps)
            }
            None => None,
        };
        let record = UcrRecord { label, values, stamps };
        // Surface ordering problems at load time with the line number.
        record.to_series().map_err(|source| IoError::BadSeries { line: line_no, source })?;
        records.push(record);
    }
    if let Some((line, _)) = pending_stamps {
        return Err(IoError::MalformedLine {
            line,
            reason: "timestamp line without a following record".into(),
        });
    }
    Ok(records)
}

fn split_fields(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty())
}

fn parse_numbers(text: &str, line_no: usize) -> Result<Vec<f64>, IoError> {
    split_fields(text)
        .map(|tok| {
            tok.parse::<f64>().map_err(|_| IoError::MalformedLine {
                line: line_no,
                reason: format!("cannot parse timestamp {tok:?}"),
            })
        })
        .collect()
}

/// Writes records in the same format the loader accepts: comma-separated,
/// full round-trip precision, a `#t` line before any record with explicit
/// timestamps.
pub fn write_ucr(records: &[UcrRecord], path: impl AsRef<Path>) -> Result<(), IoError> {
    let mut out = String::new();
    for record in records {
        if let Some(stamps) = &record.stamps {
            out.push_str("#t ");
            out.push_str(&join_numbers(stamps));
            out.push('\n');
        }
        out.push_str(&record.label);
        out.push(',');
        out.push_str(&join_numbers(&record.values));
        out.push('\n');
    }
    atomic_write(path.as_ref(), out.as_bytes())?;
    Ok(())
}

fn join_numbers(values: &[f64]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// A rectangular report destined for a CSV file: one header row plus data
/// rows, all pre-rendered as strings in their final order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push_row(&mut self, row: impl IntoIterator<Item = impl Into<String>>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    /// The serialized file contents: header then rows, fields quoted only
    /// when they contain a separator, quote, or newline.
    pub fn render(&self) -> String {
        let mut out = String::new();
        render_row(&mut out, &self.header);
        for row in &self.rows {
            render_row(&mut out, row);
        }
        out
    }
}

fn render_row(out: &mut String, fields: &[String]) {
    for (i, field) in fields.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        if field.contains(['"', ',', '\n', '\r']) {
            out.push('"');
            out.push_str(&field.replace('"', "\"\""));
            out.push('"');
        } else {
            out.push_str(field);
        }
    }
    out.push('\n');
}

/// Writes a table to disk; identical tables produce byte-identical files.
pub fn emit_csv(table: &CsvTable, path: impl AsRef<Path>) -> Result<(), IoError> {
    atomic_write(path.as_ref(), table.render().as_bytes())?;
    Ok(())
}

fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(bytes)?;
    file.flush()
}

/// The dataset root: the `ELASTIKA_DATA` environment variable when set,
/// else `./data` when it exists.
pub fn data_root() -> Option<PathBuf> {
    if let Ok(root) = std::env::var(DATA_ROOT_ENV) {
        return Some(PathBuf::from(root));
    }
    let fallback = PathBuf::from("data");
    fallback.is_dir().then_some(fallback)
}

/// Finds the `_TRAIN`/`_TEST` pair for a dataset name under `root`, trying
/// the common directory and file-name spellings of the archive vintages.
pub fn find_ucr_dataset(root: &Path, name: &str) -> Option<(PathBuf, PathBuf)> {
    let variants =
        [name.to_string(), name.replace('-', "_"), name.replace('-', ""), name.replace(' ', "_")];
    let suffixes = ["", ".txt", ".tsv", ".csv"];
    for dir_variant in &variants {
        for file_variant in &variants {
            for suffix in &suffixes {
                let dir = root.join(dir_variant);
                let train = dir.join(format!("{file_variant}_TRAIN{suffix}"));
                let test = dir.join(format!("{file_variant}_TEST{suffix}"));
                if train.is_file() && test.is_file() {
                    return Some((train, test));
                }
                let train_flat = root.join(format!("{file_variant}_TRAIN{suffix}"));
                let test_flat = root.join(format!("{file_variant}_TEST{suffix}"));
                if train_flat.is_file() && test_flat.is_file() {
                    return Some((train_flat, test_flat));
                }
            }
        }
    }
    None
}

/// Loads several datasets by name; names that cannot be resolved are
/// reported back while the rest proceed.
pub fn load_datasets(root: &Path, names: &[&str]) -> (Vec<LabeledDataset>, Vec<String>) {
    let mut loaded = Vec::new();
    let mut missing = Vec::new();
    for name in names {
        match load_dataset(root, name) {
            Ok(dataset) => loaded.push(dataset),
            Err(_) => missing.push(name.to_string()),
        }
    }
    (loaded, missing)
}

/// Loads a named dataset from `root` into a labeled train/test split.
/// Numeric labels are canonicalized so `2` and `2.0000000e+00` agree.
pub fn load_dataset(root: &Path, name: &str) -> Result<LabeledDataset, IoError> {
    let (train_path, test_path) = find_ucr_dataset(root, name).ok_or_else(|| {
        IoError::DatasetNotFound { name: name.to_string(), root: root.display().to_string() }
    })?;
    Ok(LabeledDataset {
        name: name.to_string(),
        train: load_split(&train_path)?,
        test: load_split(&test_path)?,
    })
}

/// Loads one UCR file as labeled series.
pub fn load_split(path: &Path) -> Result<Vec<(String, TimeSeries)>, IoError> {
    load_ucr(path)?
        .into_iter()
        .enumerate()
        .map(|(i, record)| {
            let series =
                record.to_series().map_err(|source| IoError::BadSeries { line: i + 1, source })?;
            Ok((canonical_label(&record.label), series))
        })
        .collect()
}

/// Canonical form of a class label: integral numerics collapse to their
/// integer spelling, anything else stays verbatim.
pub fn canonical_label(raw: &str) -> String {
    if let Ok(v) = raw.parse::<f64>() {
        if v.is_finite() && v.fract() == 0.0 && v.abs() < 1e15 {
            return format!("{}", v as i64);
        }
    }
    raw.to_string()
}
