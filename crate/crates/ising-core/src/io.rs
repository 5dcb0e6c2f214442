//! Instance file I/O in a plain triplet text format.
//!
//! One record per line, `u v value`, whitespace separated:
//!
//! * `u < v` is the coupling `J_uv`,
//! * `u == v` is the field `h_u` (diagonal-is-field convention),
//! * lines starting with `#` are comments; header comments of the form
//!   `# key=value` carry `n`, `name`, `L`, and `E0` metadata.
//!
//! Indices are 0-based; [`IndexBase::One`] converts 1-based inputs on
//! load. External archives must be converted to this triplet form before
//! they can be read.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

use crate::error::ModelError;
use crate::model::{IsingModel, ModelMetadata};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Index convention of the file being read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IndexBase {
    #[default]
    Zero,
    One,
}

/// Load a model from a triplet-format file (0-based indices).
pub fn load_instance<P: AsRef<Path>>(path: P) -> Result<IsingModel, FileError> {
    load_instance_with(path, IndexBase::Zero)
}

/// Load a model, converting indices from the given base.
pub fn load_instance_with<P: AsRef<Path>>(
    path: P,
    base: IndexBase,
) -> Result<IsingModel, FileError> {
    let file = File::open(path)?;
    let reader = BufReader::new(file);

    let mut metadata = ModelMetadata::default();
    let mut declared_n: Option<usize> = None;
    let mut records: Vec<(usize, usize, usize, f64)> = Vec::new(); // (line, u, v, value)
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut max_index = 0usize;

    for (line_index, line) in reader.lines().enumerate() {
        let line_no = line_index + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            parse_metadata(comment, line_no, &mut metadata, &mut declared_n)?;
            continue;
        }

        let tokens: Vec<&str> = text.split_ascii_whitespace().collect();
        if tokens.len() != 3 {
            return Err(FileError::Parse {
                line: line_no,
                message: format!("expected `u v value`, got {} tokens", tokens.len()),
            });
        }
        let u = parse_index(tokens[0], base, line_no)?;
        let v = parse_index(tokens[1], base, line_no)?;
        let value: f64 = tokens[2].parse().map_err(|_| FileError::Parse {
            line: line_no,
            message: format!("invalid value `{}`", tokens[2]),
        })?;
        if !value.is_finite() {
            return Err(FileError::Parse {
                line: line_no,
                message: format!("non-finite value `{}`", tokens[2]),
            });
        }
        let pair = (u.min(v), u.max(v));
        if !seen.insert(pair) {
            return Err(FileError::Parse {
                line: line_no,
                message: if u == v {
                    format!("duplicate field for spin {u}")
                } else {
                    format!("duplicate pair ({}, {})", pair.0, pair.1)
                },
            });
        }
        max_index = max_index.max(u).max(v);
        records.push((line_no, u, v, value));
    }

    if records.is_empty() && declared_n.is_none() {
        return Err(FileError::Parse {
            line: 0,
            message: "no records and no `# n=` header".into(),
        });
    }
    let n = declared_n.unwrap_or(max_index + 1);
    let mut fields = vec![0.0f64; n];
    let mut couplings = Vec::new();
    for (line_no, u, v, value) in records {
        if u >= n || v >= n {
            return Err(FileError::Parse {
                line: line_no,
                message: format!("index out of range: ({u}, {v}) with n={n}"),
            });
        }
        if u == v {
            fields[u] = value;
        } else {
            couplings.push((u, v, value));
        }
    }
    let model = IsingModel::new(n, couplings, fields)?;
    Ok(model.with_metadata(metadata))
}

fn parse_index(token: &str, base: IndexBase, line_no: usize) -> Result<usize, FileError> {
    let raw: usize = token.parse().map_err(|_| FileError::Parse {
        line: line_no,
        message: format!("invalid index `{token}`"),
    })?;
    match base {
        IndexBase::Zero => Ok(raw),
        IndexBase::One => raw.checked_sub(1).ok_or_else(|| FileError::Parse {
            line: line_no,
            message: "index 0 in a 1-based file".into(),
        }),
    }
}

fn parse_metadata(
    comment: &str,
    line_no: usize,
    metadata: &mut ModelMetadata,
    declared_n: &mut Option<usize>,
) -> Result<(), FileError> {
    let Some((key, value)) = comment.split_once('=') else {
        return Ok(()); // plain comment
    };
    let key = key.trim();
    let value = value.trim();
    let bad = |what: &str| FileError::Parse {
        line: line_no,
        message: format!("invalid {what} `{value}`"),
    };
    match key {
        "n" => *declared_n = Some(value.parse().map_err(|_| bad("spin count"))?),
        "name" => metadata.name = Some(value.to_string()),
        "L" => metadata.logical_size = Some(value.parse().map_err(|_| bad("logical size"))?),
        "E0" => metadata.ground_energy = Some(value.parse().map_err(|_| bad("ground energy"))?),
        _ => {} // unknown keys are ignored
    }
    Ok(())
}

/// Write a model in the triplet format. Zero fields are omitted; stored
/// couplings are written verbatim, so save -> load round-trips bit-exactly.
pub fn save_instance<P: AsRef<Path>>(model: &IsingModel, path: P) -> Result<(), FileError> {
    let file = File::create(path)?;
    let mut out = BufWriter::new(file);
    writeln!(out, "# n={}", model.n())?;
    if let Some(name) = &model.metadata.name {
        writeln!(out, "# name={name}")?;
    }
    if let Some(l) = model.metadata.logical_size {
        writeln!(out, "# L={l}")?;
    }
    if let Some(e0) = model.metadata.ground_energy {
        writeln!(out, "# E0={e0}")?;
    }
    for (i, &h) in model.fields().iter().enumerate() {
        if h != 0.0 {
            writeln!(out, "{i} {i} {h}")?;
        }
    }
    for c in model.couplings() {
        writeln!(out, "{} {} {}", c.i, c.j, c.value)?;
    }
    out.flush()?;
    Ok(())
}
