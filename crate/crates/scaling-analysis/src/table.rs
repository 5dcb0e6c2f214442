//! Median tables: the tabular interchange format between benchmarking and
//! fitting.
//!
//! A table holds one row per (solver, size, ε) with the median time-to-epsilon
//! and its bootstrap std. The CSV schema is `solver,n,epsilon,median,std`, one
//! header line, `inf` spelling infinite values. Tables produced by this
//! artifact and externally digitized reference curves share the format, so a
//! fit can run over either without special cases.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::TableError;
use crate::fit::FitPoint;

/// Expected CSV column names, in order. Matching is case-insensitive so that
/// externally produced files using `N` for the size column import unchanged.
const COLUMNS: [&str; 5] = ["solver", "n", "epsilon", "median", "std"];

/// One (solver, size, ε) entry of a median table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MedianRow {
    /// Name of the solver or data source the medians belong to.
    pub solver: String,
    /// Instance size N.
    pub n: usize,
    /// Relative energy tolerance the medians were evaluated at.
    pub epsilon: f64,
    /// Median time-to-epsilon; positive finite or +inf (unsolved).
    pub median: f64,
    /// Bootstrap std of the median; non-negative, may be +inf.
    pub std: f64,
}

/// A validated collection of median rows, keyed by (solver, ε) for series
/// extraction. Row order is preserved from construction.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MedianTable {
    rows: Vec<MedianRow>,
}

impl MedianTable {
    /// Builds a table from rows, validating each. The `row` index in errors is
    /// 1-based over the input slice (no header offset).
    pub fn new(rows: Vec<MedianRow>) -> Result<Self, TableError> {
        let mut table = MedianTable { rows: Vec::new() };
        for (i, row) in rows.into_iter().enumerate() {
            table.push_checked(row, i + 1)?;
        }
        Ok(table)
    }

    fn push_checked(&mut self, row: MedianRow, row_number: usize) -> Result<(), TableError> {
        validate_row(&row, row_number)?;
        if self
            .rows
            .iter()
            .any(|r| r.solver == row.solver && r.n == row.n && r.epsilon == row.epsilon)
        {
            return Err(TableError::Row {
                row: row_number,
                message: format!(
                    "duplicate entry for solver `{}`, N = {}, epsilon = {}",
                    row.solver, row.n, row.epsilon
                ),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// All rows in construction order.
    pub fn rows(&self) -> &[MedianRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Distinct solver names in first-appearance order.
    pub fn solvers(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for row in &self.rows {
            if !out.contains(&row.solver.as_str()) {
                out.push(&row.solver);
            }
        }
        out
    }

    /// Distinct ε values for one solver, ascending.
    pub fn epsilons(&self, solver: &str) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for row in self.rows.iter().filter(|r| r.solver == solver) {
            if !out.contains(&row.epsilon) {
                out.push(row.epsilon);
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }

    /// The (N, median, std) series for one (solver, ε) key, sorted by size.
    /// Empty when the key has no rows.
    pub fn series(&self, solver: &str, epsilon: f64) -> Vec<FitPoint> {
        let mut points: Vec<FitPoint> = self
            .rows
            .iter()
            .filter(|r| r.solver == solver && r.epsilon == epsilon)
            .map(|r| FitPoint::with_std(r.n as f64, r.median, r.std))
            .collect();
        points.sort_by(|a, b| a.n.total_cmp(&b.n));
        points
    }
}

fn validate_row(row: &MedianRow, row_number: usize) -> Result<(), TableError> {
    let fail = |message: String| TableError::Row {
        row: row_number,
        message,
    };
    if row.solver.trim().is_empty() {
        return Err(fail("solver name is empty".into()));
    }
    if row.n == 0 {
        return Err(fail("size must be at least 1".into()));
    }
    if !(row.epsilon.is_finite() && row.epsilon >= 0.0) {
        return Err(fail(format!(
            "epsilon must be finite and non-negative, got {}",
            row.epsilon
        )));
    }
    if row.median.is_nan() || row.median <= 0.0 {
        return Err(fail(format!(
            "median must be positive or inf, got {}",
            row.median
        )));
    }
    if row.std.is_nan() || row.std < 0.0 {
        return Err(fail(format!(
            "std must be non-negative, got {}",
            row.std
        )));
    }
    Ok(())
}

/// Reads a median table from CSV text following the
/// `solver,n,epsilon,median,std` schema. Errors carry 1-based file row
/// numbers, counting the header as row 1.
pub fn read_medians<R: Read>(reader: R) -> Result<MedianTable, TableError> {
    // Flexible mode: field-count mismatches surface through the explicit
    // length check below, which knows the file row number.
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);

    let header = csv_reader.headers()?.clone();
    let names: Vec<String> = header.iter().map(|h| h.to_ascii_lowercase()).collect();
    if names != COLUMNS {
        return Err(TableError::Header {
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }

    let mut table = MedianTable::default();
    for (i, record) in csv_reader.records().enumerate() {
        let row_number = i + 2; // header is row 1
        let record = record?;
        if record.len() != COLUMNS.len() {
            return Err(TableError::Row {
                row: row_number,
                message: format!("expected {} fields, found {}", COLUMNS.len(), record.len()),
            });
        }
        let field = |idx: usize| record.get(idx).unwrap_or_default();
        let parse_f64 = |idx: usize| -> Result<f64, TableError> {
            field(idx).parse::<f64>().map_err(|_| TableError::Row {
                row: row_number,
                message: format!("cannot parse `{}` as a number in column `{}`", field(idx), COLUMNS[idx]),
            })
        };
        let n: usize = field(1).parse().map_err(|_| TableError::Row {
            row: row_number,
            message: format!("cannot parse `{}` as a size in column `n`", field(1)),
        })?;
        let row = MedianRow {
            solver: field(0).to_string(),
            n,
            epsilon: parse_f64(2)?,
            median: parse_f64(3)?,
            std: parse_f64(4)?,
        };
        table.push_checked(row, row_number)?;
    }
    Ok(table)
}

/// Reads a median table from a CSV file. See [`read_medians`].
pub fn import_external_medians<P: AsRef<Path>>(path: P) -> Result<MedianTable, TableError> {
    read_medians(File::open(path)?)
}

/// Writes a table in the same CSV schema [`read_medians`] accepts. Floats are
/// written in shortest round-trip form (`inf` for infinities), so an
/// export→import cycle reproduces the table exactly.
pub fn write_medians<W: Write>(writer: W, table: &MedianTable) -> Result<(), TableError> {
    let mut csv_writer = csv::Writer::from_writer(writer);
    csv_writer.write_record(COLUMNS)?;
    for row in table.rows() {
        csv_writer.write_record([
            row.solver.as_str(),
            &row.n.to_string(),
            &row.epsilon.to_string(),
            &row.median.to_string(),
            &row.std.to_string(),
        ])?;
    }
    csv_writer.flush().map_err(TableError::Io)?;
    Ok(())
}

/// Writes a median table to a CSV file. See [`write_medians`].
pub fn export_medians<P: AsRef<Path>>(path: P, table: &MedianTable) -> Result<(), TableError> {
    write_medians(File::create(path)?, table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(solver: &str, n: usize, epsilon: f64, median: f64, std: f64) -> MedianRow {
        MedianRow {
            solver: solver.to_string(),
            n,
            epsilon,
            median,
            std,
        }
    }

    #[test]
    fn empty_file_with_header_gives_empty_table() {
        let table = read_medians("solver,n,epsilon,median,std\n".as_bytes()).unwrap();
        assert!(table.is_empty());
        assert_eq!(table.len(), 0);
        assert!(table.solvers().is_empty());
    }

    #[test]
    fn header_names_are_case_insensitive() {
        let table = read_medians("Solver,N,Epsilon,Median,Std\nsbm,100,0.01,5.5,0.2\n".as_bytes())
            .unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table.rows()[0].n, 100);
    }

    #[test]
    fn wrong_header_is_rejected_with_what_was_found() {
        let err = read_medians("solver,size,eps,median,std\n".as_bytes()).unwrap_err();
        match err {
            TableError::Header { found } => assert_eq!(found, "solver,size,eps,median,std"),
            other => panic!("expected header error, got {other}"),
        }
    }

    #[test]
    fn parse_errors_carry_file_row_numbers() {
        let text = "solver,n,epsilon,median,std\n\
                    sbm,100,0.01,5.5,0.2\n\
                    sbm,two hundred,0.01,9.9,0.3\n";
        let err = read_medians(text.as_bytes()).unwrap_err();
        match err {
            TableError::Row { row, message } => {
                assert_eq!(row, 3);
                assert!(message.contains("two hundred"), "{message}");
            }
            other => panic!("expected row error, got {other}"),
        }
    }

    #[test]
    fn validation_errors_carry_file_row_numbers() {
        let text = "solver,n,epsilon,median,std\n\
                    sbm,100,0.01,5.5,-0.2\n";
        let err = read_medians(text.as_bytes()).unwrap_err();
        match err {
            TableError::Row { row, message } => {
                assert_eq!(row, 2);
                assert!(message.contains("std"), "{message}");
            }
            other => panic!("expected row error, got {other}"),
        }
    }

    #[test]
    fn field_count_mismatch_is_reported_with_row_number() {
        let text = "solver,n,epsilon,median,std\nsbm,100,0.01,5.5\n";
        let err = read_medians(text.as_bytes()).unwrap_err();
        match err {
            TableError::Row { row, message } => {
                assert_eq!(row, 2);
                assert!(message.contains("expected 5 fields"), "{message}");
            }
            other => panic!("expected row error, got {other}"),
        }
    }

    #[test]
    fn infinite_medians_parse_and_round_trip() {
        let text = "solver,n,epsilon,median,std\n\
                    sbm,100,0.01,inf,inf\n\
                    sbm,200,0.01,12.25,0.5\n";
        let table = read_medians(text.as_bytes()).unwrap();
        assert!(table.rows()[0].median.is_infinite());
        assert!(table.rows()[0].std.is_infinite());

        let mut out = Vec::new();
        write_medians(&mut out, &table).unwrap();
        let back = read_medians(out.as_slice()).unwrap();
        assert_eq!(back, table);
    }

    #[test]
    fn export_import_round_trip_is_identity() {
        let rows = vec![
            row("sbm", 100, 0.0125, 17.25, 0.125),
            row("sbm", 200, 0.0125, 123.0625, 1.5),
            row("sbm", 100, 0.001, f64::INFINITY, f64::INFINITY),
            row("reference", 142, 0.01, 0.0004882812500000001, 3.5e-5),
            row("reference", 1322, 0.01, 9.313225746154785e-10, 0.0),
        ];
        let table = MedianTable::new(rows).unwrap();

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("medians.csv");
        export_medians(&path, &table).unwrap();
        let back = import_external_medians(&path).unwrap();
        assert_eq!(back, table);
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        let rows = vec![
            row("sbm", 100, 0.01, 5.0, 0.1),
            row("sbm", 100, 0.01, 6.0, 0.1),
        ];
        let err = MedianTable::new(rows).unwrap_err();
        match err {
            TableError::Row { row, message } => {
                assert_eq!(row, 2);
                assert!(message.contains("duplicate"), "{message}");
            }
            other => panic!("expected duplicate error, got {other}"),
        }

        // Same size under a different epsilon or solver is fine.
        let rows = vec![
            row("sbm", 100, 0.01, 5.0, 0.1),
            row("sbm", 100, 0.02, 6.0, 0.1),
            row("other", 100, 0.01, 7.0, 0.1),
        ];
        assert!(MedianTable::new(rows).is_ok());
    }

    #[test]
    fn invalid_rows_are_rejected_at_construction() {
        assert!(MedianTable::new(vec![row("", 100, 0.01, 5.0, 0.1)]).is_err());
        assert!(MedianTable::new(vec![row("sbm", 0, 0.01, 5.0, 0.1)]).is_err());
        assert!(MedianTable::new(vec![row("sbm", 100, -0.01, 5.0, 0.1)]).is_err());
        assert!(MedianTable::new(vec![row("sbm", 100, f64::NAN, 5.0, 0.1)]).is_err());
        assert!(MedianTable::new(vec![row("sbm", 100, 0.01, 0.0, 0.1)]).is_err());
        assert!(MedianTable::new(vec![row("sbm", 100, 0.01, -5.0, 0.1)]).is_err());
        assert!(MedianTable::new(vec![row("sbm", 100, 0.01, f64::NAN, 0.1)]).is_err());
        assert!(MedianTable::new(vec![row("sbm", 100, 0.01, 5.0, f64::NAN)]).is_err());
    }

    #[test]
    fn series_is_sorted_by_size_and_keyed_exactly() {
        let rows = vec![
            row("sbm", 400, 0.01, 40.0, 1.0),
            row("sbm", 100, 0.01, 10.0, 1.0),
            row("sbm", 200, 0.01, 20.0, 1.0),
            row("sbm", 100, 0.02, 9.0, 1.0),
            row("other", 100, 0.01, 99.0, 1.0),
        ];
        let table = MedianTable::new(rows).unwrap();
        let series = table.series("sbm", 0.01);
        let sizes: Vec<f64> = series.iter().map(|p| p.n).collect();
        assert_eq!(sizes, vec![100.0, 200.0, 400.0]);
        assert_eq!(series[0].median, 10.0);
        assert_eq!(series[0].std, Some(1.0));
        assert!(table.series("sbm", 0.015).is_empty());

        assert_eq!(table.solvers(), vec!["sbm", "other"]);
        assert_eq!(table.epsilons("sbm"), vec![0.01, 0.02]);
    }
}
