//! CSV and JSON emission of benchmark results.
//!
//! CSV uses the literal `inf` for unbounded times (it parses back via
//! `str::parse::<f64>`); the JSON mirror uses `null` and carries a schema
//! version field.

use std::io::Write;

use serde::Serialize;
use serde_json::json;

use crate::bench::CellEvaluation;
use crate::error::BenchError;
use crate::records::MedianPoint;

/// Version stamp of the emitted JSON document layout.
pub const SCHEMA_VERSION: u32 = 1;

fn extended(value: f64) -> String {
    if value.is_infinite() {
        "inf".to_string()
    } else {
        value.to_string()
    }
}

fn nullable(value: f64) -> Option<f64> {
    value.is_finite().then_some(value)
}

/// One row per (instance, ε, grid cell): every record field plus the
/// cell's parameters.
pub fn write_records_csv<W: Write>(writer: W, cells: &[CellEvaluation]) -> Result<(), BenchError> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record([
        "instance_id",
        "epsilon",
        "n_steps",
        "n_replicas",
        "p_success",
        "t_f_total",
        "t_f_compute",
        "tte_total",
        "tte_compute",
        "n_runs",
    ])?;
    for cell in cells {
        for record in &cell.records {
            out.write_record([
                record.instance_id.as_str(),
                &record.epsilon.to_string(),
                &cell.n_steps.to_string(),
                &cell.n_replicas.to_string(),
                &record.p_success.to_string(),
                &record.t_f_total.to_string(),
                &record.t_f_compute.to_string(),
                &extended(record.tte_total),
                &extended(record.tte_compute),
                &record.n_runs.to_string(),
            ])?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Summary CSV: one row per median point.
pub fn write_median_points_csv<W: Write>(
    writer: W,
    points: &[MedianPoint],
) -> Result<(), BenchError> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record([
        "n",
        "epsilon",
        "median",
        "bootstrap_std",
        "finite_count",
        "set_size",
        "n_steps",
        "n_replicas",
        "timing",
    ])?;
    for point in points {
        out.write_record([
            &point.n.to_string(),
            &point.epsilon.to_string(),
            &extended(point.median),
            &extended(point.bootstrap_std),
            &point.finite_count.to_string(),
            &point.set_size.to_string(),
            &point.n_steps.to_string(),
            &point.n_replicas.to_string(),
            &point.timing.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct RecordRow<'a> {
    instance_id: &'a str,
    epsilon: f64,
    n_steps: u32,
    n_replicas: u32,
    p_success: f64,
    t_f_total: f64,
    t_f_compute: f64,
    tte_total: Option<f64>,
    tte_compute: Option<f64>,
    n_runs: u32,
}

/// JSON mirror of [`write_records_csv`]; infinite times become `null`.
pub fn records_json(cells: &[CellEvaluation]) -> serde_json::Value {
    let rows: Vec<RecordRow<'_>> = cells
        .iter()
        .flat_map(|cell| {
            cell.records.iter().map(|record| RecordRow {
                instance_id: &record.instance_id,
                epsilon: record.epsilon,
                n_steps: cell.n_steps,
                n_replicas: cell.n_replicas,
                p_success: record.p_success,
                t_f_total: record.t_f_total,
                t_f_compute: record.t_f_compute,
                tte_total: nullable(record.tte_total),
                tte_compute: nullable(record.tte_compute),
                n_runs: record.n_runs,
            })
        })
        .collect();
    json!({ "schema_version": SCHEMA_VERSION, "records": rows })
}

#[derive(Serialize)]
struct MedianPointRow<'a> {
    n: usize,
    epsilon: f64,
    median: Option<f64>,
    bootstrap_std: Option<f64>,
    finite_count: usize,
    set_size: usize,
    n_steps: u32,
    n_replicas: u32,
    timing: &'a str,
}

/// JSON mirror of [`write_median_points_csv`].
pub fn median_points_json(points: &[MedianPoint]) -> serde_json::Value {
    let rows: Vec<MedianPointRow<'_>> = points
        .iter()
        .map(|point| MedianPointRow {
            n: point.n,
            epsilon: point.epsilon,
            median: nullable(point.median),
            bootstrap_std: nullable(point.bootstrap_std),
            finite_count: point.finite_count,
            set_size: point.set_size,
            n_steps: point.n_steps,
            n_replicas: point.n_replicas,
            timing: match point.timing {
                crate::records::TimingVariant::Total => "total",
                crate::records::TimingVariant::Compute => "compute",
            },
        })
        .collect();
    json!({ "schema_version": SCHEMA_VERSION, "median_points": rows })
}
