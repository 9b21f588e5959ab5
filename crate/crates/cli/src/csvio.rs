//! Dataset file formats.
//!
//! Feature CSV (one row per record):
//! `f00..f14,r,y,b,g,section,fault_type,scenario_id` — raw (un-normalized)
//! quarter-cycle window, the four +-1 targets, the +-1 section, the fault
//! type name and the row id linking into the scenario CSV.
//!
//! Scenario CSV (one row per record):
//! `scenario_id,fault_type,location_pct,fault_resistance_ohm,
//! inception_angle_deg,load_angle_deg,compensation_pct,snr_db,seed`.
//!
//! Floats are printed in shortest round-trip form, so identical data always
//! produces identical bytes.

use std::fmt::Write as _;
use std::path::Path;

use faultsvm::{
    FaultLabel, FaultType, LabeledDataset, LabeledExample, ThreePhaseRecord, FEATURE_DIM,
};

use crate::CliError;

pub const FEATURE_HEADER: &str = "f00,f01,f02,f03,f04,f05,f06,f07,f08,f09,f10,f11,f12,f13,f14,r,y,b,g,section,fault_type,scenario_id";
pub const SCENARIO_HEADER: &str = "scenario_id,fault_type,location_pct,fault_resistance_ohm,inception_angle_deg,load_angle_deg,compensation_pct,snr_db,seed";

fn fmt_snr(snr: f64) -> String {
    if snr == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{snr}")
    }
}

/// Render the feature CSV for a labelled dataset.
pub fn features_to_csv(data: &LabeledDataset) -> String {
    let mut out = String::with_capacity(64 * data.len() + 128);
    out.push_str(FEATURE_HEADER);
    out.push('\n');
    for ex in &data.examples {
        for v in ex.raw {
            let _ = write!(out, "{v},");
        }
        let label = ex.label;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            label.r,
            label.y,
            label.b,
            label.g,
            label.section,
            label.class.name(),
            ex.scenario_id
        );
    }
    out
}

/// Render the scenario CSV for the records a dataset was generated from.
pub fn scenarios_to_csv(records: &[ThreePhaseRecord]) -> String {
    let mut out = String::with_capacity(48 * records.len() + 128);
    out.push_str(SCENARIO_HEADER);
    out.push('\n');
    for (i, record) in records.iter().enumerate() {
        let s = &record.scenario;
        let _ = writeln!(
            out,
            "{i},{},{},{},{},{},{},{},{}",
            s.fault_type.name(),
            s.location_pct,
            s.fault_resistance_ohm,
            s.inception_angle_deg,
            s.load_angle_deg,
            s.compensation_pct,
            fmt_snr(s.snr_db),
            s.seed
        );
    }
    out
}

fn split_header(line: &str) -> Vec<String> {
    line.split(',').map(|s| s.trim().to_string()).collect()
}

/// Parse a feature CSV back into a labelled dataset, validating the label
/// columns against the fault-type column.
pub fn parse_feature_csv(text: &str) -> Result<LabeledDataset, CliError> {
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(CliError::io("feature csv: empty file"));
    };
    let expected = split_header(FEATURE_HEADER);
    if split_header(header) != expected {
        return Err(CliError::io(format!(
            "feature csv: unexpected header {header:?}"
        )));
    }

    let mut examples = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != expected.len() {
            return Err(CliError::io(format!(
                "feature csv line {}: expected {} fields, found {}",
                lineno + 1,
                expected.len(),
                fields.len()
            )));
        }
        let mut raw = [0.0; FEATURE_DIM];
        for (i, slot) in raw.iter_mut().enumerate() {
            *slot = parse_float(fields[i], lineno)?;
        }
        let r = parse_sign(fields[15], lineno)?;
        let y = parse_sign(fields[16], lineno)?;
        let b = parse_sign(fields[17], lineno)?;
        let g = parse_sign(fields[18], lineno)?;
        let section = parse_sign(fields[19], lineno)?;
        let fault_type: FaultType = fields[20]
            .parse()
            .map_err(|e| CliError::io(format!("feature csv line {}: {e}", lineno + 1)))?;
        let scenario_id: u64 = fields[21]
            .parse()
            .map_err(|_| CliError::io(format!("feature csv line {}: bad scenario id", lineno + 1)))?;

        let expected_targets = faultsvm::targets_from_fault_type(fault_type);
        if expected_targets != (r, y, b, g) {
            return Err(CliError::io(format!(
                "feature csv line {}: targets {:?} do not match fault type {}",
                lineno + 1,
                (r, y, b, g),
                fault_type
            )));
        }
        examples.push(LabeledExample {
            raw,
            label: FaultLabel {
                r,
                y,
                b,
                g,
                class: fault_type.label_class(),
                section,
            },
            scenario_id,
        });
    }
    if examples.is_empty() {
        return Err(CliError::io("feature csv: no data rows"));
    }
    Ok(LabeledDataset { examples })
}

/// Parse a single-record file for classification: a feature CSV whose data
/// rows carry at least the `f00..f14` columns (label columns, when present,
/// are ignored). Exactly one data row is required.
pub fn parse_single_record(text: &str) -> Result<[f64; FEATURE_DIM], CliError> {
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(CliError::io("record file: empty file"));
    };
    let header_fields = split_header(header);
    let expected_features: Vec<String> = split_header(FEATURE_HEADER)
        .into_iter()
        .take(FEATURE_DIM)
        .collect();
    if header_fields.len() < FEATURE_DIM
        || header_fields[..FEATURE_DIM] != expected_features[..]
    {
        return Err(CliError::io(format!(
            "record file: header must start with f00..f14, got {header:?}"
        )));
    }

    let mut row: Option<[f64; FEATURE_DIM]> = None;
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if row.is_some() {
            return Err(CliError::io("record file: expected exactly one data row"));
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() < FEATURE_DIM {
            return Err(CliError::io(format!(
                "record file line {}: expected at least {FEATURE_DIM} fields",
                lineno + 1
            )));
        }
        let mut raw = [0.0; FEATURE_DIM];
        for (i, slot) in raw.iter_mut().enumerate() {
            *slot = parse_float(fields[i], lineno)?;
        }
        row = Some(raw);
    }
    row.ok_or_else(|| CliError::io("record file: no data row"))
}

fn parse_float(field: &str, lineno: usize) -> Result<f64, CliError> {
    field
        .parse::<f64>()
        .map_err(|_| CliError::io(format!("line {}: bad float {field:?}", lineno + 1)))
}

fn parse_sign(field: &str, lineno: usize) -> Result<i8, CliError> {
    match field {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(CliError::io(format!(
            "line {}: expected +1 or -1, got {other:?}",
            lineno + 1
        ))),
    }
}

/// Write text to a file, mapping failures to exit code 2.
pub fn write_file(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

/// Read a file to string, mapping failures to exit code 2.
pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))
}
