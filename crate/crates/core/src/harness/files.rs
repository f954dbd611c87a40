//! Front CSV files.
//!
//! Header: `run_id,algorithm,mode,J,solution_id,cr,lr_db,x_1..x_J,y_1..y_J,rho_1..rho_J`.
//! Reals are written with 12 significant digits; `lr_db` is the lowest
//! RTSN in dB.

use std::path::Path;

use crate::error::{Error, Result};
use crate::metrics::FrontPoint;
use crate::scenario::{DeploymentVector, Scenario};

/// `v` with 12 significant digits, fixed notation for moderate exponents.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.11e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, v);
        trim_zeros(&fixed)
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

pub fn front_header(num_nodes: usize) -> Vec<String> {
    let mut h: Vec<String> = ["run_id", "algorithm", "mode", "J", "solution_id", "cr", "lr_db"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for prefix in ["x", "y", "rho"] {
        h.extend((1..=num_nodes).map(|i| format!("{prefix}_{i}")));
    }
    h
}

/// One solution as stored in a front file.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontRow {
    pub run_id: String,
    pub algorithm: String,
    pub mode: String,
    pub solution_id: usize,
    pub coverage_ratio: f64,
    pub lowest_rtsn_db: f64,
    pub dv: DeploymentVector,
}

impl FrontRow {
    pub fn point(&self) -> FrontPoint {
        FrontPoint::new(self.coverage_ratio, self.lowest_rtsn_db)
    }
}

pub fn write_front(path: &Path, num_nodes: usize, rows: &[FrontRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_io(path, e))?;
    w.write_record(front_header(num_nodes)).map_err(|e| csv_io(path, e))?;
    for row in rows {
        let mut rec = vec![
            row.run_id.clone(),
            row.algorithm.clone(),
            row.mode.clone(),
            num_nodes.to_string(),
            row.solution_id.to_string(),
            format_sig12(row.coverage_ratio),
            format_sig12(row.lowest_rtsn_db),
        ];
        rec.extend(row.dv.to_flat().into_iter().map(format_sig12));
        w.write_record(&rec).map_err(|e| csv_io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn csv_io(path: &Path, e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            _ => unreachable!(),
        }
    } else {
        Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        }
    }
}

/// Reads a front file. With a scenario, every row is re-validated against
/// the deployment and objective invariants.
pub fn read_front(path: &Path, scenario: Option<&Scenario>) -> Result<Vec<FrontRow>> {
    let parse_err = |message: String| Error::Parse {
        path: path.to_path_buf(),
        message,
    };
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_io(path, e))?;
    let header: Vec<String> = r
        .headers()
        .map_err(|e| csv_io(path, e))?
        .iter()
        .map(str::to_string)
        .collect();
    if header.len() < 7 || !(header.len() - 7).is_multiple_of(3) {
        return Err(parse_err("header does not match the front layout".into()));
    }
    let j = (header.len() - 7) / 3;
    if header != front_header(j) {
        return Err(parse_err("unexpected column names".into()));
    }
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_io(path, e))?;
        let num = |i: usize| -> Result<f64> {
            rec[i]
                .parse::<f64>()
                .map_err(|_| parse_err(format!("row {}: `{}` is not a number", line + 1, &rec[i])))
        };
        let file_j: usize = rec[3]
            .parse()
            .map_err(|_| parse_err(format!("row {}: bad J", line + 1)))?;
        if file_j != j {
            return Err(parse_err(format!("row {}: J = {file_j}, header implies {j}", line + 1)));
        }
        let flat = (7..7 + 3 * j).map(num).collect::<Result<Vec<f64>>>()?;
        let row = FrontRow {
            run_id: rec[0].to_string(),
            algorithm: rec[1].to_string(),
            mode: rec[2].to_string(),
            solution_id: rec[4]
                .parse()
                .map_err(|_| parse_err(format!("row {}: bad solution_id", line + 1)))?,
            coverage_ratio: num(5)?,
            lowest_rtsn_db: num(6)?,
            dv: DeploymentVector::from_flat(&flat),
        };
        if let Some(s) = scenario {
            validate_row(&row, s).map_err(|e| parse_err(format!("row {}: {e}", line + 1)))?;
        }
        rows.push(row);
    }
    Ok(rows)
}

fn validate_row(row: &FrontRow, scenario: &Scenario) -> Result<()> {
    let scale = scenario.placement.width.max(scenario.placement.height)
        + scenario.placement.origin.x.abs().max(scenario.placement.origin.y.abs());
    row.dv.validate(scenario, 1e-9 * scale.max(1.0))?;
    if !(0.0..=1.0).contains(&row.coverage_ratio) {
        return Err(Error::Domain(format!("coverage ratio {} outside [0, 1]", row.coverage_ratio)));
    }
    let u = scenario.cell_count() as f64;
    let cells = row.coverage_ratio * u;
    if (cells - cells.round()).abs() > 1e-6 {
        return Err(Error::Domain(format!(
            "coverage ratio {} is not a multiple of 1/{u}",
            row.coverage_ratio
        )));
    }
    if !row.lowest_rtsn_db.is_finite() {
        return Err(Error::Domain("lowest RTSN must be finite".into()));
    }
    Ok(())
}
