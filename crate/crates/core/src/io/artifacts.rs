//! Diagnostics and spectral CSV files and the failure record.

use std::fs;
use std::path::Path;

use serde::Serialize;

use super::snapshot::fmt_f64;
use crate::error::{Error, Result};
use crate::solver::{Diagnostics, RunFailure};
use crate::spectral::SpectralTable;

pub const DIAGNOSTICS_HEADER: &str = "time,total_mass,min_rho,min_p,sawtooth";

pub fn diagnostics_csv(series: &[Diagnostics]) -> String {
    let mut out = String::from(DIAGNOSTICS_HEADER);
    out.push('\n');
    for d in series {
        let vals = [d.time, d.total_mass, d.min_density, d.min_pressure, d.sawtooth].map(fmt_f64);
        out.push_str(&vals.join(","));
        out.push('\n');
    }
    out
}

/// `theta,exact,<scheme>...` with one row per sample.
pub fn spectral_csv(table: &SpectralTable) -> String {
    let mut out = String::from("theta,exact");
    for s in &table.schemes {
        out.push(',');
        out.push_str(s.kind.name());
    }
    out.push('\n');
    for row in &table.rows {
        let mut vals = vec![fmt_f64(row.theta), fmt_f64(row.exact)];
        vals.extend(row.values.iter().map(|&v| fmt_f64(v)));
        out.push_str(&vals.join(","));
        out.push('\n');
    }
    out
}

/// JSON description of a halted run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureRecord {
    /// `non_physical` or `non_finite`.
    pub kind: &'static str,
    pub message: String,
    pub scheme: String,
    /// Time of the last completed step.
    pub time: f64,
    pub step: usize,
    pub cell: Option<(isize, isize)>,
    pub rho: Option<f64>,
    pub p: Option<f64>,
}

impl FailureRecord {
    pub fn new(failure: &RunFailure, scheme: &str) -> Self {
        let (kind, cell, rho, p) = match &failure.error {
            Error::NonPhysical { rho, p, cell } => ("non_physical", *cell, Some(*rho), Some(*p)),
            Error::NonFinite { cell } => ("non_finite", Some(*cell), None, None),
            _ => ("other", None, None, None),
        };
        // JSON has no NaN; leave non-finite numbers out
        let finite = |v: Option<f64>| v.filter(|x| x.is_finite());
        FailureRecord {
            kind,
            message: failure.error.to_string(),
            scheme: scheme.to_string(),
            time: failure.time,
            step: failure.step,
            cell,
            rho: finite(rho),
            p: finite(p),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("failure record serialises")
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
