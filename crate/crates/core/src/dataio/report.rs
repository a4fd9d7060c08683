//! JSON reports for cell-area measurements and sweeps.

use std::io::Write;

use serde::Serialize;

use crate::analysis::{CellAreaReport, SweepPoint};
use crate::error::Result;

#[derive(Debug, Serialize)]
pub struct SweepRecord<'a> {
    pub t0: f64,
    pub expected_area: f64,
    pub pulse_dispersion: f64,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<&'a CellAreaReport>,
}

impl<'a> From<&'a SweepPoint> for SweepRecord<'a> {
    fn from(p: &'a SweepPoint) -> Self {
        let (status, message, report) = match &p.outcome {
            Ok(r) => ("ok", None, Some(r)),
            Err(e) => (e.kind(), Some(e.to_string()), None),
        };
        SweepRecord {
            t0: p.t0,
            expected_area: p.expected_area,
            pulse_dispersion: p.pulse_dispersion,
            status,
            message,
            report,
        }
    }
}

/// Pretty-printed JSON followed by a newline.
pub fn write_json<W: Write, T: Serialize + ?Sized>(value: &T, out: &mut W) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_sweep_json<W: Write>(points: &[SweepPoint], out: &mut W) -> Result<()> {
    let records: Vec<SweepRecord> = points.iter().map(SweepRecord::from).collect();
    write_json(&records, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{Verdict, Window};

    #[test]
    fn report_serializes_verdict_in_kebab_case() {
        let r = CellAreaReport {
            window: Window::central(2.0, 10.0),
            tau_zeros: vec![-0.15, 0.15],
            omega_zeros: vec![-0.8, 0.8],
            tau_spacings: vec![0.3],
            omega_spacings: vec![1.6],
            cell_areas: vec![0.48],
            mean_area: Some(0.48),
            verdict: Verdict::SubFourier,
        };
        let mut buf = Vec::new();
        write_json(&r, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["verdict"], "sub-fourier");
        assert_eq!(v["mean_area"], 0.48);
    }
}
