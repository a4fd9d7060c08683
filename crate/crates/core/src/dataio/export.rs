//! Columnar plot data with commented headers, one format per analysis object.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::mapfile::fmt_f64;
use crate::analysis::{CellAreaReport, CrossSection, Fixed, SweepPoint, Verdict, ZeroSet, UNCERTAINTY_LIMIT};
use crate::error::Result;

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::SubFourier => "sub-fourier",
        Verdict::AboveLimit => "above-limit",
        Verdict::NotApplicable => "not-applicable",
    }
}

/// Two columns, position and value; zeros, if given, are listed in the header.
pub fn write_section<W: Write>(section: &CrossSection, zeros: Option<&ZeroSet>, out: &mut W) -> Result<()> {
    let (axis, held) = match section.fixed() {
        Fixed::Frequency(w) => ("time [ps]", format!("frequency {} rad/ps", fmt_f64(w))),
        Fixed::Time(t) => ("frequency [rad/ps]", format!("time {} ps", fmt_f64(t))),
    };
    writeln!(out, "# cross-section along {axis} at {held}")?;
    if let Some(z) = zeros {
        let list: Vec<String> = z.positions.iter().map(|&p| fmt_f64(p)).collect();
        writeln!(out, "# zeros: {}", list.join(" "))?;
    }
    let kind = if section.is_signed() { "value" } else { "intensity" };
    writeln!(out, "# columns: position {kind}")?;
    for (x, v) in section.axis().iter().zip(section.values()) {
        writeln!(out, "{} {}", fmt_f64(*x), fmt_f64(*v))?;
    }
    Ok(())
}

/// Spacing blocks, an area block and a summary line.
pub fn write_cell_report<W: Write>(report: &CellAreaReport, out: &mut W) -> Result<()> {
    let w = &report.window;
    writeln!(out, "# cell-area report")?;
    writeln!(
        out,
        "# window: time {} ± {} ps, frequency {} ± {} rad/ps",
        fmt_f64(w.time_center),
        fmt_f64(w.time_halfwidth),
        fmt_f64(w.freq_center),
        fmt_f64(w.freq_halfwidth)
    )?;
    let block = |out: &mut W, name: &str, values: &[f64]| -> Result<()> {
        writeln!(out, "# block: {name}")?;
        for v in values {
            writeln!(out, "{}", fmt_f64(*v))?;
        }
        Ok(())
    };
    block(out, "tau_spacings [ps]", &report.tau_spacings)?;
    block(out, "omega_spacings [rad/ps]", &report.omega_spacings)?;
    block(out, "cell_areas [dimensionless]", &report.cell_areas)?;
    writeln!(out, "# summary: mean_area verdict limit")?;
    writeln!(
        out,
        "{} {} {}",
        report.mean_area.map_or("nan".to_string(), fmt_f64),
        verdict_label(report.verdict),
        fmt_f64(UNCERTAINTY_LIMIT)
    )?;
    Ok(())
}

/// One row per separation; failed points carry `nan` areas and the error kind.
pub fn write_sweep<W: Write>(points: &[SweepPoint], out: &mut W) -> Result<()> {
    writeln!(out, "# separation sweep of central cell areas")?;
    writeln!(
        out,
        "# columns: t0[ps] expected_area mean_area limit verdict pulse_dispersion status"
    )?;
    for p in points {
        let (mean, verdict, status) = match &p.outcome {
            Ok(r) => (
                r.mean_area.map_or("nan".to_string(), fmt_f64),
                verdict_label(r.verdict),
                "ok",
            ),
            Err(e) => ("nan".to_string(), "none", e.kind()),
        };
        writeln!(
            out,
            "{} {} {} {} {} {} {}",
            fmt_f64(p.t0),
            fmt_f64(p.expected_area),
            mean,
            fmt_f64(UNCERTAINTY_LIMIT),
            verdict,
            fmt_f64(p.pulse_dispersion),
            status
        )?;
    }
    Ok(())
}

/// Writes through `f` into a freshly created file.
pub fn to_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    let mut out = BufWriter::new(super::create(path)?);
    f(&mut out)?;
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Window;
    use crate::error::Error;

    #[test]
    fn section_has_one_row_per_sample() {
        let s = CrossSection::new(vec![0.0, 0.5, 1.0], vec![1.0, 0.0, 1.0], Fixed::Frequency(0.0), false).unwrap();
        let mut buf = Vec::new();
        write_section(&s, None, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.split_whitespace().count() == 2));
    }

    #[test]
    fn sweep_rows_carry_limit_and_status() {
        let ok = SweepPoint {
            t0: 2.5,
            expected_area: 0.38,
            pulse_dispersion: 0.5,
            outcome: Ok(CellAreaReport {
                window: Window::central(2.5, 10.0),
                tau_zeros: vec![],
                omega_zeros: vec![],
                tau_spacings: vec![0.3],
                omega_spacings: vec![1.2],
                cell_areas: vec![0.36],
                mean_area: Some(0.36),
                verdict: Verdict::SubFourier,
            }),
        };
        let bad = SweepPoint {
            t0: 0.1,
            expected_area: 9.5,
            pulse_dispersion: 0.5,
            outcome: Err(Error::InsufficientStructure("none".into())),
        };
        let mut buf = Vec::new();
        write_sweep(&[ok, bad], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(
            rows,
            vec![
                "2.5 0.38 0.36 0.5 sub-fourier 0.5 ok",
                "0.1 9.5 nan 0.5 none 0.5 insufficient-structure",
            ]
        );
    }
}
