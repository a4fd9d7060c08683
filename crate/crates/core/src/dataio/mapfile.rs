//! Native text formats for maps and fields, plus a grayscale raster preview.
//!
//! Map files:
//!
//! ```text
//! CHRONO-MAP v1
//! kind=spectrogram rows=tau[ps] cols=omega[rad/ps] scale=1
//! <row axis, space separated>
//! <column axis>
//! <one line of values per row>
//! ```
//!
//! Numbers are written in Rust's shortest round-trip form, so loading a
//! saved map reproduces every value bit for bit.

use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{ComplexField, SampleGrid};
use crate::transforms::{PhaseSpaceMap, Spectrogram, WignerMap};

pub const MAP_MAGIC: &str = "CHRONO-MAP";
pub const FIELD_MAGIC: &str = "CHRONO-FIELD";
pub const FORMAT_VERSION: &str = "v1";

const SPECTROGRAM_AXES: &str = "rows=tau[ps] cols=omega[rad/ps]";
const WIGNER_AXES: &str = "rows=q[ps] cols=p[rad/ps]";

#[derive(Debug, Clone, PartialEq)]
pub enum MapData {
    Spectrogram(Spectrogram),
    Wigner(WignerMap),
}

impl MapData {
    pub fn as_map(&self) -> &dyn PhaseSpaceMap {
        match self {
            MapData::Spectrogram(m) => m,
            MapData::Wigner(m) => m,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MapData::Spectrogram(_) => "spectrogram",
            MapData::Wigner(_) => "wigner",
        }
    }
}

impl From<Spectrogram> for MapData {
    fn from(m: Spectrogram) -> Self {
        MapData::Spectrogram(m)
    }
}

impl From<WignerMap> for MapData {
    fn from(m: WignerMap) -> Self {
        MapData::Wigner(m)
    }
}

/// Shortest decimal that parses back to the same bits; exponent form only
/// for very large or small magnitudes.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn join(values: &[f64]) -> String {
    values.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(" ")
}

pub fn write_map<W: Write>(map: &MapData, out: &mut W) -> Result<()> {
    let (axes, scale) = match map {
        MapData::Spectrogram(m) => (SPECTROGRAM_AXES, m.scale()),
        MapData::Wigner(m) => (WIGNER_AXES, m.scale()),
    };
    let m = map.as_map();
    writeln!(out, "{MAP_MAGIC} {FORMAT_VERSION}")?;
    writeln!(out, "kind={} {axes} scale={}", map.kind(), fmt_f64(scale))?;
    writeln!(out, "{}", join(m.time_axis()))?;
    writeln!(out, "{}", join(m.freq_axis()))?;
    for i in 0..m.time_axis().len() {
        writeln!(out, "{}", join(m.row(i)))?;
    }
    Ok(())
}

pub fn save_map(map: &MapData, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(super::create(path)?);
    write_map(map, &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn load_map(path: &Path) -> Result<MapData> {
    read_map(BufReader::new(super::open(path)?))
}

fn check_magic(line: Option<&str>, magic: &str) -> Result<()> {
    let line = line.ok_or_else(|| Error::Format("file is empty".into()))?;
    let mut parts = line.split_whitespace();
    if parts.next() != Some(magic) {
        return Err(Error::Format(format!(
            "missing `{magic}` header; found `{}`",
            line.chars().take(40).collect::<String>()
        )));
    }
    match parts.next() {
        Some(FORMAT_VERSION) => Ok(()),
        Some(v) => Err(Error::Format(format!(
            "unsupported {magic} version `{v}`, this build reads {FORMAT_VERSION}"
        ))),
        None => Err(Error::Format(format!("{magic} header lacks a version"))),
    }
}

fn parse_numbers(line: &str, lineno: u64) -> Result<Vec<f64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<f64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("`{t}` is not a number"),
            })
        })
        .collect()
}

pub fn read_map<R: Read>(reader: R) -> Result<MapData> {
    let lines: Vec<String> = BufReader::new(reader).lines().collect::<std::io::Result<_>>()?;
    check_magic(lines.first().map(String::as_str), MAP_MAGIC)?;
    let descriptor = lines
        .get(1)
        .ok_or_else(|| Error::Format("truncated map: missing descriptor line".into()))?;
    let mut kind = None;
    let mut scale = None;
    for item in descriptor.split_whitespace() {
        match item.split_once('=') {
            Some(("kind", k)) => kind = Some(k.to_string()),
            Some(("scale", s)) => {
                scale = Some(s.parse::<f64>().map_err(|_| Error::Parse {
                    line: 2,
                    message: format!("scale `{s}` is not a number"),
                })?)
            }
            Some(("rows" | "cols", _)) => {}
            _ => return Err(Error::Format(format!("unexpected descriptor entry `{item}`"))),
        }
    }
    let scale = scale.ok_or_else(|| Error::Format("descriptor lacks scale=".into()))?;
    let rows_axis = parse_numbers(
        lines
            .get(2)
            .ok_or_else(|| Error::Format("truncated map: missing row axis".into()))?,
        3,
    )?;
    let cols_axis = parse_numbers(
        lines
            .get(3)
            .ok_or_else(|| Error::Format("truncated map: missing column axis".into()))?,
        4,
    )?;
    let body = &lines[4..];
    let body: Vec<&String> = body.iter().filter(|l| !l.trim().is_empty()).collect();
    if body.len() != rows_axis.len() {
        return Err(Error::Format(format!(
            "truncated map: expected {} value rows, found {}",
            rows_axis.len(),
            body.len()
        )));
    }
    let mut values = Vec::with_capacity(rows_axis.len() * cols_axis.len());
    for (k, line) in body.iter().enumerate() {
        let row = parse_numbers(line, 5 + k as u64)?;
        if row.len() != cols_axis.len() {
            return Err(Error::Format(format!(
                "map row {} holds {} values, expected {}",
                k,
                row.len(),
                cols_axis.len()
            )));
        }
        values.extend(row);
    }
    match kind.as_deref() {
        Some("spectrogram") => Ok(Spectrogram::new(rows_axis, cols_axis, values, scale)?.into()),
        Some("wigner") => Ok(WignerMap::new(rows_axis, cols_axis, values, scale)?.into()),
        Some(other) => Err(Error::Format(format!("unknown map kind `{other}`"))),
        None => Err(Error::Format("descriptor lacks kind=".into())),
    }
}

/// 8-bit binary PGM: one pixel per map value, time down the rows, frequency
/// across. Signed maps put zero at mid-gray. Returns `(width, height)`.
pub fn write_raster<W: Write>(map: &dyn PhaseSpaceMap, out: &mut W) -> Result<(usize, usize)> {
    let (rows, cols) = map.dims();
    let peak = map.max_abs();
    writeln!(out, "P5\n{cols} {rows}\n255")?;
    let pixel = |v: f64| -> u8 {
        if peak == 0.0 {
            return 0;
        }
        let x = if map.is_signed() {
            0.5 * (v / peak + 1.0)
        } else {
            v / peak
        };
        (x.clamp(0.0, 1.0) * 255.0).round() as u8
    };
    let bytes: Vec<u8> = map.values().iter().map(|&v| pixel(v)).collect();
    out.write_all(&bytes)?;
    Ok((cols, rows))
}

pub fn save_raster(map: &dyn PhaseSpaceMap, path: &Path) -> Result<(usize, usize)> {
    let mut out = BufWriter::new(super::create(path)?);
    let dims = write_raster(map, &mut out)?;
    out.flush()?;
    Ok(dims)
}

/// Field files: magic line, `n=… dt=… t_start=…`, then `re im` per sample.
pub fn write_field<W: Write>(field: &ComplexField, out: &mut W) -> Result<()> {
    let g = field.grid();
    writeln!(out, "{FIELD_MAGIC} {FORMAT_VERSION}")?;
    writeln!(
        out,
        "n={} dt={} t_start={}",
        g.len(),
        fmt_f64(g.dt()),
        fmt_f64(g.t_start())
    )?;
    for s in field.samples() {
        writeln!(out, "{} {}", fmt_f64(s.re), fmt_f64(s.im))?;
    }
    Ok(())
}

pub fn save_field(field: &ComplexField, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(super::create(path)?);
    write_field(field, &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn load_field(path: &Path) -> Result<ComplexField> {
    read_field(BufReader::new(super::open(path)?))
}

pub fn read_field<R: Read>(reader: R) -> Result<ComplexField> {
    let lines: Vec<String> = BufReader::new(reader).lines().collect::<std::io::Result<_>>()?;
    check_magic(lines.first().map(String::as_str), FIELD_MAGIC)?;
    let grid_line = lines
        .get(1)
        .ok_or_else(|| Error::Format("truncated field: missing grid line".into()))?;
    let (mut n, mut dt, mut t_start) = (None, None, None);
    for item in grid_line.split_whitespace() {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Format(format!("malformed grid entry `{item}`")))?;
        let bad = || Error::Parse {
            line: 2,
            message: format!("`{v}` is not a valid {k}"),
        };
        match k {
            "n" => n = Some(v.parse::<usize>().map_err(|_| bad())?),
            "dt" => dt = Some(v.parse::<f64>().map_err(|_| bad())?),
            "t_start" => t_start = Some(v.parse::<f64>().map_err(|_| bad())?),
            _ => return Err(Error::Format(format!("unknown grid entry `{k}`"))),
        }
    }
    let (Some(n), Some(dt), Some(t_start)) = (n, dt, t_start) else {
        return Err(Error::Format("grid line needs n=, dt= and t_start=".into()));
    };
    let grid = SampleGrid::new(n, dt, t_start)?;
    let body: Vec<&String> = lines[2..].iter().filter(|l| !l.trim().is_empty()).collect();
    if body.len() != n {
        return Err(Error::Format(format!(
            "truncated field: expected {n} samples, found {}",
            body.len()
        )));
    }
    let samples = body
        .iter()
        .enumerate()
        .map(|(k, l)| {
            let v = parse_numbers(l, 3 + k as u64)?;
            match v.as_slice() {
                [re, im] => Ok(Complex64::new(*re, *im)),
                _ => Err(Error::Parse {
                    line: 3 + k as u64,
                    message: "expected `re im`".into(),
                }),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    ComplexField::new(grid, samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_map() -> Spectrogram {
        let tau = vec![-0.1, 0.0, 0.1];
        let omega = vec![-1.5, -0.5, 0.5, 1.5];
        let values = vec![
            0.0,
            1e-300,
            0.1 + 0.2,
            1.0 / 3.0,
            5e20,
            7.0,
            2.5e-5,
            0.0,
            1.0,
            2.0,
            3.0,
            4.0,
        ];
        Spectrogram::new(tau, omega, values, 0.75).unwrap()
    }

    #[test]
    fn map_round_trip_is_bitwise() {
        let map: MapData = sample_map().into();
        let mut buf = Vec::new();
        write_map(&map, &mut buf).unwrap();
        assert!(buf.starts_with(b"CHRONO-MAP v1\nkind=spectrogram"));
        assert_eq!(read_map(buf.as_slice()).unwrap(), map);
    }

    #[test]
    fn wrong_magic_and_version_are_format_errors() {
        assert!(matches!(read_map("P5\n".as_bytes()), Err(Error::Format(_))));
        let mut buf = Vec::new();
        write_map(&sample_map().into(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap().replacen("v1", "v2", 1);
        let err = read_map(text.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("version"));
    }

    #[test]
    fn truncation_is_detected() {
        let mut buf = Vec::new();
        write_map(&sample_map().into(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let cut: String = text.lines().take(6).collect::<Vec<_>>().join("\n");
        let err = read_map(cut.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("truncated"));
    }

    #[test]
    fn raster_matches_dimensions() {
        let mut buf = Vec::new();
        let dims = write_raster(&sample_map(), &mut buf).unwrap();
        assert_eq!(dims, (4, 3));
        assert!(buf.starts_with(b"P5\n4 3\n255\n"));
        assert_eq!(buf.len(), "P5\n4 3\n255\n".len() + 12);
    }

    #[test]
    fn field_round_trip() {
        let g = SampleGrid::new(16, 0.1, -0.8).unwrap();
        let samples = (0..16)
            .map(|k| Complex64::new(k as f64 / 7.0, -(k as f64).sqrt()))
            .collect();
        let f = ComplexField::new(g, samples).unwrap();
        let mut buf = Vec::new();
        write_field(&f, &mut buf).unwrap();
        assert_eq!(read_field(buf.as_slice()).unwrap(), f);
    }
}
