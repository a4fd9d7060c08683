//! Measured FROG traces in CSV form.
//!
//! Two layouts are accepted; lines starting with `#` are comments and are
//! kept as acquisition notes.
//!
//! Long format, one sample per line, delay-major with the same wavelength
//! list repeated for every delay:
//!
//! ```text
//! delay_ps,wavelength_nm,intensity
//! -1.0,780.0,0.01
//! -1.0,780.5,0.02
//! ```
//!
//! Matrix format, wavelengths across the first row and one delay per line:
//!
//! ```text
//! delay_ps\wavelength_nm,780.0,780.5
//! -1.0,0.01,0.02
//! ```

use std::io::{BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const LONG_HEADER: [&str; 3] = ["delay_ps", "wavelength_nm", "intensity"];
pub const MATRIX_CORNER: &str = "delay_ps\\wavelength_nm";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceFormat {
    Long,
    Matrix,
    /// Decide from the header row.
    Auto,
}

/// What to do with negative intensities (baseline noise).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NegativePolicy {
    /// Replace with zero and count.
    Clamp,
    Reject,
}

/// (line, delay, [(line, wavelength)]) for one delay in long format.
type DelayBlock = (u64, f64, Vec<(u64, f64)>);

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TraceMeta {
    pub source: String,
    pub notes: Vec<String>,
    /// Negative entries replaced by zero while loading.
    pub clamped: usize,
}

/// Spectrally resolved trace on a delay × wavelength grid, row-major over delay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentalTrace {
    delays: Vec<f64>,
    wavelengths: Vec<f64>,
    intensities: Vec<f64>,
    pub meta: TraceMeta,
}

impl ExperimentalTrace {
    pub fn new(delays: Vec<f64>, wavelengths: Vec<f64>, intensities: Vec<f64>, meta: TraceMeta) -> Result<Self> {
        strictly_monotone("delay", &delays)?;
        strictly_monotone("wavelength", &wavelengths)?;
        if intensities.len() != delays.len() * wavelengths.len() {
            return Err(Error::Data(format!(
                "trace holds {} intensities for {} delays × {} wavelengths",
                intensities.len(),
                delays.len(),
                wavelengths.len()
            )));
        }
        if let Some(k) = intensities.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::Data(format!(
                "intensity {k} is {} but must be finite and non-negative",
                intensities[k]
            )));
        }
        Ok(ExperimentalTrace {
            delays,
            wavelengths,
            intensities,
            meta,
        })
    }

    pub fn delays(&self) -> &[f64] {
        &self.delays
    }

    pub fn wavelengths(&self) -> &[f64] {
        &self.wavelengths
    }

    pub fn intensities(&self) -> &[f64] {
        &self.intensities
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.intensities[i * self.wavelengths.len() + j]
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.delays.len(), self.wavelengths.len())
    }
}

/// Index of the first entry that breaks strict monotonicity.
fn monotone_break(axis: &[f64]) -> Option<usize> {
    if axis.len() < 2 {
        return None;
    }
    let rising = axis[1] > axis[0];
    (1..axis.len()).find(|&k| {
        let (a, b) = (axis[k - 1], axis[k]);
        !(if rising { b > a } else { b < a })
    })
}

fn strictly_monotone(name: &str, axis: &[f64]) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::Data(format!("{name} axis is empty")));
    }
    if let Some(k) = axis.iter().position(|v| !v.is_finite()) {
        return Err(Error::Data(format!("{name} entry {k} is not finite")));
    }
    match monotone_break(axis) {
        Some(k) => Err(Error::Data(format!(
            "{name} axis is not strictly monotone at entry {k} ({} after {})",
            axis[k],
            axis[k - 1]
        ))),
        None => Ok(()),
    }
}

pub fn load_trace(path: &Path, format: TraceFormat, policy: NegativePolicy) -> Result<ExperimentalTrace> {
    let file = super::open(path)?;
    let mut trace = parse_trace(BufReader::new(file), format, policy)?;
    trace.meta.source = path.display().to_string();
    Ok(trace)
}

pub fn parse_trace<R: Read>(reader: R, format: TraceFormat, policy: NegativePolicy) -> Result<ExperimentalTrace> {
    let mut text = String::new();
    BufReader::new(reader).read_to_string(&mut text)?;
    let notes: Vec<String> = text
        .lines()
        .filter_map(|l| l.trim_start().strip_prefix('#'))
        .map(|l| l.trim().to_string())
        .collect();
    let mut rows = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for rec in rows.records() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        let line = rec.position().map_or(0, |p| p.line());
        records.push((line, rec.iter().map(str::to_string).collect::<Vec<_>>()));
    }
    let Some((header_line, header)) = records.first() else {
        return Err(Error::Parse {
            line: 1,
            message: "file holds no header row".into(),
        });
    };
    let is_long = header.len() == 3 && header.iter().zip(LONG_HEADER).all(|(a, b)| a == b);
    let is_matrix = header.first().is_some_and(|c| c == MATRIX_CORNER);
    let format = match format {
        TraceFormat::Auto if is_long => TraceFormat::Long,
        TraceFormat::Auto if is_matrix => TraceFormat::Matrix,
        TraceFormat::Auto => {
            return Err(Error::Parse {
                line: *header_line,
                message: format!(
                    "unrecognized header; expected `{}` or a first cell `{MATRIX_CORNER}`",
                    LONG_HEADER.join(",")
                ),
            })
        }
        f => f,
    };
    let mut clamped = 0;
    let mut value = |line: u64, field: &str, what: &str, intensity: bool| -> Result<f64> {
        let v: f64 = field.parse().map_err(|_| Error::Parse {
            line,
            message: format!("{what} `{field}` is not a number"),
        })?;
        if !v.is_finite() {
            return Err(Error::Parse {
                line,
                message: format!("{what} is {v}"),
            });
        }
        if intensity && v < 0.0 {
            return match policy {
                NegativePolicy::Clamp => {
                    clamped += 1;
                    Ok(0.0)
                }
                NegativePolicy::Reject => Err(Error::Parse {
                    line,
                    message: format!("negative intensity {v}"),
                }),
            };
        }
        Ok(v)
    };
    let body = &records[1..];
    let (delays, wavelengths, intensities) = match format {
        TraceFormat::Long => {
            if !is_long {
                return Err(Error::Parse {
                    line: *header_line,
                    message: format!("long format expects the header `{}`", LONG_HEADER.join(",")),
                });
            }
            let mut blocks: Vec<DelayBlock> = Vec::new();
            let mut intensities = Vec::new();
            for (line, rec) in body {
                if rec.len() != 3 {
                    return Err(Error::Parse {
                        line: *line,
                        message: format!("expected 3 fields, found {}", rec.len()),
                    });
                }
                let tau = value(*line, &rec[0], "delay", false)?;
                let lambda = value(*line, &rec[1], "wavelength", false)?;
                intensities.push(value(*line, &rec[2], "intensity", true)?);
                match blocks.last_mut() {
                    Some(b) if b.1 == tau => b.2.push((*line, lambda)),
                    _ => blocks.push((*line, tau, vec![(*line, lambda)])),
                }
            }
            let delays: Vec<f64> = blocks.iter().map(|b| b.1).collect();
            if let Some(k) = monotone_break(&delays) {
                return Err(Error::Parse {
                    line: blocks[k].0,
                    message: format!("delay {} ps breaks the monotone delay order", delays[k]),
                });
            }
            let wavelengths: Vec<f64> = blocks.first().map_or(Vec::new(), |b| b.2.iter().map(|w| w.1).collect());
            if let Some(k) = monotone_break(&wavelengths) {
                return Err(Error::Parse {
                    line: blocks[0].2[k].0,
                    message: format!("wavelength {} nm breaks the monotone wavelength order", wavelengths[k]),
                });
            }
            for (line, tau, block) in blocks.iter().skip(1) {
                if block.len() != wavelengths.len() {
                    return Err(Error::Parse {
                        line: *line,
                        message: format!(
                            "delay {tau} ps block has {} wavelengths, expected {}",
                            block.len(),
                            wavelengths.len()
                        ),
                    });
                }
                if let Some((l, w)) = block.iter().zip(&wavelengths).find(|(a, b)| a.1 != **b).map(|p| p.0) {
                    return Err(Error::Parse {
                        line: *l,
                        message: format!("wavelength {w} nm differs from the first delay block"),
                    });
                }
            }
            (delays, wavelengths, intensities)
        }
        TraceFormat::Matrix | TraceFormat::Auto => {
            let wavelengths = header[1..]
                .iter()
                .map(|f| value(*header_line, f, "wavelength", false))
                .collect::<Result<Vec<_>>>()?;
            strictly_monotone_at(*header_line, "wavelength", &wavelengths)?;
            let mut delays = Vec::new();
            let mut intensities = Vec::new();
            for (line, rec) in body {
                if rec.len() != wavelengths.len() + 1 {
                    return Err(Error::Parse {
                        line: *line,
                        message: format!("expected {} fields, found {}", wavelengths.len() + 1, rec.len()),
                    });
                }
                delays.push(value(*line, &rec[0], "delay", false)?);
                strictly_monotone_at(*line, "delay", &delays)?;
                for f in &rec[1..] {
                    intensities.push(value(*line, f, "intensity", true)?);
                }
            }
            (delays, wavelengths, intensities)
        }
    };
    ExperimentalTrace::new(
        delays,
        wavelengths,
        intensities,
        TraceMeta {
            source: String::new(),
            notes,
            clamped,
        },
    )
}

fn strictly_monotone_at(line: u64, name: &str, axis: &[f64]) -> Result<()> {
    strictly_monotone(name, axis).map_err(|e| Error::Parse {
        line,
        message: match e {
            Error::Data(m) => m,
            other => other.to_string(),
        },
    })
}

pub fn save_trace(trace: &ExperimentalTrace, path: &Path, format: TraceFormat) -> Result<()> {
    let mut out = std::io::BufWriter::new(super::create(path)?);
    write_trace(trace, &mut out, format)?;
    out.flush()?;
    Ok(())
}

pub fn write_trace<W: Write>(trace: &ExperimentalTrace, out: &mut W, format: TraceFormat) -> Result<()> {
    if !trace.meta.source.is_empty() {
        writeln!(out, "# source: {}", trace.meta.source)?;
    }
    for note in &trace.meta.notes {
        writeln!(out, "# {note}")?;
    }
    match format {
        TraceFormat::Long | TraceFormat::Auto => {
            writeln!(out, "{}", LONG_HEADER.join(","))?;
            for (i, tau) in trace.delays.iter().enumerate() {
                for (j, lambda) in trace.wavelengths.iter().enumerate() {
                    writeln!(out, "{tau},{lambda},{}", trace.get(i, j))?;
                }
            }
        }
        TraceFormat::Matrix => {
            write!(out, "{MATRIX_CORNER}")?;
            for lambda in &trace.wavelengths {
                write!(out, ",{lambda}")?;
            }
            writeln!(out)?;
            for (i, tau) in trace.delays.iter().enumerate() {
                write!(out, "{tau}")?;
                for j in 0..trace.wavelengths.len() {
                    write!(out, ",{}", trace.get(i, j))?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
