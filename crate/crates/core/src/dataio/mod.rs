//! File formats, trace ingestion with wavelength calibration, plot exports
//! and JSON reports.

use std::fs::File;
use std::io;
use std::path::Path;

use crate::error::{Error, Result};

mod calibration;
mod export;
mod mapfile;
mod report;
mod trace;

pub use calibration::{
    calibrate_to_spectrogram, frequency_thz, synthesize_trace, wavelength_nm, Calibration, C_NM_PER_PS,
    DEFAULT_REFERENCE_NM, SPEED_OF_LIGHT,
};
pub use export::{to_file, write_cell_report, write_section, write_sweep};
pub use mapfile::{
    fmt_f64, load_field, load_map, read_field, read_map, save_field, save_map, save_raster, write_field, write_map,
    write_raster, MapData, FIELD_MAGIC, FORMAT_VERSION, MAP_MAGIC,
};
pub use report::{write_json, write_sweep_json, SweepRecord};
pub use trace::{
    load_trace, parse_trace, save_trace, write_trace, ExperimentalTrace, NegativePolicy, TraceFormat, TraceMeta,
    LONG_HEADER, MATRIX_CORNER,
};

/// `File::open` with the path named in the error.
pub(crate) fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| with_path(e, path))
}

pub(crate) fn create(path: &Path) -> Result<File> {
    File::create(path).map_err(|e| with_path(e, path))
}

fn with_path(e: io::Error, path: &Path) -> Error {
    Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}
