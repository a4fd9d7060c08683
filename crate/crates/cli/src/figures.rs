//! Plot-data bundles for the standard figure presets.
//!
//! Every preset uses the default pulse width and ω0 = 3.3π rad/ps. Full maps
//! are computed on a 1024-point grid to keep files small; zooms, cuts and
//! the sweep use the 4096-point grid on which cell areas converge.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use chronomap::analysis::{
    cell_areas, cross_section, find_zeros, ideal_cell_area, sweep_separation, window_trace, CrossSection, Fixed,
    SweepOptions, Window, DEFAULT_NOISE_FLOOR_SIMULATED,
};
use chronomap::dataio::{
    save_raster, to_file, write_cell_report, write_field, write_map, write_section, write_sweep, write_sweep_json,
    MapData,
};
use chronomap::field::{compass_state, CompassSpec, SampleGrid, DEFAULT_OMEGA0};
use chronomap::transforms::{overlap_map, shg_frog, symmetric_delays, wigner_window};
use chronomap::Complex64;
use chronomap::{Error, Result};

use crate::args::Figure;
use crate::commands::with_path;

pub const OUT_DIR_ENV: &str = "CHRONOMAP_OUT_DIR";
const DEFAULT_OUT_DIR: &str = "figures";

const MAP_N: usize = 1024;
const FINE_N: usize = 4096;
const DT: f64 = 0.02;
/// Widths kept beyond the outer pulses in full maps.
const EXTENT_WIDTHS: f64 = 5.0;

pub const MAP_T0: f64 = 2.0;
pub const ZOOM_T0: [f64; 3] = [1.25, 1.75, 2.5];
pub const SECTION_T0: f64 = 2.5;
pub const SWEEP_T0: [f64; 8] = [0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5];

pub fn out_dir(flag: Option<&Path>) -> PathBuf {
    match flag {
        Some(p) => p.to_path_buf(),
        None => std::env::var_os(OUT_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR)),
    }
}

fn subdir(figure: Figure) -> &'static str {
    match figure {
        Figure::Maps => "fig3",
        Figure::Zooms => "fig4",
        Figure::Section => "fig5a",
        Figure::Sweep => "fig5b",
    }
}

fn t0_values(figure: Figure) -> Vec<f64> {
    match figure {
        Figure::Maps => vec![MAP_T0],
        Figure::Zooms => ZOOM_T0.to_vec(),
        Figure::Section => vec![SECTION_T0],
        Figure::Sweep => SWEEP_T0.to_vec(),
    }
}

fn grid_for(figure: Figure) -> Result<SampleGrid> {
    let n = if figure == Figure::Maps { MAP_N } else { FINE_N };
    SampleGrid::centered(n, DT)
}

/// Writes the bundle for `figure` under `root/<figure>/` and returns the
/// paths written, in a fixed order.
pub fn run(figure: Figure, root: &Path, dry_run: bool) -> Result<Vec<PathBuf>> {
    let grid = grid_for(figure)?;
    for t0 in t0_values(figure) {
        CompassSpec::with_t0(t0).check_span(&grid)?;
    }
    if root.exists() && !root.is_dir() {
        return Err(Error::Config(format!(
            "output path {} is not a directory",
            root.display()
        )));
    }
    let dir = root.join(subdir(figure));
    if dry_run {
        return Ok(Vec::new());
    }
    fs::create_dir_all(&dir).map_err(|e| with_path(e, &dir))?;
    let mut bundle = Bundle {
        dir,
        written: Vec::new(),
    };
    match figure {
        Figure::Maps => maps(&grid, &mut bundle)?,
        Figure::Zooms => zooms(&grid, &mut bundle)?,
        Figure::Section => section(&grid, &mut bundle)?,
        Figure::Sweep => sweep(&grid, &mut bundle)?,
    }
    Ok(bundle.written)
}

struct Bundle {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Bundle {
    fn text(&mut self, name: &str, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
        let path = self.dir.join(name);
        to_file(&path, |w| f(w))?;
        self.written.push(path);
        Ok(())
    }

    fn map(&mut self, stem: &str, map: MapData) -> Result<()> {
        self.text(&format!("{stem}.map"), |mut w| write_map(&map, &mut w))?;
        let raster = self.dir.join(format!("{stem}.pgm"));
        save_raster(map.as_map(), &raster)?;
        self.written.push(raster);
        Ok(())
    }
}

fn label(t0: f64) -> String {
    format!("t0_{t0}")
}

/// Full FROG and Wigner maps at t0 = 2 ps, plus the field itself.
fn maps(grid: &SampleGrid, out: &mut Bundle) -> Result<()> {
    let spec = CompassSpec::with_t0(MAP_T0);
    let field = compass_state(grid, &spec)?;
    let sigma = spec.sigma;
    let t_ext = spec.t0 + EXTENT_WIDTHS * sigma;
    let w_ext = spec.omega0 + EXTENT_WIDTHS / sigma;
    let tag = label(MAP_T0);
    out.text(&format!("field_{tag}.field"), |mut w| write_field(&field, &mut w))?;

    let delays = symmetric_delays(grid, 2.0 * t_ext, 2.0 * DT);
    let frog = shg_frog(&field, &delays)?.crop((-2.0 * t_ext, 2.0 * t_ext), (-2.0 * w_ext, 2.0 * w_ext))?;
    out.map(&format!("frog_{tag}"), MapData::Spectrogram(frog))?;

    let wigner = wigner_window(&field, -t_ext, t_ext)?.crop((-t_ext, t_ext), (-w_ext, w_ext))?;
    out.map(&format!("wigner_{tag}"), MapData::Wigner(wigner))
}

/// Central-window FROG zooms with their cell reports.
fn zooms(grid: &SampleGrid, out: &mut Bundle) -> Result<()> {
    for t0 in ZOOM_T0 {
        let spec = CompassSpec::with_t0(t0);
        let field = compass_state(grid, &spec)?;
        let window = Window::central(t0, spec.omega0);
        let trace = window_trace(&field, &window, false)?;
        let report = cell_areas(&trace, &window, DEFAULT_NOISE_FLOOR_SIMULATED)?;
        let zoom = trace.crop((-t0, t0), (-spec.omega0, spec.omega0))?;
        let tag = label(t0);
        out.map(&format!("frog_zoom_{tag}"), MapData::Spectrogram(zoom))?;
        out.text(&format!("cells_{tag}.dat"), |mut w| write_cell_report(&report, &mut w))?;
    }
    Ok(())
}

/// Central-frequency cut of the FROG map at t0 = 2.5 ps, with the overlap
/// of the state with its time- and frequency-shifted copies.
fn section(grid: &SampleGrid, out: &mut Bundle) -> Result<()> {
    let spec = CompassSpec::with_t0(SECTION_T0);
    let field = compass_state(grid, &spec)?;
    let reach = 2.0 * (spec.t0 + EXTENT_WIDTHS * spec.sigma);
    let delays = symmetric_delays(grid, reach, DT);
    let frog = shg_frog(&field, &delays)?;
    let tag = label(SECTION_T0);

    let cut = cross_section(&frog, Fixed::Frequency(0.0))?;
    let zeros = find_zeros(&cut.restrict(-spec.t0, spec.t0), DEFAULT_NOISE_FLOOR_SIMULATED)?;
    out.text(&format!("section_{tag}.dat"), |mut w| {
        write_section(&cut, Some(&zeros), &mut w)
    })?;

    let cut = cross_section(&frog, Fixed::Time(0.0))?;
    let zeros = find_zeros(&cut.restrict(-spec.omega0, spec.omega0), DEFAULT_NOISE_FLOOR_SIMULATED)?;
    out.text(&format!("section_tau0_{tag}.dat"), |mut w| {
        write_section(&cut, Some(&zeros), &mut w)
    })?;

    let over_t = overlap_map(&field, &delays, &[0.0])?;
    let shifts = overlap_section(over_t.dt_axis(), over_t.values(), Fixed::Frequency(0.0))?;
    let zeros = find_zeros(&shifts.restrict(-spec.t0, spec.t0), DEFAULT_NOISE_FLOOR_SIMULATED)?;
    out.text(&format!("overlap_time_{tag}.dat"), |mut w| {
        write_section(&shifts, Some(&zeros), &mut w)
    })?;

    let w_reach = 2.0 * spec.omega0;
    let d_omega = grid.d_omega();
    let k = (w_reach / d_omega).floor() as i64;
    let w_shifts: Vec<f64> = (-k..=k).map(|j| j as f64 * d_omega).collect();
    let over_w = overlap_map(&field, &[0.0], &w_shifts)?;
    let shifts = overlap_section(over_w.domega_axis(), over_w.values(), Fixed::Time(0.0))?;
    let zeros = find_zeros(
        &shifts.restrict(-spec.omega0, spec.omega0),
        DEFAULT_NOISE_FLOOR_SIMULATED,
    )?;
    out.text(&format!("overlap_freq_{tag}.dat"), |mut w| {
        write_section(&shifts, Some(&zeros), &mut w)
    })
}

/// `|overlap|²` along one shift axis, squared so that its zeros are located
/// the same way as those of a FROG cut.
fn overlap_section(axis: &[f64], values: &[Complex64], fixed: Fixed) -> Result<CrossSection> {
    CrossSection::new(
        axis.to_vec(),
        values.iter().map(|v| v.norm_sqr()).collect(),
        fixed,
        false,
    )
}

/// Mean central cell area against t0, the series behind the crossing plot.
fn sweep(grid: &SampleGrid, out: &mut Bundle) -> Result<()> {
    let opts = SweepOptions {
        grid: *grid,
        noise_floor: DEFAULT_NOISE_FLOOR_SIMULATED,
        oracle: false,
    };
    let points = sweep_separation(&CompassSpec::with_t0(SWEEP_T0[0]), &SWEEP_T0, &opts);
    out.text("sweep.dat", |mut w| write_sweep(&points, &mut w))?;
    out.text("sweep.json", |mut w| write_sweep_json(&points, &mut w))?;
    // the analytic curve on a fine t0 axis, for the plotted guide line
    out.text("ideal_area.dat", |w| {
        writeln!(w, "# ideal cell area pi^2/(t0*omega0) against separation")?;
        writeln!(w, "# columns: t0[ps] area")?;
        for k in 0..=70 {
            let t0 = 0.75 + 0.025 * k as f64;
            writeln!(
                w,
                "{} {}",
                chronomap::dataio::fmt_f64(t0),
                chronomap::dataio::fmt_f64(ideal_cell_area(t0, DEFAULT_OMEGA0))
            )?;
        }
        Ok(())
    })
}
