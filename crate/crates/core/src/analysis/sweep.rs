use rayon::prelude::*;

use super::{cell_areas, ideal_cell_area, CellAreaReport, Window};
use crate::error::{Error, Result};
use crate::field::{compass_state, gaussian_pulse, CompassSpec, ComplexField, PulseSpec, SampleGrid};
use crate::transforms::{quadrature_oracle_frog, shg_frog, symmetric_delays, Spectrogram};

/// Grid samples added around the window on each side, so that zeros near
/// the window edge still have flanking samples.
const MARGIN: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub grid: SampleGrid,
    pub noise_floor: f64,
    /// Compute each trace by direct summation instead of FFT.
    pub oracle: bool,
}

#[derive(Debug)]
pub struct SweepPoint {
    pub t0: f64,
    /// `π² / (t0·ω0)`, the ideal chessboard cell area.
    pub expected_area: f64,
    /// RMS `Δt·Δω` of a single constituent pulse.
    pub pulse_dispersion: f64,
    pub outcome: Result<CellAreaReport>,
}

impl SweepPoint {
    pub fn mean_area(&self) -> Option<f64> {
        self.outcome.as_ref().ok().and_then(|r| r.mean_area)
    }

    pub fn sub_fourier(&self) -> Option<bool> {
        self.outcome.as_ref().ok().and_then(|r| r.sub_fourier())
    }
}

/// FROG trace of `field` covering `window` plus a small margin; the oracle
/// path evaluates only the frequencies inside that span.
pub fn window_trace(field: &ComplexField, window: &Window, oracle: bool) -> Result<Spectrogram> {
    let grid = field.grid();
    let reach = window.time_center.abs() + window.time_halfwidth + MARGIN as f64 * grid.dt();
    let delays = symmetric_delays(grid, reach, grid.dt());
    if oracle {
        let lo = window.freq_center - window.freq_halfwidth - MARGIN as f64 * grid.d_omega();
        let hi = window.freq_center + window.freq_halfwidth + MARGIN as f64 * grid.d_omega();
        let omegas: Vec<f64> = grid.omegas().into_iter().filter(|w| (lo..=hi).contains(w)).collect();
        quadrature_oracle_frog(field, &delays, &omegas)
    } else {
        shg_frog(field, &delays)
    }
}

/// One point of the separation sweep: synthesis, trace and cell areas.
pub fn sweep_point(base: &CompassSpec, t0: f64, opts: &SweepOptions) -> SweepPoint {
    let spec = CompassSpec { t0, ..*base };
    let outcome = (|| {
        let field = compass_state(&opts.grid, &spec)?;
        let window = Window::central(t0, spec.omega0);
        let trace = window_trace(&field, &window, opts.oracle)?;
        cell_areas(&trace, &window, opts.noise_floor)
    })();
    SweepPoint {
        t0,
        expected_area: ideal_cell_area(t0, spec.omega0),
        pulse_dispersion: pulse_dispersion(&opts.grid, spec.sigma).unwrap_or(f64::NAN),
        outcome,
    }
}

/// Cell-area measurements for each separation, evaluated in parallel and
/// returned in input order. Failures are recorded per point.
pub fn sweep_separation(base: &CompassSpec, t0_values: &[f64], opts: &SweepOptions) -> Vec<SweepPoint> {
    t0_values.par_iter().map(|&t0| sweep_point(base, t0, opts)).collect()
}

fn pulse_dispersion(grid: &SampleGrid, sigma: f64) -> Result<f64> {
    let center = grid.t_start() + 0.5 * grid.len() as f64 * grid.dt();
    let pulse = gaussian_pulse(grid, &PulseSpec::new(center, 0.0, sigma))?;
    let tbp = pulse.time_bandwidth_product();
    if tbp.is_finite() {
        Ok(tbp)
    } else {
        Err(Error::Numerical("pulse dispersion is not finite".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sweep_is_empty() {
        let opts = SweepOptions {
            grid: SampleGrid::centered(1024, 0.02).unwrap(),
            noise_floor: 1e-2,
            oracle: false,
        };
        assert!(sweep_separation(&CompassSpec::with_t0(1.0), &[], &opts).is_empty());
    }

    #[test]
    fn overlapping_pulses_lack_structure() {
        let opts = SweepOptions {
            grid: SampleGrid::centered(1024, 0.02).unwrap(),
            noise_floor: 1e-2,
            oracle: false,
        };
        let pts = sweep_separation(&CompassSpec::with_t0(1.0), &[0.1], &opts);
        assert!(matches!(pts[0].outcome, Err(Error::InsufficientStructure(_))));
        assert!((pts[0].pulse_dispersion - 0.5).abs() < 1e-9);
    }
}
