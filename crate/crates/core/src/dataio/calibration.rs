//! Wavelength-to-frequency calibration of measured traces.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::trace::{ExperimentalTrace, TraceMeta};
use crate::error::{Error, Result};
use crate::transforms::{locate, PhaseSpaceMap, Spectrogram};

/// m/s, exact by definition.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Speed of light in nm/ps, so that `ν [THz] = C_NM_PER_PS / λ [nm]`.
pub const C_NM_PER_PS: f64 = SPEED_OF_LIGHT * 1e-3;
/// Second-harmonic reference wavelength of the 1564 nm fundamental.
pub const DEFAULT_REFERENCE_NM: f64 = 782.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    /// Wavelength mapped to ω = 0, nm.
    pub reference_wavelength: f64,
    /// Fraction of the maximum subtracted as background before clamping.
    pub background_floor: f64,
}

impl Default for Calibration {
    fn default() -> Self {
        Calibration {
            reference_wavelength: DEFAULT_REFERENCE_NM,
            background_floor: 0.0,
        }
    }
}

/// Frequency in THz of light at `wavelength_nm`.
pub fn frequency_thz(wavelength_nm: f64) -> f64 {
    C_NM_PER_PS / wavelength_nm
}

/// Wavelength in nm of light at `frequency_thz`.
pub fn wavelength_nm(frequency_thz: f64) -> f64 {
    C_NM_PER_PS / frequency_thz
}

impl Calibration {
    pub fn validate(&self) -> Result<()> {
        if !(self.reference_wavelength.is_finite() && self.reference_wavelength > 0.0) {
            return Err(Error::Calibration(format!(
                "reference wavelength {} nm must be positive",
                self.reference_wavelength
            )));
        }
        if !(0.0..1.0).contains(&self.background_floor) {
            return Err(Error::Calibration(format!(
                "background floor {} must lie in [0, 1)",
                self.background_floor
            )));
        }
        Ok(())
    }

    pub fn reference_thz(&self) -> f64 {
        frequency_thz(self.reference_wavelength)
    }

    /// Angular frequency relative to the reference, rad/ps.
    pub fn omega(&self, wavelength_nm: f64) -> f64 {
        2.0 * PI * (frequency_thz(wavelength_nm) - self.reference_thz())
    }

    pub fn wavelength_of(&self, omega: f64) -> f64 {
        wavelength_nm(self.reference_thz() + omega / (2.0 * PI))
    }

    /// `|dλ/dω|` in nm per rad/ps; multiplies a per-wavelength density to
    /// give a per-angular-frequency density.
    pub fn jacobian(&self, wavelength_nm: f64) -> f64 {
        wavelength_nm * wavelength_nm / (2.0 * PI * C_NM_PER_PS)
    }
}

/// Converts a trace to a spectrogram on a uniform ω axis with as many points
/// as there are wavelengths.
///
/// Intensities are multiplied by `|dλ/dω|`, resampled linearly, reduced by
/// `background_floor × max` and clamped at zero. Values are not renormalized.
pub fn calibrate_to_spectrogram(trace: &ExperimentalTrace, cal: &Calibration) -> Result<Spectrogram> {
    cal.validate()?;
    let lambdas = trace.wavelengths();
    if lambdas.len() < 2 {
        return Err(Error::Calibration(
            "a trace needs at least two wavelengths to define a frequency axis".into(),
        ));
    }
    if let Some(l) = lambdas.iter().find(|l| !(**l > 0.0)) {
        return Err(Error::Calibration(format!("wavelength {l} nm is not positive")));
    }
    // ascending ω means descending λ
    let mut order: Vec<usize> = (0..lambdas.len()).collect();
    order.sort_by(|&a, &b| lambdas[b].total_cmp(&lambdas[a]));
    let omegas: Vec<f64> = order.iter().map(|&k| cal.omega(lambdas[k])).collect();
    let (lo, hi) = (omegas[0], omegas[omegas.len() - 1]);
    if !(hi > lo) {
        return Err(Error::Calibration("wavelength range is degenerate".into()));
    }
    let m = omegas.len();
    let step = (hi - lo) / (m - 1) as f64;
    let uniform: Vec<f64> = (0..m).map(|k| lo + k as f64 * step).collect();

    let mut tau_order: Vec<usize> = (0..trace.delays().len()).collect();
    tau_order.sort_by(|&a, &b| trace.delays()[a].total_cmp(&trace.delays()[b]));
    let delays: Vec<f64> = tau_order.iter().map(|&i| trace.delays()[i]).collect();

    let mut values = Vec::with_capacity(delays.len() * m);
    for &i in &tau_order {
        let density: Vec<f64> = order
            .iter()
            .map(|&k| trace.get(i, k) * cal.jacobian(lambdas[k]))
            .collect();
        values.extend(uniform.iter().map(|&w| interpolate(&omegas, &density, w)));
    }
    let peak = values.iter().fold(0.0_f64, |a, &b| a.max(b));
    let floor = cal.background_floor * peak;
    values.iter_mut().for_each(|v| *v = (*v - floor).max(0.0));
    Spectrogram::new(delays, uniform, values, 1.0)
}

/// Piecewise-linear interpolation on an ascending, possibly non-uniform axis.
fn interpolate(x: &[f64], y: &[f64], at: f64) -> f64 {
    let k = x.partition_point(|&v| v <= at);
    if k == 0 {
        return y[0];
    }
    if k >= x.len() {
        return y[x.len() - 1];
    }
    let (x0, x1) = (x[k - 1], x[k]);
    let f = (at - x0) / (x1 - x0);
    y[k - 1] * (1.0 - f) + y[k] * f
}

/// Inverse of [`calibrate_to_spectrogram`] at the given wavelengths, which
/// must map inside the spectrogram's ω range.
pub fn synthesize_trace(map: &Spectrogram, cal: &Calibration, wavelengths: &[f64]) -> Result<ExperimentalTrace> {
    cal.validate()?;
    let omegas: Vec<f64> = wavelengths.iter().map(|&l| cal.omega(l)).collect();
    let w_axis = map.omega_axis();
    for (l, w) in wavelengths.iter().zip(&omegas) {
        if locate(w_axis, *w).is_none() {
            return Err(Error::Calibration(format!(
                "wavelength {l} nm maps to ω = {w} rad/ps outside the map's [{}, {}]",
                w_axis[0],
                w_axis[w_axis.len() - 1]
            )));
        }
    }
    let mut values = Vec::with_capacity(map.tau_axis().len() * wavelengths.len());
    for &tau in map.tau_axis() {
        for (l, &w) in wavelengths.iter().zip(&omegas) {
            let v = map.sample(tau, w).unwrap_or(0.0) * map.scale();
            values.push(v / cal.jacobian(*l));
        }
    }
    ExperimentalTrace::new(
        map.tau_axis().to_vec(),
        wavelengths.to_vec(),
        values,
        TraceMeta {
            source: "synthesized".into(),
            ..TraceMeta::default()
        },
    )
}
