use serde::{Deserialize, Serialize};

use super::{cross_section, find_zeros, Fixed, ZeroSet};
use crate::error::{Error, Result};
use crate::transforms::{PhaseSpaceMap, Spectrogram, WignerMap};

/// Phase-space area unit `1/2` (ħ = 1) that the cells are compared against.
pub const UNCERTAINTY_LIMIT: f64 = 0.5;

/// FROG-coordinate cell area `(π/ω0)·(π/t0)` of an ideal compass state.
/// Wigner cells are a quarter of this.
pub fn ideal_cell_area(t0: f64, omega0: f64) -> f64 {
    std::f64::consts::PI.powi(2) / (t0 * omega0)
}

/// Axis-aligned rectangle `|t - time_center| < time_halfwidth`,
/// `|w - freq_center| < freq_halfwidth`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub time_center: f64,
    pub time_halfwidth: f64,
    pub freq_center: f64,
    pub freq_halfwidth: f64,
}

impl Window {
    /// FROG-coordinate region halfway to the satellite peaks of a compass
    /// state: `|τ| < t0`, `|ω| < ω0`.
    pub fn central(t0: f64, omega0: f64) -> Self {
        Window {
            time_center: 0.0,
            time_halfwidth: t0,
            freq_center: 0.0,
            freq_halfwidth: omega0,
        }
    }

    /// The same region in Wigner coordinates, which are halved.
    pub fn wigner_central(t0: f64, omega0: f64) -> Self {
        Window {
            time_center: 0.0,
            time_halfwidth: t0 / 2.0,
            freq_center: 0.0,
            freq_halfwidth: omega0 / 2.0,
        }
    }

    pub fn centered_at(mut self, time_center: f64, freq_center: f64) -> Self {
        self.time_center = time_center;
        self.freq_center = freq_center;
        self
    }

    fn validate<M: PhaseSpaceMap + ?Sized>(&self, map: &M) -> Result<()> {
        let ok = |c: f64, h: f64, axis: &[f64]| {
            c.is_finite()
                && h.is_finite()
                && h > 0.0
                && c - h >= axis[0] - 1e-9 * h
                && c + h <= axis[axis.len() - 1] + 1e-9 * h
        };
        if !ok(self.time_center, self.time_halfwidth, map.time_axis()) {
            return Err(Error::Domain(format!(
                "window time range {} ± {} lies outside the map's [{}, {}]",
                self.time_center,
                self.time_halfwidth,
                map.time_axis()[0],
                map.time_axis()[map.time_axis().len() - 1]
            )));
        }
        if !ok(self.freq_center, self.freq_halfwidth, map.freq_axis()) {
            return Err(Error::Domain(format!(
                "window frequency range {} ± {} lies outside the map's [{}, {}]",
                self.freq_center,
                self.freq_halfwidth,
                map.freq_axis()[0],
                map.freq_axis()[map.freq_axis().len() - 1]
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Mean cell area below the 0.5 unit.
    SubFourier,
    AboveLimit,
    /// Interference along one direction only; no cell area exists.
    NotApplicable,
}

/// Interference-cell measurement inside a window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellAreaReport {
    pub window: Window,
    pub tau_zeros: Vec<f64>,
    pub omega_zeros: Vec<f64>,
    pub tau_spacings: Vec<f64>,
    pub omega_spacings: Vec<f64>,
    /// `Δτ_i · Δω_j` for every pair of adjacent spacings, τ-major.
    pub cell_areas: Vec<f64>,
    pub mean_area: Option<f64>,
    pub verdict: Verdict,
}

impl CellAreaReport {
    pub fn sub_fourier(&self) -> Option<bool> {
        match self.verdict {
            Verdict::SubFourier => Some(true),
            Verdict::AboveLimit => Some(false),
            Verdict::NotApplicable => None,
        }
    }

    pub fn mean_tau_spacing(&self) -> Option<f64> {
        mean(&self.tau_spacings)
    }

    pub fn mean_omega_spacing(&self) -> Option<f64> {
        mean(&self.omega_spacings)
    }

    fn from_zeros(window: Window, tau: ZeroSet, omega: ZeroSet) -> Self {
        let tau_spacings = tau.spacings();
        let omega_spacings = omega.spacings();
        let cell_areas: Vec<f64> = tau_spacings
            .iter()
            .flat_map(|a| omega_spacings.iter().map(move |b| a * b))
            .collect();
        let mean_area = mean(&cell_areas);
        let verdict = match mean_area {
            Some(m) if m < UNCERTAINTY_LIMIT => Verdict::SubFourier,
            Some(_) => Verdict::AboveLimit,
            None => Verdict::NotApplicable,
        };
        CellAreaReport {
            window,
            tau_zeros: tau.positions,
            omega_zeros: omega.positions,
            tau_spacings,
            omega_spacings,
            cell_areas,
            mean_area,
            verdict,
        }
    }
}

fn mean(v: &[f64]) -> Option<f64> {
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

/// Zeros along the two slices through the window center, each restricted to
/// the window's open interval.
fn window_zeros<M: PhaseSpaceMap + ?Sized>(map: &M, window: &Window, noise_floor: f64) -> Result<(ZeroSet, ZeroSet)> {
    window.validate(map)?;
    let along_time = cross_section(map, Fixed::Frequency(window.freq_center))?;
    let along_freq = cross_section(map, Fixed::Time(window.time_center))?;
    let t = along_time.restrict(
        window.time_center - window.time_halfwidth,
        window.time_center + window.time_halfwidth,
    );
    let w = along_freq.restrict(
        window.freq_center - window.freq_halfwidth,
        window.freq_center + window.freq_halfwidth,
    );
    Ok((find_zeros(&t, noise_floor)?, find_zeros(&w, noise_floor)?))
}

fn insufficient(axis: &str, found: usize) -> Error {
    Error::InsufficientStructure(format!(
        "found {found} zero(s) along the {axis} axis inside the window, at least 2 are needed \
         to measure a cell; the interference pattern is absent or unresolved"
    ))
}

/// Mean chessboard cell area of a FROG trace.
pub fn cell_areas(map: &Spectrogram, window: &Window, noise_floor: f64) -> Result<CellAreaReport> {
    let (tau, omega) = window_zeros(map, window, noise_floor)?;
    if tau.len() < 2 {
        return Err(insufficient("delay", tau.len()));
    }
    if omega.len() < 2 {
        return Err(insufficient("frequency", omega.len()));
    }
    Ok(CellAreaReport::from_zeros(*window, tau, omega))
}

/// Cell areas from sign changes of a Wigner map. Interference along a single
/// direction, as for a two-pulse cat, yields a one-sided report with
/// [`Verdict::NotApplicable`].
pub fn wigner_cell_areas(map: &WignerMap, window: &Window, noise_floor: f64) -> Result<CellAreaReport> {
    let (q, p) = window_zeros(map, window, noise_floor)?;
    if q.len() < 2 && p.len() < 2 {
        return Err(insufficient("position and momentum", q.len().max(p.len())));
    }
    Ok(CellAreaReport::from_zeros(*window, q, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chessboard(dt: f64, dw: f64) -> Spectrogram {
        let tau: Vec<f64> = (-100..=100).map(|k| k as f64 * 0.02).collect();
        let omega: Vec<f64> = (-100..=100).map(|k| k as f64 * 0.05).collect();
        let values = tau
            .iter()
            .flat_map(|t| {
                omega.iter().map(move |w| {
                    let a = (std::f64::consts::PI * t / dt).cos() * (std::f64::consts::PI * w / dw).cos();
                    a * a
                })
            })
            .collect();
        Spectrogram::new(tau, omega, values, 1.0).unwrap()
    }

    #[test]
    fn synthetic_chessboard_area() {
        let map = chessboard(0.3, 1.2);
        let r = cell_areas(&map, &Window::central(1.5, 4.0), 1e-2).unwrap();
        assert!((r.mean_area.unwrap() - 0.36).abs() < 1e-3);
        assert_eq!(r.verdict, Verdict::SubFourier);
        assert_eq!(r.cell_areas.len(), r.tau_spacings.len() * r.omega_spacings.len());
    }

    #[test]
    fn coarse_chessboard_is_above_limit() {
        let r = cell_areas(&chessboard(0.5, 1.2), &Window::central(1.5, 4.0), 1e-2).unwrap();
        assert_eq!(r.sub_fourier(), Some(false));
    }

    #[test]
    fn window_outside_map_rejected() {
        let map = chessboard(0.3, 1.2);
        assert!(matches!(
            cell_areas(&map, &Window::central(3.0, 1.0), 1e-2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn smooth_map_has_insufficient_structure() {
        let tau: Vec<f64> = (-50..=50).map(|k| k as f64 * 0.02).collect();
        let omega = tau.clone();
        let values = tau
            .iter()
            .flat_map(|t| omega.iter().map(move |w| (-t * t - w * w).exp()))
            .collect();
        let map = Spectrogram::new(tau, omega, values, 1.0).unwrap();
        assert!(matches!(
            cell_areas(&map, &Window::central(0.8, 0.8), 1e-2),
            Err(Error::InsufficientStructure(_))
        ));
    }
}
