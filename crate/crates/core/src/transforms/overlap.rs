//! Scalar product of a field with its time- and frequency-shifted twin.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::ComplexField;
use crate::fourier::{self, Plans};

/// `⟨E | E(· - Δt) e^{iΔω·}⟩ / ⟨E | E⟩` over a grid of shifts.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapMap {
    dt_axis: Vec<f64>,
    domega_axis: Vec<f64>,
    values: Vec<Complex64>,
}

impl OverlapMap {
    pub fn dt_axis(&self) -> &[f64] {
        &self.dt_axis
    }

    pub fn domega_axis(&self) -> &[f64] {
        &self.domega_axis
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.domega_axis.len() + j]
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }
}

/// Time shifts are applied in the frequency domain, so any real `Δt` inside
/// the grid span is allowed; `Δt = 0` uses the samples unchanged.
pub fn overlap_map(field: &ComplexField, dt_axis: &[f64], domega_axis: &[f64]) -> Result<OverlapMap> {
    let grid = *field.grid();
    let span = grid.t_end() - grid.t_start();
    let band = grid.omega_max() - grid.omega_min();
    if let Some(d) = dt_axis.iter().find(|d| !(d.abs() < span)) {
        return Err(Error::Domain(format!(
            "time shift {d} ps exceeds the grid span {span} ps"
        )));
    }
    if let Some(d) = domega_axis.iter().find(|d| !(d.abs() < band)) {
        return Err(Error::Domain(format!(
            "frequency shift {d} rad/ps exceeds the grid band {band} rad/ps"
        )));
    }
    let energy = field.energy();
    if !(energy > 0.0) {
        return Err(Error::Domain("overlap of a zero field is undefined".into()));
    }
    let plans = Plans::new(grid.len());
    let spectrum = field.spectrum();
    let samples = field.samples();
    let dt = grid.dt();
    let rows: Vec<Vec<Complex64>> = dt_axis
        .par_iter()
        .map(|&shift| {
            let shifted: Vec<Complex64> = if shift == 0.0 {
                samples.to_vec()
            } else {
                let moved: Vec<Complex64> = spectrum
                    .iter()
                    .enumerate()
                    .map(|(j, s)| s * Complex64::cis(grid.omega(j) * shift))
                    .collect();
                fourier::inverse_with(&plans, &grid, &moved)
            };
            domega_axis
                .iter()
                .map(|&dw| {
                    let acc: Complex64 = samples
                        .iter()
                        .zip(&shifted)
                        .zip(grid.times())
                        .map(|((e, s), t)| e.conj() * s * Complex64::cis(dw * t))
                        .sum();
                    acc * dt / energy
                })
                .collect()
        })
        .collect();
    Ok(OverlapMap {
        dt_axis: dt_axis.to_vec(),
        domega_axis: domega_axis.to_vec(),
        values: rows.concat(),
    })
}
