use num_complex::Complex64;

use super::SampleGrid;
use crate::error::{Error, Result};
use crate::fourier;

/// Complex analytic field sampled on a [`SampleGrid`], in baseband relative to
/// the reference carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grid: SampleGrid,
    samples: Vec<Complex64>,
}

impl ComplexField {
    pub fn new(grid: SampleGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::Data(format!(
                "field has {} samples but the grid has {}",
                samples.len(),
                grid.len()
            )));
        }
        if let Some(i) = samples.iter().position(|s| !(s.re.is_finite() && s.im.is_finite())) {
            return Err(Error::Data(format!("field sample {i} is not finite")));
        }
        Ok(ComplexField { grid, samples })
    }

    pub fn zeros(grid: SampleGrid) -> Self {
        ComplexField {
            grid,
            samples: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Field from a spectrum on the grid's centered frequency axis.
    pub fn from_spectrum(grid: SampleGrid, spectrum: &[Complex64]) -> Result<Self> {
        if spectrum.len() != grid.len() {
            return Err(Error::Data("spectrum length does not match grid".into()));
        }
        Self::new(grid, fourier::inverse(&grid, spectrum))
    }

    pub fn grid(&self) -> &SampleGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn intensity(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.norm_sqr()).collect()
    }

    /// `Σ |E|² dt`.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() * self.grid.dt()
    }

    /// Copy scaled to unit energy; an all-zero field cannot be normalized.
    pub fn normalized(&self) -> Result<Self> {
        let energy = self.energy();
        if !(energy.is_finite() && energy > 0.0) {
            return Err(Error::Synthesis("field has zero energy".into()));
        }
        let k = energy.sqrt().recip();
        Ok(ComplexField {
            grid: self.grid,
            samples: self.samples.iter().map(|s| s * k).collect(),
        })
    }

    /// Spectrum `Ê(ω_j)` on the centered frequency axis.
    pub fn spectrum(&self) -> Vec<Complex64> {
        fourier::forward(&self.grid, &self.samples)
    }

    /// Sample index and time of the intensity maximum.
    pub fn peak(&self) -> (usize, f64) {
        let i = argmax(self.samples.iter().map(|s| s.norm_sqr()));
        (i, self.grid.time(i))
    }

    /// Local maxima of the temporal intensity above `fraction` of the global peak.
    pub fn intensity_peaks(&self, fraction: f64) -> Vec<f64> {
        local_peaks(&self.intensity(), fraction)
            .into_iter()
            .map(|i| self.grid.time(i))
            .collect()
    }

    /// RMS duration times RMS angular bandwidth; ½ for a transform-limited Gaussian.
    pub fn time_bandwidth_product(&self) -> f64 {
        let intensity = self.intensity();
        let times: Vec<f64> = self.grid.times().collect();
        let spectral: Vec<f64> = self.spectrum().iter().map(|s| s.norm_sqr()).collect();
        let omegas = self.grid.omegas();
        rms_width(&times, &intensity) * rms_width(&omegas, &spectral)
    }
}

fn argmax(values: impl Iterator<Item = f64>) -> usize {
    values
        .enumerate()
        .fold(
            (0, f64::NEG_INFINITY),
            |best, (i, v)| if v > best.1 { (i, v) } else { best },
        )
        .0
}

fn local_peaks(values: &[f64], fraction: f64) -> Vec<usize> {
    let max = values.iter().cloned().fold(0.0, f64::max);
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] > fraction * max && values[i] > values[i - 1] && values[i] >= values[i + 1])
        .collect()
}

fn rms_width(axis: &[f64], weight: &[f64]) -> f64 {
    let total: f64 = weight.iter().sum();
    let mean = axis.iter().zip(weight).map(|(x, w)| x * w).sum::<f64>() / total;
    let var = axis
        .iter()
        .zip(weight)
        .map(|(x, w)| (x - mean).powi(2) * w)
        .sum::<f64>()
        / total;
    var.sqrt()
}
