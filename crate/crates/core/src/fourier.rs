//! Discrete Fourier pair on a [`SampleGrid`].
//!
//! The forward transform is `Ê(ω) = ∫ E(t) e^{+iωt} dt`, the inverse uses the
//! `e^{-iωt}` kernel with the `1/2π` factor. Spectra are laid out on the
//! centered conjugate axis `ω_j = (j - n/2)·dω`, so index `n/2` is the
//! reference carrier.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::field::SampleGrid;

/// Cached FFT plans of one length.
///
/// `plus` evaluates `Σ_k x_k e^{+2πijk/n}`, `minus` the conjugate kernel.
/// Both are unnormalized.
#[derive(Clone)]
pub struct Plans {
    plus: Arc<dyn Fft<f64>>,
    minus: Arc<dyn Fft<f64>>,
    len: usize,
}

impl Plans {
    pub fn new(len: usize) -> Self {
        let mut planner = FftPlanner::new();
        Plans {
            plus: planner.plan_fft_inverse(len),
            minus: planner.plan_fft_forward(len),
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn plus_in_place(&self, buf: &mut [Complex64]) {
        self.plus.process(buf);
    }

    pub fn minus_in_place(&self, buf: &mut [Complex64]) {
        self.minus.process(buf);
    }
}

#[inline]
pub(crate) fn alternating(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Forward transform of time samples onto the centered angular-frequency axis.
pub fn forward(grid: &SampleGrid, samples: &[Complex64]) -> Vec<Complex64> {
    forward_with(&Plans::new(grid.len()), grid, samples)
}

pub fn forward_with(plans: &Plans, grid: &SampleGrid, samples: &[Complex64]) -> Vec<Complex64> {
    let n = grid.len();
    debug_assert_eq!(samples.len(), n);
    let mut buf: Vec<Complex64> = samples.iter().enumerate().map(|(k, &e)| e * alternating(k)).collect();
    plans.plus_in_place(&mut buf);
    let dt = grid.dt();
    let t0 = grid.t_start();
    buf.iter_mut().enumerate().for_each(|(j, v)| {
        let phase = grid.omega(j) * t0;
        *v *= Complex64::from_polar(dt, phase);
    });
    buf
}

/// Inverse of [`forward`].
pub fn inverse(grid: &SampleGrid, spectrum: &[Complex64]) -> Vec<Complex64> {
    inverse_with(&Plans::new(grid.len()), grid, spectrum)
}

pub fn inverse_with(plans: &Plans, grid: &SampleGrid, spectrum: &[Complex64]) -> Vec<Complex64> {
    let n = grid.len();
    debug_assert_eq!(spectrum.len(), n);
    let t0 = grid.t_start();
    let mut buf: Vec<Complex64> = spectrum
        .iter()
        .enumerate()
        .map(|(j, &s)| s * Complex64::from_polar(1.0, -grid.omega(j) * t0))
        .collect();
    plans.minus_in_place(&mut buf);
    let scale = grid.d_omega() / (2.0 * std::f64::consts::PI);
    buf.iter_mut()
        .enumerate()
        .for_each(|(k, v)| *v *= scale * alternating(k));
    buf
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn forward_matches_direct_sum() {
        let grid = SampleGrid::new(64, 0.1, -3.0).unwrap();
        let samples: Vec<Complex64> = grid
            .times()
            .map(|t| Complex64::new((-(t - 0.3) * (t - 0.3)).exp(), 0.2 * t))
            .collect();
        let fast = forward(&grid, &samples);
        for (j, got) in fast.iter().enumerate() {
            let w = grid.omega(j);
            let direct: Complex64 = grid
                .times()
                .zip(&samples)
                .map(|(t, &e)| e * Complex64::from_polar(grid.dt(), w * t))
                .sum();
            assert!((got - direct).norm() < 1e-12, "bin {j}");
        }
    }

    #[test]
    fn round_trip_is_identity() {
        let grid = SampleGrid::centered(128, 0.05).unwrap();
        let samples: Vec<Complex64> = grid
            .times()
            .map(|t| Complex64::from_polar((-t * t).exp(), 3.0 * t))
            .collect();
        let back = inverse(&grid, &forward(&grid, &samples));
        for (a, b) in samples.iter().zip(&back) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn negative_exponent_carrier_lands_on_positive_frequency() {
        let grid = SampleGrid::centered(256, 0.05).unwrap();
        let wc = 8.0 * grid.d_omega();
        let samples: Vec<Complex64> = grid
            .times()
            .map(|t| Complex64::from_polar((-t * t / 2.0).exp(), -wc * t))
            .collect();
        let spec = forward(&grid, &samples);
        let peak = (0..spec.len())
            .max_by(|&a, &b| spec[a].norm().total_cmp(&spec[b].norm()))
            .unwrap();
        assert!((grid.omega(peak) - wc).abs() < 1e-12);
        // Gaussian pair: ∫e^{-t²/2}e^{iωt}dt = √(2π) at ω = 0 offset
        assert!((spec[peak].norm() - (2.0 * PI).sqrt()).abs() < 1e-9);
    }
}
