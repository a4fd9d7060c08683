//! Pulse-shaper model: spectral band blocking plus the cosine delay mask
//! `M(ω) = cos(ω t_m)·e^{-iω t_m}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ComplexField;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ShaperMask {
    /// Cosine-mask delay parameter, ps. Replicas end up `2·mask_t0` apart.
    pub mask_t0: f64,
    /// rad/ps, relative to the reference carrier
    pub block_center: f64,
    /// rad/ps; zero disables blocking
    pub block_halfwidth: f64,
}

impl ShaperMask {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn cosine(mask_t0: f64) -> Self {
        ShaperMask {
            mask_t0,
            ..Self::default()
        }
    }

    pub fn with_block(mut self, center: f64, halfwidth: f64) -> Self {
        self.block_center = center;
        self.block_halfwidth = halfwidth;
        self
    }

    pub fn is_identity(&self) -> bool {
        self.mask_t0 == 0.0 && self.block_halfwidth == 0.0
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mask_t0.is_finite() && self.mask_t0 >= 0.0) {
            return Err(Error::Config(format!(
                "mask delay {} ps must be non-negative",
                self.mask_t0
            )));
        }
        if !(self.block_halfwidth.is_finite() && self.block_halfwidth >= 0.0) {
            return Err(Error::Config(format!(
                "block half-width {} rad/ps must be non-negative",
                self.block_halfwidth
            )));
        }
        if !self.block_center.is_finite() {
            return Err(Error::Config("block center must be finite".into()));
        }
        Ok(())
    }

    /// Complex transmission at angular frequency `omega`.
    pub fn transmission(&self, omega: f64) -> Complex64 {
        if self.block_halfwidth > 0.0 && (omega - self.block_center).abs() < self.block_halfwidth {
            return Complex64::new(0.0, 0.0);
        }
        let wt = omega * self.mask_t0;
        Complex64::from_polar(wt.cos(), -wt)
    }
}

/// Applies the mask in the frequency domain and returns to the time domain.
///
/// With `Ê(ω) = ∫E(t)e^{iωt}dt` the cosine mask turns `E(t)` into
/// `½[E(t) + E(t + 2·mask_t0)]`.
pub fn apply_shaper(field: &ComplexField, mask: &ShaperMask) -> Result<ComplexField> {
    mask.validate()?;
    if mask.is_identity() {
        return Ok(field.clone());
    }
    let grid = *field.grid();
    if mask.block_halfwidth > 0.0 {
        let lo = mask.block_center - mask.block_halfwidth;
        let hi = mask.block_center + mask.block_halfwidth;
        if lo < grid.omega_min() || hi > grid.omega_max() {
            return Err(Error::Domain(format!(
                "blocked band [{lo}, {hi}] rad/ps leaves the grid's frequency span [{}, {}] rad/ps",
                grid.omega_min(),
                grid.omega_max()
            )));
        }
    }
    let mut spectrum = field.spectrum();
    spectrum
        .iter_mut()
        .enumerate()
        .for_each(|(j, s)| *s *= mask.transmission(grid.omega(j)));
    let shaped = ComplexField::from_spectrum(grid, &spectrum)?;
    let input_energy = field.energy();
    if !(shaped.energy() > 1e-24 * input_energy) {
        return Err(Error::Shaping(
            "mask blocks the entire spectrum; shaped field is zero".into(),
        ));
    }
    Ok(shaped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{gaussian_pulse, PulseSpec, SampleGrid};

    fn pulse() -> ComplexField {
        let g = SampleGrid::centered(2048, 0.01).unwrap();
        gaussian_pulse(&g, &PulseSpec::new(0.0, 0.0, 0.2)).unwrap()
    }

    #[test]
    fn identity_mask_returns_input_exactly() {
        let f = pulse();
        assert_eq!(apply_shaper(&f, &ShaperMask::identity()).unwrap(), f);
    }

    #[test]
    fn cosine_mask_matches_time_domain_replicas() {
        let f = pulse();
        let shaped = apply_shaper(&f, &ShaperMask::cosine(2.0)).unwrap();
        // oracle: ½[E(t) + E(t + 4 ps)], built directly from the pulse formula
        let expected: Vec<Complex64> = f
            .grid()
            .times()
            .map(|t| {
                let g = |x: f64| (-x * x / (2.0 * 0.2 * 0.2)).exp();
                Complex64::new(0.5 * (g(t) + g(t + 4.0)), 0.0)
            })
            .collect();
        for (a, b) in shaped.samples().iter().zip(&expected) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn blocking_reduces_energy() {
        let f = pulse();
        let shaped = apply_shaper(&f, &ShaperMask::identity().with_block(0.0, 2.0)).unwrap();
        assert!(shaped.energy() < f.energy());
    }

    #[test]
    fn over_blocking_is_a_shaping_error() {
        let f = pulse();
        let g = f.grid();
        let center = 0.5 * (g.omega_min() + g.omega_max());
        let mask = ShaperMask::identity().with_block(center, 0.5 * (g.omega_max() - g.omega_min()));
        assert!(matches!(apply_shaper(&f, &mask), Err(Error::Shaping(_))));
    }

    #[test]
    fn band_outside_grid_is_rejected() {
        let f = pulse();
        let mask = ShaperMask::identity().with_block(0.0, 1e4);
        assert!(matches!(apply_shaper(&f, &mask), Err(Error::Domain(_))));
    }

    #[test]
    fn negative_parameters_rejected() {
        assert!(ShaperMask::cosine(-1.0).validate().is_err());
        assert!(ShaperMask::identity().with_block(0.0, -1.0).validate().is_err());
    }
}
