use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transforms::{check_axis, locate, PhaseSpaceMap};

/// The coordinate held fixed by a slice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "axis", content = "value", rename_all = "lowercase")]
pub enum Fixed {
    /// Slice runs along the frequency axis at this delay or position.
    Time(f64),
    /// Slice runs along the time axis at this frequency or momentum.
    Frequency(f64),
}

/// One-dimensional slice through a phase-space map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossSection {
    axis: Vec<f64>,
    values: Vec<f64>,
    fixed: Fixed,
    signed: bool,
}

impl CrossSection {
    /// Unsigned sections must be non-negative; the axis must be uniform.
    pub fn new(axis: Vec<f64>, values: Vec<f64>, fixed: Fixed, signed: bool) -> Result<Self> {
        check_axis("section", &axis)?;
        if axis.len() != values.len() {
            return Err(Error::Data(format!(
                "section axis has {} entries but {} values",
                axis.len(),
                values.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Data(format!("section value {k} is not finite")));
        }
        if !signed {
            if let Some(k) = values.iter().position(|&v| v < 0.0) {
                return Err(Error::Data(format!(
                    "intensity section value {k} is negative ({})",
                    values[k]
                )));
            }
        }
        Ok(CrossSection {
            axis,
            values,
            fixed,
            signed,
        })
    }

    pub fn axis(&self) -> &[f64] {
        &self.axis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn fixed(&self) -> Fixed {
        self.fixed
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub fn len(&self) -> usize {
        self.axis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axis.is_empty()
    }

    /// Samples with `lo < x < hi`.
    pub fn restrict(&self, lo: f64, hi: f64) -> CrossSection {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&k| self.axis[k] > lo && self.axis[k] < hi)
            .collect();
        CrossSection {
            axis: keep.iter().map(|&k| self.axis[k]).collect(),
            values: keep.iter().map(|&k| self.values[k]).collect(),
            fixed: self.fixed,
            signed: self.signed,
        }
    }
}

/// Slice through `map`, linearly interpolated between the two nearest grid
/// lines of the held axis; exact when the fixed value is a grid line.
pub fn cross_section<M: PhaseSpaceMap + ?Sized>(map: &M, fixed: Fixed) -> Result<CrossSection> {
    let (held, name, value) = match fixed {
        Fixed::Time(v) => (map.time_axis(), "time", v),
        Fixed::Frequency(v) => (map.freq_axis(), "frequency", v),
    };
    let (k0, frac) = locate(held, value).ok_or_else(|| {
        Error::Domain(format!(
            "fixed {name} value {value} lies outside [{}, {}]",
            held[0],
            held[held.len() - 1]
        ))
    })?;
    let k1 = (k0 + 1).min(held.len() - 1);
    let (axis, values) = match fixed {
        Fixed::Time(_) => {
            let (a, b) = (map.row(k0), map.row(k1));
            (map.freq_axis().to_vec(), lerp_rows(a, b, frac))
        }
        Fixed::Frequency(_) => {
            let (a, b) = (map.column(k0), map.column(k1));
            (map.time_axis().to_vec(), lerp_rows(&a, &b, frac))
        }
    };
    CrossSection::new(axis, values, fixed, map.is_signed())
}

fn lerp_rows(a: &[f64], b: &[f64], frac: f64) -> Vec<f64> {
    if frac == 0.0 {
        return a.to_vec();
    }
    a.iter().zip(b).map(|(x, y)| x * (1.0 - frac) + y * frac).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::Spectrogram;

    fn map() -> Spectrogram {
        // value = 10·i + j
        let values = (0..3).flat_map(|i| (0..4).map(move |j| (10 * i + j) as f64)).collect();
        Spectrogram::new(vec![-1.0, 0.0, 1.0], vec![0.0, 0.5, 1.0, 1.5], values, 1.0).unwrap()
    }

    #[test]
    fn grid_lines_are_exact() {
        let m = map();
        let s = cross_section(&m, Fixed::Time(0.0)).unwrap();
        assert_eq!(s.values(), m.row(1));
        let s = cross_section(&m, Fixed::Frequency(1.0)).unwrap();
        assert_eq!(s.values(), m.column(2).as_slice());
        assert_eq!(s.axis(), m.tau_axis());
    }

    #[test]
    fn between_lines_interpolates() {
        let s = cross_section(&map(), Fixed::Frequency(0.25)).unwrap();
        assert_eq!(s.values(), &[0.5, 10.5, 20.5]);
    }

    #[test]
    fn outside_is_a_domain_error() {
        assert!(matches!(cross_section(&map(), Fixed::Time(2.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn negative_intensity_rejected() {
        let r = CrossSection::new(vec![0.0, 1.0], vec![1.0, -1.0], Fixed::Time(0.0), false);
        assert!(matches!(r, Err(Error::Data(_))));
    }
}
