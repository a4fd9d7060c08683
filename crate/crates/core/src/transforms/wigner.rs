//! Wigner distribution `W(q,p) = (1/π) ∫ e^{2iξp} F(q-ξ) F*(q+ξ) dξ` with ħ = 1.
//!
//! The wavefunction analogue of an optical field written with `e^{-iωt}`
//! carriers is `F = E*`, so that a carrier at `+ω_c` shows up at `p = +ω_c`
//! and the spectral marginal is `|Ê(p)|²/2π` under the same sign convention
//! as the FROG trace.
//!
//! Rows sit on the half-step grid `q_n = t_start + n·dt/2`, `n = 0..2N-1`.
//! For each row the pairs `(a, b)` with `a + b = n` give `q ∓ ξ` on grid
//! samples, so no interpolation of the field is needed. The lag sum for a
//! row has at most `N` terms and is evaluated with one length-`N` FFT, which
//! yields `p_j = (j - N/2)·π/(N·dt)`, i.e. exactly half the FROG frequencies.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::WignerMap;
use crate::error::{Error, Result};
use crate::field::{ComplexField, SampleGrid};
use crate::fourier::{alternating, Plans};

/// Imaginary residue tolerated (relative to the peak) before it is discarded.
const IMAG_TOL: f64 = 1e-10;

pub fn wigner(field: &ComplexField) -> Result<WignerMap> {
    let n = field.grid().len();
    wigner_row_span(field, 0, 2 * n - 2)
}

/// Rows with `q_lo <= q <= q_hi` only.
pub fn wigner_window(field: &ComplexField, q_lo: f64, q_hi: f64) -> Result<WignerMap> {
    let (first, last) = row_span(field, q_lo, q_hi)?;
    wigner_row_span(field, first, last)
}

pub(crate) fn row_span(field: &ComplexField, q_lo: f64, q_hi: f64) -> Result<(usize, usize)> {
    let grid = field.grid();
    let half = grid.dt() / 2.0;
    let max_row = 2 * grid.len() - 2;
    let first = ((q_lo - grid.t_start()) / half - 1e-9).ceil().max(0.0) as usize;
    let last_f = ((q_hi - grid.t_start()) / half + 1e-9).floor();
    if !(q_lo <= q_hi) || last_f < 0.0 || first > max_row {
        return Err(Error::Domain(format!(
            "position range [{q_lo}, {q_hi}] ps does not intersect the grid"
        )));
    }
    let last = (last_f as usize).min(max_row);
    if first > last {
        return Err(Error::Domain(format!(
            "position range [{q_lo}, {q_hi}] ps holds no half-step sample"
        )));
    }
    Ok((first, last))
}

pub(crate) fn q_of_row(field: &ComplexField, row: usize) -> f64 {
    field.grid().t_start() + row as f64 * field.grid().dt() / 2.0
}

/// Momentum nodes `p_j = (j - N/2)·π/(N·dt)` of a Wigner map on `grid`.
pub fn wigner_momenta(grid: &SampleGrid) -> Vec<f64> {
    let n = grid.len();
    let dp = PI / (n as f64 * grid.dt());
    (0..n).map(|j| (j as f64 - (n / 2) as f64) * dp).collect()
}

/// Index range of `a` for the pairs `a + b = row`, `0 <= a, b < n`.
pub(crate) fn pair_range(row: usize, n: usize) -> std::ops::RangeInclusive<usize> {
    row.saturating_sub(n - 1)..=row.min(n - 1)
}

fn wigner_row_span(field: &ComplexField, first: usize, last: usize) -> Result<WignerMap> {
    let grid = *field.grid();
    let n = grid.len();
    let dt = grid.dt();
    let samples = field.samples();
    let p = wigner_momenta(field.grid());
    let plans = Plans::new(n);

    let rows: Vec<(Vec<f64>, f64, f64)> = (first..=last)
        .into_par_iter()
        .map(|row| {
            let parity = row % 2;
            let mut buf = vec![Complex64::new(0.0, 0.0); n];
            for a in pair_range(row, n) {
                let b = row - a;
                // b - a = 2k + parity
                let k = (b as isize - a as isize - parity as isize) / 2;
                let slot = k.rem_euclid(n as isize) as usize;
                buf[slot] = samples[a].conj() * samples[b] * alternating(k.unsigned_abs());
            }
            plans.plus_in_place(&mut buf);
            let mut max_re: f64 = 0.0;
            let mut max_im: f64 = 0.0;
            let values = buf
                .iter()
                .zip(&p)
                .map(|(s, &pj)| {
                    let v = s * Complex64::from_polar(dt / PI, parity as f64 * dt * pj);
                    max_re = max_re.max(v.re.abs());
                    max_im = max_im.max(v.im.abs());
                    v.re
                })
                .collect();
            (values, max_re, max_im)
        })
        .collect();

    let peak = rows.iter().fold(0.0_f64, |m, r| m.max(r.1));
    let residue = rows.iter().fold(0.0_f64, |m, r| m.max(r.2));
    if residue > IMAG_TOL * peak.max(f64::MIN_POSITIVE) {
        return Err(Error::Numerical(format!(
            "Wigner imaginary residue {residue:e} exceeds {IMAG_TOL:e} of the peak {peak:e}"
        )));
    }
    let q = (first..=last).map(|r| q_of_row(field, r)).collect();
    let values = rows.into_iter().flat_map(|r| r.0).collect();
    WignerMap::new(q, p, values, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{gaussian_pulse, PulseSpec, SampleGrid};
    use crate::transforms::PhaseSpaceMap;

    fn unit_gaussian(grid: &SampleGrid, center: f64, carrier: f64) -> ComplexField {
        // F(q) = π^{-1/4} e^{-q²/2}: σ = 1
        gaussian_pulse(grid, &PulseSpec::new(center, carrier, 1.0))
            .unwrap()
            .normalized()
            .unwrap()
    }

    #[test]
    fn gaussian_matches_closed_form() {
        let g = SampleGrid::centered(256, 0.1).unwrap();
        let w = wigner(&unit_gaussian(&g, 0.0, 0.0)).unwrap();
        let mut worst: f64 = 0.0;
        for (i, &q) in w.q_axis().iter().enumerate() {
            for (j, &p) in w.p_axis().iter().enumerate() {
                let exact = (-q * q - p * p).exp() / PI;
                worst = worst.max((w.get(i, j) - exact).abs());
            }
        }
        assert!(worst < 1e-12, "worst {worst}");
    }

    #[test]
    fn carrier_sign_follows_spectrum() {
        let g = SampleGrid::centered(256, 0.1).unwrap();
        let w = wigner(&unit_gaussian(&g, 0.0, 3.0)).unwrap();
        let (mut best, mut at) = (f64::MIN, 0.0);
        for (j, &p) in w.p_axis().iter().enumerate() {
            let v = w.get(g.len() - 1, j);
            if v > best {
                best = v;
                at = p;
            }
        }
        assert!((at - 3.0).abs() <= 0.5 * (w.p_axis()[1] - w.p_axis()[0]) + 1e-12);
    }

    #[test]
    fn window_rows_match_full_map() {
        let g = SampleGrid::centered(128, 0.1).unwrap();
        let f = unit_gaussian(&g, 0.3, 1.0);
        let full = wigner(&f).unwrap();
        let part = wigner_window(&f, -0.5, 0.5).unwrap();
        assert_eq!(part.q_axis().len(), 21);
        let offset = full
            .q_axis()
            .iter()
            .position(|&q| (q - part.q_axis()[0]).abs() < 1e-12)
            .unwrap();
        for i in 0..part.q_axis().len() {
            assert_eq!(part.row(i), full.row(offset + i));
        }
    }

    #[test]
    fn window_outside_grid_is_rejected() {
        let g = SampleGrid::centered(128, 0.1).unwrap();
        let f = unit_gaussian(&g, 0.0, 0.0);
        assert!(matches!(wigner_window(&f, 10.0, 11.0), Err(Error::Domain(_))));
    }
}
