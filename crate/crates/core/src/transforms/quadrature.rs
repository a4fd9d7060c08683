//! Direct-summation evaluation of the FROG and Wigner integrals.
//!
//! Slow (`O(N²)` per map row) and deliberately free of FFTs, so it can act as
//! an independent check on the fast paths. Any ω or p axis may be requested.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::wigner::{pair_range, q_of_row, row_span};
use super::{Spectrogram, WignerMap};
use crate::error::Result;
use crate::field::ComplexField;

/// `|Σ_j E(t_j) E(t_j - τ) e^{iωt_j} dt|²` for every delay and frequency.
pub fn quadrature_oracle_frog(field: &ComplexField, delays: &[f64], omegas: &[f64]) -> Result<Spectrogram> {
    let grid = *field.grid();
    let shifts = delays
        .iter()
        .map(|&tau| grid.shift_of(tau))
        .collect::<Result<Vec<_>>>()?;
    let n = grid.len();
    let samples = field.samples();
    let dt = grid.dt();
    // phasors[m][j] = e^{iω_m t_j}
    let phasors: Vec<Vec<Complex64>> = omegas
        .par_iter()
        .map(|&w| grid.times().map(|t| Complex64::cis(w * t)).collect())
        .collect();
    let rows: Vec<Vec<f64>> = shifts
        .par_iter()
        .map(|&shift| {
            let lo = shift.max(0) as usize;
            let hi = (n as isize + shift.min(0)) as usize;
            phasors
                .iter()
                .map(|ph| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for j in lo..hi {
                        acc += samples[j] * samples[(j as isize - shift) as usize] * ph[j];
                    }
                    (acc * dt).norm_sqr()
                })
                .collect()
        })
        .collect();
    Spectrogram::new(delays.to_vec(), omegas.to_vec(), rows.concat(), 1.0)
}

/// `(1/π) Σ_ξ e^{2iξp} E*(q-ξ) E(q+ξ) dt` on the half-step rows inside
/// `[q_lo, q_hi]` and the requested momenta.
pub fn quadrature_oracle_wigner(field: &ComplexField, q_lo: f64, q_hi: f64, momenta: &[f64]) -> Result<WignerMap> {
    let (first, last) = row_span(field, q_lo, q_hi)?;
    let grid = *field.grid();
    let n = grid.len();
    let samples = field.samples();
    let norm = grid.dt() / PI;
    let rows: Vec<(f64, Vec<f64>)> = (first..=last)
        .into_par_iter()
        .map(|row| {
            let pairs: Vec<(f64, Complex64)> = pair_range(row, n)
                .map(|a| {
                    let b = row - a;
                    let xi = 0.5 * (grid.time(b) - grid.time(a));
                    (xi, samples[a].conj() * samples[b])
                })
                .collect();
            let values = momenta
                .iter()
                .map(|&p| {
                    let acc: f64 = pairs
                        .iter()
                        .map(|&(xi, prod)| (prod * Complex64::cis(2.0 * xi * p)).re)
                        .sum();
                    acc * norm
                })
                .collect();
            (q_of_row(field, row), values)
        })
        .collect();
    let q = rows.iter().map(|r| r.0).collect();
    let values = rows.into_iter().flat_map(|r| r.1).collect();
    WignerMap::new(q, momenta.to_vec(), values, 1.0)
}
