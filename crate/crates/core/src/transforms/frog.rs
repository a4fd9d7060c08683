//! Second-harmonic FROG trace, `I(τ, ω) = |∫ E(t) E(t-τ) e^{iωt} dt|²`.

use num_complex::Complex64;
use rayon::prelude::*;

use super::Spectrogram;
use crate::error::Result;
use crate::field::{ComplexField, SampleGrid};
use crate::fourier::{alternating, Plans};

/// Gate product `E(t_j)·E(t_j - τ)` for an integer sample shift; zero where the
/// shifted copy leaves the grid.
pub(crate) fn gate_product(samples: &[Complex64], shift: isize) -> Vec<Complex64> {
    let n = samples.len() as isize;
    (0..n)
        .map(|j| {
            let k = j - shift;
            if (0..n).contains(&k) {
                samples[j as usize] * samples[k as usize]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect()
}

/// Product-then-FFT evaluation on the grid's conjugate frequency axis.
///
/// Delays must be multiples of the grid step and form a uniform ascending
/// list. Columns are independent and computed in parallel; each one is
/// summed in a fixed order, so the result does not depend on thread count.
pub fn shg_frog(field: &ComplexField, delays: &[f64]) -> Result<Spectrogram> {
    let grid = *field.grid();
    let shifts = delays
        .iter()
        .map(|&tau| grid.shift_of(tau))
        .collect::<Result<Vec<_>>>()?;
    let plans = Plans::new(grid.len());
    let dt2 = grid.dt() * grid.dt();
    let samples = field.samples();
    let rows: Vec<Vec<f64>> = shifts
        .par_iter()
        .map(|&shift| {
            let mut buf = gate_product(samples, shift);
            buf.iter_mut().enumerate().for_each(|(k, v)| *v *= alternating(k));
            plans.plus_in_place(&mut buf);
            buf.iter().map(|v| v.norm_sqr() * dt2).collect()
        })
        .collect();
    Spectrogram::new(delays.to_vec(), grid.omegas(), rows.concat(), 1.0)
}

/// Delays `k·step` for every integer `k` with `|k·step| <= reach`; `step` is
/// rounded to a whole number of grid samples.
pub fn symmetric_delays(grid: &SampleGrid, reach: f64, step: f64) -> Vec<f64> {
    let dt = grid.dt();
    let stride = (step / dt).round().max(1.0) as isize;
    let max_shift = (grid.len() as isize) - 1;
    let k_max = ((reach / dt + 1e-9).floor() as isize).min(max_shift) / stride;
    (-k_max..=k_max).map(|k| (k * stride) as f64 * dt).collect()
}
