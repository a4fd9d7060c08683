//! Agreement between the FROG trace and the squared Wigner map at half
//! coordinates, `I(τ, ω) ∝ |W(τ/2, ω/2)|²`.
//!
//! The relation holds for real envelopes with linear phase. On a grid
//! centered at zero the half coordinates of every FROG node are Wigner nodes,
//! so the comparison involves no interpolation error there.

use super::{shg_frog, wigner, wigner_window, PhaseSpaceMap, Spectrogram, WignerMap};
use crate::error::Result;
use crate::field::ComplexField;

#[derive(Debug, Clone)]
pub struct Correspondence {
    pub frog: Spectrogram,
    pub wigner: WignerMap,
    /// Max absolute difference of the peak-normalized sides.
    pub residual: f64,
}

pub fn correspondence_residual(field: &ComplexField) -> Result<f64> {
    Ok(correspondence(field)?.residual)
}

/// Both maps plus the residual. Only delays whose half value falls on the
/// Wigner position axis enter the comparison.
pub fn correspondence(field: &ComplexField) -> Result<Correspondence> {
    compare(field, wigner(field)?)
}

/// As [`correspondence`], with the Wigner side limited to `q_lo <= q <= q_hi`
/// and the FROG side to delays `2q` in the same range. Cheaper when the field
/// occupies a small part of its grid.
pub fn correspondence_within(field: &ComplexField, q_lo: f64, q_hi: f64) -> Result<Correspondence> {
    compare(field, wigner_window(field, q_lo, q_hi)?)
}

fn compare(field: &ComplexField, w: WignerMap) -> Result<Correspondence> {
    let q = w.q_axis();
    let (q_lo, q_hi) = (q[0], q[q.len() - 1]);
    let dt = field.grid().dt();
    let n = field.grid().len() as isize;
    let delays: Vec<f64> = (-(n - 1)..n)
        .map(|k| k as f64 * dt)
        .filter(|tau| tau / 2.0 >= q_lo - 1e-9 * dt && tau / 2.0 <= q_hi + 1e-9 * dt)
        .collect();
    let frog = shg_frog(field, &delays)?;

    let frog_peak = frog.max_abs();
    let squared: Vec<f64> = frog
        .tau_axis()
        .iter()
        .flat_map(|&tau| {
            let w = &w;
            frog.omega_axis()
                .iter()
                .map(move |&om| w.sample(tau / 2.0, om / 2.0).map_or(0.0, |v| v * v))
        })
        .collect();
    let w_peak = squared.iter().fold(0.0_f64, |m, &v| m.max(v));
    let residual = if frog_peak == 0.0 && w_peak == 0.0 {
        0.0
    } else {
        frog.values()
            .iter()
            .zip(&squared)
            .map(|(a, b)| (a / frog_peak - b / w_peak).abs())
            .fold(0.0, f64::max)
    };
    Ok(Correspondence {
        frog,
        wigner: w,
        residual,
    })
}
