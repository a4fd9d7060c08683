use crate::error::{Error, Result};
use crate::transforms::{PhaseSpaceMap, Spectrogram};

/// Pearson correlation of two traces after peak normalization.
///
/// `b` is resampled bilinearly onto the nodes of `a` that fall inside the
/// overlap of both maps' axis ranges.
pub fn compare_maps(a: &Spectrogram, b: &Spectrogram) -> Result<f64> {
    let overlap = |x: &[f64], y: &[f64]| {
        let lo = x[0].max(y[0]);
        let hi = x[x.len() - 1].min(y[y.len() - 1]);
        (lo <= hi).then_some((lo, hi))
    };
    let (t_lo, t_hi) = overlap(a.tau_axis(), b.tau_axis())
        .ok_or_else(|| Error::Domain("the maps' delay ranges do not overlap".into()))?;
    let (w_lo, w_hi) = overlap(a.omega_axis(), b.omega_axis())
        .ok_or_else(|| Error::Domain("the maps' frequency ranges do not overlap".into()))?;
    let (pa, pb) = (a.max_abs(), b.max_abs());
    if pa == 0.0 || pb == 0.0 {
        return Err(Error::Numerical("cannot compare an all-zero map".into()));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, &t) in a.tau_axis().iter().enumerate() {
        if t < t_lo || t > t_hi {
            continue;
        }
        for (j, &w) in a.omega_axis().iter().enumerate() {
            if w < w_lo || w > w_hi {
                continue;
            }
            if let Some(v) = b.sample(t, w) {
                xs.push(a.get(i, j) / pa);
                ys.push(v / pb);
            }
        }
    }
    if xs.len() < 2 {
        return Err(Error::Domain("the maps share fewer than two grid nodes".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(&ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Numerical(
            "a map is constant over the common region; correlation is undefined".into(),
        ));
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blob(shift: f64, lo: f64) -> Spectrogram {
        let tau: Vec<f64> = (0..21).map(|k| lo + k as f64 * 0.1).collect();
        let omega: Vec<f64> = (0..21).map(|k| -1.0 + k as f64 * 0.1).collect();
        let values = tau
            .iter()
            .flat_map(|t| omega.iter().map(move |w| (-(t - shift).powi(2) - w * w).exp()))
            .collect();
        Spectrogram::new(tau, omega, values, 1.0).unwrap()
    }

    #[test]
    fn self_similarity_is_one() {
        let a = blob(0.0, -1.0);
        assert!((compare_maps(&a, &a).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_axes_rejected() {
        assert!(matches!(
            compare_maps(&blob(0.0, -1.0), &blob(0.0, 5.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn shifted_copy_scores_lower() {
        let s = compare_maps(&blob(0.0, -1.0), &blob(0.5, -1.0)).unwrap();
        assert!(s < 1.0 && s > 0.0);
    }
}
