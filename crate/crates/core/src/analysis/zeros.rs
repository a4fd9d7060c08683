use serde::{Deserialize, Serialize};

use super::CrossSection;
use crate::error::{Error, Result};

/// Threshold fraction for noise-free simulated maps.
///
/// A sampled zero of a squared interference term is never exactly zero: the
/// parabolic vertex through the three samples around it sits a few 1e-3
/// below the neighboring maxima at typical grid steps, so the threshold must
/// leave room for that.
pub const DEFAULT_NOISE_FLOOR_SIMULATED: f64 = 1e-2;
/// Threshold fraction for measured traces, which never reach zero.
pub const DEFAULT_NOISE_FLOOR_EXPERIMENTAL: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroMethod {
    SignChange,
    MinimumBelowThreshold,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub positions: Vec<f64>,
    pub method: ZeroMethod,
}

impl ZeroSet {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Gaps between consecutive zeros.
    pub fn spacings(&self) -> Vec<f64> {
        self.positions.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Zeros of a slice.
///
/// Signed slices report sign changes, linearly interpolated, after merging
/// away lobes whose peak is below `noise_floor` × the slice maximum.
/// Intensity slices report local minima that dip below `noise_floor` × the
/// smaller of the two flanking maxima, with flanks that are themselves above
/// `noise_floor` × the slice maximum.
pub fn find_zeros(section: &CrossSection, noise_floor: f64) -> Result<ZeroSet> {
    if section.len() < 3 {
        return Err(Error::Data(format!(
            "zero finding needs at least 3 samples, section has {}",
            section.len()
        )));
    }
    if !(0.0..1.0).contains(&noise_floor) {
        return Err(Error::Config(format!("noise floor {noise_floor} must lie in [0, 1)")));
    }
    if section.values().iter().any(|v| !v.is_finite()) {
        return Err(Error::Data("section contains non-finite values".into()));
    }
    Ok(if section.is_signed() {
        ZeroSet {
            positions: sign_changes(section.axis(), section.values(), noise_floor),
            method: ZeroMethod::SignChange,
        }
    } else {
        ZeroSet {
            positions: intensity_minima(section.axis(), section.values(), noise_floor),
            method: ZeroMethod::MinimumBelowThreshold,
        }
    })
}

struct Lobe {
    positive: bool,
    start: usize,
    end: usize,
    peak: f64,
}

fn sign_changes(x: &[f64], v: &[f64], noise_floor: f64) -> Vec<f64> {
    let mut lobes: Vec<Lobe> = Vec::new();
    for (k, &val) in v.iter().enumerate() {
        if val == 0.0 {
            continue;
        }
        let positive = val > 0.0;
        match lobes.last_mut() {
            Some(l) if l.positive == positive => {
                l.end = k;
                l.peak = l.peak.max(val.abs());
            }
            _ => lobes.push(Lobe {
                positive,
                start: k,
                end: k,
                peak: val.abs(),
            }),
        }
    }
    let global = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let cut = noise_floor * global;
    while lobes.len() > 1 {
        let Some((k, _)) = lobes
            .iter()
            .enumerate()
            .filter(|(_, l)| l.peak < cut)
            .min_by(|a, b| a.1.peak.total_cmp(&b.1.peak))
        else {
            break;
        };
        let lo = k.saturating_sub(1);
        let hi = (k + 1).min(lobes.len() - 1);
        // absorb the weak lobe into its neighbors, which share one sign
        let positive = if k == 0 {
            lobes[1].positive
        } else {
            lobes[k - 1].positive
        };
        let merged = Lobe {
            positive,
            start: lobes[lo].start,
            end: lobes[hi].end,
            peak: lobes[lo..=hi].iter().fold(0.0, |m, l| m.max(l.peak)),
        };
        lobes.splice(lo..=hi, [merged]);
    }
    lobes
        .windows(2)
        .map(|pair| {
            let (i, j) = (pair[0].end, pair[1].start);
            if j == i + 1 {
                x[i] + (x[j] - x[i]) * v[i] / (v[i] - v[j])
            } else {
                0.5 * (x[i + 1] + x[j - 1])
            }
        })
        .collect()
}

fn intensity_minima(x: &[f64], v: &[f64], noise_floor: f64) -> Vec<f64> {
    let n = v.len();
    let global = v.iter().fold(0.0_f64, |m, &a| m.max(a));
    let step = x[1] - x[0];
    let mut out = Vec::new();
    let mut s = 1;
    while s < n - 1 {
        // plateau [s, e] of equal values
        let mut e = s;
        while e + 1 < n && v[e + 1] == v[s] {
            e += 1;
        }
        let is_min = v[s - 1] > v[s] && e + 1 < n && v[e + 1] > v[e];
        if is_min {
            let floor = v[s];
            let left = (0..s)
                .rev()
                .take_while(|&k| v[k] >= floor)
                .fold(0.0_f64, |m, k| m.max(v[k]));
            let right = (e + 1..n)
                .take_while(|&k| v[k] >= floor)
                .fold(0.0_f64, |m, k| m.max(v[k]));
            let flank = left.min(right);
            let c = (s + e) / 2;
            let (y0, y1, y2) = (v[c - 1], v[c], v[c + 1]);
            let vertex = parabola_vertex(y0, y1, y2).max(0.0);
            if flank >= noise_floor * global && flank > 0.0 && vertex <= noise_floor * flank {
                let offset = if s == e {
                    amplitude_root(y0, y1, y2)
                } else {
                    0.5 * (s + e) as f64 - c as f64
                };
                out.push(x[c] + offset * step);
            }
        }
        s = e + 1;
    }
    out
}

/// Minimum value of the parabola through `(-1, a), (0, b), (1, c)`.
fn parabola_vertex(a: f64, b: f64, c: f64) -> f64 {
    let curv = 0.5 * (a + c) - b;
    if curv <= 0.0 {
        return b;
    }
    let slope = 0.5 * (c - a);
    b - slope * slope / (4.0 * curv)
}

/// Zero offset in `[-1, 1]` of the signed amplitude behind an intensity dip.
///
/// Near a zero the intensity is the square of an amplitude that changes sign,
/// so the square roots are unfolded with a sign flip on the far side of the
/// dip and a quadratic through them is solved for its root.
fn amplitude_root(a: f64, b: f64, c: f64) -> f64 {
    let (ra, rb, rc) = (a.max(0.0).sqrt(), b.max(0.0).sqrt(), c.max(0.0).sqrt());
    let (y0, y1, y2) = if a > c { (ra, rb, -rc) } else { (ra, -rb, -rc) };
    // y(s) = p s² + q s + r through s = -1, 0, 1
    let p = 0.5 * (y0 + y2) - y1;
    let q = 0.5 * (y2 - y0);
    let r = y1;
    let fallback = || {
        let curv = 0.5 * (a + c) - b;
        if curv > 0.0 {
            (0.25 * (a - c) / curv).clamp(-1.0, 1.0)
        } else {
            0.0
        }
    };
    let root = if p.abs() < 1e-14 * (q.abs() + r.abs()).max(f64::MIN_POSITIVE) {
        if q == 0.0 {
            return fallback();
        }
        -r / q
    } else {
        let disc = q * q - 4.0 * p * r;
        if disc < 0.0 {
            return fallback();
        }
        let sq = disc.sqrt();
        // numerically stable pair
        let t = -0.5 * (q + q.signum() * sq);
        let candidates = [t / p, if t != 0.0 { r / t } else { f64::INFINITY }];
        candidates
            .into_iter()
            .min_by(|x, y| x.abs().total_cmp(&y.abs()))
            .unwrap_or(0.0)
    };
    if root.is_finite() && root.abs() <= 1.0 {
        root
    } else {
        fallback()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Fixed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn section(x: Vec<f64>, v: Vec<f64>, signed: bool) -> CrossSection {
        CrossSection::new(x, v, Fixed::Frequency(0.0), signed).unwrap()
    }

    fn axis(n: usize, dx: f64) -> Vec<f64> {
        (0..n).map(|k| (k as f64 - (n / 2) as f64) * dx).collect()
    }

    #[test]
    fn cos_squared_zeros_are_located() {
        let w = std::f64::consts::PI * 3.3;
        let x = axis(201, 0.02);
        let v = x.iter().map(|t| (w * t).cos().powi(2)).collect();
        let z = find_zeros(&section(x, v, false), DEFAULT_NOISE_FLOOR_SIMULATED).unwrap();
        assert_eq!(z.method, ZeroMethod::MinimumBelowThreshold);
        for s in z.spacings() {
            assert!((s - std::f64::consts::PI / w).abs() < 2e-4, "spacing {s}");
        }
        let first = std::f64::consts::PI / (2.0 * w);
        assert!(z.positions.iter().any(|p| (p - first).abs() < 2e-4));
    }

    #[test]
    fn positive_gaussian_has_no_zeros() {
        let x = axis(101, 0.1);
        let v = x.iter().map(|t| (-t * t).exp()).collect();
        assert!(find_zeros(&section(x, v, false), 0.05).unwrap().is_empty());
    }

    #[test]
    fn noise_does_not_change_zero_count() {
        let w = 4.0;
        let x = axis(401, 0.01);
        let clean: Vec<f64> = x.iter().map(|t| (w * t).cos().powi(2)).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let noisy: Vec<f64> = clean
            .iter()
            .map(|v| (v + 0.01 * rng.gen_range(-1.0..1.0)).max(0.0))
            .collect();
        let a = find_zeros(&section(x.clone(), clean, false), 0.05).unwrap();
        let b = find_zeros(&section(x, noisy, false), 0.05).unwrap();
        assert_eq!(a.len(), b.len());
        assert!(a.len() >= 4);
    }

    #[test]
    fn signed_crossings_interpolate() {
        let x = axis(101, 0.05);
        let v = x.iter().map(|t| (2.0 * t).sin()).collect();
        let z = find_zeros(&section(x, v, true), 0.0).unwrap();
        assert_eq!(z.method, ZeroMethod::SignChange);
        assert!(z.positions.iter().any(|p| p.abs() < 1e-12));
        for s in z.spacings() {
            assert!((s - std::f64::consts::FRAC_PI_2).abs() < 5e-3);
        }
    }

    #[test]
    fn weak_lobes_are_merged() {
        let x = axis(9, 1.0);
        let v = vec![1.0, 1.0, 1e-6, -1e-6, 1e-6, 1.0, -1.0, -1.0, -1.0];
        let z = find_zeros(&section(x, v, true), 1e-3).unwrap();
        assert_eq!(z.len(), 1);
        assert!((z.positions[0] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn zero_runs_use_midpoint() {
        let x = axis(6, 1.0);
        let v = vec![1.0, 1.0, 0.0, 0.0, -1.0, -1.0];
        let z = find_zeros(&section(x, v, true), 0.0).unwrap();
        assert_eq!(z.positions, vec![-0.5]);
    }

    #[test]
    fn bad_inputs() {
        let s = section(vec![0.0, 1.0], vec![1.0, 1.0], false);
        assert!(matches!(find_zeros(&s, 0.1), Err(Error::Data(_))));
        let s = section(axis(5, 1.0), vec![1.0; 5], false);
        assert!(matches!(find_zeros(&s, 1.0), Err(Error::Config(_))));
    }
}
