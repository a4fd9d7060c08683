use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance on axis-step uniformity.
const UNIFORM_TOL: f64 = 1e-6;

/// Common read access to two-dimensional phase-space maps.
///
/// Rows run along the time-like axis (delay τ or position q), columns along the
/// frequency-like axis (ω or p). Values are stored row-major.
pub trait PhaseSpaceMap {
    fn time_axis(&self) -> &[f64];
    fn freq_axis(&self) -> &[f64];
    fn values(&self) -> &[f64];
    /// Whether values may be negative.
    fn is_signed(&self) -> bool;

    fn dims(&self) -> (usize, usize) {
        (self.time_axis().len(), self.freq_axis().len())
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        self.values()[i * self.freq_axis().len() + j]
    }

    /// Values along the frequency axis at time index `i`.
    fn row(&self, i: usize) -> &[f64] {
        let m = self.freq_axis().len();
        &self.values()[i * m..(i + 1) * m]
    }

    /// Values along the time axis at frequency index `j`.
    fn column(&self, j: usize) -> Vec<f64> {
        let m = self.freq_axis().len();
        (0..self.time_axis().len()).map(|i| self.values()[i * m + j]).collect()
    }

    /// Bilinear interpolation; exact on grid nodes. `None` outside the map.
    fn sample(&self, t: f64, w: f64) -> Option<f64> {
        let (i0, fi) = locate(self.time_axis(), t)?;
        let (j0, fj) = locate(self.freq_axis(), w)?;
        let (n, m) = self.dims();
        let i1 = (i0 + 1).min(n - 1);
        let j1 = (j0 + 1).min(m - 1);
        let v00 = self.get(i0, j0);
        let v01 = self.get(i0, j1);
        let v10 = self.get(i1, j0);
        let v11 = self.get(i1, j1);
        Some(v00 * (1.0 - fi) * (1.0 - fj) + v01 * (1.0 - fi) * fj + v10 * fi * (1.0 - fj) + v11 * fi * fj)
    }

    fn max_abs(&self) -> f64 {
        self.values().iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Lower node index and fractional offset of `x` on a uniform ascending axis.
/// Offsets within `1e-9` of a node snap to it.
pub(crate) fn locate(axis: &[f64], x: f64) -> Option<(usize, f64)> {
    let n = axis.len();
    if n == 0 || !x.is_finite() {
        return None;
    }
    if n == 1 {
        return ((x - axis[0]).abs() <= 1e-12 * axis[0].abs().max(1.0)).then_some((0, 0.0));
    }
    let step = (axis[n - 1] - axis[0]) / (n - 1) as f64;
    let pos = (x - axis[0]) / step;
    let nearest = pos.round();
    let pos = if (pos - nearest).abs() < 1e-9 { nearest } else { pos };
    if pos < 0.0 || pos > (n - 1) as f64 {
        return None;
    }
    let i0 = (pos.floor() as usize).min(n - 1);
    let frac = pos - i0 as f64;
    if i0 == n - 1 {
        Some((i0, 0.0))
    } else {
        Some((i0, frac))
    }
}

pub(crate) fn check_axis(name: &str, axis: &[f64]) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::Data(format!("{name} axis is empty")));
    }
    if axis.iter().any(|v| !v.is_finite()) {
        return Err(Error::Data(format!("{name} axis has non-finite entries")));
    }
    if axis.len() < 2 {
        return Ok(());
    }
    let step = (axis[axis.len() - 1] - axis[0]) / (axis.len() - 1) as f64;
    if step <= 0.0 {
        return Err(Error::Data(format!("{name} axis must be strictly increasing")));
    }
    for (k, pair) in axis.windows(2).enumerate() {
        let d = pair[1] - pair[0];
        if d <= 0.0 {
            return Err(Error::Data(format!(
                "{name} axis is not strictly increasing at entry {}",
                k + 1
            )));
        }
        if (d - step).abs() > UNIFORM_TOL * step {
            return Err(Error::Data(format!("{name} axis is not uniform at entry {}", k + 1)));
        }
    }
    Ok(())
}

fn check_values(rows: usize, cols: usize, values: &[f64]) -> Result<()> {
    if values.len() != rows * cols {
        return Err(Error::Data(format!(
            "map holds {} values but its axes define {rows} × {cols}",
            values.len()
        )));
    }
    if let Some(k) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::Data(format!("map value {k} is not finite")));
    }
    Ok(())
}

/// Non-negative intensity map over delay τ (ps) and angular frequency ω (rad/ps).
///
/// The ω axis is relative to the second-harmonic reference, twice the field's
/// reference carrier. Physical values are `values × scale`; freshly computed
/// maps carry `scale = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrogram {
    tau: Vec<f64>,
    omega: Vec<f64>,
    values: Vec<f64>,
    scale: f64,
}

impl Spectrogram {
    pub fn new(tau: Vec<f64>, omega: Vec<f64>, values: Vec<f64>, scale: f64) -> Result<Self> {
        check_axis("tau", &tau)?;
        check_axis("omega", &omega)?;
        check_values(tau.len(), omega.len(), &values)?;
        if let Some(k) = values.iter().position(|&v| v < 0.0) {
            return Err(Error::Data(format!("spectrogram value {k} is negative")));
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::Data(format!("scale {scale} must be positive")));
        }
        Ok(Spectrogram {
            tau,
            omega,
            values,
            scale,
        })
    }

    pub fn tau_axis(&self) -> &[f64] {
        &self.tau
    }

    pub fn omega_axis(&self) -> &[f64] {
        &self.omega
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Copy with unit peak; `scale` absorbs the old peak.
    pub fn normalized(&self) -> Spectrogram {
        let peak = self.max_abs();
        if peak == 0.0 {
            return self.clone();
        }
        Spectrogram {
            tau: self.tau.clone(),
            omega: self.omega.clone(),
            values: self.values.iter().map(|v| v / peak).collect(),
            scale: self.scale * peak,
        }
    }

    /// Sub-map restricted to `tau_range × omega_range` (inclusive).
    pub fn crop(&self, tau_range: (f64, f64), omega_range: (f64, f64)) -> Result<Spectrogram> {
        let (tau, omega, values) = crop_parts(self, tau_range, omega_range)?;
        Spectrogram::new(tau, omega, values, self.scale)
    }
}

type Parts = (Vec<f64>, Vec<f64>, Vec<f64>);

fn crop_parts<M: PhaseSpaceMap>(map: &M, t_range: (f64, f64), w_range: (f64, f64)) -> Result<Parts> {
    let (ti, tj) = index_span(map.time_axis(), t_range)
        .ok_or_else(|| Error::Domain("time range does not intersect the map".into()))?;
    let (wi, wj) = index_span(map.freq_axis(), w_range)
        .ok_or_else(|| Error::Domain("frequency range does not intersect the map".into()))?;
    let values = (ti..=tj).flat_map(|i| map.row(i)[wi..=wj].iter().copied()).collect();
    Ok((
        map.time_axis()[ti..=tj].to_vec(),
        map.freq_axis()[wi..=wj].to_vec(),
        values,
    ))
}

fn index_span(axis: &[f64], (lo, hi): (f64, f64)) -> Option<(usize, usize)> {
    let first = axis.iter().position(|&x| x >= lo)?;
    let last = axis.iter().rposition(|&x| x <= hi)?;
    (first <= last).then_some((first, last))
}

impl PhaseSpaceMap for Spectrogram {
    fn time_axis(&self) -> &[f64] {
        &self.tau
    }
    fn freq_axis(&self) -> &[f64] {
        &self.omega
    }
    fn values(&self) -> &[f64] {
        &self.values
    }
    fn is_signed(&self) -> bool {
        false
    }
}

/// Signed Wigner distribution over position-like q (ps) and momentum-like
/// p (rad/ps), ħ = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerMap {
    q: Vec<f64>,
    p: Vec<f64>,
    values: Vec<f64>,
    scale: f64,
}

impl WignerMap {
    pub fn new(q: Vec<f64>, p: Vec<f64>, values: Vec<f64>, scale: f64) -> Result<Self> {
        check_axis("q", &q)?;
        check_axis("p", &p)?;
        check_values(q.len(), p.len(), &values)?;
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::Data(format!("scale {scale} must be positive")));
        }
        Ok(WignerMap { q, p, values, scale })
    }

    pub fn q_axis(&self) -> &[f64] {
        &self.q
    }

    pub fn p_axis(&self) -> &[f64] {
        &self.p
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Copy with unit peak magnitude; `scale` absorbs the old peak.
    pub fn normalized(&self) -> WignerMap {
        let peak = self.max_abs();
        if peak == 0.0 {
            return self.clone();
        }
        WignerMap {
            q: self.q.clone(),
            p: self.p.clone(),
            values: self.values.iter().map(|v| v / peak).collect(),
            scale: self.scale * peak,
        }
    }

    /// Sub-map restricted to `q_range × p_range` (inclusive).
    pub fn crop(&self, q_range: (f64, f64), p_range: (f64, f64)) -> Result<WignerMap> {
        let (q, p, values) = crop_parts(self, q_range, p_range)?;
        WignerMap::new(q, p, values, self.scale)
    }

    /// `Σ_p W(q, p)·dp` for every q.
    pub fn position_marginal(&self) -> Vec<f64> {
        let dp = axis_step(&self.p);
        (0..self.q.len())
            .map(|i| self.row(i).iter().sum::<f64>() * dp * self.scale)
            .collect()
    }

    /// `Σ_q W(q, p)·dq` for every p.
    pub fn momentum_marginal(&self) -> Vec<f64> {
        let dq = axis_step(&self.q);
        let m = self.p.len();
        let mut out = vec![0.0; m];
        for i in 0..self.q.len() {
            out.iter_mut()
                .zip(&self.values[i * m..(i + 1) * m])
                .for_each(|(acc, v)| *acc += v);
        }
        out.iter().map(|v| v * dq * self.scale).collect()
    }
}

pub(crate) fn axis_step(axis: &[f64]) -> f64 {
    if axis.len() < 2 {
        return 0.0;
    }
    (axis[axis.len() - 1] - axis[0]) / (axis.len() - 1) as f64
}

impl PhaseSpaceMap for WignerMap {
    fn time_axis(&self) -> &[f64] {
        &self.q
    }
    fn freq_axis(&self) -> &[f64] {
        &self.p
    }
    fn values(&self) -> &[f64] {
        &self.values
    }
    fn is_signed(&self) -> bool {
        true
    }
}
