//! Gaussian pulses and four-pulse compass superpositions.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{ComplexField, SampleGrid};
use crate::error::{Error, Result};

/// Default Gaussian width parameter (ps) for synthesized pulses.
pub const DEFAULT_SIGMA: f64 = 0.35;

/// Half angular-frequency separation of the experimental compass states,
/// `ω₀ = π · 3.3 THz` in rad/ps.
pub const DEFAULT_OMEGA0: f64 = PI * 3.3;

/// Number of widths a pulse must keep clear of the grid limits.
const SPAN_WIDTHS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PulseSpec {
    /// ps
    pub center_time: f64,
    /// rad/ps relative to the reference carrier
    pub center_ang_freq: f64,
    /// ps
    pub sigma: f64,
    pub amplitude: f64,
    /// rad
    pub phase: f64,
}

impl PulseSpec {
    pub fn new(center_time: f64, center_ang_freq: f64, sigma: f64) -> Self {
        PulseSpec {
            center_time,
            center_ang_freq,
            sigma,
            amplitude: 1.0,
            phase: 0.0,
        }
    }

    pub fn with_amplitude(mut self, amplitude: f64) -> Self {
        self.amplitude = amplitude;
        self
    }

    pub fn with_phase(mut self, phase: f64) -> Self {
        self.phase = phase;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = [
            self.center_time,
            self.center_ang_freq,
            self.sigma,
            self.amplitude,
            self.phase,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::Config("pulse parameters must be finite".into()));
        }
        if self.sigma <= 0.0 {
            return Err(Error::Config(format!("pulse width {} ps must be positive", self.sigma)));
        }
        if self.amplitude < 0.0 {
            return Err(Error::Config(format!(
                "pulse amplitude {} must be non-negative",
                self.amplitude
            )));
        }
        Ok(())
    }

    /// Checks that the pulse, including `5σ` in time and `5/σ` in frequency,
    /// fits on the grid without aliasing its quadratic products.
    pub fn check_span(&self, grid: &SampleGrid) -> Result<()> {
        let reach_t = SPAN_WIDTHS * self.sigma;
        if self.center_time - reach_t < grid.t_start() || self.center_time + reach_t > grid.t_end() {
            return Err(Error::Synthesis(format!(
                "pulse at {} ps with width {} ps needs [{}, {}] ps but the grid covers [{}, {}] ps",
                self.center_time,
                self.sigma,
                self.center_time - reach_t,
                self.center_time + reach_t,
                grid.t_start(),
                grid.t_end()
            )));
        }
        let reach_w = self.center_ang_freq.abs() + SPAN_WIDTHS / self.sigma;
        if reach_w > grid.alias_free_band() {
            return Err(Error::Synthesis(format!(
                "carrier {} rad/ps with bandwidth 5/σ = {} rad/ps exceeds the alias-free band ±{} rad/ps; reduce dt",
                self.center_ang_freq,
                SPAN_WIDTHS / self.sigma,
                grid.alias_free_band()
            )));
        }
        Ok(())
    }

    fn sample(&self, t: f64) -> Complex64 {
        let x = t - self.center_time;
        let envelope = self.amplitude * (-x * x / (2.0 * self.sigma * self.sigma)).exp();
        Complex64::from_polar(envelope, -self.center_ang_freq * t + self.phase)
    }
}

/// `a·exp(-(t - t_c)²/(2σ²))·exp(-i ω_c t + i φ)` sampled on the grid.
pub fn gaussian_pulse(grid: &SampleGrid, spec: &PulseSpec) -> Result<ComplexField> {
    spec.validate()?;
    spec.check_span(grid)?;
    let samples: Vec<Complex64> = grid.times().map(|t| spec.sample(t)).collect();
    let field = ComplexField::new(*grid, samples)?;
    if !(field.energy() > 0.0) {
        return Err(Error::Synthesis("pulse has zero energy".into()));
    }
    Ok(field)
}

/// Four Gaussians at `(±t₀, ±ω₀)`.
///
/// Amplitudes and phases are indexed in the order
/// `(+t₀, -ω₀), (-t₀, -ω₀), (+t₀, +ω₀), (-t₀, +ω₀)`: the first two share one
/// carrier and form a cat pair, the last two share the other.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompassSpec {
    /// Half time separation, ps.
    pub t0: f64,
    /// Half angular-frequency separation, rad/ps.
    pub omega0: f64,
    /// Common width, ps.
    pub sigma: f64,
    pub amplitudes: [f64; 4],
    pub phases: [f64; 4],
}

impl CompassSpec {
    pub const LAYOUT: [(f64, f64); 4] = [(1.0, -1.0), (-1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];

    pub fn new(t0: f64, omega0: f64, sigma: f64) -> Self {
        CompassSpec {
            t0,
            omega0,
            sigma,
            amplitudes: [1.0; 4],
            phases: [0.0; 4],
        }
    }

    /// Equal-amplitude state with the experiment's default frequency split and width.
    pub fn with_t0(t0: f64) -> Self {
        Self::new(t0, DEFAULT_OMEGA0, DEFAULT_SIGMA)
    }

    pub fn with_amplitudes(mut self, amplitudes: [f64; 4]) -> Self {
        self.amplitudes = amplitudes;
        self
    }

    pub fn with_phases(mut self, phases: [f64; 4]) -> Self {
        self.phases = phases;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if !(self.t0.is_finite() && self.t0 > 0.0) {
            problems.push(format!("t0 = {} ps must be positive", self.t0));
        }
        if !(self.omega0.is_finite() && self.omega0 > 0.0) {
            problems.push(format!("omega0 = {} rad/ps must be positive", self.omega0));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            problems.push(format!("sigma = {} ps must be positive", self.sigma));
        }
        if self.amplitudes.iter().any(|a| !(a.is_finite() && *a >= 0.0)) {
            problems.push("amplitudes must be finite and non-negative".into());
        } else if self.amplitudes.iter().all(|&a| a == 0.0) {
            problems.push("at least one amplitude must be positive".into());
        }
        if self.phases.iter().any(|p| !p.is_finite()) {
            problems.push("phases must be finite".into());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems.join("; ")))
        }
    }

    pub fn pulses(&self) -> [PulseSpec; 4] {
        std::array::from_fn(|k| {
            let (s, r) = Self::LAYOUT[k];
            PulseSpec::new(s * self.t0, r * self.omega0, self.sigma)
                .with_amplitude(self.amplitudes[k])
                .with_phase(self.phases[k])
        })
    }

    pub fn check_span(&self, grid: &SampleGrid) -> Result<()> {
        self.validate()?;
        for p in self.pulses() {
            p.check_span(grid)?;
        }
        Ok(())
    }

    /// `t₀·ω₀`; the central chessboard cells drop below ½ once this exceeds `2π²`.
    pub fn separation_product(&self) -> f64 {
        self.t0 * self.omega0
    }
}

/// Coherent sum of the four pulses, normalized to unit energy.
pub fn compass_state(grid: &SampleGrid, spec: &CompassSpec) -> Result<ComplexField> {
    spec.check_span(grid)?;
    let mut sum = vec![Complex64::new(0.0, 0.0); grid.len()];
    for pulse in spec.pulses().iter().filter(|p| p.amplitude > 0.0) {
        let field = gaussian_pulse(grid, pulse)?;
        sum.iter_mut().zip(field.samples()).for_each(|(acc, s)| *acc += s);
    }
    ComplexField::new(*grid, sum)?.normalized()
}

/// Preconditions of [`chirped_gaussian`], without synthesizing anything.
pub fn check_chirped_span(grid: &SampleGrid, sigma: f64, chirp: f64) -> Result<()> {
    let base = PulseSpec::new(0.0, 0.0, sigma);
    base.validate()?;
    base.check_span(grid)?;
    if !chirp.is_finite() {
        return Err(Error::Config(format!("chirp {chirp} must be finite")));
    }
    // instantaneous frequency reaches 2·chirp·5σ at the pulse edge
    if 2.0 * chirp.abs() * SPAN_WIDTHS * sigma + SPAN_WIDTHS / sigma > grid.alias_free_band() {
        return Err(Error::Synthesis(format!(
            "chirp {chirp} rad/ps² sweeps beyond the alias-free band ±{} rad/ps",
            grid.alias_free_band()
        )));
    }
    Ok(())
}

/// Linearly chirped Gaussian `exp(-t²/(2σ²))·exp(-i·chirp·t²)`, unit energy.
///
/// `sigma = 1/√2, chirp = 1` gives `exp(-(1 + i)t²)`.
pub fn chirped_gaussian(grid: &SampleGrid, sigma: f64, chirp: f64) -> Result<ComplexField> {
    check_chirped_span(grid, sigma, chirp)?;
    let samples = grid
        .times()
        .map(|t| Complex64::from_polar((-t * t / (2.0 * sigma * sigma)).exp(), -chirp * t * t))
        .collect();
    ComplexField::new(*grid, samples)?.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn grid() -> SampleGrid {
        SampleGrid::centered(1024, 0.02).unwrap()
    }

    #[test]
    fn unit_width_convention_gives_exp_minus_t_squared() {
        let g = grid();
        let f = gaussian_pulse(&g, &PulseSpec::new(0.0, 0.0, FRAC_1_SQRT_2)).unwrap();
        for (t, s) in g.times().zip(f.samples()) {
            assert!((s.re - (-t * t).exp()).abs() < 1e-15);
            assert_eq!(s.im, 0.0);
        }
    }

    #[test]
    fn zero_amplitude_is_rejected() {
        let spec = PulseSpec::new(0.0, 0.0, 0.3).with_amplitude(0.0);
        assert!(matches!(gaussian_pulse(&grid(), &spec), Err(Error::Synthesis(_))));
    }

    #[test]
    fn offset_pulse_peaks_in_time_and_frequency() {
        let g = grid();
        let spec = PulseSpec::new(2.0, 10.367, 0.3);
        let f = gaussian_pulse(&g, &spec).unwrap();
        let (_, t_peak) = f.peak();
        assert!((t_peak - 2.0).abs() < 1e-12);
        let spectrum = f.spectrum();
        let j = (0..spectrum.len())
            .max_by(|&a, &b| spectrum[a].norm().total_cmp(&spectrum[b].norm()))
            .unwrap();
        assert!((g.omega(j) - 10.367).abs() <= g.d_omega());
    }

    #[test]
    fn span_violation_names_the_carrier() {
        let g = SampleGrid::centered(1024, 0.1).unwrap();
        let err = gaussian_pulse(&g, &PulseSpec::new(0.0, 14.0, 0.3)).unwrap_err();
        match err {
            Error::Synthesis(msg) => assert!(msg.contains("carrier 14"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        let err = gaussian_pulse(&g, &PulseSpec::new(50.0, 0.0, 0.3)).unwrap_err();
        assert!(matches!(err, Error::Synthesis(_)));
    }

    #[test]
    fn compass_is_unit_energy() {
        let f = compass_state(&grid(), &CompassSpec::with_t0(2.0)).unwrap();
        assert!((f.energy() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn compass_validation_aggregates_problems() {
        let spec = CompassSpec::new(-1.0, 0.0, 0.3).with_amplitudes([0.0; 4]);
        match spec.validate() {
            Err(Error::Config(msg)) => {
                assert!(msg.contains("t0"));
                assert!(msg.contains("omega0"));
                assert!(msg.contains("amplitude"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn chirped_gaussian_rejects_excessive_chirp() {
        let g = SampleGrid::centered(256, 0.1).unwrap();
        assert!(chirped_gaussian(&g, FRAC_1_SQRT_2, 1.0).is_ok());
        assert!(chirped_gaussian(&g, FRAC_1_SQRT_2, 20.0).is_err());
    }
}
