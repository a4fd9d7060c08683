use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform time grid (ps) and its centered conjugate angular-frequency axis (rad/ps).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleGrid {
    n: usize,
    dt: f64,
    t_start: f64,
}

impl SampleGrid {
    pub const MIN_LEN: usize = 16;

    pub fn new(n: usize, dt: f64, t_start: f64) -> Result<Self> {
        if n < Self::MIN_LEN || !n.is_power_of_two() {
            return Err(Error::Config(format!(
                "grid length {n} must be a power of two and at least {}",
                Self::MIN_LEN
            )));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::Config(format!("time step {dt} ps must be positive")));
        }
        if !t_start.is_finite() {
            return Err(Error::Config("grid start time must be finite".into()));
        }
        Ok(SampleGrid { n, dt, t_start })
    }

    /// Grid whose samples run from `-n/2·dt` to `(n/2 - 1)·dt`, so `t = 0` is a sample
    /// and every interior sample has a mirror partner.
    pub fn centered(n: usize, dt: f64) -> Result<Self> {
        Self::new(n, dt, -((n / 2) as f64) * dt)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.time(self.n - 1)
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t_start + i as f64 * self.dt
    }

    pub fn times(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.time(i))
    }

    /// `dω = 2π / (n·dt)`.
    pub fn d_omega(&self) -> f64 {
        2.0 * PI / (self.n as f64 * self.dt)
    }

    pub fn omega(&self, j: usize) -> f64 {
        (j as f64 - (self.n / 2) as f64) * self.d_omega()
    }

    pub fn omegas(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.omega(j)).collect()
    }

    pub fn omega_min(&self) -> f64 {
        self.omega(0)
    }

    pub fn omega_max(&self) -> f64 {
        self.omega(self.n - 1)
    }

    /// Half of the Nyquist band, `π/(2·dt)`. Fields whose spectra stay inside it
    /// can be squared (SHG) or correlated (Wigner) without aliasing.
    pub fn alias_free_band(&self) -> f64 {
        PI / (2.0 * self.dt)
    }

    pub fn is_symmetric(&self) -> bool {
        let expected = -((self.n / 2) as f64) * self.dt;
        (self.t_start - expected).abs() <= 1e-9 * self.dt
    }

    /// Integer sample shift for a delay; the delay must sit on the grid step.
    pub fn shift_of(&self, delay: f64) -> Result<isize> {
        let steps = delay / self.dt;
        let rounded = steps.round();
        if !steps.is_finite() || (steps - rounded).abs() > 1e-6 {
            return Err(Error::Domain(format!(
                "delay {delay} ps is not a multiple of the grid step {} ps",
                self.dt
            )));
        }
        let shift = rounded as isize;
        if shift.unsigned_abs() >= self.n {
            return Err(Error::Domain(format!(
                "delay {delay} ps exceeds the representable shift range ±{} ps",
                (self.n - 1) as f64 * self.dt
            )));
        }
        Ok(shift)
    }

    /// Fractional sample index of a time coordinate.
    pub fn index_of(&self, t: f64) -> f64 {
        (t - self.t_start) / self.dt
    }
}
