//! Turning state arguments into a validated plan, and the plan into a field.

use std::f64::consts::PI;

use chronomap::field::{
    apply_shaper, check_chirped_span, chirped_gaussian, compass_state, gaussian_pulse, CompassSpec, ComplexField,
    PulseSpec, SampleGrid, ShaperMask,
};
use chronomap::{dataio, Error, Result};

use crate::args::{GridArgs, PulseArgs, ShaperArgs, StateArgs, StateKind};

/// Widths kept on either side of the outermost pulse when sizing maps.
const EXTENT_WIDTHS: f64 = 5.0;

/// Collects validation failures so they can be reported together.
#[derive(Default)]
pub struct Problems(Vec<String>);

impl Problems {
    pub fn note(&mut self, r: Result<()>) {
        if let Err(e) = r {
            self.push_error(e);
        }
    }

    pub fn push(&mut self, msg: impl Into<String>) {
        self.0.push(msg.into());
    }

    fn push_error(&mut self, e: Error) {
        match e {
            Error::Config(m) | Error::Synthesis(m) | Error::Domain(m) => self.0.push(m),
            other => self.0.push(other.to_string()),
        }
    }

    pub fn check_positive(&mut self, name: &str, v: f64) {
        if !(v.is_finite() && v > 0.0) {
            self.push(format!("{name} = {v} must be positive"));
        }
    }

    pub fn finish(self) -> Result<()> {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(self.0.join("; ")))
        }
    }
}

pub fn grid(args: &GridArgs, problems: &mut Problems) -> Option<SampleGrid> {
    match SampleGrid::centered(args.n, args.dt) {
        Ok(g) => Some(g),
        Err(e) => {
            problems.push_error(e);
            None
        }
    }
}

pub fn omega0(pulse: &PulseArgs) -> f64 {
    PI * pulse.omega0_over_pi_thz
}

pub fn check_pulse_lists(pulse: &PulseArgs, problems: &mut Problems) {
    for (name, list) in [("amplitudes", &pulse.amplitudes), ("phases", &pulse.phases)] {
        if list.len() != 4 {
            problems.push(format!("{name} need exactly 4 values, got {}", list.len()));
        }
    }
}

pub fn compass_spec(pulse: &PulseArgs, t0: f64) -> CompassSpec {
    let mut amplitudes = [1.0; 4];
    let mut phases = [0.0; 4];
    amplitudes.iter_mut().zip(&pulse.amplitudes).for_each(|(a, v)| *a = *v);
    phases.iter_mut().zip(&pulse.phases).for_each(|(a, v)| *a = *v);
    CompassSpec::new(t0, omega0(pulse), pulse.sigma)
        .with_amplitudes(amplitudes)
        .with_phases(phases)
}

fn shaper(args: &ShaperArgs) -> ShaperMask {
    ShaperMask::cosine(args.mask_t0).with_block(args.block_center, args.block_halfwidth)
}

#[derive(Debug, Clone)]
pub enum Source {
    Compass(CompassSpec),
    Gaussian(f64),
    Chirped { sigma: f64, chirp: f64 },
    Loaded(ComplexField),
}

/// Everything needed to produce a field, checked up front.
#[derive(Debug, Clone)]
pub struct StatePlan {
    pub grid: SampleGrid,
    pub source: Source,
    pub mask: ShaperMask,
    /// Half-extent of the field in time, ps, and its frequency range, rad/ps.
    pub time_extent: f64,
    pub freq_range: (f64, f64),
    /// Separations used to place default analysis windows.
    pub t0: f64,
    pub omega0: f64,
    pub kind: Option<StateKind>,
}

impl StatePlan {
    /// Validates the arguments, reporting all problems at once. A field file
    /// is read here, since its grid is part of the plan.
    pub fn new(args: &StateArgs) -> Result<Self> {
        let mut problems = Problems::default();
        let grid = grid(&args.grid, &mut problems);
        check_pulse_lists(&args.pulse, &mut problems);
        let mask = shaper(&args.shaper);
        problems.note(mask.validate());
        let omega0 = omega0(&args.pulse);
        let spec = compass_spec(&args.pulse, args.t0);
        let source = match (&args.field, args.state) {
            (Some(_), _) => None,
            (None, StateKind::Compass) => Some(Source::Compass(spec)),
            (None, StateKind::Cat) => Some(Source::Compass(spec.with_amplitudes([1.0, 1.0, 0.0, 0.0]))),
            (None, StateKind::Gaussian) => Some(Source::Gaussian(args.pulse.sigma)),
            (None, StateKind::Chirped) => Some(Source::Chirped {
                sigma: args.pulse.sigma,
                chirp: args.chirp,
            }),
        };
        match &source {
            Some(Source::Compass(s)) => problems.note(s.validate()),
            Some(Source::Gaussian(sigma)) => problems.check_positive("sigma", *sigma),
            Some(Source::Chirped { sigma, chirp }) => {
                problems.check_positive("sigma", *sigma);
                if !chirp.is_finite() {
                    problems.push(format!("chirp = {chirp} must be finite"));
                }
            }
            _ => {}
        }
        problems.finish()?;
        let mut grid = grid.expect("grid validated above");
        let source = match (source, &args.field) {
            (Some(s), _) => s,
            (None, Some(path)) => {
                let field = dataio::load_field(path)?;
                grid = *field.grid();
                Source::Loaded(field)
            }
            (None, None) => unreachable!("a state or a field file is always given"),
        };

        let sigma = args.pulse.sigma;
        let spread = 2.0 * mask.mask_t0;
        let (time_extent, freq_range) = match &source {
            Source::Compass(s) => {
                let w = EXTENT_WIDTHS / sigma;
                let range = if s.amplitudes[2] == 0.0 && s.amplitudes[3] == 0.0 {
                    (-s.omega0 - w, -s.omega0 + w)
                } else {
                    (-s.omega0 - w, s.omega0 + w)
                };
                (s.t0 + EXTENT_WIDTHS * sigma + spread, range)
            }
            Source::Gaussian(sigma) => {
                let w = EXTENT_WIDTHS / sigma;
                (EXTENT_WIDTHS * sigma + spread, (-w, w))
            }
            Source::Chirped { sigma, chirp } => {
                let w = EXTENT_WIDTHS * (1.0 / sigma + 2.0 * chirp.abs() * sigma);
                (EXTENT_WIDTHS * sigma + spread, (-w, w))
            }
            Source::Loaded(_) => (grid.t_end().max(-grid.t_start()), (grid.omega_min(), grid.omega_max())),
        };

        let plan = StatePlan {
            grid,
            source,
            mask,
            time_extent,
            freq_range,
            t0: args.t0,
            omega0,
            kind: args.field.is_none().then_some(args.state),
        };
        plan.check()?;
        Ok(plan)
    }

    /// Span and band checks that need no field samples.
    fn check(&self) -> Result<()> {
        let grid = &self.grid;
        match &self.source {
            Source::Compass(s) => s.check_span(grid)?,
            Source::Gaussian(sigma) => PulseSpec::new(0.0, 0.0, *sigma).check_span(grid)?,
            Source::Chirped { sigma, chirp } => check_chirped_span(grid, *sigma, *chirp)?,
            Source::Loaded(_) => {}
        }
        let half_span = grid.t_end().min(-grid.t_start());
        if self.mask.mask_t0 > 0.0 && !matches!(self.source, Source::Loaded(_)) && self.time_extent > half_span {
            return Err(Error::Synthesis(format!(
                "shaped replicas reach |t| = {} ps, beyond the grid's ±{half_span} ps; \
                 use a smaller --mask-t0 or a larger grid",
                self.time_extent
            )));
        }
        let m = &self.mask;
        if m.block_halfwidth > 0.0
            && (m.block_center - m.block_halfwidth < grid.omega_min()
                || m.block_center + m.block_halfwidth > grid.omega_max())
        {
            return Err(Error::Domain(format!(
                "blocked band {} ± {} rad/ps leaves the grid's frequency span",
                m.block_center, m.block_halfwidth
            )));
        }
        Ok(())
    }

    pub fn field(&self) -> Result<ComplexField> {
        let field = match &self.source {
            Source::Compass(s) => compass_state(&self.grid, s)?,
            Source::Gaussian(sigma) => gaussian_pulse(&self.grid, &PulseSpec::new(0.0, 0.0, *sigma))?.normalized()?,
            Source::Chirped { sigma, chirp } => chirped_gaussian(&self.grid, *sigma, *chirp)?,
            Source::Loaded(f) => f.clone(),
        };
        if self.mask.is_identity() {
            Ok(field)
        } else {
            apply_shaper(&field, &self.mask)
        }
    }

    pub fn is_cat(&self) -> bool {
        self.kind == Some(StateKind::Cat)
    }
}
