use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use chronomap::analysis::compare_maps;
use chronomap::analysis::{
    cell_areas, cross_section, find_zeros, sweep_separation, wigner_cell_areas, window_trace, CellAreaReport, Fixed,
    SweepOptions, Window, DEFAULT_NOISE_FLOOR_EXPERIMENTAL, DEFAULT_NOISE_FLOOR_SIMULATED,
};
use chronomap::dataio::{
    calibrate_to_spectrogram, fmt_f64, load_map, load_trace, save_raster, write_field, write_json, write_map,
    write_section, write_sweep, write_sweep_json, Calibration, MapData, NegativePolicy, TraceFormat,
};
use chronomap::field::{ComplexField, SampleGrid};
use chronomap::transforms::{
    correspondence_within, quadrature_oracle_frog, quadrature_oracle_wigner, shg_frog, symmetric_delays,
    wigner_momenta, wigner_window, PhaseSpaceMap, Spectrogram, WignerMap,
};
use chronomap::{Error, Result};

use crate::args::{
    AreasArgs, CompareArgs, CorrespondArgs, CrosscutArgs, FrogArgs, IngestArgs, MapKind, MapSource, Negatives,
    SimulateArgs, SweepArgs, TraceLayout, WignerArgs, WindowArgs,
};
use crate::state::{self, Problems, StatePlan};

/// Half-steps kept around a Wigner window so edge zeros have neighbours.
const WIGNER_MARGIN: f64 = 4.0;

/// Writes to `path`, or to standard output when there is none.
pub fn emit(path: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| with_path(e, p))?;
            let mut out = BufWriter::new(file);
            f(&mut out)?;
            out.flush().map_err(|e| with_path(e, p))?;
        }
        None => {
            let mut out = io::stdout().lock();
            f(&mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

pub fn with_path(e: io::Error, path: &Path) -> Error {
    Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

fn dry_run_ok(what: &str) -> Result<()> {
    println!("dry run: {what}; all preconditions hold");
    Ok(())
}

fn check_noise_floor(problems: &mut Problems, nf: Option<f64>) {
    if let Some(v) = nf {
        if !(0.0..1.0).contains(&v) {
            problems.push(format!("noise floor {v} must lie in [0, 1)"));
        }
    }
}

fn check_optional_positive(problems: &mut Problems, name: &str, v: Option<f64>) {
    if let Some(v) = v {
        problems.check_positive(name, v);
    }
}

pub fn simulate(a: &SimulateArgs) -> Result<()> {
    let plan = StatePlan::new(&a.state)?;
    if a.output.dry_run {
        return dry_run_ok(&format!(
            "field of {} samples, dt = {} ps",
            plan.grid.len(),
            plan.grid.dt()
        ));
    }
    let field = plan.field()?;
    emit(a.output.out.as_deref(), |mut w| write_field(&field, &mut w))
}

/// Delay list and frequency crop of a FROG computation.
pub struct FrogPlan {
    pub delays: Vec<f64>,
    pub omega_range: (f64, f64),
    pub oracle: bool,
}

impl FrogPlan {
    pub fn new(
        plan: &StatePlan,
        reach: Option<f64>,
        step: Option<f64>,
        omega_limit: Option<f64>,
        oracle: bool,
    ) -> Result<Self> {
        let grid = plan.grid;
        let mut problems = Problems::default();
        check_optional_positive(&mut problems, "reach", reach);
        check_optional_positive(&mut problems, "delay step", step);
        check_optional_positive(&mut problems, "omega limit", omega_limit);
        let step = step.unwrap_or(grid.dt());
        let ratio = step / grid.dt();
        if step.is_finite() && step > 0.0 && (ratio - ratio.round()).abs() > 1e-9 * ratio.max(1.0) {
            problems.push(format!(
                "delay step {step} ps is not a whole multiple of the grid step {} ps",
                grid.dt()
            ));
        }
        problems.finish()?;
        let span = (grid.len() - 1) as f64 * grid.dt();
        let reach = reach.unwrap_or(2.0 * plan.time_extent).min(span);
        let omega_range = match omega_limit {
            Some(l) => (-l, l),
            None => (2.0 * plan.freq_range.0, 2.0 * plan.freq_range.1),
        };
        let omega_range = (omega_range.0.max(grid.omega_min()), omega_range.1.min(grid.omega_max()));
        let delays = symmetric_delays(&grid, reach, step);
        Ok(FrogPlan {
            delays,
            omega_range,
            oracle,
        })
    }

    pub fn compute(&self, field: &ComplexField) -> Result<Spectrogram> {
        let (lo, hi) = self.omega_range;
        if self.oracle {
            let omegas: Vec<f64> = field
                .grid()
                .omegas()
                .into_iter()
                .filter(|w| (lo..=hi).contains(w))
                .collect();
            quadrature_oracle_frog(field, &self.delays, &omegas)
        } else {
            let tau = (self.delays[0], self.delays[self.delays.len() - 1]);
            shg_frog(field, &self.delays)?.crop(tau, (lo, hi))
        }
    }

    fn describe(&self) -> String {
        format!(
            "FROG map of {} delays over ω ∈ [{}, {}] rad/ps",
            self.delays.len(),
            fmt_f64(self.omega_range.0),
            fmt_f64(self.omega_range.1)
        )
    }
}

/// Position and momentum ranges of a Wigner computation.
pub struct WignerPlan {
    pub q_range: (f64, f64),
    pub p_range: (f64, f64),
    pub oracle: bool,
}

impl WignerPlan {
    pub fn new(plan: &StatePlan, q_limit: Option<f64>, p_limit: Option<f64>, oracle: bool) -> Result<Self> {
        let mut problems = Problems::default();
        check_optional_positive(&mut problems, "q limit", q_limit);
        check_optional_positive(&mut problems, "p limit", p_limit);
        problems.finish()?;
        let grid = plan.grid;
        let q = q_limit.unwrap_or(plan.time_extent);
        let q_range = (-q.min(-grid.t_start()), q.min(grid.t_end()));
        let p_range = match p_limit {
            Some(l) => (-l, l),
            None => plan.freq_range,
        };
        let p_all = wigner_momenta(&grid);
        let p_range = (p_range.0.max(p_all[0]), p_range.1.min(p_all[p_all.len() - 1]));
        Ok(WignerPlan {
            q_range,
            p_range,
            oracle,
        })
    }

    pub fn compute(&self, field: &ComplexField) -> Result<WignerMap> {
        let (q_lo, q_hi) = self.q_range;
        let (p_lo, p_hi) = self.p_range;
        if self.oracle {
            let momenta: Vec<f64> = wigner_momenta(field.grid())
                .into_iter()
                .filter(|p| (p_lo..=p_hi).contains(p))
                .collect();
            quadrature_oracle_wigner(field, q_lo, q_hi, &momenta)
        } else {
            wigner_window(field, q_lo, q_hi)?.crop(self.q_range, self.p_range)
        }
    }

    fn describe(&self) -> String {
        format!(
            "Wigner map over q ∈ [{}, {}] ps, p ∈ [{}, {}] rad/ps",
            fmt_f64(self.q_range.0),
            fmt_f64(self.q_range.1),
            fmt_f64(self.p_range.0),
            fmt_f64(self.p_range.1)
        )
    }
}

fn write_map_outputs(map: MapData, out: Option<&Path>, raster: Option<&Path>) -> Result<()> {
    if let Some(r) = raster {
        save_raster(map.as_map(), r)?;
    }
    emit(out, |mut w| write_map(&map, &mut w))
}

pub fn frog(a: &FrogArgs) -> Result<()> {
    let plan = StatePlan::new(&a.state)?;
    let fp = FrogPlan::new(&plan, a.reach, a.delay_step, a.omega_limit, a.oracle)?;
    if a.output.dry_run {
        return dry_run_ok(&fp.describe());
    }
    let map = fp.compute(&plan.field()?)?;
    write_map_outputs(MapData::Spectrogram(map), a.output.out.as_deref(), a.raster.as_deref())
}

pub fn wigner(a: &WignerArgs) -> Result<()> {
    let plan = StatePlan::new(&a.state)?;
    let wp = WignerPlan::new(&plan, a.q_limit, a.p_limit, a.oracle)?;
    if a.output.dry_run {
        return dry_run_ok(&wp.describe());
    }
    let map = wp.compute(&plan.field()?)?;
    write_map_outputs(MapData::Wigner(map), a.output.out.as_deref(), a.raster.as_deref())
}

/// A map from a file, or the plan to compute one.
enum Source {
    File(MapData),
    State(StatePlan),
}

impl Source {
    fn new(s: &MapSource) -> Result<Self> {
        match &s.map {
            Some(path) => load_map(path).map(Source::File),
            None => StatePlan::new(&s.state).map(Source::State),
        }
    }

    fn default_noise_floor(&self) -> f64 {
        match self {
            Source::File(_) => DEFAULT_NOISE_FLOOR_EXPERIMENTAL,
            Source::State(_) => DEFAULT_NOISE_FLOOR_SIMULATED,
        }
    }

    fn is_wigner(&self, kind: MapKind) -> bool {
        match self {
            Source::File(m) => matches!(m, MapData::Wigner(_)),
            Source::State(_) => kind == MapKind::Wigner,
        }
    }
}

pub fn crosscut(a: &CrosscutArgs) -> Result<()> {
    let mut problems = Problems::default();
    check_noise_floor(&mut problems, a.noise_floor);
    if let Some(r) = &a.range {
        if r.len() != 2 {
            problems.push(format!("range needs two values LO,HI, got {}", r.len()));
        } else if r[0].partial_cmp(&r[1]) != Some(std::cmp::Ordering::Less) {
            problems.push(format!("range {},{} must be increasing", r[0], r[1]));
        }
    }
    for v in [a.fixed_time, a.fixed_freq].into_iter().flatten() {
        if !v.is_finite() {
            problems.push(format!("fixed coordinate {v} must be finite"));
        }
    }
    problems.finish()?;
    let fixed = match (a.fixed_time, a.fixed_freq) {
        (Some(t), _) => Fixed::Time(t),
        (None, Some(w)) => Fixed::Frequency(w),
        (None, None) => unreachable!("clap requires one of the two"),
    };
    let source = Source::new(&a.source)?;
    let noise_floor = a.noise_floor.unwrap_or(source.default_noise_floor());
    let map = match source {
        Source::File(m) => {
            if a.output.dry_run {
                cross_section(m.as_map(), fixed)?;
                return dry_run_ok(&format!("cut of the {} map in the file", m.kind()));
            }
            m
        }
        Source::State(plan) => {
            let data = if a.source.kind == MapKind::Wigner {
                let wp = WignerPlan::new(&plan, None, None, a.source.oracle)?;
                check_fixed_in(fixed, wp.q_range, wp.p_range)?;
                if a.output.dry_run {
                    return dry_run_ok(&format!("cut of the {}", wp.describe()));
                }
                MapData::Wigner(wp.compute(&plan.field()?)?)
            } else {
                let fp = FrogPlan::new(&plan, None, None, None, a.source.oracle)?;
                let d = &fp.delays;
                check_fixed_in(fixed, (d[0], d[d.len() - 1]), fp.omega_range)?;
                if a.output.dry_run {
                    return dry_run_ok(&format!("cut of the {}", fp.describe()));
                }
                MapData::Spectrogram(fp.compute(&plan.field()?)?)
            };
            data
        }
    };
    let section = cross_section(map.as_map(), fixed)?;
    let section = match &a.range {
        Some(r) => section.restrict(r[0], r[1]),
        None => section,
    };
    let zeros = find_zeros(&section, noise_floor)?;
    emit(a.output.out.as_deref(), |mut w| {
        write_section(&section, Some(&zeros), &mut w)
    })
}

fn check_fixed_in(fixed: Fixed, time: (f64, f64), freq: (f64, f64)) -> Result<()> {
    let (v, (lo, hi), name) = match fixed {
        Fixed::Time(v) => (v, time, "time"),
        Fixed::Frequency(v) => (v, freq, "frequency"),
    };
    if v < lo || v > hi {
        return Err(Error::Domain(format!(
            "fixed {name} {v} lies outside the computed range [{lo}, {hi}]"
        )));
    }
    Ok(())
}

/// Default window for the map kind, adjusted by any explicit flags.
fn window(args: &WindowArgs, wigner: bool, t0: f64, omega0: f64, cat: bool) -> Window {
    let base = if wigner {
        Window::wigner_central(t0, omega0)
    } else {
        Window::central(t0, omega0)
    };
    // a cat's fringes sit on its shared carrier, doubled in FROG coordinates
    let carrier = if !cat {
        0.0
    } else if wigner {
        -omega0
    } else {
        -2.0 * omega0
    };
    let mut w = base.centered_at(args.window_time.unwrap_or(0.0), args.window_freq.unwrap_or(carrier));
    if let Some(h) = args.window_time_halfwidth {
        w.time_halfwidth = h;
    }
    if let Some(h) = args.window_freq_halfwidth {
        w.freq_halfwidth = h;
    }
    w
}

pub fn areas(a: &AreasArgs) -> Result<()> {
    let mut problems = Problems::default();
    check_noise_floor(&mut problems, a.noise_floor);
    check_optional_positive(&mut problems, "window time half-width", a.window.window_time_halfwidth);
    check_optional_positive(
        &mut problems,
        "window frequency half-width",
        a.window.window_freq_halfwidth,
    );
    for v in [a.window.window_time, a.window.window_freq].into_iter().flatten() {
        if !v.is_finite() {
            problems.push(format!("window center {v} must be finite"));
        }
    }
    problems.finish()?;
    let source = Source::new(&a.source)?;
    let noise_floor = a.noise_floor.unwrap_or(source.default_noise_floor());
    let is_wigner = source.is_wigner(a.source.kind);
    let report = match source {
        Source::File(map) => {
            let omega0 = state::omega0(&a.source.state.pulse);
            let win = window(&a.window, is_wigner, a.source.state.t0, omega0, false);
            if a.output.dry_run {
                check_window(&win, map.as_map())?;
                return dry_run_ok(&format!("cell areas of the {} map in the file", map.kind()));
            }
            Some(match &map {
                MapData::Spectrogram(m) => cell_areas(m, &win, noise_floor)?,
                MapData::Wigner(m) => wigner_cell_areas(m, &win, noise_floor)?,
            })
        }
        Source::State(plan) => {
            let win = window(&a.window, is_wigner, plan.t0, plan.omega0, plan.is_cat());
            computed_areas(&plan, &win, is_wigner, a.source.oracle, noise_floor, a.output.dry_run)?
        }
    };
    match report {
        Some(r) => emit(a.output.out.as_deref(), |mut w| write_json(&r, &mut w)),
        None => Ok(()),
    }
}

/// Window bounds against map axes, as the measurement itself will check them.
fn check_window(win: &Window, map: &dyn PhaseSpaceMap) -> Result<()> {
    let inside = |c: f64, h: f64, axis: &[f64]| c - h >= axis[0] && c + h <= axis[axis.len() - 1];
    if !inside(win.time_center, win.time_halfwidth, map.time_axis())
        || !inside(win.freq_center, win.freq_halfwidth, map.freq_axis())
    {
        return Err(Error::Domain(format!(
            "window {} ± {} ps, {} ± {} rad/ps does not fit inside the map",
            win.time_center, win.time_halfwidth, win.freq_center, win.freq_halfwidth
        )));
    }
    Ok(())
}

fn computed_areas(
    plan: &StatePlan,
    win: &Window,
    wigner: bool,
    oracle: bool,
    noise_floor: f64,
    dry_run: bool,
) -> Result<Option<CellAreaReport>> {
    let grid = plan.grid;
    let band = if wigner {
        let p = wigner_momenta(&grid);
        (p[0], p[p.len() - 1])
    } else {
        (grid.omega_min(), grid.omega_max())
    };
    let half_span = grid.t_end().min(-grid.t_start());
    let time_room = if wigner { half_span } else { 2.0 * half_span };
    if win.time_center.abs() + win.time_halfwidth > time_room
        || win.freq_center - win.freq_halfwidth < band.0
        || win.freq_center + win.freq_halfwidth > band.1
    {
        return Err(Error::Domain(format!(
            "window {} ± {} ps, {} ± {} rad/ps exceeds what the grid can represent",
            win.time_center, win.time_halfwidth, win.freq_center, win.freq_halfwidth
        )));
    }
    if dry_run {
        dry_run_ok(&format!(
            "{} cell areas in {} ± {} ps, {} ± {} rad/ps",
            if wigner { "Wigner" } else { "FROG" },
            fmt_f64(win.time_center),
            fmt_f64(win.time_halfwidth),
            fmt_f64(win.freq_center),
            fmt_f64(win.freq_halfwidth)
        ))?;
        return Ok(None);
    }
    let field = plan.field()?;
    let report = if wigner {
        let margin = WIGNER_MARGIN * grid.dt() / 2.0;
        let q_lo = win.time_center - win.time_halfwidth - margin;
        let q_hi = win.time_center + win.time_halfwidth + margin;
        let p_margin = WIGNER_MARGIN * (band.1 - band.0) / (grid.len() - 1) as f64;
        let p_range = (
            win.freq_center - win.freq_halfwidth - p_margin,
            win.freq_center + win.freq_halfwidth + p_margin,
        );
        let map = WignerPlan {
            q_range: (q_lo, q_hi),
            p_range,
            oracle,
        }
        .compute(&field)?;
        wigner_cell_areas(&map, win, noise_floor)?
    } else {
        cell_areas(&window_trace(&field, win, oracle)?, win, noise_floor)?
    };
    Ok(Some(report))
}

pub fn sweep(a: &SweepArgs) -> Result<()> {
    let mut problems = Problems::default();
    let grid = state::grid(&a.grid, &mut problems);
    check_noise_floor(&mut problems, Some(a.noise_floor));
    if a.t0.is_empty() {
        problems.push("at least one t0 is needed");
    }
    state::check_pulse_lists(&a.pulse, &mut problems);
    let base = state::compass_spec(&a.pulse, a.t0.first().copied().unwrap_or(1.0));
    problems.note(base.validate());
    for &t0 in &a.t0 {
        problems.check_positive("t0", t0);
    }
    problems.finish()?;
    let grid: SampleGrid = grid.expect("grid validated above");
    let mut problems = Problems::default();
    for &t0 in &a.t0 {
        problems.note(chronomap::field::CompassSpec { t0, ..base }.check_span(&grid));
    }
    problems.finish()?;
    if a.output.dry_run {
        return dry_run_ok(&format!("sweep over {} separations", a.t0.len()));
    }
    let opts = SweepOptions {
        grid,
        noise_floor: a.noise_floor,
        oracle: a.oracle,
    };
    let points = sweep_separation(&base, &a.t0, &opts);
    if let Some(path) = &a.json {
        emit(Some(path), |mut w| write_sweep_json(&points, &mut w))?;
    }
    emit(a.output.out.as_deref(), |mut w| write_sweep(&points, &mut w))
}

pub fn correspond(a: &CorrespondArgs) -> Result<()> {
    let plan = StatePlan::new(&a.state)?;
    if !plan.grid.is_symmetric() {
        return Err(Error::Domain(
            "the comparison needs a grid centered on t = 0, so that half delays are grid nodes".into(),
        ));
    }
    let q = plan.time_extent.min(plan.grid.t_end());
    if a.output.dry_run {
        return dry_run_ok(&format!("comparison over |q| <= {} ps", fmt_f64(q)));
    }
    let c = correspondence_within(&plan.field()?, -q, q)?;
    emit(a.output.out.as_deref(), |w| {
        writeln!(w, "residual {}", fmt_f64(c.residual))?;
        Ok(())
    })
}

pub fn ingest(a: &IngestArgs) -> Result<()> {
    let cal = Calibration {
        reference_wavelength: a.reference_nm,
        background_floor: a.background,
    };
    let mut problems = Problems::default();
    problems.note(cal.validate());
    problems.finish()?;
    let format = match a.format {
        TraceLayout::Long => TraceFormat::Long,
        TraceLayout::Matrix => TraceFormat::Matrix,
    };
    let policy = match a.negative {
        Negatives::Clamp => NegativePolicy::Clamp,
        Negatives::Reject => NegativePolicy::Reject,
    };
    let trace = load_trace(&a.trace, format, policy)?;
    if trace.meta.clamped > 0 {
        eprintln!("warning: {} negative intensities clamped to zero", trace.meta.clamped);
    }
    if a.output.dry_run {
        let (rows, cols) = trace.dims();
        return dry_run_ok(&format!("trace of {rows} delays by {cols} wavelengths"));
    }
    let map = calibrate_to_spectrogram(&trace, &cal)?;
    write_map_outputs(MapData::Spectrogram(map), a.output.out.as_deref(), a.raster.as_deref())
}

fn load_spectrogram(path: &Path) -> Result<Spectrogram> {
    match load_map(path)? {
        MapData::Spectrogram(m) => Ok(m),
        MapData::Wigner(_) => Err(Error::Config(format!(
            "{} holds a Wigner map; compare works on spectrograms",
            path.display()
        ))),
    }
}

pub fn compare(a: &CompareArgs) -> Result<()> {
    let first = load_spectrogram(&a.first)?;
    let second = load_spectrogram(&a.second)?;
    if a.output.dry_run {
        return dry_run_ok("comparison of two spectrograms");
    }
    let score = compare_maps(&first, &second)?;
    emit(a.output.out.as_deref(), |w| {
        writeln!(w, "similarity {}", fmt_f64(score))?;
        Ok(())
    })
}
