use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

/// Compass-state interference in the time-frequency plane: simulate
/// states, compute FROG and Wigner maps, measure chessboard cell areas,
/// ingest measured traces and export plot data.
///
/// Units: time in ps, angular frequency in rad/ps relative to the carrier.
///
/// Exit codes: 0 ok, 2 configuration, 3 input data, 4 computation, 5 I/O.
#[derive(Debug, Parser)]
#[command(name = "chronomap", version, args_conflicts_with_subcommands = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,

    /// Emit the plot-data bundle for one figure preset.
    #[arg(long, value_enum)]
    pub figure: Option<Figure>,

    /// Directory for figure bundles; defaults to $CHRONOMAP_OUT_DIR, then ./figures.
    #[arg(long, requires = "figure")]
    pub out_dir: Option<PathBuf>,

    /// Validate the preset without computing anything.
    #[arg(long, requires = "figure")]
    pub dry_run: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// Full FROG and Wigner maps of the compass state at t0 = 2 ps.
    #[value(name = "3")]
    Maps,
    /// Central zooms of FROG maps at t0 = 1.25, 1.75 and 2.5 ps.
    #[value(name = "4")]
    Zooms,
    /// Central-frequency cross-section at t0 = 2.5 ps with zeros and overlap.
    #[value(name = "5a")]
    Section,
    /// Mean central cell area against separation.
    #[value(name = "5b")]
    Sweep,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a field and write it as a field file.
    Simulate(SimulateArgs),
    /// Compute an SHG FROG spectrogram.
    Frog(FrogArgs),
    /// Compute a Wigner distribution.
    Wigner(WignerArgs),
    /// Cut a map along one axis and locate the zeros of the cut.
    Crosscut(CrosscutArgs),
    /// Measure central chessboard cell areas and report them as JSON.
    Areas(AreasArgs),
    /// Cell areas across a list of separations t0.
    Sweep(SweepArgs),
    /// Residual between the peak-normalized FROG map and |W(τ/2, ω/2)|².
    ///
    /// The two agree when E(-t) = E*(t), as for equal-amplitude compass
    /// states; a chirp or an off-center replica breaks the agreement.
    Correspond(CorrespondArgs),
    /// Convert a measured trace in wavelength to a spectrogram file.
    Ingest(IngestArgs),
    /// Similarity score of two spectrogram files.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateKind {
    /// Four pulses at (±t0, ±ω0).
    Compass,
    /// Two pulses at ±t0 sharing the carrier -ω0.
    Cat,
    /// One transform-limited pulse at the origin.
    Gaussian,
    /// One linearly chirped pulse at the origin.
    Chirped,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Number of time samples.
    #[arg(long, default_value_t = 4096)]
    pub n: usize,
    /// Time step, ps.
    #[arg(long, default_value_t = 0.02)]
    pub dt: f64,
}

#[derive(Debug, Clone, Args)]
pub struct PulseArgs {
    /// Half frequency separation ω0/π, THz.
    #[arg(long = "omega0-over-pi-THz", default_value_t = 3.3)]
    pub omega0_over_pi_thz: f64,
    /// Width of each pulse, ps.
    #[arg(long, default_value_t = chronomap::field::DEFAULT_SIGMA)]
    pub sigma: f64,
    /// Four amplitudes, ordered (+t0,-ω0) (-t0,-ω0) (+t0,+ω0) (-t0,+ω0).
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 1.0, 1.0, 1.0])]
    pub amplitudes: Vec<f64>,
    /// Four phases in rad, same order as the amplitudes.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.0, 0.0, 0.0])]
    pub phases: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Read the field from a field file instead of synthesizing one.
    #[arg(long, conflicts_with = "state")]
    pub field: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = StateKind::Compass)]
    pub state: StateKind,
    /// Half time separation, ps.
    #[arg(long, default_value_t = 2.0)]
    pub t0: f64,
    /// Linear chirp of the chirped state, rad/ps².
    #[arg(long, default_value_t = 1.0)]
    pub chirp: f64,
    #[command(flatten)]
    pub pulse: PulseArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub shaper: ShaperArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ShaperArgs {
    /// Cosine-mask delay, ps; replicas end up twice this apart. 0 disables it.
    #[arg(long, default_value_t = 0.0)]
    pub mask_t0: f64,
    /// Center of a blocked spectral band, rad/ps.
    #[arg(long, default_value_t = 0.0)]
    pub block_center: f64,
    /// Half-width of the blocked band, rad/ps. 0 disables blocking.
    #[arg(long, default_value_t = 0.0)]
    pub block_halfwidth: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Check every precondition, then stop before computing.
    #[arg(long)]
    pub dry_run: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FrogArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Largest |τ|, ps; defaults to the extent of the state plus six widths.
    #[arg(long)]
    pub reach: Option<f64>,
    /// Delay step, ps; rounded to whole grid steps. Defaults to the grid step.
    #[arg(long)]
    pub delay_step: Option<f64>,
    /// Largest |ω| kept, rad/ps; defaults to the extent of the signal.
    #[arg(long)]
    pub omega_limit: Option<f64>,
    /// Evaluate by direct summation instead of FFT.
    #[arg(long)]
    pub oracle: bool,
    /// Also write an 8-bit PGM preview.
    #[arg(long)]
    pub raster: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WignerArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Largest |q|, ps; defaults to the extent of the state plus six widths.
    #[arg(long)]
    pub q_limit: Option<f64>,
    /// Largest |p|, rad/ps; defaults to the extent of the state.
    #[arg(long)]
    pub p_limit: Option<f64>,
    /// Evaluate by direct summation instead of FFT.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long)]
    pub raster: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    Frog,
    Wigner,
}

/// A map read from a file, or computed from state arguments.
#[derive(Debug, Clone, Args)]
pub struct MapSource {
    /// Map file to analyse; otherwise the map is computed from the state.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Which map to compute when no file is given.
    #[arg(long, value_enum, default_value_t = MapKind::Frog)]
    pub kind: MapKind,
    /// Evaluate a computed map by direct summation instead of FFT.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub state: StateArgs,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("cut").required(true).args(["fixed_time", "fixed_freq"])))]
pub struct CrosscutArgs {
    #[command(flatten)]
    pub source: MapSource,
    /// Hold the delay (or q) fixed and cut along frequency.
    #[arg(long, allow_hyphen_values = true)]
    pub fixed_time: Option<f64>,
    /// Hold the frequency (or p) fixed and cut along time.
    #[arg(long, allow_hyphen_values = true)]
    pub fixed_freq: Option<f64>,
    /// Keep only the open interval LO,HI of the cut.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub range: Option<Vec<f64>>,
    /// Fraction of the peak below which structure counts as noise;
    /// 0.01 for computed maps, 0.05 for map files.
    #[arg(long)]
    pub noise_floor: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WindowArgs {
    /// Window center in time (delay or q), ps.
    #[arg(long, allow_hyphen_values = true)]
    pub window_time: Option<f64>,
    /// Window center in frequency, rad/ps.
    #[arg(long, allow_hyphen_values = true)]
    pub window_freq: Option<f64>,
    /// Window half-width in time; defaults to t0 (t0/2 on Wigner maps).
    #[arg(long)]
    pub window_time_halfwidth: Option<f64>,
    /// Window half-width in frequency; defaults to ω0 (ω0/2 on Wigner maps).
    #[arg(long)]
    pub window_freq_halfwidth: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct AreasArgs {
    #[command(flatten)]
    pub source: MapSource,
    #[command(flatten)]
    pub window: WindowArgs,
    /// As for crosscut.
    #[arg(long)]
    pub noise_floor: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Separations t0, ps.
    #[arg(
        long,
        value_delimiter = ',',
        default_values_t = [0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5]
    )]
    pub t0: Vec<f64>,
    #[command(flatten)]
    pub pulse: PulseArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = chronomap::analysis::DEFAULT_NOISE_FLOOR_SIMULATED)]
    pub noise_floor: f64,
    /// Evaluate traces by direct summation instead of FFT.
    #[arg(long)]
    pub oracle: bool,
    /// Also write the full per-point reports as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CorrespondArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TraceLayout {
    Long,
    Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Negatives {
    Clamp,
    Reject,
}

#[derive(Debug, Clone, Args)]
pub struct IngestArgs {
    /// Measured trace, CSV.
    #[arg(long)]
    pub trace: PathBuf,
    #[arg(long, value_enum, default_value_t = TraceLayout::Long)]
    pub format: TraceLayout,
    /// What to do with negative intensities.
    #[arg(long, value_enum, default_value_t = Negatives::Clamp)]
    pub negative: Negatives,
    /// Wavelength mapped to ω = 0, nm.
    #[arg(long, default_value_t = chronomap::dataio::DEFAULT_REFERENCE_NM)]
    pub reference_nm: f64,
    /// Fraction of the maximum subtracted as background.
    #[arg(long, default_value_t = 0.0)]
    pub background: f64,
    #[arg(long)]
    pub raster: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Reference spectrogram file.
    pub first: PathBuf,
    /// Spectrogram file sampled on the reference's nodes.
    pub second: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}
