//! Sampling grids, complex fields, pulse synthesis and the pulse-shaper model.

mod complex_field;
mod grid;
mod pulse;
mod shaper;

pub use complex_field::ComplexField;
pub use grid::SampleGrid;
pub use pulse::{
    check_chirped_span, chirped_gaussian, compass_state, gaussian_pulse, CompassSpec, PulseSpec, DEFAULT_OMEGA0,
    DEFAULT_SIGMA,
};
pub use shaper::{apply_shaper, ShaperMask};
