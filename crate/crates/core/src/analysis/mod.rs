//! Measurements on phase-space maps: slices, zeros, interference-cell areas,
//! separation sweeps and trace comparison.

mod cells;
mod compare;
mod section;
mod sweep;
mod zeros;

pub use cells::{cell_areas, ideal_cell_area, wigner_cell_areas, CellAreaReport, Verdict, Window, UNCERTAINTY_LIMIT};
pub use compare::compare_maps;
pub use section::{cross_section, CrossSection, Fixed};
pub use sweep::{sweep_point, sweep_separation, window_trace, SweepOptions, SweepPoint};
pub use zeros::{find_zeros, ZeroMethod, ZeroSet, DEFAULT_NOISE_FLOOR_EXPERIMENTAL, DEFAULT_NOISE_FLOOR_SIMULATED};
