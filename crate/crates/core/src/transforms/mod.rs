//! FROG, Wigner and overlap transforms, each with a fast FFT path and, for
//! FROG and Wigner, a direct-summation oracle.

mod correspondence;
mod frog;
mod maps;
mod overlap;
mod quadrature;
mod wigner;

pub use correspondence::{correspondence, correspondence_residual, correspondence_within, Correspondence};
pub use frog::{shg_frog, symmetric_delays};
pub(crate) use maps::{check_axis, locate};
pub use maps::{PhaseSpaceMap, Spectrogram, WignerMap};
pub use overlap::{overlap_map, OverlapMap};
pub use quadrature::{quadrature_oracle_frog, quadrature_oracle_wigner};
pub use wigner::{wigner, wigner_momenta, wigner_window};
