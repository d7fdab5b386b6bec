//! Comparison of spectra, band statistics, rational sequences and the
//! verification checks.

mod butterfly;
mod checks;
mod metric;
mod rationals;
mod stats;
mod witness;
mod zoom;

pub use butterfly::{butterfly, ButterflyDataset, ButterflyRow};
pub use checks::{
    expected_band_count, run_check, run_check_by_name, CheckConfig, CheckId, CheckReport,
};
pub use metric::{hausdorff, hausdorff_circle, hausdorff_real, hausdorff_with, CircleMetric};
pub use rationals::{farey_rationals, golden_convergents};
pub use stats::{powerlaw_fit, total_bandwidth, PowerLawFit};
pub use witness::alpha_jump_witness;
pub use zoom::{phase_median, zoom_windows, ZoomWindow};
