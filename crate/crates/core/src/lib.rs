//! Elastic time-series distances with metric guarantees, optimal
//! piecewise-constant down-sampling, bound-driven pruned range queries, and
//! a first-nearest-neighbor benchmark harness.
//!
//! The centerpiece is the time-warp edit distance ([`twed`]), an edit-style
//! alignment whose costs combine value distances with stiffness-weighted
//! timestamp differences, making it a true metric. Around it sit the
//! classical elastic measures ([`dtw`], [`erp`], [`lcss`], [`ppm`],
//! [`affine_gap_align`]), an optimal piecewise-constant approximation used
//! for down-sampling, distance bounds linking original and down-sampled
//! spaces, a filtered range-query engine built on those bounds, and a 1-NN
//! classification harness with leave-one-out parameter tuning.

pub mod classify;
pub mod elastic;
pub mod io;
pub mod pwca;
pub mod search;
pub mod selftest;
pub mod series;

pub use classify::{
    grid_for, loo_error, nn1_error_rate, nn1_predictions, run_table, tune, ClassifyError,
    LabeledDataset, Measure, MetricKind, ParamGrid, TableReport, TuneResult,
};
pub use elastic::{
    affine_gap_align, dtw, dtw_with_path, erp, lcss, ppm, twed, twed_delete_costs, twed_with_path,
    AffineGapParams, AlignmentResult, DtwParams, EditOp, ElasticError, ErpParams, LcssParams,
    LcssResult, MetricParams, PathStep, ScoreTable, TwedParams,
};
pub use io::{emit_csv, load_ucr, write_ucr, CsvTable, IoError, UcrRecord};
pub use pwca::{downsample_half, halving_pyramid, pwca_optimal, PwcaApproximation, PwcaError};
pub use search::{
    approximation_gap_bound, build_index, filtered_range_query, index_entry,
    linear_scan_range_query, lower_bound, reduction_bound, BoundForm, IndexLevel, RangeIndexEntry,
    RangeQueryReport, SearchError,
};
pub use series::{lp_local, lp_series_distance, Sample, SeriesError, TimeSeries};

/// Caps the global worker pool used by the parallel batch operations.
/// Returns an error when the pool was already initialized.
pub fn set_worker_threads(workers: usize) -> Result<(), String> {
    rayon::ThreadPoolBuilder::new().num_threads(workers).build_global().map_err(|e| e.to_string())
}
