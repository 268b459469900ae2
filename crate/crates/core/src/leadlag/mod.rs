//! Does a discussion series lead a labor-market series? Granger grids and
//! rolling out-of-sample forecast comparisons.

pub mod granger;
pub mod heatmap;
pub mod oos;

use thiserror::Error;

use crate::series::SeriesError;
use crate::stats::StatsError;

pub use granger::{
    granger_dof, granger_grid, granger_test, recompute, GrangerCell, GrangerResult, LagMode, DEFAULT_GRANGER_ALPHA,
    DEFAULT_MAX_LAG,
};
pub use heatmap::{emit_heatmap_data, granger_heatmap, oos_heatmap, parse_heatmap_csv, HeatmapMatrix, HeatmapTable};
pub use oos::{
    clark_west, feasible_candidates, r2_oos, rolling_oos_eval, rolling_oos_series, ClarkWest, OosResult,
    DEFAULT_HORIZONS, DEFAULT_LAG_CANDIDATES, DEFAULT_OOS_ALPHA, DEFAULT_TRAINING_WINDOW,
};

#[derive(Debug, Error)]
pub enum LeadLagError {
    #[error("series lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("{len} observations are too few at lag/horizon {lag}")]
    InsufficientData { len: usize, lag: usize },
    #[error("target series is constant")]
    ConstantTarget,
    #[error("{0}")]
    Infeasible(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}
