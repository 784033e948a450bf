//! Alignment measures computed as O(p·q) dynamic programs over a shared
//! cost-lattice engine: time-warp edit distance (`twed`), dynamic time
//! warping (`dtw`), edit distance with a real gap penalty (`erp`), longest
//! common subsequence (`lcss`), point-pattern matching over ascending lists
//! (`ppm`), and affine-gap symbolic alignment (`affine_gap_align`).
//!
//! Infinite cost is represented by `f64::INFINITY`, which propagates through
//! the minimization without overflow.

mod affine;
mod dtw;
mod engine;
mod erp;
mod lcss;
mod ppm;
mod twed;

pub use affine::{affine_gap_align, AffineGapParams, ScoreTable};
pub use dtw::{dtw, dtw_with_path, DtwParams};
pub use erp::{erp, ErpParams};
pub use lcss::{lcss, LcssParams, LcssResult};
pub use ppm::ppm;
pub use twed::{twed, twed_delete_costs, twed_with_path, TwedParams};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ElasticError {
    #[error("operation requires a non-empty series")]
    EmptyInput,
    #[error("invalid parameter {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("gap element dimension {gap} does not match series dimension {series}")]
    GapDimensionMismatch { gap: usize, series: usize },
    #[error("input list is not strictly ascending at element {index}")]
    NotAscending { index: usize },
    #[error("score table has no entry for symbol pair ({a:?}, {b:?})")]
    UnknownSymbol { a: char, b: char },
    #[error("alignment path was not recorded (cost-only run)")]
    PathUnavailable,
}

/// One edit operation of an alignment, in the graphical-editor sense:
/// a match consumes a sample from both series, a delete consumes a sample
/// from exactly one of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EditOp {
    Match,
    DeleteA,
    DeleteB,
}

/// One alignment step: the operation plus the 1-based indices reached in
/// each series once the operation has been applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathStep {
    pub op: EditOp,
    pub i: usize,
    pub j: usize,
}

/// Cost of an alignment, optionally with the operation sequence that
/// realizes it. Cost-only runs use two-row rolling storage and carry no
/// path; path-retaining runs keep the full lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignmentResult {
    cost: f64,
    path: Option<Vec<PathStep>>,
}

impl AlignmentResult {
    pub(crate) fn cost_only(cost: f64) -> Self {
        Self { cost, path: None }
    }

    pub(crate) fn with_path(cost: f64, path: Vec<PathStep>) -> Self {
        Self { cost, path: Some(path) }
    }

    pub fn cost(&self) -> f64 {
        self.cost
    }

    /// True when no valid alignment exists (e.g. one series is empty, or a
    /// corridor constraint blocks every path).
    pub fn is_infinite(&self) -> bool {
        self.cost.is_infinite()
    }

    /// The realizing operation sequence. Errors when the run was executed
    /// in cost-only mode.
    pub fn path(&self) -> Result<&[PathStep], ElasticError> {
        self.path.as_deref().ok_or(ElasticError::PathUnavailable)
    }
}

/// Tagged parameter record, one variant per measure.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricParams {
    Twed(TwedParams),
    Dtw(DtwParams),
    Erp(ErpParams),
    Lcss(LcssParams),
    Ppm,
    AffineGap(AffineGapParams),
}

impl std::fmt::Display for MetricParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricParams::Twed(p) => {
                write!(f, "twed(lambda={}, nu={}, lp={})", p.lambda, p.nu, p.p_norm)
            }
            MetricParams::Dtw(p) => match p.corridor {
                Some(w) => write!(f, "dtw(corridor={w}, lp={})", p.p_norm),
                None => write!(f, "dtw(unconstrained, lp={})", p.p_norm),
            },
            MetricParams::Erp(p) => match &p.gap {
                Some(g) => write!(f, "erp(gap={g:?}, lp={})", p.p_norm),
                None => write!(f, "erp(gap=0, lp={})", p.p_norm),
            },
            MetricParams::Lcss(p) => write!(f, "lcss(epsilon={}, delta={})", p.epsilon, p.delta),
            MetricParams::Ppm => write!(f, "ppm"),
            MetricParams::AffineGap(p) => {
                write!(f, "affine_gap(open={}, extend={})", p.open, p.extend)
            }
        }
    }
}
