//! Dynamic time warping: every move pays the local distance between the
//! current sample pair, timestamps never enter the cost. Not a metric; the
//! triangle inequality can fail.

use super::engine::{EditDp, INF};
use super::{AlignmentResult, ElasticError};
use crate::series::{lp_dist, TimeSeries};

/// Parameters of dynamic time warping. `corridor` is a band half-width
/// constraining `|i - j|`; `None` or any value at least `max(p, q)` leaves
/// the warp unconstrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DtwParams {
    pub corridor: Option<usize>,
    pub p_norm: u32,
}

impl DtwParams {
    pub fn unconstrained() -> Self {
        Self { corridor: None, p_norm: 2 }
    }

    pub fn with_corridor(corridor: usize) -> Self {
        Self { corridor: Some(corridor), p_norm: 2 }
    }
}

impl Default for DtwParams {
    fn default() -> Self {
        Self::unconstrained()
    }
}

/// Dynamic time warping cost (rolling storage). A corridor too narrow for
/// any path, or exactly one empty operand, yields an infinite result.
pub fn dtw(
    a: &TimeSeries,
    b: &TimeSeries,
    params: &DtwParams,
) -> Result<AlignmentResult, ElasticError> {
    run(a, b, params, false)
}

/// Dynamic time warping with the realizing operation sequence retained.
pub fn dtw_with_path(
    a: &TimeSeries,
    b: &TimeSeries,
    params: &DtwParams,
) -> Result<AlignmentResult, ElasticError> {
    run(a, b, params, true)
}

fn run(
    a: &TimeSeries,
    b: &TimeSeries,
    params: &DtwParams,
    keep_path: bool,
) -> Result<AlignmentResult, ElasticError> {
    if params.p_norm == 0 {
        return Err(ElasticError::InvalidParameter { name: "p_norm", value: 0.0 });
    }
    if a.is_empty() && b.is_empty() {
        return Ok(done(0.0, keep_path));
    }
    if a.is_empty() || b.is_empty() {
        return Ok(done(INF, keep_path));
    }
    if a.dim() != b.dim() {
        return Err(ElasticError::DimensionMismatch { left: a.dim(), right: b.dim() });
    }

    let costs = |i: usize, j: usize| {
        let d = lp_dist(a.value(i - 1), b.value(j - 1), params.p_norm);
        (d, d, d)
    };
    let mut col0 = vec![INF; a.len() + 1];
    let mut row0 = vec![INF; b.len() + 1];
    col0[0] = 0.0;
    row0[0] = 0.0;
    let dp = EditDp { p: a.len(), q: b.len(), col0: &col0, row0: &row0, corridor: params.corridor };
    if keep_path {
        let lattice = dp.lattice(costs);
        Ok(AlignmentResult::with_path(lattice.final_cost(), lattice.backtrace()))
    } else {
        Ok(AlignmentResult::cost_only(dp.cost(costs)))
    }
}

fn done(cost: f64, keep_path: bool) -> AlignmentResult {
    if keep_path {
        AlignmentResult::with_path(cost, Vec::new())
    } else {
        AlignmentResult::cost_only(cost)
    }
}
