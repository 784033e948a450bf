//! Time-warp edit distance: an elastic measure whose delete costs depend on
//! the predecessor sample and whose every cost term adds a stiffness-weighted
//! timestamp difference plus a constant gap penalty.

use super::engine::{EditDp, INF};
use super::{AlignmentResult, ElasticError};
use crate::series::{lp_dist, TimeSeries};

/// Parameters of the time-warp edit distance.
///
/// `lambda` is the constant penalty added to every delete operation and
/// `nu` the stiffness multiplier on timestamp differences. With `nu > 0`
/// the measure is a distance on values and timestamps jointly; `nu = 0` is
/// accepted but the measure then no longer separates series that differ
/// only in their timestamps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwedParams {
    pub lambda: f64,
    pub nu: f64,
    pub p_norm: u32,
}

impl TwedParams {
    /// `lambda`/`nu` with the customary L1 local norm.
    pub fn new(lambda: f64, nu: f64) -> Self {
        Self { lambda, nu, p_norm: 1 }
    }

    /// Whether the configured parameters give the full metric on values and
    /// timestamps jointly.
    pub fn is_metric(&self) -> bool {
        self.nu > 0.0 && self.lambda >= 0.0
    }

    fn validate(&self) -> Result<(), ElasticError> {
        if self.lambda < 0.0 || self.lambda.is_nan() {
            return Err(ElasticError::InvalidParameter { name: "lambda", value: self.lambda });
        }
        if self.nu < 0.0 || self.nu.is_nan() {
            return Err(ElasticError::InvalidParameter { name: "nu", value: self.nu });
        }
        if self.p_norm == 0 {
            return Err(ElasticError::InvalidParameter { name: "p_norm", value: 0.0 });
        }
        Ok(())
    }
}

impl Default for TwedParams {
    fn default() -> Self {
        Self::new(1.0, 0.001)
    }
}

/// Tabulated delete-move costs for one series: entry `i` (0-based) is the
/// full cost of deleting sample `i + 1`, that is the local distance to its
/// predecessor, plus `nu` times the timestamp gap, plus `lambda`. The first
/// sample's predecessor is the phantom origin (zero vector at time 0).
///
/// The returned array has exactly `series.len()` entries, so a pairwise run
/// needs only O(p + q) space beyond the lattice. Callers comparing one
/// series against many can reuse its table across runs.
pub fn twed_delete_costs(series: &TimeSeries, params: &TwedParams) -> Vec<f64> {
    let zero = vec![0.0; series.dim()];
    (0..series.len())
        .map(|i| {
            let (prev_val, prev_stamp) = if i == 0 {
                (zero.as_slice(), 0.0)
            } else {
                (series.value(i - 1), series.stamp(i - 1))
            };
            lp_dist(series.value(i), prev_val, params.p_norm)
                + params.nu * (series.stamp(i) - prev_stamp).abs()
                + params.lambda
        })
        .collect()
}

/// Time-warp edit distance, cost only (two-row rolling storage).
///
/// One empty operand yields an explicit infinite result; two empty operands
/// yield zero.
pub fn twed(
    a: &TimeSeries,
    b: &TimeSeries,
    params: &TwedParams,
) -> Result<AlignmentResult, ElasticError> {
    run(a, b, params, false)
}

/// Time-warp edit distance with the realizing operation sequence retained.
pub fn twed_with_path(
    a: &TimeSeries,
    b: &TimeSeries,
    params: &TwedParams,
) -> Result<AlignmentResult, ElasticError> {
    run(a, b, params, true)
}

fn run(
    a: &TimeSeries,
    b: &TimeSeries,
    params: &TwedParams,
    keep_path: bool,
) -> Result<AlignmentResult, ElasticError> {
    params.validate()?;
    if a.is_empty() && b.is_empty() {
        return Ok(done(0.0, keep_path));
    }
    if a.is_empty() || b.is_empty() {
        return Ok(done(INF, keep_path));
    }
    if a.dim() != b.dim() {
        return Err(ElasticError::DimensionMismatch { left: a.dim(), right: b.dim() });
    }

    let del_a = twed_delete_costs(a, params);
    let del_b = twed_delete_costs(b, params);
    let zero = vec![0.0; a.dim()];
    let match_cost = |i: usize, j: usize| {
        let (va, ta) = sample_or_origin(a, &zero, i);
        let (vb, tb) = sample_or_origin(b, &zero, j);
        let (pa, pta) = sample_or_origin(a, &zero, i - 1);
        let (pb, ptb) = sample_or_origin(b, &zero, j - 1);
        lp_dist(va, vb, params.p_norm)
            + params.nu * (ta - tb).abs()
            + lp_dist(pa, pb, params.p_norm)
            + params.nu * (pta - ptb).abs()
    };
    let costs = |i: usize, j: usize| (del_a[i - 1], match_cost(i, j), del_b[j - 1]);

    let mut col0 = vec![INF; a.len() + 1];
    let mut row0 = vec![INF; b.len() + 1];
    col0[0] = 0.0;
    row0[0] = 0.0;
    let dp = EditDp { p: a.len(), q: b.len(), col0: &col0, row0: &row0, corridor: None };
    if keep_path {
        let lattice = dp.lattice(costs);
        Ok(AlignmentResult::with_path(lattice.final_cost(), lattice.backtrace()))
    } else {
        Ok(AlignmentResult::cost_only(dp.cost(costs)))
    }
}

/// 1-based sample access with the phantom origin at index 0.
fn sample_or_origin<'a>(s: &'a TimeSeries, zero: &'a [f64], i: usize) -> (&'a [f64], f64) {
    if i == 0 {
        (zero, 0.0)
    } else {
        (s.value(i - 1), s.stamp(i - 1))
    }
}

fn done(cost: f64, keep_path: bool) -> AlignmentResult {
    if keep_path {
        AlignmentResult::with_path(cost, Vec::new())
    } else {
        AlignmentResult::cost_only(cost)
    }
}
