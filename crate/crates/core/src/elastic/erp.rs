//! Edit distance with a real gap penalty: deletes and inserts are priced
//! against a fixed gap element, which keeps the measure a metric on values.
//! Timestamps never enter the cost.

use super::engine::EditDp;
use super::ElasticError;
use crate::series::{lp_dist, TimeSeries};

/// Parameters of the gap-penalty edit distance. `gap: None` stands for the
/// zero vector of the operands' dimension, the customary choice.
#[derive(Debug, Clone, PartialEq)]
pub struct ErpParams {
    pub gap: Option<Vec<f64>>,
    pub p_norm: u32,
}

impl ErpParams {
    pub fn zero_gap() -> Self {
        Self { gap: None, p_norm: 1 }
    }
}

impl Default for ErpParams {
    fn default() -> Self {
        Self::zero_gap()
    }
}

/// Gap-penalty edit distance. Empty operands are fully defined: the empty
/// vs. empty distance is zero and a one-sided alignment accumulates per-gap
/// costs.
pub fn erp(a: &TimeSeries, b: &TimeSeries, params: &ErpParams) -> Result<f64, ElasticError> {
    if params.p_norm == 0 {
        return Err(ElasticError::InvalidParameter { name: "p_norm", value: 0.0 });
    }
    let dim = if a.is_empty() { b.dim() } else { a.dim() };
    if !a.is_empty() && !b.is_empty() && a.dim() != b.dim() {
        return Err(ElasticError::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    let zero;
    let gap: &[f64] = match &params.gap {
        Some(g) => {
            if g.len() != dim {
                return Err(ElasticError::GapDimensionMismatch { gap: g.len(), series: dim });
            }
            g
        }
        None => {
            zero = vec![0.0; dim];
            &zero
        }
    };

    // Both border rows accumulate gap costs, so a fully one-sided alignment
    // is an ordinary path rather than a forbidden one.
    let del_a: Vec<f64> = (0..a.len()).map(|i| lp_dist(a.value(i), gap, params.p_norm)).collect();
    let del_b: Vec<f64> = (0..b.len()).map(|j| lp_dist(gap, b.value(j), params.p_norm)).collect();
    let mut col0 = Vec::with_capacity(a.len() + 1);
    col0.push(0.0);
    for i in 0..a.len() {
        col0.push(col0[i] + del_a[i]);
    }
    let mut row0 = Vec::with_capacity(b.len() + 1);
    row0.push(0.0);
    for j in 0..b.len() {
        row0.push(row0[j] + del_b[j]);
    }

    let costs = |i: usize, j: usize| {
        (del_a[i - 1], lp_dist(a.value(i - 1), b.value(j - 1), params.p_norm), del_b[j - 1])
    };
    let dp = EditDp { p: a.len(), q: b.len(), col0: &col0, row0: &row0, corridor: None };
    Ok(dp.cost(costs))
}
