//! Longest common subsequence under a value tolerance and an index window,
//! with the normalized dissimilarity `1 - count / min(p, q)`.

use super::ElasticError;
use crate::series::{lp_dist, TimeSeries};

/// Parameters of the common-subsequence measure: two samples may match when
/// their local distance is below `epsilon` and their 1-based indices differ
/// by less than `delta`. `delta` is kept real so halved window schedules
/// need no rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcssParams {
    pub epsilon: f64,
    pub delta: f64,
}

impl LcssParams {
    pub fn new(epsilon: f64, delta: f64) -> Self {
        Self { epsilon, delta }
    }
}

/// Match count plus the normalized dissimilarity in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcssResult {
    pub match_count: usize,
    pub dissimilarity: f64,
}

/// Longest common subsequence length and its normalized dissimilarity.
/// The local distance is the L2 norm.
pub fn lcss(
    a: &TimeSeries,
    b: &TimeSeries,
    params: &LcssParams,
) -> Result<LcssResult, ElasticError> {
    if a.is_empty() || b.is_empty() {
        return Err(ElasticError::EmptyInput);
    }
    if a.dim() != b.dim() {
        return Err(ElasticError::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    if params.epsilon <= 0.0 || params.epsilon.is_nan() {
        return Err(ElasticError::InvalidParameter { name: "epsilon", value: params.epsilon });
    }
    if params.delta < 0.0 || params.delta.is_nan() {
        return Err(ElasticError::InvalidParameter { name: "delta", value: params.delta });
    }

    let (p, q) = (a.len(), b.len());
    let mut prev = vec![0usize; q + 1];
    let mut cur = vec![0usize; q + 1];
    for i in 1..=p {
        for j in 1..=q {
            let within_window = (i as f64 - j as f64).abs() < params.delta;
            cur[j] = if within_window && lp_dist(a.value(i - 1), b.value(j - 1), 2) < params.epsilon
            {
                prev[j - 1] + 1
            } else {
                prev[j].max(cur[j - 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    let match_count = prev[q];
    Ok(LcssResult { match_count, dissimilarity: 1.0 - match_count as f64 / p.min(q) as f64 })
}
