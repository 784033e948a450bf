//! Optimal piecewise-constant approximation of a series, extraction of the
//! segment-extremity reduction, and the nested halving pyramid consumed by
//! the filtered range-query engine.
//!
//! A reduction to `r` extremities keeps all `p` samples in the
//! approximated form (`r - 1` constant segments, each valued at its sample
//! mean) and separately keeps the `r`-sample extremity series: the first
//! sample plus the last sample of every segment, each carrying its
//! segment's constant value and its own original timestamp. When leading
//! segments are singletons those positions would collide, so they are
//! nudged one sample to the right; this keeps the extremity timestamps
//! strictly increasing, keeps every segment represented, and always
//! preserves the final timestamp.

use rayon::prelude::*;
use thiserror::Error;

use crate::series::{lp_series_distance, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum PwcaError {
    #[error("reduction size r={r} out of range for series length {len} (need 2 <= r < len)")]
    ROutOfRange { r: usize, len: usize },
    #[error("series of length {len} too short to approximate (need at least {min} samples)")]
    TooShort { len: usize, min: usize },
}

/// A series' optimal reduction to `r` extremities, with its error and
/// timestamp-gap statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct PwcaApproximation {
    full: TimeSeries,
    extremities: TimeSeries,
    segment_bounds: Vec<(usize, usize)>,
    extremity_positions: Vec<usize>,
    delta_t_avg: f64,
    delta_t_overall: f64,
    lp_error: f64,
    squared_error: f64,
}

impl PwcaApproximation {
    /// The approximated series: all `p` samples at their original
    /// timestamps, values constant within each segment.
    pub fn full(&self) -> &TimeSeries {
        &self.full
    }

    /// The `r`-sample extremity series.
    pub fn extremities(&self) -> &TimeSeries {
        &self.extremities
    }

    /// Inclusive 0-based sample ranges of the constant segments.
    pub fn segment_bounds(&self) -> &[(usize, usize)] {
        &self.segment_bounds
    }

    /// 0-based positions of the extremities in the original series.
    pub fn extremity_positions(&self) -> &[usize] {
        &self.extremity_positions
    }

    /// Number of extremities.
    pub fn r(&self) -> usize {
        self.extremities.len()
    }

    /// Number of samples of the approximated series.
    pub fn len(&self) -> usize {
        self.full.len()
    }

    pub fn is_empty(&self) -> bool {
        self.full.is_empty()
    }

    /// Mean timestamp gap between successive samples lying inside the same
    /// segment. This is the gap statistic the reduction bounds consume.
    pub fn delta_t_avg(&self) -> f64 {
        self.delta_t_avg
    }

    /// Mean timestamp gap over all successive samples, segment boundaries
    /// included.
    pub fn delta_t_overall(&self) -> f64 {
        self.delta_t_overall
    }

    /// Sample-wise L1 distance between the approximated and original series.
    pub fn lp_error(&self) -> f64 {
        self.lp_error
    }

    /// The minimized segmentation objective: summed squared L2 residuals
    /// against each segment's mean.
    pub fn squared_error(&self) -> f64 {
        self.squared_error
    }
}

/// Optimal reduction of `x` to `r` extremities: segment boundaries minimize
/// the summed squared residuals over all segmentations into `r - 1`
/// contiguous non-empty segments, each segment valued at its mean.
pub fn pwca_optimal(x: &TimeSeries, r: usize) -> Result<PwcaApproximation, PwcaError> {
    let p = x.len();
    if r < 2 || r >= p {
        return Err(PwcaError::ROutOfRange { r, len: p });
    }
    let dim = x.dim();
    let segments = r - 1;

    // Prefix sums per dimension make any segment's residual O(d).
    let mut pre1 = vec![0.0; (p + 1) * dim];
    let mut pre2 = vec![0.0; (p + 1) * dim];
    for i in 0..p {
        let v = x.value(i);
        for k in 0..dim {
            pre1[(i + 1) * dim + k] = pre1[i * dim + k] + v[k];
            pre2[(i + 1) * dim + k] = pre2[i * dim + k] + v[k] * v[k];
        }
    }
    // Squared residual of samples lo..=hi against their mean.
    let sse = |lo: usize, hi: usize| -> f64 {
        let n = (hi - lo + 1) as f64;
        let mut acc = 0.0;
        for k in 0..dim {
            let s1 = pre1[(hi + 1) * dim + k] - pre1[lo * dim + k];
            let s2 = pre2[(hi + 1) * dim + k] - pre2[lo * dim + k];
            acc += (s2 - s1 * s1 / n).max(0.0);
        }
        acc
    };

    // best[k][i]: minimal cost of covering the first i samples with k segments.
    let width = p + 1;
    let mut best = vec![f64::INFINITY; (segments + 1) * width];
    let mut cut = vec![0usize; (segments + 1) * width];
    best[0] = 0.0;
    for k in 1..=segments {
        for i in k..=p - (segments - k) {
            let mut b = f64::INFINITY;
            let mut arg = k - 1;
            for j in k - 1..i {
                let cand = best[(k - 1) * width + j] + sse(j, i - 1);
                if cand < b {
                    b = cand;
                    arg = j;
                }
            }
            best[k * width + i] = b;
            cut[k * width + i] = arg;
        }
    }
    let squared_error = best[segments * width + p];

    // Recover the inclusive segment ranges.
    let mut bounds = vec![(0usize, 0usize); segments];
    let mut end = p;
    for k in (1..=segments).rev() {
        let start = cut[k * width + end];
        bounds[k - 1] = (start, end - 1);
        end = start;
    }

    Ok(build_approximation(x, &bounds, squared_error))
}

fn build_approximation(
    x: &TimeSeries,
    bounds: &[(usize, usize)],
    squared_error: f64,
) -> PwcaApproximation {
    let p = x.len();
    let dim = x.dim();
    let r = bounds.len() + 1;

    let mut values = vec![0.0; p * dim];
    for &(lo, hi) in bounds {
        let n = (hi - lo + 1) as f64;
        for k in 0..dim {
            let mean = (lo..=hi).map(|i| x.value(i)[k]).sum::<f64>() / n;
            for i in lo..=hi {
                values[i * dim + k] = mean;
            }
        }
    }
    let full = TimeSeries::new(dim, values, x.stamps().to_vec())
        .expect("segment means over a valid series stay valid");

    // First sample plus every segment end, nudged right where leading
    // singleton segments would collide.
    let mut positions = Vec::with_capacity(r);
    positions.push(0usize);
    for &(_, hi) in bounds {
        let prev = *positions.last().expect("non-empty");
        positions.push(hi.max(prev + 1));
    }
    debug_assert_eq!(positions.len(), r);
    debug_assert_eq!(*positions.last().unwrap(), p - 1);

    let mut evalues = Vec::with_capacity(r * dim);
    let mut estamps = Vec::with_capacity(r);
    for &pos in &positions {
        evalues.extend_from_slice(full.value(pos));
        estamps.push(x.stamp(pos));
    }
    let extremities = TimeSeries::new(dim, evalues, estamps)
        .expect("distinct ascending positions keep stamps strictly increasing");

    let mut intra_sum = 0.0;
    let mut intra_count = 0usize;
    for &(lo, hi) in bounds {
        for i in lo..hi {
            intra_sum += x.stamp(i + 1) - x.stamp(i);
            intra_count += 1;
        }
    }
    let delta_t_avg = intra_sum / intra_count as f64;
    let overall: f64 = (0..p - 1).map(|i| x.stamp(i + 1) - x.stamp(i)).sum();
    let delta_t_overall = overall / (p - 1) as f64;

    let lp_error = lp_series_distance(&full, x, 1).expect("same shape by construction");

    PwcaApproximation {
        full,
        extremities,
        segment_bounds: bounds.to_vec(),
        extremity_positions: positions,
        delta_t_avg,
        delta_t_overall,
        lp_error,
        squared_error,
    }
}

/// Nested reductions by repeated halving of the extremity count, down to
/// r = 2, ordered coarsest first as the query filter consumes them.
pub fn halving_pyramid(x: &TimeSeries) -> Result<Vec<PwcaApproximation>, PwcaError> {
    if x.len() < 4 {
        return Err(PwcaError::TooShort { len: x.len(), min: 4 });
    }
    let mut rs = Vec::new();
    let mut r = x.len().div_ceil(2);
    while r >= 2 {
        rs.push(r);
        if r == 2 {
            break;
        }
        r = r.div_ceil(2);
    }
    rs.reverse();
    rs.par_iter().map(|&r| pwca_optimal(x, r)).collect()
}

/// Extremity series of the optimal reduction to half the samples. Original
/// timestamps ride along, so the result is non-uniformly sampled.
pub fn downsample_half(x: &TimeSeries) -> Result<TimeSeries, PwcaError> {
    if x.len() < 4 {
        return Err(PwcaError::TooShort { len: x.len(), min: 4 });
    }
    Ok(pwca_optimal(x, x.len().div_ceil(2))?.extremities().clone())
}
