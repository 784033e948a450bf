//! Time-series containers, validation, and the non-elastic Lp baseline.
//!
//! A [`TimeSeries`] holds `d`-dimensional sample values together with strictly
//! increasing timestamps. When input data carries no explicit time axis,
//! constructors assign the 1-based sample index as the timestamp.

use thiserror::Error;

/// What went wrong at a particular sample while checking series invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// A value component is NaN or infinite.
    NonFiniteValue,
    /// A timestamp is NaN or infinite.
    NonFiniteStamp,
    /// The timestamp does not strictly exceed its predecessor.
    StampNotIncreasing,
}

impl std::fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let msg = match self {
            ViolationKind::NonFiniteValue => "non-finite value component",
            ViolationKind::NonFiniteStamp => "non-finite timestamp",
            ViolationKind::StampNotIncreasing => "timestamp does not strictly increase",
        };
        f.write_str(msg)
    }
}

/// First invariant violation found in a series; `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("sample {index}: {kind}")]
pub struct Violation {
    pub index: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("series dimension must be at least 1")]
    ZeroDimension,
    #[error("{values} values cannot form samples of dimension {dim}")]
    RaggedValues { values: usize, dim: usize },
    #[error("{values} samples but {stamps} timestamps")]
    StampCountMismatch { values: usize, stamps: usize },
    #[error(transparent)]
    Violation(#[from] Violation),
    #[error("series lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operation requires a non-empty series")]
    Empty,
    #[error("Lp order must be at least 1")]
    BadNorm,
}

/// Borrowed view of one sample: a value vector and its timestamp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<'a> {
    pub value: &'a [f64],
    pub timestamp: f64,
}

/// An immutable time series of `d`-dimensional samples with strictly
/// increasing timestamps. The empty series is representable; elastic
/// measures define their own behavior on it.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    dim: usize,
    values: Vec<f64>,
    stamps: Vec<f64>,
}

impl TimeSeries {
    /// Builds a series from flattened sample-major values (`len * dim`
    /// entries) and one timestamp per sample. Rejects any invariant
    /// violation, reporting the first offending 1-based sample index.
    pub fn new(dim: usize, values: Vec<f64>, stamps: Vec<f64>) -> Result<Self, SeriesError> {
        check_parts(dim, &values, &stamps)?;
        Ok(Self { dim, values, stamps })
    }

    /// One-dimensional series with 1-based index timestamps.
    pub fn univariate(values: &[f64]) -> Result<Self, SeriesError> {
        let stamps = (1..=values.len()).map(|i| i as f64).collect();
        Self::new(1, values.to_vec(), stamps)
    }

    /// One-dimensional series with explicit timestamps.
    pub fn univariate_with_stamps(values: &[f64], stamps: &[f64]) -> Result<Self, SeriesError> {
        Self::new(1, values.to_vec(), stamps.to_vec())
    }

    /// The empty series of the given dimension.
    pub fn empty(dim: usize) -> Self {
        Self { dim, values: Vec::new(), stamps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.stamps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stamps.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Value vector of the 0-based sample `i`.
    pub fn value(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    /// Timestamp of the 0-based sample `i`.
    pub fn stamp(&self, i: usize) -> f64 {
        self.stamps[i]
    }

    pub fn sample(&self, i: usize) -> Sample<'_> {
        Sample { value: self.value(i), timestamp: self.stamp(i) }
    }

    pub fn iter(&self) -> impl Iterator<Item = Sample<'_>> {
        (0..self.len()).map(move |i| self.sample(i))
    }

    /// Flattened sample-major values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn stamps(&self) -> &[f64] {
        &self.stamps
    }

    /// Re-checks every type invariant, reporting the first violation.
    /// Always succeeds on a series built through the constructors.
    pub fn validate(&self) -> Result<(), SeriesError> {
        check_parts(self.dim, &self.values, &self.stamps)
    }
}

fn check_parts(dim: usize, values: &[f64], stamps: &[f64]) -> Result<(), SeriesError> {
    if dim == 0 {
        return Err(SeriesError::ZeroDimension);
    }
    if !values.len().is_multiple_of(dim) {
        return Err(SeriesError::RaggedValues { values: values.len(), dim });
    }
    let len = values.len() / dim;
    if stamps.len() != len {
        return Err(SeriesError::StampCountMismatch { values: len, stamps: stamps.len() });
    }
    for i in 0..len {
        for k in 0..dim {
            if !values[i * dim + k].is_finite() {
                return Err(Violation { index: i + 1, kind: ViolationKind::NonFiniteValue }.into());
            }
        }
        if !stamps[i].is_finite() {
            return Err(Violation { index: i + 1, kind: ViolationKind::NonFiniteStamp }.into());
        }
        if i > 0 && stamps[i] <= stamps[i - 1] {
            return Err(Violation { index: i + 1, kind: ViolationKind::StampNotIncreasing }.into());
        }
    }
    Ok(())
}

/// Lp distance between two equal-dimension vectors: `(Σ_k |x_k - y_k|^p)^(1/p)`.
pub fn lp_local(x: &[f64], y: &[f64], p_norm: u32) -> Result<f64, SeriesError> {
    if x.len() != y.len() {
        return Err(SeriesError::DimensionMismatch { left: x.len(), right: y.len() });
    }
    if p_norm == 0 {
        return Err(SeriesError::BadNorm);
    }
    Ok(lp_dist(x, y, p_norm))
}

/// Unchecked Lp distance; callers validate dimensions and the norm order once.
pub(crate) fn lp_dist(x: &[f64], y: &[f64], p_norm: u32) -> f64 {
    match p_norm {
        1 => x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum(),
        2 => x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt(),
        p => {
            let sum: f64 = x.iter().zip(y).map(|(a, b)| (a - b).abs().powi(p as i32)).sum();
            sum.powf(1.0 / p as f64)
        }
    }
}

/// Sample-wise sum of Lp distances over two equal-length series,
/// `Σ_i d_LP(a_i, b_i)`; timestamps are ignored. This additive form is the
/// quantity the elastic upper bounds are stated against.
pub fn lp_series_distance(a: &TimeSeries, b: &TimeSeries, p_norm: u32) -> Result<f64, SeriesError> {
    if a.is_empty() || b.is_empty() {
        return Err(SeriesError::Empty);
    }
    if a.len() != b.len() {
        return Err(SeriesError::LengthMismatch { left: a.len(), right: b.len() });
    }
    if a.dim() != b.dim() {
        return Err(SeriesError::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    if p_norm == 0 {
        return Err(SeriesError::BadNorm);
    }
    Ok((0..a.len()).map(|i| lp_dist(a.value(i), b.value(i), p_norm)).sum())
}
