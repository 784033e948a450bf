//! Point-pattern matching over strictly ascending lists of reals: costs are
//! built from successive increments, with the phantom origin 0 standing in
//! for the missing predecessor of the first element. Equivalent to the
//! gap-penalty edit distance applied to the increment lists.

use super::engine::EditDp;
use super::ElasticError;

/// Point-pattern distance between two strictly ascending lists of
/// non-negative reals (each list ascends from the phantom origin 0).
pub fn ppm(a: &[f64], b: &[f64]) -> Result<f64, ElasticError> {
    if a.is_empty() || b.is_empty() {
        return Err(ElasticError::EmptyInput);
    }
    let inc_a = increments(a)?;
    let inc_b = increments(b)?;

    // Deleting a point costs the space it occupied; matching costs the
    // increment disagreement. Border rows accumulate, so the measure stays
    // a metric.
    let mut col0 = Vec::with_capacity(a.len() + 1);
    col0.push(0.0);
    for (i, inc) in inc_a.iter().enumerate() {
        col0.push(col0[i] + inc);
    }
    let mut row0 = Vec::with_capacity(b.len() + 1);
    row0.push(0.0);
    for (j, inc) in inc_b.iter().enumerate() {
        row0.push(row0[j] + inc);
    }

    let costs =
        |i: usize, j: usize| (inc_a[i - 1], (inc_a[i - 1] - inc_b[j - 1]).abs(), inc_b[j - 1]);
    let dp = EditDp { p: a.len(), q: b.len(), col0: &col0, row0: &row0, corridor: None };
    Ok(dp.cost(costs))
}

fn increments(list: &[f64]) -> Result<Vec<f64>, ElasticError> {
    let mut prev = 0.0;
    let mut out = Vec::with_capacity(list.len());
    for (i, &v) in list.iter().enumerate() {
        if v <= prev || !v.is_finite() {
            return Err(ElasticError::NotAscending { index: i + 1 });
        }
        out.push(v - prev);
        prev = v;
    }
    Ok(out)
}
