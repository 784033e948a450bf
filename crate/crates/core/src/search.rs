//! Distance bounds between original and down-sampled series, the
//! precomputed pyramid index built from them, and range queries that use the
//! bounds to reject candidates before paying a full-resolution comparison.
//!
//! Because the time-warp edit distance is a metric, a candidate whose
//! reduced-form distance exceeds the radius plus both self-distances can be
//! dismissed without ever being compared at full resolution, and no true
//! match is ever lost.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::elastic::{twed, ElasticError, TwedParams};
use crate::pwca::{halving_pyramid, PwcaApproximation};
use crate::series::TimeSeries;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("invalid parameter {name}: {value}")]
    BadParam { name: &'static str, value: f64 },
    #[error("reduction size r={r} out of range for length {len}")]
    BadReduction { r: usize, len: usize },
    #[error("search radius must be non-negative, got {0}")]
    NegativeRadius(f64),
    #[error("entries were built with different distance parameters")]
    ParamMismatch,
    #[error("pyramid level {level} missing (entry has {available} levels)")]
    MissingLevel { level: usize, available: usize },
    #[error(transparent)]
    Elastic(#[from] ElasticError),
}

/// Upper bound on the distance between a series' piecewise-constant form
/// (`p` samples, `r` extremities) and its extremity reduction:
/// `lambda * (p - r) + nu * delta_t * (2p - r)`, where `delta_t` is the
/// mean timestamp gap inside the constant segments.
pub fn reduction_bound(
    p: usize,
    r: usize,
    lambda: f64,
    nu: f64,
    delta_t: f64,
) -> Result<f64, SearchError> {
    if r < 1 || r >= p {
        return Err(SearchError::BadReduction { r, len: p });
    }
    if lambda < 0.0 || lambda.is_nan() {
        return Err(SearchError::BadParam { name: "lambda", value: lambda });
    }
    if nu <= 0.0 || nu.is_nan() {
        return Err(SearchError::BadParam { name: "nu", value: nu });
    }
    if delta_t < 0.0 || !delta_t.is_finite() {
        return Err(SearchError::BadParam { name: "delta_t", value: delta_t });
    }
    Ok(lambda * (p - r) as f64 + nu * delta_t * (2 * p - r) as f64)
}

/// Upper bound on a single series' distance to its own extremity reduction,
/// derivable without any exact evaluation: the reduction bound plus twice
/// the approximation's L1 error.
pub fn self_distance_bound(
    approx: &PwcaApproximation,
    lambda: f64,
    nu: f64,
) -> Result<f64, SearchError> {
    Ok(reduction_bound(approx.len(), approx.r(), lambda, nu, approx.delta_t_avg())?
        + 2.0 * approx.lp_error())
}

/// Upper bound on `|d(A, B) - d(reduced A, reduced B)|` built from both
/// series' reduction bounds and approximation errors, each series keeping
/// its own gap statistic.
pub fn approximation_gap_bound(
    approx_a: &PwcaApproximation,
    approx_b: &PwcaApproximation,
    lambda: f64,
    nu: f64,
) -> Result<f64, SearchError> {
    Ok(self_distance_bound(approx_a, lambda, nu)? + self_distance_bound(approx_b, lambda, nu)?)
}

/// Which self-distance terms a lower bound is assembled from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundForm {
    /// Exact precomputed reduction self-distances (tighter).
    Tight,
    /// Derived bound terms only, no exact precomputation (looser).
    Loose,
}

/// One pyramid level of an indexed series with its cached bound terms.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexLevel {
    r: usize,
    extremities: TimeSeries,
    self_dist: f64,
    lp_error: f64,
    reduction_term: f64,
}

impl IndexLevel {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn extremities(&self) -> &TimeSeries {
        &self.extremities
    }

    /// Exact distance between the reduction and the original series.
    pub fn self_dist(&self) -> f64 {
        self.self_dist
    }

    /// L1 error of the piecewise-constant form against the original.
    pub fn lp_error(&self) -> f64 {
        self.lp_error
    }

    /// The level's reduction bound term.
    pub fn reduction_term(&self) -> f64 {
        self.reduction_term
    }

    /// Derived stand-in for `self_dist` when no exact value is available.
    pub fn loose_self_bound(&self) -> f64 {
        self.reduction_term + 2.0 * self.lp_error
    }
}

/// A database series with its pyramid of reductions and cached bound terms,
/// coarsest level first.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeIndexEntry {
    series_id: usize,
    series: TimeSeries,
    lambda: f64,
    nu: f64,
    levels: Vec<IndexLevel>,
}

impl RangeIndexEntry {
    pub fn series_id(&self) -> usize {
        self.series_id
    }

    pub fn series(&self) -> &TimeSeries {
        &self.series
    }

    pub fn levels(&self) -> &[IndexLevel] {
        &self.levels
    }

    pub fn params(&self) -> TwedParams {
        TwedParams { lambda: self.lambda, nu: self.nu, p_norm: 1 }
    }

    /// Whether every cached exact self-distance respects its derived bound.
    pub fn cache_consistent(&self) -> bool {
        self.levels.iter().all(|l| l.self_dist <= l.loose_self_bound() + 1e-9)
    }
}

/// Indexes one series: its halving pyramid plus, per level, the exact
/// reduction self-distance and the derived bound terms. Series shorter than
/// four samples get an empty pyramid and are only ever compared exactly.
pub fn index_entry(
    series: &TimeSeries,
    series_id: usize,
    lambda: f64,
    nu: f64,
) -> Result<RangeIndexEntry, SearchError> {
    if lambda < 0.0 || lambda.is_nan() {
        return Err(SearchError::BadParam { name: "lambda", value: lambda });
    }
    if nu <= 0.0 || nu.is_nan() {
        return Err(SearchError::BadParam { name: "nu", value: nu });
    }
    let params = TwedParams { lambda, nu, p_norm: 1 };
    let mut levels = Vec::new();
    if series.len() >= 4 {
        for approx in halving_pyramid(series).expect("length checked") {
            let self_dist = twed(approx.extremities(), series, &params)?.cost();
            let reduction_term =
                reduction_bound(approx.len(), approx.r(), lambda, nu, approx.delta_t_avg())?;
            levels.push(IndexLevel {
                r: approx.r(),
                extremities: approx.extremities().clone(),
                self_dist,
                lp_error: approx.lp_error(),
                reduction_term,
            });
        }
    }
    Ok(RangeIndexEntry { series_id, series: series.clone(), lambda, nu, levels })
}

/// Indexes a whole database; `series_id` is the position in `db`.
pub fn build_index(
    db: &[TimeSeries],
    lambda: f64,
    nu: f64,
) -> Result<Vec<RangeIndexEntry>, SearchError> {
    db.par_iter().enumerate().map(|(id, s)| index_entry(s, id, lambda, nu)).collect()
}

/// Lower bound on the exact distance between two indexed series from one
/// pyramid level: the reduced-form distance minus both self-distance terms,
/// clamped at zero.
pub fn lower_bound(
    a: &RangeIndexEntry,
    b: &RangeIndexEntry,
    level: usize,
    form: BoundForm,
) -> Result<f64, SearchError> {
    if a.lambda != b.lambda || a.nu != b.nu {
        return Err(SearchError::ParamMismatch);
    }
    let la = a
        .levels
        .get(level)
        .ok_or(SearchError::MissingLevel { level, available: a.levels.len() })?;
    let lb = b
        .levels
        .get(level)
        .ok_or(SearchError::MissingLevel { level, available: b.levels.len() })?;
    let d_reduced = twed(&la.extremities, &lb.extremities, &a.params())?.cost();
    let (ta, tb) = match form {
        BoundForm::Tight => (la.self_dist, lb.self_dist),
        BoundForm::Loose => (la.loose_self_bound(), lb.loose_self_bound()),
    };
    Ok((d_reduced - ta - tb).max(0.0))
}

/// Outcome of one range query.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeQueryReport {
    /// `(series_id, exact distance)` pairs with distance within the radius,
    /// sorted by distance.
    pub matches: Vec<(usize, f64)>,
    /// How many candidates were rejected at each pyramid level.
    pub pruned_per_level: Vec<usize>,
    /// How many candidates were compared at full resolution.
    pub exact_evaluations: usize,
    pub wall: Duration,
}

impl RangeQueryReport {
    pub fn pruned_total(&self) -> usize {
        self.pruned_per_level.iter().sum()
    }
}

enum Outcome {
    Pruned(usize),
    Evaluated(Option<(usize, f64)>),
}

/// Range query with coarse-to-fine rejection: at each shared pyramid level
/// the candidate is dismissed once the reduced-form distance exceeds the
/// radius plus both cached self-distances; survivors pay exactly one
/// full-resolution comparison.
pub fn filtered_range_query(
    query: &RangeIndexEntry,
    db: &[RangeIndexEntry],
    radius: f64,
) -> Result<RangeQueryReport, SearchError> {
    if radius < 0.0 || radius.is_nan() {
        return Err(SearchError::NegativeRadius(radius));
    }
    if db.iter().any(|e| e.lambda != query.lambda || e.nu != query.nu) {
        return Err(SearchError::ParamMismatch);
    }
    let start = Instant::now();
    let params = query.params();
    let outcomes: Vec<Outcome> = db
        .par_iter()
        .map(|candidate| -> Result<Outcome, SearchError> {
            let shared = query.levels.len().min(candidate.levels.len());
            for level in 0..shared {
                let ql = &query.levels[level];
                let cl = &candidate.levels[level];
                let d_reduced = twed(&ql.extremities, &cl.extremities, &params)?.cost();
                if d_reduced > radius + ql.self_dist + cl.self_dist {
                    return Ok(Outcome::Pruned(level));
                }
            }
            let exact = twed(&query.series, &candidate.series, &params)?.cost();
            Ok(Outcome::Evaluated((exact <= radius).then_some((candidate.series_id, exact))))
        })
        .collect::<Result<_, _>>()?;

    let max_levels = db.iter().map(|e| e.levels.len()).max().unwrap_or(0).min(query.levels.len());
    let mut pruned_per_level = vec![0usize; max_levels];
    let mut matches = Vec::new();
    let mut exact_evaluations = 0;
    for outcome in outcomes {
        match outcome {
            Outcome::Pruned(level) => pruned_per_level[level] += 1,
            Outcome::Evaluated(hit) => {
                exact_evaluations += 1;
                matches.extend(hit);
            }
        }
    }
    matches.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));
    Ok(RangeQueryReport { matches, pruned_per_level, exact_evaluations, wall: start.elapsed() })
}

/// Ground truth: one exact comparison per database element.
pub fn linear_scan_range_query(
    query: &TimeSeries,
    db: &[TimeSeries],
    radius: f64,
    params: &TwedParams,
) -> Result<RangeQueryReport, SearchError> {
    if radius < 0.0 || radius.is_nan() {
        return Err(SearchError::NegativeRadius(radius));
    }
    let start = Instant::now();
    let mut matches: Vec<(usize, f64)> = db
        .par_iter()
        .enumerate()
        .map(|(id, candidate)| Ok((id, twed(query, candidate, params)?.cost())))
        .collect::<Result<Vec<_>, SearchError>>()?
        .into_iter()
        .filter(|&(_, d)| d <= radius)
        .collect();
    matches.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));
    Ok(RangeQueryReport {
        matches,
        pruned_per_level: Vec::new(),
        exact_evaluations: db.len(),
        wall: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwca::pwca_optimal;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn series(values: &[f64]) -> TimeSeries {
        TimeSeries::univariate(values).unwrap()
    }

    fn random_series(rng: &mut ChaCha8Rng, len: usize) -> TimeSeries {
        series(&(0..len).map(|_| rng.random_range(-5.0..5.0)).collect::<Vec<_>>())
    }

    #[test]
    fn reduction_bound_arithmetic() {
        let b = reduction_bound(100, 50, 0.01, 0.01, 1.0).unwrap();
        assert!((b - 2.0).abs() < 1e-12);
        let tiny = reduction_bound(100, 50, 0.0, 1e-9, 1.0).unwrap();
        assert!(tiny < 1e-6);
    }

    #[test]
    fn reduction_bound_rejects_bad_ranges() {
        assert!(matches!(
            reduction_bound(10, 0, 0.1, 0.1, 1.0),
            Err(SearchError::BadReduction { .. })
        ));
        assert!(matches!(
            reduction_bound(10, 10, 0.1, 0.1, 1.0),
            Err(SearchError::BadReduction { .. })
        ));
        assert!(matches!(
            reduction_bound(10, 5, -0.1, 0.1, 1.0),
            Err(SearchError::BadParam { .. })
        ));
        assert!(matches!(reduction_bound(10, 5, 0.1, 0.0, 1.0), Err(SearchError::BadParam { .. })));
    }

    #[test]
    fn reduction_holds_on_random_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let params = TwedParams { lambda: 0.3, nu: 0.2, p_norm: 1 };
        for _ in 0..100 {
            let p = rng.random_range(5..30);
            let x = random_series(&mut rng, p);
            let r = rng.random_range(2..p);
            let approx = pwca_optimal(&x, r).unwrap();
            let d = twed(approx.full(), approx.extremities(), &params).unwrap().cost();
            let bound =
                reduction_bound(p, r, params.lambda, params.nu, approx.delta_t_avg()).unwrap();
            assert!(d <= bound + 1e-9, "p={p} r={r}: d={d} bound={bound}");
        }
    }

    #[test]
    fn gap_bound_formula_and_lossless_case() {
        let mut rng = ChaCha8Rng::seed_from_u64(52);
        let x = random_series(&mut rng, 12);
        let y = random_series(&mut rng, 12);
        let ax = pwca_optimal(&x, 11).unwrap();
        let ay = pwca_optimal(&y, 11).unwrap();
        let bound = approximation_gap_bound(&ax, &ay, 0.5, 0.25).unwrap();
        let expected = 0.5 * ((12 - 11) + (12 - 11)) as f64
            + 0.25 * (ax.delta_t_avg() * (24 - 11) as f64 + ay.delta_t_avg() * (24 - 11) as f64)
            + 2.0 * ax.lp_error()
            + 2.0 * ay.lp_error();
        assert!((bound - expected).abs() < 1e-12);

        // Constant pair: approximations are exact, the error terms vanish.
        let c = series(&[4.0; 10]);
        let ac = pwca_optimal(&c, 5).unwrap();
        let b = approximation_gap_bound(&ac, &ac, 0.5, 0.25).unwrap();
        assert_eq!(ac.lp_error(), 0.0);
        let d_orig = twed(&c, &c, &TwedParams { lambda: 0.5, nu: 0.25, p_norm: 1 }).unwrap().cost();
        let d_red =
            twed(ac.extremities(), ac.extremities(), &TwedParams::new(0.5, 0.25)).unwrap().cost();
        assert!((d_orig - d_red).abs() <= b);
    }

    #[test]
    fn gap_bound_holds_empirically() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let params = TwedParams { lambda: 0.1, nu: 0.05, p_norm: 1 };
        for _ in 0..100 {
            let p = rng.random_range(6..25);
            let q = rng.random_range(6..25);
            let a = random_series(&mut rng, p);
            let b = random_series(&mut rng, q);
            let ra = rng.random_range(2..p);
            let rb = rng.random_range(2..q);
            let aa = pwca_optimal(&a, ra).unwrap();
            let ab = pwca_optimal(&b, rb).unwrap();
            let exact = twed(&a, &b, &params).unwrap().cost();
            let reduced = twed(aa.extremities(), ab.extremities(), &params).unwrap().cost();
            let bound = approximation_gap_bound(&aa, &ab, params.lambda, params.nu).unwrap();
            assert!(
                (exact - reduced).abs() <= bound + 1e-9,
                "gap {} exceeds bound {bound}",
                (exact - reduced).abs()
            );
        }
    }

    #[test]
    fn lower_bounds_never_exceed_exact_and_tight_dominates() {
        let mut rng = ChaCha8Rng::seed_from_u64(54);
        for _ in 0..60 {
            let la = rng.random_range(8..30);
            let lb = rng.random_range(8..30);
            let a = random_series(&mut rng, la);
            let b = random_series(&mut rng, lb);
            let ea = index_entry(&a, 0, 0.1, 0.05).unwrap();
            let eb = index_entry(&b, 1, 0.1, 0.05).unwrap();
            let exact = twed(&a, &b, &ea.params()).unwrap().cost();
            let shared = ea.levels().len().min(eb.levels().len());
            for level in 0..shared {
                let tight = lower_bound(&ea, &eb, level, BoundForm::Tight).unwrap();
                let loose = lower_bound(&ea, &eb, level, BoundForm::Loose).unwrap();
                assert!(tight <= exact + 1e-9, "tight {tight} > exact {exact}");
                assert!(loose <= exact + 1e-9, "loose {loose} > exact {exact}");
                assert!(tight >= loose - 1e-9, "tight {tight} < loose {loose}");
            }
        }
    }

    #[test]
    fn lower_bound_of_identical_entries_is_zero() {
        let x = series(&[1.0, 5.0, 2.0, 8.0, 3.0, 3.0, 9.0, 1.0]);
        let e = index_entry(&x, 0, 0.1, 0.05).unwrap();
        for level in 0..e.levels().len() {
            assert_eq!(lower_bound(&e, &e, level, BoundForm::Tight).unwrap(), 0.0);
        }
    }

    #[test]
    fn missing_level_is_reported() {
        let x = series(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        let e = index_entry(&x, 0, 0.1, 0.05).unwrap();
        let n = e.levels().len();
        assert!(matches!(
            lower_bound(&e, &e, n, BoundForm::Tight),
            Err(SearchError::MissingLevel { .. })
        ));
    }

    #[test]
    fn index_caches_are_consistent_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let db: Vec<TimeSeries> = (0..20).map(|_| random_series(&mut rng, 24)).collect();
        let index = build_index(&db, 0.01, 0.01).unwrap();
        for entry in &index {
            assert!(entry.cache_consistent());
        }
        let again = build_index(&db, 0.01, 0.01).unwrap();
        assert_eq!(index, again);

        let constant = vec![series(&[2.0; 16])];
        let idx = build_index(&constant, 0.01, 0.01).unwrap();
        for level in idx[0].levels() {
            assert_eq!(level.lp_error(), 0.0);
        }
    }

    #[test]
    fn short_series_get_empty_pyramids() {
        let db = vec![series(&[1.0, 2.0])];
        let index = build_index(&db, 0.01, 0.01).unwrap();
        assert!(index[0].levels().is_empty());
    }

    fn small_db(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<TimeSeries> {
        // A few noisy step templates so that bounds have something to reject.
        let templates: Vec<Vec<f64>> = (0..4)
            .map(|_| {
                let levels: Vec<f64> = (0..4).map(|_| rng.random_range(-4.0..4.0)).collect();
                (0..len).map(|i| levels[i * 4 / len]).collect()
            })
            .collect();
        (0..n)
            .map(|i| {
                let t = &templates[i % templates.len()];
                series(&t.iter().map(|v| v + rng.random_range(-0.05..0.05)).collect::<Vec<_>>())
            })
            .collect()
    }

    #[test]
    fn filtered_query_agrees_with_linear_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(56);
        let db = small_db(&mut rng, 60, 32);
        let index = build_index(&db, 0.01, 0.01).unwrap();
        let params = TwedParams { lambda: 0.01, nu: 0.01, p_norm: 1 };
        for qi in [0usize, 7, 13] {
            for radius in [0.5, 2.0, 8.0, 32.0] {
                let filtered = filtered_range_query(&index[qi], &index, radius).unwrap();
                let ls = linear_scan_range_query(&db[qi], &db, radius, &params).unwrap();
                let filtered_ids: Vec<usize> = filtered.matches.iter().map(|m| m.0).collect();
                let ls_ids: Vec<usize> = ls.matches.iter().map(|m| m.0).collect();
                assert_eq!(filtered_ids, ls_ids, "query {qi} radius {radius}");
                assert_eq!(filtered.pruned_total() + filtered.exact_evaluations, db.len());
                assert_eq!(ls.exact_evaluations, db.len());
            }
        }
    }

    #[test]
    fn infinite_radius_matches_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(57);
        let db = small_db(&mut rng, 20, 16);
        let index = build_index(&db, 0.01, 0.01).unwrap();
        let report = filtered_range_query(&index[0], &index, f64::INFINITY).unwrap();
        assert_eq!(report.matches.len(), db.len());
    }

    #[test]
    fn zero_radius_finds_exactly_the_duplicates() {
        let mut rng = ChaCha8Rng::seed_from_u64(58);
        let x = random_series(&mut rng, 16);
        let other = random_series(&mut rng, 16);
        let db = vec![x.clone(), other, x.clone()];
        let index = build_index(&db, 0.01, 0.01).unwrap();
        let report = filtered_range_query(&index[0], &index, 0.0).unwrap();
        let ids: Vec<usize> = report.matches.iter().map(|m| m.0).collect();
        assert_eq!(ids, vec![0, 2]);
    }

    #[test]
    fn empty_db_and_single_element_scan() {
        let params = TwedParams { lambda: 0.01, nu: 0.01, p_norm: 1 };
        let q = series(&[1.0, 2.0, 3.0]);
        let empty = linear_scan_range_query(&q, &[], 5.0, &params).unwrap();
        assert!(empty.matches.is_empty());
        assert_eq!(empty.exact_evaluations, 0);

        let db = vec![series(&[1.0, 2.0, 4.0])];
        let one = linear_scan_range_query(&q, &db, 100.0, &params).unwrap();
        assert_eq!(one.matches.len(), 1);
        assert_eq!(one.exact_evaluations, 1);
    }

    #[test]
    fn negative_radius_rejected() {
        let db = vec![series(&[1.0, 2.0, 3.0, 4.0])];
        let index = build_index(&db, 0.01, 0.01).unwrap();
        assert!(matches!(
            filtered_range_query(&index[0], &index, -1.0),
            Err(SearchError::NegativeRadius(_))
        ));
    }

    #[test]
    fn external_query_indexed_on_the_fly_agrees_with_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(60);
        let db = small_db(&mut rng, 40, 32);
        let index = build_index(&db, 0.01, 0.01).unwrap();
        let params = TwedParams { lambda: 0.01, nu: 0.01, p_norm: 1 };
        let outside = random_series(&mut rng, 32);
        let entry = index_entry(&outside, db.len(), 0.01, 0.01).unwrap();
        for radius in [2.0, 16.0, 64.0] {
            let filtered = filtered_range_query(&entry, &index, radius).unwrap();
            let ls = linear_scan_range_query(&outside, &db, radius, &params).unwrap();
            let filtered_ids: Vec<usize> = filtered.matches.iter().map(|m| m.0).collect();
            let ls_ids: Vec<usize> = ls.matches.iter().map(|m| m.0).collect();
            assert_eq!(filtered_ids, ls_ids);
        }
    }

    #[test]
    fn short_query_skips_pruning_but_stays_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let db = small_db(&mut rng, 20, 16);
        let index = build_index(&db, 0.01, 0.01).unwrap();
        let params = TwedParams { lambda: 0.01, nu: 0.01, p_norm: 1 };
        let short = series(&[0.5, 1.5, -0.5]);
        let entry = index_entry(&short, db.len(), 0.01, 0.01).unwrap();
        assert!(entry.levels().is_empty());
        let filtered = filtered_range_query(&entry, &index, 10.0).unwrap();
        let ls = linear_scan_range_query(&short, &db, 10.0, &params).unwrap();
        assert_eq!(filtered.matches, ls.matches);
        assert_eq!(filtered.pruned_total(), 0);
        assert_eq!(filtered.exact_evaluations, db.len());
    }

    #[test]
    fn mismatched_parameters_are_rejected() {
        let x = series(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        let a = index_entry(&x, 0, 0.01, 0.01).unwrap();
        let b = index_entry(&x, 1, 0.02, 0.01).unwrap();
        assert!(matches!(
            lower_bound(&a, &b, 0, BoundForm::Tight),
            Err(SearchError::ParamMismatch)
        ));
        assert!(matches!(filtered_range_query(&a, &[b], 1.0), Err(SearchError::ParamMismatch)));
    }

    #[test]
    fn pruned_fraction_non_increasing_in_radius() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let db = small_db(&mut rng, 80, 32);
        let index = build_index(&db, 0.01, 0.01).unwrap();
        let mut last = usize::MAX;
        for radius in [1.0, 2.0, 4.0, 8.0, 16.0, 32.0] {
            let report = filtered_range_query(&index[3], &index, radius).unwrap();
            assert!(report.pruned_total() <= last);
            last = report.pruned_total();
        }
    }
}
