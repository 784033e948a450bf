//! Runnable invariant suites: reduced-size versions of the library's
//! mathematical guarantees, usable as a smoke test from the command line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{nn1_error_rate, Measure};
use crate::elastic::{dtw, erp, twed, twed_with_path, DtwParams, EditOp, ErpParams, TwedParams};
use crate::pwca::pwca_optimal;
use crate::search::{
    approximation_gap_bound, build_index, filtered_range_query, index_entry,
    linear_scan_range_query, lower_bound, reduction_bound, BoundForm,
};
use crate::series::{lp_series_distance, TimeSeries};

/// Outcome of one invariant suite.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl SuiteResult {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        Self { name, passed: true, detail: detail.into() }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        Self { name, passed: false, detail: detail.into() }
    }
}

/// Runs every suite with the given seed. All suites are deterministic for a
/// fixed seed.
pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    vec![
        series_metric_axioms(seed),
        twed_metric_axioms(seed ^ 0x1),
        erp_metric_axioms(seed ^ 0x2),
        dtw_counterexample(),
        twed_upper_bound(seed ^ 0x3),
        twed_parameter_monotonicity(seed ^ 0x4),
        bound_chain(seed ^ 0x5),
        filtered_query_equivalence(seed ^ 0x6),
        path_replay(seed ^ 0x7),
        nn1_sanity(),
    ]
}

fn random_series(rng: &mut ChaCha8Rng, len: usize, dim: usize) -> TimeSeries {
    let values: Vec<f64> = (0..len * dim).map(|_| rng.random_range(-5.0..5.0)).collect();
    let mut acc = 0.0;
    let stamps: Vec<f64> = (0..len)
        .map(|_| {
            acc += rng.random_range(0.1..2.0);
            acc
        })
        .collect();
    TimeSeries::new(dim, values, stamps).expect("generated series is valid")
}

fn series_metric_axioms(seed: u64) -> SuiteResult {
    const NAME: &str = "series-baseline-metric-axioms";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let len = rng.random_range(1..15);
        let dim = if rng.random_bool(0.5) { 1 } else { 3 };
        let a = random_series(&mut rng, len, dim);
        let b = random_series(&mut rng, len, dim);
        let c = random_series(&mut rng, len, dim);
        for p in [1, 2] {
            let dab = lp_series_distance(&a, &b, p).unwrap();
            let dba = lp_series_distance(&b, &a, p).unwrap();
            let dac = lp_series_distance(&a, &c, p).unwrap();
            let dcb = lp_series_distance(&c, &b, p).unwrap();
            if dab < 0.0 || (dab - dba).abs() > 1e-12 || dab > dac + dcb + 1e-12 {
                return SuiteResult::fail(NAME, format!("violated for p={p}"));
            }
        }
    }
    SuiteResult::pass(NAME, "200 random triples")
}

fn twed_metric_axioms(seed: u64) -> SuiteResult {
    const NAME: &str = "twed-metric-axioms";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let dim = if rng.random_bool(0.5) { 1 } else { 3 };
        let params = TwedParams {
            lambda: rng.random_range(0.0..1.0),
            nu: rng.random_range(0.001..1.0),
            p_norm: 1,
        };
        let lengths: Vec<usize> = (0..3).map(|_| rng.random_range(1..20)).collect();
        let a = random_series(&mut rng, lengths[0], dim);
        let b = random_series(&mut rng, lengths[1], dim);
        let c = random_series(&mut rng, lengths[2], dim);
        let dab = twed(&a, &b, &params).unwrap().cost();
        let dba = twed(&b, &a, &params).unwrap().cost();
        let dac = twed(&a, &c, &params).unwrap().cost();
        let dcb = twed(&c, &b, &params).unwrap().cost();
        let daa = twed(&a, &a, &params).unwrap().cost();
        if dab < 0.0 || daa != 0.0 || dab == 0.0 {
            return SuiteResult::fail(NAME, "non-negativity or identity violated");
        }
        if (dab - dba).abs() > 1e-9 {
            return SuiteResult::fail(NAME, format!("asymmetry {}", (dab - dba).abs()));
        }
        if dab > dac + dcb + 1e-9 {
            return SuiteResult::fail(NAME, format!("triangle slack {}", dab - dac - dcb));
        }
    }
    SuiteResult::pass(NAME, "200 random triples, distinct-series identity included")
}

fn erp_metric_axioms(seed: u64) -> SuiteResult {
    const NAME: &str = "erp-metric-axioms";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = ErpParams::zero_gap();
    for _ in 0..200 {
        let lengths: Vec<usize> = (0..3).map(|_| rng.random_range(1..20)).collect();
        let a = random_series(&mut rng, lengths[0], 1);
        let b = random_series(&mut rng, lengths[1], 1);
        let c = random_series(&mut rng, lengths[2], 1);
        let dab = erp(&a, &b, &params).unwrap();
        let dba = erp(&b, &a, &params).unwrap();
        let dac = erp(&a, &c, &params).unwrap();
        let dcb = erp(&c, &b, &params).unwrap();
        if erp(&a, &a, &params).unwrap() != 0.0
            || dab < 0.0
            || (dab - dba).abs() > 1e-9
            || dab > dac + dcb + 1e-9
        {
            return SuiteResult::fail(NAME, "axiom violated");
        }
    }
    SuiteResult::pass(NAME, "200 random triples")
}

fn dtw_counterexample() -> SuiteResult {
    const NAME: &str = "dtw-triangle-counterexample";
    let a = TimeSeries::univariate(&[1.0]).unwrap();
    let b = TimeSeries::univariate(&[1.0, 2.0]).unwrap();
    let c = TimeSeries::univariate(&[1.0, 2.0, 2.0]).unwrap();
    let params = DtwParams::unconstrained();
    let dab = dtw(&a, &b, &params).unwrap().cost();
    let dbc = dtw(&b, &c, &params).unwrap().cost();
    let dac = dtw(&a, &c, &params).unwrap().cost();
    if (dab, dbc, dac) == (1.0, 0.0, 2.0) && dac > dab + dbc {
        SuiteResult::pass(NAME, "distances (1, 0, 2) reproduce the violation")
    } else {
        SuiteResult::fail(NAME, format!("got ({dab}, {dbc}, {dac})"))
    }
}

fn twed_upper_bound(seed: u64) -> SuiteResult {
    const NAME: &str = "twed-upper-bound-vs-baseline";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        let len = rng.random_range(1..25);
        let dim = if rng.random_bool(0.5) { 1 } else { 3 };
        let a = random_series(&mut rng, len, dim);
        // Same stamps: the bound compares the all-match alignment, which
        // pays no time terms only when the time axes agree.
        let values: Vec<f64> = (0..len * dim).map(|_| rng.random_range(-5.0..5.0)).collect();
        let b = TimeSeries::new(dim, values, a.stamps().to_vec()).unwrap();
        let params = TwedParams {
            lambda: rng.random_range(0.0..1.0),
            nu: rng.random_range(0.001..1.0),
            p_norm: 1,
        };
        let d = twed(&a, &b, &params).unwrap().cost();
        let baseline = lp_series_distance(&a, &b, 1).unwrap();
        if d > 2.0 * baseline + 1e-9 {
            return SuiteResult::fail(NAME, format!("{d} > 2 * {baseline}"));
        }
    }
    SuiteResult::pass(NAME, "100 equal-length pairs")
}

fn twed_parameter_monotonicity(seed: u64) -> SuiteResult {
    const NAME: &str = "twed-parameter-monotonicity";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nus = [1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0];
    let lambdas = [0.0, 0.25, 0.5, 0.75, 1.0];
    for _ in 0..50 {
        let la = rng.random_range(2..15);
        let lb = rng.random_range(2..15);
        let a = random_series(&mut rng, la, 1);
        let b = random_series(&mut rng, lb, 1);
        for &nu in &nus {
            let mut last = -1.0;
            for &lambda in &lambdas {
                let d = twed(&a, &b, &TwedParams { lambda, nu, p_norm: 1 }).unwrap().cost();
                if d < last - 1e-9 {
                    return SuiteResult::fail(NAME, "not monotone in the gap penalty");
                }
                last = d;
            }
        }
        for &lambda in &lambdas {
            let mut last = -1.0;
            for &nu in &nus {
                let d = twed(&a, &b, &TwedParams { lambda, nu, p_norm: 1 }).unwrap().cost();
                if d < last - 1e-9 {
                    return SuiteResult::fail(NAME, "not monotone in the stiffness");
                }
                last = d;
            }
        }
    }
    SuiteResult::pass(NAME, "50 pairs across the full tuning grids")
}

fn bound_chain(seed: u64) -> SuiteResult {
    const NAME: &str = "reduction-and-lower-bounds";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lambda, nu) = (0.1, 0.05);
    let params = TwedParams { lambda, nu, p_norm: 1 };
    for _ in 0..100 {
        let p = rng.random_range(6..25);
        let q = rng.random_range(6..25);
        let a = random_series(&mut rng, p, 1);
        let b = random_series(&mut rng, q, 1);
        let ra = rng.random_range(2..p);
        let rb = rng.random_range(2..q);
        let aa = pwca_optimal(&a, ra).unwrap();
        let ab = pwca_optimal(&b, rb).unwrap();

        let reduced_self = twed(aa.full(), aa.extremities(), &params).unwrap().cost();
        let rb_term = reduction_bound(p, ra, lambda, nu, aa.delta_t_avg()).unwrap();
        if reduced_self > rb_term + 1e-9 {
            return SuiteResult::fail(NAME, "reduction bound violated");
        }

        let exact = twed(&a, &b, &params).unwrap().cost();
        let reduced = twed(aa.extremities(), ab.extremities(), &params).unwrap().cost();
        let gap = approximation_gap_bound(&aa, &ab, lambda, nu).unwrap();
        if (exact - reduced).abs() > gap + 1e-9 {
            return SuiteResult::fail(NAME, "approximation gap bound violated");
        }

        let ea = index_entry(&a, 0, lambda, nu).unwrap();
        let eb = index_entry(&b, 1, lambda, nu).unwrap();
        let shared = ea.levels().len().min(eb.levels().len());
        for level in 0..shared {
            let tight = lower_bound(&ea, &eb, level, BoundForm::Tight).unwrap();
            let loose = lower_bound(&ea, &eb, level, BoundForm::Loose).unwrap();
            if tight > exact + 1e-9 || loose > exact + 1e-9 || tight < loose - 1e-9 {
                return SuiteResult::fail(NAME, "lower-bound ordering violated");
            }
        }
    }
    SuiteResult::pass(NAME, "100 random series/reduction instances")
}

fn filtered_query_equivalence(seed: u64) -> SuiteResult {
    const NAME: &str = "filtered-query-vs-linear-scan";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = 32;
    let templates: Vec<Vec<f64>> = (0..5)
        .map(|_| {
            let levels: Vec<f64> = (0..4).map(|_| rng.random_range(-4.0..4.0)).collect();
            (0..len).map(|i| levels[i * 4 / len]).collect()
        })
        .collect();
    let db: Vec<TimeSeries> = (0..100)
        .map(|i| {
            let t = &templates[i % templates.len()];
            let vals: Vec<f64> = t.iter().map(|v| v + rng.random_range(-0.05..0.05)).collect();
            TimeSeries::univariate(&vals).unwrap()
        })
        .collect();
    let index = build_index(&db, 0.01, 0.01).unwrap();
    let params = TwedParams { lambda: 0.01, nu: 0.01, p_norm: 1 };
    for _ in 0..10 {
        let qi = rng.random_range(0..db.len());
        for radius in [1.0, 4.0, 16.0] {
            let filtered = filtered_range_query(&index[qi], &index, radius).unwrap();
            let ls = linear_scan_range_query(&db[qi], &db, radius, &params).unwrap();
            let filtered_ids: Vec<usize> = filtered.matches.iter().map(|m| m.0).collect();
            let ls_ids: Vec<usize> = ls.matches.iter().map(|m| m.0).collect();
            if filtered_ids != ls_ids {
                return SuiteResult::fail(NAME, format!("mismatch at radius {radius}"));
            }
            if filtered.pruned_total() + filtered.exact_evaluations != db.len() {
                return SuiteResult::fail(NAME, "pruned + evaluated != database size");
            }
        }
    }
    SuiteResult::pass(NAME, "10 queries, 3 radii, 100-series database")
}

fn path_replay(seed: u64) -> SuiteResult {
    const NAME: &str = "alignment-path-replay";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..50 {
        let la = rng.random_range(1..12);
        let lb = rng.random_range(1..12);
        let a = random_series(&mut rng, la, 1);
        let b = random_series(&mut rng, lb, 1);
        let params = TwedParams {
            lambda: rng.random_range(0.0..1.0),
            nu: rng.random_range(0.001..1.0),
            p_norm: 1,
        };
        let with_path = twed_with_path(&a, &b, &params).unwrap();
        let lean = twed(&a, &b, &params).unwrap();
        if with_path.cost() != lean.cost() {
            return SuiteResult::fail(NAME, "cost-only and path modes disagree");
        }
        let path = with_path.path().unwrap();
        let (mut pi, mut pj) = (0usize, 0usize);
        for step in path {
            let advanced = (step.i - pi, step.j - pj);
            let legal = match step.op {
                EditOp::Match => advanced == (1, 1),
                EditOp::DeleteA => advanced == (1, 0),
                EditOp::DeleteB => advanced == (0, 1),
            };
            if !legal {
                return SuiteResult::fail(NAME, "path indices do not increase by single steps");
            }
            (pi, pj) = (step.i, step.j);
        }
        if (pi, pj) != (a.len(), b.len()) {
            return SuiteResult::fail(NAME, "path does not consume both series");
        }
        let replayed = replay_twed(&a, &b, &params, path);
        if (replayed - with_path.cost()).abs() > 1e-9 {
            return SuiteResult::fail(
                NAME,
                format!("replayed {replayed} vs reported {}", with_path.cost()),
            );
        }
    }
    SuiteResult::pass(NAME, "50 random pairs replayed step by step")
}

/// Independent re-pricing of an alignment path from the cost definitions.
fn replay_twed(
    a: &TimeSeries,
    b: &TimeSeries,
    params: &TwedParams,
    path: &[crate::elastic::PathStep],
) -> f64 {
    let val = |s: &TimeSeries, i: usize| if i == 0 { 0.0 } else { s.value(i - 1)[0] };
    let stamp = |s: &TimeSeries, i: usize| if i == 0 { 0.0 } else { s.stamp(i - 1) };
    path.iter()
        .map(|step| match step.op {
            EditOp::Match => {
                (val(a, step.i) - val(b, step.j)).abs()
                    + params.nu * (stamp(a, step.i) - stamp(b, step.j)).abs()
                    + (val(a, step.i - 1) - val(b, step.j - 1)).abs()
                    + params.nu * (stamp(a, step.i - 1) - stamp(b, step.j - 1)).abs()
            }
            EditOp::DeleteA => {
                (val(a, step.i) - val(a, step.i - 1)).abs()
                    + params.nu * (stamp(a, step.i) - stamp(a, step.i - 1)).abs()
                    + params.lambda
            }
            EditOp::DeleteB => {
                (val(b, step.j) - val(b, step.j - 1)).abs()
                    + params.nu * (stamp(b, step.j) - stamp(b, step.j - 1)).abs()
                    + params.lambda
            }
        })
        .sum()
}

fn nn1_sanity() -> SuiteResult {
    const NAME: &str = "nn1-classification-sanity";
    let train = vec![
        ("a".to_string(), TimeSeries::univariate(&[0.0, 0.1, 0.0]).unwrap()),
        ("b".to_string(), TimeSeries::univariate(&[5.0, 5.1, 5.0]).unwrap()),
    ];
    let test = vec![
        ("a".to_string(), TimeSeries::univariate(&[0.05, 0.05, 0.02]).unwrap()),
        ("b".to_string(), TimeSeries::univariate(&[4.9, 5.2, 5.1]).unwrap()),
    ];
    match nn1_error_rate(&train, &test, &Measure::Euclidean) {
        Ok(0.0) => SuiteResult::pass(NAME, "separated classes classify cleanly"),
        Ok(err) => SuiteResult::fail(NAME, format!("error rate {err}")),
        Err(e) => SuiteResult::fail(NAME, e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_with_default_seed() {
        let results = run_all(0);
        assert_eq!(results.len(), 10);
        for result in &results {
            assert!(result.passed, "{} failed: {}", result.name, result.detail);
        }
    }

    #[test]
    fn suites_are_deterministic_per_seed() {
        let first: Vec<bool> = run_all(7).iter().map(|r| r.passed).collect();
        let second: Vec<bool> = run_all(7).iter().map(|r| r.passed).collect();
        assert_eq!(first, second);
    }
}
