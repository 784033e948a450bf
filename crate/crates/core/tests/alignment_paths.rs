//! Alignment-path contracts: steps advance the index pair one cell at a
//! time, and re-pricing a returned path from the raw cost definitions
//! reproduces the reported cost.

mod common;

use common::*;
use elastika::{
    dtw_with_path, twed_with_path, DtwParams, EditOp, PathStep, TimeSeries, TwedParams,
};
use rand::Rng;

fn assert_monotone(path: &[PathStep], p: usize, q: usize) {
    let (mut i, mut j) = (0usize, 0usize);
    for step in path {
        let advanced = (step.i - i, step.j - j);
        let legal = match step.op {
            EditOp::Match => advanced == (1, 1),
            EditOp::DeleteA => advanced == (1, 0),
            EditOp::DeleteB => advanced == (0, 1),
        };
        assert!(legal, "illegal step {step:?} from ({i}, {j})");
        (i, j) = (step.i, step.j);
    }
    assert_eq!((i, j), (p, q), "path must consume both series");
}

fn replay_twed(a: &TimeSeries, b: &TimeSeries, params: &TwedParams, path: &[PathStep]) -> f64 {
    let val = |s: &TimeSeries, i: usize| if i == 0 { 0.0 } else { s.value(i - 1)[0] };
    let ts = |s: &TimeSeries, i: usize| if i == 0 { 0.0 } else { s.stamp(i - 1) };
    path.iter()
        .map(|step| match step.op {
            EditOp::Match => {
                (val(a, step.i) - val(b, step.j)).abs()
                    + params.nu * (ts(a, step.i) - ts(b, step.j)).abs()
                    + (val(a, step.i - 1) - val(b, step.j - 1)).abs()
                    + params.nu * (ts(a, step.i - 1) - ts(b, step.j - 1)).abs()
            }
            EditOp::DeleteA => {
                (val(a, step.i) - val(a, step.i - 1)).abs()
                    + params.nu * (ts(a, step.i) - ts(a, step.i - 1)).abs()
                    + params.lambda
            }
            EditOp::DeleteB => {
                (val(b, step.j) - val(b, step.j - 1)).abs()
                    + params.nu * (ts(b, step.j) - ts(b, step.j - 1)).abs()
                    + params.lambda
            }
        })
        .sum()
}

fn replay_dtw(a: &TimeSeries, b: &TimeSeries, path: &[PathStep]) -> f64 {
    path.iter().map(|step| (a.value(step.i - 1)[0] - b.value(step.j - 1)[0]).abs()).sum()
}

#[test]
fn twed_paths_are_monotone_and_replayable() {
    let mut rng = seeded(901);
    for _ in 0..100 {
        let la = rng.random_range(1..=12);
        let lb = rng.random_range(1..=12);
        let a = random_series(&mut rng, la, 1);
        let b = random_series(&mut rng, lb, 1);
        let params = TwedParams {
            lambda: rng.random_range(0.0..=1.0),
            nu: rng.random_range(1e-6..=1.0),
            p_norm: 1,
        };
        let result = twed_with_path(&a, &b, &params).unwrap();
        let path = result.path().unwrap();
        assert_monotone(path, la, lb);
        let replayed = replay_twed(&a, &b, &params, path);
        assert!(
            (replayed - result.cost()).abs() <= 1e-9,
            "replayed {replayed} vs reported {}",
            result.cost()
        );
    }
}

#[test]
fn dtw_paths_are_monotone_and_replayable() {
    let mut rng = seeded(902);
    for _ in 0..100 {
        let la = rng.random_range(1..=12);
        let lb = rng.random_range(1..=12);
        let a = random_series(&mut rng, la, 1);
        let b = random_series(&mut rng, lb, 1);
        let result = dtw_with_path(&a, &b, &DtwParams::unconstrained()).unwrap();
        let path = result.path().unwrap();
        assert_monotone(path, la, lb);
        let replayed = replay_dtw(&a, &b, path);
        assert!(
            (replayed - result.cost()).abs() <= 1e-9,
            "replayed {replayed} vs reported {}",
            result.cost()
        );
    }
}
