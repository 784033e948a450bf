//! Independent oracles for the integration suites: exhaustive enumeration
//! of alignment paths priced straight from the cost definitions, never
//! through the dynamic programs under test.

#![allow(dead_code)]
#![allow(clippy::too_many_arguments)]

use elastika::{ScoreTable, TimeSeries, TwedParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn lp(x: &[f64], y: &[f64], p_norm: u32) -> f64 {
    let sum: f64 = x.iter().zip(y).map(|(a, b)| (a - b).abs().powi(p_norm as i32)).sum();
    sum.powf(1.0 / p_norm as f64)
}

/// Minimum over all monotone lattice paths under the stiffness-weighted
/// edit costs. Paths through the one-sided border cells are forbidden, so a
/// delete may only occur once the other series has consumed a sample.
pub fn twed_oracle(a: &TimeSeries, b: &TimeSeries, params: &TwedParams) -> f64 {
    let (p, q) = (a.len(), b.len());
    let zero = vec![0.0; a.dim()];
    fn value_at<'s>(s: &'s TimeSeries, zero: &'s [f64], i: usize) -> &'s [f64] {
        if i == 0 {
            zero
        } else {
            s.value(i - 1)
        }
    }
    let stamp = |s: &TimeSeries, i: usize| if i == 0 { 0.0 } else { s.stamp(i - 1) };

    let del_a: Vec<f64> = (1..=p)
        .map(|i| {
            lp(value_at(a, &zero, i), value_at(a, &zero, i - 1), params.p_norm)
                + params.nu * (stamp(a, i) - stamp(a, i - 1)).abs()
                + params.lambda
        })
        .collect();
    let del_b: Vec<f64> = (1..=q)
        .map(|j| {
            lp(value_at(b, &zero, j), value_at(b, &zero, j - 1), params.p_norm)
                + params.nu * (stamp(b, j) - stamp(b, j - 1)).abs()
                + params.lambda
        })
        .collect();
    let mat = |i: usize, j: usize| {
        lp(value_at(a, &zero, i), value_at(b, &zero, j), params.p_norm)
            + params.nu * (stamp(a, i) - stamp(b, j)).abs()
            + lp(value_at(a, &zero, i - 1), value_at(b, &zero, j - 1), params.p_norm)
            + params.nu * (stamp(a, i - 1) - stamp(b, j - 1)).abs()
    };

    let mut best = f64::INFINITY;
    fn walk(
        i: usize,
        j: usize,
        acc: f64,
        p: usize,
        q: usize,
        del_a: &[f64],
        del_b: &[f64],
        mat: &dyn Fn(usize, usize) -> f64,
        best: &mut f64,
    ) {
        if i == p && j == q {
            if acc < *best {
                *best = acc;
            }
            return;
        }
        if i < p && j < q {
            walk(i + 1, j + 1, acc + mat(i + 1, j + 1), p, q, del_a, del_b, mat, best);
        }
        if i < p && j >= 1 {
            walk(i + 1, j, acc + del_a[i], p, q, del_a, del_b, mat, best);
        }
        if j < q && i >= 1 {
            walk(i, j + 1, acc + del_b[j], p, q, del_a, del_b, mat, best);
        }
    }
    if p == 0 && q == 0 {
        return 0.0;
    }
    walk(0, 0, 0.0, p, q, &del_a, &del_b, &mat, &mut best);
    best
}

/// Minimum over all monotone lattice paths where every move into cell
/// (i, j) pays the local distance of that sample pair; border cells beyond
/// the origin are forbidden and cells outside the corridor are skipped.
pub fn dtw_oracle(a: &TimeSeries, b: &TimeSeries, p_norm: u32, corridor: Option<usize>) -> f64 {
    let (p, q) = (a.len(), b.len());
    let cell = |i: usize, j: usize| lp(a.value(i - 1), b.value(j - 1), p_norm);
    let ok = |i: usize, j: usize| match corridor {
        Some(w) => i.abs_diff(j) <= w,
        None => true,
    };
    let mut best = f64::INFINITY;
    fn walk(
        i: usize,
        j: usize,
        acc: f64,
        p: usize,
        q: usize,
        cell: &dyn Fn(usize, usize) -> f64,
        ok: &dyn Fn(usize, usize) -> bool,
        best: &mut f64,
    ) {
        if acc >= *best {
            return;
        }
        if i == p && j == q {
            *best = acc;
            return;
        }
        if i < p && j < q && ok(i + 1, j + 1) {
            walk(i + 1, j + 1, acc + cell(i + 1, j + 1), p, q, cell, ok, best);
        }
        if i < p && j >= 1 && ok(i + 1, j) {
            walk(i + 1, j, acc + cell(i + 1, j), p, q, cell, ok, best);
        }
        if j < q && i >= 1 && ok(i, j + 1) {
            walk(i, j + 1, acc + cell(i, j + 1), p, q, cell, ok, best);
        }
    }
    if p == 0 && q == 0 {
        return 0.0;
    }
    walk(0, 0, 0.0, p, q, &cell, &ok, &mut best);
    best
}

/// Minimum over all monotone lattice paths with gap-element pricing; fully
/// one-sided paths are legal, so no border restriction applies.
pub fn erp_oracle(a: &TimeSeries, b: &TimeSeries, p_norm: u32) -> f64 {
    let (p, q) = (a.len(), b.len());
    let dim = if p > 0 { a.dim() } else { b.dim() };
    let gap = vec![0.0; dim];
    let del_a: Vec<f64> = (0..p).map(|i| lp(a.value(i), &gap, p_norm)).collect();
    let del_b: Vec<f64> = (0..q).map(|j| lp(&gap, b.value(j), p_norm)).collect();
    let mat = |i: usize, j: usize| lp(a.value(i - 1), b.value(j - 1), p_norm);
    let mut best = f64::INFINITY;
    fn walk(
        i: usize,
        j: usize,
        acc: f64,
        p: usize,
        q: usize,
        del_a: &[f64],
        del_b: &[f64],
        mat: &dyn Fn(usize, usize) -> f64,
        best: &mut f64,
    ) {
        if i == p && j == q {
            if acc < *best {
                *best = acc;
            }
            return;
        }
        if i < p && j < q {
            walk(i + 1, j + 1, acc + mat(i + 1, j + 1), p, q, del_a, del_b, mat, best);
        }
        if i < p {
            walk(i + 1, j, acc + del_a[i], p, q, del_a, del_b, mat, best);
        }
        if j < q {
            walk(i, j + 1, acc + del_b[j], p, q, del_a, del_b, mat, best);
        }
    }
    walk(0, 0, 0.0, p, q, &del_a, &del_b, &mat, &mut best);
    best
}

/// Minimum over all monotone lattice paths with increment pricing over
/// ascending lists (phantom origin 0 before each list).
pub fn ppm_oracle(a: &[f64], b: &[f64]) -> f64 {
    let inc = |list: &[f64]| -> Vec<f64> {
        let mut prev = 0.0;
        list.iter()
            .map(|&v| {
                let d = v - prev;
                prev = v;
                d
            })
            .collect()
    };
    let inc_a = inc(a);
    let inc_b = inc(b);
    let (p, q) = (a.len(), b.len());
    let mut best = f64::INFINITY;
    fn walk(i: usize, j: usize, acc: f64, inc_a: &[f64], inc_b: &[f64], best: &mut f64) {
        let (p, q) = (inc_a.len(), inc_b.len());
        if i == p && j == q {
            if acc < *best {
                *best = acc;
            }
            return;
        }
        if i < p && j < q {
            walk(i + 1, j + 1, acc + (inc_a[i] - inc_b[j]).abs(), inc_a, inc_b, best);
        }
        if i < p {
            walk(i + 1, j, acc + inc_a[i], inc_a, inc_b, best);
        }
        if j < q {
            walk(i, j + 1, acc + inc_b[j], inc_a, inc_b, best);
        }
    }
    if p == 0 && q == 0 {
        return 0.0;
    }
    walk(0, 0, 0.0, &inc_a, &inc_b, &mut best);
    best
}

/// Longest chain of index pairs, found by pairing every same-size subset of
/// the two index sets in order and checking each pair against the value
/// tolerance and index window.
pub fn lcss_brute(a: &TimeSeries, b: &TimeSeries, epsilon: f64, delta: f64) -> usize {
    let (p, q) = (a.len(), b.len());
    assert!(p <= 16 && q <= 16, "brute force is exponential");
    let mut best = 0usize;
    for mask_a in 0u32..(1 << p) {
        let ka = mask_a.count_ones() as usize;
        if ka <= best {
            continue;
        }
        let idx_a: Vec<usize> = (0..p).filter(|&i| mask_a & (1 << i) != 0).collect();
        'outer: for mask_b in 0u32..(1 << q) {
            if mask_b.count_ones() as usize != ka {
                continue;
            }
            let idx_b: Vec<usize> = (0..q).filter(|&j| mask_b & (1 << j) != 0).collect();
            for (&ia, &ib) in idx_a.iter().zip(&idx_b) {
                let within = ((ia + 1) as f64 - (ib + 1) as f64).abs() < delta;
                if !within || lp(a.value(ia), b.value(ib), 2) >= epsilon {
                    continue 'outer;
                }
            }
            best = ka;
            break;
        }
    }
    best
}

/// Maximum over all gap-run-priced alignments reachable by the three-state
/// recursion: a gap may not directly follow a gap in the other sequence
/// unless the alignment so far is one pure leading gap run.
pub fn affine_oracle(a: &[char], b: &[char], d: f64, e: f64, table: &ScoreTable) -> f64 {
    #[derive(Clone, Copy, PartialEq)]
    enum Last {
        Start,
        Match,
        GapA,
        GapB,
    }
    struct Ctx<'c> {
        a: &'c [char],
        b: &'c [char],
        d: f64,
        e: f64,
        table: &'c ScoreTable,
        best: f64,
    }
    fn walk(ctx: &mut Ctx, i: usize, j: usize, last: Last, acc: f64) {
        let (p, q) = (ctx.a.len(), ctx.b.len());
        if i == p && j == q {
            if acc > ctx.best {
                ctx.best = acc;
            }
            return;
        }
        if i < p && j < q {
            let s = ctx.table.score(ctx.a[i], ctx.b[j]).expect("table covers alphabet");
            walk(ctx, i + 1, j + 1, Last::Match, acc + s);
        }
        if i < p && !(last == Last::GapB && i != 0) {
            let cost = if last == Last::GapA { ctx.e } else { ctx.d };
            walk(ctx, i + 1, j, Last::GapA, acc - cost);
        }
        if j < q && !(last == Last::GapA && j != 0) {
            let cost = if last == Last::GapB { ctx.e } else { ctx.d };
            walk(ctx, i, j + 1, Last::GapB, acc - cost);
        }
    }
    let mut ctx = Ctx { a, b, d, e, table, best: f64::NEG_INFINITY };
    walk(&mut ctx, 0, 0, Last::Start, 0.0);
    ctx.best
}

pub fn random_series(rng: &mut ChaCha8Rng, len: usize, dim: usize) -> TimeSeries {
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

pub fn random_index_series(rng: &mut ChaCha8Rng, len: usize) -> TimeSeries {
    let values: Vec<f64> = (0..len).map(|_| rng.random_range(-5.0..5.0)).collect();
    TimeSeries::univariate(&values).expect("generated series is valid")
}

pub fn random_ascending(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    let mut acc = 0.0;
    (0..len)
        .map(|_| {
            acc += rng.random_range(0.01..3.0);
            acc
        })
        .collect()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
