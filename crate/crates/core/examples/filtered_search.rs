//! Builds a synthetic database, indexes it, and compares the
//! bound-filtered range query against a linear scan.
//!
//! Run with `cargo run --release --example filtered_search`.

use elastika::{
    build_index, filtered_range_query, linear_scan_range_query, TimeSeries, TwedParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let len = 128;
    let templates: Vec<Vec<f64>> = (0..8)
        .map(|_| {
            let levels: Vec<f64> = (0..4).map(|_| rng.random_range(-4.0..4.0)).collect();
            (0..len).map(|i| levels[i * 4 / len]).collect()
        })
        .collect();
    let db: Vec<TimeSeries> = (0..2000)
        .map(|i| {
            let t = &templates[i % templates.len()];
            let vals: Vec<f64> = t.iter().map(|v| v + rng.random_range(-0.05..0.05)).collect();
            TimeSeries::univariate(&vals).unwrap()
        })
        .collect();

    let (lambda, nu) = (0.01, 0.01);
    let index = build_index(&db, lambda, nu).expect("valid parameters");
    let params = TwedParams { lambda, nu, p_norm: 1 };

    println!(
        "{:>8} {:>8} {:>8} {:>12} {:>12}",
        "radius", "matches", "pruned", "filter ms", "scan ms"
    );
    for radius in [1.0, 2.0, 4.0, 8.0, 16.0, 32.0] {
        let filtered = filtered_range_query(&index[0], &index, radius).expect("query runs");
        let scan = linear_scan_range_query(&db[0], &db, radius, &params).expect("query runs");
        assert_eq!(filtered.matches, scan.matches);
        println!(
            "{:>8} {:>8} {:>8} {:>12.2} {:>12.2}",
            radius,
            filtered.matches.len(),
            filtered.pruned_total(),
            filtered.wall.as_secs_f64() * 1e3,
            scan.wall.as_secs_f64() * 1e3
        );
    }
}
