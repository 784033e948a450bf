//! Command-line interface: pairwise distances, classification benchmarks,
//! parameter tuning, down-sampling, and bound-filtered range queries over
//! flat UCR-format files.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 self-test failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use elastika::io::{self, CsvTable, UcrRecord};
use elastika::{
    classify, downsample_half, dtw_with_path, erp, filtered_range_query, index_entry, lcss,
    linear_scan_range_query, ppm, selftest, twed_with_path, AlignmentResult, DtwParams, ErpParams,
    LcssParams, Measure, MetricKind, RangeQueryReport, TimeSeries, TwedParams,
};

#[derive(Parser)]
#[command(
    name = "elastika",
    version,
    about = "Elastic time-series distances, down-sampling, pruned range queries, and 1-NN benchmarks"
)]
struct Cli {
    /// Seed for randomized self-test suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on worker threads for batch operations.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the command's CSV report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MetricArg {
    Ed,
    Dtw,
    Odtw,
    Erp,
    Lcss,
    Twed,
    Ppm,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between the first records of two series files.
    Dist {
        #[arg(long, value_enum, default_value_t = MetricArg::Twed)]
        metric: MetricArg,
        /// Constant delete penalty (twed); default 1.
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        /// Stiffness weight on timestamp differences (twed); default 0.001.
        #[arg(long, allow_negative_numbers = true)]
        nu: Option<f64>,
        /// Local norm order, 1 or 2.
        #[arg(long)]
        lp: Option<u32>,
        /// Warping band half-width (dtw/odtw); unconstrained when absent.
        #[arg(long)]
        corridor: Option<usize>,
        /// Match tolerance (lcss); default 1.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Index window (lcss); default unbounded.
        #[arg(long)]
        delta: Option<f64>,
        /// Gap element components, comma separated (erp); default zeros.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        gap: Option<Vec<f64>>,
        /// Also print the alignment path (twed/dtw).
        #[arg(long)]
        path: bool,
        series_a: PathBuf,
        series_b: PathBuf,
    },
    /// 1-NN test error of a metric on a train/test pair (tuned on train
    /// where the metric has parameters and none are given).
    Classify {
        #[arg(long, value_enum, default_value_t = MetricArg::Ed)]
        metric: MetricArg,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        nu: Option<f64>,
        #[arg(long)]
        corridor: Option<usize>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        /// Down-sample every series to half its samples first.
        #[arg(long)]
        downsample: bool,
        train: PathBuf,
        test: PathBuf,
    },
    /// Leave-one-out parameter selection on a training file.
    Tune {
        #[arg(long, value_enum, default_value_t = MetricArg::Twed)]
        metric: MetricArg,
        train: PathBuf,
    },
    /// Reduce every record to half its samples (extremities of the optimal
    /// piecewise-constant fit); writes the same format plus timestamp lines.
    Downsample { input: PathBuf },
    /// All database series within a radius of the query, via the
    /// bound-filtered search.
    Rangequery {
        #[arg(long, allow_negative_numbers = true)]
        radius: f64,
        #[arg(long, default_value_t = 0.01)]
        lambda: f64,
        #[arg(long, default_value_t = 0.01)]
        nu: f64,
        db: PathBuf,
        query: PathBuf,
    },
    /// Filtered search against linear scan across a list of radii.
    Bench {
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        radius: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        queries: usize,
        #[arg(long, default_value_t = 0.01)]
        lambda: f64,
        #[arg(long, default_value_t = 0.01)]
        nu: f64,
        db: PathBuf,
    },
    /// Run the library's invariant suites.
    Selftest,
}

struct AppError {
    code: u8,
    message: String,
}

impl AppError {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    fn data(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl<E: std::fmt::Display> From<E> for AppError {
    fn from(e: E) -> Self {
        AppError::data(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(workers) = cli.workers {
        if elastika::set_worker_threads(workers).is_err() {
            eprintln!("warning: worker pool already initialized");
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, AppError> {
    match cli.command {
        Command::Dist {
            metric,
            lambda,
            nu,
            lp,
            corridor,
            epsilon,
            delta,
            gap,
            path,
            series_a,
            series_b,
        } => {
            if let Some(order) = lp {
                if order != 1 && order != 2 {
                    return Err(AppError::usage(format!("--lp must be 1 or 2, got {order}")));
                }
            }
            let a = load_first_series(&series_a)?;
            let b = load_first_series(&series_b)?;
            run_dist(metric, lambda, nu, lp, corridor, epsilon, delta, gap, path, &a, &b)
        }
        Command::Classify {
            metric,
            lambda,
            nu,
            corridor,
            epsilon,
            delta,
            downsample,
            train,
            test,
        } => {
            let kind = classification_kind(metric)?;
            let mut train_items = load_labeled(&train, SplitRole::Train)?;
            let mut test_items = load_labeled(&test, SplitRole::Test)?;
            if downsample {
                train_items = halve_items(train_items)?;
                test_items = halve_items(test_items)?;
            }
            let measure = match explicit_measure(kind, lambda, nu, corridor, epsilon, delta) {
                Some(measure) => measure,
                None => {
                    let tuned = classify::tune(&train_items, kind)?;
                    eprintln!(
                        "tuned {} on train: {} (leave-one-out error {})",
                        kind, tuned.measure, tuned.loo_error
                    );
                    tuned.measure
                }
            };
            let error = classify::nn1_error_rate(&train_items, &test_items, &measure)?;
            println!("{error}");
            if let Some(out) = &cli.out {
                let mut table = CsvTable::new(["dataset", "metric", "params", "error"]);
                table.push_row([
                    train.display().to_string(),
                    kind.to_string(),
                    measure.to_string(),
                    error.to_string(),
                ]);
                io::emit_csv(&table, out)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tune { metric, train } => {
            let kind = classification_kind(metric)?;
            let train_items = load_labeled(&train, SplitRole::Train)?;
            let tuned = classify::tune(&train_items, kind)?;
            println!("{} (leave-one-out error {})", tuned.measure, tuned.loo_error);
            if let Some(out) = &cli.out {
                let mut table = CsvTable::new(["metric", "params", "loo_error"]);
                table.push_row([
                    kind.to_string(),
                    tuned.measure.to_string(),
                    tuned.loo_error.to_string(),
                ]);
                io::emit_csv(&table, out)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Downsample { input } => {
            let out =
                cli.out.as_ref().ok_or_else(|| AppError::usage("downsample needs --out <file>"))?;
            let records = io::load_ucr(&input)?;
            let halved: Vec<UcrRecord> = records
                .iter()
                .map(|r| -> Result<UcrRecord, AppError> {
                    let series = r.to_series()?;
                    let half = downsample_half(&series)?;
                    Ok(UcrRecord {
                        label: r.label.clone(),
                        values: half.values().to_vec(),
                        stamps: Some(half.stamps().to_vec()),
                    })
                })
                .collect::<Result<_, _>>()?;
            io::write_ucr(&halved, out)?;
            println!("wrote {} down-sampled records to {}", halved.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Rangequery { radius, lambda, nu, db, query } => {
            let db_series = load_all_series(&db)?;
            let query_series = load_first_series(&query)?;
            let index = elastika::build_index(&db_series, lambda, nu)?;
            let query_entry = index_entry(&query_series, db_series.len(), lambda, nu)?;
            let report = filtered_range_query(&query_entry, &index, radius)?;
            for (id, dist) in &report.matches {
                println!("{id}\t{dist}");
            }
            eprintln!(
                "{} matches, {} pruned, {} exact evaluations, {:.3} ms",
                report.matches.len(),
                report.pruned_total(),
                report.exact_evaluations,
                report.wall.as_secs_f64() * 1e3
            );
            if let Some(out) = &cli.out {
                let table = report_table(&[(radius, &report, None)]);
                io::emit_csv(&table, out)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { radius, queries, lambda, nu, db } => {
            let db_series = load_all_series(&db)?;
            if db_series.is_empty() {
                return Err(AppError::data("benchmark database is empty"));
            }
            let index = elastika::build_index(&db_series, lambda, nu)?;
            let params = TwedParams { lambda, nu, p_norm: 1 };
            let picked: Vec<usize> = (0..queries.min(db_series.len()))
                .map(|i| i * db_series.len() / queries.max(1))
                .collect();
            let mut rows = Vec::new();
            for &r in &radius {
                let mut merged: Option<RangeQueryReport> = None;
                let mut ls_wall = 0.0;
                for &qi in &picked {
                    let filtered = filtered_range_query(&index[qi], &index, r)?;
                    let ls = linear_scan_range_query(&db_series[qi], &db_series, r, &params)?;
                    ls_wall += ls.wall.as_secs_f64() * 1e3;
                    merged = Some(match merged {
                        None => filtered,
                        Some(mut acc) => {
                            acc.matches.extend(filtered.matches);
                            acc.exact_evaluations += filtered.exact_evaluations;
                            let levels =
                                acc.pruned_per_level.len().max(filtered.pruned_per_level.len());
                            acc.pruned_per_level.resize(levels, 0);
                            for (k, v) in filtered.pruned_per_level.iter().enumerate() {
                                acc.pruned_per_level[k] += v;
                            }
                            acc.wall += filtered.wall;
                            acc
                        }
                    });
                }
                let report = merged.expect("at least one query ran");
                println!(
                    "radius {r}: {} matches, {} pruned, {} exact, filtered {:.3} ms vs scan {:.3} ms",
                    report.matches.len(),
                    report.pruned_total(),
                    report.exact_evaluations,
                    report.wall.as_secs_f64() * 1e3,
                    ls_wall
                );
                rows.push((r, report, ls_wall));
            }
            if let Some(out) = &cli.out {
                let borrowed: Vec<(f64, &RangeQueryReport, Option<f64>)> =
                    rows.iter().map(|(r, rep, ls)| (*r, rep, Some(*ls))).collect();
                let table = report_table(&borrowed);
                io::emit_csv(&table, out)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest => {
            let results = selftest::run_all(cli.seed);
            let mut failed = 0;
            for result in &results {
                let tag = if result.passed { "ok" } else { "FAIL" };
                println!("[{tag}] {}: {}", result.name, result.detail);
                if !result.passed {
                    failed += 1;
                }
            }
            if failed > 0 {
                eprintln!("{failed} suite(s) failed");
                return Ok(ExitCode::from(3));
            }
            println!("all {} suites passed", results.len());
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_dist(
    metric: MetricArg,
    lambda: Option<f64>,
    nu: Option<f64>,
    lp: Option<u32>,
    corridor: Option<usize>,
    epsilon: Option<f64>,
    delta: Option<f64>,
    gap: Option<Vec<f64>>,
    path: bool,
    a: &TimeSeries,
    b: &TimeSeries,
) -> Result<ExitCode, AppError> {
    let print_result = |result: &AlignmentResult| {
        println!("{}", result.cost());
        if path {
            if let Ok(steps) = result.path() {
                for step in steps {
                    let op = match step.op {
                        elastika::EditOp::Match => "match",
                        elastika::EditOp::DeleteA => "delete-a",
                        elastika::EditOp::DeleteB => "delete-b",
                    };
                    println!("{op}\t{}\t{}", step.i, step.j);
                }
            }
        }
    };
    match metric {
        MetricArg::Ed => {
            let d = Measure::Euclidean.distance(a, b)?;
            println!("{d}");
        }
        MetricArg::Dtw | MetricArg::Odtw => {
            let params = DtwParams { corridor, p_norm: lp.unwrap_or(2) };
            print_result(&dtw_with_path(a, b, &params)?);
        }
        MetricArg::Erp => {
            let params = ErpParams { gap, p_norm: lp.unwrap_or(1) };
            println!("{}", erp(a, b, &params)?);
        }
        MetricArg::Lcss => {
            let params = LcssParams {
                epsilon: epsilon.unwrap_or(1.0),
                delta: delta.unwrap_or((a.len().max(b.len()) + 1) as f64),
            };
            let result = lcss(a, b, &params)?;
            println!("{}", result.dissimilarity);
            eprintln!("{} matched samples", result.match_count);
        }
        MetricArg::Twed => {
            let params = TwedParams {
                lambda: lambda.unwrap_or(1.0),
                nu: nu.unwrap_or(0.001),
                p_norm: lp.unwrap_or(1),
            };
            print_result(&twed_with_path(a, b, &params)?);
        }
        MetricArg::Ppm => {
            println!("{}", ppm(a.values(), b.values())?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn classification_kind(metric: MetricArg) -> Result<MetricKind, AppError> {
    match metric {
        MetricArg::Ed => Ok(MetricKind::Ed),
        MetricArg::Dtw => Ok(MetricKind::Dtw),
        MetricArg::Odtw => Ok(MetricKind::Odtw),
        MetricArg::Erp => Ok(MetricKind::Erp),
        MetricArg::Lcss => Ok(MetricKind::Lcss),
        MetricArg::Twed => Ok(MetricKind::Twed),
        MetricArg::Ppm => {
            Err(AppError::usage("ppm compares ascending lists and has no classification mode"))
        }
    }
}

/// Explicit parameters bypass tuning when the kind's full parameter set was
/// given on the command line.
fn explicit_measure(
    kind: MetricKind,
    lambda: Option<f64>,
    nu: Option<f64>,
    corridor: Option<usize>,
    epsilon: Option<f64>,
    delta: Option<f64>,
) -> Option<Measure> {
    match kind {
        MetricKind::Ed => Some(Measure::Euclidean),
        MetricKind::Dtw => Some(Measure::Dtw(DtwParams { corridor, p_norm: 2 })),
        MetricKind::Odtw => corridor.map(|w| Measure::Dtw(DtwParams::with_corridor(w))),
        MetricKind::Erp => Some(Measure::Erp(ErpParams::zero_gap())),
        MetricKind::Lcss => match (epsilon, delta) {
            (Some(epsilon), Some(delta)) => Some(Measure::Lcss(LcssParams { epsilon, delta })),
            _ => None,
        },
        MetricKind::Twed => match (lambda, nu) {
            (Some(lambda), Some(nu)) => Some(Measure::Twed(TwedParams { lambda, nu, p_norm: 1 })),
            _ => None,
        },
    }
}

#[derive(Clone, Copy)]
enum SplitRole {
    Train,
    Test,
}

/// Loads a labeled split from a file path, falling back to a dataset name
/// under the data root.
fn load_labeled(path: &Path, role: SplitRole) -> Result<Vec<(String, TimeSeries)>, AppError> {
    if path.is_file() {
        return Ok(io::load_split(path)?);
    }
    if let Some(root) = io::data_root() {
        if let Some(name) = path.to_str() {
            if let Ok(dataset) = io::load_dataset(&root, name) {
                return Ok(match role {
                    SplitRole::Train => dataset.train,
                    SplitRole::Test => dataset.test,
                });
            }
        }
    }
    Err(AppError::data(format!("cannot read {}", path.display())))
}

fn load_first_series(path: &Path) -> Result<TimeSeries, AppError> {
    let records = io::load_ucr(path)?;
    Ok(records[0].to_series()?)
}

fn load_all_series(path: &Path) -> Result<Vec<TimeSeries>, AppError> {
    io::load_ucr(path)?.iter().map(|r| Ok(r.to_series()?)).collect()
}

fn halve_items(items: Vec<(String, TimeSeries)>) -> Result<Vec<(String, TimeSeries)>, AppError> {
    items.into_iter().map(|(label, s)| Ok((label, downsample_half(&s)?))).collect()
}

fn report_table(rows: &[(f64, &RangeQueryReport, Option<f64>)]) -> CsvTable {
    let levels = rows.iter().map(|(_, r, _)| r.pruned_per_level.len()).max().unwrap_or(0);
    let mut header: Vec<String> = vec!["radius".into(), "matches".into()];
    header.extend((0..levels).map(|k| format!("pruned_l{k}")));
    header.push("exact_evals".into());
    header.push("wall_ms".into());
    let with_scan = rows.iter().any(|(_, _, ls)| ls.is_some());
    if with_scan {
        header.push("scan_wall_ms".into());
    }
    let mut table = CsvTable::new(header);
    for (radius, report, ls_wall) in rows {
        let mut row: Vec<String> = vec![radius.to_string(), report.matches.len().to_string()];
        for k in 0..levels {
            row.push(report.pruned_per_level.get(k).copied().unwrap_or(0).to_string());
        }
        row.push(report.exact_evaluations.to_string());
        row.push(format!("{:.3}", report.wall.as_secs_f64() * 1e3));
        if with_scan {
            row.push(match ls_wall {
                Some(ms) => format!("{ms:.3}"),
                None => String::new(),
            });
        }
        table.push_row(row);
    }
    table
}
