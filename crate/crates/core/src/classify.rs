//! First-nearest-neighbor classification, leave-one-out parameter selection
//! over fixed grids, and whole-table experiment orchestration.
//!
//! Parameter grids and their tie-breaking rules are part of the contract:
//! stiffness/gap-penalty pairs prefer the stiffest then most-penalized
//! candidate, corridor sweeps prefer the narrowest, and subsequence windows
//! prefer the widest window then the widest tolerance. Nearest-neighbor
//! distance ties go to the lowest train index, so results are reproducible
//! regardless of worker count.

use rayon::prelude::*;
use thiserror::Error;

use crate::elastic::{dtw, erp, lcss, twed, DtwParams, ErpParams, LcssParams, TwedParams};
use crate::pwca::{downsample_half, PwcaError};
use crate::series::TimeSeries;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error("train and test sets must be non-empty")]
    EmptyDataset,
    #[error("leave-one-out estimation needs at least 2 training items")]
    TooFewForLoo,
    #[error("distance failed between item {left} and item {right}: {reason}")]
    MetricFailure { left: usize, right: usize, reason: String },
    #[error("distance failed: {0}")]
    Distance(String),
    #[error(transparent)]
    Pwca(#[from] PwcaError),
}

/// A labeled train/test split. Labels are opaque tokens compared for
/// equality only.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub name: String,
    pub train: Vec<(String, TimeSeries)>,
    pub test: Vec<(String, TimeSeries)>,
}

/// The classification measures of the benchmark tables. `Odtw`, `Twed` and
/// `Lcss` are tuned by leave-one-out before evaluation; the rest are
/// parameter-free or use their customary defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetricKind {
    Ed,
    Dtw,
    Odtw,
    Erp,
    Lcss,
    Twed,
}

impl MetricKind {
    pub fn name(&self) -> &'static str {
        match self {
            MetricKind::Ed => "ed",
            MetricKind::Dtw => "dtw",
            MetricKind::Odtw => "odtw",
            MetricKind::Erp => "erp",
            MetricKind::Lcss => "lcss",
            MetricKind::Twed => "twed",
        }
    }
}

impl std::fmt::Display for MetricKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A fully parameterized distance ready to evaluate on a pair of series.
#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    /// L2 norm of the difference of two equal-length series.
    Euclidean,
    Dtw(DtwParams),
    Erp(ErpParams),
    Lcss(LcssParams),
    Twed(TwedParams),
}

impl Measure {
    pub fn distance(&self, a: &TimeSeries, b: &TimeSeries) -> Result<f64, ClassifyError> {
        match self {
            Measure::Euclidean => euclidean(a, b),
            Measure::Dtw(p) => Ok(dtw(a, b, p).map_err(stringify)?.cost()),
            Measure::Erp(p) => erp(a, b, p).map_err(stringify),
            Measure::Lcss(p) => Ok(lcss(a, b, p).map_err(stringify)?.dissimilarity),
            Measure::Twed(p) => Ok(twed(a, b, p).map_err(stringify)?.cost()),
        }
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Measure::Euclidean => write!(f, "ed"),
            Measure::Dtw(p) => match p.corridor {
                Some(w) => write!(f, "dtw(corridor={w})"),
                None => write!(f, "dtw(unconstrained)"),
            },
            Measure::Erp(p) => write!(f, "erp(lp={})", p.p_norm),
            Measure::Lcss(p) => write!(f, "lcss(epsilon={}, delta={})", p.epsilon, p.delta),
            Measure::Twed(p) => write!(f, "twed(lambda={}, nu={})", p.lambda, p.nu),
        }
    }
}

fn stringify<E: std::fmt::Display>(e: E) -> ClassifyError {
    ClassifyError::Distance(e.to_string())
}

fn euclidean(a: &TimeSeries, b: &TimeSeries) -> Result<f64, ClassifyError> {
    if a.len() != b.len() || a.dim() != b.dim() {
        return Err(ClassifyError::Distance(format!(
            "euclidean distance needs equal shapes, got {}x{} vs {}x{}",
            a.len(),
            a.dim(),
            b.len(),
            b.dim()
        )));
    }
    let sum: f64 = a.values().iter().zip(b.values()).map(|(x, y)| (x - y) * (x - y)).sum();
    Ok(sum.sqrt())
}

/// Candidate parameterizations for one metric kind, in enumeration order.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamGrid {
    pub kind: MetricKind,
    pub candidates: Vec<Measure>,
}

/// The tuning grid for a metric kind. `max_train_len` is the longest
/// training series, which sizes the corridor sweep and the subsequence
/// window schedule.
pub fn grid_for(kind: MetricKind, max_train_len: usize) -> ParamGrid {
    let candidates = match kind {
        MetricKind::Ed => vec![Measure::Euclidean],
        MetricKind::Dtw => vec![Measure::Dtw(DtwParams::unconstrained())],
        MetricKind::Erp => vec![Measure::Erp(ErpParams::zero_gap())],
        MetricKind::Odtw => {
            (0..=max_train_len).map(|w| Measure::Dtw(DtwParams::with_corridor(w))).collect()
        }
        MetricKind::Twed => {
            let nus = [1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0];
            let lambdas = [0.0, 0.25, 0.5, 0.75, 1.0];
            nus.iter()
                .flat_map(|&nu| {
                    lambdas
                        .iter()
                        .map(move |&lambda| Measure::Twed(TwedParams { lambda, nu, p_norm: 1 }))
                })
                .collect()
        }
        MetricKind::Lcss => {
            let deltas = halving_schedule(max_train_len.max(1) as f64, 0.5);
            let epsilons = halving_schedule(20.0, 1e-2);
            deltas
                .iter()
                .flat_map(|&delta| {
                    epsilons
                        .iter()
                        .map(move |&epsilon| Measure::Lcss(LcssParams { epsilon, delta }))
                })
                .collect()
        }
    };
    ParamGrid { kind, candidates }
}

/// `start, start/2, start/4, ...` keeping every value that is still at
/// least `floor`.
fn halving_schedule(start: f64, floor: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut v = start;
    while v >= floor {
        out.push(v);
        v /= 2.0;
    }
    out
}

/// Labels the 1-NN rule assigns to each test item: the label of its nearest
/// training item, distance ties going to the lowest train index.
pub fn nn1_predictions(
    train: &[(String, TimeSeries)],
    test: &[(String, TimeSeries)],
    measure: &Measure,
) -> Result<Vec<String>, ClassifyError> {
    if train.is_empty() || test.is_empty() {
        return Err(ClassifyError::EmptyDataset);
    }
    test.par_iter()
        .enumerate()
        .map(|(ti, (_, item))| {
            let mut best = f64::INFINITY;
            let mut best_label = &train[0].0;
            for (tj, (label, candidate)) in train.iter().enumerate() {
                let d = measure.distance(item, candidate).map_err(|e| {
                    ClassifyError::MetricFailure { left: ti, right: tj, reason: e.to_string() }
                })?;
                if d < best {
                    best = d;
                    best_label = label;
                }
            }
            Ok(best_label.clone())
        })
        .collect()
}

/// Fraction of test items whose nearest training item carries a different
/// label.
pub fn nn1_error_rate(
    train: &[(String, TimeSeries)],
    test: &[(String, TimeSeries)],
    measure: &Measure,
) -> Result<f64, ClassifyError> {
    let predictions = nn1_predictions(train, test, measure)?;
    let wrong = predictions
        .iter()
        .zip(test)
        .filter(|(predicted, (actual, _))| *predicted != actual)
        .count();
    Ok(wrong as f64 / test.len() as f64)
}

/// Leave-one-out error: each training item classified by 1-NN over the
/// remaining training items.
pub fn loo_error(train: &[(String, TimeSeries)], measure: &Measure) -> Result<f64, ClassifyError> {
    if train.len() < 2 {
        return Err(ClassifyError::TooFewForLoo);
    }
    let wrong: usize = (0..train.len())
        .into_par_iter()
        .map(|i| {
            let (actual, item) = &train[i];
            let mut best = f64::INFINITY;
            let mut best_label = None;
            for (j, (label, candidate)) in train.iter().enumerate() {
                if j == i {
                    continue;
                }
                let d = measure.distance(item, candidate).map_err(|e| {
                    ClassifyError::MetricFailure { left: i, right: j, reason: e.to_string() }
                })?;
                if d < best {
                    best = d;
                    best_label = Some(label);
                }
            }
            Ok(usize::from(best_label != Some(actual)))
        })
        .sum::<Result<usize, ClassifyError>>()?;
    Ok(wrong as f64 / train.len() as f64)
}

/// A tuned measure and the leave-one-out error that selected it.
#[derive(Debug, Clone, PartialEq)]
pub struct TuneResult {
    pub measure: Measure,
    pub loo_error: f64,
}

/// Minimizes the leave-one-out error over the kind's grid with the
/// per-kind tie-breaking described at the module level. Deterministic for
/// identical inputs regardless of worker count.
pub fn tune(train: &[(String, TimeSeries)], kind: MetricKind) -> Result<TuneResult, ClassifyError> {
    if train.len() < 2 {
        return Err(ClassifyError::TooFewForLoo);
    }
    let max_len = train.iter().map(|(_, s)| s.len()).max().unwrap_or(0);
    let grid = grid_for(kind, max_len);
    let scored: Vec<(Measure, f64)> = grid
        .candidates
        .into_par_iter()
        .map(|measure| {
            let err = loo_error(train, &measure)?;
            Ok((measure, err))
        })
        .collect::<Result<_, ClassifyError>>()?;
    let best = scored
        .into_iter()
        .reduce(|best, cand| if prefer(&cand, &best) { cand } else { best })
        .expect("grids are never empty");
    Ok(TuneResult { measure: best.0, loo_error: best.1 })
}

/// Whether `cand` should replace `best` under the per-kind tie-breaking.
fn prefer(cand: &(Measure, f64), best: &(Measure, f64)) -> bool {
    if cand.1 != best.1 {
        return cand.1 < best.1;
    }
    match (&cand.0, &best.0) {
        (Measure::Twed(c), Measure::Twed(b)) => (c.nu, c.lambda) > (b.nu, b.lambda),
        (Measure::Dtw(c), Measure::Dtw(b)) => c.corridor < b.corridor,
        (Measure::Lcss(c), Measure::Lcss(b)) => (c.delta, c.epsilon) > (b.delta, b.epsilon),
        _ => false,
    }
}

/// One row of the experiment table: a dataset's test error per metric.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub dataset: String,
    pub errors: Vec<f64>,
}

/// Per-dataset, per-metric test errors plus the column mean and standard
/// deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub kinds: Vec<MetricKind>,
    pub rows: Vec<TableRow>,
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl TableReport {
    /// One row per dataset followed by the MEAN and STD rows.
    pub fn to_csv(&self) -> crate::io::CsvTable {
        let mut header = vec!["dataset".to_string()];
        header.extend(self.kinds.iter().map(|k| k.to_string()));
        let mut table = crate::io::CsvTable::new(header);
        let render = |name: &str, errors: &[f64]| {
            let mut row = vec![name.to_string()];
            row.extend(errors.iter().map(|e| e.to_string()));
            row
        };
        for row in &self.rows {
            table.push_row(render(&row.dataset, &row.errors));
        }
        table.push_row(render("MEAN", &self.mean));
        table.push_row(render("STD", &self.std));
        table
    }
}

/// Runs the full experiment: for every dataset and metric kind, tune on the
/// training split and evaluate once on the test split. With `downsampled`
/// set, every series of both splits is first reduced to half its samples.
pub fn run_table(
    datasets: &[LabeledDataset],
    kinds: &[MetricKind],
    downsampled: bool,
) -> Result<TableReport, ClassifyError> {
    let mut rows = Vec::with_capacity(datasets.len());
    for dataset in datasets {
        let prepared;
        let data = if downsampled {
            prepared = LabeledDataset {
                name: dataset.name.clone(),
                train: halve_split(&dataset.train)?,
                test: halve_split(&dataset.test)?,
            };
            &prepared
        } else {
            dataset
        };
        let mut errors = Vec::with_capacity(kinds.len());
        for &kind in kinds {
            let tuned = tune(&data.train, kind)?;
            errors.push(nn1_error_rate(&data.train, &data.test, &tuned.measure)?);
        }
        rows.push(TableRow { dataset: dataset.name.clone(), errors });
    }

    let n = rows.len() as f64;
    let mut mean = vec![0.0; kinds.len()];
    let mut std = vec![0.0; kinds.len()];
    if !rows.is_empty() {
        for (k, m) in mean.iter_mut().enumerate() {
            *m = rows.iter().map(|r| r.errors[k]).sum::<f64>() / n;
        }
        for (k, s) in std.iter_mut().enumerate() {
            let var = rows.iter().map(|r| (r.errors[k] - mean[k]).powi(2)).sum::<f64>() / n;
            *s = var.sqrt();
        }
    }
    Ok(TableReport { kinds: kinds.to_vec(), rows, mean, std })
}

fn halve_split(split: &[(String, TimeSeries)]) -> Result<Vec<(String, TimeSeries)>, ClassifyError> {
    split.iter().map(|(label, s)| Ok((label.clone(), downsample_half(s)?))).collect()
}

/// All pairwise distances between two series sets, rows indexing `rows`.
pub fn distance_matrix(
    rows: &[TimeSeries],
    cols: &[TimeSeries],
    measure: &Measure,
) -> Result<Vec<Vec<f64>>, ClassifyError> {
    rows.par_iter().map(|a| cols.iter().map(|b| measure.distance(a, b)).collect()).collect()
}
