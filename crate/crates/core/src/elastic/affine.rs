//! Symbolic sequence alignment with affine gap penalties: a gap of length g
//! is charged `open + (g - 1) * extend`, tracked through three score
//! matrices (match state plus one insertion state per sequence). Scores are
//! maximized.

use super::ElasticError;
use std::collections::HashMap;

/// Pairwise symbol scores. Missing pairs are reported as errors, so tables
/// must cover the full alphabet in use.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScoreTable {
    scores: HashMap<(char, char), f64>,
}

impl ScoreTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = ((char, char), f64)>) -> Self {
        Self { scores: pairs.into_iter().collect() }
    }

    /// Uniform table over an alphabet: equal symbols score `matching`,
    /// differing symbols score `differing`.
    pub fn match_mismatch(alphabet: &str, matching: f64, differing: f64) -> Self {
        let mut scores = HashMap::new();
        for a in alphabet.chars() {
            for b in alphabet.chars() {
                scores.insert((a, b), if a == b { matching } else { differing });
            }
        }
        Self { scores }
    }

    pub fn set(&mut self, a: char, b: char, score: f64) {
        self.scores.insert((a, b), score);
    }

    pub fn score(&self, a: char, b: char) -> Option<f64> {
        self.scores.get(&(a, b)).copied()
    }
}

/// Parameters of affine-gap alignment: `open` is charged for the first
/// position of a gap run and `extend` for every further position.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineGapParams {
    pub open: f64,
    pub extend: f64,
    pub table: ScoreTable,
}

/// Best affine-gap alignment score between two symbol sequences
/// (maximized; gaps at either end are charged like any other gap).
pub fn affine_gap_align(a: &str, b: &str, params: &AffineGapParams) -> Result<f64, ElasticError> {
    if params.open < 0.0 || params.open.is_nan() {
        return Err(ElasticError::InvalidParameter { name: "open", value: params.open });
    }
    if params.extend < 0.0 || params.extend.is_nan() {
        return Err(ElasticError::InvalidParameter { name: "extend", value: params.extend });
    }
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let (p, q) = (a.len(), b.len());
    let d = params.open;
    let e = params.extend;
    let neg = f64::NEG_INFINITY;
    let leading = |n: usize| -d - (n as f64 - 1.0) * e;

    // Row 0: a leading run of gaps in B counts as settled, so either state
    // may continue from it.
    let mut m_prev: Vec<f64> = (0..=q).map(|j| if j == 0 { 0.0 } else { leading(j) }).collect();
    let mut ix_prev = vec![neg; q + 1];
    let mut iy_prev = m_prev.clone();
    iy_prev[0] = neg;

    let mut m_cur = vec![neg; q + 1];
    let mut ix_cur = vec![neg; q + 1];
    let mut iy_cur = vec![neg; q + 1];
    for i in 1..=p {
        m_cur[0] = leading(i);
        ix_cur[0] = leading(i);
        iy_cur[0] = neg;
        for j in 1..=q {
            let s = params
                .table
                .score(a[i - 1], b[j - 1])
                .ok_or(ElasticError::UnknownSymbol { a: a[i - 1], b: b[j - 1] })?;
            m_cur[j] = s + m_prev[j - 1].max(ix_prev[j - 1]).max(iy_prev[j - 1]);
            ix_cur[j] = (m_prev[j] - d).max(ix_prev[j] - e);
            iy_cur[j] = (m_cur[j - 1] - d).max(iy_cur[j - 1] - e);
        }
        std::mem::swap(&mut m_prev, &mut m_cur);
        std::mem::swap(&mut ix_prev, &mut ix_cur);
        std::mem::swap(&mut iy_prev, &mut iy_cur);
    }
    Ok(m_prev[q].max(ix_prev[q]).max(iy_prev[q]))
}
