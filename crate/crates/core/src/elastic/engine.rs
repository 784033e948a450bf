//! Shared cost-lattice engine for the edit-style dynamic programs.
//!
//! Each measure supplies a per-cell closure returning the three move costs
//! (delete-A, match, delete-B) plus border rows; the engine runs the lattice
//! either with two-row rolling storage (cost only) or with full storage and
//! move provenance for backtracing.

use super::{EditOp, PathStep};

pub(crate) const INF: f64 = f64::INFINITY;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    None,
    Start,
    Match,
    DeleteA,
    DeleteB,
}

/// Lattice geometry: lengths, border rows, and an optional corridor
/// half-width constraining `|i - j|`.
pub(crate) struct EditDp<'a> {
    pub p: usize,
    pub q: usize,
    /// `cell(i, 0)` for `i` in `0..=p`.
    pub col0: &'a [f64],
    /// `cell(0, j)` for `j` in `0..=q`.
    pub row0: &'a [f64],
    pub corridor: Option<usize>,
}

impl EditDp<'_> {
    fn in_corridor(&self, i: usize, j: usize) -> bool {
        match self.corridor {
            Some(w) => i.abs_diff(j) <= w,
            None => true,
        }
    }

    /// Final cell cost using two-row rolling storage.
    pub fn cost<C>(&self, costs: C) -> f64
    where
        C: Fn(usize, usize) -> (f64, f64, f64),
    {
        debug_assert_eq!(self.col0.len(), self.p + 1);
        debug_assert_eq!(self.row0.len(), self.q + 1);
        let mut prev = self.row0.to_vec();
        let mut cur = vec![INF; self.q + 1];
        for i in 1..=self.p {
            cur[0] = self.col0[i];
            for j in 1..=self.q {
                cur[j] = if self.in_corridor(i, j) {
                    let (del_a, mat, del_b) = costs(i, j);
                    pick(prev[j] + del_a, prev[j - 1] + mat, cur[j - 1] + del_b).0
                } else {
                    INF
                };
            }
            std::mem::swap(&mut prev, &mut cur);
        }
        prev[self.q]
    }

    /// Full lattice with move provenance, for backtracing.
    pub fn lattice<C>(&self, costs: C) -> Lattice
    where
        C: Fn(usize, usize) -> (f64, f64, f64),
    {
        let (p, q) = (self.p, self.q);
        let width = q + 1;
        let mut cost = vec![INF; (p + 1) * width];
        let mut moves = vec![Move::None; (p + 1) * width];
        cost[0] = self.row0[0];
        moves[0] = Move::Start;
        for j in 1..=q {
            cost[j] = self.row0[j];
            if self.row0[j].is_finite() {
                moves[j] = Move::DeleteB;
            }
        }
        for i in 1..=p {
            cost[i * width] = self.col0[i];
            if self.col0[i].is_finite() {
                moves[i * width] = Move::DeleteA;
            }
        }
        for i in 1..=p {
            for j in 1..=q {
                if !self.in_corridor(i, j) {
                    continue;
                }
                let (del_a, mat, del_b) = costs(i, j);
                let (best, mv) = pick(
                    cost[(i - 1) * width + j] + del_a,
                    cost[(i - 1) * width + j - 1] + mat,
                    cost[i * width + j - 1] + del_b,
                );
                cost[i * width + j] = best;
                if best.is_finite() {
                    moves[i * width + j] = mv;
                }
            }
        }
        Lattice { p, q, width, cost, moves }
    }
}

/// Minimum of the three move candidates with ties broken
/// match > delete-A > delete-B.
fn pick(del_a: f64, mat: f64, del_b: f64) -> (f64, Move) {
    let mut best = mat;
    let mut mv = Move::Match;
    if del_a < best {
        best = del_a;
        mv = Move::DeleteA;
    }
    if del_b < best {
        best = del_b;
        mv = Move::DeleteB;
    }
    (best, mv)
}

/// A completed full-storage run.
pub(crate) struct Lattice {
    p: usize,
    q: usize,
    width: usize,
    cost: Vec<f64>,
    moves: Vec<Move>,
}

impl Lattice {
    pub fn final_cost(&self) -> f64 {
        self.cost[self.p * self.width + self.q]
    }

    /// Operation sequence realizing the final cost, in increasing order of
    /// the (i, j) indices. Empty when no valid alignment exists.
    pub fn backtrace(&self) -> Vec<PathStep> {
        if !self.final_cost().is_finite() {
            return Vec::new();
        }
        let mut steps = Vec::with_capacity(self.p + self.q);
        let (mut i, mut j) = (self.p, self.q);
        while i > 0 || j > 0 {
            match self.moves[i * self.width + j] {
                Move::Match => {
                    steps.push(PathStep { op: EditOp::Match, i, j });
                    i -= 1;
                    j -= 1;
                }
                Move::DeleteA => {
                    steps.push(PathStep { op: EditOp::DeleteA, i, j });
                    i -= 1;
                }
                Move::DeleteB => {
                    steps.push(PathStep { op: EditOp::DeleteB, i, j });
                    j -= 1;
                }
                Move::Start | Move::None => break,
            }
        }
        steps.reverse();
        steps
    }
}
