//! Smith normal form by unimodular elimination.
//!
//! Each step pivots on the nonzero entry of least absolute value in the
//! working block and clears its row and column with Euclidean division. The
//! resulting diagonal is then folded pairwise into `gcd`/`lcm` form, which
//! restores the chain `alpha_k | alpha_{k+1}`. Transforms are not tracked.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntegerMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// `min(rows, cols)` nonnegative entries; the first `rank` are positive.
    pub diag: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diag[..self.rank]
    }

    /// Product of the first `k` diagonal entries.
    pub fn prefix_product(&self, k: usize) -> BigInt {
        self.diag[..k].iter().product()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SnfResult {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;

    while rank < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, rank..rows, rank..cols) else {
            break;
        };
        a.swap(rank, pi);
        for row in a.iter_mut() {
            row.swap(rank, pj);
        }
        let t = rank;
        loop {
            let (top, below) = a.split_at_mut(t + 1);
            let pivot_row = &top[t];
            for row in below.iter_mut() {
                if row[t].is_zero() {
                    continue;
                }
                let q = row[t].div_floor(&pivot_row[t]);
                for (x, p) in row[t..].iter_mut().zip(&pivot_row[t..]) {
                    *x -= &q * p;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
            }
            // remainders left in the pivot row or column are strictly
            // smaller than the pivot; promote the smallest and repeat
            let col_min = min_abs_entry(&a, t + 1..rows, t..t + 1);
            let row_min = min_abs_entry(&a, t..t + 1, t + 1..cols);
            let next = match (col_min, row_min) {
                (None, None) => break,
                (Some(p), None) | (None, Some(p)) => p,
                (Some(p), Some(q)) => {
                    if a[p.0][p.1].abs() <= a[q.0][q.1].abs() {
                        p
                    } else {
                        q
                    }
                }
            };
            a.swap(t, next.0);
            for row in a.iter_mut() {
                row.swap(t, next.1);
            }
        }
        rank += 1;
    }

    let mut diag: Vec<BigInt> = (0..rows.min(cols)).map(|k| a[k][k].abs()).collect();
    for i in 0..rank {
        for j in i + 1..rank {
            let g = diag[i].gcd(&diag[j]);
            if g != diag[i] {
                let l = diag[i].lcm(&diag[j]);
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    SnfResult { diag, rank }
}

fn min_abs_entry(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
