//! Minors and their gcd invariants.
//!
//! `D_k(B)` is the gcd of all `k x k` minors of `B` (with `D_0 = 1`), and
//! `D_k*(B)` the gcd of the `k x k` minors whose row set contains the last
//! row and whose column set contains the last column. Enumeration is
//! lexicographic over `(rows, cols)` and stops as soon as the gcd reaches 1.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::det::SubDet;
use super::{gcd_fold, IntegerMatrix, LinalgError};

/// Row and column index sets of a `k x k` minor, `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinorSpec {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self, LinalgError> {
        if rows.len() != cols.len() {
            return Err(LinalgError::MinorSizeMismatch {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if rows.is_empty() || !increasing(&rows) || !increasing(&cols) {
            return Err(LinalgError::UnorderedIndices);
        }
        Ok(Self { rows, cols })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }
}

pub fn minor(m: &IntegerMatrix, spec: &MinorSpec) -> Result<BigInt, LinalgError> {
    for &i in spec.rows() {
        m.check_row(i)?;
    }
    for &j in spec.cols() {
        m.check_col(j)?;
    }
    Ok(SubDet::new(m).det(spec.rows(), spec.cols()))
}

pub fn minor_gcd_all(m: &IntegerMatrix, k: usize) -> Result<BigInt, LinalgError> {
    check_order(m, k, 0)?;
    Ok(gcd_all(&SubDet::new(m), m.rows(), m.cols(), k))
}

pub fn minor_gcd_corner(m: &IntegerMatrix, k: usize) -> Result<BigInt, LinalgError> {
    check_order(m, k, 1)?;
    Ok(gcd_corner(&SubDet::new(m), m.rows(), m.cols(), k))
}

pub fn row_gcd(m: &IntegerMatrix, i: usize) -> Result<BigInt, LinalgError> {
    m.check_row(i)?;
    Ok(gcd_fold(m.row(i)))
}

pub fn col_gcd(m: &IntegerMatrix, j: usize) -> Result<BigInt, LinalgError> {
    m.check_col(j)?;
    Ok(gcd_fold((0..m.rows()).map(|i| m.get(i, j))))
}

fn check_order(m: &IntegerMatrix, k: usize, min: usize) -> Result<(), LinalgError> {
    let max = m.min_dim();
    if k < min || k > max {
        Err(LinalgError::OrderOutOfRange { k, min, max })
    } else {
        Ok(())
    }
}

fn gcd_all(dets: &SubDet<'_>, rows: usize, cols: usize, k: usize) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    let mut g = BigInt::zero();
    for r in (0..rows).combinations(k) {
        for c in (0..cols).combinations(k) {
            g = g.gcd(&dets.det(&r, &c));
            if g.is_one() {
                return g;
            }
        }
    }
    g
}

fn gcd_corner(dets: &SubDet<'_>, rows: usize, cols: usize, k: usize) -> BigInt {
    let (last_r, last_c) = (rows - 1, cols - 1);
    let mut g = BigInt::zero();
    for mut r in (0..last_r).combinations(k - 1) {
        r.push(last_r);
        for mut c in (0..last_c).combinations(k - 1) {
            c.push(last_c);
            g = g.gcd(&dets.det(&r, &c));
            if g.is_one() {
                return g;
            }
        }
    }
    g.abs()
}

/// All minor-gcd invariants of one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorGcdProfile {
    /// `D_0 ..= D_min`.
    pub dk: Vec<BigInt>,
    /// `D_1* ..= D_min*`, stored at index `k - 1`.
    pub dk_star: Vec<BigInt>,
    pub row_gcds: Vec<BigInt>,
    pub col_gcds: Vec<BigInt>,
}

impl MinorGcdProfile {
    pub fn d(&self, k: usize) -> &BigInt {
        &self.dk[k]
    }

    /// `D_k*` for `k >= 1`.
    pub fn d_star(&self, k: usize) -> &BigInt {
        assert!(k >= 1, "D_0* is undefined");
        &self.dk_star[k - 1]
    }

    pub fn min_dim(&self) -> usize {
        self.dk.len() - 1
    }

    /// gcd of the last row.
    pub fn last_row_gcd(&self) -> &BigInt {
        self.row_gcds.last().expect("matrix has rows")
    }

    /// gcd of the last column, i.e. of the last row of the transpose.
    pub fn last_col_gcd(&self) -> &BigInt {
        self.col_gcds.last().expect("matrix has columns")
    }
}

pub fn minor_gcd_profile(m: &IntegerMatrix) -> MinorGcdProfile {
    let dets = SubDet::new(m);
    let (rows, cols) = (m.rows(), m.cols());
    let min = m.min_dim();
    MinorGcdProfile {
        dk: (0..=min).map(|k| gcd_all(&dets, rows, cols, k)).collect(),
        dk_star: (1..=min)
            .map(|k| gcd_corner(&dets, rows, cols, k))
            .collect(),
        row_gcds: (0..rows).map(|i| gcd_fold(m.row(i))).collect(),
        col_gcds: (0..cols)
            .map(|j| gcd_fold((0..rows).map(|i| m.get(i, j))))
            .collect(),
    }
}
