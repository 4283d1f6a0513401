//! Fraction-free (Bareiss) elimination.
//!
//! Every intermediate value of Bareiss elimination is itself a minor of the
//! input, so the divisions are exact. Small inputs run on checked `i128`
//! arithmetic and fall back to `BigInt` on the first overflow.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntegerMatrix, LinalgError};

pub fn determinant(m: &IntegerMatrix) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let idx: Vec<usize> = (0..m.rows()).collect();
    Ok(SubDet::new(m).det(&idx, &idx))
}

/// Determinants of square submatrices of one fixed matrix.
pub(crate) struct SubDet<'a> {
    m: &'a IntegerMatrix,
    small: Option<Vec<i128>>,
}

impl<'a> SubDet<'a> {
    pub(crate) fn new(m: &'a IntegerMatrix) -> Self {
        Self {
            m,
            small: m.small_entries(),
        }
    }

    /// Determinant of the submatrix on `rows` x `cols`; the empty minor is 1.
    /// Callers guarantee equal lengths and in-range indices.
    pub(crate) fn det(&self, rows: &[usize], cols: &[usize]) -> BigInt {
        debug_assert_eq!(rows.len(), cols.len());
        let k = rows.len();
        if k == 0 {
            return BigInt::one();
        }
        if let Some(small) = &self.small {
            let w = self.m.cols();
            let mut a: Vec<i128> = rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| small[i * w + j]))
                .collect();
            if let Some(d) = bareiss_i128(&mut a, k) {
                return BigInt::from(d);
            }
        }
        let mut a: Vec<BigInt> = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.m.get(i, j).clone()))
            .collect();
        bareiss_big(&mut a, k)
    }
}

fn bareiss_i128(a: &mut [i128], n: usize) -> Option<i128> {
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(k * n + j, swap * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let lead = a[i * n + k];
            for j in k + 1..n {
                let num = a[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(lead.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = num / prev;
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    let d = a[n * n - 1];
    Some(if negate { d.checked_neg()? } else { d })
}

// a zero column means a zero determinant; that is the only early exit
fn bareiss_big(a: &mut [BigInt], n: usize) -> BigInt {
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, swap * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = std::mem::take(&mut a[i * n + k]);
            for j in k + 1..n {
                let num = &a[i * n + j] * &pivot - &lead * &a[k * n + j];
                a[i * n + j] = num / &prev;
            }
        }
        prev = pivot;
    }
    let d = std::mem::take(&mut a[n * n - 1]);
    if negate {
        -d
    } else {
        d
    }
}
