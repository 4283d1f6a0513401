use num_bigint::BigInt;

use super::det::SubDet;
use super::{IntegerMatrix, LinalgError};

/// Chio pivotal condensation about the bottom-right entry.
///
/// Entry `(i, j)` of the result is `b[i][j] * b[n][n] - b[i][n] * b[n][j]`,
/// and `det(result) = b[n][n]^(n-2) * det(m)`.
pub fn chio_condense(m: &IntegerMatrix) -> Result<IntegerMatrix, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n < 2 {
        return Err(LinalgError::TooSmall { n, min: 2 });
    }
    let last = n - 1;
    let pivot = m.get(last, last);
    let mut data = Vec::with_capacity(last * last);
    for i in 0..last {
        for j in 0..last {
            data.push(m.get(i, j) * pivot - m.get(i, last) * m.get(last, j));
        }
    }
    IntegerMatrix::new(last, last, data)
}

/// `B_{[n]\{i1,i2},[n]\{j1,j2}} det(B) - (B_{i1,j1} B_{i2,j2} - B_{i1,j2} B_{i2,j1})`,
/// where `B_{i,j}` deletes row `i` and column `j`. Always zero.
pub fn desnanot_jacobi_residual(
    m: &IntegerMatrix,
    (i1, i2): (usize, usize),
    (j1, j2): (usize, usize),
) -> Result<BigInt, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n < 2 {
        return Err(LinalgError::TooSmall { n, min: 2 });
    }
    for idx in [i1, i2, j1, j2] {
        m.check_row(idx)?;
    }
    if i1 >= i2 || j1 >= j2 {
        return Err(LinalgError::UnorderedIndices);
    }
    let dets = SubDet::new(m);
    let all: Vec<usize> = (0..n).collect();
    let drop = |skip: &[usize]| -> Vec<usize> {
        all.iter().copied().filter(|x| !skip.contains(x)).collect()
    };
    let first = |i: usize, j: usize| dets.det(&drop(&[i]), &drop(&[j]));
    let central = dets.det(&drop(&[i1, i2]), &drop(&[j1, j2]));
    let full = dets.det(&all, &all);
    let rhs = first(i1, j1) * first(i2, j2) - first(i1, j2) * first(i2, j1);
    Ok(central * full - rhs)
}
