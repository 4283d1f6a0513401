use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::LinalgError;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyDimension { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(LinalgError::DataLength {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<T, R>(rows: impl IntoIterator<Item = R>) -> Result<Self, LinalgError>
    where
        T: Into<BigInt>,
        R: IntoIterator<Item = T>,
    {
        let mut data = Vec::new();
        let mut cols = None;
        let mut count = 0;
        for (i, row) in rows.into_iter().enumerate() {
            let before = data.len();
            data.extend(row.into_iter().map(Into::into));
            let found = data.len() - before;
            match cols {
                None => cols = Some(found),
                Some(expected) if expected != found => {
                    return Err(LinalgError::RaggedRows {
                        row: i,
                        expected,
                        found,
                    })
                }
                _ => {}
            }
            count += 1;
        }
        Self::new(count, cols.unwrap_or(0), data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self, LinalgError> {
        Self::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn min_dim(&self) -> usize {
        self.rows.min(self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of range"
        );
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data
            .chunks(self.cols)
            .map(<[BigInt]>::to_vec)
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Submatrix on the given row and column indices, in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self, LinalgError> {
        for &i in rows {
            self.check_row(i)?;
        }
        for &j in cols {
            self.check_col(j)?;
        }
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Self::new(rows.len(), cols.len(), data)
    }

    pub fn without_row(&self, i: usize) -> Result<Self, LinalgError> {
        self.check_row(i)?;
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn without_col(&self, j: usize) -> Result<Self, LinalgError> {
        self.check_col(j)?;
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.submatrix(&rows, &cols)
    }

    /// Simultaneous row and column permutation moving index `v` to the end
    /// while keeping the relative order of the others.
    pub fn move_index_last(&self, v: usize) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        self.check_row(v)?;
        let order: Vec<usize> = (0..self.rows)
            .filter(|&i| i != v)
            .chain(std::iter::once(v))
            .collect();
        self.submatrix(&order, &order)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DataLength {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for t in 0..self.cols {
                    acc += self.get(i, t) * other.get(t, j);
                }
                data.push(acc);
            }
        }
        Self::new(self.rows, other.cols, data)
    }

    /// Copy of the entries as `i128` when every entry fits in `i64`.
    pub(crate) fn small_entries(&self) -> Option<Vec<i128>> {
        self.data
            .iter()
            .map(|x| x.to_i64().map(i128::from))
            .collect()
    }

    pub(crate) fn check_row(&self, i: usize) -> Result<(), LinalgError> {
        if i < self.rows {
            Ok(())
        } else {
            Err(LinalgError::IndexOutOfRange {
                index: i,
                bound: self.rows,
            })
        }
    }

    pub(crate) fn check_col(&self, j: usize) -> Result<(), LinalgError> {
        if j < self.cols {
            Ok(())
        } else {
            Err(LinalgError::IndexOutOfRange {
                index: j,
                bound: self.cols,
            })
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for row in cells.chunks(self.cols) {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(matches!(
            IntegerMatrix::from_rows(Vec::<Vec<i64>>::new()),
            Err(LinalgError::EmptyDimension { .. })
        ));
        assert!(matches!(
            IntegerMatrix::from_rows(vec![vec![1, 2], vec![3]]),
            Err(LinalgError::RaggedRows { row: 1, .. })
        ));
        assert!(IntegerMatrix::new(2, 2, vec![BigInt::zero(); 3]).is_err());
    }

    #[test]
    fn move_index_last_keeps_relative_order() {
        let m =
            IntegerMatrix::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap();
        let p = m.move_index_last(0).unwrap();
        let want =
            IntegerMatrix::from_rows(vec![vec![5, 6, 4], vec![8, 9, 7], vec![2, 3, 1]]).unwrap();
        assert_eq!(p, want);
    }

    #[test]
    fn transpose_and_symmetry() {
        let m = IntegerMatrix::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let t = m.transpose();
        assert_eq!((t.rows(), t.cols()), (3, 2));
        assert_eq!(t.get(2, 1), &BigInt::from(6));
        assert!(!m.is_symmetric());
        assert!(m.mul(&t).unwrap().is_symmetric());
    }
}
