//! Exact integer linear algebra.
//!
//! Indices in this Rust API are 0-based. Documentation and the file formats
//! use 1-based vertex labels; conversion happens once at the I/O boundary.

mod condense;
mod det;
mod matrix;
mod minors;
mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub use condense::{chio_condense, desnanot_jacobi_residual};
pub use det::determinant;
pub use matrix::IntegerMatrix;
pub use minors::{
    col_gcd, minor, minor_gcd_all, minor_gcd_corner, minor_gcd_profile, row_gcd, MinorGcdProfile,
    MinorSpec,
};
pub use snf::{smith_normal_form, SnfResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix must have at least one row and one column (got {rows}x{cols})")]
    EmptyDimension { rows: usize, cols: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected} entries for the given shape, found {found}")]
    DataLength { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("minor index sets differ in size ({rows} rows, {cols} columns)")]
    MinorSizeMismatch { rows: usize, cols: usize },
    #[error("minor index sets must be nonempty and strictly increasing")]
    UnorderedIndices,
    #[error("minor order {k} out of range {min}..={max}")]
    OrderOutOfRange { k: usize, min: usize, max: usize },
    #[error("matrix of size {n} is too small (need at least {min})")]
    TooSmall { n: usize, min: usize },
}

/// Nonnegative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// `a | b` with the conventions `x | 0` for every `x`, and `0 | y` iff `y = 0`.
pub fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        (b % a).is_zero()
    }
}

pub(crate) fn gcd_fold<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> BigInt {
    let mut g = BigInt::zero();
    for v in values {
        g = g.gcd(v);
        if g == BigInt::from(1) {
            break;
        }
    }
    g.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_conventions() {
        let z = BigInt::zero();
        let three = BigInt::from(3);
        assert!(divides(&three, &z));
        assert!(divides(&z, &z));
        assert!(!divides(&z, &three));
        assert!(divides(&BigInt::from(-3), &BigInt::from(9)));
        assert!(!divides(&three, &BigInt::from(10)));
        assert_eq!(gcd(&z, &z), z);
        assert_eq!(gcd(&z, &BigInt::from(-7)), BigInt::from(7));
    }
}
