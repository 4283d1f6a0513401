use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{PropertyId, PropertyReport, Tally, VerifyError, WitnessInput};
use crate::linalg::{
    chio_condense, desnanot_jacobi_residual, determinant, divides, minor_gcd_profile,
    IntegerMatrix, MinorGcdProfile,
};

/// Runs every matrix statement in [`PropertyId::MATRIX`] order.
pub fn verify_minor_properties(m: &IntegerMatrix) -> Vec<PropertyReport> {
    let p = minor_gcd_profile(m);
    PropertyId::MATRIX
        .into_iter()
        .map(|id| check_with_profile(id, m, &p))
        .collect()
}

/// Runs one matrix statement. Operation and conjecture ids are reported as
/// not applicable.
pub fn check_minor_property(id: PropertyId, m: &IntegerMatrix) -> PropertyReport {
    if !PropertyId::MATRIX.contains(&id) {
        return PropertyReport::not_applicable(id, "not a matrix statement");
    }
    check_with_profile(id, m, &minor_gcd_profile(m))
}

/// `D_k D_{k+1}* | D_k* D_{k+1}` for `k` in `1..min`.
pub fn check_conjecture_minors(m: &IntegerMatrix) -> Result<PropertyReport, VerifyError> {
    let min = m.min_dim();
    if min < 2 {
        return Err(VerifyError::TooSmall {
            what: "the minors conjecture",
            min: 2,
            found: min,
        });
    }
    let p = minor_gcd_profile(m);
    let mut t = Tally::new(PropertyId::ConjMinors);
    for k in 1..min {
        let lhs = p.d(k) * p.d_star(k + 1);
        let rhs = p.d_star(k) * p.d(k + 1);
        t.record(Some(k), divides(&lhs, &rhs), lhs.is_zero(), || {
            format!("k={k}: D_k D_(k+1)* = {lhs} does not divide D_k* D_(k+1) = {rhs}")
        });
    }
    Ok(finish(t, m, &p))
}

fn finish(t: Tally, m: &IntegerMatrix, p: &MinorGcdProfile) -> PropertyReport {
    t.finish(|| WitnessInput::Matrix(m.clone()), || profile_values(p))
}

pub(crate) fn profile_values(p: &MinorGcdProfile) -> BTreeMap<String, Vec<BigInt>> {
    BTreeMap::from([
        ("D".to_string(), p.dk.clone()),
        ("D_star".to_string(), p.dk_star.clone()),
        ("g_last_row".to_string(), vec![p.last_row_gcd().clone()]),
        ("g_last_col".to_string(), vec![p.last_col_gcd().clone()]),
    ])
}

fn check_with_profile(id: PropertyId, m: &IntegerMatrix, p: &MinorGcdProfile) -> PropertyReport {
    let min = m.min_dim();
    let mut t = Tally::new(id);
    match id {
        PropertyId::MinorfactsA => {
            for k in 1..=min {
                record_divides(&mut t, k, p.d(k), p.d_star(k), "D_k", "D_k*");
            }
        }
        PropertyId::MinorfactsB => {
            for (label, sub) in deletions(m, false) {
                let q = minor_gcd_profile(&sub);
                for k in 0..=sub.min_dim() {
                    let (a, b) = (p.d(k), q.d(k));
                    t.record(Some(k), divides(a, b), a.is_zero(), || {
                        format!("k={k}, {label}: D_k = {a} does not divide {b}")
                    });
                }
            }
        }
        PropertyId::MinorfactsC => {
            for (label, sub) in deletions(m, true) {
                let q = minor_gcd_profile(&sub);
                for k in 1..=sub.min_dim() {
                    let (a, b) = (p.d_star(k), q.d_star(k));
                    t.record(Some(k), divides(a, b), a.is_zero(), || {
                        format!("k={k}, {label}: D_k* = {a} does not divide {b}")
                    });
                }
            }
        }
        PropertyId::MinorfactsD => {
            if !m.is_square() {
                return PropertyReport::not_applicable(id, "matrix is not square");
            }
            let det = determinant(m).expect("square").abs();
            let (dn, dn_star) = (p.d(min), p.d_star(min));
            t.record(
                Some(min),
                *dn == det && *dn_star == det,
                det.is_zero(),
                || format!("D_n = {dn}, D_n* = {dn_star}, |det| = {det}"),
            );
        }
        PropertyId::MinorfactsE => {
            for k in 0..min {
                record_divides(&mut t, k, p.d(k), p.d(k + 1), "D_k", "D_(k+1)");
            }
        }
        PropertyId::DkstarChain => {
            for k in 2..min {
                record_divides(&mut t, k, p.d_star(k), p.d_star(k + 1), "D_k*", "D_(k+1)*");
            }
        }
        PropertyId::GnBound => {
            let scale = p.last_col_gcd() * p.last_row_gcd();
            for k in 2..=min {
                let bound = &scale * p.d(k);
                record_divides(
                    &mut t,
                    k,
                    p.d_star(k),
                    &bound,
                    "D_k*",
                    "g_n(B^T) g_m(B) D_k",
                );
            }
        }
        PropertyId::D1d2star => {
            if min < 2 {
                return PropertyReport::not_applicable(id, "needs at least 2 rows and columns");
            }
            let lhs = p.d(1) * p.d_star(2);
            let rhs = p.d_star(1) * p.d(2);
            record_divides(&mut t, 1, &lhs, &rhs, "D_1 D_2*", "D_1* D_2");
        }
        PropertyId::Chio => {
            if !m.is_square() || min < 2 {
                return PropertyReport::not_applicable(id, "needs a square matrix of order >= 2");
            }
            let n = min;
            let pivot = m.get(n - 1, n - 1);
            let lhs = determinant(&chio_condense(m).expect("square, n >= 2")).expect("square");
            let rhs = pivot.pow(n as u32 - 2) * determinant(m).expect("square");
            t.record(None, lhs == rhs, pivot.is_zero(), || {
                format!("det of condensation = {lhs}, pivot^(n-2) det = {rhs}")
            });
        }
        PropertyId::Desnanot => {
            if !m.is_square() || min < 2 {
                return PropertyReport::not_applicable(id, "needs a square matrix of order >= 2");
            }
            for (i1, i2) in pairs(min) {
                for (j1, j2) in pairs(min) {
                    let res =
                        desnanot_jacobi_residual(m, (i1, i2), (j1, j2)).expect("valid indices");
                    t.record(None, res.is_zero(), false, || {
                        format!(
                            "rows ({}, {}), cols ({}, {}): residual {res}",
                            i1 + 1,
                            i2 + 1,
                            j1 + 1,
                            j2 + 1
                        )
                    });
                }
            }
        }
        _ => unreachable!("filtered by caller"),
    }
    finish(t, m, p)
}

fn record_divides(t: &mut Tally, k: usize, a: &BigInt, b: &BigInt, an: &str, bn: &str) {
    t.record(Some(k), divides(a, b), a.is_zero() || b.is_zero(), || {
        format!("k={k}: {an} = {a} does not divide {bn} = {b}")
    });
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> + Clone {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
}

/// Single-row and single-column deletions. With `keep_corner`, the last row
/// and column are never deleted. Divisibility is transitive along chains of
/// deletions, so these suffice for arbitrary submatrices.
fn deletions(m: &IntegerMatrix, keep_corner: bool) -> Vec<(String, IntegerMatrix)> {
    let skip = usize::from(keep_corner);
    let mut out = Vec::new();
    if m.rows() > 1 {
        for i in 0..m.rows() - skip {
            out.push((
                format!("without row {}", i + 1),
                m.without_row(i).expect("in range"),
            ));
        }
    }
    if m.cols() > 1 {
        for j in 0..m.cols() - skip {
            out.push((
                format!("without column {}", j + 1),
                m.without_col(j).expect("in range"),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{recheck, Status};

    fn mat(rows: Vec<Vec<i64>>) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn nonsimple_l() -> IntegerMatrix {
        mat(vec![
            vec![8, -1, -1, 0],
            vec![-1, 10, -5, -2],
            vec![-1, -5, 4, -2],
            vec![0, -2, -2, 8],
        ])
    }

    fn all_pass(reports: &[PropertyReport]) -> bool {
        reports.iter().all(|r| r.status == Status::Pass)
    }

    #[test]
    fn structure_matrix_passes() {
        let reports = verify_minor_properties(&nonsimple_l());
        assert_eq!(reports.len(), PropertyId::MATRIX.len());
        assert!(all_pass(&reports), "{reports:#?}");
        // L is singular, so some of the D values are 0
        let det = reports
            .iter()
            .find(|r| r.property == PropertyId::MinorfactsD)
            .unwrap();
        assert!(det.degenerate);
    }

    #[test]
    fn identity_passes_without_degeneracy() {
        let reports = verify_minor_properties(&IntegerMatrix::identity(4).unwrap());
        assert!(all_pass(&reports));
        assert!(reports.iter().all(|r| !r.degenerate));
    }

    #[test]
    fn non_square_ranges() {
        let m = mat(vec![vec![1, 2, 3], vec![4, 5, 6]]);
        let by_id = |id| {
            verify_minor_properties(&m)
                .into_iter()
                .find(|r| r.property == id)
                .unwrap()
                .status
        };
        assert_eq!(by_id(PropertyId::MinorfactsD), Status::NotApplicable);
        assert_eq!(by_id(PropertyId::Chio), Status::NotApplicable);
        assert_eq!(by_id(PropertyId::Desnanot), Status::NotApplicable);
        // k runs over 2..min, empty for min = 2
        assert_eq!(by_id(PropertyId::DkstarChain), Status::NotApplicable);
        assert_eq!(by_id(PropertyId::GnBound), Status::Pass);
        assert_eq!(by_id(PropertyId::D1d2star), Status::Pass);

        let row = mat(vec![vec![3, 6]]);
        let reports = verify_minor_properties(&row);
        let status = |id| reports.iter().find(|r| r.property == id).unwrap().status;
        assert_eq!(status(PropertyId::GnBound), Status::NotApplicable);
        assert_eq!(status(PropertyId::D1d2star), Status::NotApplicable);
        assert_eq!(status(PropertyId::MinorfactsA), Status::Pass);
    }

    #[test]
    fn zero_matrix_is_degenerate_but_passes() {
        let z = IntegerMatrix::zeros(3, 3).unwrap();
        let reports = verify_minor_properties(&z);
        assert!(all_pass(&reports));
        assert!(reports.iter().any(|r| r.degenerate));
        assert_eq!(check_conjecture_minors(&z).unwrap().status, Status::Pass);
    }

    #[test]
    fn conjecture_minors() {
        let r = check_conjecture_minors(&nonsimple_l()).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(matches!(
            check_conjecture_minors(&mat(vec![vec![1, 2, 3]])),
            Err(VerifyError::TooSmall { found: 1, .. })
        ));
    }

    #[test]
    fn recheck_reproduces_report() {
        let m = mat(vec![vec![2, 4, 1], vec![6, 3, 9], vec![5, 0, 7]]);
        for r in verify_minor_properties(&m) {
            assert_eq!(check_minor_property(r.property, &m), r);
        }
        let w = crate::verify::Witness {
            property: PropertyId::MinorfactsA,
            input: WitnessInput::Matrix(m.clone()),
            k: None,
            values: BTreeMap::new(),
            case: None,
        };
        assert_eq!(recheck(&w).unwrap().unwrap().status, Status::Pass);
    }

    #[test]
    fn operation_id_is_not_a_matrix_statement() {
        let r = check_minor_property(PropertyId::ThmDklA, &nonsimple_l());
        assert_eq!(r.status, Status::NotApplicable);
    }
}
