use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{PropertyId, PropertyReport, Tally, VerifyError, WitnessInput};
use crate::graph::{
    critical_group, keyes_reiter_operation, matrix_l, validate_structure, ArithmeticalStructure,
    GraphError, Multigraph, OperationOutcome,
};
use crate::linalg::{
    chio_condense, divides, gcd, minor_gcd_all, minor_gcd_profile, IntegerMatrix, MinorGcdProfile,
};

/// Where `|K'|` sits between the order bounds `d_n^(n-3)|K|` and
/// `g_n^2 d_n^(n-3)|K|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundPosition {
    /// The two bounds are equal (`g_n = 1`), so the order is determined.
    Coincide,
    Lower,
    Upper,
    Interior,
}

/// Everything the operation statements are phrased in, computed once.
#[derive(Debug, Clone)]
pub struct OperationInvariants {
    pub outcome: OperationOutcome,
    /// `L` with the operation vertex moved last.
    pub l: IntegerMatrix,
    pub l_prime: IntegerMatrix,
    pub profile: MinorGcdProfile,
    /// `D_0(L') ..= D_(n-1)(L')`.
    pub dk_prime: Vec<BigInt>,
    /// Invariant factors of `K`, `alpha_1 ..= alpha_(n-1)`.
    pub alpha: Vec<BigInt>,
    /// Invariant factors of `K'`, `alpha'_1 ..= alpha'_(n-2)`.
    pub alpha_prime: Vec<BigInt>,
    pub d_n: BigInt,
    /// gcd of the last row of `L`.
    pub g_n: BigInt,
}

impl OperationInvariants {
    /// Requires `n >= 2`. The `alpha` values come from Smith normal forms and
    /// the `D` values from minors, independently of each other.
    pub fn compute(
        g: &Multigraph,
        s: &ArithmeticalStructure,
        v: usize,
    ) -> Result<Self, VerifyError> {
        let outcome = keyes_reiter_operation(g, s, v)?;
        let l = matrix_l(g, s)?.move_index_last(v)?;
        let l_prime = matrix_l(&outcome.graph, &outcome.structure)?;
        if chio_condense(&l)? != l_prime {
            return Err(GraphError::ConsistencyFailure { vertex: v }.into());
        }
        let profile = minor_gcd_profile(&l);
        let dk_prime = (0..=l_prime.min_dim())
            .map(|k| minor_gcd_all(&l_prime, k))
            .collect::<Result<Vec<_>, _>>()?;
        let alpha = critical_group(g, s)?.invariant_factors;
        let alpha_prime = critical_group(&outcome.graph, &outcome.structure)?.invariant_factors;
        let d_n = outcome.d_removed.clone();
        let g_n = profile.last_row_gcd().clone();
        Ok(Self {
            outcome,
            l,
            l_prime,
            profile,
            dk_prime,
            alpha,
            alpha_prime,
            d_n,
            g_n,
        })
    }

    pub fn n(&self) -> usize {
        self.l.rows()
    }

    /// `alpha_k`, 1-based.
    pub fn alpha(&self, k: usize) -> &BigInt {
        &self.alpha[k - 1]
    }

    /// `alpha'_k`, 1-based.
    pub fn alpha_prime(&self, k: usize) -> &BigInt {
        &self.alpha_prime[k - 1]
    }

    pub fn order(&self) -> BigInt {
        self.alpha.iter().product()
    }

    pub fn order_prime(&self) -> BigInt {
        self.alpha_prime.iter().product()
    }

    /// `(d_n^(n-3)|K|, g_n^2 d_n^(n-3)|K|)`; requires `n >= 3`.
    pub fn order_bounds(&self) -> (BigInt, BigInt) {
        let lower = self.d_n.pow(self.n() as u32 - 3) * self.order();
        let upper = &self.g_n * &self.g_n * &lower;
        (lower, upper)
    }

    pub fn bound_position(&self) -> BoundPosition {
        let (lower, upper) = self.order_bounds();
        let order = self.order_prime();
        if lower == upper {
            BoundPosition::Coincide
        } else if order == lower {
            BoundPosition::Lower
        } else if order == upper {
            BoundPosition::Upper
        } else {
            BoundPosition::Interior
        }
    }

    fn values(&self) -> BTreeMap<String, Vec<BigInt>> {
        BTreeMap::from([
            ("D_L".to_string(), self.profile.dk.clone()),
            ("D_star_L".to_string(), self.profile.dk_star.clone()),
            ("D_L_prime".to_string(), self.dk_prime.clone()),
            ("alpha".to_string(), self.alpha.clone()),
            ("alpha_prime".to_string(), self.alpha_prime.clone()),
            ("d_n".to_string(), vec![self.d_n.clone()]),
            ("g_n".to_string(), vec![self.g_n.clone()]),
        ])
    }
}

/// Checks every statement in [`PropertyId::OPERATION`] for the operation at
/// `v` (0-based). For `n < 3` the structure is still validated, and every
/// statement is reported not applicable.
pub fn verify_operation_theorems(
    g: &Multigraph,
    s: &ArithmeticalStructure,
    v: usize,
) -> Result<Vec<PropertyReport>, VerifyError> {
    let Some(inv) = prepare(g, s, v)? else {
        return Ok(PropertyId::OPERATION
            .into_iter()
            .map(|id| PropertyReport::not_applicable(id, "needs at least 3 vertices"))
            .collect());
    };
    let input = || WitnessInput::Operation {
        graph: g.clone(),
        structure: s.clone(),
        vertex: v,
    };
    Ok(PropertyId::OPERATION
        .into_iter()
        .map(|id| match check(id, &inv) {
            Some(t) => t.finish(input, || inv.values()),
            None => PropertyReport::not_applicable(id, "last row gcd of L is not 1"),
        })
        .collect())
}

/// `alpha'_k | d_n alpha_(k+1)` for `k` in `1..=n-2`.
pub fn check_conjecture_alpha(
    g: &Multigraph,
    s: &ArithmeticalStructure,
    v: usize,
) -> Result<PropertyReport, VerifyError> {
    let Some(inv) = prepare(g, s, v)? else {
        return Ok(PropertyReport::not_applicable(
            PropertyId::ConjAlpha,
            "needs at least 3 vertices",
        ));
    };
    let mut t = Tally::new(PropertyId::ConjAlpha);
    for k in 1..=inv.n() - 2 {
        let a = inv.alpha_prime(k);
        let b = &inv.d_n * inv.alpha(k + 1);
        t.record(Some(k), divides(a, &b), a.is_zero() || b.is_zero(), || {
            format!("k={k}: alpha'_k = {a} does not divide d_n alpha_(k+1) = {b}")
        });
    }
    Ok(t.finish(
        || WitnessInput::Operation {
            graph: g.clone(),
            structure: s.clone(),
            vertex: v,
        },
        || inv.values(),
    ))
}

fn prepare(
    g: &Multigraph,
    s: &ArithmeticalStructure,
    v: usize,
) -> Result<Option<OperationInvariants>, VerifyError> {
    let n = g.n();
    if v >= n {
        return Err(GraphError::VertexOutOfRange { vertex: v, n }.into());
    }
    validate_structure(g, s.d(), s.r()).map_err(GraphError::from)?;
    if n < 3 {
        return Ok(None);
    }
    OperationInvariants::compute(g, s, v).map(Some)
}

/// `None` when the statement's hypothesis does not hold.
fn check(id: PropertyId, inv: &OperationInvariants) -> Option<Tally> {
    let n = inv.n();
    let p = &inv.profile;
    let dn = &inv.d_n;
    let g2 = &inv.g_n * &inv.g_n;
    let mut t = Tally::new(id);
    let degenerate = |xs: &[&BigInt]| xs.iter().any(|x| x.is_zero());

    match id {
        PropertyId::ThmDklA | PropertyId::ThmDklB | PropertyId::ThmDklC | PropertyId::ThmDklD => {
            for k in 1..=n - 2 {
                let scale = dn.pow(k as u32 - 1);
                let dk_prime = &inv.dk_prime[k];
                let lower = &scale * p.d(k + 1);
                let upper = &g2 * &lower;
                let deg = degenerate(&[dk_prime, &lower]);
                match id {
                    PropertyId::ThmDklA => {
                        let rhs = &scale * p.d_star(k + 1);
                        t.record(Some(k), *dk_prime == rhs, deg, || {
                            format!("k={k}: D_k(L') = {dk_prime}, d_n^(k-1) D_(k+1)*(L) = {rhs}")
                        });
                    }
                    PropertyId::ThmDklB => {
                        t.record(Some(k), divides(&lower, dk_prime), deg, || {
                            format!("k={k}: d_n^(k-1) D_(k+1)(L) = {lower} does not divide D_k(L') = {dk_prime}")
                        });
                    }
                    PropertyId::ThmDklC => {
                        t.record(Some(k), divides(dk_prime, &upper), deg, || {
                            format!("k={k}: D_k(L') = {dk_prime} does not divide g_n^2 d_n^(k-1) D_(k+1)(L) = {upper}")
                        });
                    }
                    _ => {
                        t.record(
                            Some(k),
                            lower <= *dk_prime && *dk_prime <= upper,
                            deg,
                            || format!("k={k}: D_k(L') = {dk_prime} outside [{lower}, {upper}]"),
                        );
                    }
                }
            }
        }
        PropertyId::CorOrderA | PropertyId::CorOrderB | PropertyId::CorOrderC => {
            let (lower, upper) = inv.order_bounds();
            let order = inv.order_prime();
            let deg = degenerate(&[&lower, &order]);
            let (ok, what) = match id {
                PropertyId::CorOrderA => {
                    (divides(&lower, &order), "lower bound does not divide |K'|")
                }
                PropertyId::CorOrderB => {
                    (divides(&order, &upper), "|K'| does not divide upper bound")
                }
                _ => (lower <= order && order <= upper, "|K'| outside the bounds"),
            };
            t.record(None, ok, deg, || {
                format!("{what}: lower {lower}, |K'| {order}, upper {upper}")
            });
        }
        PropertyId::PropAlpha1A
        | PropertyId::PropAlpha1B
        | PropertyId::PropAlpha1C
        | PropertyId::PropAlpha1D
        | PropertyId::PropAlpha1E => {
            let a1p = inv.alpha_prime(1);
            let (a1, a2) = (inv.alpha(1), inv.alpha(2));
            let a12 = a1 * a2;
            let tight = gcd(&(&g2 * a1), dn) * a2;
            let deg = degenerate(&[a1p, &a12]);
            let (ok, rhs_name, rhs) = match id {
                PropertyId::PropAlpha1A => {
                    let rhs = &g2 * &a12;
                    (divides(a1p, &rhs), "g_n^2 alpha_1 alpha_2", rhs)
                }
                PropertyId::PropAlpha1B => {
                    let rhs = dn * a2;
                    (divides(a1p, &rhs), "d_n alpha_2", rhs)
                }
                PropertyId::PropAlpha1C => (
                    divides(a1p, &tight),
                    "gcd(g_n^2 alpha_1, d_n) alpha_2",
                    tight.clone(),
                ),
                PropertyId::PropAlpha1D => (divides(&a12, a1p), "alpha_1 alpha_2", a12.clone()),
                _ => (a12 <= *a1p && *a1p <= tight, "bounds", tight.clone()),
            };
            t.record(Some(1), ok, deg, || {
                format!("alpha'_1 = {a1p} against {rhs_name} = {rhs} (alpha_1 alpha_2 = {a12})")
            });
        }
        PropertyId::ThmAlphakA | PropertyId::ThmAlphakB | PropertyId::ThmAlphakC => {
            for k in 2..=n - 2 {
                let akp = inv.alpha_prime(k);
                let scaled = dn * inv.alpha(k + 1);
                let deg = degenerate(&[akp, &scaled]);
                let (ok, what) = match id {
                    PropertyId::ThmAlphakA => (
                        divides(akp, &(&g2 * &scaled)),
                        "alpha'_k does not divide g_n^2 d_n alpha_(k+1)",
                    ),
                    PropertyId::ThmAlphakB => (
                        divides(&scaled, &(&g2 * akp)),
                        "d_n alpha_(k+1) does not divide g_n^2 alpha'_k",
                    ),
                    _ => (
                        scaled <= &g2 * akp && *akp <= &g2 * &scaled,
                        "alpha'_k outside the bounds",
                    ),
                };
                t.record(Some(k), ok, deg, || {
                    format!(
                        "k={k}: {what}: alpha'_k = {akp}, d_n alpha_(k+1) = {scaled}, g_n^2 = {g2}"
                    )
                });
            }
        }
        PropertyId::CorGcd1 => {
            if !inv.g_n.is_one() {
                return None;
            }
            let a2 = inv.alpha(2);
            let a1p = inv.alpha_prime(1);
            t.record(Some(1), a1p == a2, false, || {
                format!("k=1: alpha'_1 = {a1p}, alpha_2 = {a2}")
            });
            for k in 2..=n - 2 {
                let akp = inv.alpha_prime(k);
                let want = dn * inv.alpha(k + 1);
                t.record(Some(k), *akp == want, false, || {
                    format!("k={k}: alpha'_k = {akp}, d_n alpha_(k+1) = {want}")
                });
            }
        }
        _ => unreachable!("only operation statements are dispatched here"),
    }
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::laplacian_structure;
    use crate::graph::tests::{ints, nonsimple_graph, simple_graph};
    use crate::verify::Status;

    fn first_structure() -> ArithmeticalStructure {
        ArithmeticalStructure::from_ints(&nonsimple_graph(), &[8, 10, 4, 8], &[1, 3, 5, 2]).unwrap()
    }

    fn second_structure() -> ArithmeticalStructure {
        ArithmeticalStructure::from_ints(&nonsimple_graph(), &[2, 7, 7, 8], &[2, 2, 2, 1]).unwrap()
    }

    fn status(reports: &[PropertyReport], id: PropertyId) -> Status {
        reports.iter().find(|r| r.property == id).unwrap().status
    }

    #[test]
    fn simple_example_at_last_vertex() {
        let g = simple_graph();
        let s =
            ArithmeticalStructure::from_ints(&g, &[3, 3, 1, 4, 2, 2, 3], &[1, 1, 3, 1, 1, 1, 1])
                .unwrap();
        let reports = verify_operation_theorems(&g, &s, 6).unwrap();
        assert!(
            reports.iter().all(|r| r.status == Status::Pass),
            "{reports:#?}"
        );
        let inv = OperationInvariants::compute(&g, &s, 6).unwrap();
        assert_eq!(inv.alpha_prime, ints(&[1, 3, 3, 9, 9]));
        assert_eq!(inv.g_n, BigInt::one());
        assert_eq!(inv.bound_position(), BoundPosition::Coincide);
    }

    #[test]
    fn nonsimple_examples_hit_both_bounds() {
        let g = nonsimple_graph();

        let inv = OperationInvariants::compute(&g, &first_structure(), 3).unwrap();
        assert_eq!(inv.alpha, ints(&[1, 1, 24]));
        assert_eq!(inv.alpha_prime, ints(&[4, 48]));
        assert_eq!(inv.order_bounds(), (BigInt::from(192), BigInt::from(768)));
        assert_eq!(inv.order_prime(), BigInt::from(192));
        assert_eq!(inv.bound_position(), BoundPosition::Lower);

        let inv = OperationInvariants::compute(&g, &second_structure(), 3).unwrap();
        assert_eq!(inv.alpha_prime, ints(&[4, 192]));
        assert_eq!(inv.g_n, BigInt::from(2));
        assert_eq!(inv.order_prime(), BigInt::from(768));
        assert_eq!(inv.bound_position(), BoundPosition::Upper);

        for s in [first_structure(), second_structure()] {
            let reports = verify_operation_theorems(&g, &s, 3).unwrap();
            for r in &reports {
                let want = if r.property == PropertyId::CorGcd1 {
                    Status::NotApplicable
                } else {
                    Status::Pass
                };
                assert_eq!(r.status, want, "{r}");
            }
            assert_eq!(
                check_conjecture_alpha(&g, &s, 3).unwrap().status,
                Status::Pass
            );
        }
    }

    #[test]
    fn alpha_k_range_empty_below_four_vertices() {
        let g = Multigraph::cycle(3).unwrap();
        let s = laplacian_structure(&g);
        let reports = verify_operation_theorems(&g, &s, 0).unwrap();
        assert_eq!(
            status(&reports, PropertyId::ThmAlphakA),
            Status::NotApplicable
        );
        assert_eq!(status(&reports, PropertyId::ThmDklA), Status::Pass);
        assert_eq!(status(&reports, PropertyId::CorGcd1), Status::Pass);
    }

    #[test]
    fn small_graphs_are_not_applicable() {
        let g = Multigraph::path(2).unwrap();
        let s = laplacian_structure(&g);
        let reports = verify_operation_theorems(&g, &s, 1).unwrap();
        assert!(reports.iter().all(|r| r.status == Status::NotApplicable));
        assert_eq!(
            check_conjecture_alpha(&g, &s, 0).unwrap().status,
            Status::NotApplicable
        );

        let one = Multigraph::from_matrix(vec![vec![0]]).unwrap();
        let s = laplacian_structure(&one);
        assert!(verify_operation_theorems(&one, &s, 0).is_ok());
    }

    #[test]
    fn invalid_input_errors() {
        let g = nonsimple_graph();
        assert!(matches!(
            verify_operation_theorems(&g, &first_structure(), 4),
            Err(VerifyError::Graph(GraphError::VertexOutOfRange { .. }))
        ));
        let bad =
            ArithmeticalStructure::from_parts_unchecked(ints(&[8, 10, 4, 9]), ints(&[1, 3, 5, 2]));
        assert!(matches!(
            check_conjecture_alpha(&g, &bad, 3),
            Err(VerifyError::Graph(GraphError::InvalidStructure(_)))
        ));
    }

    #[test]
    fn every_vertex_of_the_examples() {
        let g = simple_graph();
        let s =
            ArithmeticalStructure::from_ints(&g, &[3, 3, 1, 4, 2, 2, 3], &[1, 1, 3, 1, 1, 1, 1])
                .unwrap();
        for v in 0..g.n() {
            for r in verify_operation_theorems(&g, &s, v).unwrap() {
                assert_ne!(r.status, Status::Fail, "v{}: {r}", v + 1);
            }
        }
        for s in [first_structure(), second_structure()] {
            for v in 0..4 {
                for r in verify_operation_theorems(&nonsimple_graph(), &s, v).unwrap() {
                    assert_ne!(r.status, Status::Fail, "v{}: {r}", v + 1);
                }
            }
        }
    }
}
