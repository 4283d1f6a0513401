//! Multigraphs, arithmetical structures and the Keyes-Reiter operation.
//!
//! A structure `(d, r)` on a loopless connected multigraph satisfies
//! `d_i r_i = sum_j delta_ij r_j` at every vertex with `gcd(r) = 1`. The
//! matrix `L = diag(d) - A` then has rank `n - 1`, and the torsion part of
//! its cokernel is the critical group.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{chio_condense, smith_normal_form, IntegerMatrix, LinalgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    NoVertices,
    #[error("multiplicity matrix is not square")]
    NotSquare,
    #[error("loop at vertex v{}", .vertex + 1)]
    Loop { vertex: usize },
    #[error("multiplicities of (v{}, v{}) are not symmetric", .i + 1, .j + 1)]
    Asymmetric { i: usize, j: usize },
    #[error("negative multiplicity between v{} and v{}", .i + 1, .j + 1)]
    NegativeMultiplicity { i: usize, j: usize },
    #[error("graph is disconnected: v{} is unreachable from v1", .unreached + 1)]
    Disconnected { unreached: usize },
    #[error("vertex v{} out of range for a graph on {n} vertices", .vertex + 1)]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("operation needs at least {min} vertices, graph has {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("invalid arithmetical structure: {0}")]
    InvalidStructure(#[from] StructureViolation),
    #[error("L has rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("operation at v{} produced a disconnected graph (v{} unreachable)", .vertex + 1, .unreached + 1)]
    OperationDisconnected { vertex: usize, unreached: usize },
    #[error("L' built from the graph differs from the Chio condensation of L at v{}", .vertex + 1)]
    ConsistencyFailure { vertex: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Why a pair `(d, r)` fails to be an arithmetical structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureViolation {
    #[error("expected vectors of length {expected}, got d: {d}, r: {r}")]
    LengthMismatch { expected: usize, d: usize, r: usize },
    #[error("d is negative at vertex v{}", .vertex + 1)]
    NegativeD { vertex: usize },
    #[error("r is not positive at vertex v{}", .vertex + 1)]
    NonPositiveR { vertex: usize },
    #[error("vertex v{}: d*r = {lhs} but the weighted neighbour sum is {rhs}", .vertex + 1)]
    Unbalanced {
        vertex: usize,
        lhs: BigInt,
        rhs: BigInt,
    },
    #[error("entries of r have gcd {gcd}, expected 1")]
    GcdNotOne { gcd: BigInt },
}

/// Loopless, connected, undirected multigraph stored as its symmetric
/// multiplicity matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    mult: Vec<BigInt>,
}

impl Multigraph {
    pub fn from_matrix<T, R>(rows: impl IntoIterator<Item = R>) -> Result<Self, GraphError>
    where
        T: Into<BigInt>,
        R: IntoIterator<Item = T>,
    {
        let rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(Into::into).collect())
            .collect();
        let n = rows.len();
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(GraphError::NotSquare);
        }
        let g = Self {
            n,
            mult: rows.into_iter().flatten().collect(),
        };
        g.validate()?;
        Ok(g)
    }

    /// Builds a graph from `(i, j, multiplicity)` triples with 0-based
    /// endpoints; repeated pairs accumulate.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        let mut mult = vec![BigInt::zero(); n * n];
        for (i, j, m) in edges {
            for v in [i, j] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(GraphError::Loop { vertex: i });
            }
            if m.is_negative() {
                return Err(GraphError::NegativeMultiplicity { i, j });
            }
            mult[i * n + j] += &m;
            mult[j * n + i] += m;
        }
        let g = Self { n, mult };
        g.validate()?;
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i, BigInt::one())))
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::TooFewVertices { n, min: 3 });
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, BigInt::one())))
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j, BigInt::one())));
        Self::from_edges(n, edges)
    }

    fn validate(&self) -> Result<(), GraphError> {
        let n = self.n;
        for i in 0..n {
            if !self.multiplicity(i, i).is_zero() {
                return Err(GraphError::Loop { vertex: i });
            }
            for j in 0..n {
                if self.multiplicity(i, j).is_negative() {
                    return Err(GraphError::NegativeMultiplicity { i, j });
                }
                if self.multiplicity(i, j) != self.multiplicity(j, i) {
                    return Err(GraphError::Asymmetric { i, j });
                }
            }
        }
        match self.first_unreachable() {
            Some(unreached) => Err(GraphError::Disconnected { unreached }),
            None => Ok(()),
        }
    }

    fn first_unreachable(&self) -> Option<usize> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for (w, reached) in seen.iter_mut().enumerate() {
                if !*reached && !self.multiplicity(u, w).is_zero() {
                    *reached = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().position(|s| !s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> &BigInt {
        &self.mult[i * self.n + j]
    }

    /// Degree counted with multiplicity.
    pub fn degree(&self, i: usize) -> BigInt {
        self.mult[i * self.n..(i + 1) * self.n].iter().sum()
    }

    /// `(i, j, multiplicity)` with `i < j` for every adjacent pair.
    pub fn edges(&self) -> Vec<(usize, usize, BigInt)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.multiplicity(i, j).is_zero())
            .map(|(i, j)| (i, j, self.multiplicity(i, j).clone()))
            .collect()
    }

    pub fn adjacency_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::new(self.n, self.n, self.mult.clone()).expect("n >= 1")
    }

    /// Relabels so that `v` becomes the last vertex; the others keep their
    /// relative order.
    pub fn move_vertex_last(&self, v: usize) -> Result<Self, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let order = last_order(self.n, v);
        let mult = order
            .iter()
            .flat_map(|&i| order.iter().map(move |&j| self.multiplicity(i, j).clone()))
            .collect();
        Ok(Self { n: self.n, mult })
    }
}

fn last_order(n: usize, v: usize) -> Vec<usize> {
    (0..n)
        .filter(|&i| i != v)
        .chain(std::iter::once(v))
        .collect()
}

/// A validated pair `(d, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArithmeticalStructure {
    d: Vec<BigInt>,
    r: Vec<BigInt>,
}

impl ArithmeticalStructure {
    pub fn new(g: &Multigraph, d: Vec<BigInt>, r: Vec<BigInt>) -> Result<Self, StructureViolation> {
        validate_structure(g, &d, &r)?;
        Ok(Self { d, r })
    }

    pub fn from_ints(g: &Multigraph, d: &[i64], r: &[i64]) -> Result<Self, StructureViolation> {
        Self::new(
            g,
            d.iter().map(|&x| BigInt::from(x)).collect(),
            r.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub(crate) fn from_parts_unchecked(d: Vec<BigInt>, r: Vec<BigInt>) -> Self {
        Self { d, r }
    }

    pub fn d(&self) -> &[BigInt] {
        &self.d
    }

    pub fn r(&self) -> &[BigInt] {
        &self.r
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    fn move_vertex_last(&self, v: usize) -> Self {
        let order = last_order(self.len(), v);
        Self {
            d: order.iter().map(|&i| self.d[i].clone()).collect(),
            r: order.iter().map(|&i| self.r[i].clone()).collect(),
        }
    }
}

/// Checks `(diag(d) - A) r = 0`, positivity of `r`, nonnegativity of `d`
/// and `gcd(r) = 1`, reporting the first failure.
pub fn validate_structure(
    g: &Multigraph,
    d: &[BigInt],
    r: &[BigInt],
) -> Result<(), StructureViolation> {
    let n = g.n();
    if d.len() != n || r.len() != n {
        return Err(StructureViolation::LengthMismatch {
            expected: n,
            d: d.len(),
            r: r.len(),
        });
    }
    if let Some(vertex) = r.iter().position(|x| !x.is_positive()) {
        return Err(StructureViolation::NonPositiveR { vertex });
    }
    if let Some(vertex) = d.iter().position(|x| x.is_negative()) {
        return Err(StructureViolation::NegativeD { vertex });
    }
    for i in 0..n {
        let lhs = &d[i] * &r[i];
        let rhs: BigInt = (0..n).map(|j| g.multiplicity(i, j) * &r[j]).sum();
        if lhs != rhs {
            return Err(StructureViolation::Unbalanced {
                vertex: i,
                lhs,
                rhs,
            });
        }
    }
    let gcd = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !gcd.is_one() {
        return Err(StructureViolation::GcdNotOne { gcd });
    }
    Ok(())
}

/// Degrees with multiplicity and `r = (1, ..., 1)`.
pub fn laplacian_structure(g: &Multigraph) -> ArithmeticalStructure {
    ArithmeticalStructure {
        d: (0..g.n()).map(|i| g.degree(i)).collect(),
        r: vec![BigInt::one(); g.n()],
    }
}

/// `L = diag(d) - A`.
pub fn matrix_l(g: &Multigraph, s: &ArithmeticalStructure) -> Result<IntegerMatrix, GraphError> {
    validate_structure(g, s.d(), s.r())?;
    let n = g.n();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(if i == j {
                s.d[i].clone()
            } else {
                -g.multiplicity(i, j)
            });
        }
    }
    Ok(IntegerMatrix::new(n, n, data)?)
}

/// Invariant factors `alpha_1 | ... | alpha_{n-1}` of a critical group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CriticalGroup {
    pub invariant_factors: Vec<BigInt>,
}

impl CriticalGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.iter().all(One::is_one)
    }
}

impl fmt::Display for CriticalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .filter(|a| !a.is_one())
            .map(|a| format!("Z/{a}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

pub fn critical_group(
    g: &Multigraph,
    s: &ArithmeticalStructure,
) -> Result<CriticalGroup, GraphError> {
    let l = matrix_l(g, s)?;
    let snf = smith_normal_form(&l);
    let expected = g.n() - 1;
    if snf.rank != expected {
        return Err(GraphError::RankMismatch {
            expected,
            found: snf.rank,
        });
    }
    Ok(CriticalGroup {
        invariant_factors: snf.invariant_factors().to_vec(),
    })
}

/// Result of the operation at one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperationOutcome {
    pub graph: Multigraph,
    pub structure: ArithmeticalStructure,
    /// The removed vertex, 0-based in the input labeling.
    pub vertex: usize,
    /// `d` at the removed vertex.
    pub d_removed: BigInt,
    /// gcd of the surviving entries of `r`, divided out of `r'`.
    pub r_divisor: BigInt,
}

/// The Keyes-Reiter generalized star-clique operation at vertex `v`.
///
/// With `v` relabeled last (`n`): `delta'_ij = delta_ij d_n + delta_in delta_nj`,
/// `d'_i = d_i d_n - delta_in^2` and `r'_i = r_i / gcd(r_1, ..., r_{n-1})`.
/// The output keeps the input order of the surviving vertices.
pub fn keyes_reiter_operation(
    g: &Multigraph,
    s: &ArithmeticalStructure,
    v: usize,
) -> Result<OperationOutcome, GraphError> {
    let n = g.n();
    if n < 2 {
        return Err(GraphError::TooFewVertices { n, min: 2 });
    }
    if v >= n {
        return Err(GraphError::VertexOutOfRange { vertex: v, n });
    }
    validate_structure(g, s.d(), s.r())?;
    let g = g.move_vertex_last(v)?;
    let s = s.move_vertex_last(v);
    let last = n - 1;
    let dn = &s.d[last];

    let mut mult = Vec::with_capacity(last * last);
    for i in 0..last {
        for j in 0..last {
            mult.push(if i == j {
                BigInt::zero()
            } else {
                g.multiplicity(i, j) * dn + g.multiplicity(i, last) * g.multiplicity(last, j)
            });
        }
    }
    let graph = Multigraph { n: last, mult };
    if let Some(unreached) = graph.first_unreachable() {
        return Err(GraphError::OperationDisconnected {
            vertex: v,
            unreached,
        });
    }

    let d: Vec<BigInt> = (0..last)
        .map(|i| &s.d[i] * dn - g.multiplicity(i, last) * g.multiplicity(last, i))
        .collect();
    let r_divisor = s.r[..last].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let r: Vec<BigInt> = s.r[..last].iter().map(|x| x / &r_divisor).collect();
    validate_structure(&graph, &d, &r)?;

    Ok(OperationOutcome {
        structure: ArithmeticalStructure { d, r },
        graph,
        vertex: v,
        d_removed: dn.clone(),
        r_divisor,
    })
}

/// Checks that `L'` of the operation's output equals the Chio condensation
/// of `L` with `v` moved last.
pub fn operation_matrix_consistency(
    g: &Multigraph,
    s: &ArithmeticalStructure,
    v: usize,
) -> Result<(), GraphError> {
    let out = keyes_reiter_operation(g, s, v)?;
    let condensed = chio_condense(&matrix_l(g, s)?.move_index_last(v)?)?;
    if matrix_l(&out.graph, &out.structure)? == condensed {
        Ok(())
    } else {
        Err(GraphError::ConsistencyFailure { vertex: v })
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn edges(n: usize, e: &[(usize, usize, i64)]) -> Multigraph {
        Multigraph::from_edges(
            n,
            e.iter().map(|&(i, j, m)| (i - 1, j - 1, BigInt::from(m))),
        )
        .unwrap()
    }

    pub(crate) fn simple_graph() -> Multigraph {
        edges(
            7,
            &[
                (1, 3, 1),
                (2, 3, 1),
                (3, 4, 1),
                (4, 7, 1),
                (5, 7, 1),
                (6, 7, 1),
                (5, 6, 1),
            ],
        )
    }

    pub(crate) fn nonsimple_graph() -> Multigraph {
        edges(4, &[(1, 2, 1), (1, 3, 1), (2, 3, 5), (2, 4, 2), (3, 4, 2)])
    }

    fn simple() -> (Multigraph, ArithmeticalStructure) {
        let g = simple_graph();
        let s =
            ArithmeticalStructure::from_ints(&g, &[3, 3, 1, 4, 2, 2, 3], &[1, 1, 3, 1, 1, 1, 1])
                .unwrap();
        (g, s)
    }

    fn nonsimple(first: bool) -> (Multigraph, ArithmeticalStructure) {
        let g = nonsimple_graph();
        let s = if first {
            ArithmeticalStructure::from_ints(&g, &[8, 10, 4, 8], &[1, 3, 5, 2])
        } else {
            ArithmeticalStructure::from_ints(&g, &[2, 7, 7, 8], &[2, 2, 2, 1])
        };
        (g, s.unwrap())
    }

    #[test]
    fn graph_validation() {
        assert_eq!(
            Multigraph::from_matrix(vec![vec![0, 1], vec![2, 0]]),
            Err(GraphError::Asymmetric { i: 0, j: 1 })
        );
        assert_eq!(
            Multigraph::from_matrix(vec![vec![1, 1], vec![1, 0]]),
            Err(GraphError::Loop { vertex: 0 })
        );
        assert_eq!(
            Multigraph::from_matrix(vec![vec![0, 0], vec![0, 0]]),
            Err(GraphError::Disconnected { unreached: 1 })
        );
        assert!(Multigraph::from_matrix(vec![vec![0]]).is_ok());
        assert_eq!(
            Multigraph::from_edges(3, [(0, 0, BigInt::one())]),
            Err(GraphError::Loop { vertex: 0 })
        );
        // duplicate pairs accumulate
        let g =
            Multigraph::from_edges(2, [(0, 1, BigInt::one()), (1, 0, BigInt::from(2))]).unwrap();
        assert_eq!(g.multiplicity(0, 1), &BigInt::from(3));
    }

    #[test]
    fn validate_structure_examples() {
        let (g, s) = simple();
        assert_eq!(validate_structure(&g, s.d(), s.r()), Ok(()));
        let scaled = ints(&[2, 2, 6, 2, 2, 2, 2]);
        assert_eq!(
            validate_structure(&g, s.d(), &scaled),
            Err(StructureViolation::GcdNotOne { gcd: 2.into() })
        );
        let p3 = Multigraph::path(3).unwrap();
        assert_eq!(
            validate_structure(&p3, &ints(&[1, 1, 1]), &ints(&[1, 1, 1])),
            Err(StructureViolation::Unbalanced {
                vertex: 1,
                lhs: 1.into(),
                rhs: 2.into()
            })
        );
        assert!(matches!(
            validate_structure(&p3, &ints(&[1, 2]), &ints(&[1, 1, 1])),
            Err(StructureViolation::LengthMismatch { expected: 3, .. })
        ));
        assert_eq!(
            validate_structure(&p3, &ints(&[1, 2, 1]), &ints(&[1, 0, 1])),
            Err(StructureViolation::NonPositiveR { vertex: 1 })
        );
    }

    #[test]
    fn laplacian_examples() {
        let tri = Multigraph::complete(3).unwrap();
        let s = laplacian_structure(&tri);
        assert_eq!(s.d(), ints(&[2, 2, 2]));
        assert_eq!(s.r(), ints(&[1, 1, 1]));

        let one = Multigraph::from_matrix(vec![vec![0]]).unwrap();
        let s = laplacian_structure(&one);
        assert_eq!((s.d(), s.r()), (&ints(&[0])[..], &ints(&[1])[..]));

        let s = laplacian_structure(&nonsimple_graph());
        assert_eq!(s.d(), ints(&[2, 8, 8, 4]));
        assert!(validate_structure(&nonsimple_graph(), s.d(), s.r()).is_ok());
    }

    #[test]
    fn matrix_l_examples() {
        let (g, s) = nonsimple(true);
        let want = IntegerMatrix::from_rows(vec![
            vec![8, -1, -1, 0],
            vec![-1, 10, -5, -2],
            vec![-1, -5, 4, -2],
            vec![0, -2, -2, 8],
        ])
        .unwrap();
        assert_eq!(matrix_l(&g, &s).unwrap(), want);

        let (g, s) = simple();
        let l = matrix_l(&g, &s).unwrap();
        assert!(l.is_symmetric());
        assert_eq!(
            (0..7).map(|i| l.get(i, i).clone()).collect::<Vec<_>>(),
            ints(&[3, 3, 1, 4, 2, 2, 3])
        );
        assert_eq!(l.row(3), &ints(&[0, 0, -1, 4, 0, 0, -1])[..]);
        let r = IntegerMatrix::new(7, 1, s.r().to_vec()).unwrap();
        assert!(l.mul(&r).unwrap().entries().iter().all(Zero::is_zero));

        let one = Multigraph::from_matrix(vec![vec![0]]).unwrap();
        let l = matrix_l(&one, &laplacian_structure(&one)).unwrap();
        assert_eq!(l, IntegerMatrix::zeros(1, 1).unwrap());
    }

    #[test]
    fn critical_group_examples() {
        let (g, s) = simple();
        let k = critical_group(&g, &s).unwrap();
        assert_eq!(k.invariant_factors, ints(&[1, 1, 1, 1, 3, 3]));
        assert_eq!(k.to_string(), "Z/3 ⊕ Z/3");
        for first in [true, false] {
            let (g, s) = nonsimple(first);
            let k = critical_group(&g, &s).unwrap();
            assert_eq!(k.invariant_factors, ints(&[1, 1, 24]));
            assert_eq!(k.to_string(), "Z/24");
        }
        let one = Multigraph::from_matrix(vec![vec![0]]).unwrap();
        let k = critical_group(&one, &laplacian_structure(&one)).unwrap();
        assert!(k.invariant_factors.is_empty());
        assert_eq!(k.order(), BigInt::one());
        assert_eq!(k.to_string(), "0");
    }

    #[test]
    fn operation_on_simple_example() {
        let (g, s) = simple();
        let out = keyes_reiter_operation(&g, &s, 6).unwrap();
        assert_eq!(out.structure.d(), ints(&[9, 9, 3, 11, 5, 5]));
        assert_eq!(out.structure.r(), ints(&[1, 1, 3, 1, 1, 1]));
        assert_eq!(out.graph.multiplicity(4, 5), &BigInt::from(4));
        assert_eq!(out.graph.multiplicity(0, 2), &BigInt::from(3));
        assert_eq!(out.graph.multiplicity(3, 4), &BigInt::from(1));
        assert_eq!(out.d_removed, BigInt::from(3));
        assert_eq!(out.r_divisor, BigInt::one());
        let k = critical_group(&out.graph, &out.structure).unwrap();
        assert_eq!(k.invariant_factors, ints(&[1, 3, 3, 9, 9]));
    }

    #[test]
    fn operation_on_nonsimple_examples() {
        let (g, s) = nonsimple(true);
        let out = keyes_reiter_operation(&g, &s, 3).unwrap();
        assert_eq!(out.structure.d(), ints(&[64, 76, 28]));
        assert_eq!(out.structure.r(), ints(&[1, 3, 5]));
        assert_eq!(out.graph.multiplicity(1, 2), &BigInt::from(44));
        assert_eq!(out.graph.multiplicity(0, 1), &BigInt::from(8));

        let (g, s) = nonsimple(false);
        let out = keyes_reiter_operation(&g, &s, 3).unwrap();
        assert_eq!(out.structure.d(), ints(&[16, 52, 52]));
        assert_eq!(out.structure.r(), ints(&[1, 1, 1]));
        assert_eq!(out.r_divisor, BigInt::from(2));
    }

    #[test]
    fn operation_on_two_vertices_gives_the_point() {
        let g = Multigraph::from_matrix(vec![vec![0, 3], vec![3, 0]]).unwrap();
        let s = ArithmeticalStructure::from_ints(&g, &[1, 9], &[3, 1]).unwrap();
        let out = keyes_reiter_operation(&g, &s, 1).unwrap();
        assert_eq!(out.graph.n(), 1);
        assert_eq!(out.structure.d(), ints(&[0]));
        assert_eq!(out.structure.r(), ints(&[1]));
    }

    #[test]
    fn operation_errors() {
        let one = Multigraph::from_matrix(vec![vec![0]]).unwrap();
        assert_eq!(
            keyes_reiter_operation(&one, &laplacian_structure(&one), 0),
            Err(GraphError::TooFewVertices { n: 1, min: 2 })
        );
        let (g, s) = simple();
        assert_eq!(
            keyes_reiter_operation(&g, &s, 7),
            Err(GraphError::VertexOutOfRange { vertex: 7, n: 7 })
        );
        let bad = ArithmeticalStructure::from_parts_unchecked(ints(&[1; 7]), ints(&[1; 7]));
        assert!(matches!(
            keyes_reiter_operation(&g, &bad, 0),
            Err(GraphError::InvalidStructure(_))
        ));
    }

    #[test]
    fn operation_matches_chio_everywhere() {
        let (g, s) = simple();
        for v in 0..7 {
            operation_matrix_consistency(&g, &s, v).unwrap();
        }
        for first in [true, false] {
            let (g, s) = nonsimple(first);
            for v in 0..4 {
                operation_matrix_consistency(&g, &s, v).unwrap();
            }
        }
    }

    #[test]
    fn relabeling_matches_explicit_permutation() {
        // operating at v2 equals operating at the last vertex of the graph
        // with v2 moved last by hand
        let (g, s) = nonsimple(true);
        let direct = keyes_reiter_operation(&g, &s, 1).unwrap();
        let moved_g = g.move_vertex_last(1).unwrap();
        let moved_s = s.move_vertex_last(1);
        let via_last = keyes_reiter_operation(&moved_g, &moved_s, 3).unwrap();
        assert_eq!(direct.graph, via_last.graph);
        assert_eq!(direct.structure, via_last.structure);
    }
}
