//! Bounded enumeration of arithmetical structures.
//!
//! The search returns every structure whose `r` entries all lie in
//! `1..=r_max`. It is complete only relative to that bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{ArithmeticalStructure, Multigraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("r_max must be at least 1")]
    ZeroBound,
    #[error("no structure with r entries at most {r_max}")]
    Empty { r_max: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationQuery {
    pub graph: Multigraph,
    r_max: u64,
}

impl EnumerationQuery {
    pub fn new(graph: Multigraph, r_max: u64) -> Result<Self, EnumerationError> {
        if r_max == 0 {
            return Err(EnumerationError::ZeroBound);
        }
        Ok(Self { graph, r_max })
    }

    pub fn r_max(&self) -> u64 {
        self.r_max
    }
}

/// All structures with `1 <= r_i <= r_max`, sorted lexicographically by `r`.
pub fn enumerate_structures(q: &EnumerationQuery) -> Vec<ArithmeticalStructure> {
    let g = &q.graph;
    let n = g.n();
    // vertex i's divisibility condition can be tested once i and all its
    // neighbours are assigned
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let depth = (0..n)
            .filter(|&j| j == i || !g.multiplicity(i, j).is_zero())
            .max()
            .unwrap_or(i);
        ready[depth].push(i);
    }
    let search = Search {
        g,
        ready,
        r_max: q.r_max,
    };

    let mut found: Vec<ArithmeticalStructure> = (1..=q.r_max)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut r = vec![BigInt::from(first)];
            search.extend(&mut r, &mut out);
            out
        })
        .collect();
    found.sort_by(|a, b| a.r().cmp(b.r()));
    found
}

struct Search<'a> {
    g: &'a Multigraph,
    ready: Vec<Vec<usize>>,
    r_max: u64,
}

impl Search<'_> {
    fn extend(&self, r: &mut Vec<BigInt>, out: &mut Vec<ArithmeticalStructure>) {
        let depth = r.len() - 1;
        if !self.ready[depth].iter().all(|&i| self.balanced(r, i)) {
            return;
        }
        let n = self.g.n();
        if r.len() == n {
            let gcd = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if gcd.is_one() {
                let d = (0..n).map(|i| self.weighted_sum(r, i) / &r[i]).collect();
                out.push(ArithmeticalStructure::from_parts_unchecked(d, r.clone()));
            }
            return;
        }
        for value in 1..=self.r_max {
            r.push(BigInt::from(value));
            self.extend(r, out);
            r.pop();
        }
    }

    fn weighted_sum(&self, r: &[BigInt], i: usize) -> BigInt {
        r.iter()
            .enumerate()
            .map(|(j, rj)| self.g.multiplicity(i, j) * rj)
            .sum()
    }

    fn balanced(&self, r: &[BigInt], i: usize) -> bool {
        self.weighted_sum(r, i).is_multiple_of(&r[i])
    }
}

/// Uniform pick from [`enumerate_structures`], deterministic per seed.
pub fn sample_structure(
    q: &EnumerationQuery,
    seed: u64,
) -> Result<ArithmeticalStructure, EnumerationError> {
    let all = enumerate_structures(q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    all.choose(&mut rng)
        .cloned()
        .ok_or(EnumerationError::Empty { r_max: q.r_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::ints;
    use crate::graph::{laplacian_structure, validate_structure};
    use std::collections::HashSet;

    fn query(g: Multigraph, r_max: u64) -> EnumerationQuery {
        EnumerationQuery::new(g, r_max).unwrap()
    }

    /// Unpruned product over `[1, r_max]^n`.
    fn brute_force(g: &Multigraph, r_max: u64) -> Vec<ArithmeticalStructure> {
        let n = g.n();
        let mut out = Vec::new();
        let total = (r_max as usize).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut r = vec![BigInt::zero(); n];
            for slot in r.iter_mut().rev() {
                *slot = BigInt::from(c as u64 % r_max + 1);
                c /= r_max as usize;
            }
            let sums: Vec<BigInt> = (0..n)
                .map(|i| (0..n).map(|j| g.multiplicity(i, j) * &r[j]).sum())
                .collect();
            if (0..n).all(|i| sums[i].is_multiple_of(&r[i])) {
                let d: Vec<BigInt> = (0..n).map(|i| &sums[i] / &r[i]).collect();
                if validate_structure(g, &d, &r).is_ok() {
                    out.push(ArithmeticalStructure::from_parts_unchecked(d, r));
                }
            }
        }
        out
    }

    #[test]
    fn single_vertex() {
        let g = Multigraph::from_matrix(vec![vec![0]]).unwrap();
        let all = enumerate_structures(&query(g, 5));
        assert_eq!(all.len(), 1);
        assert_eq!((all[0].d(), all[0].r()), (&ints(&[0])[..], &ints(&[1])[..]));
    }

    #[test]
    fn path_three() {
        let all = enumerate_structures(&query(Multigraph::path(3).unwrap(), 3));
        assert_eq!(all.len(), 2);
        assert_eq!(
            (all[0].d(), all[0].r()),
            (&ints(&[1, 2, 1])[..], &ints(&[1, 1, 1])[..])
        );
        assert_eq!(
            (all[1].d(), all[1].r()),
            (&ints(&[2, 1, 2])[..], &ints(&[1, 2, 1])[..])
        );
    }

    #[test]
    fn triangle_matches_brute_force() {
        let g = Multigraph::cycle(3).unwrap();
        let all = enumerate_structures(&query(g.clone(), 6));
        assert_eq!(all.len(), 10);
        assert_eq!(all, brute_force(&g, 6));
    }

    #[test]
    fn multigraph_matches_brute_force() {
        let g = crate::graph::tests::nonsimple_graph();
        let all = enumerate_structures(&query(g.clone(), 6));
        assert_eq!(all, brute_force(&g, 6));
        for s in &all {
            assert!(validate_structure(&g, s.d(), s.r()).is_ok());
        }
        assert!(all.contains(&laplacian_structure(&g)));
    }

    #[test]
    fn monotone_in_bound() {
        let g = Multigraph::cycle(4).unwrap();
        let small: HashSet<_> = enumerate_structures(&query(g.clone(), 3))
            .into_iter()
            .collect();
        let large: HashSet<_> = enumerate_structures(&query(g, 6)).into_iter().collect();
        assert!(small.is_subset(&large));
    }

    #[test]
    fn zero_bound_rejected() {
        assert_eq!(
            EnumerationQuery::new(Multigraph::path(2).unwrap(), 0),
            Err(EnumerationError::ZeroBound)
        );
    }

    #[test]
    fn sampling() {
        let one = query(Multigraph::from_matrix(vec![vec![0]]).unwrap(), 3);
        for seed in 0..5 {
            assert_eq!(sample_structure(&one, seed).unwrap().r(), ints(&[1]));
        }
        let p3 = query(Multigraph::path(3).unwrap(), 3);
        assert_eq!(
            sample_structure(&p3, 42).unwrap(),
            sample_structure(&p3, 42).unwrap()
        );
        let seen: HashSet<_> = (0..64).map(|s| sample_structure(&p3, s).unwrap()).collect();
        assert_eq!(seen.len(), 2);
    }
}
