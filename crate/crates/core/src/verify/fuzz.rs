use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    check_conjecture_alpha, check_conjecture_minors, verify_minor_properties,
    verify_operation_theorems, PropertyId, PropertyReport, Status, VerifyError, Witness,
};
use crate::enumerate::{enumerate_structures, EnumerationQuery};
use crate::graph::{matrix_l, ArithmeticalStructure, Multigraph};
use crate::linalg::IntegerMatrix;

/// What a campaign exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    /// The minors conjecture on random matrices.
    Minors,
    /// The alpha conjecture on random structures.
    Alpha,
    /// Every proven statement: matrix facts on random matrices and operation
    /// statements on random structures.
    Theorems,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixGenerator {
    /// Entries uniform in `[-bound, bound]`.
    Uniform,
    /// Uniform, with the last row and last column scaled by factors in
    /// `2..=max(2, bound)`.
    LastRowGcd,
    /// Square and symmetric, order drawn from the row range.
    Symmetric,
    /// `L` of a random structure from the structure source, with a random
    /// vertex moved last.
    StructureL,
}

impl MatrixGenerator {
    pub const ALL: [MatrixGenerator; 4] = [
        MatrixGenerator::Uniform,
        MatrixGenerator::LastRowGcd,
        MatrixGenerator::Symmetric,
        MatrixGenerator::StructureL,
    ];
}

/// Random connected multigraphs, with structures drawn from the bounded
/// enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureSource {
    pub vertices: RangeInclusive<usize>,
    pub max_multiplicity: u64,
    /// Chance, in percent, that a non-tree pair gets an edge.
    pub extra_edge_percent: u32,
    pub r_max: u64,
}

impl Default for StructureSource {
    fn default() -> Self {
        Self {
            vertices: 3..=5,
            max_multiplicity: 3,
            extra_edge_percent: 30,
            r_max: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzConfig {
    pub seed: u64,
    pub rows: RangeInclusive<usize>,
    pub cols: RangeInclusive<usize>,
    pub entry_bound: i64,
    pub case_count: u64,
    pub generators: Vec<MatrixGenerator>,
    pub structure_source: StructureSource,
    pub targets: Vec<Target>,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            rows: 2..=6,
            cols: 2..=6,
            entry_bound: 9,
            case_count: 100,
            generators: MatrixGenerator::ALL.to_vec(),
            structure_source: StructureSource::default(),
            targets: vec![Target::Theorems, Target::Minors, Target::Alpha],
        }
    }
}

/// One operation instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureCase {
    pub graph: Multigraph,
    pub structure: ArithmeticalStructure,
    pub vertex: usize,
}

pub trait MatrixSuite: Sync {
    fn run(&self, m: &IntegerMatrix) -> Vec<PropertyReport>;

    /// Whether `property` still fails on `m`; drives shrinking.
    fn fails(&self, property: PropertyId, m: &IntegerMatrix) -> bool {
        self.run(m)
            .iter()
            .any(|r| r.property == property && r.is_fail())
    }
}

pub trait StructureSuite: Sync {
    fn run(&self, case: &StructureCase) -> Result<Vec<PropertyReport>, VerifyError>;
}

pub struct ProvenMinorSuite;

impl MatrixSuite for ProvenMinorSuite {
    fn run(&self, m: &IntegerMatrix) -> Vec<PropertyReport> {
        verify_minor_properties(m)
    }
}

pub struct MinorConjectureSuite;

impl MatrixSuite for MinorConjectureSuite {
    fn run(&self, m: &IntegerMatrix) -> Vec<PropertyReport> {
        match check_conjecture_minors(m) {
            Ok(r) => vec![r],
            Err(_) => vec![PropertyReport::not_applicable(
                PropertyId::ConjMinors,
                "needs at least 2 rows and columns",
            )],
        }
    }
}

pub struct OperationTheoremSuite;

impl StructureSuite for OperationTheoremSuite {
    fn run(&self, c: &StructureCase) -> Result<Vec<PropertyReport>, VerifyError> {
        verify_operation_theorems(&c.graph, &c.structure, c.vertex)
    }
}

pub struct AlphaConjectureSuite;

impl StructureSuite for AlphaConjectureSuite {
    fn run(&self, c: &StructureCase) -> Result<Vec<PropertyReport>, VerifyError> {
        check_conjecture_alpha(&c.graph, &c.structure, c.vertex).map(|r| vec![r])
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub pass: u64,
    pub fail: u64,
    pub not_applicable: u64,
    pub degenerate: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzSummary {
    pub seed: u64,
    pub case_count: u64,
    pub counts: BTreeMap<PropertyId, Counts>,
    /// Shrunk failing inputs, in case order.
    pub witnesses: Vec<Witness>,
    /// Cases where a check errored instead of reporting; each is a bug.
    pub errors: Vec<String>,
}

impl FuzzSummary {
    fn failures(&self, conjecture: bool) -> u64 {
        self.counts
            .iter()
            .filter(|(id, _)| id.is_conjecture() == conjecture)
            .map(|(_, c)| c.fail)
            .sum()
    }

    /// Failures of proven statements, including the injected test property.
    pub fn theorem_failures(&self) -> u64 {
        self.failures(false)
    }

    pub fn conjecture_failures(&self) -> u64 {
        self.failures(true)
    }
}

impl fmt::Display for FuzzSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {} cases {}", self.seed, self.case_count)?;
        writeln!(
            f,
            "{:<14} {:>8} {:>6} {:>8} {:>10}",
            "property", "pass", "fail", "n/a", "degenerate"
        )?;
        for (id, c) in &self.counts {
            writeln!(
                f,
                "{:<14} {:>8} {:>6} {:>8} {:>10}",
                id.as_str(),
                c.pass,
                c.fail,
                c.not_applicable,
                c.degenerate
            )?;
        }
        writeln!(f, "theorem failures: {}", self.theorem_failures())?;
        writeln!(f, "conjecture failures: {}", self.conjecture_failures())?;
        write!(f, "errors: {}", self.errors.len())?;
        for e in &self.errors {
            write!(f, "\n  {e}")?;
        }
        Ok(())
    }
}

/// Seed for `(campaign seed, case index, stream)`; independent of execution
/// order, so parallel and serial runs agree.
pub fn case_seed(seed: u64, case: u64, stream: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    mix(seed ^ mix(case.wrapping_mul(2).wrapping_add(stream)))
}

pub fn random_matrix<R: Rng>(gen: MatrixGenerator, cfg: &FuzzConfig, rng: &mut R) -> IntegerMatrix {
    let b = cfg.entry_bound.abs();
    let entry = |rng: &mut R| BigInt::from(rng.gen_range(-b..=b));
    match gen {
        MatrixGenerator::Uniform | MatrixGenerator::LastRowGcd => {
            let rows = rng.gen_range(cfg.rows.clone());
            let cols = rng.gen_range(cfg.cols.clone());
            let data = (0..rows * cols).map(|_| entry(rng)).collect();
            let mut m = IntegerMatrix::new(rows, cols, data).expect("positive dimensions");
            if gen == MatrixGenerator::LastRowGcd {
                let top = b.max(2);
                let (fr, fc) = (rng.gen_range(2..=top), rng.gen_range(2..=top));
                for j in 0..cols {
                    let x = m.get(rows - 1, j) * fr;
                    m.set(rows - 1, j, x);
                }
                for i in 0..rows {
                    let x = m.get(i, cols - 1) * fc;
                    m.set(i, cols - 1, x);
                }
            }
            m
        }
        MatrixGenerator::Symmetric => {
            let n = rng.gen_range(cfg.rows.clone());
            let mut m = IntegerMatrix::zeros(n, n).expect("positive dimensions");
            for i in 0..n {
                for j in i..n {
                    let x = entry(rng);
                    m.set(j, i, x.clone());
                    m.set(i, j, x);
                }
            }
            m
        }
        MatrixGenerator::StructureL => {
            let c = random_structure_case(&cfg.structure_source, rng);
            matrix_l(&c.graph, &c.structure)
                .expect("enumerated structures are valid")
                .move_index_last(c.vertex)
                .expect("vertex in range")
        }
    }
}

/// A random spanning tree plus random extra edges, a structure drawn
/// uniformly from the bounded enumeration, and a uniform vertex.
pub fn random_structure_case<R: Rng>(src: &StructureSource, rng: &mut R) -> StructureCase {
    let n = rng.gen_range(src.vertices.clone()).max(1);
    let top = src.max_multiplicity.max(1);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((j, i, BigInt::from(rng.gen_range(1..=top))));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_range(0..100) < src.extra_edge_percent {
                edges.push((i, j, BigInt::from(rng.gen_range(1..=top))));
            }
        }
    }
    let graph = Multigraph::from_edges(n, edges).expect("connected by construction");
    let query = EnumerationQuery::new(graph.clone(), src.r_max.max(1)).expect("r_max >= 1");
    let structure = enumerate_structures(&query)
        .choose(rng)
        .cloned()
        .expect("the Laplacian structure is always enumerated");
    let vertex = rng.gen_range(0..n);
    StructureCase {
        graph,
        structure,
        vertex,
    }
}

/// Shrinks `m` while `fails` holds: first by deleting rows and columns, then
/// by moving single entries toward 0. Deterministic for a deterministic
/// predicate.
pub fn shrink_matrix(m: &IntegerMatrix, fails: impl Fn(&IntegerMatrix) -> bool) -> IntegerMatrix {
    let mut cur = m.clone();
    'dims: loop {
        for i in 0..cur.rows() {
            if cur.rows() > 1 {
                let cand = cur.without_row(i).expect("in range");
                if fails(&cand) {
                    cur = cand;
                    continue 'dims;
                }
            }
        }
        for j in 0..cur.cols() {
            if cur.cols() > 1 {
                let cand = cur.without_col(j).expect("in range");
                if fails(&cand) {
                    cur = cand;
                    continue 'dims;
                }
            }
        }
        break;
    }
    // every accepted step lowers the sum of absolute values, so this ends
    'entries: loop {
        for i in 0..cur.rows() {
            for j in 0..cur.cols() {
                let x = cur.get(i, j).clone();
                if x.is_zero() {
                    continue;
                }
                let step = if x.is_positive() { &x - 1 } else { &x + 1 };
                let mut tried = Vec::with_capacity(3);
                for value in [BigInt::zero(), &x / 2, step] {
                    if value.abs() >= x.abs() || tried.contains(&value) {
                        continue;
                    }
                    let mut cand = cur.clone();
                    cand.set(i, j, value.clone());
                    if fails(&cand) {
                        cur = cand;
                        continue 'entries;
                    }
                    tried.push(value);
                }
            }
        }
        break;
    }
    cur
}

#[derive(Default)]
struct CaseResult {
    reports: Vec<(PropertyId, Status, bool)>,
    witnesses: Vec<Witness>,
    errors: Vec<String>,
}

/// Runs the built-in suites selected by `cfg.targets`.
pub fn fuzz_campaign(cfg: &FuzzConfig) -> FuzzSummary {
    let mut matrix: Vec<&dyn MatrixSuite> = Vec::new();
    let mut structure: Vec<&dyn StructureSuite> = Vec::new();
    if cfg.targets.contains(&Target::Theorems) {
        matrix.push(&ProvenMinorSuite);
        structure.push(&OperationTheoremSuite);
    }
    if cfg.targets.contains(&Target::Minors) {
        matrix.push(&MinorConjectureSuite);
    }
    if cfg.targets.contains(&Target::Alpha) {
        structure.push(&AlphaConjectureSuite);
    }
    run_campaign(cfg, &matrix, &structure)
}

/// Each case draws one matrix (stream 0) for the matrix suites and one
/// operation instance (stream 1) for the structure suites. Failing matrix
/// inputs are shrunk before being recorded.
pub fn run_campaign(
    cfg: &FuzzConfig,
    matrix_suites: &[&dyn MatrixSuite],
    structure_suites: &[&dyn StructureSuite],
) -> FuzzSummary {
    let generators = if cfg.generators.is_empty() {
        vec![MatrixGenerator::Uniform]
    } else {
        cfg.generators.clone()
    };
    let results: Vec<CaseResult> = (0..cfg.case_count)
        .into_par_iter()
        .map(|case| {
            let mut out = CaseResult::default();
            if !matrix_suites.is_empty() {
                let mut rng = ChaCha8Rng::seed_from_u64(case_seed(cfg.seed, case, 0));
                let gen = *generators.choose(&mut rng).expect("nonempty");
                let m = random_matrix(gen, cfg, &mut rng);
                for suite in matrix_suites {
                    for r in suite.run(&m) {
                        out.reports.push((r.property, r.status, r.degenerate));
                        if r.is_fail() {
                            out.witnesses.push(shrunk_witness(*suite, r, case));
                        }
                    }
                }
            }
            if !structure_suites.is_empty() {
                let mut rng = ChaCha8Rng::seed_from_u64(case_seed(cfg.seed, case, 1));
                let c = random_structure_case(&cfg.structure_source, &mut rng);
                for suite in structure_suites {
                    match suite.run(&c) {
                        Ok(reports) => {
                            for r in reports {
                                out.reports.push((r.property, r.status, r.degenerate));
                                if let Some(mut w) = r.witness {
                                    w.case = Some(case);
                                    out.witnesses.push(w);
                                }
                            }
                        }
                        Err(e) => out.errors.push(format!("case {case}: {e}")),
                    }
                }
            }
            out
        })
        .collect();

    let mut summary = FuzzSummary {
        seed: cfg.seed,
        case_count: cfg.case_count,
        counts: BTreeMap::new(),
        witnesses: Vec::new(),
        errors: Vec::new(),
    };
    for r in results {
        for (id, status, degenerate) in r.reports {
            let c = summary.counts.entry(id).or_default();
            match status {
                Status::Pass => c.pass += 1,
                Status::Fail => c.fail += 1,
                Status::NotApplicable => c.not_applicable += 1,
            }
            c.degenerate += u64::from(degenerate);
        }
        summary.witnesses.extend(r.witnesses);
        summary.errors.extend(r.errors);
    }
    summary
}

fn shrunk_witness(suite: &dyn MatrixSuite, report: PropertyReport, case: u64) -> Witness {
    let property = report.property;
    let original = report.witness.expect("failing reports carry a witness");
    let super::WitnessInput::Matrix(m) = &original.input else {
        return Witness {
            case: Some(case),
            ..original
        };
    };
    let small = shrink_matrix(m, |cand| suite.fails(property, cand));
    let witness = suite
        .run(&small)
        .into_iter()
        .find(|r| r.property == property && r.is_fail())
        .and_then(|r| r.witness)
        .unwrap_or(original);
    Witness {
        case: Some(case),
        ..witness
    }
}
