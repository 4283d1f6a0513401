//! Executable divisibility statements.
//!
//! Every check returns a [`PropertyReport`]. A failing report always carries
//! a [`Witness`] that reproduces the failure through [`recheck`]. The two
//! conjectures are checked the same way; their failures are counterexample
//! candidates rather than bugs.

mod fuzz;
mod minors;
mod operation;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ArithmeticalStructure, GraphError, Multigraph};
use crate::linalg::{IntegerMatrix, LinalgError};

pub use fuzz::{
    case_seed, fuzz_campaign, random_matrix, random_structure_case, run_campaign, shrink_matrix,
    AlphaConjectureSuite, Counts, FuzzConfig, FuzzSummary, MatrixGenerator, MatrixSuite,
    MinorConjectureSuite, OperationTheoremSuite, ProvenMinorSuite, StructureCase, StructureSource,
    StructureSuite, Target,
};
pub use minors::{check_conjecture_minors, check_minor_property, verify_minor_properties};
pub use operation::{
    check_conjecture_alpha, verify_operation_theorems, BoundPosition, OperationInvariants,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{what} needs min(rows, cols) >= {min}, got {found}")]
    TooSmall {
        what: &'static str,
        min: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PropertyId {
    MinorfactsA,
    MinorfactsB,
    MinorfactsC,
    MinorfactsD,
    MinorfactsE,
    DkstarChain,
    GnBound,
    D1d2star,
    Chio,
    Desnanot,
    ThmDklA,
    ThmDklB,
    ThmDklC,
    ThmDklD,
    CorOrderA,
    CorOrderB,
    CorOrderC,
    PropAlpha1A,
    PropAlpha1B,
    PropAlpha1C,
    PropAlpha1D,
    PropAlpha1E,
    ThmAlphakA,
    ThmAlphakB,
    ThmAlphakC,
    CorGcd1,
    ConjAlpha,
    ConjMinors,
    /// Harness self-test property; never produced by the library checks.
    Injected,
}

impl PropertyId {
    pub const MATRIX: [PropertyId; 10] = [
        PropertyId::MinorfactsA,
        PropertyId::MinorfactsB,
        PropertyId::MinorfactsC,
        PropertyId::MinorfactsD,
        PropertyId::MinorfactsE,
        PropertyId::DkstarChain,
        PropertyId::GnBound,
        PropertyId::D1d2star,
        PropertyId::Chio,
        PropertyId::Desnanot,
    ];

    pub const OPERATION: [PropertyId; 16] = [
        PropertyId::ThmDklA,
        PropertyId::ThmDklB,
        PropertyId::ThmDklC,
        PropertyId::ThmDklD,
        PropertyId::CorOrderA,
        PropertyId::CorOrderB,
        PropertyId::CorOrderC,
        PropertyId::PropAlpha1A,
        PropertyId::PropAlpha1B,
        PropertyId::PropAlpha1C,
        PropertyId::PropAlpha1D,
        PropertyId::PropAlpha1E,
        PropertyId::ThmAlphakA,
        PropertyId::ThmAlphakB,
        PropertyId::ThmAlphakC,
        PropertyId::CorGcd1,
    ];

    pub fn is_conjecture(self) -> bool {
        matches!(self, PropertyId::ConjAlpha | PropertyId::ConjMinors)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyId::MinorfactsA => "MINORFACTS_A",
            PropertyId::MinorfactsB => "MINORFACTS_B",
            PropertyId::MinorfactsC => "MINORFACTS_C",
            PropertyId::MinorfactsD => "MINORFACTS_D",
            PropertyId::MinorfactsE => "MINORFACTS_E",
            PropertyId::DkstarChain => "DKSTAR_CHAIN",
            PropertyId::GnBound => "GN_BOUND",
            PropertyId::D1d2star => "D1D2STAR",
            PropertyId::Chio => "CHIO",
            PropertyId::Desnanot => "DESNANOT",
            PropertyId::ThmDklA => "THM_DKL_A",
            PropertyId::ThmDklB => "THM_DKL_B",
            PropertyId::ThmDklC => "THM_DKL_C",
            PropertyId::ThmDklD => "THM_DKL_D",
            PropertyId::CorOrderA => "COR_ORDER_A",
            PropertyId::CorOrderB => "COR_ORDER_B",
            PropertyId::CorOrderC => "COR_ORDER_C",
            PropertyId::PropAlpha1A => "PROP_ALPHA1_A",
            PropertyId::PropAlpha1B => "PROP_ALPHA1_B",
            PropertyId::PropAlpha1C => "PROP_ALPHA1_C",
            PropertyId::PropAlpha1D => "PROP_ALPHA1_D",
            PropertyId::PropAlpha1E => "PROP_ALPHA1_E",
            PropertyId::ThmAlphakA => "THM_ALPHAK_A",
            PropertyId::ThmAlphakB => "THM_ALPHAK_B",
            PropertyId::ThmAlphakC => "THM_ALPHAK_C",
            PropertyId::CorGcd1 => "COR_GCD1",
            PropertyId::ConjAlpha => "CONJ_ALPHA",
            PropertyId::ConjMinors => "CONJ_MINORS",
            PropertyId::Injected => "INJECTED",
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N/A",
        })
    }
}

/// The input a failing check ran on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessInput {
    Matrix(IntegerMatrix),
    Operation {
        graph: Multigraph,
        structure: ArithmeticalStructure,
        /// 0-based vertex the operation was applied at.
        vertex: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub property: PropertyId,
    pub input: WitnessInput,
    /// The first `k` at which the statement failed, when it is indexed by `k`.
    pub k: Option<usize>,
    /// Named invariants of the input (`D`, `D_star`, `alpha`, ...).
    pub values: BTreeMap<String, Vec<BigInt>>,
    /// Fuzz case index that produced the witness.
    pub case: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: PropertyId,
    pub status: Status,
    /// Some `D` value entering the statement was 0.
    pub degenerate: bool,
    pub detail: Option<String>,
    pub witness: Option<Witness>,
}

impl PropertyReport {
    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    pub(crate) fn not_applicable(property: PropertyId, why: &str) -> Self {
        Self {
            property,
            status: Status::NotApplicable,
            degenerate: false,
            detail: Some(why.to_string()),
            witness: None,
        }
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<14} {}", self.property, self.status)?;
        if self.degenerate {
            write!(f, " (degenerate)")?;
        }
        if let Some(detail) = &self.detail {
            write!(f, ": {detail}")?;
        }
        Ok(())
    }
}

/// Re-runs the property named by `w` on its recorded input. `None` for
/// [`PropertyId::Injected`], which has no library implementation.
pub fn recheck(w: &Witness) -> Option<Result<PropertyReport, VerifyError>> {
    if w.property == PropertyId::Injected {
        return None;
    }
    Some(match &w.input {
        WitnessInput::Matrix(m) => {
            if w.property == PropertyId::ConjMinors {
                check_conjecture_minors(m)
            } else {
                Ok(check_minor_property(w.property, m))
            }
        }
        WitnessInput::Operation {
            graph,
            structure,
            vertex,
        } => {
            if w.property == PropertyId::ConjAlpha {
                check_conjecture_alpha(graph, structure, *vertex)
            } else {
                verify_operation_theorems(graph, structure, *vertex).map(|reports| {
                    reports
                        .into_iter()
                        .find(|r| r.property == w.property)
                        .expect("every operation property is reported")
                })
            }
        }
    })
}

/// Accumulates the outcome of one statement over its `k` range.
pub(crate) struct Tally {
    property: PropertyId,
    checked: bool,
    degenerate: bool,
    failure: Option<(Option<usize>, String)>,
}

impl Tally {
    pub(crate) fn new(property: PropertyId) -> Self {
        Self {
            property,
            checked: false,
            degenerate: false,
            failure: None,
        }
    }

    /// Records one instance; only the first failure is kept.
    pub(crate) fn record(
        &mut self,
        k: Option<usize>,
        ok: bool,
        degenerate: bool,
        what: impl FnOnce() -> String,
    ) {
        self.checked = true;
        self.degenerate |= degenerate;
        if !ok && self.failure.is_none() {
            self.failure = Some((k, what()));
        }
    }

    pub(crate) fn finish(
        self,
        input: impl FnOnce() -> WitnessInput,
        values: impl FnOnce() -> BTreeMap<String, Vec<BigInt>>,
    ) -> PropertyReport {
        let (status, detail, witness) = match self.failure {
            Some((k, what)) => {
                let witness = Witness {
                    property: self.property,
                    input: input(),
                    k,
                    values: values(),
                    case: None,
                };
                (Status::Fail, Some(what), Some(witness))
            }
            None if self.checked => (Status::Pass, None, None),
            None => (Status::NotApplicable, Some("empty range".to_string()), None),
        };
        PropertyReport {
            property: self.property,
            status,
            degenerate: self.degenerate,
            detail,
            witness,
        }
    }
}
