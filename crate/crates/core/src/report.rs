//! Machine-readable report types shared between the engine and the CLI.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One R-matrix identity check: {identity, N, mode, pass}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub n: u32,
    pub mode: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub n: u32,
    pub mode: String,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// One constituent of a tensor-product decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompEntry {
    pub frame: Vec<i64>,
    pub mult: u64,
    pub dim: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompReport {
    pub n: u32,
    pub left: Vec<i64>,
    pub right: Vec<i64>,
    pub constituents: Vec<DecompEntry>,
    pub total_dim: String,
}

/// Morphism-count bookkeeping for the ansatz size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismCountReport {
    pub n: u32,
    pub per_k_common: Vec<usize>,
    pub raw_total: u64,
    pub after_trace_condition: u64,
}

/// Resolved weight conventions, reported explicitly because the source
/// abbreviates the weighted sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionReport {
    /// Exponent slope of the left weighted sum: weight q^{slope * index}.
    pub sum_l_slope: i64,
    /// Exponent slope of the right weighted sum.
    pub sum_r_slope: i64,
    /// Exponent slope of the delta-term weights in ansatz and relations.
    pub delta_slope: i64,
    /// Exponent slope of the weight inside the invariant one-form H.
    pub h_slope: i64,
    /// The scalar lambda with sum_L_j x_ij x_jk = lambda x_ik in the quotient.
    pub implied_factor: String,
    /// Stable fingerprint of the resolved convention.
    pub fingerprint: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub n: u32,
    pub mode: String,
    pub convention: ConventionReport,
    /// Quotient dimension per degree bound.
    pub quotient_dims: Vec<(u32, u64)>,
    /// Expected dims from the pi(k) tower.
    pub expected_dims: Vec<(u32, u64)>,
    pub implied_relation_in_ideal: bool,
}

/// Result of solving one constraint case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub case: String,
    pub n: u32,
    pub mode: String,
    pub convention: String,
    /// Resolved coefficient values (rendered scalars), or the affine family
    /// in the paper's parameter names when underdetermined.
    pub coefficients: BTreeMap<String, String>,
    pub solution_dim: usize,
    pub free_parameters: Vec<String>,
    /// Per-coefficient agreement with the published values.
    pub paper_match: BTreeMap<String, bool>,
    /// True when the published solution satisfies every collected equation
    /// (meaningful when solution_dim > 0).
    pub paper_contained: bool,
}

impl SolveReport {
    pub fn all_match(&self) -> bool {
        !self.paper_match.is_empty() && self.paper_match.values().all(|b| *b)
    }
}

/// One verified condition instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub condition: String,
    pub instances: usize,
    pub failures: usize,
    /// First failing index tuple, if any.
    pub first_failure: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub calculus: String,
    pub n: u32,
    pub mode: String,
    pub convention: String,
    pub conditions: Vec<ConditionResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.failures == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub n: u32,
    pub mode: String,
    /// (a) substituting H = 0 into the first restricted calculus yields the
    /// second.
    pub h_zero_factorisation: bool,
    /// (b) imposing the first restricted calculus' relations on the free
    /// calculus yields the first restricted calculus.
    pub relation_factorisation: bool,
    /// Control: factorising by the empty relation set changes nothing.
    pub identity_control: bool,
}

impl FactorizationReport {
    pub fn all_pass(&self) -> bool {
        self.h_zero_factorisation && self.relation_factorisation && self.identity_control
    }
}
