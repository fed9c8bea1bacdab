//! JSON reports. Every report carries the schema tag and uses ordered maps
//! only, so identical inputs serialize to identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use strat_euler::moduli_partition::{ReportJson, RowJson};
use strat_euler::stratification::StratumRecord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratifyReport {
    pub schema: String,
    pub ambient: String,
    pub total_dim: usize,
    pub strata: Vec<StratumRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionJson {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub rows: Vec<RowJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoindexReport {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub report: ReportJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeasibilityJson {
    pub schema: String,
    pub n: usize,
    pub k: usize,
    pub oriented: bool,
    pub dims_ok: bool,
    /// `r_H` on the strata where the zero-locus piece can be nonempty.
    #[serde(rename = "r_table")]
    pub r_table: BTreeMap<String, i64>,
    pub cycle_offending: Vec<String>,
    pub report: ReportJson,
    /// Hypotheses the tool does not verify.
    pub assumptions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralJson {
    pub class: String,
    pub degree: usize,
    /// Coefficient of `u^k`, keyed by `k`, as exact rationals.
    pub terms: BTreeMap<i32, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalizeReport {
    pub schema: String,
    pub total_dim: usize,
    pub components: usize,
    pub integrals: Vec<IntegralJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionJson {
    pub alpha: String,
    pub beta: String,
    pub psi: String,
    pub thm2_rhs: String,
    pub matches: bool,
    /// Product formula on every component, per bundle.
    pub product_formula: BTreeMap<String, bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectReport {
    pub schema: String,
    pub pairs: Vec<IntersectionJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetGenerators {
    pub weight: i64,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CovariantsReport {
    pub schema: String,
    pub group: String,
    pub weights: Vec<i64>,
    pub bound: u32,
    pub invariants: Vec<String>,
    pub targets: Vec<TargetGenerators>,
    pub generator_count: usize,
    pub ambient_dim: usize,
    pub defining_equation_rank: usize,
    pub saturated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckReport {
    pub schema: String,
    pub checks: BTreeMap<String, String>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
