//! Serializable report types for the command-line front end. Forms and field
//! elements travel in their textual syntax; maps are ordered so identical
//! inputs serialize byte-identically.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieReport {
    pub dimension: u8,
    pub d_squared_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_squared_witness: Option<String>,
    pub jacobi_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub bases: BTreeMap<usize, Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantReport {
    pub signs: Vec<i8>,
    pub fixed_degree_one: Vec<String>,
    pub betti: Vec<usize>,
    pub bases: BTreeMap<usize, Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MasseyReport {
    pub xi1: String,
    pub xi2: String,
    pub xi3: String,
    pub defined: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representative: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indeterminacy_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct G2VerifyReport {
    pub gram: Vec<Vec<String>>,
    pub det: String,
    pub definite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub definiteness_sign: Option<i8>,
    pub scale_ninth: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conformal_factor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_in_complex: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub involution_invariant: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct G2InvolutionJson {
    pub signs: Vec<i8>,
    pub preserves_form: bool,
    pub fixed_dim: usize,
    pub anti_dim: usize,
    pub fixed_indices: Vec<u8>,
    pub restricted_coefficient: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_volume_identity: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupProductReport {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub product: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReduceReport {
    pub x: Vec<String>,
    pub lattice_part: Vec<String>,
    pub domain_part: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommutatorEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommutatorReport {
    pub nonzero: Vec<CommutatorEntry>,
    pub matches_frozen_table: bool,
    /// Pairs where the bracket-based commutator differs from the transcribed
    /// relations (central corrections).
    pub transcription_discrepancies: Vec<CommutatorEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedLocusReport {
    pub component_count: usize,
    pub representatives: Vec<Vec<String>>,
    pub fixed_subgroup_samples_ok: bool,
    pub grid_points_tested: usize,
    pub grid_all_fail: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolveReport {
    pub dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub associative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graded_commutative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_relations_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poincare_dual: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub massey_lift: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErratumReport {
    pub id: String,
    pub description: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyAllReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub errata: Vec<ErratumReport>,
    pub all_passed: bool,
}
