//! JSON output records of the `idemca` command. Words are written as digit
//! strings, one character per symbol.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analyze {
    pub rule: String,
    pub surjective: bool,
    pub preinjective: bool,
    pub orphan: Option<String>,
    pub diamond: Option<DiamondRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiamondRecord {
    pub u: String,
    pub u_prime: String,
    pub prefix: String,
    pub mid_a: String,
    pub mid_b: String,
    pub suffix: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eq1 {
    pub rule: String,
    pub bound: usize,
    pub reports: Vec<Eq1Row>,
    pub violation: Option<Eq1Row>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eq1Row {
    pub n: usize,
    pub size: usize,
    pub maps_onto: bool,
    pub is_identity_on: bool,
    pub violation_witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    pub rule: String,
    /// `in`, `out` or `consistent`.
    pub verdict: String,
    pub certificate: Option<String>,
    pub witness: Option<WitnessRecord>,
    pub bound: usize,
    pub explanation: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    /// `surjective-non-identity` or `periodic-condition`.
    pub kind: String,
    pub n: Option<usize>,
    pub point: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eraser {
    pub rule: String,
    pub u: String,
    pub u_prime: String,
    pub radius: usize,
    pub cyclic_checked: usize,
    pub random_checked: usize,
    pub failures: Vec<String>,
    pub collision: Option<[String; 2]>,
    pub passed: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Marker {
    pub k: usize,
    pub gap: usize,
    pub priority_list_len: usize,
    pub declared_radius: usize,
    pub input: Option<String>,
    /// Marks of the input: one per cell for `--cyclic`, one per interior cell otherwise.
    pub marks: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecomposeFinite {
    pub map: String,
    pub decomposable: bool,
    /// Outermost factor first.
    pub factors: Vec<String>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Oracle {
    pub k: usize,
    pub m: usize,
    pub carrier_size: usize,
    pub equivariant_maps: usize,
    pub idempotents: usize,
    pub closure_size: usize,
    pub condition_size: usize,
    pub sets_equal: bool,
    pub counterexamples: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodingKitRecord {
    pub k: usize,
    pub v: String,
    pub w: String,
    pub w0: String,
    pub w1: String,
    pub m: usize,
    pub check_span: usize,
    pub k_sep: usize,
    pub lambda_v: f64,
    pub lambda_w: f64,
    pub asymptotic: bool,
    pub max_len: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coded {
    pub v: String,
    pub w: String,
    pub input: String,
    pub output: String,
}
