//! Machine-readable output documents. Serialization is deterministic:
//! struct field order is fixed, integers print canonically, and exact
//! rationals are rendered as "numerator/denominator" strings.

use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use lensform_core::LensSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document<I, R> {
    pub command: String,
    pub inputs: I,
    pub results: R,
    pub version: String,
}

pub fn document<I, R>(command: &str, inputs: I, results: R) -> Document<I, R> {
    Document {
        command: command.to_string(),
        inputs,
        results,
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

pub fn to_json<I: Serialize, R: Serialize>(doc: &Document<I, R>) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn ratio_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LensEcho {
    pub lens: String,
    pub q: u64,
    pub p: Vec<u64>,
    pub n: usize,
}

impl LensEcho {
    pub fn new(l: &LensSpace) -> Self {
        LensEcho {
            lens: l.to_string(),
            q: l.q(),
            p: l.params().to_vec(),
            n: l.n(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumInputs {
    #[serde(flatten)]
    pub lens: LensEcho,
    pub max_k: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRowOut {
    pub k: u64,
    pub lambda: u64,
    pub mult: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResults {
    pub rows: Vec<SpectrumRowOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairInputs {
    pub a: LensEcho,
    pub b: LensEcho,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessOut {
    pub k: u64,
    pub count_a: u64,
    pub count_b: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrivialOut {
    pub same_q: bool,
    pub same_n: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsometryOut {
    pub t: u64,
    pub sigma: Vec<usize>,
    pub eps: Vec<i8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateOut {
    pub period: u64,
    pub degree: usize,
    /// coefficients_a[j][i] = coefficient of k^i for k ≡ j (mod period).
    pub coefficients_a: Vec<Vec<String>>,
    pub coefficients_b: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsospectralResults {
    pub verdict: String,
    pub sample_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial: Option<TrivialOut>,
    pub isometric: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isometry: Option<IsometryOut>,
    pub stanley_match: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchInputs {
    pub q: u64,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BucketOut {
    pub bucket_id: usize,
    pub members: Vec<String>,
    /// First 2q shell counts of the shared certificate vector.
    pub shell_prefix: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResults {
    pub bucket_count: usize,
    pub buckets: Vec<BucketOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv_path: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantsInputs {
    #[serde(flatten)]
    pub lens: LensEcho,
    pub max_k: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointOut {
    pub coords: Vec<i64>,
    pub height: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MismatchOut {
    pub k: u64,
    pub series: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOut {
    pub k_max: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplex_mismatch: Option<MismatchOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ball_mismatch: Option<MismatchOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantsResults {
    pub basis_rows: Vec<Vec<i64>>,
    pub det: u64,
    pub smith: Vec<u64>,
    pub dual_vectors: Vec<Vec<String>>,
    pub l: Vec<u64>,
    pub s: u64,
    pub points: Vec<PointOut>,
    pub series_numerator_exponents: Vec<u64>,
    pub series_denominator_exponents: Vec<u64>,
    pub verify: VerifyOut,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToricInputs {
    #[serde(flatten)]
    pub lens: LensEcho,
    pub max_k: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToricResults {
    pub vertices: Vec<Vec<i64>>,
    pub dilate_factor: u32,
    pub fundamental_volume: u64,
    pub ehrhart_coefficients: Vec<String>,
    pub boundary_invariant: String,
    pub toric_degree: u64,
    /// h0[k-1] = dim H^0(X, L^k) for k = 1..=max_k.
    pub h0: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleInputs {
    #[serde(flatten)]
    pub lens: LensEcho,
    pub k: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResults {
    pub invariant_monomials: usize,
    pub image_monomials: usize,
    pub laplacian_rank: usize,
    pub harmonic_dim: String,
    pub formula_multiplicity: String,
    pub agree: bool,
}
