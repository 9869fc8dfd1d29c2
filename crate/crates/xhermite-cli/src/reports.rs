//! Typed report structures for every subcommand. JSON serialization is the
//! canonical machine format: field order is fixed by the struct
//! definitions, exact rationals are carried as "p/q" strings, and parsing
//! an emitted report and re-serializing it reproduces the bytes.

use serde::{Deserialize, Serialize};
use xhermite::exactpoly::{rational_to_string, ExactPoly};

/// Exact polynomial as ascending "p/q" coefficient strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub coeffs: Vec<String>,
}

impl PolyJson {
    pub fn from_poly(p: &ExactPoly) -> Self {
        PolyJson {
            coeffs: p.coeffs().iter().map(rational_to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub n: usize,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub partition: Vec<usize>,
    #[serde(rename = "N")]
    pub n: usize,
    pub ell: usize,
    pub exceptional_degrees: Vec<usize>,
    pub sporadic_degrees: Vec<usize>,
    pub eta: PolyJson,
    pub polynomials: Vec<FamilyMember>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl CheckLine {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckLine {
            name: name.into(),
            status: "PASS".into(),
            residual: None,
        }
    }

    pub fn fail(name: impl Into<String>, residual: impl Into<String>) -> Self {
        CheckLine {
            name: name.into(),
            status: "FAIL".into(),
            residual: Some(residual.into()),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == "FAIL"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub partition: Vec<usize>,
    pub cutoff: usize,
    pub seed: u64,
    pub checks: Vec<CheckLine>,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLevelReport {
    pub j: usize,
    pub partition: Vec<usize>,
    #[serde(rename = "N")]
    pub n: usize,
    pub ell: usize,
    pub exceptional_degrees: Vec<usize>,
    /// K_j = K_λ ∪ {n_1, …, n_j}: the original gap set plus the first j
    /// sporadic degrees. The Hermite Wronskian over these degrees is
    /// proportional to eta of this level's partition.
    pub cumulative_degrees: Vec<usize>,
    /// Factorization constant ε₀ = 2ℓ_j of the step leaving this level;
    /// absent on the final (classical) level.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps0: Option<i64>,
    /// Truncated operator spectrum at this level, maximum first.
    pub spectrum: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub partition: Vec<usize>,
    pub cutoff: usize,
    pub levels: Vec<ChainLevelReport>,
    /// Whether σ_{j+1} − 2 = σ_j \ {2ℓ_j} held at every step (it must).
    pub removal_rule_verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapsReport {
    pub gapset: Vec<usize>,
    pub partition: Vec<usize>,
    pub even: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramReport {
    pub partition: Vec<usize>,
    pub degrees: Vec<usize>,
    /// Quadrature order at which the convergence guard settled.
    pub order: usize,
    pub converged: bool,
    pub matrix: Vec<Vec<f64>>,
    pub formula_diagonal: Vec<f64>,
    pub max_relative_deviation: f64,
}

/// Canonical JSON writer used for every report; pairing it with serde's
/// derived parser makes the round-trip byte-identical.
pub fn to_json_string<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serialization cannot fail");
    s.push('\n');
    s
}
