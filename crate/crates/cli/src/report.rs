//! Serializable report types and the text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const PASS: &str = "pass";
pub const FAIL: &str = "fail";
pub const NOT_RUN: &str = "not-run";

/// Keys of the per-theorem verdicts, in report order.
pub const CHECK_KEYS: [&str; 6] = ["def-1.1", "lemma-4.3", "lemma-4.5", "thm-4.11", "thm-4.14", "thm-3.10"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupInfo {
    pub name: String,
    pub dimension: usize,
    pub order: usize,
    pub cyclotomic_order: u32,
    pub reflection_count: usize,
    pub orthogonal: bool,
    pub pseudo_reflection_group: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MolienReport {
    pub truncation: usize,
    pub coefficients: Vec<u64>,
    pub reynolds_checked_to: usize,
    pub degrees: Option<Vec<u32>>,
    pub degree_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantsReport {
    pub degrees: Vec<u32>,
    pub degree_product: u64,
    pub generators: Vec<String>,
    pub jacobian_independent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmonicsReport {
    pub dims: Vec<usize>,
    pub total: usize,
    pub series_identity: bool,
    pub product_decomposition: bool,
    pub basis: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleCount {
    pub tested: usize,
    pub passed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenspaceReport {
    pub weight: Vec<String>,
    pub generic: bool,
    pub orbit_size_distinct: usize,
    pub stabilizer_order: usize,
    pub evaluation_rank: usize,
    pub commutant_dim: usize,
    pub commutant_dim_exact: usize,
    pub irreducible_certified: bool,
    pub status: String,
    pub eigen_check: bool,
    pub symbol_check: bool,
    pub invariant_values: Vec<String>,
    pub quarter_square_norm: String,
    pub equivariance: SampleCount,
    pub dual_cyclic: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub status: String,
    pub detail: String,
}

impl Check {
    pub fn new(ok: bool, detail: impl Into<String>) -> Self {
        Check {
            status: String::from(if ok { PASS } else { FAIL }),
            detail: detail.into(),
        }
    }

    pub fn with_status(status: &str, detail: impl Into<String>) -> Self {
        Check {
            status: String::from(status),
            detail: detail.into(),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == FAIL
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub seed: u64,
    pub precision: u32,
    pub group: GroupInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub molien: Option<MolienReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub harmonics: Option<HarmonicsReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub eigenspace: Vec<EigenspaceReport>,
    pub checks: BTreeMap<String, Check>,
    pub failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && !self.checks.values().any(Check::failed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let g = &self.group;
        let _ = writeln!(out, "group {} (dimension {}, order {})", g.name, g.dimension, g.order);
        let _ = writeln!(out, "  cyclotomic order: {}", g.cyclotomic_order);
        let _ = writeln!(out, "  pseudo-reflections: {}", g.reflection_count);
        let _ = writeln!(out, "  orthogonal: {}", g.orthogonal);
        let _ = writeln!(out, "  pseudo-reflection group: {}", g.pseudo_reflection_group);
        if let Some(m) = &self.molien {
            let _ = writeln!(out, "molien series to t^{}: {}", m.truncation, join(&m.coefficients));
            match (&m.degrees, &m.degree_error) {
                (Some(d), _) => {
                    let _ = writeln!(out, "  degrees: {}", join(d));
                }
                (None, Some(e)) => {
                    let _ = writeln!(out, "  degrees: unavailable ({e})");
                }
                _ => {}
            }
        }
        if let Some(inv) = &self.invariants {
            let _ = writeln!(out, "fundamental invariants (degrees {}, product {}):", join(&inv.degrees), inv.degree_product);
            for (i, p) in inv.generators.iter().enumerate() {
                let _ = writeln!(out, "  j{} = {}", i + 1, p);
            }
        }
        if let Some(h) = &self.harmonics {
            let _ = writeln!(out, "harmonics: dims {}; total {}", join(&h.dims), h.total);
        }
        for e in &self.eigenspace {
            let _ = writeln!(out, "weight ({})", e.weight.join(", "));
            let _ = writeln!(out, "  generic: {}", e.generic);
            let _ = writeln!(out, "  orbit_size_distinct: {}", e.orbit_size_distinct);
            let _ = writeln!(out, "  evaluation_rank: {}", e.evaluation_rank);
            let _ = writeln!(out, "  commutant_dim: {} (exact {})", e.commutant_dim, e.commutant_dim_exact);
            let _ = writeln!(out, "  irreducible_certified: {}", e.irreducible_certified);
            let _ = writeln!(out, "  status: {}", e.status);
            let _ = writeln!(out, "  equivariance: {}/{}", e.equivariance.passed, e.equivariance.tested);
            let _ = writeln!(out, "  invariant values: {}", e.invariant_values.join("; "));
            let _ = writeln!(out, "  note: {}", e.note);
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            for key in CHECK_KEYS {
                if let Some(c) = self.checks.get(key) {
                    let _ = writeln!(out, "  {key}: {} ({})", c.status, c.detail);
                }
            }
        }
        if let Some(f) = &self.failure {
            let _ = writeln!(out, "failure: {f}");
        }
        if let Some(t) = &self.timings_ms {
            for (k, v) in t {
                let _ = writeln!(out, "time {k}: {v:.1} ms");
            }
        }
        let _ = writeln!(out, "seed: {}", self.seed);
        out
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}
