use serde::{Deserialize, Serialize};

use crate::bncalc::LocusSpec;
use crate::spanops::CoherentSystemType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum C8Branch {
    /// `n₁ ∤ d₁` together with a known `B(n₁,d₁,k₁)`.
    Coprime,
    /// Petri curve with `k₁ = n₁+1` and `d₁` in the Petri range.
    Petri,
}

/// A certification request. Every certificate records the query it answers
/// so that it can be re-derived.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "lowercase")]
pub enum Query {
    /// A line bundle of degree `d` with `v` sections.
    Line { d: i64, v: u64 },
    /// `B(n₁,d₁,n₁+1)`.
    Np1 { n1: u64, d1: i64 },
    /// `B(n,d,k)` by any available route.
    B { locus: LocusSpec },
    /// `S(n,d,v)` by any available route.
    S { cs: CoherentSystemType },
    Phi { locus1: LocusSpec, cs: CoherentSystemType },
    Rfold { locus1: LocusSpec, cs: CoherentSystemType, r: u64 },
    Elem { locus1: LocusSpec, cs: CoherentSystemType, r: u64 },
    T9 { locus1: LocusSpec, n: u64, d: i64, v: u64 },
    /// Kernel construction with explicit `k` (defaulting to the largest
    /// certifiable value) and `h¹` defect `m`.
    Psi {
        locus1: LocusSpec,
        cs: CoherentSystemType,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<u64>,
        #[serde(default)]
        m: u64,
    },
    T4 { n1: u64, d1: i64, k1: u64, n: u64, e: i64, f: i64, d: i64 },
    T10 { n1: u64, d1: i64, k1: u64, c: i64, d: i64, k: u64 },
    C8 {
        n1: u64,
        d1: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k1: Option<u64>,
        c: i64,
        d: i64,
        e: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        branch: Option<C8Branch>,
    },
}

impl Query {
    pub fn name(&self) -> &'static str {
        match self {
            Query::Line { .. } => "line",
            Query::Np1 { .. } => "np1",
            Query::B { .. } => "b",
            Query::S { .. } => "s",
            Query::Phi { .. } => "phi",
            Query::Rfold { .. } => "rfold",
            Query::Elem { .. } => "elem",
            Query::T9 { .. } => "t9",
            Query::Psi { .. } => "psi",
            Query::T4 { .. } => "t4",
            Query::T10 { .. } => "t10",
            Query::C8 { .. } => "c8",
        }
    }
}
