//! Type arithmetic for dual span and kernel bundles and the constructions
//! built from them. Nothing here claims that a bundle of the computed type
//! exists or is stable; that is the job of [`crate::certkit`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bncalc::{beta_universal, BundleSpec, Genus, LocusSpec};
use crate::error::{Error, Result};

/// Type `(n, d, v)` of a generated coherent system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCs", into = "RawCs")]
pub struct CoherentSystemType {
    rank: u64,
    degree: i64,
    dim: u64,
}

#[derive(Serialize, Deserialize)]
struct RawCs {
    n: u64,
    d: i64,
    v: u64,
}

impl TryFrom<RawCs> for CoherentSystemType {
    type Error = Error;
    fn try_from(r: RawCs) -> Result<Self> {
        CoherentSystemType::new(r.n, r.d, r.v)
    }
}

impl From<CoherentSystemType> for RawCs {
    fn from(c: CoherentSystemType) -> Self {
        RawCs { n: c.rank, d: c.degree, v: c.dim }
    }
}

impl CoherentSystemType {
    pub fn new(rank: u64, degree: i64, dim: u64) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Rank);
        }
        if dim == 0 {
            return Err(Error::param("a coherent system needs v >= 1"));
        }
        Ok(CoherentSystemType { rank, degree, dim })
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }

    pub fn bundle(&self) -> BundleSpec {
        BundleSpec::new(self.rank, self.degree).expect("rank checked at construction")
    }

    /// `v − n`, the rank of the dual span. Fails unless `v > n`.
    pub fn span_rank(&self) -> Result<u64> {
        if self.dim <= self.rank {
            return Err(Error::param(format!(
                "dual span needs v > n, got v = {} and n = {}",
                self.dim, self.rank
            )));
        }
        Ok(self.dim - self.rank)
    }
}

impl fmt::Display for CoherentSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.rank, self.degree, self.dim)
    }
}

/// `D_{E,V}` has type `(v−n, d)` and comes with the `v` sections of `V*`.
pub fn dual_span_type(cs: &CoherentSystemType) -> Result<LocusSpec> {
    LocusSpec::new(cs.span_rank()?, cs.degree, cs.dim)
}

/// Type `(v−n, d, v)` of the coherent system `(D_{E,V}, V*)`.
pub fn dual_span_system(cs: &CoherentSystemType) -> Result<CoherentSystemType> {
    CoherentSystemType::new(cs.span_rank()?, cs.degree, cs.dim)
}

/// The kernel of `V ⊗ O → E`, of type `(v−n, −d)`.
pub fn kernel_type(cs: &CoherentSystemType) -> Result<BundleSpec> {
    BundleSpec::new(cs.span_rank()?, -cs.degree)
}

fn check_fold(r: u64) -> Result<()> {
    if r == 0 {
        return Err(Error::param("fold count r must be at least 1"));
    }
    Ok(())
}

/// Direct sum of `r` dual spans: `(r(v−n), rd)` with `rv` sections.
pub fn r_fold_type(cs: &CoherentSystemType, r: u64) -> Result<LocusSpec> {
    check_fold(r)?;
    let rank = cs.span_rank()?;
    let degree = i64::try_from(r)
        .ok()
        .and_then(|r| r.checked_mul(cs.degree))
        .ok_or_else(|| Error::param("degree overflow"))?;
    LocusSpec::new(r * rank, degree, r * cs.dim)
}

/// An elementary transformation of the `r`-fold sum at one point:
/// `(r(v−n), rd+1)` with `rv` sections. Requires `(v−n) | d`.
pub fn elem_transform_type(cs: &CoherentSystemType, r: u64) -> Result<LocusSpec> {
    let base = r_fold_type(cs, r)?;
    let span = cs.span_rank()? as i64;
    if cs.degree.rem_euclid(span) != 0 {
        return Err(Error::param(format!(
            "elementary transformation needs v - n = {span} to divide d = {}",
            cs.degree
        )));
    }
    LocusSpec::new(base.rank(), base.degree() + 1, base.sections())
}

/// `(E₁, E) ↦ (E₁, D_{E,V})`.
pub fn phi_targets(b1: &BundleSpec, cs: &CoherentSystemType) -> Result<(BundleSpec, BundleSpec)> {
    Ok((*b1, dual_span_type(cs)?.bundle()))
}

/// `(E₁, E) ↦ (E₁, D_{E,V}*)`.
pub fn psi_targets(b1: &BundleSpec, cs: &CoherentSystemType) -> Result<(BundleSpec, BundleSpec)> {
    Ok((*b1, kernel_type(cs)?))
}

/// A universal locus `B^k(U₁,U₂)` given by its two bundle types and `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UniversalProblem {
    pub first: BundleSpec,
    pub second: BundleSpec,
    pub k: u64,
}

impl UniversalProblem {
    pub fn new(first: BundleSpec, second: BundleSpec, k: u64) -> Self {
        UniversalProblem { first, second, k }
    }

    pub fn beta(&self, g: Genus) -> num_bigint::BigInt {
        beta_universal(g, &self.first, &self.second, self.k)
    }

    /// Exchange the two factors.
    pub fn swap(&self) -> Self {
        UniversalProblem { first: self.second, second: self.first, k: self.k }
    }

    /// Twist by a line bundle of degree `ell`: `(d₁, d₂) ↦ (d₁ − n₁ℓ, d₂ + n₂ℓ)`.
    pub fn twist(&self, ell: i64) -> Result<Self> {
        let shift = |b: &BundleSpec, sign: i64| -> Result<BundleSpec> {
            let delta = (b.rank() as i64)
                .checked_mul(ell)
                .and_then(|x| x.checked_mul(sign))
                .ok_or_else(|| Error::param("degree overflow"))?;
            let d = b.degree().checked_add(delta).ok_or_else(|| Error::param("degree overflow"))?;
            BundleSpec::new(b.rank(), d)
        };
        Ok(UniversalProblem {
            first: shift(&self.first, -1)?,
            second: shift(&self.second, 1)?,
            k: self.k,
        })
    }
}

impl fmt::Display for UniversalProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B^{}(U{}, U{})", self.k, self.first, self.second)
    }
}
