//! Brill-Noether numbers and the inequality criteria built from them.
//!
//! All functions are pure. Parameters arrive in validated newtypes
//! ([`Genus`], [`BundleSpec`], [`LocusSpec`], [`SlopeFactor`]) so the
//! formulas themselves never re-check ranks or section counts.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{quad_neg_threshold, NegThreshold, Rational};

pub(crate) fn z(x: impl Into<BigInt>) -> BigInt {
    x.into()
}

fn q(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num, den).expect("denominator is a positive rank or count")
}

/// Genus of a smooth projective curve, always at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Genus(i64);

impl Genus {
    pub fn new(g: i64) -> Result<Self> {
        if g < 2 {
            return Err(Error::Genus(g));
        }
        Ok(Genus(g))
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }
}

impl TryFrom<i64> for Genus {
    type Error = Error;
    fn try_from(g: i64) -> Result<Self> {
        Genus::new(g)
    }
}

impl From<Genus> for i64 {
    fn from(g: Genus) -> i64 {
        g.0
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Rank and degree of a vector bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBundle")]
pub struct BundleSpec {
    #[serde(rename = "n")]
    rank: u64,
    #[serde(rename = "d")]
    degree: i64,
}

#[derive(Deserialize)]
struct RawBundle {
    n: u64,
    d: i64,
}

impl TryFrom<RawBundle> for BundleSpec {
    type Error = Error;
    fn try_from(r: RawBundle) -> Result<Self> {
        BundleSpec::new(r.n, r.d)
    }
}

impl BundleSpec {
    pub fn new(rank: u64, degree: i64) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Rank);
        }
        Ok(BundleSpec { rank, degree })
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn slope(&self) -> Rational {
        q(self.degree, self.rank)
    }
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rank, self.degree)
    }
}

/// A Brill-Noether locus label: a bundle type plus a section count `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLocus", into = "RawLocus")]
pub struct LocusSpec {
    bundle: BundleSpec,
    sections: u64,
}

#[derive(Serialize, Deserialize)]
struct RawLocus {
    n: u64,
    d: i64,
    k: u64,
}

impl TryFrom<RawLocus> for LocusSpec {
    type Error = Error;
    fn try_from(r: RawLocus) -> Result<Self> {
        LocusSpec::new(r.n, r.d, r.k)
    }
}

impl From<LocusSpec> for RawLocus {
    fn from(l: LocusSpec) -> Self {
        RawLocus { n: l.rank(), d: l.degree(), k: l.sections }
    }
}

impl LocusSpec {
    pub fn new(rank: u64, degree: i64, sections: u64) -> Result<Self> {
        Ok(LocusSpec { bundle: BundleSpec::new(rank, degree)?, sections })
    }

    pub fn from_bundle(bundle: BundleSpec, sections: u64) -> Self {
        LocusSpec { bundle, sections }
    }

    pub fn bundle(&self) -> BundleSpec {
        self.bundle
    }

    pub fn rank(&self) -> u64 {
        self.bundle.rank
    }

    pub fn degree(&self) -> i64 {
        self.bundle.degree
    }

    pub fn sections(&self) -> u64 {
        self.sections
    }

    pub fn slope(&self) -> Rational {
        self.bundle.slope()
    }

    /// `k/n`.
    pub fn lambda(&self) -> Rational {
        q(self.sections, self.bundle.rank)
    }
}

impl fmt::Display for LocusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.rank(), self.degree(), self.sections)
    }
}

/// A point `(μ, λ)` of the BN map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlopePoint {
    pub mu: Rational,
    pub lambda: Rational,
}

impl SlopePoint {
    pub fn of_locus(locus: &LocusSpec) -> Self {
        SlopePoint { mu: locus.slope(), lambda: locus.lambda() }
    }
}

/// One side of a product `E₁ ⊗ E₂` in the slope form of the β criteria:
/// rank `n`, section count `k` (both at least 1) and slope `μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeFactor {
    rank: u64,
    sections: u64,
    slope: Rational,
}

impl SlopeFactor {
    pub fn new(rank: u64, sections: u64, slope: Rational) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Rank);
        }
        if sections == 0 {
            return Err(Error::param("slope criteria need at least one section"));
        }
        Ok(SlopeFactor { rank, sections, slope })
    }

    pub fn from_locus(locus: &LocusSpec) -> Result<Self> {
        SlopeFactor::new(locus.rank(), locus.sections(), locus.slope())
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn sections(&self) -> u64 {
        self.sections
    }

    pub fn slope(&self) -> &Rational {
        &self.slope
    }

    pub fn lambda(&self) -> Rational {
        q(self.sections, self.rank)
    }

    /// `k·n`
    fn weight(&self) -> BigInt {
        z(self.rank) * z(self.sections)
    }
}

/// Dimension `n²(g−1)+1` of the moduli space of stable bundles of rank `n`.
pub fn moduli_dim(g: Genus, rank: u64) -> BigInt {
    z(rank) * z(rank) * z(g.0 - 1) + 1
}

/// `β(n,d,k) = n²(g−1)+1 − k(k−d+n(g−1))`.
pub fn beta_classical(g: Genus, locus: &LocusSpec) -> BigInt {
    let (n, d, k) = (z(locus.rank()), z(locus.degree()), z(locus.sections()));
    moduli_dim(g, locus.rank()) - &k * (&k - d + n * (g.0 - 1))
}

/// `k(k − n₂d₁ − n₁d₂ + n₁n₂(g−1))`, the part shared by the twisted numbers.
fn twisted_defect(g: Genus, b1: &BundleSpec, b2: &BundleSpec, k: u64) -> BigInt {
    let (n1, d1) = (z(b1.rank), z(b1.degree));
    let (n2, d2) = (z(b2.rank), z(b2.degree));
    let k = z(k);
    &k * (&k - &n2 * &d1 - &n1 * &d2 + n1 * n2 * (g.0 - 1))
}

/// Expected dimension of the universal locus `B^k(U₁,U₂)`.
pub fn beta_universal(g: Genus, b1: &BundleSpec, b2: &BundleSpec, k: u64) -> BigInt {
    moduli_dim(g, b1.rank) + moduli_dim(g, b2.rank) - twisted_defect(g, b1, b2, k)
}

/// Expected dimension of the twisted locus `B(n₁,d₁,k)(E₂)`, `E₂` of type `b2`.
pub fn beta_twisted(g: Genus, b1: &BundleSpec, b2: &BundleSpec, k: u64) -> BigInt {
    moduli_dim(g, b1.rank) - twisted_defect(g, b1, b2, k)
}

/// `h⁰(E₁⊗E) = n·d₁ + n₁·d − n·n₁·(g−1)` for `E₁` of type `b1` and `E` of
/// type `b2 = (n, d)`, valid when `h¹(E₁⊗E) = 0`.
pub fn chi_tensor(g: Genus, b1: &BundleSpec, b2: &BundleSpec) -> BigInt {
    let (n1, d1) = (z(b1.rank), z(b1.degree));
    let (n, d) = (z(b2.rank), z(b2.degree));
    &n * d1 + &n1 * d - n * n1 * (g.0 - 1)
}

/// Slope form of `β^{k₁k₂}(U₁,U₂) < 0`:
///
/// `μ₁+μ₂ < λ₁λ₂ + (1 − (n₁²+n₂²)/(k₁n₁k₂n₂))(g−1) − 2/(k₁n₁k₂n₂)`.
pub fn neg_slope_criterion(g: Genus, first: &SlopeFactor, second: &SlopeFactor) -> bool {
    let p = first.weight() * second.weight();
    let n_sq = z(first.rank).pow(2) + z(second.rank).pow(2);
    let lhs = first.slope() + second.slope();
    let rhs = first.lambda() * second.lambda()
        + (Rational::one() - q(n_sq, p.clone())) * Rational::from(g.0 - 1)
        - q(2, p);
    lhs < rhs
}

/// The criterion for the dual-span pairing, where the second factor has
/// rank `n₂` and `k₂ = n₂ + n` sections.
pub fn neg_slope_dual_span(
    g: Genus,
    first: &SlopeFactor,
    n: u64,
    n2: u64,
    mu2: &Rational,
) -> Result<bool> {
    let second = SlopeFactor::new(n2, n2 + n, mu2.clone())?;
    Ok(neg_slope_criterion(g, first, &second))
}

/// The criterion for pairing a locus of type `(n₁,d₁,n₁+1)` with itself,
/// `k = (n₁+1)²`, written out directly:
///
/// `2μ₁ < (1+1/n₁)² + (1 − 2n₁²/((n₁+1)²n₁²))(g−1) − 2/((n₁+1)²n₁²)`.
pub fn neg_slope_self_pair(g: Genus, n1: u64, mu1: &Rational) -> Result<bool> {
    if n1 == 0 {
        return Err(Error::Rank);
    }
    let n = z(n1);
    let denom = (&n + 1u32).pow(2) * n.pow(2);
    let one_plus = Rational::one() + q(1, n.clone());
    let rhs = &one_plus * &one_plus
        + (Rational::one() - q(2 * n.pow(2), denom.clone())) * Rational::from(g.0 - 1)
        - q(2, denom);
    Ok(Rational::from(2i64) * mu1 < rhs)
}

/// Sufficient condition for `dim B^k(U₁,U₂) > β^k(U₁,U₂)` (with generic
/// injectivity of `S(n,d,v) → B(v−n,d,v)` assumed by the caller):
///
/// `(1−1/(k₂n₂))μ₁ + (1−1/(k₁n₁))μ₂ < λ₁λ₂ − (k₁²+k₂²)/(k₁n₁k₂n₂) + (1 − (k₁n₁+k₂n₂)/(k₁n₁k₂n₂))(g−1)`.
pub fn dim_excess_criterion(g: Genus, first: &SlopeFactor, second: &SlopeFactor) -> bool {
    let (w1, w2) = (first.weight(), second.weight());
    let p = &w1 * &w2;
    let lhs = (Rational::one() - q(1, w2.clone())) * first.slope()
        + (Rational::one() - q(1, w1.clone())) * second.slope();
    let k_sq = z(first.sections).pow(2) + z(second.sections).pow(2);
    let rhs = first.lambda() * second.lambda() - q(k_sq, p.clone())
        + (Rational::one() - q(w1 + w2, p)) * Rational::from(g.0 - 1);
    lhs < rhs
}

/// `n₁ + n₁g/(n₁+1)`: a line bundle of degree `d₁` carries a linear system
/// of dimension `n₁+1` with `β(1,d₁,n₁+1) ≥ 0` exactly when `d₁` reaches it.
pub fn line_bn_degree_bound(g: Genus, n1: u64) -> Rational {
    Rational::from(n1) + q(z(n1) * g.0, n1 + 1)
}

/// Integer quadratic `a2·x² + a1·x + a0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadPoly {
    #[serde(with = "crate::exactnum::json_int")]
    pub a2: BigInt,
    #[serde(with = "crate::exactnum::json_int")]
    pub a1: BigInt,
    #[serde(with = "crate::exactnum::json_int")]
    pub a0: BigInt,
}

impl QuadPoly {
    pub fn eval(&self, x: &BigInt) -> BigInt {
        (&self.a2 * x + &self.a1) * x + &self.a0
    }

    /// See [`quad_neg_threshold`].
    pub fn neg_threshold(&self) -> Option<NegThreshold> {
        quad_neg_threshold(
            &Rational::from(&self.a2),
            &Rational::from(&self.a1),
            &Rational::from(&self.a0),
        )
    }
}

/// The kernel-bundle family with `k = d(k₁−n₁) − e` sections,
/// `v = d − n(g−1) − f` and `(n₂,d₂) = (v−n, −d)`, as `d` varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelFamily {
    pub n1: u64,
    pub d1: i64,
    pub k1: u64,
    pub n: u64,
    pub e: i64,
    pub f: i64,
}

impl KernelFamily {
    pub fn new(n1: u64, d1: i64, k1: u64, n: u64, e: i64, f: i64) -> Result<Self> {
        let fam = KernelFamily { n1, d1, k1, n, e, f };
        fam.validate()?;
        Ok(fam)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.n1 < 2 {
            return Err(Error::param(format!("need n1 >= 2, got {}", self.n1)));
        }
        if self.k1 <= self.n1 {
            return Err(Error::param(format!(
                "need k1 > n1, got k1 = {} and n1 = {}",
                self.k1, self.n1
            )));
        }
        if self.n == 0 {
            return Err(Error::Rank);
        }
        Ok(())
    }

    /// `k` at degree `d`.
    pub fn sections_at(&self, d: i64) -> BigInt {
        z(d) * z(self.k1 - self.n1) - self.e
    }

    /// `v` at degree `d`.
    pub fn dim_v_at(&self, g: Genus, d: i64) -> BigInt {
        z(d) - z(self.n) * (g.0 - 1) - self.f
    }

    /// `n₂ = v − n` at degree `d`.
    pub fn kernel_rank_at(&self, g: Genus, d: i64) -> BigInt {
        self.dim_v_at(g, d) - self.n
    }
}

/// β^k(U₁,U₂) along a [`KernelFamily`], as a polynomial in the degree `d`.
pub fn t4_beta_poly(g: Genus, fam: &KernelFamily) -> Result<QuadPoly> {
    fam.validate()?;
    let gm1 = z(g.0 - 1);
    let a = z(fam.k1 - fam.n1);
    let (n1, d1, n, e, f) = (z(fam.n1), z(fam.d1), z(fam.n), z(fam.e), z(fam.f));
    // n₂ = d − s, k = a·d − e, and the defect factor is p·d + r
    let s = &n * g.0 + &f;
    let p = &a - &d1 + &n1 * g.0;
    let r = &d1 * &s - &e - &n1 * &gm1 * &s;
    let a2 = &gm1 - &a * &p;
    let a1 = -(z(2) * &s * &gm1) - &a * &r + &e * &p;
    let a0 = moduli_dim(g, fam.n1) + &gm1 * &s * &s + 1 + &e * &r;
    Ok(QuadPoly { a2, a1, a0 })
}

fn check_kernel_ranks(n1: u64, k1: u64) -> Result<()> {
    if k1 <= n1 {
        return Err(Error::param(format!("need k1 > n1, got k1 = {k1} and n1 = {n1}")));
    }
    Ok(())
}

/// `g − 1 − (k₁−n₁)(k₁−n₁−d₁+n₁g)`, the `d²` coefficient of [`t4_beta_poly`].
pub fn leading_coeff_t4(g: Genus, n1: u64, d1: i64, k1: u64) -> Result<BigInt> {
    check_kernel_ranks(n1, k1)?;
    let a = z(k1 - n1);
    Ok(z(g.0 - 1) - &a * (&a - d1 + z(n1) * g.0))
}

/// `d₁ < k₁ + n₁(g−1) − (g−1)/(k₁−n₁)`: β^k along the kernel family is
/// negative for all large `d`.
pub fn asympt_neg(g: Genus, n1: u64, d1: i64, k1: u64) -> Result<bool> {
    check_kernel_ranks(n1, k1)?;
    let bound = Rational::from(k1) + Rational::from(z(n1) * (g.0 - 1)) - q(g.0 - 1, k1 - n1);
    Ok(Rational::from(d1) < bound)
}
