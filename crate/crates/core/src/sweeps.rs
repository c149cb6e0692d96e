//! Parameter sweeps: the degree and genus tables for dual-span pairs,
//! admissible degree ranges, and BN-map points classified against a
//! sampled region boundary.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::bncalc::{beta_classical, beta_universal, BundleSpec, Genus, LocusSpec, SlopePoint};
use crate::error::{Error, Result};
use crate::exactnum::{ceil_ratio, floor_ratio, IntInterval, Rational};

/// Genus scans stop at `GENUS_CEILING_PER_RANK · n₂ + GENUS_CEILING_BASE`.
pub const GENUS_CEILING_PER_RANK: i64 = 10;
pub const GENUS_CEILING_BASE: i64 = 50;

/// Degree scans in `dmax_search` give up after this many steps.
pub const DEGREE_SCAN_LIMIT: i64 = 1_000_000;

fn q(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num, den).expect("positive denominator")
}

fn small(x: BigInt) -> i64 {
    x.to_i64().expect("sweep parameters stay small")
}

/// Smallest degree of a line bundle with `n₂+1` sections allowed by
/// `β(1,d,n₂+1) ≥ 0`: `n₂ + ⌈g·n₂/(n₂+1)⌉`.
pub fn dmin_formula(g: Genus, n2: u64) -> Result<i64> {
    if n2 == 0 {
        return Err(Error::Rank);
    }
    let n = n2 as i64;
    Ok(n + small(ceil_ratio(g.get() * n, n + 1)?))
}

/// Closed-form upper degree for the genus 10 pairing with `(6,22,7)`:
/// `⌊(264n₂² + 322n₂ − 319) / (42(n₂+1))⌋`.
pub fn dmax_formula_bpn(n2: u64) -> Result<i64> {
    if n2 < 2 {
        return Err(Error::param(format!("need n2 >= 2, got {n2}")));
    }
    let n = n2 as i64;
    Ok(small(floor_ratio(264 * n * n + 322 * n - 319, 42 * (n + 1))?))
}

fn pairing_beta(g: Genus, locus1: &LocusSpec, n2: u64, d2: i64) -> BigInt {
    let second = BundleSpec::new(n2, d2).expect("positive rank");
    beta_universal(g, &locus1.bundle(), &second, locus1.sections() * (n2 + 1))
}

/// Largest `d₂ ≥ dmin` with `β^{k₁(n₂+1)}(U(n₁,d₁), U(n₂,d₂)) < 0`, scanning
/// upward and checking that β increases strictly with `d₂`.
pub fn dmax_search(g: Genus, locus1: &LocusSpec, n2: u64) -> Result<Option<i64>> {
    let start = dmin_formula(g, n2)?;
    let mut d2 = start;
    let mut beta = pairing_beta(g, locus1, n2, d2);
    if !beta.is_negative() {
        return Ok(None);
    }
    loop {
        let next = pairing_beta(g, locus1, n2, d2 + 1);
        assert!(next > beta, "beta must increase with d2");
        if !next.is_negative() {
            return Ok(Some(d2));
        }
        if d2 - start >= DEGREE_SCAN_LIMIT {
            return Err(Error::param("degree scan limit reached"));
        }
        d2 += 1;
        beta = next;
    }
}

/// Degree bounds printed for the genus 10 `(6,22,7)` table, `n₂ = 2..=8`.
pub const PRINTED_TABLE1: [(u64, i64, i64); 7] =
    [(2, 9, 10), (3, 12, 17), (4, 15, 24), (5, 19, 31), (6, 23, 37), (7, 26, 44), (8, 30, 50)];

/// Minimal genera printed for the `(2,5,2)` family, `n₂ = 2..=10`.
pub const PRINTED_TABLE2: [(u64, i64); 9] =
    [(2, 9), (3, 7), (4, 6), (5, 7), (6, 8), (7, 9), (8, 10), (9, 11), (10, 12)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub n2: u64,
    pub d_min_formula: i64,
    pub d_max_formula: Option<i64>,
    pub d_max_direct: Option<i64>,
    pub printed_d_min: Option<i64>,
    pub printed_d_max: Option<i64>,
}

impl Table1Row {
    /// Columns where a printed value disagrees with the computed one.
    pub fn flags(&self) -> Vec<&'static str> {
        let mut flags = Vec::new();
        if self.printed_d_min.is_some_and(|p| p != self.d_min_formula) {
            flags.push("printed d_min differs from formula");
        }
        if let (Some(p), Some(direct)) = (self.printed_d_max, self.d_max_direct) {
            if p != direct {
                flags.push("printed d_max differs from direct search");
            }
        }
        if let (Some(f), Some(direct)) = (self.d_max_formula, self.d_max_direct) {
            if f != direct {
                flags.push("closed form differs from direct search");
            }
        }
        flags
    }
}

fn is_printed_table1(g: Genus, locus1: &LocusSpec) -> bool {
    g.get() == 10 && *locus1 == LocusSpec::new(6, 22, 7).expect("valid")
}

/// Rows for `n₂` in `ranks`. The closed form and the printed values are
/// only attached for genus 10 with `(6,22,7)`.
pub fn table1(g: Genus, locus1: &LocusSpec, ranks: impl IntoIterator<Item = u64>) -> Result<Vec<Table1Row>> {
    let printed = is_printed_table1(g, locus1);
    ranks
        .into_iter()
        .map(|n2| {
            let row = PRINTED_TABLE1.iter().find(|r| r.0 == n2).filter(|_| printed);
            Ok(Table1Row {
                n2,
                d_min_formula: dmin_formula(g, n2)?,
                d_max_formula: if printed && n2 >= 2 { Some(dmax_formula_bpn(n2)?) } else { None },
                d_max_direct: dmax_search(g, locus1, n2)?,
                printed_d_min: row.map(|r| r.1),
                printed_d_max: row.map(|r| r.2),
            })
        })
        .collect()
}

/// `β` of the `(2,5,2)` family at genus `g`: `B^{2(n₂+1)}(U(2,5), U(n₂,dmin))`.
pub fn table2_beta(g: Genus, n2: u64) -> Result<BigInt> {
    let first = LocusSpec::new(2, 5, 2)?;
    Ok(pairing_beta(g, &first, n2, dmin_formula(g, n2)?))
}

pub fn genus_ceiling(n2: u64) -> i64 {
    GENUS_CEILING_PER_RANK * n2 as i64 + GENUS_CEILING_BASE
}

/// Smallest `g ≥ max(2, n₂+2)` at which the `(2,5,2)` family has `β < 0`,
/// or `None` if the scan reaches [`genus_ceiling`].
pub fn table2_min_genus(n2: u64) -> Result<Option<i64>> {
    if n2 < 2 {
        return Err(Error::param(format!("need n2 >= 2, got {n2}")));
    }
    let start = (n2 as i64 + 2).max(2);
    for g in start..=genus_ceiling(n2) {
        if table2_beta(Genus::new(g)?, n2)?.is_negative() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table2Row {
    pub n2: u64,
    pub g_min: Option<i64>,
    pub printed_g_min: Option<i64>,
}

pub fn table2(ranks: impl IntoIterator<Item = u64>) -> Result<Vec<Table2Row>> {
    ranks
        .into_iter()
        .map(|n2| {
            Ok(Table2Row {
                n2,
                g_min: table2_min_genus(n2)?,
                printed_g_min: PRINTED_TABLE2.iter().find(|r| r.0 == n2).map(|r| r.1),
            })
        })
        .collect()
}

/// Upper bound on `d₁` for `β^{(n₁+1)²}(U₁,U₁) < 0` with `U₁` of type
/// `(n₁,d₁)`: `n₁/2 · [(1+1/n₁)² + (1 − 2/(n₁+1)²)(g−1) − 2/((n₁+1)²n₁²)]`.
pub fn self_pair_degree_bound(g: Genus, n1: u64) -> Rational {
    let n = BigInt::from(n1);
    let sq = (&n + 1u32).pow(2);
    let one_plus = Rational::one() + q(1, n.clone());
    let inner = &one_plus * &one_plus
        + (Rational::one() - q(2, sq.clone())) * Rational::from(g.get() - 1)
        - q(2, &sq * &n * &n);
    q(n, 2) * inner
}

/// Degrees `d₁` with `B(n₁,d₁,n₁+1)` non-empty and the self-pairing
/// `β^{(n₁+1)²}` negative.
pub fn ex40_d1_range(g: Genus, n1: u64) -> Result<IntInterval> {
    if n1 < 2 {
        return Err(Error::param(format!("need n1 >= 2, got {n1}")));
    }
    let lo = dmin_formula(g, n1)?;
    let bound = self_pair_degree_bound(g, n1);
    // largest integer strictly below the bound
    let hi = small(bound.ceil()) - 1;
    Ok(IntInterval::new(lo, hi))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ex40Row {
    pub d1: i64,
    pub k: u64,
    #[serde(with = "crate::exactnum::json_int")]
    pub beta: BigInt,
}

/// `β^{(n₁+1)²}(U₁,U₁)` for every `d₁` in [`ex40_d1_range`].
pub fn ex40_rows(g: Genus, n1: u64) -> Result<Vec<Ex40Row>> {
    let k = (n1 + 1) * (n1 + 1);
    Ok(ex40_d1_range(g, n1)?
        .iter()
        .map(|d1| {
            let b = BundleSpec::new(n1, d1).expect("positive rank");
            Ex40Row { d1, k, beta: beta_universal(g, &b, &b, k) }
        })
        .collect())
}

/// Outcome of a genus threshold search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenusBound {
    From(i64),
    Never,
}

impl fmt::Display for GenusBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusBound::From(g) => write!(f, "{g}"),
            GenusBound::Never => f.write_str("never"),
        }
    }
}

/// Coefficient of `g−1` in the dual-span pairing criterion
/// `μ₂ < C(g−1) − D` for `k₁ = n₁+1`, `k₂ = n₂+1`.
pub fn ex2_coefficients(n1: u64, n2: u64) -> Result<(Rational, Rational)> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::Rank);
    }
    let (a, b) = (BigInt::from(n1), BigInt::from(n2));
    let den = &b * (&b + 1u32) * &a * &a;
    let coeff = q((&b * &b - 2u32) * &a * &a - &b * &b, den.clone());
    Ok((coeff, q(2, den)))
}

/// Minimal genus with `μ₂ < C(g−1) − D`, where `μ₂ = d₂/n₂`.
pub fn ex2_min_genus(n1: u64, n2: u64, d2: i64) -> Result<GenusBound> {
    let (coeff, offset) = ex2_coefficients(n1, n2)?;
    if !coeff.is_positive() {
        return Ok(GenusBound::Never);
    }
    let mu2 = q(d2, n2);
    // g − 1 > (μ₂ + D)/C
    let ratio = (mu2 + offset).checked_div(&coeff).expect("positive coefficient");
    Ok(GenusBound::From(small(ratio.floor()) + 2).max_with(2))
}

impl GenusBound {
    fn max_with(self, floor: i64) -> Self {
        match self {
            GenusBound::From(g) => GenusBound::From(g.max(floor)),
            GenusBound::Never => GenusBound::Never,
        }
    }
}

/// `(μ₁+μ₂, λ₁λ₂)` for a pair of loci.
pub fn bnmap_point(locus1: &LocusSpec, locus2: &LocusSpec) -> SlopePoint {
    SlopePoint {
        mu: locus1.slope() + locus2.slope(),
        lambda: locus1.lambda() * locus2.lambda(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointClass {
    /// Strictly above the boundary.
    New,
    Inside,
    /// Outside the sampled range, or no boundary.
    Unknown,
}

impl PointClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PointClass::New => "new",
            PointClass::Inside => "inside",
            PointClass::Unknown => "unknown",
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A region boundary `λ = f(μ)` given by samples, interpolated linearly.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RegionBoundary {
    samples: Vec<(Rational, Rational)>,
}

impl RegionBoundary {
    pub fn new(samples: Vec<(Rational, Rational)>) -> Result<Self> {
        if samples.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::param("boundary samples must be strictly increasing in mu"));
        }
        Ok(RegionBoundary { samples })
    }

    pub fn samples(&self) -> &[(Rational, Rational)] {
        &self.samples
    }

    /// Parses `mu,lambda` CSV with exact `p/q` entries. A header line and
    /// blank or `#` lines are skipped.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut samples = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if i == 0 && line.replace(' ', "").eq_ignore_ascii_case("mu,lambda") {
                continue;
            }
            let bad = || Error::Parse { what: "boundary row", detail: format!("line {}: {line}", i + 1) };
            let (mu, lambda) = line.split_once(',').ok_or_else(bad)?;
            let mu = Rational::from_str(mu).map_err(|_| bad())?;
            let lambda = Rational::from_str(lambda).map_err(|_| bad())?;
            samples.push((mu, lambda));
        }
        RegionBoundary::new(samples)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("mu,lambda\n");
        for (mu, lambda) in &self.samples {
            let _ = writeln!(out, "{},{}", fraction(mu), fraction(lambda));
        }
        out
    }

    /// Boundary value at `mu`, if `mu` lies in the sampled range.
    pub fn interpolate(&self, mu: &Rational) -> Option<Rational> {
        let first = self.samples.first()?;
        let last = self.samples.last()?;
        if mu < &first.0 || mu > &last.0 {
            return None;
        }
        if self.samples.len() == 1 {
            return Some(first.1.clone());
        }
        let i = self.samples.windows(2).position(|w| mu <= &w[1].0)?;
        let ((x0, y0), (x1, y1)) = (&self.samples[i], &self.samples[i + 1]);
        let t = (mu - x0).checked_div(&(x1 - x0)).expect("increasing samples");
        Some(y0 + &t * (y1 - y0))
    }

    pub fn classify(&self, point: &SlopePoint) -> PointClass {
        match self.interpolate(&point.mu) {
            Some(boundary) if point.lambda > boundary => PointClass::New,
            Some(_) => PointClass::Inside,
            None => PointClass::Unknown,
        }
    }
}

/// Always `p/q`, including integers.
fn fraction(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BnMapRow {
    pub n2: u64,
    pub d2: i64,
    pub point: SlopePoint,
    pub classification: PointClass,
}

/// Points of the family `U₁ = locus1`, `U₂ = (n₂, dmin(g,n₂), n₂+1)`.
pub fn bnmap_dmin_family(
    g: Genus,
    locus1: &LocusSpec,
    ranks: impl IntoIterator<Item = u64>,
    boundary: &RegionBoundary,
) -> Result<Vec<BnMapRow>> {
    ranks
        .into_iter()
        .map(|n2| {
            let d2 = dmin_formula(g, n2)?;
            let locus2 = LocusSpec::new(n2, d2, n2 + 1)?;
            debug_assert!(!beta_classical(g, &LocusSpec::new(1, d2, n2 + 1)?).is_negative());
            let point = bnmap_point(locus1, &locus2);
            let classification = boundary.classify(&point);
            Ok(BnMapRow { n2, d2, point, classification })
        })
        .collect()
}

fn opt<T: fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_default()
}

pub const TABLE1_HEADER: &str = "n2,d_min_formula,d_max_formula,d_max_direct,paper_d_min,paper_d_max";
pub const TABLE2_HEADER: &str = "n2,g_min,paper_g_min";
pub const BNMAP_HEADER: &str = "mu0_num,mu0_den,lambda0_num,lambda0_den,classification";
pub const EX40_HEADER: &str = "d1,k,beta";

pub fn table1_csv(rows: &[Table1Row]) -> String {
    let mut out = format!("{TABLE1_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n2,
            r.d_min_formula,
            opt(&r.d_max_formula),
            opt(&r.d_max_direct),
            opt(&r.printed_d_min),
            opt(&r.printed_d_max)
        );
    }
    out
}

pub fn table2_csv(rows: &[Table2Row]) -> String {
    let mut out = format!("{TABLE2_HEADER}\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.n2, opt(&r.g_min), opt(&r.printed_g_min));
    }
    out
}

pub fn bnmap_csv(rows: &[BnMapRow]) -> String {
    let mut out = format!("{BNMAP_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.point.mu.numer(),
            r.point.mu.denom(),
            r.point.lambda.numer(),
            r.point.lambda.denom(),
            r.classification
        );
    }
    out
}

pub fn ex40_csv(rows: &[Ex40Row]) -> String {
    let mut out = format!("{EX40_HEADER}\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.d1, r.k, r.beta);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(x: i64) -> Genus {
        Genus::new(x).unwrap()
    }

    #[test]
    fn dmin_values() {
        assert_eq!(dmin_formula(g(10), 2).unwrap(), 9);
        assert_eq!(dmin_formula(g(10), 3).unwrap(), 11);
        assert_eq!(dmin_formula(g(6), 5).unwrap(), 10);
        let at10: Vec<i64> = (2..=8).map(|n| dmin_formula(g(10), n).unwrap()).collect();
        assert_eq!(at10, [9, 11, 12, 14, 15, 16, 17]);
    }

    #[test]
    fn dmax_values() {
        let closed: Vec<i64> = (2..=8).map(|n| dmax_formula_bpn(n).unwrap()).collect();
        assert_eq!(closed, [10, 17, 24, 31, 37, 44, 50]);
        let locus = LocusSpec::new(6, 22, 7).unwrap();
        let direct: Vec<i64> = (2..=8).map(|n| dmax_search(g(10), &locus, n).unwrap().unwrap()).collect();
        assert_eq!(direct, [11, 18, 24, 31, 37, 44, 50]);
        // linear forms behind the first two rows
        assert_eq!(pairing_beta(g(10), &locus, 3, 18), BigInt::from(168 * 18 - 3065));
        assert_eq!(pairing_beta(g(10), &locus, 2, 11), BigInt::from(126 * 11 - 1423));
    }

    #[test]
    fn table1_flags() {
        let rows = table1(g(10), &LocusSpec::new(6, 22, 7).unwrap(), 2..=8).unwrap();
        assert_eq!(rows[0].flags(), ["printed d_max differs from direct search", "closed form differs from direct search"]);
        assert_eq!(rows[2].flags(), ["printed d_min differs from formula"]);
        let other = table1(g(11), &LocusSpec::new(6, 22, 7).unwrap(), 2..=3).unwrap();
        assert!(other.iter().all(|r| r.printed_d_max.is_none() && r.d_max_formula.is_none()));
    }

    #[test]
    fn table2_values() {
        let got: Vec<Option<i64>> = table2(2..=10).unwrap().into_iter().map(|r| r.g_min).collect();
        let want: Vec<Option<i64>> = PRINTED_TABLE2.iter().map(|r| Some(r.1)).collect();
        assert_eq!(got, want);
        // n2 = 5: beta already negative at g = 6, but the rank floor is 7
        assert!(table2_beta(g(6), 5).unwrap().is_negative());
    }

    #[test]
    fn self_pair_range_and_rows() {
        assert_eq!(self_pair_degree_bound(g(11), 3), q(757, 48));
        assert_eq!(ex40_d1_range(g(11), 3).unwrap(), IntInterval::new(12, 15));
        assert!(ex40_d1_range(g(11), 3).unwrap().contains(12));
        let rows = ex40_rows(g(11), 3).unwrap();
        assert_eq!(rows[0].beta, BigInt::from(-362));
        assert!(rows.iter().all(|r| r.beta.is_negative()));
        // just past the range the self pairing is no longer negative
        let b = BundleSpec::new(3, 16).unwrap();
        assert!(!beta_universal(g(11), &b, &b, 16).is_negative());
    }

    #[test]
    fn self_pair_range_empty_in_small_genus() {
        assert!(ex40_d1_range(g(2), 2).unwrap().is_empty());
    }

    #[test]
    fn rank_two_genus_threshold() {
        assert_eq!(ex2_min_genus(2, 2, 5).unwrap(), GenusBound::From(17));
        assert_eq!(ex2_min_genus(2, 2, 6).unwrap(), GenusBound::From(20));
        for n1 in 2..8 {
            for n2 in 2..8 {
                assert!(ex2_coefficients(n1, n2).unwrap().0.is_positive());
            }
        }
        assert_eq!(ex2_min_genus(1, 1, 3).unwrap(), GenusBound::Never);
    }

    #[test]
    fn bnmap_points() {
        let l = |n, d, k| LocusSpec::new(n, d, k).unwrap();
        let p = bnmap_point(&l(2, 5, 2), &l(5, 14, 6));
        assert_eq!((p.mu, p.lambda), (q(53, 10), q(6, 5)));
        let p = bnmap_point(&l(3, 0, 3), &l(3, 0, 3));
        assert_eq!((p.mu, p.lambda), (q(0, 1), q(1, 1)));
        let p = bnmap_point(&l(2, 5, 2), &l(6, 16, 7));
        assert_eq!((p.mu, p.lambda), (q(31, 6), q(7, 6)));
    }

    #[test]
    fn boundary_classification() {
        let empty = RegionBoundary::default();
        let p = SlopePoint { mu: q(5, 1), lambda: q(1, 1) };
        assert_eq!(empty.classify(&p), PointClass::Unknown);
        let b = RegionBoundary::parse_csv("mu,lambda\n0/1,1/1\n4/1,2/1\n8/1,2/1\n").unwrap();
        assert_eq!(b.interpolate(&q(2, 1)), Some(q(3, 2)));
        let on = SlopePoint { mu: q(4, 1), lambda: q(2, 1) };
        assert_eq!(b.classify(&on), PointClass::Inside);
        let above = SlopePoint { mu: q(4, 1), lambda: q(201, 100) };
        assert_eq!(b.classify(&above), PointClass::New);
        let outside = SlopePoint { mu: q(9, 1), lambda: q(5, 1) };
        assert_eq!(b.classify(&outside), PointClass::Unknown);
        assert_eq!(RegionBoundary::parse_csv(&b.to_csv()).unwrap(), b);
        assert!(RegionBoundary::parse_csv("1/1,1\n1/1,2\n").is_err());
        assert!(RegionBoundary::parse_csv("1/0,1\n").is_err());
    }

    #[test]
    fn csv_shapes() {
        let rows = table2(2..=3).unwrap();
        assert_eq!(table2_csv(&rows), "n2,g_min,paper_g_min\n2,9,9\n3,7,7\n");
        let rows = table1(g(10), &LocusSpec::new(6, 22, 7).unwrap(), [2]).unwrap();
        assert_eq!(table1_csv(&rows), format!("{TABLE1_HEADER}\n2,9,10,11,9,10\n"));
    }
}
