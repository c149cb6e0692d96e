//! Each rule turns one non-emptiness theorem into a checkable derivation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::certificate::{
    Certificate, Check, Conclusion, Hypothesis, Outcome, Refusal, RefusalKind, Relation, Status,
    Strength, Witness, WitnessValue,
};
use super::curve::{CurveClass, Level};
use super::facts::{FactDb, FactKind};
use super::query::{C8Branch, Query};
use crate::bncalc::{
    asympt_neg, beta_classical, chi_tensor, leading_coeff_t4, line_bn_degree_bound,
    neg_slope_criterion, t4_beta_poly, BundleSpec, Genus, KernelFamily, LocusSpec, SlopeFactor,
};
use crate::exactnum::{ceil_ratio, floor_ratio, IntInterval, NegThreshold, Rational};
use crate::spanops::{dual_span_type, elem_transform_type, kernel_type, r_fold_type, CoherentSystemType};

fn z(x: impl Into<BigInt>) -> BigInt {
    x.into()
}

fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num, den).expect("positive denominator")
}

const LINE_CITE: &str = "classical Brill-Noether theory: a Petri curve carries a line bundle \
    of degree d with v independent sections if and only if beta(1,d,v) >= 0";
const NP1_GENERAL_CITE: &str = "stability of dual spans of general linear systems on a general \
    curve (Farkas-Larson for n1 >= 3, the rank-two case for n1 = 2) together with the Petri \
    necessary condition beta(1,d1,n1+1) >= 0; semistable only when g = 2 and d1 = 2n1";
const NP1_PETRI_CITE: &str = "stability of dual spans of general linear systems on Petri curves \
    in the known cases (small rank, large genus, low degree, high degree, or a cited base system)";
const NP1_GENUS2_CITE: &str = "genus 2 classification: B(n1,d1,n1+1) is non-empty if and only if \
    d1 >= n1+2 and d1 != 2n1";
const S_GENERAL_CITE: &str = "on a general curve a general linear system of type (d,v) with \
    beta(1,d,v) >= 0 is generated and its dual span is stable (Farkas-Larson), except in genus 2 \
    with d = 2(v-1) where it is semistable";
const S_PETRI_CITE: &str = "on a Petri curve a general linear system of type (d,v) with \
    beta(1,d,v) >= 0 has stable dual span in the known Petri cases";
const MISTRETTA_CITE: &str = "Mistretta: for deg L >= 2g+2c and a general \
    codimension-c subspace V, D_{L,V} is semistable, and stable unless deg L = 2g+2c on a \
    hyperelliptic curve";
const DUAL_SPAN_B_CITE: &str = "the dual span of a system in S(k-n,d,k) is a stable bundle of \
    rank n and degree d with at least k sections";
const PHI_CITE: &str = "dual span construction: if h0(E* (x) E1) = 0 then \
    h0(D_{E,V} (x) E1) >= k1 v, so (E1, D_{E,V}) lies in B^{k1 v}(U1,U2)";
const RFOLD_CITE: &str = "dual span construction applied to a direct sum of r copies of a \
    semistable dual span";
const ELEM_CITE: &str = "dual span construction applied to an elementary transformation at one \
    point of a sum of r pairwise non-isomorphic stable dual spans of degree divisible by rank";
const T9_CITE: &str = "generated stable bundles of degree d > ng on a general curve: a general \
    v-dimensional space of sections generates, and the dual span construction applies when \
    mu1 < d/(v-n)";
const PSI_CITE: &str = "kernel construction: h0(E1 (x) D*_{E,V}) >= v k1 - h0(E1 (x) E), with \
    h0(E1 (x) E) given by Riemann-Roch when h1(E1 (x) E) vanishes";
const T4_CITE: &str = "kernel construction along the family k = d(k1-n1)-e, v = d-n(g-1)-f; \
    beta^k is quadratic in d with leading coefficient g-1-(k1-n1)(k1-n1-d1+n1 g)";
const T10_CITE: &str = "kernel construction with the dual span of a general codimension-c \
    linear system (Mistretta) and a bundle in B(n1,d1,k1)";
const C8_CITE: &str = "kernel construction with a general codimension-c linear system, with \
    B(n1,d1,k1) supplied either directly (n1 not dividing d1) or from the Petri range for \
    k1 = n1+1";

/// Accumulates the pieces of a certificate and every reason it might fail.
struct Builder<'a> {
    rule: &'static str,
    citation: String,
    curve: &'a CurveClass,
    query: Query,
    level: Level,
    hypotheses: Vec<Hypothesis>,
    witnesses: Vec<Witness>,
    notes: Vec<String>,
    subs: Vec<Certificate>,
    failures: Vec<String>,
}

impl<'a> Builder<'a> {
    fn new(
        rule: &'static str,
        citation: &str,
        curve: &'a CurveClass,
        query: Query,
        level: Level,
    ) -> Result<Self, Refusal> {
        if !curve.satisfies(level) {
            return Err(Refusal::not_applicable(
                rule,
                format!("needs a {level} curve, have {curve}"),
            ));
        }
        Ok(Builder {
            rule,
            citation: citation.to_string(),
            curve,
            query,
            level,
            hypotheses: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            subs: Vec::new(),
            failures: Vec::new(),
        })
    }

    fn g(&self) -> i64 {
        self.curve.g()
    }

    fn record(&mut self, label: &str, check: Check) -> bool {
        let holds = check.evaluate();
        let hyp = Hypothesis { label: label.to_string(), check, holds };
        if !holds && !matches!(hyp.check, Check::Assumption { .. }) {
            self.failures.push(hyp.to_string());
        }
        self.hypotheses.push(hyp);
        holds
    }

    fn compare(
        &mut self,
        label: &str,
        lhs: impl Into<Rational>,
        rel: Relation,
        rhs: impl Into<Rational>,
    ) -> bool {
        self.record(label, Check::Compare { lhs: lhs.into(), rel, rhs: rhs.into() })
    }

    fn divides(&mut self, label: &str, divisor: impl Into<BigInt>, value: impl Into<BigInt>, expected: bool) -> bool {
        self.record(
            label,
            Check::Divides { divisor: divisor.into(), value: value.into(), expected },
        )
    }

    fn assume(&mut self, label: &str, statement: impl Into<String>, discharged_by: Option<String>) {
        self.record(label, Check::Assumption { statement: statement.into(), discharged_by });
    }

    fn witness(&mut self, name: &str, value: WitnessValue) {
        self.witnesses.push(Witness { name: name.to_string(), value });
    }

    fn int(&mut self, name: &str, value: impl Into<BigInt>) {
        self.witness(name, WitnessValue::Int(value.into()));
    }

    fn flag(&mut self, name: &str, value: bool) {
        self.witness(name, WitnessValue::Flag(value));
    }

    fn text(&mut self, name: &str, value: impl Into<String>) {
        self.witness(name, WitnessValue::Text(value.into()));
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn fail(&mut self, reason: impl Into<String>) {
        self.failures.push(reason.into());
    }

    /// Attaches a sub-derivation; a refusal becomes a failure reason.
    fn sub(&mut self, what: &str, outcome: Outcome) -> Option<Strength> {
        match outcome {
            Ok(cert) => {
                let strength = cert.strength();
                self.subs.push(cert);
                Some(strength)
            }
            Err(refusal) => {
                let mut reason = format!("no certificate for {what}");
                for r in &refusal.reasons {
                    reason.push_str(&format!("; {r}"));
                }
                self.fail(reason);
                None
            }
        }
    }

    fn refusal(&self) -> Option<Refusal> {
        (!self.failures.is_empty()).then(|| Refusal {
            rule: self.rule.to_string(),
            kind: RefusalKind::NotApplicable,
            reasons: self.failures.clone(),
        })
    }

    fn finish(self, conclusion: impl FnOnce() -> Conclusion) -> Outcome {
        if let Some(refusal) = self.refusal() {
            return Err(refusal);
        }
        let mut conclusion = conclusion();
        for sub in &self.subs {
            conclusion.strength = conclusion.strength.min(sub.strength());
        }
        let level_used = self.subs.iter().map(|s| s.level_used).fold(self.level, Level::max);
        let proved = self.hypotheses.iter().all(|h| h.holds) && self.subs.iter().all(Certificate::is_proved);
        let beta = conclusion.beta(self.curve);
        Ok(Certificate {
            rule: self.rule.to_string(),
            citation: self.citation,
            curve: *self.curve,
            level_used,
            query: self.query,
            conclusion,
            beta,
            hypotheses: self.hypotheses,
            witnesses: self.witnesses,
            notes: self.notes,
            subcertificates: self.subs,
            status: if proved { Status::Proved } else { Status::Conditional },
        })
    }
}

/// Keeps the best certificate (proved over conditional, then stable over
/// semistable, then earliest), or gathers every refusal.
fn best_of(name: &str, outcomes: Vec<Outcome>) -> Outcome {
    let mut best: Option<Certificate> = None;
    let mut reasons = Vec::new();
    let mut all_invalid = true;
    for outcome in outcomes {
        match outcome {
            Ok(cert) => {
                if best.as_ref().map_or(true, |b| cert.rank() > b.rank()) {
                    best = Some(cert);
                }
            }
            Err(refusal) => {
                all_invalid &= refusal.kind == RefusalKind::InvalidInput;
                for r in refusal.reasons {
                    reasons.push(format!("{}: {r}", refusal.rule));
                }
            }
        }
    }
    best.ok_or_else(|| Refusal {
        rule: name.to_string(),
        kind: if all_invalid && !reasons.is_empty() {
            RefusalKind::InvalidInput
        } else {
            RefusalKind::NotApplicable
        },
        reasons,
    })
}

fn to_u64(rule: &str, what: &str, x: &BigInt) -> Result<u64, Refusal> {
    x.to_u64().ok_or_else(|| Refusal::not_applicable(rule, format!("{what} = {x} is not a non-negative machine integer")))
}

fn to_i64(rule: &str, what: &str, x: &BigInt) -> Result<i64, Refusal> {
    x.to_i64().ok_or_else(|| Refusal::invalid(rule, format!("{what} = {x} is out of range")))
}

fn locus(rule: &str, n: u64, d: i64, k: u64) -> Result<LocusSpec, Refusal> {
    LocusSpec::new(n, d, k).map_err(|e| Refusal::invalid(rule, e.to_string()))
}

fn cs_type(rule: &str, n: u64, d: i64, v: u64) -> Result<CoherentSystemType, Refusal> {
    CoherentSystemType::new(n, d, v).map_err(|e| Refusal::invalid(rule, e.to_string()))
}

fn span_of(rule: &str, cs: &CoherentSystemType) -> Result<LocusSpec, Refusal> {
    dual_span_type(cs).map_err(|e| Refusal::invalid(rule, e.to_string()))
}

fn mul_u64(rule: &str, a: u64, b: u64) -> Result<u64, Refusal> {
    a.checked_mul(b).ok_or_else(|| Refusal::invalid(rule, "section count overflows"))
}

fn threshold_text(t: Option<NegThreshold>) -> String {
    match t {
        Some(t) => t.to_string(),
        None => "never".to_string(),
    }
}

fn beta_line(g: Genus, d: i64, v: u64) -> BigInt {
    beta_classical(g, &LocusSpec::new(1, d, v).expect("rank one"))
}

/// Known cases in which general linear systems of type `(d₁, n₁+1)` on a
/// Petri curve have stable dual span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PetriCase {
    /// `n₁ ≤ 4`.
    SmallRank,
    /// `g ≥ 2n₁ − 4`.
    LargeGenus,
    /// `d₁ = d₀ + a·n₁`, `a ≥ 1`, for a cited `S(1,d₀,n₁+1)`.
    ShiftedBase,
    /// `d₁ > a·n₁`, `d₁ ≡ ±1 mod n₁`, for a cited `S(1,a·n₁,n₁+1)`.
    NearMultiple,
    /// `d₁ ≤ 2n₁`.
    LowDegree,
    /// `d₁` below the quadratic bound in `n₁` (`≤` allowed for odd `g`).
    BelowBound,
    /// `d₁ ≥ n₁⌈(g+3)/2⌉ + 1`, or the even-genus refinement.
    HighDegree,
}

impl PetriCase {
    pub fn letter(self) -> char {
        match self {
            PetriCase::SmallRank => 'a',
            PetriCase::LargeGenus => 'b',
            PetriCase::ShiftedBase => 'c',
            PetriCase::NearMultiple => 'd',
            PetriCase::LowDegree => 'e',
            PetriCase::BelowBound => 'f',
            PetriCase::HighDegree => 'g',
        }
    }
}

impl fmt::Display for PetriCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.letter())
    }
}

/// `n ≤ (2m)!/(m!(m+1)!)`, stopping as soon as the Catalan sequence passes `n`.
fn catalan_at_least(m: i64, n: u64) -> bool {
    let mut c = z(1);
    let target = z(n);
    for j in 0..m {
        if c >= target && j >= 1 {
            return true;
        }
        c = c * (2 * (2 * j + 1)) / (j + 2);
    }
    c >= target
}

/// The `d₁` bound `n₁ + g + (n₁²−n₁−2)g / (2(n₁−1)²)` for Petri stability.
pub fn petri_degree_bound(g: Genus, n1: u64) -> Rational {
    let n = z(n1);
    let gg = z(g.get());
    Rational::from(&n + &gg) + frac((&n * &n - &n - 2) * &gg, z(2) * (&n - 1) * (&n - 1))
}

fn below_petri_bound(g: Genus, n1: u64, d1: i64) -> bool {
    let bound = petri_degree_bound(g, n1);
    let d1 = Rational::from(d1);
    if g.is_odd() {
        d1 <= bound
    } else {
        d1 < bound
    }
}

/// Every known Petri stability case satisfied by `(n₁, d₁)`. The two cases
/// resting on an auxiliary linear system are matched against cited
/// `S(1,d₀,n₁+1)` facts only, and only when a database is given.
pub fn petri_dls_cases(curve: &CurveClass, n1: u64, d1: i64, facts: Option<&FactDb>) -> Vec<PetriCase> {
    let g = curve.g();
    let mut cases = Vec::new();
    if !curve.satisfies(Level::Petri) || n1 < 2 {
        return cases;
    }
    let n = n1 as i64;
    if n1 <= 4 {
        cases.push(PetriCase::SmallRank);
    }
    if g >= 2 * n - 4 {
        cases.push(PetriCase::LargeGenus);
    }
    if let Some(db) = facts {
        let bases: Vec<i64> = db
            .matching(FactKind::SNonempty, curve)
            .filter(|(_, inst)| inst.n == 1 && inst.k == n + 1)
            .map(|(_, inst)| inst.d)
            .collect();
        if bases.iter().any(|&d0| d1 > d0 && (d1 - d0) % n == 0) {
            cases.push(PetriCase::ShiftedBase);
        }
        let near = d1.rem_euclid(n) == 1 || d1.rem_euclid(n) == n - 1;
        if near && bases.iter().any(|&d0| d0 % n == 0 && d1 > d0) {
            cases.push(PetriCase::NearMultiple);
        }
    }
    if d1 <= 2 * n {
        cases.push(PetriCase::LowDegree);
    }
    if below_petri_bound(curve.genus(), n1, d1) {
        cases.push(PetriCase::BelowBound);
    }
    let high = n * ceil_ratio(g + 3, 2).expect("positive").to_i64().expect("small") + 1;
    let even_high = g % 2 == 0
        && z(2) * z(d1) >= z(n) * z(g + 2) + 2
        && catalan_at_least(g / 2, n1);
    if d1 >= high || even_high {
        cases.push(PetriCase::HighDegree);
    }
    cases
}

fn case_list(cases: &[PetriCase]) -> String {
    cases.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// Range of `d₁` for which `B(n₁,d₁,n₁+1)` is known to be non-empty with
/// stable general dual span, as used for the kernel construction with
/// `k₁ = n₁+1`. `None` below the Petri level.
pub fn cor_t3_d1_range(curve: &CurveClass, n1: u64) -> Option<IntInterval> {
    if !curve.satisfies(Level::Petri) || n1 < 2 {
        return None;
    }
    let g = curve.g();
    let n = n1 as i64;
    let lower = |n: i64| n + ceil_ratio(n * g, n + 1).expect("positive").to_i64().expect("small");
    let full_upper = (n - 1) * g + 1;
    let range = match n1 {
        2 => IntInterval::new(2 + ceil_ratio(2 * g, 3).ok()?.to_i64()?, g + 1),
        3 | 4 => IntInterval::new(lower(n), full_upper),
        _ => {
            let hi = if g >= 2 * n - 4 || curve.satisfies(Level::General) {
                full_upper
            } else {
                n + floor_ratio(3 * g, 2).ok()?.to_i64()?
            };
            IntInterval::new(lower(n), hi)
        }
    };
    Some(range)
}

/// The largest `k` certified by the kernel construction:
/// `v·k₁ − h⁰(E₁⊗E) − m` with `h⁰` from Riemann-Roch.
pub fn max_k_psi(g: Genus, locus1: &LocusSpec, cs: &CoherentSystemType, h1_defect: u64) -> BigInt {
    z(cs.dim()) * z(locus1.sections()) - chi_tensor(g, &locus1.bundle(), &cs.bundle()) - h1_defect
}

pub fn bn_line_nonempty(curve: &CurveClass, d: i64, v: u64) -> Outcome {
    const RULE: &str = "line";
    if v == 0 {
        return Err(Refusal::invalid(RULE, "need v >= 1"));
    }
    let mut b = Builder::new(RULE, LINE_CITE, curve, Query::Line { d, v }, Level::Petri)?;
    b.compare("beta(1,d,v) >= 0", beta_line(curve.genus(), d, v), Relation::Ge, 0i64);
    b.finish(|| Conclusion::single(LocusSpec::new(1, d, v).expect("rank one"), Strength::Stable))
}

pub fn bn_np1_nonempty(curve: &CurveClass, facts: &FactDb, n1: u64, d1: i64) -> Outcome {
    const RULE: &str = "np1";
    if n1 < 2 {
        return Err(Refusal::invalid(RULE, format!("need n1 >= 2, got {n1}")));
    }
    let target = locus(RULE, n1, d1, n1 + 1)?;
    let query = Query::Np1 { n1, d1 };
    let g = curve.genus();
    let beta = beta_line(g, d1, n1 + 1);
    let bound = line_bn_degree_bound(g, n1);

    if curve.satisfies(Level::General) {
        let mut b = Builder::new(RULE, NP1_GENERAL_CITE, curve, query, Level::General)?;
        b.compare("beta(1,d1,n1+1) >= 0", beta, Relation::Ge, 0i64);
        b.witness("degree_bound", WitnessValue::Frac(bound));
        let exceptional = g.get() == 2 && d1 == 2 * n1 as i64;
        if exceptional {
            b.note("g = 2 and d1 = 2n1: the dual span is semistable but never stable");
        }
        let strength = if exceptional { Strength::Semistable } else { Strength::Stable };
        return b.finish(|| Conclusion::single(target, strength));
    }

    if g.get() == 2 {
        let mut b = Builder::new(RULE, NP1_GENUS2_CITE, curve, query, Level::Petri)?;
        b.compare("d1 >= n1 + 2", d1, Relation::Ge, n1 as i64 + 2);
        b.compare("d1 != 2 n1", d1, Relation::Ne, 2 * n1 as i64);
        return b.finish(|| Conclusion::single(target, Strength::Stable));
    }

    let mut b = Builder::new(RULE, NP1_PETRI_CITE, curve, query, Level::Petri)?;
    b.compare("beta(1,d1,n1+1) >= 0", beta, Relation::Ge, 0i64);
    b.witness("degree_bound", WitnessValue::Frac(bound));
    let cases = petri_dls_cases(curve, n1, d1, Some(facts));
    if cases.is_empty() {
        b.fail(format!("no known Petri stability case covers (n1,d1) = ({n1},{d1}) in genus {g}"));
    } else {
        b.text("petri_cases", case_list(&cases));
    }
    b.finish(|| Conclusion::single(target, Strength::Stable))
}

fn s_general(curve: &CurveClass, cs: &CoherentSystemType) -> Outcome {
    let (d, v) = (cs.degree(), cs.dim());
    let mut b = Builder::new("linear-system", S_GENERAL_CITE, curve, Query::S { cs: *cs }, Level::General)?;
    b.compare("beta(1,d,v) >= 0", beta_line(curve.genus(), d, v), Relation::Ge, 0i64);
    let exceptional = curve.g() == 2 && v >= 3 && d == 2 * (v as i64 - 1);
    if exceptional {
        b.note("g = 2 and d = 2(v-1): the dual span is semistable but not stable");
    }
    let strength = if exceptional { Strength::Semistable } else { Strength::Stable };
    b.finish(|| Conclusion::coherent(1, d, v, strength))
}

fn s_petri(curve: &CurveClass, facts: &FactDb, cs: &CoherentSystemType) -> Outcome {
    let (d, v) = (cs.degree(), cs.dim());
    let mut b = Builder::new("petri-linear-system", S_PETRI_CITE, curve, Query::S { cs: *cs }, Level::Petri)?;
    b.compare("beta(1,d,v) >= 0", beta_line(curve.genus(), d, v), Relation::Ge, 0i64);
    if v == 2 {
        b.note("v = 2: the dual span is a line bundle");
    } else {
        if curve.g() == 2 {
            b.compare("d != 2(v-1) in genus 2", d, Relation::Ne, 2 * (v as i64 - 1));
        }
        let cases = petri_dls_cases(curve, v - 1, d, Some(facts));
        if cases.is_empty() {
            b.fail(format!("no known Petri stability case covers (n1,d1) = ({},{d})", v - 1));
        } else {
            b.text("petri_cases", case_list(&cases));
        }
    }
    b.finish(|| Conclusion::coherent(1, d, v, Strength::Stable))
}

fn s_mistretta(curve: &CurveClass, cs: &CoherentSystemType) -> Outcome {
    let (d, v) = (cs.degree(), cs.dim());
    let g = curve.g();
    let mut b = Builder::new("mistretta", MISTRETTA_CITE, curve, Query::S { cs: *cs }, Level::Smooth)?;
    let c = z(d) - g + 1i64 - v;
    b.int("c", c.clone());
    b.compare("c = d-g+1-v >= 1", c.clone(), Relation::Ge, 1i64);
    b.compare("c <= g", c.clone(), Relation::Le, g);
    let floor = z(2 * g) + z(2) * &c;
    b.compare("d >= 2g + 2c", d, Relation::Ge, floor.clone());
    let boundary = z(d) == floor;
    let semistable_only = boundary && !curve.is_nonhyperelliptic();
    if semistable_only {
        b.note("d = 2g + 2c and the curve may be hyperelliptic: semistable only");
    }
    let strength = if semistable_only { Strength::Semistable } else { Strength::Stable };
    b.finish(|| Conclusion::coherent(1, d, v, strength))
}

fn s_fact(curve: &CurveClass, facts: &FactDb, cs: &CoherentSystemType) -> Outcome {
    let (n, d, v) = (cs.rank() as i64, cs.degree(), cs.dim() as i64);
    let found = facts
        .matching(FactKind::SNonempty, curve)
        .find(|(_, inst)| inst.n == n && inst.d == d && inst.k == v);
    let Some((fact, _)) = found else {
        return Err(Refusal::not_applicable("fact", format!("no cited fact gives S{cs} on {curve}")));
    };
    let mut b = Builder::new("fact", &fact.citation, curve, Query::S { cs: *cs }, fact.level)?;
    b.text("fact", fact.label());
    b.finish(|| Conclusion::coherent(cs.rank(), d, cs.dim(), Strength::Stable))
}

/// `S(n,d,v)`: generated coherent systems with stable bundle and stable
/// dual span.
pub fn s_nonempty(curve: &CurveClass, facts: &FactDb, cs: &CoherentSystemType) -> Outcome {
    if cs.dim() <= cs.rank() {
        return Err(Refusal::invalid("s", format!("S{cs} needs v > n")));
    }
    let mut attempts = Vec::new();
    if cs.rank() == 1 {
        attempts.push(s_general(curve, cs));
        attempts.push(s_petri(curve, facts, cs));
        attempts.push(s_mistretta(curve, cs));
    }
    attempts.push(s_fact(curve, facts, cs));
    best_of("s", attempts)
}

fn b_dual_span(curve: &CurveClass, facts: &FactDb, target: &LocusSpec) -> Outcome {
    const RULE: &str = "dual-span";
    let (n, d, k) = (target.rank(), target.degree(), target.sections());
    if k <= n {
        return Err(Refusal::not_applicable(RULE, "needs k > n"));
    }
    let mut b = Builder::new(RULE, DUAL_SPAN_B_CITE, curve, Query::B { locus: *target }, Level::Smooth)?;
    let cs = cs_type(RULE, k - n, d, k)?;
    b.sub(&format!("S{cs}"), s_nonempty(curve, facts, &cs));
    b.finish(|| Conclusion::single(*target, Strength::Stable))
}

fn b_fact(curve: &CurveClass, facts: &FactDb, target: &LocusSpec) -> Outcome {
    let (n, d, k) = (target.rank() as i64, target.degree(), target.sections() as i64);
    let mut found = None;
    for kind in [FactKind::BNonempty, FactKind::BtildeNonempty] {
        found = facts
            .matching(kind, curve)
            .find(|(_, inst)| inst.n == n && inst.d == d && inst.k >= k)
            .map(|(f, inst)| (f.clone(), inst, kind));
        if found.is_some() {
            break;
        }
    }
    let Some((fact, inst, kind)) = found else {
        return Err(Refusal::not_applicable("fact", format!("no cited fact gives B{target} on {curve}")));
    };
    let mut b = Builder::new("fact", &fact.citation, curve, Query::B { locus: *target }, fact.level)?;
    b.text("fact", fact.label());
    b.int("fact_k", inst.k);
    let strength = if kind == FactKind::BNonempty { Strength::Stable } else { Strength::Semistable };
    b.finish(|| Conclusion::single(*target, strength))
}

/// `B(n,d,k)` by the first-best of: line bundles, the `k = n+1` criterion,
/// dual spans of known coherent systems, and cited facts.
pub fn b_nonempty(curve: &CurveClass, facts: &FactDb, target: &LocusSpec) -> Outcome {
    let (n, d, k) = (target.rank(), target.degree(), target.sections());
    let mut attempts = Vec::new();
    if n == 1 && k >= 1 {
        attempts.push(bn_line_nonempty(curve, d, k));
    }
    if n >= 2 && k == n + 1 {
        attempts.push(bn_np1_nonempty(curve, facts, n, d));
    }
    if k > n {
        attempts.push(b_dual_span(curve, facts, target));
    }
    attempts.push(b_fact(curve, facts, target));
    best_of("b", attempts)
}

/// Records `μ₁ + μ < ... ` style h¹ vanishing for `E₁ ⊗ E`.
fn h1_assumption(b: &mut Builder, b1: &BundleSpec, e: &BundleSpec, defect: u64) {
    let slope = b1.slope() + e.slope();
    let canonical = Rational::from(2 * b.g() - 2);
    let discharged = (slope > canonical)
        .then(|| format!("mu(E1 (x) E) = {slope} > 2g-2 = {canonical}, so h1 vanishes"));
    let statement = if defect == 0 {
        "some E1 in B(n1,d1,k1) has h1(E1 (x) E) = 0".to_string()
    } else {
        format!("some E1 in B(n1,d1,k1) has h1(E1 (x) E) <= {defect}")
    };
    b.assume("h1 vanishing", statement, discharged);
}

fn slope_condition(b: &mut Builder, locus1: &LocusSpec, cs: &CoherentSystemType) {
    b.compare(
        "n d1 < n1 d (so h0(E* (x) E1) = 0)",
        z(cs.rank()) * locus1.degree(),
        Relation::Lt,
        z(locus1.rank()) * cs.degree(),
    );
}

fn criterion_witness(b: &mut Builder, locus1: &LocusSpec, second: &LocusSpec) {
    if let (Ok(f1), Ok(f2)) = (SlopeFactor::from_locus(locus1), SlopeFactor::from_locus(second)) {
        let verdict = neg_slope_criterion(b.curve.genus(), &f1, &f2);
        b.flag("slope_criterion_negative", verdict);
    }
}

pub fn certify_phi(curve: &CurveClass, facts: &FactDb, locus1: &LocusSpec, cs: &CoherentSystemType) -> Outcome {
    const RULE: &str = "phi";
    let span = span_of(RULE, cs)?;
    let k = mul_u64(RULE, locus1.sections(), cs.dim())?;
    let mut b = Builder::new(RULE, PHI_CITE, curve, Query::Phi { locus1: *locus1, cs: *cs }, Level::Smooth)?;
    slope_condition(&mut b, locus1, cs);
    b.sub(&format!("B{locus1}"), b_nonempty(curve, facts, locus1));
    b.sub(&format!("S{cs}"), s_nonempty(curve, facts, cs));
    b.int("k", k);
    b.int("k2", cs.dim());
    criterion_witness(&mut b, locus1, &span);
    b.finish(|| Conclusion::universal(locus1.bundle(), span.bundle(), k, Strength::Stable))
}

pub fn certify_rfold(
    curve: &CurveClass,
    facts: &FactDb,
    locus1: &LocusSpec,
    cs: &CoherentSystemType,
    r: u64,
) -> Outcome {
    const RULE: &str = "rfold";
    let second = r_fold_type(cs, r).map_err(|e| Refusal::invalid(RULE, e.to_string()))?;
    let k = mul_u64(RULE, locus1.sections(), second.sections())?;
    let query = Query::Rfold { locus1: *locus1, cs: *cs, r };
    let mut b = Builder::new(RULE, RFOLD_CITE, curve, query, Level::Smooth)?;
    slope_condition(&mut b, locus1, cs);
    b.sub(&format!("B{locus1}"), b_nonempty(curve, facts, locus1));
    b.sub(&format!("S{cs}"), s_nonempty(curve, facts, cs));
    b.int("k", k);
    if r > 1 {
        b.note("a direct sum of several dual spans is semistable, not stable");
    }
    b.finish(|| Conclusion::universal(locus1.bundle(), second.bundle(), k, Strength::Semistable))
}

pub fn certify_elem(
    curve: &CurveClass,
    facts: &FactDb,
    locus1: &LocusSpec,
    cs: &CoherentSystemType,
    r: u64,
) -> Outcome {
    const RULE: &str = "elem";
    let span = span_of(RULE, cs)?;
    if r == 0 {
        return Err(Refusal::invalid(RULE, "fold count r must be at least 1"));
    }
    let query = Query::Elem { locus1: *locus1, cs: *cs, r };
    let mut b = Builder::new(RULE, ELEM_CITE, curve, query, Level::Smooth)?;
    if !b.divides("v - n divides d", span.rank(), cs.degree(), true) {
        return Err(b.refusal().expect("failure recorded"));
    }
    let second = elem_transform_type(cs, r).map_err(|e| Refusal::invalid(RULE, e.to_string()))?;
    let k = mul_u64(RULE, locus1.sections(), second.sections())?;
    slope_condition(&mut b, locus1, cs);
    for (what, outcome) in [
        (format!("B{locus1}"), b_nonempty(curve, facts, locus1)),
        (format!("S{cs}"), s_nonempty(curve, facts, cs)),
    ] {
        if b.sub(&what, outcome) == Some(Strength::Semistable) {
            b.fail(format!("{what} is only known to be semistable; the construction needs stability"));
        }
    }
    let distinct = if r == 1 {
        Some("a single summand".to_string())
    } else if cs.rank() == 1 && curve.satisfies(Level::General) {
        let beta = beta_line(curve.genus(), cs.degree(), cs.dim());
        (beta >= z(1)).then(|| {
            format!("general linear systems form a family of dimension beta(1,d,v) = {beta} >= 1 and distinct systems have distinct dual spans")
        })
    } else {
        None
    };
    b.assume("distinct summands", format!("{r} pairwise non-isomorphic dual spans of type {span}"), distinct);
    b.int("k", k);
    b.finish(|| Conclusion::universal(locus1.bundle(), second.bundle(), k, Strength::Stable))
}

pub fn certify_t9(curve: &CurveClass, facts: &FactDb, locus1: &LocusSpec, n: u64, d: i64, v: u64) -> Outcome {
    const RULE: &str = "t9";
    if n == 0 {
        return Err(Refusal::invalid(RULE, "rank n must be at least 1"));
    }
    let query = Query::T9 { locus1: *locus1, n, d, v };
    let mut b = Builder::new(RULE, T9_CITE, curve, query, Level::General)?;
    let g = curve.g();
    b.compare("d > n g", d, Relation::Gt, z(n) * g);
    let v_ok = b.compare("v > n", v, Relation::Gt, n);
    let top = z(d) - z(n) * (g - 1);
    b.compare("v <= d - n(g-1)", v, Relation::Le, top.clone());
    if v_ok {
        b.compare("mu1 < d/(v-n)", locus1.slope(), Relation::Lt, frac(d, v - n));
    }
    if z(v) == top {
        b.note("v = d - n(g-1) is accepted at the boundary; the generation argument covers v < d - n(g-1) directly");
    }
    b.sub(&format!("B{locus1}"), b_nonempty(curve, facts, locus1));
    if let Some(k) = locus1.sections().checked_mul(v) {
        b.int("h0_lower_bound", k);
    }
    let target = LocusSpec::new(v.saturating_sub(n).max(1), d, v).expect("positive rank");
    b.finish(|| Conclusion::twisted(target, locus1.bundle(), Strength::Stable))
}

pub fn certify_psi(
    curve: &CurveClass,
    facts: &FactDb,
    locus1: &LocusSpec,
    cs: &CoherentSystemType,
    k: Option<u64>,
    m: u64,
) -> Outcome {
    const RULE: &str = "psi";
    let kernel = kernel_type(cs).map_err(|e| Refusal::invalid(RULE, e.to_string()))?;
    let g = curve.genus();
    let chi = chi_tensor(g, &locus1.bundle(), &cs.bundle());
    let max_k = max_k_psi(g, locus1, cs, m);
    let query = Query::Psi { locus1: *locus1, cs: *cs, k, m };
    let mut b = Builder::new(RULE, PSI_CITE, curve, query, Level::Smooth)?;
    b.int("h0_E1_E", chi);
    b.int("max_k", max_k.clone());
    let k_big = k.map(z).unwrap_or_else(|| max_k.clone());
    b.compare("k >= 1", k_big.clone(), Relation::Ge, 1i64);
    b.compare("k <= v k1 - h0(E1 (x) E) - m", k_big.clone(), Relation::Le, max_k);
    h1_assumption(&mut b, &locus1.bundle(), &cs.bundle(), m);
    b.sub(&format!("B{locus1}"), b_nonempty(curve, facts, locus1));
    b.sub(&format!("S{cs}"), s_nonempty(curve, facts, cs));
    if let Some(refusal) = b.refusal() {
        return Err(refusal);
    }
    let k = to_u64(RULE, "k", &k_big)?;
    b.int("k", k);
    b.finish(|| Conclusion::universal(locus1.bundle(), kernel, k, Strength::Stable))
}

fn family_witnesses(b: &mut Builder, fam: &KernelFamily) {
    let g = b.curve.genus();
    let poly = t4_beta_poly(g, fam).expect("family validated");
    let lead = leading_coeff_t4(g, fam.n1, fam.d1, fam.k1).expect("family validated");
    debug_assert_eq!(lead, poly.a2);
    b.int("leading_coefficient", lead);
    b.flag("beta_negative_for_large_d", asympt_neg(g, fam.n1, fam.d1, fam.k1).expect("family validated"));
    b.int("beta_poly_a2", poly.a2.clone());
    b.int("beta_poly_a1", poly.a1.clone());
    b.int("beta_poly_a0", poly.a0.clone());
    b.text("beta_negative_from_d", threshold_text(poly.neg_threshold()));
}

fn check_kernel_ranks(rule: &str, n1: u64, k1: u64) -> Result<(), Refusal> {
    if n1 < 2 {
        return Err(Refusal::invalid(rule, format!("need n1 >= 2, got {n1}")));
    }
    if k1 <= n1 {
        return Err(Refusal::invalid(rule, format!("need k1 > n1, got k1 = {k1}, n1 = {n1}")));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn certify_t4(
    curve: &CurveClass,
    facts: &FactDb,
    n1: u64,
    d1: i64,
    k1: u64,
    n: u64,
    e: i64,
    f: i64,
    d: i64,
) -> Outcome {
    const RULE: &str = "t4";
    check_kernel_ranks(RULE, n1, k1)?;
    let fam = KernelFamily::new(n1, d1, k1, n, e, f).map_err(|err| Refusal::invalid(RULE, err.to_string()))?;
    let query = Query::T4 { n1, d1, k1, n, e, f, d };
    let mut b = Builder::new(RULE, T4_CITE, curve, query, Level::Smooth)?;
    let g = curve.genus();
    let a = z(k1 - n1);
    let lower = z(n) * (g.get() - 1) * &a + z(n) * d1 + z(f) * k1;
    let k_big = z(d) * &a - e;
    let v_big = fam.dim_v_at(g, d);
    b.compare("e >= n(g-1)(k1-n1) + n d1 + f k1", e, Relation::Ge, lower);
    b.compare("e < d(k1-n1)", e, Relation::Lt, z(d) * &a);
    b.compare("v = d - n(g-1) - f > n", v_big.clone(), Relation::Gt, n);
    if let Some(refusal) = b.refusal() {
        return Err(refusal);
    }
    let v = to_u64(RULE, "v", &v_big)?;
    let k = to_u64(RULE, "k", &k_big)?;
    assert!(k >= 1, "the lower and upper bounds on e force k >= 1");
    let cs = cs_type(RULE, n, d, v)?;
    let kernel = kernel_type(&cs).map_err(|err| Refusal::invalid(RULE, err.to_string()))?;
    let locus1 = locus(RULE, n1, d1, k1)?;
    b.compare("k <= v k1 - h0(E1 (x) E)", k, Relation::Le, max_k_psi(g, &locus1, &cs, 0));
    h1_assumption(&mut b, &locus1.bundle(), &cs.bundle(), 0);
    b.sub(&format!("B{locus1}"), b_nonempty(curve, facts, &locus1));
    b.sub(&format!("S{cs}"), s_nonempty(curve, facts, &cs));
    b.int("k", k);
    b.int("v", v);
    family_witnesses(&mut b, &fam);
    b.finish(|| Conclusion::universal(locus1.bundle(), kernel, k, Strength::Stable))
}

fn check_c(rule: &str, curve: &CurveClass, c: i64) -> Result<(), Refusal> {
    if !(1..=curve.g()).contains(&c) {
        return Err(Refusal::invalid(rule, format!("need 1 <= c <= g = {}, got c = {c}", curve.g())));
    }
    Ok(())
}

/// Common part of the rules built on a general codimension-`c` linear
/// system of degree `d`: returns the kernel type and the `S(1,d,v)` outcome.
fn codim_c_system(
    b: &mut Builder,
    facts: &FactDb,
    rule: &str,
    c: i64,
    d: i64,
) -> Result<(CoherentSystemType, BundleSpec), Refusal> {
    let g = b.g();
    let floor = 2 * g + 2 * c;
    b.compare("d >= 2g + 2c", d, Relation::Ge, floor);
    if d == floor && !b.curve.is_nonhyperelliptic() {
        b.note("d = 2g + 2c on a possibly hyperelliptic curve: semistable only");
    }
    if let Some(refusal) = b.refusal() {
        return Err(refusal);
    }
    let v = to_u64(rule, "v", &(z(d) - g + 1 - c))?;
    let cs = cs_type(rule, 1, d, v)?;
    let kernel = kernel_type(&cs).map_err(|e| Refusal::invalid(rule, e.to_string()))?;
    let curve = *b.curve;
    b.sub(&format!("S{cs}"), s_nonempty(&curve, facts, &cs));
    Ok((cs, kernel))
}

fn line_twist_h1(b: &mut Builder, n1: u64, d1: i64, d: i64) {
    let slope = frac(d1, n1) + Rational::from(d);
    b.compare("mu(E1 (x) L) > 2g-2", slope, Relation::Gt, 2 * b.g() - 2);
}

#[allow(clippy::too_many_arguments)]
pub fn certify_t10(
    curve: &CurveClass,
    facts: &FactDb,
    n1: u64,
    d1: i64,
    k1: u64,
    c: i64,
    d: i64,
    k: u64,
) -> Outcome {
    const RULE: &str = "t10";
    check_kernel_ranks(RULE, n1, k1)?;
    check_c(RULE, curve, c)?;
    let query = Query::T10 { n1, d1, k1, c, d, k };
    let mut b = Builder::new(RULE, T10_CITE, curve, query, Level::Smooth)?;
    let g = curve.genus();
    let (_, kernel) = codim_c_system(&mut b, facts, RULE, c, d)?;
    let a = z(k1 - n1);
    let bound = (z(d) - g.get() + 1) * &a - z(c) * k1 - d1;
    b.compare("k >= 1", k, Relation::Ge, 1i64);
    b.compare("k <= (d-g+1)(k1-n1) - c k1 - d1", k, Relation::Le, bound);
    line_twist_h1(&mut b, n1, d1, d);
    let locus1 = locus(RULE, n1, d1, k1)?;
    b.sub(&format!("B{locus1}"), b_nonempty(curve, facts, &locus1));
    let line = BundleSpec::new(1, d).expect("rank one");
    b.int("h0_E1_L", chi_tensor(g, &locus1.bundle(), &line));
    let e = z(d) * &a - k;
    let e_floor = z(g.get() - 1) * &a + z(c) * k1 + d1;
    b.int("e", e.clone());
    b.flag("e_meets_family_bound", e >= e_floor);
    if let Ok(e64) = to_i64(RULE, "e", &e) {
        let fam = KernelFamily::new(n1, d1, k1, 1, e64, c).expect("ranks checked");
        family_witnesses(&mut b, &fam);
    }
    b.finish(|| Conclusion::universal(locus1.bundle(), kernel, k, Strength::Stable))
}

#[allow(clippy::too_many_arguments)]
fn codim_branch(
    curve: &CurveClass,
    facts: &FactDb,
    query: &Query,
    branch: C8Branch,
    n1: u64,
    d1: i64,
    k1: u64,
    c: i64,
    d: i64,
    e: i64,
) -> Outcome {
    const RULE: &str = "c8";
    let level = match branch {
        C8Branch::Coprime => Level::Smooth,
        C8Branch::Petri => Level::Petri,
    };
    let mut b = Builder::new(RULE, C8_CITE, curve, query.clone(), level)?;
    b.text("branch", format!("{branch:?}").to_lowercase());
    let g = curve.genus();
    b.compare("g >= 3", g.get(), Relation::Ge, 3i64);
    b.compare("k1 > n1", k1, Relation::Gt, n1);
    if let Some(refusal) = b.refusal() {
        return Err(refusal);
    }
    let a = z(k1 - n1);
    let k_big = z(d) * &a - e;
    b.compare("k = d(k1-n1) - e >= 1", k_big.clone(), Relation::Ge, 1i64);
    b.compare(
        "e >= (g-1)(k1-n1) + c k1 + d1",
        e,
        Relation::Ge,
        z(g.get() - 1) * &a + z(c) * k1 + d1,
    );
    let locus1 = locus(RULE, n1, d1, k1)?;
    match branch {
        C8Branch::Coprime => {
            b.divides("n1 does not divide d1", n1, d1, false);
            b.sub(&format!("B{locus1}"), b_nonempty(curve, facts, &locus1));
        }
        C8Branch::Petri => {
            b.compare("k1 = n1 + 1", k1, Relation::Eq, n1 + 1);
            let range = cor_t3_d1_range(curve, n1).expect("level checked");
            b.text("d1_range", range.to_string());
            b.compare("d1 >= low end of the Petri range", d1, Relation::Ge, range.lo);
            b.compare("d1 <= high end of the Petri range", d1, Relation::Le, range.hi);
            if k1 == n1 + 1 {
                b.sub(&format!("B{locus1}"), bn_np1_nonempty(curve, facts, n1, d1));
            }
        }
    }
    let (_, kernel) = codim_c_system(&mut b, facts, RULE, c, d)?;
    line_twist_h1(&mut b, n1, d1, d);
    let k = to_u64(RULE, "k", &k_big)?;
    b.int("k", k);
    b.int("e", e);
    let fam = KernelFamily::new(n1, d1, k1, 1, e, c).expect("ranks checked");
    family_witnesses(&mut b, &fam);
    b.finish(|| Conclusion::universal(locus1.bundle(), kernel, k, Strength::Stable))
}

#[allow(clippy::too_many_arguments)]
pub fn certify_c8(
    curve: &CurveClass,
    facts: &FactDb,
    n1: u64,
    d1: i64,
    k1: Option<u64>,
    c: i64,
    d: i64,
    e: i64,
    branch: Option<C8Branch>,
) -> Outcome {
    const RULE: &str = "c8";
    if n1 < 2 {
        return Err(Refusal::invalid(RULE, format!("need n1 >= 2, got {n1}")));
    }
    check_c(RULE, curve, c)?;
    let query = Query::C8 { n1, d1, k1, c, d, e, branch };
    let k1_value = k1.unwrap_or(n1 + 1);
    let branches = match branch {
        Some(br) => vec![br],
        None => vec![C8Branch::Petri, C8Branch::Coprime],
    };
    let outcomes = branches
        .into_iter()
        .map(|br| codim_branch(curve, facts, &query, br, n1, d1, k1_value, c, d, e))
        .collect();
    let mut best = best_of(RULE, outcomes);
    if let Err(refusal) = &mut best {
        refusal.rule = RULE.to_string();
    }
    best
}
