use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::curve::{CurveClass, Level};
use super::query::Query;
use crate::bncalc::{beta_classical, beta_twisted, beta_universal, BundleSpec, LocusSpec};
use crate::exactnum::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strength {
    Semistable,
    Stable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Conditional,
    Proved,
}

/// Which kind of locus a conclusion asserts to be non-empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocusKind {
    /// `B^k(U₁,U₂)` on a product of moduli spaces.
    Universal,
    /// `B(n₁,d₁,k)`.
    Single,
    /// `S(n₁,d₁,k)` with `k = v`.
    CoherentSystems,
    /// `B(n₁,d₁,k)(F)` for some `F` of type `(n₂,d₂)`.
    Twisted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub locus: LocusKind,
    pub n1: u64,
    pub d1: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d2: Option<i64>,
    pub k: u64,
    pub strength: Strength,
}

impl Conclusion {
    pub fn universal(first: BundleSpec, second: BundleSpec, k: u64, strength: Strength) -> Self {
        Conclusion {
            locus: LocusKind::Universal,
            n1: first.rank(),
            d1: first.degree(),
            n2: Some(second.rank()),
            d2: Some(second.degree()),
            k,
            strength,
        }
    }

    pub fn single(locus: LocusSpec, strength: Strength) -> Self {
        Conclusion {
            locus: LocusKind::Single,
            n1: locus.rank(),
            d1: locus.degree(),
            n2: None,
            d2: None,
            k: locus.sections(),
            strength,
        }
    }

    pub fn coherent(n: u64, d: i64, v: u64, strength: Strength) -> Self {
        Conclusion {
            locus: LocusKind::CoherentSystems,
            n1: n,
            d1: d,
            n2: None,
            d2: None,
            k: v,
            strength,
        }
    }

    pub fn twisted(locus: LocusSpec, twist: BundleSpec, strength: Strength) -> Self {
        Conclusion {
            locus: LocusKind::Twisted,
            n1: locus.rank(),
            d1: locus.degree(),
            n2: Some(twist.rank()),
            d2: Some(twist.degree()),
            k: locus.sections(),
            strength,
        }
    }

    pub fn first(&self) -> BundleSpec {
        BundleSpec::new(self.n1, self.d1).expect("conclusions carry valid ranks")
    }

    pub fn second(&self) -> Option<BundleSpec> {
        Some(BundleSpec::new(self.n2?, self.d2?).expect("conclusions carry valid ranks"))
    }

    /// Expected dimension of the concluded locus, always recomputed.
    pub fn beta(&self, curve: &CurveClass) -> BigInt {
        let g = curve.genus();
        let first = self.first();
        match (self.locus, self.second()) {
            (LocusKind::Universal, Some(second)) => beta_universal(g, &first, &second, self.k),
            (LocusKind::Twisted, Some(twist)) => beta_twisted(g, &first, &twist, self.k),
            _ => beta_classical(g, &LocusSpec::from_bundle(first, self.k)),
        }
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tilde = if self.strength == Strength::Semistable { "~" } else { "" };
        match (self.locus, self.n2, self.d2) {
            (LocusKind::Universal, Some(n2), Some(d2)) => write!(
                f,
                "B{tilde}^{}(U({},{}), U({n2},{d2})) is non-empty",
                self.k, self.n1, self.d1
            ),
            (LocusKind::Twisted, Some(n2), Some(d2)) => write!(
                f,
                "B{tilde}({},{},{})(F) is non-empty for some F of type ({n2},{d2})",
                self.n1, self.d1, self.k
            ),
            (LocusKind::CoherentSystems, _, _) => write!(
                f,
                "S{tilde}({},{},{}) is non-empty",
                self.n1, self.d1, self.k
            ),
            _ => write!(f, "B{tilde}({},{},{}) is non-empty", self.n1, self.d1, self.k),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ne => lhs != rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Check {
    Compare { lhs: Rational, rel: Relation, rhs: Rational },
    Divides {
        #[serde(with = "crate::exactnum::json_int")]
        divisor: BigInt,
        #[serde(with = "crate::exactnum::json_int")]
        value: BigInt,
        expected: bool,
    },
    /// An existence assumption that arithmetic alone cannot settle.
    Assumption {
        statement: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        discharged_by: Option<String>,
    },
}

impl Check {
    /// Evaluates the check from its stored operands.
    pub fn evaluate(&self) -> bool {
        match self {
            Check::Compare { lhs, rel, rhs } => rel.holds(lhs, rhs),
            Check::Divides { divisor, value, expected } => {
                let divides = if divisor == &BigInt::from(0) {
                    value == &BigInt::from(0)
                } else {
                    (value % divisor) == BigInt::from(0)
                };
                divides == *expected
            }
            Check::Assumption { discharged_by, .. } => discharged_by.is_some(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub label: String,
    #[serde(flatten)]
    pub check: Check,
    pub holds: bool,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.holds { "ok" } else { "FAILS" };
        match &self.check {
            Check::Compare { lhs, rel, rhs } => {
                write!(f, "[{mark}] {}: {lhs} {} {rhs}", self.label, rel.symbol())
            }
            Check::Divides { divisor, value, expected } => {
                let word = if *expected { "divides" } else { "does not divide" };
                write!(f, "[{mark}] {}: {divisor} {word} {value}", self.label)
            }
            Check::Assumption { statement, discharged_by } => match discharged_by {
                Some(by) => write!(f, "[{mark}] {}: {statement} ({by})", self.label),
                None => write!(f, "[open] {}: {statement}", self.label),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum WitnessValue {
    Int(#[serde(with = "crate::exactnum::json_int")] BigInt),
    Frac(Rational),
    Flag(bool),
    Text(String),
}

impl fmt::Display for WitnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessValue::Int(x) => write!(f, "{x}"),
            WitnessValue::Frac(x) => write!(f, "{x}"),
            WitnessValue::Flag(x) => write!(f, "{x}"),
            WitnessValue::Text(x) => f.write_str(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub name: String,
    pub value: WitnessValue,
}

/// A derivation of a non-emptiness statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub rule: String,
    pub citation: String,
    pub curve: CurveClass,
    pub level_used: Level,
    pub query: Query,
    pub conclusion: Conclusion,
    #[serde(with = "crate::exactnum::json_int")]
    pub beta: BigInt,
    pub hypotheses: Vec<Hypothesis>,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub subcertificates: Vec<Certificate>,
    pub status: Status,
}

impl Certificate {
    pub fn is_proved(&self) -> bool {
        self.status == Status::Proved
    }

    pub fn strength(&self) -> Strength {
        self.conclusion.strength
    }

    pub fn witness(&self, name: &str) -> Option<&WitnessValue> {
        self.witnesses.iter().find(|w| w.name == name).map(|w| &w.value)
    }

    pub fn hypothesis(&self, label: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.label == label)
    }

    /// Ordering used to keep the best of several derivations.
    pub(crate) fn rank(&self) -> (Status, Strength) {
        (self.status, self.conclusion.strength)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates always serialize")
    }

    /// Indented human-readable rendering of the whole tree.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        use std::fmt::Write;
        let pad = "  ".repeat(depth);
        let _ = writeln!(out, "{pad}{} [{}] on {} (needs {})", self.rule, self.status_word(), self.curve, self.level_used);
        let _ = writeln!(out, "{pad}  conclusion: {}", self.conclusion);
        let _ = writeln!(out, "{pad}  beta: {}", self.beta);
        let _ = writeln!(out, "{pad}  citation: {}", self.citation);
        for h in &self.hypotheses {
            let _ = writeln!(out, "{pad}  {h}");
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "{pad}  {} = {}", w.name, w.value);
        }
        for n in &self.notes {
            let _ = writeln!(out, "{pad}  note: {n}");
        }
        for sub in &self.subcertificates {
            sub.render_into(out, depth + 1);
        }
    }

    fn status_word(&self) -> &'static str {
        match (self.status, self.conclusion.strength) {
            (Status::Proved, Strength::Stable) => "proved, stable",
            (Status::Proved, Strength::Semistable) => "proved, semistable only",
            (Status::Conditional, Strength::Stable) => "conditional, stable",
            (Status::Conditional, Strength::Semistable) => "conditional, semistable only",
        }
    }

    /// Structural checks that do not need the fact database: every stored
    /// check re-evaluates to its recorded outcome, β matches the conclusion,
    /// the status follows from hypotheses and sub-certificates, and no
    /// conclusion is stronger than what it was built from.
    pub fn check_consistency(&self) -> Result<(), String> {
        let here = |msg: String| format!("{} on {}: {msg}", self.rule, self.curve);
        for h in &self.hypotheses {
            if h.check.evaluate() != h.holds {
                return Err(here(format!("hypothesis '{}' does not re-evaluate", h.label)));
            }
            let open_assumption = matches!(h.check, Check::Assumption { .. });
            if !h.holds && !open_assumption {
                return Err(here(format!("hypothesis '{}' fails", h.label)));
            }
        }
        let recomputed = self.conclusion.beta(&self.curve);
        if recomputed != self.beta {
            return Err(here(format!("stored beta {} but recomputed {recomputed}", self.beta)));
        }
        let all_hold = self.hypotheses.iter().all(|h| h.holds);
        let subs_proved = self.subcertificates.iter().all(Certificate::is_proved);
        let expected = if all_hold && subs_proved { Status::Proved } else { Status::Conditional };
        if expected != self.status {
            return Err(here(format!("status {:?} but expected {expected:?}", self.status)));
        }
        for sub in &self.subcertificates {
            if sub.strength() < self.strength() {
                return Err(here(format!(
                    "stable conclusion built on semistable sub-certificate {}",
                    sub.rule
                )));
            }
            if sub.level_used > self.level_used {
                return Err(here("sub-certificate needs a stronger curve assumption".into()));
            }
            if sub.curve != self.curve {
                return Err(here("sub-certificate is about a different curve".into()));
            }
            sub.check_consistency()?;
        }
        if !self.curve.satisfies(self.level_used) {
            return Err(here("curve does not satisfy the level used".into()));
        }
        Ok(())
    }
}

/// Why no certificate was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refusal {
    pub rule: String,
    pub kind: RefusalKind,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RefusalKind {
    /// The parameters are outside the rule's domain.
    InvalidInput,
    /// Valid parameters, but some hypothesis fails or is unknown.
    NotApplicable,
}

impl Refusal {
    pub fn invalid(rule: &str, reason: impl Into<String>) -> Self {
        Refusal { rule: rule.to_string(), kind: RefusalKind::InvalidInput, reasons: vec![reason.into()] }
    }

    pub fn not_applicable(rule: &str, reason: impl Into<String>) -> Self {
        Refusal {
            rule: rule.to_string(),
            kind: RefusalKind::NotApplicable,
            reasons: vec![reason.into()],
        }
    }
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            RefusalKind::InvalidInput => "invalid input",
            RefusalKind::NotApplicable => "no certificate",
        };
        write!(f, "{}: {what}", self.rule)?;
        for r in &self.reasons {
            write!(f, "\n  - {r}")?;
        }
        Ok(())
    }
}

impl std::error::Error for Refusal {}

pub type Outcome = std::result::Result<Certificate, Refusal>;
